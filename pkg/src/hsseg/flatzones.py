"""Quasi-flat zones: maximal connected classes with bounded per-step distance.

Two pixels share a zone iff some path joins them whose every adjacent step
has spectral distance <= lambda (inclusive). The comparison must be
inclusive: with a step profile of exactly 10, lambda = 9.9 and lambda = 10
land on opposite sides of every edge.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .grid import Connectivity, LabelMap, SpectralCube
from .metrics import (EdgeWeights, SpectralMetric, build_edge_weights,
                      require_same_grid)


@dataclass(frozen=True)
class LambdaParams:
    """Zone threshold, adjacency and metric for one flat-zone run."""

    metric: SpectralMetric
    lam: float
    connectivity: Connectivity = Connectivity.FOUR

    def __post_init__(self):
        if math.isnan(self.lam) or self.lam < 0:
            raise ValueError(f"lambda must be >= 0, got {self.lam}")


def lambda_flat_zones(cube: SpectralCube, params: LambdaParams,
                      *, edge_weights: EdgeWeights | None = None) -> LabelMap:
    """Partition the cube into lambda-flat zones.

    Breadth-first flood fill seeded in raster order, so labels are dense in
    order of first raster appearance. An EdgeWeights built for the same
    metric and connectivity can be passed in to share the adjacent-pair
    distances with other passes.
    """
    metric = params.metric
    require_same_grid(cube, metric)
    if edge_weights is None:
        edge_weights = build_edge_weights(metric, params.connectivity)
    elif edge_weights.connectivity is not params.connectivity:
        raise ValueError("edge_weights connectivity does not match params")

    w, h = cube.width, cube.height
    lam = params.lam
    labels = np.full(w * h, -1, dtype=np.int32)
    next_label = 0
    for start in range(w * h):
        if labels[start] != -1:
            continue
        labels[start] = next_label
        queue = deque([start])
        while queue:
            i = queue.popleft()
            x, y = i % w, i // w
            for nx, ny, weight in edge_weights.neighbor_edges(x, y):
                j = ny * w + nx
                if labels[j] == -1 and weight <= lam:
                    labels[j] = next_label
                    queue.append(j)
        next_label += 1
    return LabelMap(labels.reshape(h, w), next_label)
