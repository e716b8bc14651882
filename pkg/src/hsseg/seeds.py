"""Per-region cumulative-distance ordering and median / anti-median seeds.

For a region R, the cumulative distance of p is the sum of spectral
distances from p to every member of R. Sorting the region ascending by that
quantity puts the vectorial median first; the reverse order starts at the
anti-median. Both refinement passes consume the list destructively through
an assigned-pixel predicate, so later seeds are medians of the original
region ordering, not of the unassigned remainder.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Mapping

import numpy as np

from .errors import RegionSizeCapError
from .grid import LabelMap, PixelIndex
from .metrics import SpectralMetric

DEFAULT_REGION_CAP = 50_000


class SeedOrder(Enum):
    MEDIAN_FIRST = "median"
    ANTIMEDIAN_FIRST = "antimedian"


def _cumdist(metric: SpectralMetric, pts_flat: np.ndarray) -> np.ndarray:
    """Exact O(K^2) cumulative distances for the pixels in pts_flat."""
    coords = metric.coords_flat[pts_flat]
    out = np.empty(len(pts_flat))
    for i in range(len(pts_flat)):
        out[i] = np.sqrt(np.square(coords - coords[i]).sum(axis=1)).sum()
    return out


def _ordered_indices(pts_flat: np.ndarray, cumdists: np.ndarray, order: SeedOrder) -> np.ndarray:
    # Ties in cumulative distance break on ascending raster index.
    if order is SeedOrder.MEDIAN_FIRST:
        return np.lexsort((pts_flat, cumdists))
    return np.lexsort((pts_flat, -cumdists))


def cumulative_distances(metric: SpectralMetric, region: Iterable,
                         *, max_region_size: int = DEFAULT_REGION_CAP) -> dict[PixelIndex, float]:
    """Map each region pixel to its summed distance to all region pixels.

    The evaluation is exact and quadratic in the region size; regions above
    `max_region_size` are rejected so the cost cliff is explicit.
    """
    pts = [PixelIndex(int(p[0]), int(p[1])) for p in region]
    if not pts:
        raise ValueError("region is empty")
    if len(set(pts)) != len(pts):
        raise ValueError("region contains duplicate pixels")
    if len(pts) > max_region_size:
        raise RegionSizeCapError(
            f"region has {len(pts)} pixels, above the cap of {max_region_size}; "
            f"raise max_region_size to accept the O(K^2) cost"
        )
    flat = np.array([metric.flat_index(p) for p in pts], dtype=np.intp)
    cd = _cumdist(metric, flat)
    return {p: float(c) for p, c in zip(pts, cd)}


@dataclass
class SeedList:
    """Region pixels ordered by cumulative distance, consumed destructively.

    entries holds (pixel, cumdist) pairs; for MEDIAN_FIRST the first entry
    is the vectorial median, for ANTIMEDIAN_FIRST the anti-median.
    """

    entries: list[tuple[PixelIndex, float]]
    order: SeedOrder
    region: int | None = None
    _cursor: int = field(default=0, repr=False)


def build_seed_list(cumdists: Mapping, order: SeedOrder, region: int | None = None) -> SeedList:
    if not cumdists:
        raise ValueError("cumdists is empty")
    items = [(PixelIndex(int(p[0]), int(p[1])), float(c)) for p, c in cumdists.items()]
    if order is SeedOrder.MEDIAN_FIRST:
        items.sort(key=lambda e: (e[1], e[0].y, e[0].x))
    else:
        items.sort(key=lambda e: (-e[1], e[0].y, e[0].x))
    return SeedList(entries=items, order=order, region=region)


def pop_first_unassigned(seed_list: SeedList, assigned: Callable[[PixelIndex], bool]) -> PixelIndex | None:
    """First not-yet-assigned entry, or None once the list is exhausted.

    Entries skipped as assigned are dropped for good; a pixel never becomes
    unassigned again within one segmentation pass.
    """
    entries = seed_list.entries
    while seed_list._cursor < len(entries):
        p, _ = entries[seed_list._cursor]
        seed_list._cursor += 1
        if not assigned(p):
            return p
    return None


def class_orderings(flat: LabelMap, metric: SpectralMetric, order: SeedOrder,
                    max_region_size: int = DEFAULT_REGION_CAP):
    """Yield (label, class_pixels_flat, seed_order) per class of a partition.

    Class pixels come out in raster order; the accompanying index array
    sorts them by cumulative distance with raster tie breaks, reversed for
    ANTIMEDIAN_FIRST. Shared by both refinement passes.
    """
    lab = flat.labels.ravel()
    for c in range(flat.count):
        pts = np.flatnonzero(lab == c)
        if len(pts) > max_region_size:
            raise RegionSizeCapError(
                f"class {c} has {len(pts)} pixels, above the cap of {max_region_size}"
            )
        cd = _cumdist(metric, pts)
        yield c, pts, _ordered_indices(pts, cd, order)
