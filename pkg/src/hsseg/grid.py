"""Grid data model: spectral cubes, pixel adjacency, label maps, partition order.

Pixels live on a width x height grid. The flat raster index of pixel
(x, y) is ``y * width + x``, so raster order scans rows top to bottom and
each row left to right. Arrays are stored (height, width, ...), meaning
``array[y, x]`` addresses pixel (x, y).
"""

from __future__ import annotations

from collections import deque
from enum import Enum
from typing import NamedTuple

import numpy as np


class PixelIndex(NamedTuple):
    """Column/row coordinate of one pixel."""

    x: int
    y: int


_OFFSETS_FOUR = ((0, -1), (0, 1), (-1, 0), (1, 0))
_OFFSETS_EIGHT = _OFFSETS_FOUR + ((-1, -1), (1, -1), (-1, 1), (1, 1))


class Connectivity(Enum):
    """Pixel adjacency: edge-sharing (four) or edge-or-corner (eight)."""

    FOUR = 4
    EIGHT = 8

    @property
    def offsets(self) -> tuple[tuple[int, int], ...]:
        """Neighbor displacements in canonical order N, S, W, E, NW, NE, SW, SE."""
        return _OFFSETS_FOUR if self is Connectivity.FOUR else _OFFSETS_EIGHT


class SpectralCube:
    """Immutable grid of L-band spectra stored as float64.

    ``data`` has shape (height, width, bands); the spectrum of pixel (x, y)
    is ``data[y, x]``. Values are validated finite at construction and the
    buffer is frozen, so a cube can be shared across concurrent readers.
    """

    __slots__ = ("data", "width", "height", "bands")

    def __init__(self, data) -> None:
        arr = np.array(data, dtype=np.float64)
        if arr.ndim != 3:
            raise ValueError(
                f"cube data must be 3-d (height, width, bands), got shape {arr.shape}"
            )
        if min(arr.shape) < 1:
            raise ValueError(f"cube dimensions must be positive, got shape {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError("cube values must be finite (no NaN or Inf)")
        arr.flags.writeable = False
        self.data = arr
        self.height, self.width, self.bands = arr.shape

    @property
    def pixel_count(self) -> int:
        return self.width * self.height

    def in_bounds(self, p) -> bool:
        x, y = p
        return 0 <= x < self.width and 0 <= y < self.height

    def spectrum(self, p) -> np.ndarray:
        """Spectrum of pixel p as a read-only (bands,) view."""
        x, y = p
        if not self.in_bounds(p):
            raise ValueError(f"pixel ({x}, {y}) out of bounds for {self.width}x{self.height} grid")
        return self.data[y, x]

    def __repr__(self) -> str:
        return f"SpectralCube({self.width}x{self.height}x{self.bands})"


def neighbors(p, connectivity: Connectivity, width: int, height: int) -> list[PixelIndex]:
    """In-bounds neighbors of p, in canonical order N, S, W, E, NW, NE, SW, SE."""
    x, y = p
    if not (0 <= x < width and 0 <= y < height):
        raise ValueError(f"pixel ({x}, {y}) out of bounds for {width}x{height} grid")
    out = []
    for dx, dy in connectivity.offsets:
        nx, ny = x + dx, y + dy
        if 0 <= nx < width and 0 <= ny < height:
            out.append(PixelIndex(nx, ny))
    return out


class LabelMap:
    """Dense non-negative region labels over the grid, one per pixel.

    Labels must be exactly {0, ..., count-1}. Per-class connectivity is a
    contract of the segmentation passes that produce label maps (it depends
    on the run's connectivity) and is asserted by recount in the tests, not
    enforced here.
    """

    __slots__ = ("labels", "count")

    def __init__(self, labels, count: int | None = None) -> None:
        arr = np.array(labels)
        if arr.ndim != 2:
            raise ValueError(f"labels must be 2-d (height, width), got shape {arr.shape}")
        if min(arr.shape) < 1:
            raise ValueError(f"label dimensions must be positive, got shape {arr.shape}")
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError(f"labels must be integers, got dtype {arr.dtype}")
        uniq = np.unique(arr)
        if uniq[0] != 0 or uniq[-1] != len(uniq) - 1:
            raise ValueError("labels must be dense: used labels must be exactly 0..count-1")
        if count is not None and count != len(uniq):
            raise ValueError(f"declared count {count} does not match {len(uniq)} used labels")
        arr = arr.astype(np.int32, copy=False)
        arr.flags.writeable = False
        self.labels = arr
        self.count = len(uniq)

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    def label_of(self, p) -> int:
        x, y = p
        return int(self.labels[y, x])

    def __repr__(self) -> str:
        return f"LabelMap({self.width}x{self.height}, count={self.count})"


def is_refinement(fine: LabelMap, coarse: LabelMap) -> bool:
    """True iff every class of `fine` lies wholly inside one class of `coarse`."""
    if fine.labels.shape != coarse.labels.shape:
        raise ValueError(
            f"dimension mismatch: {fine.labels.shape} vs {coarse.labels.shape}"
        )
    pairs = fine.labels.astype(np.int64) * coarse.count + coarse.labels
    return len(np.unique(pairs)) == fine.count


def relabel_dense(raw) -> LabelMap:
    """Renumber provisional labels densely in order of first raster appearance."""
    arr = np.asarray(raw)
    if arr.ndim != 2:
        raise ValueError(f"provisional labels must be 2-d, got shape {arr.shape}")
    flat = arr.ravel()
    uniq, first, inverse = np.unique(flat, return_index=True, return_inverse=True)
    remap = np.empty(len(uniq), dtype=np.int32)
    remap[np.argsort(first, kind="stable")] = np.arange(len(uniq), dtype=np.int32)
    return LabelMap(remap[inverse].reshape(arr.shape))


def region_sizes(labels: LabelMap) -> np.ndarray:
    """Pixel count per label, indexed by label."""
    return np.bincount(labels.labels.ravel(), minlength=labels.count)


def classes_are_connected(labels: LabelMap, connectivity: Connectivity = Connectivity.FOUR) -> bool:
    """Recount connected components per class; True iff one component each.

    This is the flood-fill recount used to audit partitions produced by the
    segmentation passes.
    """
    h, w = labels.labels.shape
    lab = labels.labels.ravel()
    seen = np.zeros(lab.size, dtype=bool)
    components = 0
    offsets = connectivity.offsets
    for start in range(lab.size):
        if seen[start]:
            continue
        components += 1
        if components > labels.count:
            return False
        seen[start] = True
        target = lab[start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            x, y = i % w, i // w
            for dx, dy in offsets:
                nx, ny = x + dx, y + dy
                if 0 <= nx < w and 0 <= ny < h:
                    j = ny * w + nx
                    if not seen[j] and lab[j] == target:
                        seen[j] = True
                        queue.append(j)
    return components == labels.count
