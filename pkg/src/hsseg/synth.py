"""Deterministic synthetic cubes for calibration and regression tests.

The tooth-saw cube is a 21x21x4 image whose first band ramps up and down
across columns by a fixed step while the remaining bands stay constant.
Rows are identical, so under the euclidean metric every vertical step costs
0 and every horizontal step costs exactly `step`. That calibration pins the
flat-zone counts: with step 10, a threshold of 9.9 admits no horizontal
edge (21 column zones) while 10 admits every edge (one zone).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import SpectralCube


@dataclass(frozen=True)
class ToothSawSpec:
    """Saw geometry: `teeth` monotone ramps of width/teeth columns each.

    Band 0 starts at 0 and moves by +-step per column, flipping direction
    after every ramp; bands 1.. hold constant_value everywhere.
    """

    width: int = 21
    height: int = 21
    bands: int = 4
    step: float = 10.0
    teeth: int = 3
    constant_value: float = 100.0

    def __post_init__(self):
        if self.width < 1 or self.height < 1 or self.bands < 1:
            raise ValueError("width, height and bands must be positive")
        if self.teeth < 1:
            raise ValueError("teeth must be positive")
        if self.width % self.teeth != 0:
            raise ValueError(
                f"width ({self.width}) must be a multiple of teeth ({self.teeth})"
            )
        if not (self.step >= 0):
            raise ValueError(f"step must be >= 0, got {self.step}")

    @property
    def ramp_length(self) -> int:
        return self.width // self.teeth


def tooth_saw_profile(spec: ToothSawSpec = ToothSawSpec()) -> np.ndarray:
    """Band-0 column profile of the saw, starting at 0."""
    ramp = spec.ramp_length
    values = np.empty(spec.width)
    values[0] = 0.0
    for x in range(1, spec.width):
        direction = 1.0 if ((x - 1) // ramp) % 2 == 0 else -1.0
        values[x] = values[x - 1] + direction * spec.step
    return values


def tooth_saw_cube(spec: ToothSawSpec = ToothSawSpec()) -> SpectralCube:
    """Build the saw cube: band 0 varies with x only, other bands constant."""
    profile = tooth_saw_profile(spec)
    data = np.full((spec.height, spec.width, spec.bands), spec.constant_value)
    data[:, :, 0] = profile[None, :]
    return SpectralCube(data)
