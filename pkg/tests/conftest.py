import numpy as np
import pytest
from hypothesis import strategies as st

from hsseg import MetricKind, SpectralCube, build_metric

# Quantized value levels give repeated spectra, so flat zones and ties with
# zero-weight edges actually occur in the random data.
LEVELS = (0.0, 0.25, 0.5, 0.75, 1.0)
POSITIVE_LEVELS = (0.25, 0.5, 0.75, 1.0)


@st.composite
def cubes(draw, max_side=7, max_bands=3, levels=LEVELS):
    w = draw(st.integers(1, max_side))
    h = draw(st.integers(1, max_side))
    b = draw(st.integers(1, max_bands))
    values = draw(st.lists(st.sampled_from(levels),
                           min_size=w * h * b, max_size=w * h * b))
    return SpectralCube(np.array(values).reshape(h, w, b))


@st.composite
def positive_cubes(draw, max_side=7, max_bands=3):
    return draw(cubes(max_side=max_side, max_bands=max_bands,
                      levels=POSITIVE_LEVELS))


def random_cube(rng, max_side, max_bands, positive=False):
    w = int(rng.integers(2, max_side + 1))
    h = int(rng.integers(2, max_side + 1))
    b = int(rng.integers(1, max_bands + 1))
    levels = np.array(POSITIVE_LEVELS if positive else LEVELS)
    return SpectralCube(rng.choice(levels, size=(h, w, b)))


def metric_for(cube, kind):
    return build_metric(cube, kind)


@pytest.fixture
def tooth_setup():
    from hsseg import tooth_saw_cube

    cube = tooth_saw_cube()
    metric = build_metric(cube, MetricKind.EUCLIDEAN)
    return cube, metric
