import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hsseg import (MetricKind, PixelIndex, RegionSizeCapError, SeedList,
                   SeedOrder, SpectralCube, build_metric, build_seed_list,
                   cumulative_distances, pop_first_unassigned)

from conftest import cubes
from oracles import naive_cumdists


def triangle_cube():
    # mutual euclidean distances 3, 4, 5 between the three pixels
    return SpectralCube(np.array([[[0.0, 0.0], [3.0, 0.0], [3.0, 4.0]]]))


def test_singleton_region():
    cube = triangle_cube()
    m = build_metric(cube, MetricKind.EUCLIDEAN)
    assert cumulative_distances(m, [(1, 0)]) == {PixelIndex(1, 0): 0.0}


def test_triangle_cumdists():
    m = build_metric(triangle_cube(), MetricKind.EUCLIDEAN)
    cd = cumulative_distances(m, [(0, 0), (1, 0), (2, 0)])
    assert cd[PixelIndex(0, 0)] == pytest.approx(3 + 5, abs=1e-12)
    assert cd[PixelIndex(1, 0)] == pytest.approx(3 + 4, abs=1e-12)
    assert cd[PixelIndex(2, 0)] == pytest.approx(4 + 5, abs=1e-12)


def test_empty_and_duplicate_regions_rejected():
    m = build_metric(triangle_cube(), MetricKind.EUCLIDEAN)
    with pytest.raises(ValueError):
        cumulative_distances(m, [])
    with pytest.raises(ValueError):
        cumulative_distances(m, [(0, 0), (0, 0)])


def test_region_size_cap():
    m = build_metric(triangle_cube(), MetricKind.EUCLIDEAN)
    with pytest.raises(RegionSizeCapError):
        cumulative_distances(m, [(0, 0), (1, 0), (2, 0)], max_region_size=2)


@given(cubes(max_side=6, max_bands=3), st.data())
@settings(max_examples=60, deadline=None)
def test_matches_double_loop_oracle(cube, data):
    m = build_metric(cube, MetricKind.EUCLIDEAN)
    pix = [PixelIndex(x, y) for y in range(cube.height) for x in range(cube.width)]
    k = data.draw(st.integers(1, len(pix)))
    region = data.draw(st.permutations(pix)).copy()[:k]
    got = cumulative_distances(m, region)
    expected = naive_cumdists(m, region)
    for p in region:
        assert got[p] == pytest.approx(expected[p], abs=1e-9)


def test_build_seed_list_orders():
    cd = {PixelIndex(0, 0): 7.0, PixelIndex(1, 0): 8.0, PixelIndex(2, 0): 9.0}
    med = build_seed_list(cd, SeedOrder.MEDIAN_FIRST)
    assert [p for p, _ in med.entries] == [(0, 0), (1, 0), (2, 0)]
    anti = build_seed_list(cd, SeedOrder.ANTIMEDIAN_FIRST)
    assert [p for p, _ in anti.entries] == [(2, 0), (1, 0), (0, 0)]


def test_ties_break_on_raster_index():
    cd = {PixelIndex(1, 2): 5.0, PixelIndex(3, 0): 5.0, PixelIndex(0, 2): 5.0}
    lst = build_seed_list(cd, SeedOrder.MEDIAN_FIRST)
    assert [p for p, _ in lst.entries] == [(3, 0), (0, 2), (1, 2)]
    rev = build_seed_list(cd, SeedOrder.ANTIMEDIAN_FIRST)
    assert [p for p, _ in rev.entries] == [(3, 0), (0, 2), (1, 2)]


def test_build_seed_list_rejects_empty():
    with pytest.raises(ValueError):
        build_seed_list({}, SeedOrder.MEDIAN_FIRST)


def test_antimedian_is_reverse_up_to_tie_blocks():
    rng = np.random.default_rng(3)
    cube = SpectralCube(rng.uniform(0, 1, (4, 4, 2)))
    m = build_metric(cube, MetricKind.EUCLIDEAN)
    region = [PixelIndex(x, y) for y in range(4) for x in range(4)]
    cd = cumulative_distances(m, region)
    med = build_seed_list(cd, SeedOrder.MEDIAN_FIRST)
    anti = build_seed_list(cd, SeedOrder.ANTIMEDIAN_FIRST)
    assert [c for _, c in anti.entries] == sorted((c for _, c in med.entries), reverse=True)


@given(cubes(max_side=5), st.data())
@settings(max_examples=60, deadline=None)
def test_median_minimizes_cumulative_distance(cube, data):
    m = build_metric(cube, MetricKind.EUCLIDEAN)
    pix = [PixelIndex(x, y) for y in range(cube.height) for x in range(cube.width)]
    k = data.draw(st.integers(1, len(pix)))
    region = data.draw(st.permutations(pix)).copy()[:k]
    cd = cumulative_distances(m, region)
    med = build_seed_list(cd, SeedOrder.MEDIAN_FIRST).entries[0][0]
    anti = build_seed_list(cd, SeedOrder.ANTIMEDIAN_FIRST).entries[0][0]
    assert cd[med] == min(cd.values())
    assert cd[anti] == max(cd.values())


@given(cubes(max_side=4), st.data())
@settings(max_examples=40, deadline=None)
def test_median_invariant_under_enumeration_order(cube, data):
    m = build_metric(cube, MetricKind.EUCLIDEAN)
    pix = [PixelIndex(x, y) for y in range(cube.height) for x in range(cube.width)]
    shuffled = data.draw(st.permutations(pix))
    a = build_seed_list(cumulative_distances(m, pix), SeedOrder.MEDIAN_FIRST)
    b = build_seed_list(cumulative_distances(m, shuffled), SeedOrder.MEDIAN_FIRST)
    assert a.entries[0][0] == b.entries[0][0]


def test_pop_first_unassigned():
    cd = {PixelIndex(0, 0): 1.0, PixelIndex(1, 0): 2.0, PixelIndex(2, 0): 3.0}
    lst = build_seed_list(cd, SeedOrder.MEDIAN_FIRST)
    assert pop_first_unassigned(lst, lambda p: False) == (0, 0)
    taken = {PixelIndex(1, 0)}
    assert pop_first_unassigned(lst, taken.__contains__) == (2, 0)
    assert pop_first_unassigned(lst, lambda p: False) is None

    empty = SeedList(entries=[], order=SeedOrder.MEDIAN_FIRST)
    assert pop_first_unassigned(empty, lambda p: False) is None
