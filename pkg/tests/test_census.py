"""Census tests against an independent brute-force oracle."""

from fractions import Fraction
from itertools import combinations

import pytest

from triarea.arrangement import Arrangement, Line, intersect
from triarea.census import (
    UNIT_AREA,
    census,
    facial_triangle_count,
    facial_triangles,
    per_line_counts,
    select_backend,
    triples_with_area,
    unit_count_by_frame_identity,
)
from triarea.constructions import (
    hexgrid,
    pentagon,
    random_arrangement,
    st_extremal,
    trigrid,
)
from triarea.scalars import exact_sign


def oracle_census(arr):
    """O(n^3) shoelace census straight from the definition."""
    areas = {}
    concurrent = parallel = 0
    for l1, l2, l3 in combinations(arr.lines, 3):
        p12 = intersect(l1, l2)
        p13 = intersect(l1, l3)
        p23 = intersect(l2, l3)
        if p12 is None or p13 is None or p23 is None:
            parallel += 1
            continue
        (x1, y1), (x2, y2), (x3, y3) = p12, p13, p23
        double = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1)
        if exact_sign(double) == 0:
            concurrent += 1
            continue
        area = abs(double) / 2
        areas[area] = areas.get(area, 0) + 1
    return areas, concurrent, parallel


def oracle_facial_count(arr):
    """A proper triangle is facial iff no other line separates its vertices."""
    count = 0
    for i, j, k in combinations(range(arr.n), 3):
        l1, l2, l3 = arr.lines[i], arr.lines[j], arr.lines[k]
        verts = [intersect(l1, l2), intersect(l1, l3), intersect(l2, l3)]
        if any(v is None for v in verts):
            continue
        (x1, y1), (x2, y2), (x3, y3) = verts
        double = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1)
        if exact_sign(double) == 0:
            continue
        facial = True
        for m, line in enumerate(arr.lines):
            if m in (i, j, k):
                continue
            signs = {exact_sign(line.evaluate(v)) for v in verts}
            if 1 in signs and -1 in signs:
                facial = False
                break
        if facial:
            count += 1
    return count


CASES = [
    hexgrid(7),
    trigrid(9),
    pentagon(),
    random_arrangement(10, seed=2),
    random_arrangement(12, seed=5),
    st_extremal(2)[0],
]


@pytest.mark.parametrize("arr", CASES, ids=lambda a: f"n{a.n}-{a.field_name()}")
def test_census_matches_oracle(arr):
    oracle_areas, oracle_conc, oracle_par = oracle_census(arr)
    cen = census(arr)
    assert cen.concurrent_count == oracle_conc
    assert cen.parallel_count == oracle_par
    assert cen.proper_count == sum(oracle_areas.values())
    assert cen.distinct_count == len(oracle_areas)
    for area, count in oracle_areas.items():
        assert cen.count(area) == count


@pytest.mark.parametrize("arr", CASES, ids=lambda a: f"n{a.n}-{a.field_name()}")
def test_facial_count_matches_oracle(arr):
    assert facial_triangle_count(arr) == oracle_facial_count(arr)


def test_facial_triangles_consistent_with_count():
    arr = random_arrangement(11, seed=7)
    tris = facial_triangles(arr)
    assert len(tris) == facial_triangle_count(arr)
    assert len(set(tris)) == len(tris)
    cen = census(arr)
    min_triples = set(triples_with_area(arr, cen.min_area))
    # minimum-area triangles are always facial
    assert min_triples <= set(tris)


def test_census_totals():
    arr = random_arrangement(9, seed=1)
    cen = census(arr)
    n = arr.n
    assert cen.total_triples == n * (n - 1) * (n - 2) // 6
    assert sum(c for _, c in cen.sorted_items()) == cen.proper_count


def test_sorted_items_ascending():
    cen = census(pentagon())
    items = cen.sorted_items()
    for (a1, _), (a2, _) in zip(items, items[1:]):
        assert exact_sign(a2 - a1) > 0


def test_unit_count_and_per_line():
    arr, ell = st_extremal(2)
    cen = census(arr)
    counts = per_line_counts(arr, UNIT_AREA)
    assert len(counts) == arr.n
    # the distinguished line is last and sees at least k^4 unit triangles
    assert counts[-1] >= 16
    total_on_lines = sum(counts)
    assert total_on_lines == 3 * cen.unit_count


def test_unit_count_by_frame_identity_agrees():
    for seed in range(4):
        arr = random_arrangement(8, seed=seed)
        assert unit_count_by_frame_identity(arr) == census(arr).unit_count
    arr, _ = st_extremal(2)
    assert unit_count_by_frame_identity(arr) == census(arr).unit_count


def test_backends_agree():
    arr = random_arrangement(12, seed=9)
    exact = census(arr, backend="exact")
    vec = census(arr, backend="numpy")
    assert exact.area_counts == vec.area_counts
    assert exact.concurrent_count == vec.concurrent_count
    assert exact.parallel_count == vec.parallel_count


def test_select_backend_irrational_falls_back_to_exact():
    assert select_backend(pentagon(), "auto") == "exact"
    with pytest.raises(ValueError):
        census(pentagon(), backend="numpy")


def test_census_rejects_small():
    arr = Arrangement([Line(1, 0, 0), Line(0, 1, 0)])
    cen = census(arr)
    assert cen.total_triples == 0
    assert cen.proper_count == 0
