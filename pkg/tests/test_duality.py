"""Duality tests: lifting frame parameters to points and dual lines turns
unit-area triangle counting into incidence counting."""

from fractions import Fraction
from itertools import combinations

from triarea.arrangement import PROPER, triple_area
from triarea.census import UNIT_AREA, per_line_counts
from triarea.constructions import random_arrangement, st_extremal
from triarea.duality import (
    incidence_count,
    lift,
    reference_params,
    unit_count_on_line_by_incidence,
    unit_incidence_pairs,
)
from triarea.scalars import exact_sign


def oracle_units_on_line(arr, ell):
    """Direct enumeration of unit-area triangles supported by ell."""
    others = [l for l in arr.lines if l != ell]
    count = 0
    for l1, l2 in combinations(others, 2):
        area, status = triple_area(ell, l1, l2)
        if status == PROPER and exact_sign(area - 1) == 0:
            count += 1
    return count


def test_lift_shapes():
    arr = random_arrangement(7, seed=0)
    ell = arr.lines[2]
    params = reference_params(arr, ell)
    assert len(params) == arr.n - 1
    points, duals = lift(params)
    assert len(points) == len(duals) == len(params)
    by_index = {p.index for p in points}
    assert 2 not in by_index


def test_incidence_equals_direct_count_small():
    for seed in range(6):
        arr = random_arrangement(8, seed=seed)
        for idx in (0, arr.n - 1):
            ell = arr.lines[idx]
            assert unit_count_on_line_by_incidence(arr, ell) == oracle_units_on_line(
                arr, ell
            )


def test_incidence_equals_census_per_line():
    for seed in (1, 4, 9):
        arr = random_arrangement(10, seed=seed)
        counts = per_line_counts(arr, UNIT_AREA)
        for idx, ell in enumerate(arr.lines):
            assert unit_count_on_line_by_incidence(arr, ell) == counts[idx]


def test_unit_incidence_pairs_witness():
    arr, ell = st_extremal(2)
    pairs = unit_incidence_pairs(arr, ell)
    assert len(pairs) == unit_count_on_line_by_incidence(arr, ell)
    for i, j in pairs:
        area, status = triple_area(ell, arr.lines[i], arr.lines[j])
        assert status == PROPER
        assert exact_sign(area - 1) == 0


def test_self_incidence_excluded():
    # every lifted point lies on its own dual line; those hits must not count
    arr = random_arrangement(6, seed=3)
    ell = arr.lines[0]
    points, duals = lift(reference_params(arr, ell))
    for p, d in zip(points, duals):
        assert p.index == d.index
        assert exact_sign(p.v - (d.slope * p.u + d.intercept)) == 0
    assert unit_count_on_line_by_incidence(arr, ell) == oracle_units_on_line(arr, ell)


def test_st_extremal_incidences_match_design():
    for k in (1, 2):
        arr, ell = st_extremal(k)
        assert unit_count_on_line_by_incidence(arr, ell) >= k**4
