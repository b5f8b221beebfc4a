"""Tests for rainbow extraction against a brute-force optimum oracle."""

from fractions import Fraction
from itertools import combinations

import pytest

from triarea import (
    Arrangement,
    ColoredTripleSystem,
    Line,
    dedupe_slopes,
    extract_rainbow,
    hexgrid,
    is_rainbow,
    pentagon,
    random_arrangement,
    trigrid,
)
from triarea.distinct import DEGENERATE


def oracle_max_rainbow(sys):
    """Exhaustive search for a maximum rainbow subset (n <= 8 only)."""
    for size in range(sys.n, 2, -1):
        for sub in combinations(range(sys.n), size):
            if is_rainbow(sys, sub):
                return list(sub)
    return list(range(min(sys.n, 2)))


SMALL_CASES = [
    pentagon(),
    hexgrid(6),
    trigrid(7),
    random_arrangement(8, seed=5),
    random_arrangement(8, seed=11),
]


@pytest.mark.parametrize("arr", SMALL_CASES, ids=lambda a: f"n{a.n}")
@pytest.mark.parametrize("strategy", ["greedy", "sample_delete"])
def test_never_exceeds_optimum(arr, strategy):
    sys = ColoredTripleSystem.from_arrangement(arr)
    opt = oracle_max_rainbow(sys)
    got = extract_rainbow(sys, strategy=strategy, seed=3)
    assert is_rainbow(sys, got)
    assert len(got) <= len(opt)


def test_pentagon_optimum_is_three():
    # ten proper triples but only two areas: any 4-subset induces four
    # triples colored from two values, so three lines is the maximum
    sys = ColoredTripleSystem.from_arrangement(pentagon())
    assert len(oracle_max_rainbow(sys)) == 3
    got = extract_rainbow(sys, strategy="greedy", seed=0)
    assert len(got) == 3


def test_greedy_reaches_optimum_on_generic_lines():
    # all 56 areas distinct for this seed, so the whole set is rainbow
    arr = random_arrangement(8, seed=5)
    sys = ColoredTripleSystem.from_arrangement(arr)
    if len(oracle_max_rainbow(sys)) == arr.n:
        got = extract_rainbow(sys, strategy="greedy", seed=1)
        assert got == list(range(arr.n))


def test_degenerate_triples_blocked():
    # three concurrent lines: the triple through the common point can
    # never appear inside a returned subset
    lines = [
        Line(1, 0, 0),
        Line(0, 1, 0),
        Line(1, 1, 0),
        Line(1, 2, -7),
        Line(3, -1, -5),
    ]
    sys = ColoredTripleSystem.from_arrangement(Arrangement(lines))
    assert sys.color(0, 1, 2) == DEGENERATE
    for strategy in ("greedy", "sample_delete"):
        got = extract_rainbow(sys, strategy=strategy, seed=2)
        assert is_rainbow(sys, got)
        assert not {0, 1, 2} <= set(got)


def test_deterministic_for_fixed_seed():
    arr = random_arrangement(12, seed=9)
    sys = ColoredTripleSystem.from_arrangement(arr)
    a = extract_rainbow(sys, strategy="sample_delete", seed=4, trials=4)
    b = extract_rainbow(sys, strategy="sample_delete", seed=4, trials=4)
    assert a == b


def test_bad_inputs():
    sys = ColoredTripleSystem.from_arrangement(pentagon())
    with pytest.raises(ValueError):
        extract_rainbow(sys, strategy="anneal")
    with pytest.raises(ValueError):
        extract_rainbow(ColoredTripleSystem(0, {}))


def test_color_access_is_order_free():
    sys = ColoredTripleSystem.from_arrangement(hexgrid(6))
    assert sys.color(4, 1, 3) == sys.color(1, 3, 4)


def test_backend_agreement():
    arr = hexgrid(7)
    exact = ColoredTripleSystem.from_arrangement(arr, backend="exact")
    fast = ColoredTripleSystem.from_arrangement(arr, backend="numpy")
    assert exact.colors == fast.colors


def test_pair_color_violations_cap():
    # pair (0,1) sits in 22 triples of one color
    n = 24
    colors = {}
    for i, j, k in combinations(range(n), 3):
        colors[(i, j, k)] = Fraction(1) if (i, j) == (0, 1) else (i, j, k)
    sys = ColoredTripleSystem(n, colors)
    hits = sys.pair_color_violations(cap=21)
    assert (0, 1, Fraction(1), 22) in hits
    assert sys.pair_color_violations(cap=23) == []
    # degenerate triples never count toward the cap
    colors = {t: DEGENERATE for t in combinations(range(n), 3)}
    assert ColoredTripleSystem(n, colors).pair_color_violations(cap=1) == []


def test_dedupe_slopes():
    arr = hexgrid(8)
    slim = dedupe_slopes(arr)
    assert slim.n == 3
    assert len({line.direction() for line in slim.lines}) == 3
    # first representative of each class is kept
    assert slim.lines[0] == arr.lines[0]
