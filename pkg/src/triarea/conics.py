"""Dual conics, tangency tests, equal-area hyperbola envelopes, and the
general-position validator.

A conic is carried in dual form: a symmetric 3x3 matrix D with a line
l = (a, b, c) tangent exactly when l D l^T = 0.  Dual form makes "six lines
tangent to one conic" a rank condition on the 6x6 matrix of squared/mixed
coefficient monomials, including degenerate conics (all lines through one
point have dual p p^T).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import List, Optional, Sequence, Tuple

from .arrangement import Arrangement, Line, intersect
from .scalars import Scalar, exact_sign

Matrix = List[List[Scalar]]


def det_exact(rows: Matrix) -> Scalar:
    """Determinant by exact Gaussian elimination (any scalar field)."""
    m = [list(r) for r in rows]
    n = len(m)
    det: Scalar = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if exact_sign(m[r][col]) != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0) * det
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv = m[col][col]
        for r in range(col + 1, n):
            if exact_sign(m[r][col]) == 0:
                continue
            f = m[r][col] / inv
            for cc in range(col, n):
                m[r][cc] = m[r][cc] - f * m[col][cc]
    return det


def rank_exact(rows: Matrix) -> int:
    m = [list(r) for r in rows]
    nr, nc = len(m), len(m[0])
    rank = 0
    row = 0
    for col in range(nc):
        piv = None
        for r in range(row, nr):
            if exact_sign(m[r][col]) != 0:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = m[row][col]
        for r in range(row + 1, nr):
            if exact_sign(m[r][col]) != 0:
                f = m[r][col] / inv
                for cc in range(col, nc):
                    m[r][cc] = m[r][cc] - f * m[row][cc]
        rank += 1
        row += 1
        if row == nr:
            break
    return rank


def kernel_vector(rows: Matrix, ncols: int) -> Optional[List[Scalar]]:
    """A nonzero kernel vector of the (underdetermined) system, or None."""
    m = [list(r) for r in rows]
    nr = len(m)
    pivots: List[Tuple[int, int]] = []
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nr):
            if exact_sign(m[r][col]) != 0:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = m[row][col]
        m[row] = [v / inv for v in m[row]]
        for r in range(nr):
            if r != row and exact_sign(m[r][col]) != 0:
                f = m[r][col]
                m[r] = [m[r][cc] - f * m[row][cc] for cc in range(ncols)]
        pivots.append((row, col))
        row += 1
        if row == nr:
            break
    pivot_cols = {c for _, c in pivots}
    free = [c for c in range(ncols) if c not in pivot_cols]
    if not free:
        return None
    fc = free[0]
    vec: List[Scalar] = [Fraction(0)] * ncols
    vec[fc] = Fraction(1)
    for r, c in pivots:
        vec[c] = -m[r][fc]
    return vec


@dataclass(frozen=True)
class DualConic:
    """Symmetric dual form; tangent(l) iff l D l^T = 0."""

    d11: Scalar
    d12: Scalar
    d13: Scalar
    d22: Scalar
    d23: Scalar
    d33: Scalar

    def value(self, line: Line) -> Scalar:
        a, b, c = line.a, line.b, line.c
        return (
            self.d11 * a * a
            + self.d22 * b * b
            + self.d33 * c * c
            + 2 * (self.d12 * a * b + self.d13 * a * c + self.d23 * b * c)
        )

    def is_tangent(self, line: Line) -> bool:
        return exact_sign(self.value(line)) == 0

    def matrix(self) -> Matrix:
        return [
            [self.d11, self.d12, self.d13],
            [self.d12, self.d22, self.d23],
            [self.d13, self.d23, self.d33],
        ]

    def rank(self) -> int:
        return rank_exact(self.matrix())


UNIT_CIRCLE_DUAL = DualConic(
    Fraction(1), Fraction(0), Fraction(0), Fraction(1), Fraction(0), Fraction(-1)
)


def tangent(line: Line, conic: DualConic) -> bool:
    return conic.is_tangent(line)


def _monomial_row(line: Line) -> List[Scalar]:
    a, b, c = line.a, line.b, line.c
    return [a * a, b * b, c * c, a * b, a * c, b * c]


def six_tangent_test(lines: Sequence[Line]) -> bool:
    """True iff the six lines are tangent to a common conic, possibly a
    degenerate one (exact singularity of the 6x6 monomial matrix)."""
    if len(lines) != 6 or len(set(lines)) != 6:
        raise ValueError("exactly 6 distinct lines required")
    return exact_sign(det_exact([_monomial_row(l) for l in lines])) == 0


def five_tangent_conic(lines: Sequence[Line]) -> DualConic:
    """A common tangent conic of any 5 lines (the 5x6 monomial system
    always has a nontrivial kernel)."""
    if len(lines) != 5:
        raise ValueError("exactly 5 lines required")
    vec = kernel_vector([_monomial_row(l) for l in lines], 6)
    assert vec is not None
    w1, w2, w3, w4, w5, w6 = vec
    half = Fraction(1, 2)
    return DualConic(w1, w4 * half, w5 * half, w2, w6 * half, w3)


QUADRANT_SIGNS = {1: (1, 1), 2: (1, -1), 3: (-1, -1), 4: (-1, 1)}


def equal_area_conic(
    l1: Line, l2: Line, quadrant: int, lam: Scalar
) -> DualConic:
    """Dual conic of the hyperbola whose tangents cut triangles of area
    ``lam`` from the given quadrant at l1 ^ l2.

    Quadrants are indexed by the sign pair (sign of l1, sign of l2) of the
    canonical coefficient functionals: 1=(+,+), 2=(+,-), 3=(-,-), 4=(-,+).
    In the affine chart (u, v) = (l2(p), l1(p)) the hyperbola is u*v = k
    with k = s1*s2*|J|*lam/2, J the Jacobian of the chart; its dual pulls
    back through the chart matrix.
    """
    if quadrant not in QUADRANT_SIGNS:
        raise ValueError("quadrant must be 1..4")
    if exact_sign(lam) <= 0:
        raise ValueError("area must be positive")
    jac = l2.a * l1.b - l2.b * l1.a
    if exact_sign(jac) == 0:
        raise ValueError("lines are parallel")
    s1, s2 = QUADRANT_SIGNS[quadrant]
    k = abs(jac) * lam * s1 * s2 / 2
    h = [
        [l2.a, l2.b, l2.c],
        [l1.a, l1.b, l1.c],
        [Fraction(0), Fraction(0), Fraction(1)],
    ]
    hinv = _invert3(h)
    two_k = 2 * k
    canon = [
        [Fraction(0) * k, two_k, Fraction(0) * k],
        [two_k, Fraction(0) * k, Fraction(0) * k],
        [Fraction(0) * k, Fraction(0) * k, Fraction(-1)],
    ]
    d = _mat3(_mat3(hinv, canon), _transpose3(hinv))
    return DualConic(d[0][0], d[0][1], d[0][2], d[1][1], d[1][2], d[2][2])


def _invert3(m: Matrix) -> Matrix:
    det = det_exact(m)
    if exact_sign(det) == 0:
        raise ZeroDivisionError("singular matrix")
    cof = [
        [
            (m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3]
             - m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3])
            for i in range(3)
        ]
        for j in range(3)
    ]
    return [[cof[i][j] / det for j in range(3)] for i in range(3)]


def _mat3(x: Matrix, y: Matrix) -> Matrix:
    return [
        [sum((x[i][t] * y[t][j] for t in range(3)), Fraction(0)) for j in range(3)]
        for i in range(3)
    ]


def _transpose3(m: Matrix) -> Matrix:
    return [[m[j][i] for j in range(3)] for i in range(3)]


def triangle_quadrant(l1: Line, l2: Line, g: Line) -> Optional[int]:
    """Quadrant (w.r.t. l1, l2) holding the triangle (l1, l2, g); None when
    the triple is degenerate or g passes through l1 ^ l2."""
    v1 = intersect(l2, g)
    v2 = intersect(l1, g)
    if v1 is None or v2 is None:
        return None
    s1 = exact_sign(l1.evaluate(v1))
    s2 = exact_sign(l2.evaluate(v2))
    if s1 == 0 or s2 == 0:
        return None
    for q, signs in QUADRANT_SIGNS.items():
        if signs == (s1, s2):
            return q
    return None


@dataclass
class GeneralPositionReport:
    n: int
    parallel_pairs: List[Tuple[int, int]]
    concurrent_triples: List[Tuple[int, int, int]]
    tangent_six: List[Tuple[int, ...]]
    six_checked: int
    six_total: int
    exhaustive: bool

    @property
    def passed(self) -> bool:
        return not (self.parallel_pairs or self.concurrent_triples or self.tangent_six)


def validate_general_position(
    arr: Arrangement,
    exhaustive_cap: int = 3000,
    samples: int = 3000,
    seed: int = 0,
) -> GeneralPositionReport:
    """Flag parallel pairs, concurrent triples, and 6-subsets with a common
    tangent conic.  All C(n,6) subsets are tested when their number is
    within the cap; beyond it, seeded random subsets are sampled and the
    coverage is reported.
    """
    parallel = [
        (i, j)
        for i, j in combinations(range(arr.n), 2)
        if arr.lines[i].is_parallel_to(arr.lines[j])
    ]
    concurrent = arr.concurrent_triples()
    tangent_six: List[Tuple[int, ...]] = []
    total = comb(arr.n, 6) if arr.n >= 6 else 0
    checked = 0
    exhaustive = total <= exhaustive_cap
    if total:
        if exhaustive:
            subsets = combinations(range(arr.n), 6)
        else:
            rng = random.Random(seed)
            pool = range(arr.n)
            subsets = (
                tuple(sorted(rng.sample(pool, 6))) for _ in range(samples)
            )
        for sub in subsets:
            checked += 1
            if six_tangent_test([arr.lines[i] for i in sub]):
                tangent_six.append(tuple(sub))
    return GeneralPositionReport(
        n=arr.n,
        parallel_pairs=parallel,
        concurrent_triples=concurrent,
        tangent_six=tangent_six,
        six_checked=checked,
        six_total=total,
        exhaustive=exhaustive,
    )
