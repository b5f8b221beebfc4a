"""Complete triangle-area census of an arrangement.

Every triple of lines is classified (proper / concurrent / parallel pair)
and proper triples are grouped by exact area.  Rational arrangements whose
canonical integer coefficients certify int64-safe intermediates run on the
compiled or vectorized kernels in _kernels; everything else (and every
verification) uses exact scalar arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .arrangement import (
    CONCURRENT,
    HAS_PARALLEL_PAIR,
    PROPER,
    Arrangement,
    Line,
    choose_reference_frame,
    frame_params,
    triple_area,
)
from .scalars import Scalar, exact_sign

UNIT_AREA = Fraction(1)


class AreaCensus:
    """Census result: per-area triangle counts plus degeneracy counts."""

    def __init__(
        self,
        n: int,
        area_counts: Dict[Scalar, int],
        concurrent: int,
        parallel: int,
        backend: str,
    ) -> None:
        self.n = n
        self.area_counts = area_counts
        self.concurrent_count = concurrent
        self.parallel_count = parallel
        self.backend = backend

    @property
    def proper_count(self) -> int:
        return sum(self.area_counts.values())

    @property
    def total_triples(self) -> int:
        return self.proper_count + self.concurrent_count + self.parallel_count

    @property
    def distinct_count(self) -> int:
        return len(self.area_counts)

    def count(self, area: Scalar) -> int:
        return self.area_counts.get(area, 0)

    @property
    def unit_count(self) -> int:
        return self.count(UNIT_AREA)

    def _extreme(self, want_max: bool) -> Optional[Scalar]:
        best = None
        for area in self.area_counts:
            if best is None:
                best = area
            else:
                s = exact_sign(area - best)
                if (s > 0) if want_max else (s < 0):
                    best = area
        return best

    @property
    def min_area(self) -> Optional[Scalar]:
        return self._extreme(want_max=False)

    @property
    def max_area(self) -> Optional[Scalar]:
        return self._extreme(want_max=True)

    @property
    def max_area_count(self) -> int:
        m = self.max_area
        return 0 if m is None else self.area_counts[m]

    @property
    def min_area_count(self) -> int:
        m = self.min_area
        return 0 if m is None else self.area_counts[m]

    def sorted_items(self) -> List[Tuple[Scalar, int]]:
        """(area, count) pairs in increasing area order."""
        items = list(self.area_counts.items())
        import functools

        items.sort(key=functools.cmp_to_key(lambda u, v: exact_sign(u[0] - v[0])))
        return items

    def __repr__(self) -> str:
        return (
            f"AreaCensus(n={self.n}, proper={self.proper_count}, "
            f"distinct={self.distinct_count}, concurrent={self.concurrent_count}, "
            f"parallel={self.parallel_count}, backend={self.backend!r})"
        )


def integer_coefficients(arr: Arrangement) -> Optional[np.ndarray]:
    """Canonical integer coefficient matrix, or None for irrational fields."""
    if arr.radicand is not None:
        return None
    rows = []
    for line in arr.lines:
        row = []
        for coeff in line.coefficients():
            if coeff.denominator != 1:  # canonical lines have integer leaves
                return None
            row.append(coeff.numerator)
        rows.append(row)
    mat = np.array(rows, dtype=object)
    if (np.abs(mat) >= 2**62).any():
        return None
    return mat.astype(np.int64)


def select_backend(arr: Arrangement, backend: str = "auto") -> str:
    """Resolve 'auto' to the fastest applicable backend for this input."""
    if backend == "exact":
        return "exact"
    coeffs = integer_coefficients(arr)
    eligible = coeffs is not None and _kernels.int64_safe(coeffs)
    if backend in ("numba", "numpy"):
        if not eligible:
            raise ValueError(f"backend {backend!r} needs int64-safe integer input")
        if backend == "numba" and not _kernels.HAVE_NUMBA:
            raise ValueError("numba backend unavailable")
        return backend
    if backend != "auto":
        raise ValueError(f"unknown backend {backend!r}")
    if not eligible:
        return "exact"
    return "numba" if _kernels.HAVE_NUMBA else "numpy"


def census(arr: Arrangement, backend: str = "auto") -> AreaCensus:
    chosen = select_backend(arr, backend)
    if chosen == "exact":
        return _census_exact(arr)
    coeffs = integer_coefficients(arr)
    num, den, status = _kernels.census_int64(coeffs, chosen)
    proper = status == _kernels.STATUS_PROPER
    counts: Dict[Scalar, int] = {}
    if proper.any():
        pairs = np.stack([num[proper], den[proper]], axis=1)
        uniq, cnt = np.unique(pairs, axis=0, return_counts=True)
        for (nm, dn), c in zip(uniq.tolist(), cnt.tolist()):
            counts[Fraction(nm, dn)] = int(c)
    return AreaCensus(
        n=arr.n,
        area_counts=counts,
        concurrent=int((status == _kernels.STATUS_CONCURRENT).sum()),
        parallel=int((status == _kernels.STATUS_PARALLEL).sum()),
        backend=chosen,
    )


def _census_exact(arr: Arrangement) -> AreaCensus:
    counts: Dict[Scalar, int] = {}
    concurrent = parallel = 0
    for l1, l2, l3 in combinations(arr.lines, 3):
        area, status = triple_area(l1, l2, l3)
        if status == PROPER:
            counts[area] = counts.get(area, 0) + 1
        elif status == CONCURRENT:
            concurrent += 1
        else:
            parallel += 1
    return AreaCensus(
        n=arr.n,
        area_counts=counts,
        concurrent=concurrent,
        parallel=parallel,
        backend="exact",
    )


def triples_with_area(arr: Arrangement, area: Scalar) -> Iterator[Tuple[int, int, int]]:
    """Index triples whose triangle has exactly the given area."""
    for i, j, k in combinations(range(arr.n), 3):
        got, status = triple_area(arr.lines[i], arr.lines[j], arr.lines[k])
        if status == PROPER and exact_sign(got - area) == 0:
            yield (i, j, k)


def per_line_counts(arr: Arrangement, area: Scalar, backend: str = "auto") -> List[int]:
    """For each line, how many triangles of the given area use it."""
    chosen = select_backend(arr, backend)
    out = [0] * arr.n
    if chosen != "exact" and isinstance(area, Fraction):
        coeffs = integer_coefficients(arr)
        num, den, status = _kernels.census_int64(coeffs, chosen)
        I, J, K = _kernels.combo_index_arrays(arr.n)
        hit = (
            (status == _kernels.STATUS_PROPER)
            & (num == area.numerator)
            & (den == area.denominator)
        )
        for arrp in (I[hit], J[hit], K[hit]):
            for idx, c in zip(*np.unique(arrp, return_counts=True)):
                out[int(idx)] += int(c)
        return out
    for i, j, k in triples_with_area(arr, area):
        out[i] += 1
        out[j] += 1
        out[k] += 1
    return out


def facial_triangles(arr: Arrangement) -> List[Tuple[int, int, int]]:
    """Proper triples realized as faces: no other line meets the open
    triangle, i.e. no line has vertices strictly on both of its sides."""
    out = []
    verts = {}
    for i, j in combinations(range(arr.n), 2):
        w = arr.lines[i].a * arr.lines[j].b - arr.lines[j].a * arr.lines[i].b
        if exact_sign(w) != 0:
            px = arr.lines[i].b * arr.lines[j].c - arr.lines[j].b * arr.lines[i].c
            py = arr.lines[i].c * arr.lines[j].a - arr.lines[j].c * arr.lines[i].a
            verts[(i, j)] = (px, py, w)
    for i, j, k in combinations(range(arr.n), 3):
        vs = [verts.get((i, j)), verts.get((i, k)), verts.get((j, k))]
        if any(v is None for v in vs):
            continue
        det = (
            vs[0][0] * (vs[1][1] * vs[2][2] - vs[1][2] * vs[2][1])
            - vs[0][1] * (vs[1][0] * vs[2][2] - vs[1][2] * vs[2][0])
            + vs[0][2] * (vs[1][0] * vs[2][1] - vs[1][1] * vs[2][0])
        )
        if exact_sign(det) == 0:
            continue
        face = True
        for t in range(arr.n):
            if t in (i, j, k):
                continue
            lt = arr.lines[t]
            has_pos = has_neg = False
            for (px, py, w) in vs:
                s = exact_sign((lt.a * px + lt.b * py + lt.c * w) * w)
                has_pos |= s > 0
                has_neg |= s < 0
            if has_pos and has_neg:
                face = False
                break
        if face:
            out.append((i, j, k))
    return out


def facial_triangle_count(arr: Arrangement, backend: str = "auto") -> int:
    chosen = select_backend(arr, backend)
    if chosen == "exact":
        return len(facial_triangles(arr))
    coeffs = integer_coefficients(arr)
    return int(_kernels.facial_int64(coeffs, chosen).sum())


def frame_identity_sum(pi, pj, pk) -> Scalar:
    """The scale-one frame identity; equals 2*area for x-sorted triples and
    0 for concurrent ones.  Caller must exclude equal cotangents."""
    return (
        (pj.x - pi.x) ** 2 / (pi.y - pj.y)
        + (pk.x - pj.x) ** 2 / (pj.y - pk.y)
        + (pi.x - pk.x) ** 2 / (pk.y - pi.y)
    )


def unit_count_by_frame_identity(arr: Arrangement) -> int:
    """Count unit-area triangles via the reference-frame identity.

    A route independent of the shoelace census: shear so no line is
    horizontal, take frame parameters on a reference line below every
    intersection, and count x-sorted triples whose identity sum is exactly
    2.  Agrees with ``census(arr).unit_count``.
    """
    rf = choose_reference_frame(arr)
    ps = frame_params(rf.ref_line, rf.arrangement.lines)
    assert len(ps) == arr.n
    ps = sorted(ps, key=lambda p: _XKey(p.x))
    two = Fraction(2)
    total = 0
    for pi, pj, pk in combinations(ps, 3):
        if (
            exact_sign(pi.y - pj.y) == 0
            or exact_sign(pj.y - pk.y) == 0
            or exact_sign(pk.y - pi.y) == 0
        ):
            continue
        if exact_sign(frame_identity_sum(pi, pj, pk) - two) == 0:
            total += 1
    return total


class _XKey:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return exact_sign(self.v - other.v) < 0

    def __eq__(self, other):
        return exact_sign(self.v - other.v) == 0
