"""Unit-area triangles on a line as point-line incidences.

A line crossing the reference with frame parameters (x, y) lifts to the
point (x, 2y - x^2) and to the dual line v = -2x*u + (2y + x^2).  The point
of one line lies on the dual of another exactly when 2(y_i - y_j) =
(x_i - x_j)^2, i.e. when the two lines cut a unit-area triangle with the
reference (frame scale 1).  Counting incidences therefore counts unit
triangles supported by the reference line, once per unordered pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .arrangement import (
    Arrangement,
    FrameParam,
    Line,
    frame_params,
    frame_scale,
    horizontal_map,
)
from .scalars import Scalar, exact_sign


@dataclass(frozen=True)
class LiftedPoint:
    index: int
    u: Scalar
    v: Scalar


@dataclass(frozen=True)
class DualLine:
    index: int
    slope: Scalar
    intercept: Scalar


def lift(params: Sequence[FrameParam]) -> Tuple[List[LiftedPoint], List[DualLine]]:
    """Both images (point and dual line) of every frame parameter pair.

    The caller must supply parameters from a scale-one frame (horizontal
    reference with primitive direction (1,0)); otherwise areas do not match
    the incidence condition.
    """
    points = [LiftedPoint(p.index, p.x, 2 * p.y - p.x * p.x) for p in params]
    duals = [DualLine(p.index, -2 * p.x, 2 * p.y + p.x * p.x) for p in params]
    return points, duals


def incidence_count(
    points: Iterable[LiftedPoint], duals: Iterable[DualLine]
) -> int:
    """Exact number of (point, dual line) incidences, excluding pairs that
    originate from the same input line."""
    by_u: dict = {}
    for pt in points:
        by_u.setdefault(pt.u, {}).setdefault(pt.v, []).append(pt.index)
    total = 0
    for dl in duals:
        for u, by_v in by_u.items():
            v = dl.slope * u + dl.intercept
            hits = by_v.get(v)
            if hits:
                total += len(hits)
                if dl.index in hits:
                    total -= 1
    return total


def reference_params(arr: Arrangement, ell: Line) -> List[FrameParam]:
    """Scale-one frame parameters of every other line of ``arr`` on ``ell``.

    Applies the determinant-one map sending ``ell`` horizontal first, so the
    returned parameters live in a frame with scale exactly 1.  Indices refer
    to positions in ``arr`` (the reference line itself is excluded, as are
    lines parallel to it).
    """
    amap = horizontal_map(ell)
    moved_ell = amap.apply_line(ell)
    assert frame_scale(moved_ell) == 1
    others = []
    keep = []
    for idx, line in enumerate(arr.lines):
        if line == ell:
            continue
        others.append(amap.apply_line(line))
        keep.append(idx)
    raw = frame_params(moved_ell, others)
    return [FrameParam(index=keep[p.index], x=p.x, y=p.y) for p in raw]


def unit_count_on_line_by_incidence(arr: Arrangement, ell: Line) -> int:
    """Unit-area triangles supported by ``ell``, counted through the lift.

    Independent of the census route: the only geometry used is the frame
    parametrization and exact incidence hashing.
    """
    params = reference_params(arr, ell)
    points, duals = lift(params)
    return incidence_count(points, duals)


def unit_incidence_pairs(arr: Arrangement, ell: Line) -> List[Tuple[int, int]]:
    """Index pairs (i, j) whose lines cut a unit triangle with ``ell``,
    oriented so line i carries the lifted point (y_i > y_j)."""
    params = reference_params(arr, ell)
    points, duals = lift(params)
    out = []
    for pt in points:
        for dl in duals:
            if dl.index == pt.index:
                continue
            if exact_sign(pt.v - (dl.slope * pt.u + dl.intercept)) == 0:
                out.append((pt.index, dl.index))
    return out
