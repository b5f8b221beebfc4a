"""Chained maximum-area construction: 5(k+1) lines with >= 5+7k triangles
of maximum area.

One round combines the running arrangement L with a fresh pentagon K of the
same maximum area A:

 1. For each part, find a *safe strip*: two parallel boundary lines, not
    parallel to any line of the part, with no vertex of the part between
    them, such that each boundary would cut only sub-maximum triangles.
    Gate segments across the strip beyond all crossings give a rectangle;
    any line entering one gate and leaving the other crosses every line of
    the part inside the strip, and every triangle it forms with two part
    lines is strictly contained in a sub-maximum boundary triangle.
 2. Place the parts by determinant-one maps: L's strip horizontal and tall,
    K's strip vertical and wide, so each part's lines thread the other's
    gates.  The union then has exactly T(L) + T(K) maximum triangles.
 3. Slide K's image horizontally to the first parameter where some mixed
    triple reaches area A (smallest positive root of the per-triple
    quadratics; roots may require adjoining a square root to the scalar
    field).
 4. Slide again along the contact triangle's own anchor line, which keeps
    that triangle rigid, until a second mixed triple reaches A.

Every within-part area is translation invariant, so the construction
certifies at least T(L) + T(K) + 2 maximum-area triangles, each an exact
root of its defining equation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .arrangement import AffineMap, Arrangement, Line, horizontal_map, intersect
from .constructions import pentagon
from .scalars import (
    QuadExt,
    Scalar,
    exact_sign,
    interval_of,
    lift_to,
    sqrt_exact,
)


class ChainError(RuntimeError):
    """Construction left its provable envelope (should not happen)."""


def _signed_double_area(l1: Line, l2: Line, l3: Line) -> Optional[Scalar]:
    """det/(w1*w2*w3), i.e. twice the signed area; None when degenerate."""
    def vert(p, q):
        return (
            p.b * q.c - q.b * p.c,
            p.c * q.a - q.c * p.a,
            p.a * q.b - q.a * p.b,
        )

    p1, p2, p3 = vert(l1, l2), vert(l1, l3), vert(l2, l3)
    if exact_sign(p1[2]) == 0 or exact_sign(p2[2]) == 0 or exact_sign(p3[2]) == 0:
        return None
    det = (
        p1[0] * (p2[1] * p3[2] - p2[2] * p3[1])
        - p1[1] * (p2[0] * p3[2] - p2[2] * p3[0])
        + p1[2] * (p2[0] * p3[1] - p2[1] * p3[0])
    )
    return det / (p1[2] * p2[2] * p3[2])


def _translate_line(line: Line, vx: Scalar, vy: Scalar) -> Line:
    return Line(line.a, line.b, line.c - (line.a * vx + line.b * vy))


@dataclass
class SafeStrip:
    """Horizontal safe strip of a part after normalization: boundaries
    y = lo and y = hi, gate x-positions at +-gate_x."""

    lo: Scalar
    hi: Scalar
    gate_x: Scalar


def _strip_direction(lines: Sequence[Line]) -> int:
    """Smallest integer r such that (1, r) is parallel to no line."""
    r = 0
    while any(exact_sign(l.a + l.b * r) == 0 for l in lines):
        r += 1
    return r


def _max_new_area(parabolas, tau: Scalar) -> Scalar:
    best = None
    for alpha, root in parabolas:
        d = tau - root
        val = alpha * d * d
        if best is None or exact_sign(val - best) > 0:
            best = val
    return best


def _find_safe_interval(
    lines: Sequence[Line], r: int, max_area: Scalar
) -> Tuple[Scalar, Scalar]:
    """Boundaries tau' < tau'' for strip lines -r*x + y = tau: no vertex
    offset inside, both boundary lines cut only sub-maximum triangles.

    The cutting areas form parabolas in tau, one per line pair, vanishing
    where the strip line meets that pair's vertex; their max is convex and
    dips strictly below the maximum area (adding a minimizing line would
    otherwise support two maximum triangles on opposite sides, impossible
    when nothing is parallel).  A quartering search finds a sub-maximum
    point, then the interval shrinks until it clears all vertex offsets.
    """
    offsets = []
    parabolas = []
    for l1, l2 in combinations(lines, 2):
        p = intersect(l1, l2)
        if p is None:
            raise ChainError("parts must have no parallel pair")
        root = p[1] - p[0] * r
        offsets.append(root)
        probe = Line(Fraction(-r), Fraction(1), -(root + 1))
        area2 = _signed_double_area(probe, l1, l2)
        assert area2 is not None
        alpha = abs(area2) / 2
        parabolas.append((alpha, root))

    lo = hi = offsets[0]
    for o in offsets[1:]:
        if exact_sign(o - lo) < 0:
            lo = o
        if exact_sign(o - hi) > 0:
            hi = o
    lo, hi = lo - 1, hi + 1
    tau = None
    for _ in range(300):
        quarter = (hi - lo) / 4
        probes = [lo + quarter, lo + 2 * quarter, lo + 3 * quarter]
        vals = [_max_new_area(parabolas, t) for t in probes]
        for t, v in zip(probes, vals):
            if exact_sign(v - max_area) < 0:
                tau = t
                break
        if tau is not None:
            break
        # keep the convex minimizer bracketed
        if exact_sign(vals[0] - vals[2]) <= 0:
            hi = probes[2]
        else:
            lo = probes[0]
    if tau is None:
        raise ChainError("no sub-maximum strip position found")

    # nudge off a vertex offset if we landed on one
    gap = None
    for o in offsets:
        d = abs(o - tau)
        if exact_sign(d) != 0 and (gap is None or exact_sign(d - gap) < 0):
            gap = d
    if gap is None:
        gap = Fraction(1)
    while any(exact_sign(o - tau) == 0 for o in offsets):
        tau = tau + gap / 2
        gap = gap / 2
        if exact_sign(_max_new_area(parabolas, tau) - max_area) >= 0:
            raise ChainError("vertex nudge left the sub-maximum region")

    delta = gap / 2
    while True:
        t1, t2 = tau - delta, tau + delta
        v1 = _max_new_area(parabolas, t1)
        v2 = _max_new_area(parabolas, t2)
        if exact_sign(v1 - max_area) < 0 and exact_sign(v2 - max_area) < 0:
            return t1, t2
        delta = delta / 2


def _normalize_part(lines: Sequence[Line], max_area: Scalar) -> Tuple[List[Line], SafeStrip]:
    """Map the part by a determinant-one map so its safe strip is the
    horizontal band lo <= y <= hi centered at zero, and compute gates."""
    r = _strip_direction(lines)
    t1, t2 = _find_safe_interval(lines, r, max_area)
    strip_line = Line(Fraction(-r), Fraction(1), Fraction(0))
    amap = horizontal_map(strip_line)
    moved = [amap.apply_line(l) for l in lines]
    b1 = amap.apply_line(Line(Fraction(-r), Fraction(1), -t1))
    b2 = amap.apply_line(Line(Fraction(-r), Fraction(1), -t2))
    y1 = -b1.c / b1.b
    y2 = -b2.c / b2.b
    if exact_sign(y1 - y2) > 0:
        y1, y2 = y2, y1
    mid = (y1 + y2) / 2
    shift = AffineMap.translation(Fraction(0), -mid)
    moved = [shift.apply_line(l) for l in moved]
    y1, y2 = y1 - mid, y2 - mid
    xs = []
    for l in moved:
        for yy in (y1, y2):
            # crossing of l with the boundary y = yy (l is never horizontal)
            xs.append((-l.c - l.b * yy) / l.a)
    gate = abs(xs[0])
    for x in xs[1:]:
        if exact_sign(abs(x) - gate) > 0:
            gate = abs(x)
    return moved, SafeStrip(lo=y1, hi=y2, gate_x=gate + 1)


def _scale_part(lines: Sequence[Line], strip: SafeStrip, lam: int) -> Tuple[List[Line], SafeStrip]:
    """(x, y) -> (x/lam, lam*y): keeps the strip horizontal, multiplies its
    height by lam and divides gate positions by lam."""
    out = [Line(l.a * lam, l.b / lam, l.c) for l in lines]
    return out, SafeStrip(lo=strip.lo * lam, hi=strip.hi * lam, gate_x=strip.gate_x / lam)


_ROT90 = AffineMap(Fraction(0), Fraction(-1), Fraction(1), Fraction(0), Fraction(0), Fraction(0))


def _crosses_vertical_gates(line: Line, strip: SafeStrip) -> bool:
    """Does the line cross both gate segments x = +-gate_x, lo<y<hi?"""
    if exact_sign(line.b) == 0:
        return False
    for sgn in (1, -1):
        y = (-line.c - line.a * (strip.gate_x * sgn)) / line.b
        if exact_sign(y - strip.lo) <= 0 or exact_sign(strip.hi - y) <= 0:
            return False
    return True


def _crosses_horizontal_gates(line: Line, strip: SafeStrip) -> bool:
    """Gates of a rotated (vertical) strip: y = +-gate_x, lo<x<hi."""
    if exact_sign(line.a) == 0:
        return False
    for sgn in (1, -1):
        x = (-line.c - line.b * (strip.gate_x * sgn)) / line.a
        if exact_sign(x - strip.lo) <= 0 or exact_sign(strip.hi - x) <= 0:
            return False
    return True


def _place_parts(
    part_l: Sequence[Line], part_k: Sequence[Line], max_area: Scalar
) -> Tuple[List[Line], List[Line]]:
    """Determinant-one placements making every line of each part thread the
    other part's gates, with no parallel pair across parts."""
    base_l, strip_l = _normalize_part(part_l, max_area)
    base_k, strip_k = _normalize_part(part_k, max_area)
    lam = 1
    for _ in range(64):
        lines_l, sl = _scale_part(base_l, strip_l, lam)
        lines_k, sk = _scale_part(base_k, strip_k, lam)
        lines_k = [_ROT90.apply_line(l) for l in lines_k]
        sk_rot = sk  # strip now vertical: |x| band, gates at y = +-gate_x
        ok = all(_crosses_vertical_gates(g, sl) for g in lines_k) and all(
            _crosses_horizontal_gates(l, sk_rot) for l in lines_l
        )
        if ok:
            dirs = {l.direction() for l in lines_l}
            if not any(g.direction() in dirs for g in lines_k):
                return lines_l, lines_k
        lam *= 2
    raise ChainError("no unimodular placement found")


@dataclass
class _Root:
    """Candidate slide parameter: value = alpha + beta*sqrt(rad) over the
    current field (beta = 0, rad = None for in-field roots)."""

    alpha: Scalar
    beta: Scalar
    rad: Optional[Scalar]

    def value(self) -> Scalar:
        if self.rad is None:
            return self.alpha
        return QuadExt(self.alpha, self.beta, self.rad)


def _root_sign(root: _Root) -> int:
    return exact_sign(root.value())


def _roots_equal(r1: _Root, r2: _Root) -> bool:
    if r1.rad is None and r2.rad is None:
        return exact_sign(r1.alpha - r2.alpha) == 0
    if (r1.rad is None) != (r2.rad is None):
        return False  # an in-field value never equals a proper surd
    u = r1.alpha - r2.alpha
    if exact_sign(u) != 0:
        # equality would force sqrt(rad) into the base field
        return False
    if exact_sign(r1.beta) != exact_sign(r2.beta):
        return False
    return exact_sign(r1.beta * r1.beta * r1.rad - r2.beta * r2.beta * r2.rad) == 0


def _roots_compare(r1: _Root, r2: _Root) -> int:
    """Exact comparison of candidate roots, possibly across different
    radical extensions of the same base field."""
    if _roots_equal(r1, r2):
        return 0
    if r1.rad is not None and r2.rad is not None and _same_rad(r1.rad, r2.rad):
        return exact_sign(r1.value() - r2.value())
    bits = 64
    while bits <= 65536:
        i1 = interval_of(r1.value(), bits)
        i2 = interval_of(r2.value(), bits)
        c = i1.compare(i2)
        if c is not None:
            return c
        bits *= 2
    raise ChainError("slide roots did not separate at maximum precision")


def _same_rad(d1: Scalar, d2: Scalar) -> bool:
    try:
        return exact_sign(d1 - d2) == 0
    except (TypeError, ValueError):
        return False


def _field_height(x: Scalar) -> int:
    h = 0
    while isinstance(x, QuadExt):
        h += 1
        x = x.rad
    return h


def _quadratic_roots(c2: Scalar, c1: Scalar, c0: Scalar) -> List[_Root]:
    """Exact roots of c2 t^2 + c1 t + c0 = 0 (degree may degenerate).

    Inputs must already be lifted to the ambient field so that the
    discriminant's squareness test runs in that field, not a subfield.
    """
    if exact_sign(c2) == 0:
        if exact_sign(c1) == 0:
            return []
        return [_Root(alpha=-c0 / c1, beta=Fraction(0), rad=None)]
    disc = c1 * c1 - 4 * c2 * c0
    s = exact_sign(disc)
    if s < 0:
        return []
    if s == 0:
        return [_Root(alpha=-c1 / (2 * c2), beta=Fraction(0), rad=None)]
    root = sqrt_exact(disc)
    if root is not None:
        return [
            _Root(alpha=(-c1 + root) / (2 * c2), beta=Fraction(0), rad=None),
            _Root(alpha=(-c1 - root) / (2 * c2), beta=Fraction(0), rad=None),
        ]
    inv = 1 / (2 * c2)
    return [
        _Root(alpha=-c1 * inv, beta=inv, rad=disc),
        _Root(alpha=-c1 * inv, beta=-inv, rad=disc),
    ]


def _area_polynomial(
    fixed: Sequence[Line], moving: Sequence[Line], vx: Scalar, vy: Scalar
) -> Optional[Tuple[Scalar, Scalar, Scalar]]:
    """Coefficients (c0, c1, c2) of the signed double area of the triple as
    the moving lines translate by t*(vx, vy); None when degenerate for all
    t (parallel pair)."""
    def at(t: Scalar) -> Optional[Scalar]:
        lines = list(fixed) + [_translate_line(l, vx * t, vy * t) for l in moving]
        return _signed_double_area(*lines)

    q0 = at(Fraction(0))
    qp = at(Fraction(1))
    qm = at(Fraction(-1))
    if q0 is None or qp is None or qm is None:
        return None
    c2 = (qp + qm) / 2 - q0
    c1 = (qp - qm) / 2
    return (q0, c1, c2)


def _cross_triples(nl: int, nk: int):
    for i, j in combinations(range(nl), 2):
        for g in range(nk):
            yield ((i, j), (g,))
    for i in range(nl):
        for g, h in combinations(range(nk), 2):
            yield ((i,), (g, h))


def _first_contact(
    lines_l: Sequence[Line],
    lines_k: Sequence[Line],
    vx: Scalar,
    vy: Scalar,
    max_area: Scalar,
    field: Scalar,
) -> Tuple[_Root, Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Smallest positive slide parameter at which a mixed triple reaches
    double area +-2*max_area, with the witnessing triple."""
    target = lift_to(2 * max_area, field)
    best: Optional[_Root] = None
    best_triple = None
    for (il, ik) in _cross_triples(len(lines_l), len(lines_k)):
        fixed = [lines_k[g] for g in ik]
        moving = [lines_l[i] for i in il]
        poly = _area_polynomial(fixed, moving, vx, vy)
        if poly is None:
            continue
        c0, c1, c2 = (lift_to(c, field) for c in poly)
        if exact_sign(c1) == 0 and exact_sign(c2) == 0:
            continue  # rigid under this slide
        for sgn in (1, -1):
            for root in _quadratic_roots(c2, c1, c0 - sgn * target):
                if _root_sign(root) <= 0:
                    continue
                if best is None or _roots_compare(root, best) < 0:
                    best = root
                    best_triple = (il, ik)
    if best is None:
        raise ChainError("slide never reaches the maximum area")
    return best, best_triple


def _ambient_field(lines: Sequence[Line], max_area: Scalar) -> Scalar:
    """Deepest-tower scalar in play, used as the lifting template."""
    field = max_area
    h = _field_height(field)
    for l in lines:
        for c in (l.a, l.b, l.c):
            hc = _field_height(c)
            if hc > h:
                field, h = c, hc
    return field


def combine(part_l: Arrangement, part_k: Arrangement, max_area: Scalar) -> Arrangement:
    """One chaining round; both parts must have no parallel pair and share
    the same exact maximum triangle area."""
    lines_l, lines_k = _place_parts(list(part_l.lines), list(part_k.lines), max_area)
    field = _ambient_field(lines_l + lines_k, max_area)

    # slide 1: horizontal, to the first mixed maximum-area triangle
    t1, triple1 = _first_contact(
        lines_l, lines_k, Fraction(1), Fraction(0), max_area, field
    )
    tv = t1.value()
    zero = tv - tv
    lines_l = [_translate_line(l, tv, zero) for l in lines_l]
    if t1.rad is not None:
        field = tv

    # slide 2: along the contact triangle's anchor so it stays rigid
    il, ik = triple1
    anchor = lines_k[ik[0]] if len(ik) == 1 else lines_l[il[0]]
    dx, dy = anchor.direction()
    t2, _ = _first_contact(lines_l, lines_k, dx, dy, max_area, field)
    sv = t2.value()
    lines_l = [_translate_line(l, dx * sv, dy * sv) for l in lines_l]

    return Arrangement(lines_l + lines_k)


def max_chain(k: int) -> Arrangement:
    """Arrangement of 5(k+1) lines with at least 5+7k maximum-area
    triangles, all of area equal to the pentagon's maximum."""
    if k < 0:
        raise ValueError("k >= 0 required")
    arr = pentagon()
    if k == 0:
        return arr
    a_max = pentagon_max_area()
    for _ in range(k):
        arr = combine(arr, pentagon(), a_max)
    return arr


def pentagon_max_area() -> Scalar:
    """Exact maximum triangle area of the pentagon model: 5/4 + (5/8)*sqrt 5."""
    return QuadExt(Fraction(5, 4), Fraction(5, 8), Fraction(5))
