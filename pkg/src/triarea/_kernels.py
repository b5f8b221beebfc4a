"""Integer fast paths for the triangle census.

Rational arrangements in canonical form have integer coefficients; when the
coefficient magnitudes certify that every intermediate fits in int64 (see
int64_safe), the census over all C(n,3) triples runs on machine integers.
Two backends share the same triple enumeration order (lexicographic i<j<k):
compiled loops (numba) and vectorized numpy.  Set TRIAREA_NO_NUMBA=1 to
force the numpy backend; exact arithmetic in census.py remains the fallback
and the ground truth.
"""

from __future__ import annotations

import os
from math import comb

import numpy as np

STATUS_PROPER = 0
STATUS_CONCURRENT = 1
STATUS_PARALLEL = 2

_DISABLED = os.environ.get("TRIAREA_NO_NUMBA", "") not in ("", "0")

if not _DISABLED:
    try:
        import numba
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False


def int64_safe(coeffs: np.ndarray) -> bool:
    """True when every census intermediate provably fits in int64.

    With A = max(|a|,|b|) and C = max(|c|, A): vertex entries are at most
    2*A*C (coordinates) and 2*A*A (weight), the 3x3 determinant at most
    48*A^4*C^2, the denominator 16*A^6, and the facial dot product 6*A^2*C.
    """
    a = np.abs(coeffs[:, 0]).max(initial=0)
    b = np.abs(coeffs[:, 1]).max(initial=0)
    c = np.abs(coeffs[:, 2]).max(initial=0)
    A = int(max(a, b))
    C = int(max(c, A))
    lim = 2**62
    return 48 * A**4 * C**2 < lim and 16 * A**6 < lim and 6 * A**2 * C < lim


def combo_index_arrays(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Index arrays (I, J, K) of all i<j<k triples in lexicographic order."""
    m = comb(n, 3)
    I = np.empty(m, dtype=np.int64)
    J = np.empty(m, dtype=np.int64)
    K = np.empty(m, dtype=np.int64)
    pos = 0
    ks = np.arange(n, dtype=np.int64)
    for i in range(n - 2):
        for j in range(i + 1, n - 1):
            cnt = n - 1 - j
            I[pos : pos + cnt] = i
            J[pos : pos + cnt] = j
            K[pos : pos + cnt] = ks[j + 1 :]
            pos += cnt
    return I, J, K


def _census_numpy(coeffs: np.ndarray):
    a, b, c = coeffs[:, 0], coeffs[:, 1], coeffs[:, 2]
    I, J, K = combo_index_arrays(len(coeffs))

    def vert(p, q):
        return (
            b[p] * c[q] - b[q] * c[p],
            c[p] * a[q] - c[q] * a[p],
            a[p] * b[q] - a[q] * b[p],
        )

    x1, y1, w1 = vert(I, J)
    x2, y2, w2 = vert(I, K)
    x3, y3, w3 = vert(J, K)
    det = (
        x1 * (y2 * w3 - w2 * y3)
        - y1 * (x2 * w3 - w2 * x3)
        + w1 * (x2 * y3 - y2 * x3)
    )
    num = np.abs(det)
    den = 2 * np.abs(w1 * w2 * w3)
    status = np.full(len(I), STATUS_PROPER, dtype=np.uint8)
    par = (w1 == 0) | (w2 == 0) | (w3 == 0)
    status[par] = STATUS_PARALLEL
    conc = (~par) & (det == 0)
    status[conc] = STATUS_CONCURRENT
    bad = par | conc
    num[bad] = 0
    den[bad] = 1
    g = np.gcd(num, den)
    g[g == 0] = 1
    return num // g, den // g, status


def _facial_numpy(coeffs: np.ndarray, chunk: int = 1 << 15) -> np.ndarray:
    a, b, c = coeffs[:, 0], coeffs[:, 1], coeffs[:, 2]
    n = len(coeffs)
    I, J, K = combo_index_arrays(n)
    num, den, status = _census_numpy(coeffs)
    mask = status == STATUS_PROPER
    out = np.zeros(len(I), dtype=bool)
    idx_all = np.nonzero(mask)[0]
    for start in range(0, len(idx_all), chunk):
        idx = idx_all[start : start + chunk]
        i, j, k = I[idx], J[idx], K[idx]

        def vert(p, q):
            return (
                b[p] * c[q] - b[q] * c[p],
                c[p] * a[q] - c[q] * a[p],
                a[p] * b[q] - a[q] * b[p],
            )

        vs = [vert(i, j), vert(i, k), vert(j, k)]
        pos = np.zeros((len(idx), n), dtype=bool)
        neg = np.zeros((len(idx), n), dtype=bool)
        for (px, py, w) in vs:
            # sign of line m at the vertex: sign((a_m px + b_m py + c_m w) * w)
            val = (
                np.outer(px, a) + np.outer(py, b) + np.outer(w, c)
            ) * w[:, None]
            pos |= val > 0
            neg |= val < 0
        cut = pos & neg
        # lines of the triple never straddle their own triangle
        rows = np.arange(len(idx))
        cut[rows, i] = False
        cut[rows, j] = False
        cut[rows, k] = False
        out[idx] = ~cut.any(axis=1)
    return out


if HAVE_NUMBA:

    @njit(cache=True)
    def _census_numba(coeffs):  # pragma: no cover - exercised via dispatch
        n = coeffs.shape[0]
        m = n * (n - 1) * (n - 2) // 6
        num = np.zeros(m, dtype=np.int64)
        den = np.ones(m, dtype=np.int64)
        status = np.zeros(m, dtype=np.uint8)
        pos = 0
        for i in range(n):
            ai, bi, ci = coeffs[i, 0], coeffs[i, 1], coeffs[i, 2]
            for j in range(i + 1, n):
                aj, bj, cj = coeffs[j, 0], coeffs[j, 1], coeffs[j, 2]
                x1 = bi * cj - bj * ci
                y1 = ci * aj - cj * ai
                w1 = ai * bj - aj * bi
                for k in range(j + 1, n):
                    ak, bk, ck = coeffs[k, 0], coeffs[k, 1], coeffs[k, 2]
                    x2 = bi * ck - bk * ci
                    y2 = ci * ak - ck * ai
                    w2 = ai * bk - ak * bi
                    x3 = bj * ck - bk * cj
                    y3 = cj * ak - ck * aj
                    w3 = aj * bk - ak * bj
                    if w1 == 0 or w2 == 0 or w3 == 0:
                        status[pos] = STATUS_PARALLEL
                        pos += 1
                        continue
                    det = (
                        x1 * (y2 * w3 - w2 * y3)
                        - y1 * (x2 * w3 - w2 * x3)
                        + w1 * (x2 * y3 - y2 * x3)
                    )
                    if det == 0:
                        status[pos] = STATUS_CONCURRENT
                        pos += 1
                        continue
                    nm = det if det > 0 else -det
                    dn = 2 * w1 * w2 * w3
                    if dn < 0:
                        dn = -dn
                    u, v = nm, dn
                    while v:
                        u, v = v, u % v
                    num[pos] = nm // u
                    den[pos] = dn // u
                    pos += 1
        return num, den, status

    @njit(cache=True)
    def _facial_numba(coeffs):  # pragma: no cover - exercised via dispatch
        n = coeffs.shape[0]
        m = n * (n - 1) * (n - 2) // 6
        out = np.zeros(m, dtype=np.bool_)
        pos = 0
        for i in range(n):
            ai, bi, ci = coeffs[i, 0], coeffs[i, 1], coeffs[i, 2]
            for j in range(i + 1, n):
                aj, bj, cj = coeffs[j, 0], coeffs[j, 1], coeffs[j, 2]
                x1 = bi * cj - bj * ci
                y1 = ci * aj - cj * ai
                w1 = ai * bj - aj * bi
                for k in range(j + 1, n):
                    ak, bk, ck = coeffs[k, 0], coeffs[k, 1], coeffs[k, 2]
                    x2 = bi * ck - bk * ci
                    y2 = ci * ak - ck * ai
                    w2 = ai * bk - ak * bi
                    x3 = bj * ck - bk * cj
                    y3 = cj * ak - ck * aj
                    w3 = aj * bk - ak * bj
                    if w1 == 0 or w2 == 0 or w3 == 0:
                        pos += 1
                        continue
                    det = (
                        x1 * (y2 * w3 - w2 * y3)
                        - y1 * (x2 * w3 - w2 * x3)
                        + w1 * (x2 * y3 - y2 * x3)
                    )
                    if det == 0:
                        pos += 1
                        continue
                    ok = True
                    for t in range(n):
                        if t == i or t == j or t == k:
                            continue
                        at, bt, ct = coeffs[t, 0], coeffs[t, 1], coeffs[t, 2]
                        s1 = (at * x1 + bt * y1 + ct * w1) * w1
                        s2 = (at * x2 + bt * y2 + ct * w2) * w2
                        s3 = (at * x3 + bt * y3 + ct * w3) * w3
                        has_pos = s1 > 0 or s2 > 0 or s3 > 0
                        has_neg = s1 < 0 or s2 < 0 or s3 < 0
                        if has_pos and has_neg:
                            ok = False
                            break
                    out[pos] = ok
                    pos += 1
        return out


def census_int64(coeffs: np.ndarray, backend: str):
    """Reduced (num, den) and status per triple; backend 'numba' or 'numpy'."""
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend unavailable")
        return _census_numba(coeffs)
    return _census_numpy(coeffs)


def facial_int64(coeffs: np.ndarray, backend: str) -> np.ndarray:
    """Facial mask aligned with the census triple order."""
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend unavailable")
        return _facial_numba(coeffs)
    return _facial_numpy(coeffs)
