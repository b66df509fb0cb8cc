"""Exact linear algebra over Q(q): fraction-free determinants and ranks."""

from __future__ import annotations

from math import gcd

from .scalars import LP_ONE, LP_ZERO, ONE, ZERO, RatFunc, laurent_exact_div


def det_bareiss(rows):
    """Determinant of a square matrix of RatFunc entries.

    Bareiss one-step fraction-free elimination: every division is exact, so
    intermediate entries stay small and the result is exact.  Denominator-free
    matrices run entirely on Laurent polynomials, where exact division skips
    the gcd reduction of general scalar arithmetic.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant requires a square matrix")
    if n == 0:
        return ONE
    if all(v.den.is_constant for r in rows for v in r):
        # Constant denominators clear by row scaling; det(scaled)/factor.
        factor = 1
        scaled = []
        for r in rows:
            c = 1
            for v in r:
                d = v.den.coeff(0)
                c = c * d // gcd(c, d)
            factor *= c
            scaled.append([(v * c).as_laurent() for v in r])
        return _det_bareiss_laurent(scaled) / factor
    m = [list(r) for r in rows]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k].is_zero:
            for i in range(k + 1, n):
                if not m[i][k].is_zero:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) / prev
            m[i][k] = ZERO
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def _det_bareiss_laurent(m):
    n = len(m)
    sign = 1
    prev = LP_ONE
    for k in range(n - 1):
        if m[k][k].is_zero:
            for i in range(k + 1, n):
                if not m[i][k].is_zero:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pivot = m[k][k]
        for i in range(k + 1, n):
            if m[i][k].is_zero:
                if prev is not LP_ONE:
                    for j in range(k + 1, n):
                        m[i][j] = laurent_exact_div(m[i][j] * pivot, prev)
                else:
                    for j in range(k + 1, n):
                        m[i][j] = m[i][j] * pivot
                continue
            for j in range(k + 1, n):
                m[i][j] = laurent_exact_div(
                    m[i][j] * pivot - m[i][k] * m[k][j], prev)
            m[i][k] = LP_ZERO
        prev = pivot
    det = m[n - 1][n - 1]
    return RatFunc(-det if sign < 0 else det)


def sparse_rank(rows):
    """Rank of a list of sparse rows (dicts column -> RatFunc) over Q(q)."""
    pivots = []  # (column, normalized row)
    rank = 0
    for row in rows:
        r = {c: v for c, v in row.items() if not v.is_zero}
        for col, prow in pivots:
            v = r.get(col)
            if v is not None:
                for c2, v2 in prow.items():
                    s = r.get(c2, ZERO) - v * v2
                    if s.is_zero:
                        r.pop(c2, None)
                    else:
                        r[c2] = s
        if not r:
            continue
        col = min(r)
        inv = ONE / r[col]
        r = {c: v * inv for c, v in r.items()}
        pivots.append((col, r))
        rank += 1
    return rank
