"""Dense univariate polynomial helpers over exact rationals.

Coefficient lists are ascending: c[i] is the coefficient of z^i.  These are
small-degree kernels (degree <= 20 in practice), so quadratic algorithms
are fine; everything stays in Fraction arithmetic except the resultant,
which clears denominators and runs fraction-free over the integers.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .valued import int_val

Poly = list  # list[Fraction], ascending


def trim(c: Poly) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def degree(c: Poly) -> int:
    """Degree of a trimmed, nonzero polynomial; -1 for the zero polynomial."""
    c = trim(c)
    return len(c) - 1


def is_zero(c: Poly) -> bool:
    return all(x == 0 for x in c)


def add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else Fraction(0)) + (b[i] if i < len(b) else Fraction(0))
        for i in range(n)
    ]


def scale(a: Poly, k) -> Poly:
    k = Fraction(k)
    return [x * k for x in a]


def sub(a: Poly, b: Poly) -> Poly:
    return add(a, scale(b, -1))


def mul(a: Poly, b: Poly) -> Poly:
    if is_zero(a) or is_zero(b):
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def eval_at(c: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for coef in reversed(c):
        acc = acc * x + coef
    return acc


def taylor_shift(c: Poly, a: Fraction) -> Poly:
    """Coefficients of f(z + a), by iterated synthetic division."""
    out = list(c)
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += a * out[j + 1]
    return out


def monic_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over QQ by the Euclidean algorithm."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, trim(_rem(a, b))
    if a:
        lead = a[-1]
        a = [x / lead for x in a]
    return a


def _rem(a: Poly, b: Poly) -> Poly:
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    while len(a) - 1 >= db:
        if a[-1] == 0:
            a.pop()
            continue
        q = a[-1] / lead
        shift = len(a) - 1 - db
        for i, coef in enumerate(b):
            a[shift + i] -= q * coef
        a.pop()
    return trim(a)


def _int_det_bareiss(m: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (Bareiss elimination)."""
    n = len(m)
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * piv - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = piv
    return sign * m[n - 1][n - 1]


def sylvester_det_ord(p: int, f: Poly, g: Poly, d: int) -> int | None:
    """ord_p of the 2d x 2d Sylvester determinant of degree-d forms.

    ``f`` and ``g`` are ascending dehomogenized coefficient lists padded to
    length d+1 (index i holds the X^i Y^(d-i) coefficient).  Rows are
    integerized by clearing each block's denominators, which rescales the
    determinant by a known p-power tracked in the result.  Returns None for
    a vanishing determinant.
    """
    fc = list(f) + [Fraction(0)] * (d + 1 - len(f))
    gc = list(g) + [Fraction(0)] * (d + 1 - len(g))
    lf = lcm(*[c.denominator for c in fc], 1)
    lg = lcm(*[c.denominator for c in gc], 1)
    fi = [int(c * lf) for c in fc]
    gi = [int(c * lg) for c in gc]
    size = 2 * d
    rows = []
    for i in range(d):
        row = [0] * size
        for j in range(d + 1):
            row[i + j] = fi[d - j]  # descending order across the band
        rows.append(row)
    for i in range(d):
        row = [0] * size
        for j in range(d + 1):
            row[i + j] = gi[d - j]
        rows.append(row)
    det = _int_det_bareiss(rows)
    if det == 0:
        return None
    return int_val(det, p) - d * int_val(lf, p) - d * int_val(lg, p)
