"""Rational maps on P1(QQ) as homogeneous coefficient pairs.

A degree-d map is a coprime pair (F, G) of degree-d forms; coefficients
are stored ascending, list index i holding the X^i Y^(d-i) coefficient,
so the dehomogenized numerator is f(z) = sum f[i] z^i.  Maps are kept in
normalized form: integral coefficients with at least one p-unit among
them.  An optional factored form (leading constant, zeros, poles over
P1(QQ) with multiplicity) unlocks the zero/pole-based invariants; it is
derived automatically for degree 1, where both points are always
rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateMapError, FactoredFormRequiredError
from .polynomials import is_zero, monic_gcd, mul, trim
from .projective import INF_POINT, ProjPoint, _vord, spherical_ord
from .valued import Ord, int_val
from . import polynomials as poly

__all__ = [
    "FactoredForm",
    "RationalMap",
    "from_factored",
    "from_coeffs",
    "normalize",
    "resultant_ord",
    "resultant_ord_product",
    "gir_minors",
    "eval_proj",
    "pre_compose",
    "post_compose",
    "mobius_from_matrix",
]


@dataclass(frozen=True, slots=True)
class FactoredForm:
    """Projectively complete zero/pole data: C * prod(z - a) / prod(z - b).

    ``zeros`` and ``poles`` list (point, multiplicity) pairs whose
    multiplicities each sum to the degree; the point at infinity may
    appear on one side only.
    """

    c: Fraction
    zeros: tuple[tuple[ProjPoint, int], ...]
    poles: tuple[tuple[ProjPoint, int], ...]

    def zero_points(self) -> list[ProjPoint]:
        return [pt for pt, m in self.zeros for _ in range(m)]

    def pole_points(self) -> list[ProjPoint]:
        return [pt for pt, m in self.poles for _ in range(m)]


@dataclass(frozen=True, slots=True)
class RationalMap:
    p: int
    d: int
    f: tuple[Fraction, ...]  # ascending, length d+1
    g: tuple[Fraction, ...]
    factored: FactoredForm | None = None

    def dehomogenized(self) -> tuple[list, list]:
        return list(self.f), list(self.g)

    @property
    def is_normalized(self) -> bool:
        ords = [_vord(c, self.p) for c in self.f + self.g]
        finite = [v for v in ords if v is not None]
        return min(finite) == 0

    def require_factored(self) -> FactoredForm:
        if self.factored is None:
            raise FactoredFormRequiredError("factored form required")
        return self.factored


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def _validate_pair(p: int, f: list, g: list, d: int) -> None:
    if d < 1:
        raise DegenerateMapError("degree zero")
    if is_zero(f) or is_zero(g):
        raise DegenerateMapError("degenerate map")
    if f[d] == 0 and g[d] == 0:
        raise DegenerateMapError("degenerate map")  # common root at infinity
    gcd = monic_gcd(trim(list(f)), trim(list(g)))
    if len(gcd) > 1:
        raise DegenerateMapError("degenerate map")


def _scaled(coeffs, factor: Fraction):
    return tuple(c * factor for c in coeffs)


def normalize(m: RationalMap) -> RationalMap:
    """Rescale both forms by a p-power so min coefficient ord is 0."""
    ords = [_vord(c, m.p) for c in m.f + m.g]
    low = min(v for v in ords if v is not None)
    if low == 0:
        return m
    factor = Fraction(m.p) ** int(-low)
    return RationalMap(m.p, m.d, _scaled(m.f, factor), _scaled(m.g, factor), m.factored)


def _mobius_factored(p: int, f, g) -> FactoredForm:
    """Zero/pole data of a degree-1 map, always rational."""
    a1, a0 = f[1], f[0]
    b1, b0 = g[1], g[0]
    zero = ProjPoint.of(-a0 / a1) if a1 != 0 else INF_POINT
    pole = ProjPoint.of(-b0 / b1) if b1 != 0 else INF_POINT
    if a1 != 0 and b1 != 0:
        c = a1 / b1
    elif a1 != 0:
        c = a1 / b0
    else:
        c = a0 / b1
    return FactoredForm(c, ((zero, 1),), ((pole, 1),))


def from_coeffs(p: int, f_coeffs, g_coeffs) -> RationalMap:
    """Build a map from ascending coefficient lists of equal length d+1."""
    f = [Fraction(c) for c in f_coeffs]
    g = [Fraction(c) for c in g_coeffs]
    if len(f) != len(g):
        raise DegenerateMapError("coefficient lists must have equal length")
    d = len(f) - 1
    _validate_pair(p, f, g, d)
    m = RationalMap(p, d, tuple(f), tuple(g))
    m = normalize(m)
    if d == 1:
        m = RationalMap(m.p, m.d, m.f, m.g, _mobius_factored(p, m.f, m.g))
    return m


def from_factored(p: int, c, zeros, poles) -> RationalMap:
    """Expand zero/pole data into a normalized homogeneous pair.

    ``zeros`` and ``poles`` are (ProjPoint, multiplicity) pairs; a missing
    balance of multiplicity is assigned to infinity.  A point shared
    between the two lists is rejected.
    """
    c = Fraction(c)
    if c == 0:
        raise DegenerateMapError("degenerate map")

    def _merge(items):
        fin: dict[Fraction, int] = {}
        inf_mult = 0
        for pt, mult in items:
            mult = int(mult)
            if mult < 1:
                raise DegenerateMapError("multiplicities must be positive")
            if pt.is_inf:
                inf_mult += mult
            else:
                fin[pt.z] = fin.get(pt.z, 0) + mult
        return fin, inf_mult

    zf, z_inf = _merge(zeros)
    pf, p_inf = _merge(poles)
    if set(zf) & set(pf):
        raise DegenerateMapError("degenerate map")
    n_total = sum(zf.values()) + z_inf
    m_total = sum(pf.values()) + p_inf
    d = max(n_total, m_total)
    if n_total < d:
        z_inf += d - n_total
    if m_total < d:
        p_inf += d - m_total
    if z_inf > 0 and p_inf > 0:
        raise DegenerateMapError("degenerate map")

    def _expand(fin: dict, lead: Fraction) -> list:
        out = [lead]
        for root, mult in fin.items():
            for _ in range(mult):
                out = mul(out, [-root, Fraction(1)])
        return out

    f = _expand(zf, c)
    g = _expand(pf, Fraction(1))
    f = f + [Fraction(0)] * (d + 1 - len(f))
    g = g + [Fraction(0)] * (d + 1 - len(g))
    _validate_pair(p, f, g, d)

    def _pairs(fin: dict, inf_mult: int):
        out = [(ProjPoint.of(z), m) for z, m in fin.items()]
        if inf_mult:
            out.append((INF_POINT, inf_mult))
        return tuple(out)

    ff = FactoredForm(c, _pairs(zf, z_inf), _pairs(pf, p_inf))
    m = RationalMap(p, d, tuple(f), tuple(g), ff)
    return normalize(m)


# ---------------------------------------------------------------------------
# invariants computable from coefficients
# ---------------------------------------------------------------------------


def resultant_ord(m: RationalMap) -> Ord:
    """ord_p of the Sylvester resultant of the normalized pair."""
    m = normalize(m)
    res = poly.sylvester_det_ord(m.p, list(m.f), list(m.g), m.d)
    if res is None:
        raise DegenerateMapError("degenerate map")
    return Ord.of(res)


def _content_ord(p: int, coeffs) -> Fraction:
    vs = [_vord(c, p) for c in coeffs]
    return min(v for v in vs if v is not None)


def resultant_ord_product(m: RationalMap) -> Ord:
    """Resultant valuation from the factorization: d*(ord C0 + ord C1) plus
    the sum of spherical distances over all zero/pole pairs."""
    ff = m.require_factored()
    m = normalize(m)
    c0 = _content_ord(m.p, m.f)
    c1 = _content_ord(m.p, m.g)
    total = Fraction(m.d) * (c0 + c1)
    for alpha in ff.zero_points():
        for beta in ff.pole_points():
            s = spherical_ord(m.p, alpha, beta)
            total += s.frac
    return Ord.of(total)


def gir_minors(m: RationalMap) -> Ord:
    """Gauss image radius from 2x2 coefficient minors: the image of the
    Gauss point has diameter max_{i != j} |f_i g_j - f_j g_i|."""
    m = normalize(m)
    best = None
    n = m.d + 1
    for i in range(n):
        for j in range(i + 1, n):
            det = m.f[i] * m.g[j] - m.f[j] * m.g[i]
            if det == 0:
                continue
            v = _vord(det, m.p)
            if best is None or v < best:
                best = v
    if best is None:
        raise DegenerateMapError("degenerate map")
    return Ord.of(best)


def eval_proj(m: RationalMap, pt: ProjPoint) -> ProjPoint:
    """Evaluate the map at a classical point (exact, infinity-aware)."""
    if pt.is_inf:
        num, den = m.f[m.d], m.g[m.d]
    else:
        num = poly.eval_at(list(m.f), pt.z)
        den = poly.eval_at(list(m.g), pt.z)
    if den == 0:
        return INF_POINT
    return ProjPoint.of(num / den)


# ---------------------------------------------------------------------------
# composition with linear fractional transformations
# ---------------------------------------------------------------------------

Matrix2 = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]


def _mat(entries) -> Matrix2:
    (a, b), (c, d) = entries
    mat = ((Fraction(a), Fraction(b)), (Fraction(c), Fraction(d)))
    if mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0] == 0:
        raise DegenerateMapError("singular matrix")
    return mat


def mobius_from_matrix(p: int, entries) -> RationalMap:
    ((a, b), (c, d)) = _mat(entries)
    return from_coeffs(p, [b, a], [d, c])


def mobius_apply(entries, pt: ProjPoint) -> ProjPoint:
    """Action of a matrix on a classical point: z -> (az+b)/(cz+d)."""
    ((a, b), (c, d)) = _mat(entries)
    if pt.is_inf:
        return ProjPoint.of(a / c) if c != 0 else INF_POINT
    num = a * pt.z + b
    den = c * pt.z + d
    if den == 0:
        return INF_POINT
    return ProjPoint.of(num / den)


def _mat_inverse(entries) -> Matrix2:
    ((a, b), (c, d)) = _mat(entries)
    return ((d, -b), (-c, a))


def pre_compose(m: RationalMap, entries) -> RationalMap:
    """The map z -> phi(gamma(z)); zero/pole data transports by gamma^(-1)."""
    mat = _mat(entries)
    ((a, b), (c, d)) = mat
    # substitute (X, Y) -> (aX + bY, cX + dY) in each degree-d form
    top = [Fraction(b), Fraction(a)]  # ascending linear form aX + bY
    bot = [Fraction(d), Fraction(c)]

    def subst(coeffs):
        out = [Fraction(0)] * (m.d + 1)
        for i, coef in enumerate(coeffs):
            if coef == 0:
                continue
            term = [Fraction(1)]
            for _ in range(i):
                term = mul(term, top)
            for _ in range(m.d - i):
                term = mul(term, bot)
            for j, t in enumerate(term):
                out[j] += coef * t
        return out

    f2 = subst(m.f)
    g2 = subst(m.g)
    _validate_pair(m.p, f2, g2, m.d)
    new = normalize(RationalMap(m.p, m.d, tuple(f2), tuple(g2)))
    if m.factored is not None:
        inv = _mat_inverse(mat)
        zeros = tuple(
            (mobius_apply(inv, pt), mult) for pt, mult in m.factored.zeros
        )
        poles = tuple(
            (mobius_apply(inv, pt), mult) for pt, mult in m.factored.poles
        )
        ft = trim(list(new.f))
        gt = trim(list(new.g))
        c2 = ft[-1] / gt[-1]
        new = RationalMap(new.p, new.d, new.f, new.g, FactoredForm(c2, zeros, poles))
    elif m.d == 1:
        new = RationalMap(new.p, new.d, new.f, new.g, _mobius_factored(m.p, new.f, new.g))
    return new


def post_compose(entries, m: RationalMap) -> RationalMap:
    """The map z -> gamma(phi(z)); zeros and poles move off QQ in general,
    so no factored form is attached."""
    ((a, b), (c, d)) = _mat(entries)
    f2 = [a * fi + b * gi for fi, gi in zip(m.f, m.g)]
    g2 = [c * fi + d * gi for fi, gi in zip(m.f, m.g)]
    _validate_pair(m.p, f2, g2, m.d)
    new = normalize(RationalMap(m.p, m.d, tuple(f2), tuple(g2)))
    if m.d == 1:
        new = RationalMap(new.p, new.d, new.f, new.g, _mobius_factored(m.p, new.f, new.g))
    return new


def unit_det_ok(p: int, entries) -> bool:
    """Whether the matrix determinant is a p-adic unit (composition then
    preserves the invariants)."""
    ((a, b), (c, d)) = _mat(entries)
    det = a * d - b * c
    num, den = det.numerator, det.denominator
    return int_val(abs(num), p) == int_val(den, p)
