"""Berkovich points of types I and II over QQ, their metrics, and the
action of a rational map on discs.

A type II point is a disc D(a, r) with rational center a and radius
r = p^(-t), t rational; it is stored as (center, radius_ord=t).  Distinct
(center, t) pairs can name the same point, so identity is the predicate
:func:`berk_equal`, never dataclass equality.

The pushforward of a disc point computes the image point phi(zeta_{a,r})
through Taylor-shift seminorms: the image diameter is the minimum over
candidate centers w of the seminorm of (phi - w), the candidates being the
same-index ratios of shifted numerator/denominator coefficients plus 0.
Images larger than the unit disc are routed through the inversion chart.
The candidate-set construction is validated against a brute-force sampling
oracle in the test suite; see tests/oracles.py.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateMapError, InternalInvariantError
from .polynomials import eval_at, is_zero, scale, sub, taylor_shift, trim
from .projective import INF_POINT, ProjPoint, _vord
from .valued import ORD_INF, Ord, PPowerSum, ppow_normalize

__all__ = [
    "BerkPoint",
    "Direction",
    "gauss_point",
    "berk_equal",
    "direction_key",
    "same_direction",
    "diam_infty",
    "diam_gauss",
    "join_gauss",
    "d_metric",
    "rho",
    "seminorm",
    "iota",
    "push_forward",
    "push_forward_coeffs",
]


@dataclass(frozen=True, slots=True)
class BerkPoint:
    """A classical point of P1(QQ) or a disc point zeta_{a, p^(-t)}."""

    pt: ProjPoint | None  # set for type I
    center: Fraction | None  # set for type II
    radius_ord: Fraction | None  # t with r = p^(-t), set for type II

    @staticmethod
    def classical(pt: ProjPoint) -> "BerkPoint":
        return BerkPoint(pt, None, None)

    @staticmethod
    def disc(center, radius_ord) -> "BerkPoint":
        return BerkPoint(None, Fraction(center), Fraction(radius_ord))

    @property
    def is_classical(self) -> bool:
        return self.pt is not None

    @property
    def is_disc(self) -> bool:
        return self.pt is None

    def __str__(self) -> str:
        if self.is_classical:
            return str(self.pt)
        from .valued import format_fraction

        return f"zeta({format_fraction(self.center)}, t={format_fraction(self.radius_ord)})"

    def __repr__(self) -> str:
        return f"BerkPoint({self})"


def gauss_point() -> BerkPoint:
    """The point of the closed unit disc, zeta_{0,1}."""
    return BerkPoint.disc(0, 0)


@dataclass(frozen=True, slots=True)
class Direction:
    """A tangent direction at a disc point, witnessed by a classical
    representative: the component of the complement of ``at`` containing
    the representative.  Only finitely many witnesses are ever
    materialized; equality of directions is :func:`same_direction`."""

    at: BerkPoint
    representative: ProjPoint

    def __post_init__(self):
        if not self.at.is_disc:
            raise ValueError("directions are attached to type II points")


def direction_key(p: int, at: BerkPoint, rep: ProjPoint):
    """Identify the direction at a disc point containing a classical rep.

    Returns None for the outward direction (representatives outside the
    disc, including infinity) and otherwise the integer residue lift of
    (rep - center)/p^t, which labels the inward sub-disc.
    """
    if not at.is_disc:
        raise ValueError("directions are attached to type II points")
    t = at.radius_ord
    if rep.is_inf:
        return None
    v = _vord(rep.z - at.center, p)
    if v is not None and v < t:
        return None
    if v is None or v > t:
        return 0
    off = (rep.z - at.center) / Fraction(p) ** t
    num = off.numerator % p
    den = off.denominator % p
    return num * pow(den, -1, p) % p


def same_direction(p: int, a: Direction, b: Direction) -> bool:
    if not berk_equal(p, a.at, b.at):
        return False
    return direction_key(p, a.at, a.representative) == direction_key(
        p, b.at, b.representative
    )


def berk_equal(p: int, x: BerkPoint, y: BerkPoint) -> bool:
    """Identity of points: equal radius exponent and center distance within."""
    if x.is_classical != y.is_classical:
        return False
    if x.is_classical:
        return x.pt == y.pt
    if x.radius_ord != y.radius_ord:
        return False
    v = _vord(x.center - y.center, p)
    return v is None or v >= x.radius_ord


# ---------------------------------------------------------------------------
# diameters and the tree metrics
# ---------------------------------------------------------------------------


def diam_infty(x: BerkPoint) -> Ord:
    """Radius exponent of the disc seen from infinity; classical points
    are radius-0 (exponent +infinity)."""
    if x.is_classical:
        if x.pt.is_inf:
            raise ValueError("diam_infty undefined at infinity")
        return ORD_INF
    return Ord.of(x.radius_ord)


def _diam_gauss_frac(p: int, center: Fraction, t: Fraction) -> Fraction:
    """Exponent s with diam_G = p^(-s) for a disc point: r / max(1,|a|,r)^2."""
    va = _vord(center, p)
    m = min(Fraction(0), t) if va is None else min(Fraction(0), va, t)
    return t - 2 * m


def diam_gauss(p: int, x: BerkPoint) -> Ord:
    """Diameter relative to the Gauss point in log form; s = 0 iff x is the
    Gauss point, +infinity iff x is classical."""
    if x.is_classical:
        return ORD_INF
    return Ord.of(_diam_gauss_frac(p, x.center, x.radius_ord))


def _in_unit_region(p: int, x: BerkPoint) -> bool:
    """Whether x lies in the closed unit Berkovich disc (incl. the Gauss
    point); the complement is the direction of infinity."""
    if x.is_classical:
        if x.pt.is_inf:
            return False
        v = _vord(x.pt.z, p)
        return v is None or v >= 0
    if x.radius_ord < 0:
        return False
    v = _vord(x.center, p)
    return v is None or v >= 0


def iota(p: int, x: BerkPoint) -> BerkPoint:
    """Inversion z -> 1/z on points: zeta_{a,r} -> zeta_{0,1/r} when
    |a| <= r, else zeta_{1/a, r/|a|^2}."""
    if x.is_classical:
        if x.pt.is_inf:
            return BerkPoint.classical(ProjPoint.of(0))
        if x.pt.z == 0:
            return BerkPoint.classical(INF_POINT)
        return BerkPoint.classical(ProjPoint.of(1 / x.pt.z))
    a, t = x.center, x.radius_ord
    va = _vord(a, p)
    if va is None or va >= t:
        return BerkPoint.disc(Fraction(0), -t)
    return BerkPoint.disc(1 / a, t - 2 * va)


def _position(x: BerkPoint) -> tuple[Fraction, Fraction | None]:
    """(center, radius_ord) with None radius for classical finite points."""
    if x.is_classical:
        return x.pt.z, None
    return x.center, x.radius_ord


def join_gauss(p: int, x: BerkPoint, y: BerkPoint) -> BerkPoint:
    """First common point of the paths from x and from y to the Gauss point."""
    if berk_equal(p, x, y):
        return x
    in_x = _in_unit_region(p, x)
    in_y = _in_unit_region(p, y)
    if in_x != in_y:
        return gauss_point()
    if not in_x:
        return iota(p, join_gauss(p, iota(p, x), iota(p, y)))
    ax, tx = _position(x)
    ay, ty = _position(y)
    cands = [t for t in (tx, ty) if t is not None]
    vd = _vord(ax - ay, p)
    if vd is not None:
        cands.append(vd)
    s = min(cands)
    return BerkPoint.disc(ax, s)


def d_metric(p: int, x: BerkPoint, y: BerkPoint) -> PPowerSum:
    """Path-distance metric 2*diam_G(join) - diam_G(x) - diam_G(y), exact."""
    j = join_gauss(p, x, y)
    sj = diam_gauss(p, j)
    terms = []
    if not sj.is_inf:
        terms.append((Fraction(2), -sj.frac))
    for s in (diam_gauss(p, x), diam_gauss(p, y)):
        if not s.is_inf:
            terms.append((Fraction(-1), -s.frac))
    return ppow_normalize(p, terms)


def rho(p: int, x: BerkPoint, y: BerkPoint) -> Fraction:
    """Logarithmic path distance between two disc points.

    Measured through the join toward infinity: the radius exponent is
    monotone along each half of the path, so the length is
    t_x + t_y - 2 * min(t_x, t_y, ord(a_x - a_y)).
    """
    if x.is_classical or y.is_classical:
        raise ValueError("rho infinite at classical points")
    cands = [x.radius_ord, y.radius_ord]
    vd = _vord(x.center - y.center, p)
    if vd is not None:
        cands.append(vd)
    m = min(cands)
    return x.radius_ord + y.radius_ord - 2 * m


# ---------------------------------------------------------------------------
# seminorms and the pushforward
# ---------------------------------------------------------------------------


def _semi_frac(p: int, coeffs, t: Fraction) -> Fraction:
    """Exponent of the Gauss seminorm max_i |c_i| r^i at radius r = p^(-t),
    for already-shifted coefficients: min_i (ord c_i + i*t)."""
    best = None
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        v = _vord(c, p) + i * t
        if best is None or v < best:
            best = v
    if best is None:
        raise ValueError("seminorm of the zero polynomial")
    return best


def seminorm(p: int, coeffs, x: BerkPoint) -> Ord:
    """Seminorm exponent of a polynomial at a disc point.

    The coefficients (ascending, over QQ) are Taylor-shifted to the center
    and the Gauss-norm formula applies: the result s satisfies
    |poly|_x = p^(-s).
    """
    if x.is_classical:
        raise ValueError("seminorm expects a type II point")
    if is_zero(list(coeffs)):
        raise ValueError("seminorm of the zero polynomial")
    shifted = taylor_shift([Fraction(c) for c in coeffs], x.center)
    return Ord.of(_semi_frac(p, shifted, x.radius_ord))


def _recenter(p: int, den, a: Fraction, t: Fraction) -> Fraction:
    """Replace the center by an equivalent one that is not a root of den.

    Candidates a + j * p^ceil(t) stay within the equality class of the
    point; den has at most deg(den) roots so a valid j exists.
    """
    if eval_at(den, a) != 0:
        return a
    step = Fraction(p) ** math.ceil(t)
    for j in range(1, len(trim(den)) + 2):
        cand = a + j * step
        if eval_at(den, cand) != 0:
            return cand
    raise InternalInvariantError("recentering exhausted candidate offsets")


def _candidates(fs, gs) -> list[Fraction]:
    """Candidate image centers: same-index coefficient ratios, then 0."""
    out: list[Fraction] = []
    for fi, gi in zip(fs, gs):
        if gi != 0:
            w = fi / gi
            if w not in out:
                out.append(w)
    if Fraction(0) not in out:
        out.append(Fraction(0))
    return out


def push_forward_coeffs(p: int, f, g, x: BerkPoint) -> BerkPoint:
    """Image of a disc point under the map with dehomogenized pair (f, g).

    ``f`` and ``g`` are ascending coefficient lists of equal length d+1.
    """
    if x.is_classical:
        raise ValueError("push_forward expects a type II point")
    if is_zero(f) or is_zero(g):
        raise DegenerateMapError("degenerate map")
    return _push(p, list(f), list(g), x.center, x.radius_ord, 0)


def push_forward(rmap, x: BerkPoint) -> BerkPoint:
    """Image of a disc point under a RationalMap."""
    f, g = rmap.dehomogenized()
    return push_forward_coeffs(rmap.p, f, g, x)


def _push(p: int, f, g, a: Fraction, t: Fraction, depth: int) -> BerkPoint:
    a = _recenter(p, g, a, t)
    fs = taylor_shift(f, a)
    gs = taylor_shift(g, a)
    sf = _semi_frac(p, fs, t)
    sg = _semi_frac(p, gs, t)
    if sf - sg < 0:
        # image exceeds the unit disc: compute 1/phi and invert back
        if depth > 0:
            raise InternalInvariantError("chart swap did not stabilize")
        return iota(p, _push(p, g, f, a, t, depth + 1))
    best_s = None
    best_w = None
    for w in _candidates(fs, gs):
        diff = sub(fs, scale(gs, w))
        if is_zero(diff):
            raise DegenerateMapError("degenerate map")
        s = _semi_frac(p, diff, t) - sg
        if best_s is None or s > best_s:
            best_s, best_w = s, w
    return BerkPoint.disc(best_w, best_s)
