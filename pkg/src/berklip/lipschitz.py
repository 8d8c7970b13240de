"""Lipschitz constants and bounds for rational maps.

The exact classical Lipschitz constant is 1/GPR.  Two families of upper
bounds for the Berkovich Lipschitz constant are computed exactly as
p-power sums: the resultant bounds 1/|Res| and max(d/|Res|, 1/|Res|^d),
and the invariant bound max(1/(GIR * B^d), d/(GIR^(1/d) * B)) for a ball
radius B supplied either as the computable lower bound RP or by the
caller.  Degree-1 maps collapse: all quantities agree and are checked
against each other.

Radial profiles track diam_G of the image along a ray [center, zeta] as
an exact piecewise power of the radius; the segment Lipschitz constant is
the maximal slope sup |k| C r^(k-1), attained at a piece endpoint.
A deterministic sampler of classical pairs provides empirical ratio
maxima and equality witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .berk import _candidates
from .errors import InternalInvariantError
from .invariants import _semi_env, gpr, rp_ord
from .piecewise import PWLinear
from .polynomials import is_zero, scale, sub, taylor_shift
from .projective import ProjPoint, _vord, spherical_ord
from .ratmap import RationalMap, gir_minors, normalize, resultant_ord, resultant_ord_product
from .sampling import DetRng, random_point_ints
from .valued import (
    Ord,
    PPowerSum,
    PPOW_ZERO,
    int_val,
    ppow_compare,
    ppow_max,
    ppow_term,
)

__all__ = [
    "ProfileSegment",
    "RadialProfile",
    "BoundReport",
    "lip_classical",
    "resultant_bounds",
    "invariant_bound",
    "invariant_bound_terms",
    "radial_profile",
    "segment_lip",
    "mobius_exact",
    "sample_ratios",
    "gpr_witness",
    "bound_report",
]


# ---------------------------------------------------------------------------
# closed-form bounds
# ---------------------------------------------------------------------------


def lip_classical(m: RationalMap) -> PPowerSum:
    """Exact classical Lipschitz constant 1/GPR as a one-term sum."""
    result = gpr(m)
    return ppow_term(m.p, 1, result.ord.frac)


def resultant_bounds(m: RationalMap) -> tuple[PPowerSum, PPowerSum]:
    """(classical bound 1/|Res|, Berkovich bound max(d/|Res|, 1/|Res|^d))."""
    r = resultant_ord(m).frac
    classical = ppow_term(m.p, 1, r)
    berk = ppow_max(m.p, ppow_term(m.p, m.d, r), ppow_term(m.p, 1, m.d * r))
    return classical, berk


def invariant_bound_terms(
    m: RationalMap, b0_ord
) -> tuple[PPowerSum, PPowerSum]:
    """Both branches of max(1/(GIR * B^d), d/(GIR^(1/d) * B)) for B = p^(-b0_ord)."""
    b0 = Fraction(b0_ord)
    if b0 < 0:
        raise ValueError("B0 > 1 impossible")
    g = gir_minors(m).frac
    first = ppow_term(m.p, 1, g + m.d * b0)
    second = ppow_term(m.p, m.d, g / m.d + b0)
    return first, second


def invariant_bound(m: RationalMap, b0_ord, source: str = "user") -> PPowerSum:
    """The two-term Berkovich bound with ball radius p^(-b0_ord).

    ``source`` records where the radius came from ("rp-lower" or "user");
    it does not change the value.
    """
    if source not in ("rp-lower", "user"):
        raise ValueError(f"unknown B0 source {source!r}")
    first, second = invariant_bound_terms(m, b0_ord)
    return ppow_max(m.p, first, second)


def mobius_exact(m: RationalMap) -> PPowerSum:
    """Exact Lipschitz constant of a degree-1 map.

    Computed as max coefficient norm over |determinant| and cross-checked
    against 1/GIR, 1/GPR and both resultant computations, which must all
    agree exactly in degree 1.
    """
    if m.d != 1:
        raise ValueError("mobius_exact requires degree 1")
    m = normalize(m)
    a1, a0 = m.f[1], m.f[0]
    b1, b0 = m.g[1], m.g[0]
    det = a1 * b0 - a0 * b1
    ords = [_vord(c, m.p) for c in (a1, a0, b1, b0)]
    min_ord = min(v for v in ords if v is not None)
    direct = _vord(det, m.p) - min_ord
    values = {
        "1/|Res| (sylvester)": resultant_ord(m).frac,
        "1/|Res| (product)": resultant_ord_product(m).frac,
        "1/GIR": gir_minors(m).frac,
        "1/GPR": gpr(m).ord.frac,
        "max-entry/det": direct,
    }
    if len(set(values.values())) != 1:
        raise InternalInvariantError(f"degree-1 constants disagree: {values}")
    return ppow_term(m.p, 1, direct)


# ---------------------------------------------------------------------------
# radial profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ProfileSegment:
    """One monomial piece: image diameter p^(-coeff_ord) * r^k for radii
    r = p^(-t), t in [t_hi, t_lo] (t_lo None when the piece runs to the
    classical center, r -> 0)."""

    t_hi: Fraction
    t_lo: Fraction | None
    coeff_ord: Fraction
    k: int


@dataclass(frozen=True, slots=True)
class RadialProfile:
    p: int
    center: Fraction
    t_min: Fraction
    segments: tuple[ProfileSegment, ...]

    def value_ord_at(self, t) -> Fraction:
        """Exponent s with image diameter p^(-s) at radius exponent t."""
        t = Fraction(t)
        seg = self.segments[0]
        for s in self.segments[1:]:
            if s.t_hi <= t:
                seg = s
            else:
                break
        return seg.coeff_ord + seg.k * t


def _image_diam_pieces(p: int, fs, gs, lo, hi):
    """diam_G exponent of the image over [lo, hi], assuming the image stays
    within the closed unit disc there (seminorm of f <= seminorm of g)."""
    sg = _semi_env(p, gs, lo, hi)
    tagged = []
    for w in _candidates(fs, gs):
        diff = sub(fs, scale(gs, w))
        if is_zero(diff):
            raise InternalInvariantError("map degenerated to a constant")
        tagged.append((w, _semi_env(p, diff, lo, hi) - sg))
    big = tagged[0][1]
    for _, env in tagged[1:]:
        big = big.max_with(env)
    pieces = []
    for start, end, k, c in big.spans():
        t_star = big._sample_point(start, end)
        w_star = None
        for w, env in tagged:
            if env(t_star) == k * t_star + c:
                w_star = w
                break
        vb = _vord(w_star, p)
        piece = PWLinear(start, end, ((start, k, c),))
        floor = min(Fraction(0), vb) if vb is not None else Fraction(0)
        fold = piece.min_with(PWLinear.const(floor, start, end))
        s_img = piece - fold - fold
        pieces.extend(s_img.pieces)
    return pieces


def radial_profile(m: RationalMap, center, t_min) -> RadialProfile:
    """Exact diam_G-of-image profile along the ray from p^(-t_min) down to
    the classical center.

    Piecewise p^(-c) * r^k with integer |k| <= degree; regions where the
    image leaves the unit disc are computed in the inversion chart, whose
    diameters agree since inversion preserves diam_G.
    """
    m = normalize(m)
    p = m.p
    center = Fraction(center)
    t_min = Fraction(t_min)
    if t_min < 0:
        raise ValueError("t_min must be >= 0 (radii at most 1)")
    f, g = m.dehomogenized()
    fs = taylor_shift(f, center)
    gs = taylor_shift(g, center)
    sigma = _semi_env(p, fs, t_min, None) - _semi_env(p, gs, t_min, None)
    neg = sigma.negative_regions()
    regions: list[tuple[Fraction | None, Fraction | None, bool]] = []
    cursor: Fraction | None = t_min
    for a, b in neg:
        if a is not None and cursor is not None and a > cursor:
            regions.append((cursor, a, False))
        regions.append((a if a is not None else cursor, b, True))
        cursor = b
        if b is None:
            break
    if cursor is not None:
        regions.append((cursor, None, False))
    pieces = []
    for a, b, swapped in regions:
        if a is not None and b is not None and a == b:
            continue
        if swapped:
            pieces.extend(_image_diam_pieces(p, gs, fs, a, b))
        else:
            pieces.extend(_image_diam_pieces(p, fs, gs, a, b))
    profile = PWLinear(t_min, None, tuple(pieces)).simplified()
    segments = []
    for start, end, k, c in profile.spans():
        if k.denominator != 1:
            raise InternalInvariantError("profile slope must be an integer")
        segments.append(ProfileSegment(start, end, c, int(k)))
    return RadialProfile(p, center, t_min, tuple(segments))


def segment_lip(profile: RadialProfile) -> PPowerSum:
    """Lipschitz constant of the map restricted to the profiled ray.

    Each monomial piece C r^k contributes sup |k| C r^(k-1), attained at
    the large-radius end for k >= 1 and the small-radius end for k <= -1.
    """
    p = profile.p
    cands = []
    for seg in profile.segments:
        if seg.k == 0:
            continue
        if seg.k >= 1:
            t_ref = seg.t_hi
        else:
            if seg.t_lo is None:
                raise InternalInvariantError("image diameter must shrink at the center")
            t_ref = seg.t_lo
        exponent = -seg.coeff_ord - (seg.k - 1) * t_ref
        cands.append(ppow_term(p, abs(seg.k), exponent))
    if not cands:
        return PPOW_ZERO
    return ppow_max(p, *cands)


# ---------------------------------------------------------------------------
# sampling and witnesses
# ---------------------------------------------------------------------------


def _sph_pair_ord(p: int, un: int, ud: int, vn: int, vd: int):
    """Spherical distance exponent for projective integer pairs (num, den);
    a zero denominator encodes infinity.  None means equal points."""
    if ud == 0 and vd == 0:
        return None
    if ud == 0 or vd == 0:
        n, d = (vn, vd) if ud == 0 else (un, ud)
        if n == 0:
            return 0
        v = int_val(abs(n), p) - int_val(abs(d), p)
        return -v if v < 0 else 0
    num = un * vd - vn * ud
    if num == 0:
        return None
    s = int_val(abs(num), p) - int_val(abs(ud), p) - int_val(abs(vd), p)
    if un != 0:
        vx = int_val(abs(un), p) - int_val(abs(ud), p)
        if vx < 0:
            s -= vx
    if vn != 0:
        vy = int_val(abs(vn), p) - int_val(abs(vd), p)
        if vy < 0:
            s -= vy
    return s


def _int_coeff_pair(m: RationalMap) -> tuple[list[int], list[int]]:
    """Clear denominators of (f, g) by one common factor, preserving the map."""
    from math import lcm

    dens = [c.denominator for c in m.f + m.g]
    scale_by = lcm(*dens)
    fi = [int(c * scale_by) for c in m.f]
    gi = [int(c * scale_by) for c in m.g]
    return fi, gi


from functools import lru_cache


@lru_cache(maxsize=16)
def _pair_pool(p: int, n: int, seed: int):
    """n sampled distinct pairs with their source distances, reusable
    across maps for a fixed seed."""
    rng = DetRng(seed)
    pool = []
    while len(pool) < n:
        xn, xd = random_point_ints(rng, p)
        yn, yd = random_point_ints(rng, p)
        s = _sph_pair_ord(p, xn, xd, yn, yd)
        if s is None:
            continue
        pool.append((xn, xd, yn, yd, s))
    return tuple(pool)


def sample_ratios(m: RationalMap, n: int, seed: int, lip_ord=None):
    """Max of dist(phi x, phi y)/dist(x, y) over n sampled distinct pairs.

    Returns (max ratio as a one-term sum, maximizing pair of points).  The
    loop runs on unreduced integer pairs for speed.  When the exact
    Lipschitz exponent is known (``lip_ord``, or computable from a
    factored form) the maximum is asserted to stay within it.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    m = normalize(m)
    p = m.p
    fi, gi = _int_coeff_pair(m)
    d = m.d
    rng_span = range(d, -1, -1)
    max_e = None
    best_pair = None
    for xn, xd, yn, yd, s_src in _pair_pool(p, n, seed):
        ax = bx = ay = by = 0
        xpow = ypow = 1
        # hom eval: sum c_i num^i den^(d-i), Horner in num with den powers
        for i in rng_span:
            ax = ax * xn + fi[i] * xpow
            bx = bx * xn + gi[i] * xpow
            ay = ay * yn + fi[i] * ypow
            by = by * yn + gi[i] * ypow
            xpow *= xd
            ypow *= yd
        s_img = _sph_pair_ord(p, ax, bx, ay, by)
        if s_img is None:
            continue
        e = s_src - s_img
        if max_e is None or e > max_e:
            max_e = e
            best_pair = (Fraction(xn, xd), Fraction(yn, yd))
    if max_e is None:
        return PPOW_ZERO, None
    if lip_ord is None and m.factored is not None:
        lip_ord = gpr(m).ord.frac
    if lip_ord is not None and max_e > lip_ord:
        raise InternalInvariantError("sampled ratio exceeded the exact Lipschitz bound")
    pair = (ProjPoint.of(best_pair[0]), ProjPoint.of(best_pair[1]))
    return ppow_term(p, 1, max_e), pair


def gpr_witness(m: RationalMap):
    """Search for classical points x, y at spherical distance GPR whose
    images are at distance 1, certifying that 1/GPR is attained.

    Returns (pair, None) on success or (None, diagnostic).  Candidates sit
    in distinct residue directions at the minimizing preimage point; over
    QQ only p residue directions exist, so failure is a reportable outcome
    rather than an error.
    """
    from .berk import iota
    from .projective import INF_POINT
    from .ratmap import eval_proj

    result = gpr(m)
    q = result.argmin
    target = result.ord  # spherical distance the pair must realize
    a, t = q.center, q.radius_ord
    va = _vord(a, m.p)
    inverted = not (t >= 0 and (va is None or va >= 0))
    if inverted:
        qi = iota(m.p, q)
        a, t = qi.center, qi.radius_ord
    if t.denominator != 1:
        return None, "witness requires an integer radius exponent"
    step = Fraction(m.p) ** int(t)  # |step| equals the disc radius
    pts = []
    for u in range(min(m.p, 97)):
        z = a + u * step
        if inverted:
            pts.append(INF_POINT if z == 0 else ProjPoint.of(1 / z))
        else:
            pts.append(ProjPoint.of(z))
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if spherical_ord(m.p, pts[i], pts[j]) != target:
                continue
            ix, iy = eval_proj(m, pts[i]), eval_proj(m, pts[j])
            if spherical_ord(m.p, ix, iy) == Ord.of(0):
                return (pts[i], pts[j]), None
    return None, f"no witness among {min(m.p, 97)} residue directions"


# ---------------------------------------------------------------------------
# the combined report
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class BoundReport:
    p: int
    d: int
    lip_classical: PPowerSum | None
    resultant_bound_classical: PPowerSum
    resultant_bound_berk: PPowerSum
    invariant_bound_rp: PPowerSum | None
    invariant_bound_rp_coarse: PPowerSum | None
    invariant_bound_user_b0: PPowerSum | None
    mobius_exact: PPowerSum | None
    sampled_max_ratio: PPowerSum | None
    sample_witness: tuple[ProjPoint, ProjPoint] | None
    gpr_witness: tuple[ProjPoint, ProjPoint] | None
    gpr_witness_note: str | None


def bound_report(
    m: RationalMap, n: int = 0, seed: int = 0, b0_ord=None
) -> BoundReport:
    """Assemble every computable bound for one map.

    Fields depending on the factored form are None when it is absent; the
    orderings sampled <= exact classical <= resultant bound are asserted.
    """
    m = normalize(m)
    p = m.p
    res_cl, res_bk = resultant_bounds(m)
    lip = inv_rp = coarse = None
    witness = note = None
    lip_ord = None
    if m.factored is not None:
        g = gpr(m)
        lip_ord = g.ord.frac
        lip = ppow_term(p, 1, lip_ord)
        rp = rp_ord(m).frac
        inv_rp = invariant_bound(m, rp, "rp-lower")
        coarse = ppow_term(p, m.d, gir_minors(m).frac + m.d * rp)
        witness, note = gpr_witness(m)
        if ppow_compare(p, lip, res_cl) > 0:
            raise InternalInvariantError("exact constant exceeded resultant bound")
    inv_b0 = invariant_bound(m, b0_ord, "user") if b0_ord is not None else None
    mob = mobius_exact(m) if m.d == 1 else None
    sampled = pair = None
    if n > 0:
        sampled, pair = sample_ratios(m, n, seed, lip_ord=lip_ord)
    return BoundReport(
        p,
        m.d,
        lip,
        res_cl,
        res_bk,
        inv_rp,
        coarse,
        inv_b0,
        mob,
        sampled,
        pair,
        witness,
        note,
    )
