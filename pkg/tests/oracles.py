"""Independent brute-force oracle used to validate the exact pushforward.

The reconstruction uses only classical evaluation, exact valuations and
disc joins; it never touches Taylor shifts, seminorm envelopes, or the
candidate-center minimization it is meant to check.

Soundness facts (both one-sided):

* A residue direction of the source disc containing no pole has its whole
  image inside the image disc, so the smallest disc L containing the
  sampled images of all pole-free directions satisfies L <= phi(x) in the
  containment order toward infinity.
* Applying the same construction to 1/phi (whose poles are phi's zeros)
  bounds iota(phi(x)) from below, i.e. phi(x) lies on the path from
  iota(L') toward 0.

When the two reconstructions meet (L equals iota(L') as points) and the
paths from that point toward 0 and toward infinity are disjoint (its disc
contains 0), the image point is pinned exactly: the oracle is decisive.
Instances where the rational samples collapse into too few residue
directions (the residue field is finite) stay indecisive and the corpus
redraws; a decisive disagreement is a genuine refutation.
"""

from __future__ import annotations

from fractions import Fraction

from berklip.berk import BerkPoint, berk_equal, iota
from berklip.projective import ProjPoint, _vord
from berklip.ratmap import RationalMap, eval_proj
from berklip.sampling import DetRng, random_unit_fraction

SAMPLES = 200


def _point_directions(points, a: Fraction, t: int, p: int) -> set[int]:
    """Residue classes at zeta_{a, p^-t} containing one of the points."""
    dirs: set[int] = set()
    for pt in points:
        if pt.is_inf:
            continue
        v = _vord(pt.z - a, p)
        if v is None or v > t:
            dirs.add(0)
        elif v == t:
            off = (pt.z - a) / Fraction(p) ** t
            num = off.numerator % p
            den = off.denominator % p
            dirs.add(num * pow(den, -1, p) % p)
    return dirs


def _join_top(values, p: int) -> BerkPoint | None:
    """Smallest disc containing the given rationals, as a type II point."""
    b = values[0]
    s = None
    for w in values[1:]:
        v = _vord(w - b, p)
        if v is not None and (s is None or v < s):
            s = v
    if s is None:
        return None
    return BerkPoint.disc(b, s)


def oracle_push_forward(m: RationalMap, x: BerkPoint, seed: int = 0):
    """(point, decisive): brute-force image of a disc point.

    Decisive means the two one-sided reconstructions met and pinned the
    point; only then is the value a certified independent answer.
    """
    p = m.p
    a = x.center
    t = int(x.radius_ord)
    ff = m.factored
    if ff is None:
        return None, False
    rng = DetRng(seed)
    pole_dirs = _point_directions([pt for pt, _ in ff.poles], a, t, p)
    zero_dirs = _point_directions([pt for pt, _ in ff.zeros], a, t, p)
    per_dir = max(4, SAMPLES // p)
    images: dict[int, list[ProjPoint]] = {c: [] for c in range(p)}
    for c in range(p):
        for _ in range(per_dir):
            u = random_unit_fraction(rng, p)
            e = rng.randint(1, 4)
            z = a + c * Fraction(p) ** t + u * Fraction(p) ** (t + e)
            images[c].append(eval_proj(m, ProjPoint.of(z)))

    def reconstruct(bad_dirs: set[int], invert: bool) -> BerkPoint | None:
        vals: list[Fraction] = []
        for c in range(p):
            if c in bad_dirs:
                continue
            for w in images[c]:
                if invert:
                    if w.is_inf:
                        vals.append(Fraction(0))
                    elif w.z == 0:
                        return None  # direction misclassified; abstain
                    else:
                        vals.append(1 / w.z)
                else:
                    if w.is_inf:
                        return None
                    vals.append(w.z)
        if len(vals) < 2:
            return None
        return _join_top(vals, p)

    low = reconstruct(pole_dirs, invert=False)
    low_inv = reconstruct(zero_dirs, invert=True)
    if low is None or low_inv is None:
        return low, False
    upper = iota(p, low_inv)
    if upper.is_classical or not berk_equal(p, low, upper):
        return low, False
    # pinned only when the paths toward 0 and infinity leave the meeting
    # point in different directions, i.e. its disc contains 0
    v_center = _vord(low.center, p)
    decisive = v_center is None or v_center >= low.radius_ord
    return low, decisive


def minimality_refuted(m: RationalMap, x: BerkPoint, seed: int = 0) -> bool:
    """Second, unfiltered gate on the candidate-center minimization.

    Sampled images of pole-free directions are points of the true image
    disc, so the exact seminorm distance |phi - w|_x for such a w can
    never be smaller than the image diameter.  If it drops below the
    diameter computed by push_forward, the finite candidate set missed the
    true minimum.  Returns True on refutation.
    """
    from berklip.berk import _semi_frac, push_forward
    from berklip.polynomials import scale, sub, taylor_shift

    p = m.p
    a = x.center
    t = int(x.radius_ord)
    got = push_forward(m, x)
    f, g = m.dehomogenized()
    fs = taylor_shift(f, a)
    gs = taylor_shift(g, a)
    sg = _semi_frac(p, gs, Fraction(t))
    ref = sub(fs, scale(gs, got.center))
    s_hat = _semi_frac(p, ref, Fraction(t)) - sg  # |phi - b_hat|_x exponent
    pole_dirs = _point_directions([pt for pt, _ in m.factored.poles], a, t, p)
    rng = DetRng(seed)
    for c in range(p):
        if c in pole_dirs:
            continue
        for _ in range(15):
            u = random_unit_fraction(rng, p)
            e = rng.randint(1, 4)
            z = a + c * Fraction(p) ** t + u * Fraction(p) ** (t + e)
            w = eval_proj(m, ProjPoint.of(z))
            if w.is_inf:
                continue
            s_w = _semi_frac(p, sub(fs, scale(gs, w.z)), Fraction(t)) - sg
            if s_w > s_hat:
                return True
    return False
