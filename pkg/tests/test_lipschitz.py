"""Lipschitz constants, bound formulas, radial profiles, sampling."""

from fractions import Fraction

import pytest

from berklip.berk import BerkPoint, diam_gauss, push_forward
from berklip.invariants import gpr, rp_ord
from berklip.lipschitz import (
    bound_report,
    gpr_witness,
    invariant_bound,
    invariant_bound_terms,
    lip_classical,
    mobius_exact,
    radial_profile,
    resultant_bounds,
    sample_ratios,
    segment_lip,
)
from berklip.projective import INF_POINT, ProjPoint, spherical_ord
from berklip.ratmap import (
    eval_proj,
    from_coeffs,
    from_factored,
    gir_minors,
)
from berklip.sampling import DetRng, random_rational
from berklip.valued import Ord, ppow_compare, ppow_term
from corpus import random_factored_map, random_mobius


def pt(x):
    return ProjPoint.of(Fraction(x))


def sq_minus_inv_p2(p):
    return from_factored(
        p, 1,
        [(pt(Fraction(1, p)), 1), (pt(Fraction(-1, p)), 1)],
        [(INF_POINT, 2)],
    )


def example1_map(p, d, k, beta_scale, c):
    """C z^k / prod (z - beta_i) with d poles on the sphere |z| = |beta_scale|."""
    poles = [(pt(beta_scale * (i + 1)), 1) for i in range(d)]
    return from_factored(p, c, [(pt(0), k)], poles)


def test_lip_classical_examples():
    p = 3
    assert lip_classical(sq_minus_inv_p2(p)) == ppow_term(p, 1, 3)  # 27
    zd = from_factored(p, 1, [(pt(0), 2)], [(INF_POINT, 2)])
    assert lip_classical(zd) == ppow_term(p, 1, 0)
    mob = from_factored(p, Fraction(1, 9), [(pt(0), 1)], [(INF_POINT, 1)])
    assert lip_classical(mob) == ppow_term(p, 1, 2)


def test_resultant_bounds_examples():
    p = 3
    cl, bk = resultant_bounds(sq_minus_inv_p2(p))
    assert cl == ppow_term(p, 1, 8)
    assert bk == ppow_term(p, 1, 16)  # 3^16 beats 2 * 3^8
    zd = from_coeffs(p, [0, 0, 1], [1, 0, 0])
    cl, bk = resultant_bounds(zd)
    assert cl == ppow_term(p, 1, 0)
    assert bk == ppow_term(p, 2, 0)  # good reduction: max(d, 1) = d
    mob = from_coeffs(p, [0, 1], [9, 0])
    cl, bk = resultant_bounds(mob)
    assert cl == bk == ppow_term(p, 1, 2)


def test_invariant_bound_examples():
    p = 3
    m = sq_minus_inv_p2(p)
    b = invariant_bound(m, rp_ord(m).frac, "rp-lower")
    assert b == ppow_term(p, 1, 6)  # max(3^6, 2*3^3) = 729
    with pytest.raises(ValueError):
        invariant_bound(m, -1, "user")
    mob = from_coeffs(p, [0, 1], [9, 0])
    assert invariant_bound(mob, 0, "user") == ppow_term(p, 1, 2)  # 1/GIR


def test_radial_profile_examples():
    p = 3
    zd = from_coeffs(p, [0, 0, 1], [1, 0, 0])
    pr = radial_profile(zd, 0, 0)
    assert [(s.t_hi, s.t_lo, s.coeff_ord, s.k) for s in pr.segments] == [
        (Fraction(0), None, Fraction(0), 2)
    ]
    m = sq_minus_inv_p2(p)
    pr = radial_profile(m, Fraction(1, p), 0)
    # diam of image is 3r on r <= 1/3 (slope 1, unit coefficient p^1)
    tail = pr.segments[-1]
    assert (tail.t_hi, tail.t_lo, tail.coeff_ord, tail.k) == (Fraction(1), None, Fraction(-1), 1)
    assert pr.value_ord_at(2) == Fraction(1)  # diam(image) = p^-1 at r = p^-2


def test_radial_profile_matches_pointwise_pushforward():
    rng = DetRng(8888)
    for _ in range(25):
        p = [3, 5][rng.randint(0, 1)]
        m = random_factored_map(rng, p, dmax=4)
        center = random_rational(rng, p)
        pr = radial_profile(m, center, 0)
        for _ in range(8):
            t = Fraction(rng.randint(0, 24), rng.randint(1, 4))
            img = push_forward(m, BerkPoint.disc(center, t))
            assert diam_gauss(p, img) == Ord.of(pr.value_ord_at(t))


def test_profile_monotone_exponents_in_pole_free_regime():
    """With no finite poles and image inside the unit disc, the slopes of
    the diameter profile never decrease toward the center."""
    rng = DetRng(909)
    checked = 0
    while checked < 15:
        p = [3, 5][rng.randint(0, 1)]
        d = rng.randint(1, 4)
        zeros = []
        pool = set()
        while len(zeros) < d:
            z = random_rational(rng, p)
            if z not in pool and abs_ord_nonneg(p, z):
                pool.add(z)
                zeros.append((pt(z), 1))
        try:
            m = from_factored(p, 1, zeros, [(INF_POINT, d)])
        except Exception:
            continue
        pr = radial_profile(m, 0, 0)
        ks = [s.k for s in pr.segments]
        if any(k < 0 for k in ks):
            continue  # image exits the unit disc; not the pole-free regime
        # segments are ordered by increasing t, i.e. decreasing radius, so
        # the exponents must be non-increasing here (non-decreasing in r)
        assert ks == sorted(ks, reverse=True)
        checked += 1


def abs_ord_nonneg(p, z):
    from berklip.projective import _vord

    v = _vord(Fraction(z), p)
    return v is None or v >= 0


def test_example1_profile_and_segment_lip():
    # d = 3, k in {1, 2}, S = p^-1, |C| = p^2 at p = 5
    p = 5
    for k in (1, 2):
        m = example1_map(p, 3, k, 5, Fraction(1, 25))
        assert gir_minors(m) == Ord.of(2)  # GIR = 1/|C| = p^-2
        pr = radial_profile(m, 0, 1)  # scan [0, S]
        # diameter profile is |C| r^k / S^d while below 1: slope k piece;
        # r1 = (S^d / |C|)^(1/k) has exponent (d * t_S - ord C)/k = 5/k
        t1 = Fraction(3 * 1 - (-2), k)
        assert pr.value_ord_at(t1) == 0
        assert pr.value_ord_at(t1 + 1) == k  # slope k below r1
        lip = segment_lip(pr)
        # k / r1 = k * p^(t1)
        assert lip == ppow_term(p, k, t1)


def test_example1_sharpness_k1_first_term():
    p = 5
    m = example1_map(p, 3, 1, 5, Fraction(1, 25))
    first, second = invariant_bound_terms(m, 1)  # B0 = S = p^-1
    pr = radial_profile(m, 0, 1)
    lip = segment_lip(pr)
    assert ppow_compare(p, lip, first) == 0  # attains 1/(GIR * B0^d)
    assert ppow_compare(p, lip, invariant_bound(m, 1)) <= 0


def test_example2_approaches_second_term():
    # C z^d / prod_{i<d} (z - beta_i): segment lip differs from the second
    # bound term by exactly B0^(1/d)
    p = 5
    d = 3
    poles = [(pt(5), 1), (pt(10), 1)]
    m = from_factored(p, Fraction(1, 25), [(pt(0), d)], poles)
    assert gir_minors(m) == Ord.of(2)
    pr = radial_profile(m, 0, 1)
    lip = segment_lip(pr)
    t1 = Fraction(2 * 1 + 2, d)  # (S^(d-1)/|C|)^(1/d)
    assert lip == ppow_term(p, d, t1)
    _, second = invariant_bound_terms(m, 1)
    # second / lip = p^(1/d) = B0^(-1/d) ... i.e. lip * B0^(-1/d) = second
    from berklip.valued import ppow_mul

    assert ppow_compare(p, ppow_mul(p, lip, ppow_term(p, 1, Fraction(1, d))), second) == 0


def test_segment_lip_constant_segment_is_zero():
    from berklip.lipschitz import ProfileSegment, RadialProfile

    pr = RadialProfile(3, Fraction(0), Fraction(0), (ProfileSegment(Fraction(0), None, Fraction(2), 0),))
    assert segment_lip(pr).is_zero


def test_mobius_exact_examples():
    p = 3
    assert mobius_exact(from_coeffs(p, [0, 1], [9, 0])) == ppow_term(p, 1, 2)
    assert mobius_exact(from_coeffs(p, [2, 1], [1, 0])) == ppow_term(p, 1, 0)  # z + 2
    with pytest.raises(ValueError):
        mobius_exact(from_coeffs(p, [0, 0, 1], [1, 0, 0]))
    rng = DetRng(42)
    for _ in range(40):
        m = random_mobius(rng, [3, 5, 7][rng.randint(0, 2)])
        mobius_exact(m)  # internal five-way agreement assertion


def test_sample_ratios_examples():
    p = 3
    ident = from_coeffs(p, [0, 1], [1, 0])
    s, pair = sample_ratios(ident, 200, 7)
    assert s == ppow_term(p, 1, 0)
    m = sq_minus_inv_p2(p)
    s, pair = sample_ratios(m, 4000, 11)
    assert ppow_compare(p, s, ppow_term(p, 1, 3)) <= 0
    zd = from_factored(p, 1, [(pt(0), 3)], [(INF_POINT, 3)])
    s, _ = sample_ratios(zd, 500, 3)
    assert ppow_compare(p, s, ppow_term(p, 1, 0)) <= 0


def test_gpr_witness_examples():
    p = 3
    m = sq_minus_inv_p2(p)
    w, note = gpr_witness(m)
    assert note is None
    x, y = w
    assert spherical_ord(p, x, y) == Ord.of(3)
    assert spherical_ord(p, eval_proj(m, x), eval_proj(m, y)) == Ord.of(0)
    mob = from_factored(p, Fraction(1, 9), [(pt(0), 1)], [(INF_POINT, 1)])
    w, note = gpr_witness(mob)
    assert w == (pt(0), pt(9))
    ident = from_factored(p, 1, [(pt(0), 1)], [(INF_POINT, 1)])
    w, _ = gpr_witness(ident)
    assert w == (pt(0), pt(1))


def test_growth_bound_along_profiles():
    """For a map with a zero at 0 and no poles inside |z| < B = RP, the
    image diameter at radius B obeys diam <= B^(n-m) / GIR."""
    from berklip.berk import diam_infty
    from berklip.errors import DegenerateMapError

    rng = DetRng(777)
    checked = 0
    while checked < 20:
        p = [3, 5, 7][rng.randint(0, 2)]
        d = rng.randint(2, 5)
        zeros = [(pt(0), 1)]
        taken = {Fraction(0)}
        for _ in range(rng.randint(0, d - 1)):
            z = random_rational(rng, p)
            if z not in taken:
                taken.add(z)
                zeros.append((pt(z), 1))
        poles = []
        for _ in range(rng.randint(1, d)):
            z = random_rational(rng, p)
            if z not in taken:
                taken.add(z)
                poles.append((pt(z), 1))
        if not poles:
            poles = [(INF_POINT, 1)]
        try:
            m = from_factored(p, random_rational(rng, p), zeros, poles)
        except DegenerateMapError:
            continue
        ff = m.factored
        zeros_pts = ff.zero_points()
        b_ord = rp_ord(m).frac
        x = BerkPoint.disc(0, b_ord)
        img = push_forward(m, x)
        f_b = diam_infty(img)
        n = sum(1 for z in zeros_pts if not z.is_inf and in_open_disc(p, z.z, b_ord))
        mm = sum(
            1
            for q in ff.pole_points()
            if not q.is_inf and pole_in_annulus(p, q.z, b_ord)
        )
        gir = gir_minors(m).frac
        # value form f(B) <= B^(n-m) / GIR, i.e. ord >= (n-m) b_ord - gir
        assert f_b >= Ord.of((n - mm) * b_ord - gir)
        checked += 1


def in_open_disc(p, z, b_ord):
    from berklip.projective import _vord

    v = _vord(Fraction(z), p)
    return v is None or v > b_ord


def pole_in_annulus(p, z, b_ord):
    from berklip.projective import _vord

    v = _vord(Fraction(z), p)
    return v is not None and 0 < v <= b_ord


def test_bound_report_assembly():
    p = 3
    m = sq_minus_inv_p2(p)
    rep = bound_report(m, n=500, seed=5, b0_ord=Fraction(1))
    assert rep.lip_classical == ppow_term(p, 1, 3)
    assert rep.resultant_bound_classical == ppow_term(p, 1, 8)
    assert rep.invariant_bound_rp == ppow_term(p, 1, 6)
    assert rep.invariant_bound_rp_coarse == ppow_term(p, 2, 6)  # d/(GIR*RP^d)
    assert rep.invariant_bound_user_b0 == ppow_term(p, 1, 6)
    assert rep.mobius_exact is None
    assert rep.sampled_max_ratio is not None
    assert ppow_compare(p, rep.sampled_max_ratio, rep.lip_classical) <= 0
    assert ppow_compare(p, rep.lip_classical, rep.resultant_bound_classical) <= 0
    assert rep.gpr_witness is not None
