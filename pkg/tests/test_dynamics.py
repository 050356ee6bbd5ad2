"""Interval map mechanics: digits, orbits, admissibility, regime
constants, and the two boundary suites."""

from fractions import Fraction

import pytest

from alphacf.algebra import refine
from alphacf.dynamics import (AlphaParam, Digit, MapInconsistency,
                              admissible, alpha0_suite, alpha1_suite,
                              alphabet, digit_cmp, digit_seq_cmp, first_return,
                              orbit, regime_constants, step)
from alphacf.moebius import Ctx


def test_alpha_param_bounds():
    ap = AlphaParam(3, 3, Fraction(1, 3))
    assert ap.l0 == Fraction(-4, 3) and ap.r0 == Fraction(2, 3)
    assert ap.contains(Fraction(0))
    assert not ap.contains(ap.r0)
    assert ap.contains_closed(ap.r0)
    with pytest.raises(ValueError):
        AlphaParam(3, 3, Fraction(3, 2))


def test_step_matches_matrix_action():
    ap = AlphaParam(3, 3, Fraction(1, 3))
    ctx = Ctx(3, 3)
    x = Fraction(1, 5)
    d, y = step(x, ap)
    want = ((ctx.A ** d.k) * (ctx.C ** d.l)).apply(
        ctx.field.from_rational(x))
    assert want == y
    assert ap.contains(y)


def test_digit_k_never_zero_and_l_bounded():
    ap = AlphaParam(3, 3, Fraction(2, 5))
    rec = orbit(ap.l0, ap, 40)
    for d in rec.digits:
        assert d.k != 0
        assert 1 <= d.l <= 2


def test_orbit_pole_stops():
    # alpha = 1/2, n = 3: l0 = -1, C.(-1) = 1 - 1/(-1) = 2 outside, then
    # the orbit terminates when a pole is reached at 0
    ap = AlphaParam(3, 3, Fraction(1, 2))
    rec = orbit(ap.ctx.field.from_rational(Fraction(0)), ap, 5)
    assert rec.pole_at == 0


def test_digit_order():
    # level first; within a level: -1 < -2 < ... < 2 < 1
    seq = [(-1, 1), (-2, 1), (-5, 1), (7, 1), (3, 1), (1, 1), (-1, 2)]
    for a, b in zip(seq, seq[1:]):
        assert digit_cmp(a, b) == -1
        assert digit_cmp(b, a) == 1
    assert digit_cmp((2, 1), (2, 1)) == 0
    assert digit_seq_cmp([(1, 1), (2, 1)], [(1, 1)]) == 1


def test_admissible_kneading_sandwich():
    ap = AlphaParam(3, 3, Fraction(2, 5))
    up = orbit(ap.r0, ap, 6).digits
    low = orbit(ap.l0, ap, 6).digits
    assert admissible(up, ap)
    assert admissible(low, ap)
    assert not admissible([Digit(5, 2)], ap)  # beyond the upper kneading


def test_alphabet_shape():
    ap = AlphaParam(3, 3, Fraction(2, 5))
    ab = alphabet(ap)
    assert ab.left.l == 1 and ab.left.k < 0
    for d in ab.sample(4):
        assert ab.contains(d)
    assert not ab.contains((0, 1))


def test_first_return_periodic_point():
    # at alpha = 0 the orbit of -t is periodic with period mn - m - n
    ap = AlphaParam(3, 5, Fraction(0))
    rec = orbit(-ap.t, ap, 10)
    assert first_return(rec) == 7


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_regime_constants_defining_relations(n):
    ctx = Ctx(3, n)
    gamma, eps, delta = regime_constants(n)
    t = ctx.t
    for alpha, M in ((gamma, ctx.C.inverse()),
                     (eps, ctx.A.inverse() * ctx.C)):
        l0 = alpha * t - t
        assert M.apply(l0) == alpha * t
    ld = delta * t - t
    assert ctx.C.inverse().apply(ld) == (ctx.A.inverse() * ctx.C).apply(ld)
    assert Fraction(0) < gamma < delta < eps < Fraction(1)


def test_regime_constants_n3_values():
    # gamma = (3 - sqrt(5))/4 and eps = (1 + sqrt(5))/4: roots of
    # 4x^2 - 6x + 1 and 4x^2 - 2x - 1
    gamma, eps, delta = regime_constants(3)
    assert 4 * gamma * gamma - 6 * gamma + 1 == 0
    assert 4 * eps * eps - 2 * eps - 1 == 0
    ge, ee = refine(gamma, 64), refine(eps, 64)
    assert Fraction(19, 100) < ge.lo and ge.hi < Fraction(20, 100)
    assert Fraction(80, 100) < ee.lo and ee.hi < Fraction(81, 100)


@pytest.mark.parametrize("m,n", [(3, 3), (3, 6), (4, 5), (5, 7), (8, 8)])
def test_alpha0_suite(m, n):
    for name, ok in alpha0_suite(m, n):
        assert ok, (m, n, name)


@pytest.mark.parametrize("m,n", [(3, 3), (3, 6), (4, 5), (5, 7), (8, 8)])
def test_alpha1_suite(m, n):
    for name, ok in alpha1_suite(m, n):
        assert ok, (m, n, name)


def test_step_rejects_outside_point():
    ap = AlphaParam(3, 3, Fraction(1, 3))
    with pytest.raises(MapInconsistency):
        step(Fraction(5), ap)
