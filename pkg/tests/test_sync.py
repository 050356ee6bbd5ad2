"""Synchronization intervals: endpoints, witnesses, certificates,
partitions, and measure bookkeeping."""

from fractions import Fraction

import pytest

from alphacf.algebra import refine
from alphacf.dynamics import regime_constants
from alphacf.moebius import Ctx
from alphacf.sync import (LARGE, MID, SMALL, SyncInterval, constants,
                          digit_certificates, endpoints, enumerate_intervals,
                          interior_rationals, large_k_chain, measure_report,
                          mid_chain, nonsync_point, partition_check,
                          small_k_chain, verify_sync)
from alphacf.words import TreeWord, find_tree_word


ROOT = TreeWord.root()


def assert_all(checks):
    bad = [name for name, ok in checks if not ok]
    assert not bad, bad


class TestEndpoints:
    def test_small_root_defining_relations(self):
        iv = endpoints(SMALL, 1, ROOT, 3)
        ctx = Ctx(3, 3)
        t = ctx.t
        R = (ctx.A ** 1) * ctx.C
        for alpha, M, src, dst in (
                (iv.zeta, R, t * iv.zeta, t * iv.zeta - t),
                (iv.eta, ctx.C.inverse() * ctx.A * ctx.C * R,
                 t * iv.zeta, None),
                ):
            pass
        # zeta: R . r0 = l0
        assert R.apply(t * iv.zeta) == t * iv.zeta - t
        # eta: C^-1 A C R . r0 = r0
        M = ctx.C.inverse() * ctx.A * ctx.C * R
        assert M.apply(t * iv.eta) == t * iv.eta
        # omega: R . r0 = r0 (f(1) = 1)
        assert R.apply(t * iv.omega) == t * iv.omega
        assert iv.zeta < iv.eta < iv.omega
        assert (iv.i_expected, iv.j_expected) == (5, 2)

    def test_small_ordering_zeta_eta_omega(self):
        for k in (1, 2):
            for letters in [(1,), (2,), (1, 1, 1), (2, 1, 2)]:
                iv = endpoints(SMALL, k, letters, 3)
                assert iv.zeta < iv.eta <= iv.omega

    def test_large_ordering(self):
        for k in (-2, -3):
            for letters in [(1,), (2,), (1, 1, 1)]:
                iv = endpoints(LARGE, k, letters, 3)
                assert iv.omega <= iv.eta < iv.zeta

    def test_mid_single_letter_clipped_at_gamma(self):
        gamma, _, _ = constants(4)
        iv = endpoints(MID, -1, TreeWord((2,)), 4)
        assert iv.omega == gamma

    def test_bad_regime_k(self):
        with pytest.raises(ValueError):
            endpoints(SMALL, 0, ROOT, 3)
        with pytest.raises(ValueError):
            endpoints(LARGE, -1, ROOT, 3)
        with pytest.raises(ValueError):
            endpoints(MID, -2, ROOT, 3)

    def test_interval_lives_in_regime(self):
        gamma, eps, _ = constants(3)
        iv = endpoints(SMALL, 1, ROOT, 3)
        assert iv.omega <= gamma
        jv = endpoints(LARGE, -2, ROOT, 3)
        assert eps <= jv.omega
        mv = endpoints(MID, -1, TreeWord((1,)), 3)
        assert gamma <= mv.omega and mv.zeta <= eps


class TestVerifySync:
    @pytest.mark.parametrize("regime,k,letters", [
        (SMALL, 1, (1,)), (SMALL, 2, (1, 1, 1)), (SMALL, 1, (2,)),
        (LARGE, -2, (1,)), (LARGE, -3, (2, 1, 2)),
        (MID, -1, (1,)),
    ])
    def test_witness_at_interior_points(self, regime, k, letters):
        iv = endpoints(regime, k, letters, 3)
        for alpha in interior_rationals(*iv.j_bounds(), 3):
            w = verify_sync(alpha, iv)
            assert w.relation_ok
            assert w.i == iv.i_expected
            if regime == SMALL:
                assert w.j == iv.j_expected
            else:
                assert w.j in (iv.j_expected, iv.j_expected + 1)

    def test_witness_mid_composite_word(self):
        # (1,1,1) is only in the trimmed middle tree for n >= 4
        iv = endpoints(MID, -1, (1, 1, 1), 4)
        for alpha in interior_rationals(*iv.j_bounds(), 2):
            w = verify_sync(alpha, iv)
            assert w.relation_ok and w.i == iv.i_expected

    def test_small_indices_match_digit_words(self):
        # i = |lower word| + 1 and j = letter sum + 1
        iv = endpoints(SMALL, 2, (1, 2, 1), 3)
        from alphacf.words import lower_digits_small
        v = find_tree_word((1, 2, 1))
        assert iv.i_expected == len(lower_digits_small(2, v, 3)) + 1
        assert iv.j_expected == sum((1, 2, 1)) + 1

    def test_matching_rational_with_pole(self):
        # alpha = 1/2 sits in the MID root interval; both endpoint orbits
        # terminate at poles and the relation closes projectively
        iv = endpoints(MID, -1, ROOT, 3)
        a, b = iv.j_bounds()
        assert a < Fraction(1, 2) < b
        w = verify_sync(Fraction(1, 2), iv)
        assert w.relation_ok


class TestCertificatesAndPartitions:
    @pytest.mark.parametrize("regime,k,letters,n", [
        (SMALL, 1, (1,), 3), (SMALL, 2, (2,), 4),
        (LARGE, -2, (1,), 3), (MID, -1, (1,), 3),
    ])
    def test_digit_certificates(self, regime, k, letters, n):
        iv = endpoints(regime, k, letters, n)
        assert_all(digit_certificates(iv, samples=2))

    @pytest.mark.parametrize("regime,k,n", [
        (SMALL, 1, 3), (SMALL, 2, 4), (LARGE, -2, 3), (MID, -1, 4),
    ])
    def test_partition_of_root(self, regime, k, n):
        assert_all(partition_check(regime, k, ROOT, 4, n))

    def test_partition_composite_parent(self):
        assert_all(partition_check(SMALL, 1, (1, 1, 1), 3, 3))

    def test_chains(self):
        assert_all(small_k_chain(3, 4))
        assert_all(large_k_chain(3, 4))
        for n in (3, 4, 5):
            assert_all(mid_chain(n))


class TestMeasure:
    def test_report_shape_and_bounds(self):
        caps = {"k_max": 3, "len_max": 3, "q_cap": 2}
        rep = measure_report(SMALL, 3, caps)
        lo, hi = rep["coverage"]
        assert Fraction(0) < lo <= hi < Fraction(1)
        ks = [r["k_max"] for r in rep["rows"]]
        assert ks == sorted(ks)
        covs = [r["coverage_lo"] for r in rep["rows"]]
        assert all(a < b for a, b in zip(covs, covs[1:]))

    def test_monotone_in_caps(self):
        base = measure_report(SMALL, 3, {"k_max": 2, "len_max": 3,
                                         "q_cap": 2})
        more_k = measure_report(SMALL, 3, {"k_max": 4, "len_max": 3,
                                           "q_cap": 2})
        more_w = measure_report(SMALL, 3, {"k_max": 2, "len_max": 5,
                                           "q_cap": 3})
        assert base["coverage"][0] < more_k["coverage"][0]
        assert base["coverage"][0] < more_w["coverage"][0]

    def test_mid_root_covers_everything(self):
        rep = measure_report(MID, 3, {"k_max": 1, "len_max": 1, "q_cap": 0,
                                      "letter_cap": 1})
        lo, hi = rep["coverage"]
        assert lo <= 1 <= hi
        assert rep["intervals"] == 1

    def test_enumerate_deterministic(self):
        a = enumerate_intervals(SMALL, 3, 2, 3, 2)
        b = enumerate_intervals(SMALL, 3, 2, 3, 2)
        assert [(iv.k, iv.v.letters) for iv in a] == \
            [(iv.k, iv.v.letters) for iv in b]
        assert len({(iv.k, iv.v.letters) for iv in a}) == len(a)


class TestNonSync:
    def test_depth3_path_confinement(self):
        rep = nonsync_point(SMALL, 1, (2, 1, 1), 3, depth=80)
        assert rep["nested"]
        assert rep["upper_confined"] and rep["lower_confined"]
        lo, hi = rep["enclosure"]
        assert lo < rep["midpoint"] < hi

    def test_large_regime_path(self):
        rep = nonsync_point(LARGE, -2, (1, 1, 1), 3, depth=80)
        assert rep["nested"]
        assert rep["upper_confined"] and rep["lower_confined"]


def test_interior_rationals_strictly_inside():
    iv = endpoints(SMALL, 1, ROOT, 3)
    pts = interior_rationals(*iv.j_bounds(), 5)
    assert len(pts) == 5
    assert all(pts[i] < pts[i + 1] for i in range(4))
    assert iv.zeta < pts[0] and pts[-1] < iv.eta


def test_golden_endpoints_root_small():
    # x = t*alpha units: t*zeta = (5 - sqrt(21))/2, t*eta = (-1+sqrt(21))/10
    iv = endpoints(SMALL, 1, ROOT, 3)
    z = 2 * iv.zeta
    e = 2 * iv.eta
    assert 4 * z * z - 20 * z + 4 == 0           # z^2 - 5z + 1 = 0
    assert 100 * e * e + 20 * e - 20 == 0        # 5e^2 + e - 1 = 0
