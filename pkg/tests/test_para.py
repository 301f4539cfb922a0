import math

import numpy as np
import pytest

import paraortho as pa
from paraortho.para import kernel_to_monic_factor, para_scale, real_form_grid
from paraortho.szego import eval_pair, monic_norm

TWO_PI = 2.0 * math.pi

DEFINITIONS = ("kernel", "level_n", "level_nm1")


class TestEvaluation:
    def test_free_first_kind_vanishes_at_roots_of_unity(self):
        # h_3(z) = 1 - z^3 for the free case pinned at 1
        p = pa.ParaPolynomial("first", 3, 1.0, pa.ConstantSequence(0.0))
        z = np.exp(2j * np.pi / 3)
        for definition in DEFINITIONS:
            assert abs(pa.para_eval(p, z, definition)) < 1e-14
        assert abs(pa.para_eval(p, 2.0, "level_n") - (1 - 8)) < 1e-12

    def test_second_kind_equals_two_at_base_point(self):
        for seed in (1, 5):
            seq = pa.RandomSequence(0.8, seed)
            p = pa.ParaPolynomial("second", 40, np.exp(0.4j), seq)
            assert pa.para_eval(p, p.lam, "kernel") == 2.0

    def test_first_kind_vanishes_at_base_point(self):
        seq = pa.RandomSequence(0.85, 17)
        p = pa.ParaPolynomial("first", 60, np.exp(1.2j), seq)
        assert pa.para_eval(p, p.lam, "kernel") == 0.0
        scale = para_scale(p, p.lam, "level_n")
        assert abs(pa.para_eval(p, p.lam, "level_n")) <= 1e-9 * scale

    def test_three_definitions_agree(self):
        rng = np.random.default_rng(12)
        for seed in (100, 101, 102, 103):
            seq = pa.RandomSequence(0.85, seed)
            lam = np.exp(1j * rng.uniform(0.0, TWO_PI))
            for kind in ("first", "second"):
                p = pa.ParaPolynomial(kind, 80, lam, seq)
                z = np.exp(1j * rng.uniform(0.0, TWO_PI, 32))
                vals = {d: pa.para_eval(p, z, d) for d in DEFINITIONS}
                ref = np.maximum(para_scale(p, z, "level_n"), 1.0)
                for d1, d2 in (("kernel", "level_n"), ("level_n", "level_nm1")):
                    assert np.max(np.abs(vals[d1] - vals[d2]) / ref) <= 1e-9

    def test_degree_and_kind_validation(self):
        with pytest.raises(ValueError):
            pa.ParaPolynomial("third", 3, 1.0, pa.ConstantSequence(0.0))
        with pytest.raises(ValueError):
            pa.ParaPolynomial("first", 0, 1.0, pa.ConstantSequence(0.0))
        with pytest.raises(ValueError):
            pa.ParaPolynomial("first", 3, 1.1, pa.ConstantSequence(0.0))
        p = pa.ParaPolynomial("first", 3, 1.0, pa.ConstantSequence(0.0))
        with pytest.raises(ValueError):
            pa.para_eval(p, 1.0, "bogus")


class TestBeta:
    def test_free_case(self):
        p = pa.ParaPolynomial("first", 5, 1.0, pa.ConstantSequence(0.0))
        assert pa.beta_coefficient(p) == 1.0
        q = pa.ParaPolynomial("second", 5, 1.0, pa.ConstantSequence(0.0))
        assert pa.beta_coefficient(q) == -1.0

    def test_direct_formula(self):
        seq = pa.ConstantSequence(0.5)
        p = pa.ParaPolynomial("first", 2, 1.0, seq)
        pv = eval_pair(seq, 1, 1.0)
        expected = np.conj(1.0) * pv.phi_star / pv.phi
        assert abs(pa.beta_coefficient(p) - expected) < 1e-14

    def test_unimodular(self):
        rng = np.random.default_rng(2)
        for seed in (7, 8, 9):
            seq = pa.RandomSequence(0.9, seed)
            lam = np.exp(1j * rng.uniform(0.0, TWO_PI))
            for kind in ("first", "second"):
                b = pa.beta_coefficient(pa.ParaPolynomial(kind, 35, lam, seq))
                assert abs(abs(b) - 1.0) <= 1e-10
        b1 = pa.beta_coefficient(pa.ParaPolynomial("first", 35, lam, seq))
        b2 = pa.beta_coefficient(pa.ParaPolynomial("second", 35, lam, seq))
        assert b2 == -b1


class TestRealForm:
    def test_free_case_closed_form(self):
        # eta_2 at theta = pi/2 equals -2 when pinned at 1
        p = pa.ParaPolynomial("first", 2, 1.0, pa.ConstantSequence(0.0))
        rf = pa.real_form(p, math.pi / 2)
        assert rf.value == -2.0
        assert rf.imag_residual == 0.0

    def test_second_kind_at_origin(self):
        p = pa.ParaPolynomial("second", 7, np.exp(0.3j), pa.RandomSequence(0.6, 1))
        rf = pa.real_form(p, 0.0)
        # level form loses the exact 2 at huge scales; here scale is tame
        assert abs(rf.value - 2.0) < 1e-9

    def test_free_trace_is_sine(self):
        p = pa.ParaPolynomial("first", 6, 1.0, pa.ConstantSequence(0.0))
        th = np.linspace(0.1, TWO_PI - 0.1, 37)
        vals, resid, _ = real_form_grid(p, th)
        assert np.max(np.abs(vals - (-2.0 * np.sin(3.0 * th)))) < 1e-12
        assert np.max(resid) < 1e-12

    def test_realness_bulk(self):
        rng = np.random.default_rng(77)
        for seed in (11, 12, 13):
            seq = pa.RandomSequence(0.8, seed)
            lam = np.exp(1j * rng.uniform(0.0, TWO_PI))
            n = int(rng.integers(2, 201))
            th = rng.uniform(0.0, TWO_PI, 256)
            for kind in ("first", "second"):
                p = pa.ParaPolynomial(kind, n, lam, seq)
                vals, resid, _ = real_form_grid(p, th)
                assert np.max(resid) <= 1e-9 * max(np.max(np.abs(vals)), 1.0)

    def test_branch_wrap_sign_flip_odd_degree(self):
        # for odd n the branch factor flips sign across theta = 0
        seq = pa.RandomSequence(0.5, 21)
        p = pa.ParaPolynomial("second", 7, np.exp(1.0j), seq)
        eps = 1e-8
        lo = pa.real_form(p, eps).value
        hi = pa.real_form(p, TWO_PI - eps).value
        assert abs(hi + lo) <= 1e-6 * max(abs(lo), 1.0)
        # even n: continuous across the cut
        q = pa.ParaPolynomial("second", 8, np.exp(1.0j), seq)
        lo = pa.real_form(q, eps).value
        hi = pa.real_form(q, TWO_PI - eps).value
        assert abs(hi - lo) <= 1e-6 * max(abs(lo), 1.0)


class TestDifferenceIdentities:
    def test_first_kind_difference(self):
        # h_{n+1} - h_n = (1 - conj(lam) z) conj(phi_n(lam)) phi_n(z)
        rng = np.random.default_rng(31)
        seq = pa.RandomSequence(0.8, 55)
        lam = np.exp(0.8j)
        for n in (3, 40, 200):
            p0 = pa.ParaPolynomial("first", n, lam, seq)
            p1 = pa.ParaPolynomial("first", n + 1, lam, seq)
            z = np.exp(1j * rng.uniform(0.0, TWO_PI, 16))
            lhs = pa.para_eval(p1, z, "level_n") - pa.para_eval(p0, z, "level_n")
            pv = eval_pair(seq, n, z)
            pv_lam = eval_pair(seq, n, lam)
            rhs = (1.0 - np.conj(lam) * z) * np.conj(pv_lam.phi) * pv.phi
            scale = np.maximum(1.0, np.abs(rhs))
            assert np.max(np.abs(lhs - rhs) / scale) <= 1e-9

    def test_second_kind_difference(self):
        # s_{n+1} - s_n = -(1 - conj(lam) z) conj(phi_n(lam)) psi_n(z)
        rng = np.random.default_rng(32)
        seq = pa.RandomSequence(0.8, 56)
        lam = np.exp(2.1j)
        for n in (2, 60, 200):
            p0 = pa.ParaPolynomial("second", n, lam, seq)
            p1 = pa.ParaPolynomial("second", n + 1, lam, seq)
            z = np.exp(1j * rng.uniform(0.0, TWO_PI, 16))
            lhs = pa.para_eval(p1, z, "level_n") - pa.para_eval(p0, z, "level_n")
            qv = pa.eval_second_kind(seq, n, z)
            pv_lam = eval_pair(seq, n, lam)
            rhs = -(1.0 - np.conj(lam) * z) * np.conj(pv_lam.phi) * qv.phi
            scale = np.maximum(1.0, np.abs(rhs))
            assert np.max(np.abs(lhs - rhs) / scale) <= 1e-9


@pytest.fixture(scope="module")
def bs_setup():
    alphas = [0.5, -0.2 + 0.1j, 0.15j]
    measure = pa.bernstein_szego_measure(alphas, panels=2048)
    seq = pa.ExplicitSequence(alphas, tail=0.0)
    return measure, seq


class TestMeasureSideIdentities:

    def test_low_order_orthogonality(self, bs_setup):
        # <h_n, z^k> = 0 for k = 1..n-1 under the generating measure
        measure, seq = bs_setup
        n = 5
        p = pa.ParaPolynomial("first", n, np.exp(0.6j), seq)
        for k in range(1, n):
            def f(thetas, k=k):
                z = np.exp(1j * thetas)
                return pa.para_eval(p, z, "level_n") * np.conj(z**k)

            assert abs(measure.integrate(f, panels=2048)) < 1e-7

    def test_endpoint_inner_products(self, bs_setup):
        # after scaling out the kernel factor, <H_n, 1> and <H_n, z^n>
        # match the closed expressions in the recursion data
        measure, seq = bs_setup
        n = 4
        lam = np.exp(0.6j)
        p = pa.ParaPolynomial("first", n, lam, seq)
        factor = kernel_to_monic_factor(p)
        alpha = seq.alpha(n - 1)
        beta = pa.beta_coefficient(p)
        norm2 = monic_norm(seq, n - 1) ** 2

        def inner(g):
            def f(thetas):
                z = np.exp(1j * thetas)
                return (pa.para_eval(p, z, "level_n") / factor) * np.conj(g(z))

            return measure.integrate(f, panels=2048)

        got_one = inner(lambda z: np.ones_like(z))
        want_one = (np.conj(alpha) - np.conj(beta)) * norm2
        assert abs(got_one - want_one) < 1e-7
        got_top = inner(lambda z: z**n)
        want_top = (1.0 - np.conj(beta) * alpha) * norm2
        assert abs(got_top - want_top) < 1e-7

    def test_norm_upper_bound(self, bs_setup):
        measure, seq = bs_setup
        lam = np.exp(2.2j)
        for n in (2, 5, 9):
            p = pa.ParaPolynomial("first", n, lam, seq)

            def f(thetas):
                return np.abs(pa.para_eval(p, np.exp(1j * thetas), "level_n")) ** 2

            norm = math.sqrt(abs(measure.integrate(f, panels=2048)))
            bound = 2.0 * abs(eval_pair(seq, n, lam).phi)
            assert norm <= bound + 1e-7
