import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from conftest import random_density
from qadvantage import closedform as cf
from qadvantage.correlate import (
    Scheme,
    classical_corr,
    cond_entropy,
    cond_entropy_batch,
    discord,
    minimize_over_basis,
    min_cond_entropy,
    mutual_info,
    vn_entropy,
)
from qadvantage.encode import apply_encoding, pauli_ensemble
from qadvantage.qmat import kron
from qadvantage.states import BlochBasis, bell_diagonal, pure_schmidt, werner

# binary entropy values, evaluated by hand from -p log2 p - (1-p) log2 (1-p)
H2_015 = 0.6098403047164004
H2_03 = 0.8812908992306927
# 2 - S(werner(0.4)) from the spectrum {0.55, 0.15, 0.15, 0.15}
MI_WERNER_04 = 0.2939924206876716


class TestEntropy:
    def test_pure(self):
        assert vn_entropy(pure_schmidt(0.5)) == pytest.approx(0.0, abs=1e-12)

    def test_maximally_mixed(self):
        assert vn_entropy(np.eye(4) / 4) == pytest.approx(2.0)

    def test_binary(self):
        assert vn_entropy(np.diag([0.15, 0.85])) == pytest.approx(H2_015, abs=1e-12)
        assert round(vn_entropy(np.diag([0.15, 0.85])), 4) == 0.6098

    def test_bounds(self, rng):
        for _ in range(20):
            s = vn_entropy(random_density(rng))
            assert -1e-12 <= s <= 2 + 1e-12


class TestMutualInfo:
    def test_product(self, rng):
        rho = kron(random_density(rng, 2), random_density(rng, 2))
        assert mutual_info(rho) == pytest.approx(0.0, abs=1e-10)

    def test_maximally_entangled(self):
        assert mutual_info(pure_schmidt(0.5)) == pytest.approx(2.0, abs=1e-12)

    def test_werner(self):
        assert mutual_info(werner(0.4)) == pytest.approx(MI_WERNER_04, abs=1e-12)

    def test_nonnegative(self, rng):
        for _ in range(20):
            assert mutual_info(random_density(rng)) >= -1e-9


class TestCondEntropy:
    @pytest.mark.parametrize("x", [0.1, 1.0, 5.0])
    @pytest.mark.parametrize("basis", [BlochBasis(0, 0), BlochBasis(1.0, 2.0), BlochBasis(math.pi, 0)])
    def test_encoded_pure_is_one_bit(self, x, basis):
        enc = apply_encoding(pure_schmidt(0.3), pauli_ensemble())
        assert cond_entropy(enc, Scheme.weak(x, basis)) == pytest.approx(1.0, abs=1e-10)
        assert cond_entropy(enc, Scheme.projective(basis)) == pytest.approx(1.0, abs=1e-10)

    def test_schmidt_basis(self):
        assert cond_entropy(pure_schmidt(0.3), Scheme.projective(BlochBasis())) == pytest.approx(0, abs=1e-12)

    def test_pure_weak_matches_closed_form(self):
        s = cond_entropy(pure_schmidt(0.3), Scheme.weak(1.0, BlochBasis()))
        assert s == pytest.approx(cf.pure_family(0.3, 1.0).cond_entropy_weak, abs=1e-12)

    def test_needs_basis(self):
        with pytest.raises(ValueError):
            cond_entropy(pure_schmidt(0.3), Scheme.projective())

    def test_batch_matches_scalar(self, rng):
        rho = random_density(rng)
        th = rng.uniform(0, math.pi, 30)
        ph = rng.uniform(0, 2 * math.pi, 30)
        for scheme in (Scheme.projective(), Scheme.weak(0.8)):
            for side in "ab":
                batch = cond_entropy_batch(rho, scheme, side, th, ph)
                scalar = [cond_entropy(rho, scheme.with_basis(BlochBasis(t, p)), side) for t, p in zip(th, ph)]
                assert_allclose(batch, scalar, atol=1e-12)

    @settings(max_examples=25, deadline=None)
    @given(st.floats(-6, 6), st.floats(0, math.pi), st.floats(0, 6.28), st.integers(0, 500))
    def test_maximal_encoding_output_one_bit(self, x, th, ph, seed):
        rb = random_density(np.random.default_rng(seed), 2)
        rho = kron(np.eye(2) / 2, rb)
        for scheme in (Scheme.weak(x, BlochBasis(th, ph)), Scheme.projective(BlochBasis(th, ph))):
            assert cond_entropy(rho, scheme) == pytest.approx(1.0, abs=1e-10)


class TestMinimize:
    def test_constant(self):
        _, v = minimize_over_basis(lambda b: 0.25)
        assert v == 0.25

    def test_cosine(self):
        b, v = minimize_over_basis(lambda b: 1 - abs(math.cos(b.theta)))
        assert v == pytest.approx(0.0, abs=1e-12)
        assert b.theta in (0.0, math.pi)

    def test_off_grid_minimum(self):
        target = (1.234567, 4.321)
        b, v = minimize_over_basis(
            lambda b: (b.theta - target[0]) ** 2 + (b.phi - target[1]) ** 2
        )
        assert b.theta == pytest.approx(target[0], abs=1e-6)
        assert b.phi == pytest.approx(target[1], abs=1e-6)

    def test_luo(self):
        _, v = min_cond_entropy(bell_diagonal(0.15, 0.03, 0.7), Scheme.projective())
        assert v == pytest.approx(cf.luo_cond_entropy(0.7), abs=1e-6)

    @pytest.mark.parametrize("c", [(0.7, 0.1, -0.2), (0.1, -0.6, 0.2), (-0.3, -0.3, -0.3)])
    def test_luo_other_axes(self, c):
        _, v = min_cond_entropy(bell_diagonal(*c), Scheme.projective())
        assert v == pytest.approx(cf.luo_cond_entropy(max(map(abs, c))), abs=1e-6)

    def test_deterministic(self):
        rho = bell_diagonal(0.2, 0.5, -0.1)
        assert min_cond_entropy(rho, Scheme.weak(0.9)) == min_cond_entropy(rho, Scheme.weak(0.9))


class TestClassicalCorr:
    def test_product(self, rng):
        rho = kron(random_density(rng, 2), random_density(rng, 2))
        j, _ = classical_corr(rho, Scheme.projective())
        assert j == pytest.approx(0.0, abs=1e-9)

    def test_pure(self):
        j, _ = classical_corr(pure_schmidt(0.3), Scheme.projective())
        assert j == pytest.approx(H2_03, abs=1e-9)

    def test_werner(self):
        j, _ = classical_corr(werner(0.4), Scheme.projective())
        assert j == pytest.approx(1 - cf.h2(0.7), abs=1e-9)

    def test_fixed_basis_skips_optimization(self):
        b = BlochBasis(0.4, 0.2)
        j, basis = classical_corr(pure_schmidt(0.3), Scheme.weak(1.0, b))
        assert basis == b


class TestDiscord:
    @pytest.mark.parametrize("lam", [0.1, 0.3, 0.5, 0.9])
    def test_pure(self, lam):
        rep = discord(pure_schmidt(lam), Scheme.projective())
        assert rep.discord == pytest.approx(cf.h2(lam), abs=1e-9)

    def test_classical_state(self):
        rho = np.diag([0.35, 0, 0, 0.65]).astype(complex)
        assert discord(rho, Scheme.projective()).discord == pytest.approx(0.0, abs=1e-9)

    def test_super_discord_larger(self):
        weak = discord(werner(0.4), Scheme.weak(0.7)).discord
        proj = discord(werner(0.4), Scheme.projective()).discord
        assert weak > proj + 1e-3

    @pytest.mark.parametrize("rho", [werner(0.6), bell_diagonal(0.1, -0.4, 0.3), pure_schmidt(0.2)])
    def test_monotone_in_strength(self, rho):
        values = [discord(rho, Scheme.weak(x)).discord for x in (0.1, 0.5, 1, 2, 4, 8)]
        proj = discord(rho, Scheme.projective()).discord
        assert all(b <= a + 1e-9 for a, b in zip(values, values[1:]))
        assert all(v >= proj - 1e-9 for v in values)

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10_000), st.floats(0.05, 5))
    def test_additivity_and_ordering(self, seed, x):
        rho = random_density(np.random.default_rng(seed))
        proj = discord(rho, Scheme.projective())
        weak = discord(rho, Scheme.weak(x))
        for rep in (proj, weak):
            assert rep.mutual_info == pytest.approx(rep.classical_corr + rep.discord, abs=1e-12)
        assert -1e-9 <= proj.classical_corr <= proj.mutual_info + 1e-9
        assert proj.discord >= -1e-9
        assert weak.discord >= proj.discord - 1e-9
