import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import random_density, random_hermitian
from qadvantage.qmat import DensityError, herm_eig, kron, partial_trace, validate_density
from qadvantage.states import SZ, bell_diagonal, pure_schmidt


def _ptrace_loops(rho, keep):
    out = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        for k in range(2):
            for j in range(2):
                if keep == "a":
                    out[i, k] += rho[2 * i + j, 2 * k + j]
                else:
                    out[i, k] += rho[2 * j + i, 2 * j + k]
    return out


class TestKron:
    def test_identity(self):
        assert_allclose(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_sz_sz(self):
        assert_allclose(kron(SZ, SZ), np.diag([1, -1, -1, 1]))

    def test_entries(self, rng):
        a = random_hermitian(rng, 2)
        b = random_hermitian(rng, 2)
        k = kron(a, b)
        for i1 in range(2):
            for i2 in range(2):
                for j1 in range(2):
                    for j2 in range(2):
                        assert k[2 * i1 + i2, 2 * j1 + j2] == pytest.approx(a[i1, j1] * b[i2, j2])

    def test_trace_factorizes(self, rng):
        for _ in range(20):
            a = random_hermitian(rng, 2)
            b = random_hermitian(rng, 2)
            assert np.trace(kron(a, b)) == pytest.approx(np.trace(a) * np.trace(b), abs=1e-12)

    def test_matches_numpy(self, rng):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(2, 2))
        assert_allclose(kron(a, b), np.kron(a, b))

    def test_rejects_large(self):
        with pytest.raises(ValueError):
            kron(np.eye(4), np.eye(2))


class TestPartialTrace:
    def test_bell_marginal(self):
        assert_allclose(partial_trace(pure_schmidt(0.5), "a"), np.eye(2) / 2, atol=1e-15)

    def test_product(self, rng):
        ra = random_density(rng, 2)
        rb = random_density(rng, 2)
        assert_allclose(partial_trace(kron(ra, rb), "a"), ra, atol=1e-12)
        assert_allclose(partial_trace(kron(ra, rb), "b"), rb, atol=1e-12)

    def test_schmidt_marginal(self):
        assert_allclose(partial_trace(pure_schmidt(0.3), "b"), np.diag([0.3, 0.7]), atol=1e-15)

    def test_against_loops(self, rng):
        for _ in range(10):
            rho = random_density(rng)
            for keep in "ab":
                assert_allclose(partial_trace(rho, keep), _ptrace_loops(rho, keep), atol=1e-14)
                assert np.trace(partial_trace(rho, keep)).real == pytest.approx(1.0, abs=1e-12)

    def test_positive_factors_normalized(self, rng):
        a = random_density(rng, 2) * 3.0
        b = random_density(rng, 2) * 0.5
        k = kron(a, b)
        assert_allclose(partial_trace(k / np.trace(k), "a"), a / np.trace(a), atol=1e-10)

    def test_invalid(self):
        with pytest.raises(DensityError):
            partial_trace(np.eye(4), "a")
        with pytest.raises(ValueError):
            partial_trace(np.eye(4) / 4, "c")


class TestHermEig:
    def test_diagonal(self):
        vals, _ = herm_eig(np.diag([0.7, 0.3]))
        assert_allclose(vals, [0.3, 0.7])

    def test_sigma_x(self):
        vals, vecs = herm_eig([[0, 1], [1, 0]])
        assert_allclose(vals, [-1, 1], atol=1e-15)

    @pytest.mark.parametrize("n", [2, 4])
    def test_random_reconstruction(self, rng, n):
        for _ in range(50):
            h = random_hermitian(rng, n)
            vals, vecs = herm_eig(h)
            assert np.all(np.diff(vals) >= 0)
            assert_allclose(vecs @ np.diag(vals) @ vecs.conj().T, h, atol=1e-10)
            assert_allclose(vecs.conj().T @ vecs, np.eye(n), atol=1e-10)
            # independent reference
            assert_allclose(vals, np.linalg.eigvalsh(h), atol=1e-10)
            assert sum(vals) == pytest.approx(np.trace(h).real, abs=1e-10)

    def test_degenerate(self):
        vals, vecs = herm_eig(np.eye(4) / 4)
        assert_allclose(vals, [0.25] * 4)
        vals, _ = herm_eig(bell_diagonal(-1, -1, -1))
        assert_allclose(vals, [0, 0, 0, 1], atol=1e-14)

    def test_non_hermitian(self):
        with pytest.raises(DensityError):
            herm_eig([[0, 1], [0, 0]])


class TestValidate:
    def test_maximally_mixed(self):
        d = validate_density(np.eye(4) / 4)
        assert d.hermiticity == 0 and d.trace == pytest.approx(0, abs=1e-15)
        assert d.min_eigenvalue == pytest.approx(0.25)
        assert d.ok()

    def test_bell_diagonal_min_eigenvalue(self):
        # smallest of (1 +/- c1 +/- c2 +/- c3)/4 is (1 - 0.88)/4
        d = validate_density(bell_diagonal(0.15, 0.03, 0.7))
        assert d.min_eigenvalue == pytest.approx(0.03, abs=1e-10)

    def test_trace_defect(self):
        d = validate_density(np.diag([0.5, 0.4]))
        assert d.trace == pytest.approx(0.1)
        assert not d.ok()

    def test_negative(self):
        assert validate_density(np.diag([1.5, -0.5])).min_eigenvalue == pytest.approx(-0.5)
