import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from robustpm.errors import ConvergenceError, DimensionError, DomainError, PreconditionError
from robustpm.freqdom import (
    FreqOptions,
    SectorSpec,
    closed_loop_stable,
    column_reduced_check,
    g_infinity,
    hermitian_pd,
    hinf_lt_one,
    sector_positivity,
    sigma_max,
    spr_check,
    strictly_proper_columns,
    transfer_eval,
)
from robustpm.polymatrix import PolynomialMatrix, eval_matrix
from robustpm.problem import from_matrices

entries = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


def square(n):
    return st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n).map(np.array)


def scalar(num, den):
    return from_matrices([[1]], [[num]], [[1]], [[den]])


class TestSigmaMax:
    @settings(max_examples=100)
    @given(st.integers(1, 4).flatmap(square))
    def test_matches_svd(self, M):
        assert sigma_max(M) == pytest.approx(np.linalg.norm(M, 2), rel=1e-4, abs=1e-9)

    @settings(max_examples=100)
    @given(st.integers(1, 3).flatmap(square), st.data())
    def test_phase_invariance_and_entry_bound(self, M, data):
        n = M.shape[0]
        phases = [data.draw(st.floats(0, 2 * np.pi)) for _ in range(2 * n)]
        U = np.diag(np.exp(1j * np.array(phases[:n])))
        V = np.diag(np.exp(1j * np.array(phases[n:])))
        s = sigma_max(M)
        assert sigma_max(U @ M @ V) == pytest.approx(s, rel=1e-4, abs=1e-9)
        assert s >= np.abs(M).max() * (1 - 1e-4)

    def test_zero(self):
        assert sigma_max(np.zeros((2, 2))) == 0.0

    def test_nonconvergence(self):
        M = np.diag([1.0, 0.999999])
        with pytest.raises(ConvergenceError) as err:
            sigma_max(M, tol=1e-16, max_iter=3)
        assert err.value.estimate == pytest.approx(1.0, rel=1e-3)

    def test_bad_input(self):
        with pytest.raises(DimensionError):
            sigma_max(np.ones(3))
        with pytest.raises(DomainError):
            sigma_max(np.array([[np.nan]]))


class TestTransfer:
    def test_consistency(self):
        B = PolynomialMatrix([[[1, 1], [0, 2]], [[3], [1, 0, 1]]])
        D = PolynomialMatrix([[[2, 1, 1], [1]], [[0.5], [1, 3, 1]]])
        for w in (0.0, 0.7, 5.0):
            res = transfer_eval(B, D, w)
            assert not res.singular
            assert np.allclose(res.G @ eval_matrix(D, 1j * w), eval_matrix(B, 1j * w))

    def test_singular(self):
        D = PolynomialMatrix([[[1], [1]], [[1], [1]]])
        assert transfer_eval(PolynomialMatrix.identity(2), D, 1.0).singular

    def test_dimension(self):
        with pytest.raises(DimensionError):
            transfer_eval(PolynomialMatrix.identity(1), PolynomialMatrix.identity(2), 1.0)


class TestStructure:
    def test_column_reduced(self):
        D = PolynomialMatrix([[[1, 0, 1], [0, 1]], [[1], [1, 1]]])
        res = column_reduced_check(D)
        assert res.ok and res.column_degrees == [2, 1]

    def test_not_column_reduced(self):
        D = PolynomialMatrix([[[1, 1], [0, 1]], [[0, 2], [0, 2]]])
        assert not column_reduced_check(D).ok

    def test_proper_columns(self):
        B = PolynomialMatrix([[[1], [0, 1]], [[1], [0]]])
        D = PolynomialMatrix([[[1, 1], [1]], [[0], [1, 1]]])
        assert strictly_proper_columns(B, D) == [2]
        assert np.allclose(g_infinity(B, D), [[0, 1], [0, 0]])

    def test_hermitian_pd(self):
        assert hermitian_pd(np.eye(2)).all()
        assert not hermitian_pd(np.array([[1, 2], [2, 1]])).any()


class TestChecks:
    def test_hinf(self):
        assert hinf_lt_one(scalar([0.5], [1, 1])).verdict == "holds"
        res = hinf_lt_one(scalar([1], [1, 1]))
        assert res.verdict == "violated" and res.violation["omega"] == 0.0

    def test_hinf_interval(self):
        # peak gain 1 / c over c in [0.5, 2]
        assert hinf_lt_one(scalar([1], [[0.5, 2], 1])).verdict == "violated"
        assert hinf_lt_one(scalar([1], [[1.5, 2], 1])).verdict == "holds"

    def test_spr(self):
        assert spr_check(scalar([2, 1], [1, 1])).verdict == "holds"
        res = spr_check(scalar([-2, 1], [1, 1]))
        assert res.verdict == "violated" and res.violation["value"] == pytest.approx(-2.0)

    def test_sector(self):
        K = SectorSpec(np.eye(1))
        assert sector_positivity(scalar([1], [1, 1]), K).verdict == "certified"
        assert sector_positivity(scalar([-2], [1, 1]), K).verdict == "violated"

    @pytest.mark.parametrize("k", [0.5, 1.0, 3.0])
    def test_scalar_sector_direct(self, k):
        # G = 1 / (s^2 + s + 2); condition is 1 + k Re G(jw) > 0
        prob = scalar([1], [2, 1, 1])
        w = np.linspace(0, 50, 200001)
        direct = np.min(1 + k * np.real(1 / (2 - w**2 + 1j * w))) > 0
        got = sector_positivity(prob, SectorSpec(np.array([[k]]))).verdict
        assert (got == "certified") == direct

    def test_sector_needs_strictly_proper(self):
        with pytest.raises(PreconditionError, match="column 1"):
            sector_positivity(scalar([1, 1], [1, 1]), SectorSpec(np.eye(1)))

    def test_sector_spec_errors(self):
        with pytest.raises(DomainError):
            SectorSpec(np.array([[1, 2], [0, 1]]))
        with pytest.raises(DomainError):
            SectorSpec(np.array([[-1.0]]))
        with pytest.raises(DimensionError):
            SectorSpec(np.ones((1, 2)))
        with pytest.raises(DomainError):
            SectorSpec(np.eye(1), eta=-1)

    def test_closed_loop(self):
        assert closed_loop_stable(scalar([1], [1, 1])).verdict == "stable"
        assert closed_loop_stable(scalar([1], [-1.5, 1])).verdict == "unstable"

    def test_unstable_denominator_inconclusive(self):
        res = hinf_lt_one(scalar([0.1], [-1, 1]), opts=FreqOptions(points=50))
        assert res.verdict == "inconclusive" and res.diagnostics
