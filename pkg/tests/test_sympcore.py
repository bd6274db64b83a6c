import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from shubinlab import sympcore
from shubinlab.exceptions import DimensionError, SingularityError, SymbolValidationError

J = np.array([[0.0, 1.0], [-1.0, 0.0]])


class TestSymplecticForm:
    def test_n1(self):
        assert np.array_equal(sympcore.symplectic_form(1), J)

    def test_n2_blocks(self):
        form = sympcore.symplectic_form(2)
        assert form.shape == (4, 4)
        assert np.array_equal(form[:2, 2:], np.identity(2))
        assert np.array_equal(form[2:, :2], -np.identity(2))

    def test_sigma(self):
        assert sympcore.sigma([1.0, 0.0], [0.0, 1.0]) == -1.0
        assert sympcore.sigma([0.0, 1.0], [1.0, 0.0]) == 1.0
        assert sympcore.sigma([0.3, 0.7], [0.3, 0.7]) == 0.0

    @pytest.mark.parametrize(
        "matrix,expected",
        [
            (J, True),
            (sympcore.rotation(0.4), True),
            (sympcore.generator("V", param=1.5), True),
            (sympcore.generator("M", param=2.0), True),
            (np.diag([0.5, 4.0]), False),
        ],
    )
    def test_is_symplectic(self, matrix, expected):
        assert sympcore.is_symplectic(matrix) == expected

    def test_rotation_quarter_turn_is_J(self):
        assert np.allclose(sympcore.rotation(np.pi / 2), J, atol=1e-15)

    @pytest.mark.parametrize(
        "matrix,expected",
        [(np.diag([1.0, -1.0, 2.0]), 1), (np.identity(2), 2), (np.zeros((2, 2)), 0)],
    )
    def test_signature(self, matrix, expected):
        assert sympcore.signature(matrix) == expected


class TestCayley:
    def test_of_J(self):
        assert np.allclose(sympcore.cayley(J), 0.5 * np.identity(2), atol=1e-12)

    def test_of_minus_identity_vanishes(self):
        assert np.allclose(sympcore.cayley(-np.identity(2)), 0.0, atol=1e-15)

    def test_symmetric(self):
        M = sympcore.cayley(sympcore.rotation(0.7) @ sympcore.generator("V", param=0.3))
        assert np.array_equal(M, M.T)

    def test_identity_is_singular(self):
        with pytest.raises(SingularityError) as excinfo:
            sympcore.cayley(np.identity(2))
        assert excinfo.value.what == "S - I"

    def test_odd_dimension(self):
        with pytest.raises(DimensionError):
            sympcore.cayley(np.ones((3, 3)))

    def test_inverse(self):
        S = sympcore.rotation(0.7)
        assert np.allclose(sympcore.cayley_inverse(sympcore.cayley(S)), S, atol=1e-12)

    def test_inverse_of_S_negates(self):
        S = sympcore.rotation(1.1)
        assert np.allclose(sympcore.cayley(np.linalg.inv(S)), -sympcore.cayley(S))

    def test_compose(self):
        S, S2 = sympcore.rotation(0.5), sympcore.rotation(0.7)
        composed = sympcore.cayley_compose(S, S2)
        assert np.allclose(composed, sympcore.cayley(S @ S2), atol=1e-10)

    def test_compose_shape_mismatch(self):
        with pytest.raises(DimensionError):
            sympcore.cayley_compose(J, sympcore.symplectic_form(2))

    def test_compose_outside_domain(self):
        # S S2 = I
        S = sympcore.rotation(0.5)
        with pytest.raises(SingularityError):
            sympcore.cayley_compose(S, np.linalg.inv(S))

    @pytest.mark.parametrize(
        "matrix,expected", [(-np.identity(2), True), (J, True), (np.identity(2), False)]
    )
    def test_in_sp0(self, matrix, expected):
        assert sympcore.in_sp0(matrix) == expected


class TestGenerators:
    def test_J(self):
        assert np.array_equal(sympcore.generator("j"), J)

    def test_chirp(self):
        assert np.array_equal(
            sympcore.generator("V", param=2.0), np.array([[1.0, 0.0], [2.0, 1.0]])
        )

    def test_scaling(self):
        assert np.allclose(sympcore.generator("M", param=2.0), np.diag([0.5, 2.0]))

    def test_scalar_promoted(self):
        V = sympcore.generator("V", n=2, param=1.0)
        assert np.array_equal(V[2:, :2], np.identity(2))

    @pytest.mark.parametrize(
        "kind,param",
        [("V", np.array([[0.0, 1.0], [2.0, 0.0]])), ("M", 0.0), ("Q", None)],
    )
    def test_invalid(self, kind, param):
        with pytest.raises(SymbolValidationError):
            sympcore.generator(kind, n=2 if kind == "V" else 1, param=param)

    def test_wrong_block_size(self):
        with pytest.raises(DimensionError):
            sympcore.generator("M", n=2, param=np.identity(3))


class TestRandomSamples:
    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_random_sp0(self, seed):
        S = sympcore.random_sp0(np.random.default_rng(seed))
        assert sympcore.is_symplectic(S, tol=1e-10)
        assert sympcore.in_sp0(S)

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_random_rotation_sp0(self, seed):
        S = sympcore.random_rotation_sp0(np.random.default_rng(seed))
        assert sympcore.is_symplectic(S, tol=1e-10)
        assert np.max(np.abs(sympcore.cayley(S))) < 10

    def test_random_sp0_n2(self, rng):
        S = sympcore.random_sp0(rng, n=2, scale=0.5)
        assert S.shape == (4, 4)
        assert sympcore.is_symplectic(S, tol=1e-10)

    def test_reproducible(self):
        first = sympcore.random_sp0(np.random.default_rng(7))
        second = sympcore.random_sp0(np.random.default_rng(7))
        assert np.array_equal(first, second)
