import numpy as np
import pytest

from shubinlab import intertwine
from shubinlab.exceptions import AlignmentError, DimensionError, SingularityError
from shubinlab.gridfield import coherent_state, gaussian, probe_matrix
from shubinlab.intertwine import IntertwinerSpec
from shubinlab.symbols import named_symbol
from shubinlab.sympcore import generator, rotation

J = generator("J")
MINUS_I = -np.identity(2)


@pytest.fixture(scope="module")
def default_probes(default_grid):
    return probe_matrix(default_grid)


class TestFresnel:
    def test_identity_case(self):
        value = intertwine.fresnel(np.identity(2), [1.0, 0.0])
        assert value == pytest.approx(-1j, abs=1e-12)

    def test_scalar(self):
        # |X|^-1/2 exp(i pi / 4) at u = 0
        value = intertwine.fresnel(4.0, 0.0)
        assert value == pytest.approx(0.5 * np.exp(1j * np.pi / 4))

    def test_indefinite_has_no_eighth_turn(self):
        value = intertwine.fresnel(np.diag([1.0, -1.0]), [0.0, 0.0])
        assert value == pytest.approx(1.0)

    @pytest.mark.parametrize(
        "X,u",
        [(2.0, 0.3), (-1.5, 0.2), ([[2.0, 0.5], [0.5, 1.0]], [0.1, 0.2])],
    )
    def test_against_quadrature(self, X, u):
        closed = intertwine.fresnel(X, u)
        assert abs(closed - intertwine.fresnel_quadrature(X, u)) < 1e-6

    def test_singular(self):
        with pytest.raises(SingularityError):
            intertwine.fresnel(np.zeros((2, 2)), [1.0, 0.0])

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            intertwine.fresnel(np.identity(2), [1.0, 0.0, 0.0])


class TestIntertwinerSpec:
    def test_J(self):
        spec = IntertwinerSpec(S=J)
        assert np.allclose(spec.M, 0.5 * np.identity(2))
        assert spec.normalization == pytest.approx(2 ** -0.5)
        assert not spec.is_degenerate

    def test_minus_identity_is_degenerate(self):
        spec = IntertwinerSpec(S=MINUS_I, tau=0.3)
        assert spec.is_degenerate
        assert spec.normalization == pytest.approx(0.5)

    def test_outside_sp0(self):
        with pytest.raises(SingularityError):
            IntertwinerSpec(S=np.identity(2))

    def test_n1_only(self):
        with pytest.raises(DimensionError):
            IntertwinerSpec(S=-np.identity(4))


class TestBuildR:
    def test_metaplectic_is_weyl_intertwiner(self, grid):
        S = rotation(0.9)
        assert np.array_equal(
            intertwine.metaplectic_R(S, grid).entries,
            intertwine.build_R(S, 0.5, grid).entries,
        )

    def test_J_kernel_closed_form(self, grid):
        x = grid.x
        expected = intertwine.closed_form_J_kernel(
            x[:, None], x[None, :], 0.3, with_i=True
        )
        kernel = intertwine.build_R(J, 0.3, grid).entries
        assert np.allclose(kernel, expected, atol=1e-12)

    def test_degenerate_without_kernel(self, grid):
        with pytest.raises(SingularityError):
            intertwine.build_R(MINUS_I, 1.0, grid)

    @pytest.mark.parametrize("tau", [0.0, 0.3, 0.7])
    def test_parity_dilation(self, default_grid, tau):
        f = coherent_state(default_grid, (0.5, 0.25))
        image = intertwine.build_R(MINUS_I, tau, default_grid).apply(f)
        expected = intertwine.parity_dilation(f, tau)
        distance = np.linalg.norm(image.values - expected.values)
        assert distance / np.linalg.norm(expected.values) < 1e-6

    def test_parity_dilation_at_one(self, phi0):
        with pytest.raises(SingularityError):
            intertwine.parity_dilation(phi0, 1.0)


class TestIntertwining:
    @pytest.mark.parametrize("label", ["gaussian", "x-gaussian"])
    def test_weyl_residual(self, default_grid, default_probes, label):
        residual = intertwine.intertwine_residual(
            J, 0.5, named_symbol(label), default_grid, probes=default_probes
        )
        assert residual < 1e-5

    def test_direct_form_differs(self, default_grid, default_probes):
        residual = intertwine.intertwine_residual(
            J,
            0.5,
            named_symbol("x-gaussian"),
            default_grid,
            direct=True,
            probes=default_probes,
        )
        assert residual > 1e-2

    def test_links_at_half(self, default_grid, default_probes):
        result = intertwine.inverse_adjoint_check(J, 0.5, default_grid, default_probes)
        assert result["inv_residual"] < 1e-5
        assert result["adj_residual"] < 1e-5
        assert result["unitarity_defect"] < 1e-5

    def test_adjoint_link_off_half(self, default_grid, default_probes):
        result = intertwine.inverse_adjoint_check(J, 0.3, default_grid, default_probes)
        assert result["adj_residual"] < 1e-5
        assert result["unitarity_defect"] > 1e-2

    def test_misaligned_point(self, default_grid):
        with pytest.raises(AlignmentError):
            intertwine.symbol_chain_check(J, 0.5, (0.03, 0.0), default_grid)

    def test_heisenberg_chain(self, default_grid, default_probes):
        z = (4 * default_grid.dx, -3 * default_grid.dp)
        residual = intertwine.symbol_chain_check(
            J, 0.5, z, default_grid, default_probes
        )
        assert residual < 1e-5


class TestUnitarity:
    @pytest.mark.parametrize(
        "tau,expected", [(0.5, 0.0), (0.0, 1.0), (1.0, 1.0), (0.25, 2 / 1.75 - 1)]
    )
    def test_defect_of_J(self, tau, expected):
        assert intertwine.unitarity_defect_of_J(tau) == pytest.approx(expected)

    def test_profile_argmin(self, default_grid):
        taus = (0.0, 0.3, 0.5, 0.7)
        profile, argmin = intertwine.unitarity_profile(J, taus, default_grid)
        assert argmin == 0.5
        for tau, measured in profile:
            expected = intertwine.unitarity_defect_of_J(tau)
            assert measured == pytest.approx(expected, abs=1e-3)


class TestCocycle:
    def test_candidates_for_J_J(self):
        candidates = intertwine.cocycle_candidates(J, J)
        assert candidates["sum_signature_conjugate"] == pytest.approx(-1j)
        assert candidates["sum_signature"] == pytest.approx(1j)
        assert candidates["product_signature"] == pytest.approx(1.0)

    def test_J_J(self, default_grid, default_probes):
        result = intertwine.cocycle_check(
            J, J, 0.5, default_grid, probes=default_probes
        )
        assert result["residual"] < 1e-5
        assert result["modulus_defect"] < 1e-5
        assert "sum_signature_conjugate" in result["matches"]

    def test_outside_domain(self, grid):
        S = rotation(0.8)
        with pytest.raises(SingularityError):
            intertwine.cocycle_check(S, np.linalg.inv(S), 0.5, grid)


class TestCovariance:
    def test_minus_identity(self, default_grid):
        f = gaussian(default_grid)
        g = coherent_state(default_grid, (0.5, -0.25))
        result = intertwine.wigner_covariance_check(MINUS_I, 0.5, f, g)
        assert result["residual"] < 1e-6

    def test_J(self, default_grid):
        f = gaussian(default_grid)
        g = coherent_state(default_grid, (0.5, -0.25))
        result = intertwine.wigner_covariance_check(J, 0.5, f, g)
        assert result["residual"] < 1e-3
        assert 0.0 <= result["excluded_fraction"] < 1.0
        assert result["on_lattice"]

    def test_J_gaussian_auto_table(self, default_grid):
        f = gaussian(default_grid)
        result = intertwine.wigner_covariance_check(J, 0.5, f, f)
        assert result["residual"] < 1e-6

    def test_off_lattice_rotation(self, default_grid):
        f = gaussian(default_grid)
        g = coherent_state(default_grid, (0.5, -0.25))
        result = intertwine.wigner_covariance_check(rotation(0.3), 0.5, f, g)
        assert not result["on_lattice"]
        assert result["residual"] < 1e-3


class TestKernelHypotheses:
    @pytest.mark.parametrize("tau", [0.3, 0.7])
    def test_exponent_carries_i(self, tau):
        errors = intertwine.kernel_hypotheses(tau)
        assert errors["with_i"] < 1e-5
        assert errors["without_i"] > 1e-2
