import numpy as np
import pytest

from shubinlab.exceptions import DimensionError, SymbolValidationError
from shubinlab.gridfield import Grid1D
from shubinlab.symbols import (
    NAMED_SYMBOLS,
    GaussianSymbol,
    TabulatedSymbol,
    lattice_delta,
    named_symbol,
)
from shubinlab.sympcore import generator, rotation

TILTED = GaussianSymbol(
    Q=[[1j, 0.3], [0.3, 1.5j]], b=[0.2, -0.1], poly={(0, 1): 1.0, (1, 1): 0.5j}
)


class TestGaussianSymbol:
    def test_standard(self):
        a = GaussianSymbol.standard()
        assert a(0.0, 0.0) == 1
        assert a(1.0, 0.0) == pytest.approx(np.exp(-np.pi))
        assert not a.is_polynomial

    def test_monomial(self):
        a = GaussianSymbol.monomial(1, 2)
        assert a.is_polynomial
        assert a.degree == 3
        assert a(2.0, 3.0) == 18

    def test_zero_coefficients_pruned(self):
        a = GaussianSymbol(poly={(1, 0): 1.0, (0, 1): 0.0})
        assert a.poly == {(1, 0): 1.0}

    @pytest.mark.parametrize(
        "kwargs,error",
        [
            ({"Q": [[1j, 1.0], [0.0, 1j]]}, SymbolValidationError),
            ({"Q": -1j * np.identity(2)}, SymbolValidationError),
            ({"poly": {(3, 2): 1.0}}, SymbolValidationError),
            ({"Q": np.identity(3)}, DimensionError),
            ({"b": [1.0, 2.0, 3.0]}, DimensionError),
        ],
    )
    def test_invalid(self, kwargs, error):
        with pytest.raises(error):
            GaussianSymbol(**kwargs)

    @pytest.mark.parametrize(
        "matrix",
        [
            generator("J"),
            generator("M", param=2.0),
            generator("V", param=1.0),
            rotation(0.3),
        ],
    )
    def test_compose(self, matrix, rng):
        x, p = rng.uniform(-1.5, 1.5, size=(2, 10))
        moved = TILTED.compose(matrix)
        sx, sp = matrix @ np.stack([x, p])
        assert np.allclose(moved(x, p), TILTED(sx, sp), atol=1e-12)

    def test_compose_monomial_with_J(self):
        # J (x, p) = (p, -x)
        moved = GaussianSymbol.monomial(1, 0).compose(generator("J"))
        assert moved.poly == {(0, 1): 1.0}

    def test_compose_shape(self):
        with pytest.raises(DimensionError):
            TILTED.compose(np.identity(4))

    def test_conjugate(self, rng):
        x, p = rng.uniform(-1.5, 1.5, size=(2, 10))
        assert np.allclose(TILTED.conjugate()(x, p), np.conj(TILTED(x, p)))

    def test_twisted_standard(self, grid):
        a = GaussianSymbol.standard()
        assert np.max(np.abs(a.twisted(grid) - a.tabulate(grid))) < 1e-10

    def test_tabulate_orientation(self, grid):
        table = GaussianSymbol.monomial(1, 0).tabulate(grid)
        assert np.allclose(table[:, 0], grid.x)


class TestTabulatedSymbol:
    def test_shape(self, grid):
        with pytest.raises(DimensionError):
            TabulatedSymbol(grid=grid, table=np.zeros((4, 4)))

    def test_finite(self, grid):
        table = np.zeros((grid.N, grid.N))
        table[0, 0] = np.inf
        with pytest.raises(SymbolValidationError):
            TabulatedSymbol(grid=grid, table=table)

    def test_wrong_grid(self, grid):
        a = TabulatedSymbol(grid=grid, table=GaussianSymbol.standard().tabulate(grid))
        with pytest.raises(DimensionError):
            a.tabulate(Grid1D.self_dual(128))

    def test_matches_closed_form(self, grid):
        closed = GaussianSymbol.standard()
        a = TabulatedSymbol(grid=grid, table=closed.tabulate(grid))
        assert np.allclose(a.twisted(grid), closed.twisted(grid))
        assert np.allclose(a.conjugate().table, np.conj(a.table))


class TestLatticeDelta:
    def test_unit_mass(self, grid):
        table = lattice_delta(grid, (0.25, -0.5))
        assert np.sum(table) * grid.dx * grid.dp == pytest.approx(1.0)
        row, column = np.argwhere(table)[0]
        assert grid.x[row] == 0.25
        assert grid.p[column] == -0.5

    def test_outside(self, grid):
        with pytest.raises(DimensionError):
            lattice_delta(grid, (10.0, 0.0))


class TestNamedSymbols:
    @pytest.mark.parametrize("name", sorted(NAMED_SYMBOLS))
    def test_known(self, name):
        assert isinstance(named_symbol(name), GaussianSymbol)

    def test_unknown(self):
        with pytest.raises(SymbolValidationError, match="Unknown symbol"):
            named_symbol("sawtooth")
