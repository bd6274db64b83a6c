"""Exact operator-ordering algebra over Q[tau][c]

Words over {X, P} carry rational coefficients times tau^i c^j, where c = XP - PX is a
formal central scalar (i hbar) with conj(c) = -c. Reduction rewrites PX -> XP - c
until every word is normally ordered (all X before all P).
"""
import logging
import re
from fractions import Fraction
from functools import lru_cache
from itertools import groupby
from math import comb, factorial
from typing import Any, Dict, List, Tuple, Union

import attr
import numpy as np

from shubinlab.exceptions import SymbolValidationError
from shubinlab.gridfield import Grid1D, OperatorMatrix, momentum_power

logger = logging.getLogger(__name__)

# (word, tau degree, c degree)
TermKey = Tuple[str, int, int]
Scalar = Union[int, Fraction]

NORMAL_WORD = re.compile(r"^X*P*$")
VALID_WORD = re.compile(r"^[XP]*$")


def _prune(terms: Dict[TermKey, Any]) -> Dict[TermKey, Fraction]:
    return {key: Fraction(value) for key, value in terms.items() if value != 0}


@attr.s(auto_attribs=True, repr=False, eq=False, frozen=True)
class NCPoly:
    terms: Dict[TermKey, Fraction] = attr.ib(factory=dict, converter=_prune)

    @classmethod
    def word(cls, word: str, coeff: Scalar = 1) -> "NCPoly":
        if not VALID_WORD.match(word):
            raise SymbolValidationError(f"Words use the letters X and P, got {word!r}")
        return cls({(word, 0, 0): Fraction(coeff)})

    @classmethod
    def scalar(cls, value: Scalar) -> "NCPoly":
        return cls({("", 0, 0): Fraction(value)})

    @classmethod
    def tau(cls, power: int = 1) -> "NCPoly":
        return cls({("", power, 0): Fraction(1)})

    @classmethod
    def c(cls, power: int = 1) -> "NCPoly":
        return cls({("", 0, power): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_normal(self) -> bool:
        return all(NORMAL_WORD.match(word) for word, _, _ in self.terms)

    @property
    def tau_degree(self) -> int:
        return max((tau for _, tau, _ in self.terms), default=0)

    def __add__(self, other: Union["NCPoly", Scalar]) -> "NCPoly":
        other = _coerce(other)
        result = dict(self.terms)
        for key, value in other.terms.items():
            result[key] = result.get(key, Fraction(0)) + value
        return NCPoly(result)

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        return NCPoly({key: -value for key, value in self.terms.items()})

    def __sub__(self, other: Union["NCPoly", Scalar]) -> "NCPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: Scalar) -> "NCPoly":
        return _coerce(other) - self

    def __mul__(self, other: Union["NCPoly", Scalar]) -> "NCPoly":
        other = _coerce(other)
        result: Dict[TermKey, Fraction] = {}
        for (word, tau, c), value in self.terms.items():
            for (word2, tau2, c2), value2 in other.terms.items():
                key = (word + word2, tau + tau2, c + c2)
                result[key] = result.get(key, Fraction(0)) + value * value2
        return NCPoly(result)

    def __rmul__(self, other: Scalar) -> "NCPoly":
        return _coerce(other) * self

    def __pow__(self, power: int) -> "NCPoly":
        result = NCPoly.scalar(1)
        for _ in range(power):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = NCPoly.scalar(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return normal_order(self).terms == normal_order(other).terms

    __hash__ = None  # type: ignore

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"NCPoly({render(self)!r})"


def _coerce(value: Union[NCPoly, Scalar]) -> NCPoly:
    if isinstance(value, NCPoly):
        return value
    return NCPoly.scalar(value)


@lru_cache(maxsize=None)
def _normal_word(word: str) -> Tuple[Tuple[str, int, int], ...]:
    """Normal form of a word as (normal word, c degree, integer coefficient) triples"""
    index = word.find("PX")
    if index < 0:
        return ((word, 0, 1),)
    head, tail = word[:index], word[index + 2 :]
    result: Dict[Tuple[str, int], int] = {}
    for normal, c, coeff in _normal_word(head + "XP" + tail):
        result[(normal, c)] = result.get((normal, c), 0) + coeff
    for normal, c, coeff in _normal_word(head + tail):
        result[(normal, c + 1)] = result.get((normal, c + 1), 0) - coeff
    return tuple((normal, c, coeff) for (normal, c), coeff in result.items() if coeff)


def normal_order(poly: NCPoly) -> NCPoly:
    result: Dict[TermKey, Fraction] = {}
    for (word, tau, c), value in poly.terms.items():
        for normal, extra_c, coeff in _normal_word(word):
            key = (normal, tau, c + extra_c)
            result[key] = result.get(key, Fraction(0)) + value * coeff
    return NCPoly(result)


def _letters(letter: str, power: int) -> str:
    return letter * power


def order_weyl(m: int, l: int) -> NCPoly:
    """2^-l sum_k C(l, k) P^(l-k) X^m P^k"""
    total = NCPoly()
    for k in range(l + 1):
        word = _letters("P", l - k) + _letters("X", m) + _letters("P", k)
        total = total + NCPoly.word(word, Fraction(comb(l, k), 2 ** l))
    return normal_order(total)


def order_tau(m: int, l: int) -> NCPoly:
    """sum_k C(l, k) (1 - tau)^k tau^(l-k) P^k X^m P^(l-k)"""
    total = NCPoly()
    for k in range(l + 1):
        word = _letters("P", k) + _letters("X", m) + _letters("P", l - k)
        weight = comb(l, k) * (1 - NCPoly.tau()) ** k * NCPoly.tau(l - k)
        total = total + weight * NCPoly.word(word)
    return normal_order(total)


def order_bj(m: int, l: int) -> NCPoly:
    """(l + 1)^-1 sum_k P^(l-k) X^m P^k"""
    total = NCPoly()
    for k in range(l + 1):
        word = _letters("P", l - k) + _letters("X", m) + _letters("P", k)
        total = total + NCPoly.word(word, Fraction(1, l + 1))
    return normal_order(total)


def average_tau(poly: NCPoly) -> NCPoly:
    """Integrate over tau in [0, 1], term by term"""
    result: Dict[TermKey, Fraction] = {}
    for (word, tau, c), value in poly.terms.items():
        key = (word, 0, c)
        result[key] = result.get(key, Fraction(0)) + value / (tau + 1)
    return NCPoly(result)


def substitute_tau(poly: NCPoly, value: Scalar) -> NCPoly:
    value = Fraction(value)
    result: Dict[TermKey, Fraction] = {}
    for (word, tau, c), coeff in poly.terms.items():
        key = (word, 0, c)
        result[key] = result.get(key, Fraction(0)) + coeff * value ** tau
    return NCPoly(result)


def reflect_tau(poly: NCPoly) -> NCPoly:
    """tau -> 1 - tau"""
    result = NCPoly()
    for (word, tau, c), coeff in poly.terms.items():
        result = result + (1 - NCPoly.tau()) ** tau * NCPoly({(word, 0, c): coeff})
    return result


def adjoint(poly: NCPoly) -> NCPoly:
    """Formal adjoint: reversed words, conj(c) = -c, real tau"""
    reversed_terms = {
        (word[::-1], tau, c): coeff * (-1) ** c
        for (word, tau, c), coeff in poly.terms.items()
    }
    return normal_order(NCPoly(reversed_terms))


def beta_integral(k: int, l: int) -> Fraction:
    """int_0^1 (1 - tau)^k tau^(l-k) dtau, by exact polynomial integration"""
    integrand = (1 - NCPoly.tau()) ** k * NCPoly.tau(l - k)
    return average_tau(integrand).terms.get(("", 0, 0), Fraction(0))


def beta_closed_form(k: int, l: int) -> Fraction:
    return Fraction(factorial(k) * factorial(l - k), factorial(l + 1))


def to_operator(poly: NCPoly, tau: float, grid: Grid1D) -> OperatorMatrix:
    """Realize the polynomial with sampled X, P and c = i / 2 pi"""
    c_value = 1j / (2 * np.pi)
    result = np.zeros((grid.N, grid.N), dtype=complex)
    for (word, tau_power, c_power), coeff in normal_order(poly).terms.items():
        x_power = word.count("X")
        p_power = len(word) - x_power
        scalar = float(coeff) * tau ** tau_power * c_value ** c_power
        momentum = momentum_power(grid, p_power).linear_map
        result += scalar * (grid.x ** x_power)[:, None] * momentum
    return OperatorMatrix.from_linear_map(grid, result)


def _render_word(word: str) -> str:
    parts = []
    for letter, run in groupby(word):
        power = len(list(run))
        parts.append(letter if power == 1 else f"{letter}^{power}")
    return " ".join(parts)


def _render_power(name: str, power: int) -> str:
    if power == 0:
        return ""
    return name if power == 1 else f"{name}^{power}"


def _render_tau_poly(coefficients: Dict[int, Fraction]) -> str:
    pieces = []
    for power in sorted(coefficients, reverse=True):
        value = coefficients[power]
        magnitude = abs(value)
        factor = _render_power("tau", power)
        if not factor:
            body = str(magnitude)
        elif magnitude == 1:
            body = factor
        else:
            body = f"{magnitude} {factor}"
        if not pieces:
            pieces.append(body if value > 0 else f"-{body}")
        else:
            pieces.append(("+ " if value > 0 else "- ") + body)
    return " ".join(pieces)


def render(poly: NCPoly) -> str:
    """Text form such as "X^2 P - c X" or "X P + (tau - 1) c" """
    groups: Dict[Tuple[str, int], Dict[int, Fraction]] = {}
    for (word, tau, c), coeff in poly.terms.items():
        groups.setdefault((word, c), {})[tau] = coeff
    if not groups:
        return "0"

    def order(key: Tuple[str, int]) -> Tuple[int, int, int]:
        word, c = key
        return c, -len(word), -word.count("X")

    rendered: List[str] = []
    for word, c in sorted(groups, key=order):
        coefficients = groups[(word, c)]
        body = " ".join(
            part for part in (_render_power("c", c), _render_word(word)) if part
        )
        if len(coefficients) == 1:
            (power, value), = coefficients.items()
            negative = value < 0
            scale = _render_tau_poly({power: abs(value)})
            if scale == "1" and body:
                scale = ""
        else:
            negative = False
            scale = f"({_render_tau_poly(coefficients)})"
        text = " ".join(part for part in (scale, body) if part)
        if not rendered:
            rendered.append(f"-{text}" if negative else text)
        else:
            rendered.append(("- " if negative else "+ ") + text)
    return " ".join(rendered)


def ordering_table(max_degree: int = 3) -> List[Dict[str, Any]]:
    """Rows (m, l) with the Weyl, tau and Born-Jordan orderings and their relations"""
    rows = []
    for m in range(max_degree + 1):
        for l in range(max_degree + 1):
            weyl = order_weyl(m, l)
            tau_form = order_tau(m, l)
            bj = order_bj(m, l)
            rows.append(
                {
                    "m": m,
                    "l": l,
                    "weyl": render(weyl),
                    "tau": render(tau_form),
                    "born_jordan": render(bj),
                    "tau_half_is_weyl": substitute_tau(tau_form, Fraction(1, 2)) == weyl,
                    "tau_average_is_bj": average_tau(tau_form) == bj,
                    "bj_is_weyl": bj == weyl,
                }
            )
    logger.debug("Built ordering table up to degree %d", max_degree)
    return rows
