"""Sparse multivariate polynomials over exact rationals.

A :class:`Polynomial` maps monomials to rational coefficients and never stores a
zero coefficient, so two polynomials are equal exactly when their term maps are
equal. A monomial is a tuple of ``(JetKey, exponent)`` pairs sorted by key.
Coefficients are Python ints or :class:`fractions.Fraction`; a fraction with a
unit denominator is stored as an int so integer inputs stay integral.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from models.symbols import (
    JET_BEARING,
    MAX_EXPONENT,
    Family,
    JetKey,
    Stratum,
    make_jet,
    make_symbol,
)

Coefficient = Union[int, Fraction]
Monomial = Tuple[Tuple[JetKey, int], ...]
Scalar = Union[int, Fraction]

ONE_MONOMIAL: Monomial = ()


def _clean(value: Coefficient) -> Coefficient:
    if type(value) is Fraction and value.denominator == 1:
        return value.numerator
    return value


def as_coefficient(value: Union[int, Fraction, str]) -> Coefficient:
    """Parse ``"n/d"`` strings and normalise rationals."""

    if isinstance(value, str):
        return _clean(Fraction(value))
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Rational):
        return _clean(Fraction(value.numerator, value.denominator))
    raise TypeError(f"not an exact rational: {value!r}")


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for key, exp in b:
        merged[key] = merged.get(key, 0) + exp
    return tuple(sorted(merged.items()))


def mono_order_key(mono: Monomial) -> Monomial:
    """Sort key realising pure lex order with the greatest variable compared first."""

    return tuple(reversed(mono))


def mono_degree(mono: Monomial) -> int:
    return sum(exp for _, exp in mono)


def _accumulate(target: Dict[Monomial, Coefficient], mono: Monomial, coeff: Coefficient) -> None:
    current = target.get(mono)
    if current is None:
        target[mono] = coeff
        return
    total = current + coeff
    if total:
        target[mono] = _clean(total)
    else:
        del target[mono]


class Polynomial:
    """Immutable sparse polynomial in canonical form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Union[int, Fraction, str]]] = None) -> None:
        clean: Dict[Monomial, Coefficient] = {}
        for mono, coeff in (terms or {}).items():
            value = as_coefficient(coeff)
            if not value:
                continue
            for _, exp in mono:
                if exp <= 0 or exp > MAX_EXPONENT:
                    raise ValueError(f"invalid exponent {exp}")
            key = tuple(sorted(mono))
            _accumulate(clean, key, value)
        self._terms = clean
        self._hash: Optional[int] = None

    @classmethod
    def _wrap(cls, terms: Dict[Monomial, Coefficient]) -> "Polynomial":
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    # -- constructors -----------------------------------------------------------------
    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._wrap({})

    @classmethod
    def constant(cls, value: Union[int, Fraction, str]) -> "Polynomial":
        coeff = as_coefficient(value)
        return cls._wrap({ONE_MONOMIAL: coeff} if coeff else {})

    @classmethod
    def variable(cls, key: JetKey, exponent: int = 1) -> "Polynomial":
        return cls._wrap({((key, exponent),): 1})

    @classmethod
    def coerce(cls, value: Union["Polynomial", int, Fraction]) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        return cls.constant(value)

    # -- inspection -------------------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, Coefficient]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterable[Tuple[Monomial, Coefficient]]:
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONOMIAL in self._terms)

    @property
    def constant_term(self) -> Coefficient:
        return self._terms.get(ONE_MONOMIAL, 0)

    def coefficient(self, mono: Monomial) -> Coefficient:
        return self._terms.get(mono, 0)

    def variables(self) -> frozenset:
        return frozenset(key for mono in self._terms for key, _ in mono)

    def degree_in(self, key: JetKey) -> int:
        best = 0
        for mono in self._terms:
            for var, exp in mono:
                if var == key and exp > best:
                    best = exp
        return best

    def total_degree(self) -> int:
        return max((mono_degree(mono) for mono in self._terms), default=0)

    def sorted_terms(self) -> List[Tuple[Monomial, Coefficient]]:
        """Terms in descending monomial order (rendering order)."""

        return sorted(self._terms.items(), key=lambda item: mono_order_key(item[0]), reverse=True)

    def leading_term(self) -> Tuple[Monomial, Coefficient]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self._terms, key=mono_order_key)
        return mono, self._terms[mono]

    # -- arithmetic -------------------------------------------------------------------
    def __add__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        other = Polynomial.coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        result = dict(self._terms)
        for mono, coeff in other._terms.items():
            _accumulate(result, mono, coeff)
        return Polynomial._wrap(result)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._wrap({mono: -coeff for mono, coeff in self._terms.items()})

    def __sub__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        other = Polynomial.coerce(other)
        if not other._terms:
            return self
        result = dict(self._terms)
        for mono, coeff in other._terms.items():
            _accumulate(result, mono, -coeff)
        return Polynomial._wrap(result)

    def __rsub__(self, other: Scalar) -> "Polynomial":
        return Polynomial.coerce(other) - self

    def scale(self, factor: Scalar) -> "Polynomial":
        factor = as_coefficient(factor)
        if not factor:
            return Polynomial.zero()
        if factor == 1:
            return self
        return Polynomial._wrap({mono: _clean(coeff * factor) for mono, coeff in self._terms.items()})

    def __mul__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if not self._terms or not other._terms:
            return Polynomial.zero()
        if len(other._terms) == 1 and ONE_MONOMIAL in other._terms:
            return self.scale(other._terms[ONE_MONOMIAL])
        if len(self._terms) == 1 and ONE_MONOMIAL in self._terms:
            return other.scale(self._terms[ONE_MONOMIAL])
        result: Dict[Monomial, Coefficient] = {}
        for mono_a, coeff_a in self._terms.items():
            for mono_b, coeff_b in other._terms.items():
                _accumulate(result, mono_mul(mono_a, mono_b), _clean(coeff_a * coeff_b))
        return Polynomial._wrap(result)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "Polynomial":
        divisor = as_coefficient(other)
        if not divisor:
            raise ZeroDivisionError("polynomial division by zero")
        return self.scale(Fraction(1) / divisor)

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative powers are not polynomial")
        result = Polynomial.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # -- comparison -------------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        from models.text_format import canonical_string

        return canonical_string(self)

    # -- structural operations --------------------------------------------------------
    def map_variables(self, image: Callable[[JetKey], Optional["Polynomial"]]) -> "Polynomial":
        """Replace every variable ``v`` with ``image(v)`` (``None`` keeps ``v``)."""

        cache: Dict[JetKey, Optional[Polynomial]] = {}
        powers: Dict[Tuple[JetKey, int], Polynomial] = {}
        result: Dict[Monomial, Coefficient] = {}
        for mono, coeff in self._terms.items():
            kept: List[Tuple[JetKey, int]] = []
            replaced: List[Tuple[JetKey, int]] = []
            for key, exp in mono:
                if key not in cache:
                    cache[key] = image(key)
                (kept if cache[key] is None else replaced).append((key, exp))
            if not replaced:
                _accumulate(result, mono, coeff)
                continue
            term = Polynomial._wrap({tuple(kept): coeff})
            for key, exp in replaced:
                power = powers.get((key, exp))
                if power is None:
                    power = cache[key] ** exp  # type: ignore[operator]
                    powers[(key, exp)] = power
                term = term * power
                if not term._terms:
                    break
            for term_mono, term_coeff in term._terms.items():
                _accumulate(result, term_mono, term_coeff)
        return Polynomial._wrap(result)

    def substitute(self, rules: Mapping[JetKey, "Polynomial"]) -> "Polynomial":
        """Simultaneous substitution of plain symbols."""

        for key in rules:
            if not key.is_plain:
                raise ValueError(f"substitution keys must be plain symbols, got {key}")
        if not rules:
            return self
        return self.map_variables(lambda key: rules.get(key))

    def partial(self, var: JetKey) -> "Polynomial":
        """Partial derivative with respect to one variable."""

        result: Dict[Monomial, Coefficient] = {}
        for mono, coeff in self._terms.items():
            for position, (key, exp) in enumerate(mono):
                if key != var:
                    continue
                if exp == 1:
                    reduced = mono[:position] + mono[position + 1 :]
                else:
                    reduced = mono[:position] + ((key, exp - 1),) + mono[position + 1 :]
                _accumulate(result, reduced, coeff * exp)
                break
        return Polynomial._wrap(result)

    def formal_derivative(
        self, direction: int, jet_bearing: frozenset = JET_BEARING
    ) -> "Polynomial":
        """Total derivative along ``x_direction`` (Leibniz rule over every jet key)."""

        result: Dict[Monomial, Coefficient] = {}
        for mono, coeff in self._terms.items():
            for position, (key, exp) in enumerate(mono):
                if key.family in jet_bearing:
                    image: Optional[JetKey] = make_jet(key, (direction,))
                elif key.family is Family.X and key.is_plain and key.indices[0] == direction:
                    image = None
                else:
                    continue
                rest = dict(mono[:position] + mono[position + 1 :])
                if exp > 1:
                    rest[key] = exp - 1
                if image is not None:
                    rest[image] = rest.get(image, 0) + 1
                _accumulate(result, tuple(sorted(rest.items())), coeff * exp)
        return Polynomial._wrap(result)

    def collect(self, selector: Callable[[JetKey], bool]) -> Dict[Monomial, "Polynomial"]:
        """Group terms by the monomial formed from the selected variables."""

        groups: Dict[Monomial, Dict[Monomial, Coefficient]] = {}
        for mono, coeff in self._terms.items():
            chosen = tuple(pair for pair in mono if selector(pair[0]))
            rest = tuple(pair for pair in mono if not selector(pair[0]))
            _accumulate(groups.setdefault(chosen, {}), rest, coeff)
        return {mono: Polynomial._wrap(terms) for mono, terms in groups.items() if terms}

    def evaluate(self, values: Mapping[JetKey, Union[int, Fraction]]) -> Coefficient:
        """Numeric value at a point; every variable must be assigned."""

        total: Coefficient = 0
        for mono, coeff in self._terms.items():
            term: Coefficient = coeff
            for key, exp in mono:
                term = term * Fraction(values[key]) ** exp
            total = total + term
        return _clean(Fraction(total))

    def denominators_lcm(self) -> int:
        from math import lcm

        result = 1
        for coeff in self._terms.values():
            if type(coeff) is Fraction:
                result = lcm(result, coeff.denominator)
        return result


def monomial_poly(mono: Monomial, coeff: Union[int, Fraction] = 1) -> Polynomial:
    return Polynomial._wrap({mono: as_coefficient(coeff)} if coeff else {})


def var(family: Family, *indices: int) -> Polynomial:
    return Polynomial.variable(make_symbol(family, *indices))


def jet(base: JetKey, *directions: int) -> Polynomial:
    return Polynomial.variable(make_jet(base, directions))


def h_var(i: int, k: int, stratum: Stratum = Stratum.BIG_CELL) -> Polynomial:
    """``H[i,k]`` with the stratum's vanishing convention applied."""

    if i < 0 or (stratum is Stratum.BIG_CELL and (k <= 0 or i == 0)):
        return Polynomial.zero()
    if stratum is Stratum.SIGMA1 and (i in (0, 1) or k == 0 or k < -1):
        return Polynomial.zero()
    return var(Family.H, i, k)


def u_var(k: int) -> Polynomial:
    return var(Family.U, k) if k >= 1 else Polynomial.zero()


def u_jet(k: int, *directions: int) -> Polynomial:
    if k < 1:
        return Polynomial.zero()
    return jet(make_symbol(Family.U, k), *directions)


def p_var(i: int) -> Polynomial:
    if i == 0:
        return Polynomial.constant(1)
    return var(Family.P, i) if i > 0 else Polynomial.zero()


def pstar_var(n: int) -> Polynomial:
    if n == 0:
        return Polynomial.constant(1)
    return var(Family.PSTAR, n) if n > 0 else Polynomial.zero()


def delta_var(j: int, k: int) -> Polynomial:
    """``Delta[j,k]`` with the same vanishing convention as ``H``."""

    return var(Family.DELTA, j, k) if j >= 1 and k >= 1 else Polynomial.zero()


def j_var(k: int, i: int) -> Polynomial:
    return var(Family.J, k, i) if k >= 1 and i >= 1 else Polynomial.zero()


def fhess_var(i: int, k: int) -> Polynomial:
    return var(Family.FHESS, i, k)


def h_to_u(poly: Polynomial) -> Polynomial:
    """Rename ``H[1,k]`` to ``u[k]``."""

    def image(key: JetKey) -> Optional[Polynomial]:
        if key.family is Family.H and key.is_plain and key.indices[0] == 1:
            return u_var(key.indices[1])
        return None

    return poly.map_variables(image)


def u_to_h(poly: Polynomial) -> Polynomial:
    """Rename plain ``u[k]`` back to ``H[1,k]``; jets are left alone."""

    def image(key: JetKey) -> Optional[Polynomial]:
        if key.family is Family.U and key.is_plain:
            return var(Family.H, 1, key.indices[0])
        return None

    return poly.map_variables(image)


__all__ = [
    "Coefficient",
    "h_to_u",
    "u_to_h",
    "Monomial",
    "ONE_MONOMIAL",
    "Polynomial",
    "as_coefficient",
    "delta_var",
    "fhess_var",
    "h_var",
    "j_var",
    "jet",
    "mono_degree",
    "mono_mul",
    "mono_order_key",
    "monomial_poly",
    "p_var",
    "pstar_var",
    "u_jet",
    "u_var",
    "var",
]
