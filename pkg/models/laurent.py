"""Truncated formal Laurent series in ``z`` with polynomial coefficients.

A series knows its coefficients exactly on the window ``[lo, hi]``. Degrees
above ``hi`` are zero; degrees below ``lo`` are unknown, and asking for one is a
:class:`~models.errors.TruncationError` rather than a silent zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Tuple, Union

from models.errors import TruncationError
from models.polynomial import Polynomial, h_var
from models.symbols import Stratum

_ZERO = Polynomial.zero()


@dataclass(frozen=True)
class LaurentSeries:
    lo: int
    hi: int
    coeffs: Dict[int, Polynomial] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.hi < self.lo:
            raise TruncationError(f"empty series window [{self.lo}, {self.hi}]")
        clean = {d: c for d, c in self.coeffs.items() if not c.is_zero and self.lo <= d <= self.hi}
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def monomial(cls, degree: int, lo: int, coeff: Union[Polynomial, int] = 1) -> "LaurentSeries":
        return cls(lo=lo, hi=degree, coeffs={degree: Polynomial.coerce(coeff)})

    @property
    def window(self) -> Tuple[int, int]:
        return self.lo, self.hi

    def coefficient(self, degree: int) -> Polynomial:
        if degree > self.hi:
            return _ZERO
        if degree < self.lo:
            raise TruncationError(f"degree {degree} lies below the exact window [{self.lo}, {self.hi}]")
        return self.coeffs.get(degree, _ZERO)

    def degrees(self) -> Iterator[int]:
        return iter(range(self.hi, self.lo - 1, -1))

    def scale(self, factor: Union[Polynomial, int]) -> "LaurentSeries":
        factor = Polynomial.coerce(factor)
        return LaurentSeries(self.lo, self.hi, {d: c * factor for d, c in self.coeffs.items()})

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        lo, hi = max(self.lo, other.lo), max(self.hi, other.hi)
        coeffs: Dict[int, Polynomial] = {}
        for d in range(lo, hi + 1):
            total = self.coefficient(d) + other.coefficient(d)
            if not total.is_zero:
                coeffs[d] = total
        return LaurentSeries(lo, hi, coeffs)

    def __neg__(self) -> "LaurentSeries":
        return self.scale(-1)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        return series_mul(self, other)

    def restrict(self, lo: int) -> "LaurentSeries":
        if lo < self.lo:
            raise TruncationError(f"cannot widen window to {lo}")
        return LaurentSeries(lo, self.hi, dict(self.coeffs))

    def evaluate(self, values) -> "LaurentSeries":
        """Numeric specialisation of every coefficient."""

        return LaurentSeries(
            self.lo, self.hi, {d: Polynomial.constant(c.evaluate(values)) for d, c in self.coeffs.items()}
        )


def series_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """Cauchy product restricted to the degrees where every contributing pair is known."""

    hi = a.hi + b.hi
    lo = max(a.lo + b.hi, a.hi + b.lo)
    if lo > hi:
        raise TruncationError(f"product window is empty: {a.window} x {b.window}")
    coeffs: Dict[int, Polynomial] = {}
    for da, ca in a.coeffs.items():
        for db, cb in b.coeffs.items():
            d = da + db
            if d < lo:
                continue
            coeffs[d] = coeffs.get(d, _ZERO) + ca * cb
    return LaurentSeries(lo, hi, coeffs)


@dataclass(frozen=True)
class StratumBasis:
    """The basis ``p_i`` of a stratum truncated at depth ``order``."""

    stratum: Stratum
    order: int

    def __post_init__(self) -> None:
        if self.order < 1:
            raise TruncationError("truncation order must be at least 1")

    def is_index(self, i: int) -> bool:
        if self.stratum is Stratum.SIGMA1:
            return i == 0 or i >= 2
        return i >= 0

    def indices(self, upto: int) -> List[int]:
        return [i for i in range(upto + 1) if self.is_index(i)]

    def element(self, i: int) -> LaurentSeries:
        if not self.is_index(i):
            raise TruncationError(f"{self.stratum.value} has no basis element p[{i}]")
        return _basis_element(self.stratum, self.order, i)


@lru_cache(maxsize=None)
def _basis_element(stratum: Stratum, order: int, i: int) -> LaurentSeries:
    if i == 0:
        return LaurentSeries(-order, 0, {0: Polynomial.constant(1)})
    coeffs: Dict[int, Polynomial] = {i: Polynomial.constant(1)}
    if stratum is Stratum.SIGMA1:
        coeffs[1] = h_var(i, -1, stratum)
    for k in range(1, order + 1):
        coeffs[-k] = h_var(i, k, stratum)
    return LaurentSeries(-order, i, coeffs)


__all__ = ["LaurentSeries", "StratumBasis", "series_mul"]
