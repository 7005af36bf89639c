"""Closed-form structure constants and closure constraints of both strata.

``p_j p_k = sum_l C^l_{jk} p_l``. The big cell uses the Faa di Bruno form
``C^l_{jk} = delta^l_{j+k} + H[k, j-l] + H[j, k-l]``; the first stratum adds the
``H[., -1]`` corrections. The constraint polynomials here are the printed
templates; :mod:`logic.closure` re-derives them from series products.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Tuple

from models.errors import MissingEntryError
from models.polynomial import Polynomial, h_var
from models.symbols import Stratum

_ONE = Polynomial.constant(1)
_ZERO = Polynomial.zero()


def _delta(a: int, b: int) -> Polynomial:
    return _ONE if a == b else _ZERO


def basis_indices(stratum: Stratum, upto: int) -> List[int]:
    if stratum is Stratum.SIGMA1:
        return [i for i in range(upto + 1) if i != 1]
    return list(range(upto + 1))


def big_cell_C(j: int, k: int, l: int) -> Polynomial:
    return _delta(l, j + k) + h_var(k, j - l) + h_var(j, k - l)


def sigma1_C(i: int, j: int, l: int) -> Polynomial:
    """First-stratum structure constant; ``l = 1`` is not a basis index and gives 0."""

    s = Stratum.SIGMA1
    a_i, a_j = h_var(i, -1, s), h_var(j, -1, s)
    if l == 1:
        return _ZERO
    if l == 0:
        return _delta(i + j, 0) + h_var(j, i, s) + h_var(i, j, s) + a_i * h_var(j, 1, s) + a_j * h_var(i, 1, s)
    value = _delta(l, i + j) + a_j * _delta(l, i + 1) + a_i * _delta(l, j + 1) + a_i * a_j * _delta(l, 2)
    if i - l >= 1:
        value = value + h_var(j, i - l, s)
    if j - l >= 1:
        value = value + h_var(i, j - l, s)
    return value


def structure_constant(stratum: Stratum, j: int, k: int, l: int) -> Polynomial:
    if stratum is Stratum.SIGMA1:
        return sigma1_C(j, k, l)
    return big_cell_C(j, k, l)


def bcsc(j: int, k: int, m: int) -> Polynomial:
    """Big-cell closure constraint at ``(j, k, m)``, expected to vanish."""

    value = h_var(j + k, m) - h_var(j, m + k) - h_var(k, j + m)
    for l in range(1, j):
        value = value + h_var(k, j - l) * h_var(l, m)
    for l in range(1, k):
        value = value + h_var(j, k - l) * h_var(l, m)
    for l in range(1, m):
        value = value - h_var(k, m - l) * h_var(j, l)
    return value


def sigma1_constraint(i: int, j: int, l: int) -> Polynomial:
    """First-stratum closure constraint written as ``left - right``; ``l`` is -1 or positive."""

    if l == 0 or l < -1:
        raise ValueError(f"first-stratum constraints are indexed by l in {{-1, 1, 2, ...}}, got {l}")
    s = Stratum.SIGMA1

    def H(a: int, b: int) -> Polynomial:
        return h_var(a, b, s)

    a_i, a_j = H(i, -1), H(j, -1)
    left = H(i, j + l) + H(j, i + l) + a_j * H(i, l + 1) + a_i * H(j, l + 1)
    for n in range(1, l):
        left = left + H(j, n) * H(i, l - n)
    right = H(i + j, l) + a_j * H(i + 1, l) + a_i * H(j + 1, l) + a_i * a_j * H(2, l)
    for n in range(2, i):
        right = right + H(j, i - n) * H(n, l)
    for n in range(2, j):
        right = right + H(i, j - n) * H(n, l)
    return left - right


def closure_template(stratum: Stratum, j: int, k: int, m: int) -> Polynomial:
    if stratum is Stratum.SIGMA1:
        return sigma1_constraint(j, k, m)
    return bcsc(j, k, m)


@dataclass(frozen=True)
class StructureConstants:
    """A table ``(j, k, l) -> C^l_{jk}``, symmetric in ``(j, k)``."""

    stratum: Stratum
    entries: Dict[Tuple[int, int, int], Polynomial] = field(default_factory=dict)
    upto: int = 0

    @classmethod
    def closed_form(cls, stratum: Stratum, upto: int) -> "StructureConstants":
        indices = basis_indices(stratum, upto)
        entries: Dict[Tuple[int, int, int], Polynomial] = {}
        for j in indices:
            for k in indices:
                if k < j:
                    continue
                for l in basis_indices(stratum, j + k):
                    value = structure_constant(stratum, j, k, l)
                    if not value.is_zero:
                        entries[(j, k, l)] = value
        return cls(stratum=stratum, entries=entries, upto=upto)

    def _check(self, j: int, k: int) -> Tuple[int, int]:
        key = (min(j, k), max(j, k))
        if key[1] > self.upto:
            raise MissingEntryError("structure constant table", key)
        return key

    def coefficient(self, j: int, k: int, l: int) -> Polynomial:
        a, b = self._check(j, k)
        return self.entries.get((a, b, l), _ZERO)

    def row(self, j: int, k: int) -> Dict[int, Polynomial]:
        a, b = self._check(j, k)
        return {
            l: self.entries[(a, b, l)]
            for l in basis_indices(self.stratum, a + b)
            if (a, b, l) in self.entries
        }

    def map(self, fn: Callable[[Polynomial], Polynomial]) -> "StructureConstants":
        mapped = {key: fn(value) for key, value in self.entries.items()}
        return StructureConstants(
            stratum=self.stratum,
            entries={key: value for key, value in mapped.items() if not value.is_zero},
            upto=self.upto,
        )

    def indices(self) -> Iterable[int]:
        return basis_indices(self.stratum, self.upto)


__all__ = [
    "StructureConstants",
    "basis_indices",
    "bcsc",
    "big_cell_C",
    "closure_template",
    "sigma1_C",
    "sigma1_constraint",
    "structure_constant",
]
