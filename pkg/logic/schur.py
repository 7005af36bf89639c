"""Elementary Schur polynomials and the canonical coordinates ``p*``.

``P_n(t)`` is the coefficient of ``z^n`` in ``exp(sum_k t_k z^k)``; the table is
built from ``n P_n = sum_{k=1}^n k t_k P_{n-k}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict

from models.polynomial import Polynomial, p_var, var
from models.symbols import Family, JetKey, make_symbol


def t_symbol(k: int) -> JetKey:
    return make_symbol(Family.T, k)


@lru_cache(maxsize=None)
def schur_P(n: int) -> Polynomial:
    if n < 0:
        return Polynomial.zero()
    if n == 0:
        return Polynomial.constant(1)
    total = Polynomial.zero()
    for k in range(1, n + 1):
        total = total + (var(Family.T, k) * schur_P(n - k)).scale(k)
    return total.scale(Fraction(1, n))


def _t_to_p(key: JetKey) -> Polynomial | None:
    if key.family is Family.T:
        k = key.indices[0]
        return p_var(k).scale(Fraction(-1, k))
    return None


@lru_cache(maxsize=None)
def canonical_pstar(n: int) -> Polynomial:
    """``p*_n = P_n(-p_1, -p_2/2, -p_3/3, ...)``."""

    if n < 0:
        return Polynomial.zero()
    return schur_P(n).map_variables(_t_to_p)


@dataclass(frozen=True)
class SchurTable:
    nmax: int
    P: Dict[int, Polynomial] = field(default_factory=dict)

    @classmethod
    def build(cls, nmax: int) -> "SchurTable":
        return cls(nmax=nmax, P={n: schur_P(n) for n in range(nmax + 1)})

    def derivative_defects(self) -> Dict[tuple, Polynomial]:
        """``d P_n / d t_k - P_{n-k}`` for ``1 <= k <= n <= nmax``."""

        return {
            (n, k): self.P[n].partial(t_symbol(k)) - self.P[n - k]
            for n in range(1, self.nmax + 1)
            for k in range(1, n + 1)
        }

    def pstar_chain_defects(self) -> Dict[tuple, Polynomial]:
        """``d p*_i / d p_m + (1/m) p*_{i-m}``; every entry vanishes."""

        return {
            (i, m): canonical_pstar(i).partial(make_symbol(Family.P, m))
            + canonical_pstar(i - m).scale(Fraction(1, m))
            for i in range(1, self.nmax + 1)
            for m in range(1, i + 1)
        }


__all__ = ["SchurTable", "canonical_pstar", "schur_P", "t_symbol"]
