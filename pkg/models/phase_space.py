"""Phase spaces ``(q, y)`` with a bracket table ``{y_i, q_k} = J_{ki}``."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, FrozenSet

from models.polynomial import Polynomial, u_jet, var
from models.symbols import JET_BEARING, Family, JetKey

TableFn = Callable[[int, int], Polynomial]


class BracketMode(str, Enum):
    """How the vector field ``Y_k = sum_i J_{ki} d/dy_i`` acts on polynomials.

    ``table`` differentiates the plain ``y`` variables through the table.
    ``chain`` treats ``Y_k`` as the total derivative along ``x_k``; this is the
    table ``J_{ki} = du_i/dx_k`` (or the identity on the ``x`` themselves) read
    through the chain rule, so jets of every field are moved consistently.
    """

    TABLE = "table"
    CHAIN = "chain"


@dataclass(frozen=True)
class PhaseSpace:
    name: str
    q_family: Family
    y_family: Family
    table: TableFn
    mode: BracketMode = BracketMode.TABLE
    coefficient_families: FrozenSet[Family] = field(default_factory=frozenset)

    def entry(self, k: int, i: int) -> Polynomial:
        return self.table(k, i)

    def is_q(self, key: JetKey) -> bool:
        return key.family is self.q_family and key.is_plain

    def is_y(self, key: JetKey) -> bool:
        return key.family is self.y_family

    def owns(self, key: JetKey) -> bool:
        if self.is_q(key) or self.is_y(key):
            return True
        if key.family in self.coefficient_families:
            return True
        return self.mode is BracketMode.CHAIN and key.family in JET_BEARING


def _kronecker(k: int, i: int) -> Polynomial:
    return Polynomial.constant(1 if k == i else 0)


def darboux() -> PhaseSpace:
    """``{x_i, p_k} = delta_ki``."""

    return PhaseSpace(name="darboux", q_family=Family.P, y_family=Family.X, table=_kronecker)


def jet_ansatz() -> PhaseSpace:
    """``J_{ki} = D[u[i]; x_k]`` in ``(p, u)`` coordinates."""

    return PhaseSpace(
        name="jet-ansatz",
        q_family=Family.P,
        y_family=Family.U,
        table=lambda k, i: u_jet(i, k),
        mode=BracketMode.CHAIN,
    )


def _jstar(k: int, i: int) -> Polynomial:
    return var(Family.JSTAR, k, i)


def _j(k: int, i: int) -> Polynomial:
    return var(Family.J, k, i)


def generic_pstar() -> PhaseSpace:
    """``(p*, u)`` coordinates with symbolic entries ``Jstar[k, i]``."""

    return PhaseSpace(
        name="generic-pstar",
        q_family=Family.PSTAR,
        y_family=Family.U,
        table=_jstar,
        coefficient_families=frozenset({Family.JSTAR}),
    )


def generic_p() -> PhaseSpace:
    """``(p, u)`` coordinates with symbolic entries ``J[k, i]``."""

    return PhaseSpace(
        name="generic-p",
        q_family=Family.P,
        y_family=Family.U,
        table=_j,
        coefficient_families=frozenset({Family.J}),
    )


def canonical_x() -> PhaseSpace:
    """Darboux coordinates ``(p, x)`` acting on x-dependent coefficient fields."""

    return PhaseSpace(
        name="canonical",
        q_family=Family.P,
        y_family=Family.X,
        table=_kronecker,
        mode=BracketMode.CHAIN,
    )


__all__ = [
    "BracketMode",
    "PhaseSpace",
    "canonical_x",
    "darboux",
    "generic_p",
    "generic_pstar",
    "jet_ansatz",
]
