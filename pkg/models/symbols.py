"""Indexed symbol families and jet keys.

Every variable of the polynomial ring is a :class:`JetKey`: a family, a tuple of
indices and a (sorted) multiset of x-directions. A plain symbol is simply a jet
key with no derivatives, so :data:`Symbol` is an alias of the same type. Jet
keys are named tuples, which gives the deterministic total order for free:
family first, then indices lexicographically, then the derivative multiset.
"""

from __future__ import annotations

from enum import Enum, IntEnum
from typing import Iterable, NamedTuple, Tuple

MAX_INDEX = 2**15
MAX_EXPONENT = 2**31 - 1


class Family(IntEnum):
    """Symbol families in canonical order."""

    H = 0
    U = 1
    P = 2
    PSTAR = 3
    X = 4
    DELTA = 5
    J = 6
    JSTAR = 7
    FHESS = 8
    MU = 9
    V = 10
    W = 11
    PI = 12
    T = 13


FAMILY_NAMES = {
    Family.H: "H",
    Family.U: "u",
    Family.P: "p",
    Family.PSTAR: "pstar",
    Family.X: "x",
    Family.DELTA: "Delta",
    Family.J: "J",
    Family.JSTAR: "Jstar",
    Family.FHESS: "Fhess",
    Family.MU: "mu",
    Family.V: "v",
    Family.W: "w",
    Family.PI: "pi",
    Family.T: "t",
}
FAMILIES_BY_NAME = {name: family for family, name in FAMILY_NAMES.items()}

ARITY = {
    Family.H: 2,
    Family.U: 1,
    Family.P: 1,
    Family.PSTAR: 1,
    Family.X: 1,
    Family.DELTA: 2,
    Family.J: 2,
    Family.JSTAR: 2,
    Family.FHESS: 2,
    Family.MU: 1,
    Family.V: 1,
    Family.W: 1,
    Family.PI: 1,
    Family.T: 1,
}

# Families whose members depend on the deformation parameters x_a.
JET_BEARING = frozenset({Family.U, Family.FHESS, Family.MU, Family.V, Family.W})


class Stratum(str, Enum):
    """Birkhoff strata handled by the package."""

    BIG_CELL = "big-cell"
    SIGMA1 = "sigma1"


class JetKey(NamedTuple):
    """A variable: ``family[indices]`` differentiated along ``derivatives``."""

    family: Family
    indices: Tuple[int, ...]
    derivatives: Tuple[int, ...] = ()

    @property
    def base(self) -> "JetKey":
        return JetKey(self.family, self.indices) if self.derivatives else self

    @property
    def is_plain(self) -> bool:
        return not self.derivatives

    @property
    def name(self) -> str:
        return FAMILY_NAMES[self.family]


Symbol = JetKey


def _check_index(value: int) -> int:
    if abs(value) >= MAX_INDEX:
        raise ValueError(f"index {value} outside the supported range")
    return int(value)


def make_symbol(family: Family, *indices: int) -> JetKey:
    """Build a plain symbol, validating arity and sorting Hessian indices."""

    family = Family(family)
    if len(indices) != ARITY[family]:
        raise ValueError(f"{FAMILY_NAMES[family]} takes {ARITY[family]} indices, got {len(indices)}")
    checked = tuple(_check_index(i) for i in indices)
    if family is Family.FHESS:
        checked = tuple(sorted(checked))
    return JetKey(family, checked)


def make_jet(base: JetKey, directions: Iterable[int]) -> JetKey:
    """Attach x-directions to ``base``; mixed partials commute.

    Hessian entries absorb extra directions: ``D[Fhess[i,k]; x_l]`` is the third
    derivative of F, stored with its full index multiset sorted so that every
    ordering of the same partial derivatives maps to one key.
    """

    extra = tuple(_check_index(d) for d in directions)
    if not extra:
        return base
    if base.family is Family.FHESS:
        merged = tuple(sorted(base.indices + base.derivatives + extra))
        return JetKey(Family.FHESS, merged[:2], merged[2:])
    return JetKey(base.family, base.indices, tuple(sorted(base.derivatives + extra)))


__all__ = [
    "ARITY",
    "FAMILIES_BY_NAME",
    "FAMILY_NAMES",
    "Family",
    "JET_BEARING",
    "JetKey",
    "MAX_EXPONENT",
    "MAX_INDEX",
    "Stratum",
    "Symbol",
    "make_jet",
    "make_symbol",
]
