"""Expected-zero systems: constraint systems and PDE systems."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Any, Dict, Iterator, List, Mapping, Optional, Tuple

from models.polynomial import Polynomial
from models.text_format import canonical_string, latex_string, polynomial_to_json

Indices = Tuple[int, ...]


class Normalization(str, Enum):
    RAW = "raw"
    MONIC_CLEARED = "monic-cleared"


def normalize_polynomial(poly: Polynomial) -> Polynomial:
    """Clear denominators, divide by the integer content, make the leading coefficient positive.

    The leading monomial is the greatest one in display order, so the rendered
    form of a normalised polynomial never starts with a minus sign.
    """

    if poly.is_zero:
        return poly
    scaled = poly.scale(poly.denominators_lcm())
    content = 0
    for _, coeff in scaled.items():
        content = gcd(content, int(coeff))
    _, leading = scaled.leading_term()
    if leading < 0:
        content = -content
    return scaled.scale(Fraction(1, content))


def proportionality_factor(a: Polynomial, b: Polynomial) -> Optional[Fraction]:
    """Return ``r`` with ``a == r * b`` or ``None`` when no such rational exists."""

    if b.is_zero:
        return Fraction(0) if a.is_zero else None
    mono, coeff = b.leading_term()
    ratio = Fraction(a.coefficient(mono)) / Fraction(coeff)
    return ratio if (a - b.scale(ratio)).is_zero else None


@dataclass(frozen=True)
class ConstraintSystem:
    """Indexed polynomials that are all expected to vanish."""

    label: str
    items: Dict[Indices, Polynomial] = field(default_factory=dict)
    normalization: Normalization = Normalization.RAW

    def __iter__(self) -> Iterator[Tuple[Indices, Polynomial]]:
        return iter(self.items.items())

    def __len__(self) -> int:
        return len(self.items)

    def __getitem__(self, indices: Indices) -> Polynomial:
        return self.items[tuple(indices)]

    def normalized(self) -> "ConstraintSystem":
        if self.normalization is Normalization.MONIC_CLEARED:
            return self
        return ConstraintSystem(
            label=self.label,
            items={key: normalize_polynomial(poly) for key, poly in self.items.items()},
            normalization=Normalization.MONIC_CLEARED,
        )

    def map(self, fn, label: Optional[str] = None) -> "ConstraintSystem":
        return ConstraintSystem(
            label=label or self.label,
            items={key: fn(poly) for key, poly in self.items.items()},
            normalization=Normalization.RAW,
        )

    def nonzero(self) -> Dict[Indices, Polynomial]:
        return {key: poly for key, poly in self.items.items() if not poly.is_zero}

    @property
    def all_zero(self) -> bool:
        return not self.nonzero()

    def to_json(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "normalization": self.normalization.value,
            "items": [
                {
                    "indices": list(key),
                    "polynomial": polynomial_to_json(poly),
                    "text": canonical_string(poly),
                    "is_zero": poly.is_zero,
                }
                for key, poly in self.items.items()
            ],
        }


@dataclass(frozen=True)
class Finding:
    """A printed formula that disagrees with its exact derivation.

    Findings are reported next to the results; they never change a run's exit code.
    """

    code: str
    message: str
    printed: str = ""
    derived: str = ""

    def to_json(self) -> Dict[str, str]:
        return {"code": self.code, "message": self.message, "printed": self.printed, "derived": self.derived}


@dataclass(frozen=True)
class PDESystem:
    """Equations in jet variables, each expected to vanish.

    ``multipliers`` records, per equation, the rational combination of input
    items that produced it (empty when the equation is a direct image).
    """

    label: str
    equations: List[Polynomial] = field(default_factory=list)
    names: List[str] = field(default_factory=list)
    multipliers: List[Mapping[str, Fraction]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.equations)

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.equations)

    def named(self) -> Dict[str, Polynomial]:
        names = self.names or [str(i) for i in range(len(self.equations))]
        return dict(zip(names, self.equations))

    def render(self, latex: bool = False) -> List[str]:
        writer = latex_string if latex else canonical_string
        names = self.names or [str(i) for i in range(len(self.equations))]
        return [f"{name}: {writer(eq)} = 0" for name, eq in zip(names, self.equations)]


__all__ = [
    "ConstraintSystem",
    "Finding",
    "Indices",
    "Normalization",
    "PDESystem",
    "normalize_polynomial",
    "proportionality_factor",
]
