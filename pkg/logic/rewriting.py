"""Memoised symbol rewriting.

A rewriter maps a symbol to a replacement polynomial (or leaves it alone) and
reduces a polynomial by replacing every reducible symbol with its normal form.
Normal forms are cached per instance, so a rewriter built once for a sweep
amortises the shared subterms across every item of that sweep.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple

from models.errors import EliminationError, RewriteDepthError
from models.polynomial import Polynomial
from models.symbols import JetKey
from models.text_format import symbol_string

DEFAULT_REWRITE_DEPTH = 256

Rule = Tuple[Polynomial, str]


def solve_linear(equation: Polynomial, target: JetKey, context: str = "solve") -> Polynomial:
    """Solve ``equation = 0`` for a symbol occurring linearly with a constant coefficient."""

    if equation.degree_in(target) != 1:
        raise EliminationError(
            f"{context}: {symbol_string(target)} does not occur linearly", residual=equation
        )
    coefficient = equation.partial(target)
    if not coefficient.is_constant:
        raise EliminationError(
            f"{context}: non-constant coefficient for {symbol_string(target)}", residual=equation
        )
    rest = equation - coefficient * Polynomial.variable(target)
    return rest.scale(Fraction(-1) / Fraction(coefficient.constant_term))


class SymbolRewriter:
    """Base class; subclasses implement :meth:`rule`."""

    name = "rewriter"

    def __init__(self, max_depth: int = DEFAULT_REWRITE_DEPTH) -> None:
        self.max_depth = max_depth
        self._normal: Dict[JetKey, Optional[Polynomial]] = {}
        self._labels: Dict[JetKey, str] = {}
        self._active: List[JetKey] = []
        self._active_set: Set[JetKey] = set()
        self._deps: Dict[JetKey, Set[JetKey]] = {}

    def rule(self, key: JetKey) -> Optional[Rule]:
        """Return ``(replacement, label)`` for a reducible symbol, else ``None``."""

        return None

    def normal_form_of(self, key: JetKey) -> Optional[Polynomial]:
        if key in self._normal:
            result = self._normal[key]
            self._note_dependency(key, result)
            return result
        if key in self._active_set:
            chain = " -> ".join(symbol_string(k) for k in self._active + [key])
            raise RewriteDepthError(f"{self.name}: rewrite cycle {chain}")
        if len(self._active) >= self.max_depth:
            raise RewriteDepthError(
                f"{self.name}: depth {self.max_depth} exceeded at {symbol_string(key)}"
            )
        self._active.append(key)
        self._active_set.add(key)
        try:
            found = self.rule(key)
            if found is None:
                result = None
            else:
                replacement, label = found
                self._labels[key] = label
                result = self.reduce(replacement)
        finally:
            self._active.pop()
            self._active_set.discard(key)
        self._normal[key] = result
        self._note_dependency(key, result)
        return result

    def _note_dependency(self, key: JetKey, result: Optional[Polynomial]) -> None:
        if result is not None and self._active:
            self._deps.setdefault(self._active[-1], set()).add(key)

    def reduce(self, poly: Polynomial) -> Polynomial:
        return poly.map_variables(self.normal_form_of)

    def label_of(self, key: JetKey) -> str:
        return self._labels.get(key, "")

    def is_reducible(self, key: JetKey) -> bool:
        return self.normal_form_of(key) is not None

    def solve_for(self, equation: Polynomial, target: JetKey) -> Polynomial:
        """Solve ``equation = 0`` for ``target`` after reducing every other symbol."""

        reduced = equation.map_variables(
            lambda key: None if key == target else self.normal_form_of(key)
        )
        return solve_linear(reduced, target, context=self.name)

    def trace(self, poly: Polynomial) -> List[str]:
        """Labels of the rules reachable from the symbols of ``poly``, sorted."""

        seen: Set[JetKey] = set()
        labels: Set[str] = set()
        stack = list(poly.variables())
        while stack:
            key = stack.pop()
            if key in seen:
                continue
            seen.add(key)
            if self.normal_form_of(key) is None:
                continue
            labels.add(f"{symbol_string(key)}: {self._labels[key]}")
            stack.extend(self._deps.get(key, ()))
        return sorted(labels)

    @property
    def cache_size(self) -> int:
        return len(self._normal)


__all__ = ["DEFAULT_REWRITE_DEPTH", "Rule", "SymbolRewriter", "solve_linear"]
