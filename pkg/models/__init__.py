"""Model package exports."""

from models.errors import BirkhoffError
from models.polynomial import Polynomial
from models.symbols import Family, JetKey, Stratum
from models.text_format import canonical_string, parse_polynomial

__all__ = ["BirkhoffError", "Family", "JetKey", "Polynomial", "Stratum", "canonical_string", "parse_polynomial"]
