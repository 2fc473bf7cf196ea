"""Number handling: exact rationals by default, tolerance-based floats on demand.

Quantities travel as :class:`fractions.Fraction` in exact mode and as ``float``
in float mode.  File formats always carry numbers as *strings* ("3/2", "0.25")
so exact values survive round trips.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import FormatError

Num = Union[Fraction, float]

DEFAULT_FLOAT_TOLERANCE = 1e-9


def parse_number(value) -> Fraction:
    """Parse a rational from a string ("3/2", "0.25", "7"), int, float or Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise FormatError(f"not a number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"not a rational: {value!r}") from exc
    raise FormatError(f"unsupported number type: {type(value).__name__}")


def format_number(value: Num) -> str:
    """Serialize a number as a string: "3/2" / "3" for rationals, repr for floats."""
    if isinstance(value, Fraction):
        return str(value)
    return repr(float(value))


@dataclass(frozen=True)
class Mode:
    """Arithmetic and comparison policy.

    ``kind == "exact"`` keeps Fractions and compares exactly; ``kind ==
    "float"`` converts values to floats and compares within ``tolerance``.
    """

    kind: str
    tolerance: float = 0.0

    def __post_init__(self):
        if self.kind not in ("exact", "float"):
            raise ValueError(f"unknown mode {self.kind!r}")
        if self.kind == "float" and not self.tolerance > 0:
            raise ValueError("float mode requires a positive tolerance")

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    @property
    def pivot_eps(self) -> Num:
        """Zero threshold used inside solvers (tighter than the reporting tolerance)."""
        return Fraction(0) if self.is_exact else 1e-12

    @property
    def zero(self) -> Num:
        return Fraction(0) if self.is_exact else 0.0

    @property
    def one(self) -> Num:
        return Fraction(1) if self.is_exact else 1.0

    def convert(self, value) -> Num:
        q = parse_number(value)
        return q if self.is_exact else float(q)

    def eq(self, a: Num, b: Num) -> bool:
        if self.is_exact:
            return a == b
        return abs(a - b) <= self.tolerance

    def leq(self, a: Num, b: Num) -> bool:
        if self.is_exact:
            return a <= b
        return a - b <= self.tolerance

    def is_zero(self, a: Num) -> bool:
        return self.eq(a, self.zero)

    def positive(self, a: Num) -> bool:
        """Strict positivity, i.e. distinguishable from zero in this mode."""
        if self.is_exact:
            return a > 0
        return a > self.tolerance


EXACT = Mode("exact")


def float_mode(tolerance: float = DEFAULT_FLOAT_TOLERANCE) -> Mode:
    return Mode("float", tolerance)


def mode_from_name(name: str, tolerance: float = DEFAULT_FLOAT_TOLERANCE) -> Mode:
    if name == "exact":
        return EXACT
    if name == "float":
        return float_mode(tolerance)
    raise ValueError(f"unknown mode {name!r}")
