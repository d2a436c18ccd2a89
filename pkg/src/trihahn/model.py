"""Domain types shared across the package.

The lattice model is parametrized by three exact rationals ``a``, ``b``, ``c``
and a size ``N``.  Sites of the triangular lattice are pairs ``(i, j)`` with
``0 <= i + j <= N``; the spectral grid is indexed by pairs ``(x, y)`` with
``0 <= x <= y <= N``.  Both index sets have the same cardinality
``(N + 1)(N + 2) / 2``.

All parameter-regime and phase checks are done in exact rational arithmetic
(:class:`fractions.Fraction`); floating point enters only when amplitude-level
quantities are evaluated.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

_RATIONAL_FORM = re.compile(r"[+-]?\d+(/\d+)?")

Rational = Union[int, str, Fraction]


class PoleError(ArithmeticError):
    """A gamma function or Pochhammer denominator was evaluated at (or within
    tolerance of) a nonpositive integer."""


class RegimeViolationError(ValueError):
    """A square root of a negative radicand or a nonpositive weight/norm was
    requested; signals parameters outside the positivity regime."""


class ConvergenceError(RuntimeError):
    """An iterative solver exhausted its sweep budget."""


def parse_rational(value: Rational) -> Fraction:
    """Parse ``"p/q"`` strings (and ints/Fractions) into an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")


@dataclass(frozen=True)
class Site:
    """Lattice label (i, j); valid when 0 <= i + j <= N."""

    i: int
    j: int

    def mirror(self, n: int) -> "Site":
        """Reflection partner (i, N - i - j) within the same column i."""
        return Site(self.i, n - self.i - self.j)

    def astuple(self) -> tuple[int, int]:
        return (self.i, self.j)


@dataclass(frozen=True)
class GridPoint:
    """Spectral label (x, y); valid when 0 <= x <= y <= N."""

    x: int
    y: int

    def astuple(self) -> tuple[int, int]:
        return (self.x, self.y)


@dataclass(frozen=True)
class DegreeIndex:
    """Polynomial degree pair (m, n); valid when 0 <= m + n <= N."""

    m: int
    n: int


@dataclass(frozen=True)
class ModelParams:
    """Exact model parameters.  The weight positivity regime is

        c > 0,    a - b > N,    b - c > N,

    checked exactly by :meth:`violations`."""

    a: Fraction
    b: Fraction
    c: Fraction
    N: int

    def __post_init__(self):
        object.__setattr__(self, "a", parse_rational(self.a))
        object.__setattr__(self, "b", parse_rational(self.b))
        object.__setattr__(self, "c", parse_rational(self.c))
        if self.N < 1:
            raise ValueError("N must be a positive integer")

    def violations(self) -> list[str]:
        """All violated positivity inequalities, as human-readable strings."""
        out = []
        if not self.c > 0:
            out.append(f"c > 0 fails: c = {self.c}")
        if not self.a - self.b > self.N:
            out.append(f"a - b > N fails: a - b = {self.a - self.b}, N = {self.N}")
        if not self.b - self.c > self.N:
            out.append(f"b - c > N fails: b - c = {self.b - self.c}, N = {self.N}")
        return out

    @property
    def is_valid(self) -> bool:
        return not self.violations()

    def require_valid(self):
        bad = self.violations()
        if bad:
            raise RegimeViolationError("; ".join(bad))

    @property
    def dimension(self) -> int:
        """Size of the single-excitation sector, (N+1)(N+2)/2."""
        return (self.N + 1) * (self.N + 2) // 2

    def as_dict(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "c": str(self.c), "n": self.N}


def sites(n: int) -> list[Site]:
    """Site basis in the fixed row-major order: j outer, i inner."""
    return [Site(i, j) for j in range(n + 1) for i in range(n + 1 - j)]


def grid_points(n: int) -> list[GridPoint]:
    """Spectral grid in the fixed summation order: y outer, x inner."""
    return [GridPoint(x, y) for y in range(n + 1) for x in range(y + 1)]


def site_index(n: int) -> dict[Site, int]:
    return {s: k for k, s in enumerate(sites(n))}


def grid_index(n: int) -> dict[GridPoint, int]:
    return {g: k for k, g in enumerate(grid_points(n))}


@dataclass(frozen=True)
class EvolutionTime:
    """Evolution time, either an exact rational multiple of pi or a plain real.

    Exact pi-multiples keep phase arithmetic in rational form, so conditions
    like ``exp(-i T lambda) = 1`` can be decided without rounding.
    """

    pi_multiple: Optional[Fraction]
    raw: float

    @classmethod
    def pi(cls, multiple: Rational) -> "EvolutionTime":
        m = parse_rational(multiple)
        return cls(m, float(m) * math.pi)

    @classmethod
    def real(cls, value: float) -> "EvolutionTime":
        return cls(None, float(value))

    @classmethod
    def parse(cls, text: str) -> "EvolutionTime":
        """Strings in integer-or-quotient form ("3", "3/1", "1/2") denote
        multiples of pi; decimal/exponent forms ("4.7", "1e-2") are plain
        real times."""
        text = text.strip()
        if _RATIONAL_FORM.fullmatch(text):
            return cls.pi(Fraction(text))
        return cls.real(float(text))

    @classmethod
    def coerce(cls, value: "TimeLike") -> "EvolutionTime":
        if isinstance(value, EvolutionTime):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls.real(float(value))

    @property
    def value(self) -> float:
        return self.raw

    def __neg__(self) -> "EvolutionTime":
        if self.pi_multiple is not None:
            return EvolutionTime.pi(-self.pi_multiple)
        return EvolutionTime.real(-self.raw)

    def half(self) -> "EvolutionTime":
        if self.pi_multiple is not None:
            return EvolutionTime.pi(self.pi_multiple / 2)
        return EvolutionTime.real(self.raw / 2)

    def describe(self) -> str:
        if self.pi_multiple is not None:
            return f"{self.pi_multiple}*pi"
        return format(self.raw, ".17g")


TimeLike = Union[EvolutionTime, float, int, str]


def format_float(x: float) -> str:
    """17 significant digits: enough for exact double round-trips."""
    return format(x, ".17g")


def _json_fragment(obj) -> str:
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        import json

        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, dict):
        inner = ", ".join(f"{_json_fragment(str(k))}: {_json_fragment(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_fragment(v) for v in obj) + "]"
    raise TypeError(f"not JSON-serializable here: {type(obj)}")


def json_dumps(obj) -> str:
    """Deterministic JSON with floats at 17 significant digits.

    The standard encoder formats floats with repr(); the fixed 17-digit form
    keeps output byte-identical across runs and exactly re-parseable.
    """
    return _json_fragment(obj)
