"""Scalar special-function kernels.

Pochhammer symbols, sign-tracked log-gamma, terminating 3F2 sums and the
discrete orthogonal polynomial

    d_n(x; alpha, delta, gamma)
        = (alpha+1)_n (gamma+1)_n * 3F2(-n, -x, x+gamma+delta+1;
                                        alpha+1, gamma+1; 1)

on the quadratic lattice x(x + gamma + delta + 1), together with its weight
w_x and norm h_n.  The polynomial and its weight/norm are invariant under the
slot swap (alpha, delta, gamma) -> (gamma, gamma+delta-alpha, alpha); in every
use by this package the truncation degree is carried by the gamma slot,
gamma = -(#points), which the test suite verifies against orthogonality.

Weights and norms are products of many factors of wildly varying magnitude;
they are accumulated in sign-tracked log space and exponentiated once.
Alternating sums use compensated (Kahan) accumulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .model import PoleError

Number = Union[int, float, Fraction]

#: Arguments within this distance of a nonpositive integer count as poles.
POLE_TOL = 1e-12


@dataclass(frozen=True)
class DualHahnParams:
    """Parameter triple (alpha, delta, gamma) of the polynomial family."""

    alpha: Number
    delta: Number
    gamma: Number

    def truncation(self) -> int:
        """Number of lattice points minus one, read off the gamma slot:
        gamma = -(truncation + 1).  Raises if that is not a nonneg integer."""
        t = -self.gamma - 1
        n = round(float(t))
        if abs(float(t) - n) > POLE_TOL or n < 0:
            raise ValueError(f"gamma = {self.gamma} does not encode a truncation degree")
        return int(n)

    def swapped(self) -> "DualHahnParams":
        """The equivalent triple with the alpha and gamma slots exchanged."""
        return DualHahnParams(self.gamma, self.gamma + self.delta - self.alpha, self.alpha)


@dataclass(frozen=True)
class SignedLog:
    """A real number stored as sign * exp(log_abs); sign == 0 means exact zero."""

    log_abs: float
    sign: int

    @classmethod
    def zero(cls) -> "SignedLog":
        return cls(0.0, 0)

    @classmethod
    def one(cls) -> "SignedLog":
        return cls(0.0, 1)

    @classmethod
    def from_value(cls, v: float) -> "SignedLog":
        v = float(v)
        if v == 0.0:
            return cls.zero()
        return cls(math.log(abs(v)), 1 if v > 0 else -1)

    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)

    def __mul__(self, other: "SignedLog") -> "SignedLog":
        if self.sign == 0 or other.sign == 0:
            return SignedLog.zero()
        return SignedLog(self.log_abs + other.log_abs, self.sign * other.sign)

    def __truediv__(self, other: "SignedLog") -> "SignedLog":
        if other.sign == 0:
            raise ZeroDivisionError("division by an exact SignedLog zero")
        if self.sign == 0:
            return SignedLog.zero()
        return SignedLog(self.log_abs - other.log_abs, self.sign * other.sign)

    def sqrt(self) -> "SignedLog":
        if self.sign == 0:
            return SignedLog.zero()
        if self.sign < 0:
            raise ValueError("sqrt of a negative SignedLog")
        return SignedLog(0.5 * self.log_abs, 1)


def pochhammer(a: Number, n: int):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.

    Exact for int/Fraction input, float otherwise.  Returns exact zero when a
    is a nonpositive integer with -a < n."""
    if n < 0:
        raise ValueError("pochhammer order must be nonnegative")
    out = Fraction(1) if isinstance(a, (int, Fraction)) else 1.0
    for j in range(n):
        out *= a + j
    if isinstance(a, int):
        return int(out) if out.denominator == 1 else out
    return out


def multi_pochhammer(bases: Sequence[Number], n: int):
    """Product of pochhammer(a_i, n) over all bases."""
    out = pochhammer(bases[0], n) if bases else 1
    for a in bases[1:]:
        out = out * pochhammer(a, n)
    return out


def factorial_slog(n: int) -> SignedLog:
    return SignedLog(math.lgamma(n + 1.0), 1)


def slog_pochhammer(a: Number, n: int) -> SignedLog:
    """(a)_n in sign-tracked log space; exact zero on an exactly-zero factor."""
    af = float(a)
    log = 0.0
    sign = 1
    for j in range(n):
        v = af + j
        if v == 0.0:
            return SignedLog.zero()
        if v < 0.0:
            sign = -sign
        log += math.log(abs(v))
    return SignedLog(log, sign)


def log_gamma_signed(x: Number) -> SignedLog:
    """Gamma(x) as a SignedLog.

    Negative non-integer arguments go through the reflection identity
    Gamma(x) Gamma(1-x) = pi / sin(pi x) with the sign read off sin(pi x);
    the gamma function of a negative argument is never evaluated directly."""
    xf = float(x)
    nearest = round(xf)
    if nearest <= 0 and abs(xf - nearest) <= POLE_TOL:
        raise PoleError(f"gamma pole at {x}")
    if xf > 0:
        return SignedLog(math.lgamma(xf), 1)
    floor = math.floor(xf)
    frac = xf - floor  # in (0, 1)
    sign = 1 if floor % 2 == 0 else -1  # sign of sin(pi x)
    log = math.log(math.pi) - math.log(math.sin(math.pi * frac)) - math.lgamma(1.0 - xf)
    return SignedLog(log, sign)


def hyp3f2_terminating(n: int, x: int, top3: Number, bot1: Number, bot2: Number) -> float:
    """Terminating 3F2(-n, -x, top3; bot1, bot2; 1).

    Both -n and -x are nonpositive integers, so the series stops after
    min(n, x) + 1 terms.  Terms are generated by their ratio recurrence and
    accumulated with Kahan compensation (the sum alternates in sign)."""
    if n < 0 or x < 0:
        raise ValueError("series indices must be nonnegative integers")
    smax = min(n, x)
    t3, b1, b2 = float(top3), float(bot1), float(bot2)
    for s in range(smax):
        if abs(b1 + s) <= POLE_TOL or abs(b2 + s) <= POLE_TOL:
            raise PoleError(
                f"lower-parameter Pochhammer vanishes at shift {s} before termination"
            )
    total = 1.0
    comp = 0.0
    term = 1.0
    for s in range(1, smax + 1):
        term *= ((-n + s - 1) * (-x + s - 1) * (t3 + s - 1)) / ((b1 + s - 1) * (b2 + s - 1) * s)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def dual_hahn(n: int, x: int, p: DualHahnParams) -> float:
    """d_n(x) = (alpha+1)_n (gamma+1)_n 3F2(-n, -x, x+gamma+delta+1;
    alpha+1, gamma+1; 1).  Exactly zero when the prefactor vanishes."""
    a1 = float(p.alpha) + 1.0
    g1 = float(p.gamma) + 1.0
    pre = pochhammer(a1, n) * pochhammer(g1, n)
    if pre == 0.0:
        return 0.0
    top3 = x + float(p.gamma) + float(p.delta) + 1.0
    return pre * hyp3f2_terminating(n, x, top3, a1, g1)


def slog_weight_w(x: int, p: DualHahnParams) -> SignedLog:
    """Point weight w_x of the family, in sign-tracked log space:

        w_x = (-1)^x (g+d+1)_x ((g+d+3)/2)_x (a+1)_x (g+1)_x
              / [ ((g+d+1)/2)_x (g+d-a+1)_x (d+1)_x x! ]
    """
    a, d, g = float(p.alpha), float(p.delta), float(p.gamma)
    gd = g + d
    num = (
        slog_pochhammer(gd + 1.0, x)
        * slog_pochhammer((gd + 3.0) / 2.0, x)
        * slog_pochhammer(a + 1.0, x)
        * slog_pochhammer(g + 1.0, x)
    )
    den = (
        slog_pochhammer((gd + 1.0) / 2.0, x)
        * slog_pochhammer(gd - a + 1.0, x)
        * slog_pochhammer(d + 1.0, x)
        * factorial_slog(x)
    )
    out = num / den
    if x % 2:
        out = SignedLog(out.log_abs, -out.sign)
    return out


def weight_w(x: int, p: DualHahnParams) -> float:
    """Orthogonality weight w_x; see :func:`slog_weight_w`."""
    return slog_weight_w(x, p).value()


@lru_cache(maxsize=256)
def _gamma_ratio_slog(p: DualHahnParams) -> SignedLog:
    # Gamma(g+d-a+1) Gamma(d+1) / (Gamma(g+d+2) Gamma(d-a)); one evaluation
    # per parameter triple.
    a, d, g = float(p.alpha), float(p.delta), float(p.gamma)
    return (log_gamma_signed(g + d - a + 1.0) * log_gamma_signed(d + 1.0)) / (
        log_gamma_signed(g + d + 2.0) * log_gamma_signed(d - a)
    )


def slog_norm_h(n: int, p: DualHahnParams) -> SignedLog:
    """Norm h_n = n! (a+1)_n (g+1)_n (a-d+1)_n * Gamma-ratio, in log space."""
    a, d, g = float(p.alpha), float(p.delta), float(p.gamma)
    return (
        factorial_slog(n)
        * slog_pochhammer(a + 1.0, n)
        * slog_pochhammer(g + 1.0, n)
        * slog_pochhammer(a - d + 1.0, n)
        * _gamma_ratio_slog(p)
    )


def norm_h(n: int, p: DualHahnParams) -> float:
    """Orthogonality norm h_n; see :func:`slog_norm_h`."""
    return slog_norm_h(n, p).value()
