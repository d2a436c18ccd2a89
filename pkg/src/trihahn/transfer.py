"""Perfect state transfer and fractional revival machinery.

Transfer between (0,0) and (0,N) with unit probability needs every spectral
phase to collapse:  exp(-i T x(x+a)) = 1 and exp(-i T y(y+b)) = (-1)^y for
all grid values.  Two rational parameter families achieve this:

* odd-period:   a = (2p+1)/(2k+1),  b = 2q/(2k+1),   period T = (2k+1) pi
* even-period:  a = p/k,            b = (2q+1)/(2k),  period T = 2k pi

both with c = b/2 - N + 1/2 (equivalently b = 2c + 2N - 1).  Membership and
the phase conditions themselves are decided in exact rational arithmetic.
When the phase condition holds, transfer is confined to columns (the
amplitude vanishes between sites with different i), mirror pairs
(i, j) <-> (i, N-i-j) exchange with unit modulus, and the endpoint amplitude
has the closed form

    |f_{(0,0),(0,N)}| = sqrt( (c+N)_N (b+1-c-N)_N ) / ((b+1)/2)_N .

At half of an even-period time the x-phases still collapse while the
y-phases do not, which confines the excitation to the starting column and
spreads it there: fractional revival.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .dynamics import propagate_row, propagate_spectral
from .model import (EvolutionTime, ModelParams, RegimeViolationError, Site,
                    TimeLike, sites)
from .specfun import pochhammer

ODD_PERIOD = "odd-period"
EVEN_PERIOD = "even-period"


@dataclass(frozen=True)
class PstFamilySpec:
    """One member of a transfer family: family tag plus integers (k, p, q)."""

    family: str
    k: int
    p: int
    q: int

    def __post_init__(self):
        if self.family not in (ODD_PERIOD, EVEN_PERIOD):
            raise ValueError(f"unknown family {self.family!r}")
        if self.k < 1 or self.p < 0 or self.q < 0:
            raise ValueError("family indices must be positive (k) / nonnegative (p, q)")


@dataclass(frozen=True)
class FamilyRejection:
    """Returned (not raised) when a spec lands outside the positivity regime."""

    spec: PstFamilySpec
    params: ModelParams
    violations: tuple[str, ...]


def family_time(spec: PstFamilySpec) -> EvolutionTime:
    """The family's transfer period as an exact multiple of pi."""
    if spec.family == ODD_PERIOD:
        return EvolutionTime.pi(2 * spec.k + 1)
    return EvolutionTime.pi(2 * spec.k)


def family_params(spec: PstFamilySpec, n: int) -> Union[ModelParams, FamilyRejection]:
    """Exact parameters of a family member; a regime violation is a value."""
    if spec.family == ODD_PERIOD:
        a = Fraction(2 * spec.p + 1, 2 * spec.k + 1)
        b = Fraction(2 * spec.q, 2 * spec.k + 1)
    else:
        a = Fraction(spec.p, spec.k)
        b = Fraction(2 * spec.q + 1, 2 * spec.k)
    c = b / 2 - n + Fraction(1, 2)
    assert b == 2 * c + 2 * n - 1  # the two statements of the constraint agree
    params = ModelParams(a, b, c, n)
    bad = params.violations()
    if bad:
        return FamilyRejection(spec=spec, params=params, violations=tuple(bad))
    return params


def identify_family(p: ModelParams, k_max: int = 64) -> list[PstFamilySpec]:
    """All (family, k, p, q) with k <= k_max reproducing the given parameters
    exactly.  Empty when the parameters belong to neither family."""
    out = []
    if p.c != p.b / 2 - p.N + Fraction(1, 2):
        return out
    for k in range(1, k_max + 1):
        ua = p.a * (2 * k + 1)
        ub = p.b * (2 * k + 1)
        if ua.denominator == 1 and ub.denominator == 1:
            na, nb = ua.numerator, ub.numerator
            if na % 2 == 1 and nb % 2 == 0 and na >= 1 and nb >= 0:
                out.append(PstFamilySpec(ODD_PERIOD, k, (na - 1) // 2, nb // 2))
        va = p.a * k
        vb = p.b * 2 * k
        if va.denominator == 1 and vb.denominator == 1:
            ma, mb = va.numerator, vb.numerator
            if mb % 2 == 1 and ma >= 0 and mb >= 1:
                out.append(PstFamilySpec(EVEN_PERIOD, k, ma, (mb - 1) // 2))
    return out


def _phase_ok_exact(tau: Fraction, p: ModelParams) -> tuple[bool, bool]:
    x_ok = all((tau * x * (x + p.a)) % 2 == 0 for x in range(p.N + 1))
    y_ok = all((tau * y * (y + p.b) - y) % 2 == 0 for y in range(p.N + 1))
    return x_ok, y_ok


def _phase_ok_float(t: float, p: ModelParams, tol: float) -> tuple[bool, bool]:
    def dist_to_even(v: float) -> float:
        r = math.fmod(v, 2.0)
        return min(abs(r), abs(2.0 - abs(r)))

    x_ok = all(dist_to_even(t * x * float(x + p.a) / math.pi) <= tol for x in range(p.N + 1))
    y_ok = all(
        dist_to_even((t * y * float(y + p.b) / math.pi) - y) <= tol for y in range(p.N + 1)
    )
    return x_ok, y_ok


def phase_condition_parts(p: ModelParams, time: TimeLike, tol: float = 1e-9) -> tuple[bool, bool]:
    """(x-condition, y-condition): exp(-iTx(x+a)) = 1 for all x <= N, and
    exp(-iTy(y+b)) = (-1)^y for all y <= N.  Exact in rational arithmetic for
    pi-rational times, within ``tol`` on the phase otherwise."""
    t = EvolutionTime.coerce(time)
    if t.pi_multiple is not None:
        return _phase_ok_exact(t.pi_multiple, p)
    return _phase_ok_float(t.value, p, tol)


def check_phase_condition(p: ModelParams, time: TimeLike, tol: float = 1e-9) -> bool:
    x_ok, y_ok = phase_condition_parts(p, time, tol)
    return x_ok and y_ok


def endpoint_transfer_probability(p: ModelParams) -> Fraction:
    """|f_{(0,0),(0,N)}|^2 under the phase condition, as an exact rational:
    (c+N)_N (b+1-c-N)_N / ((b+1)/2)_N^2.  Negative values signal a regime
    violation (reported by :func:`endpoint_amplitude_closed_form`)."""
    num = pochhammer(p.c + p.N, p.N) * pochhammer(p.b + 1 - p.c - p.N, p.N)
    den = pochhammer((p.b + 1) / 2, p.N) ** 2
    return num / den


def endpoint_amplitude_closed_form(p: ModelParams) -> float:
    """Closed-form |f_{(0,0),(0,N)}| at a phase-condition time; equals 1
    exactly when b = 2c + 2N - 1."""
    sq = endpoint_transfer_probability(p)
    if sq < 0:
        raise RegimeViolationError(f"negative endpoint probability {sq}")
    return math.sqrt(float(sq))


def mirror_site(site: Site, n: int) -> Site:
    return site.mirror(n)


@dataclass(frozen=True)
class TransferReport:
    """Outcome of a transfer certification or revival detection."""

    kind: str  # "PST" | "FR" | "none"
    source: Site
    time: EvolutionTime
    phase_condition_satisfied: bool
    targets: tuple[tuple[Site, float], ...]
    pairs: tuple[tuple[Site, Site, float], ...] = field(default=())
    column_probability: Optional[float] = None

    def min_modulus(self) -> float:
        if self.pairs:
            return min(m for _, _, m in self.pairs)
        return min((m for _, m in self.targets), default=0.0)

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "source": [self.source.i, self.source.j],
            "time_over_pi": (
                str(self.time.pi_multiple) if self.time.pi_multiple is not None else None
            ),
            "time": self.time.value,
            "phase_condition_satisfied": self.phase_condition_satisfied,
            "pairs": [
                {"site": [s.i, s.j], "mirror": [t.i, t.j], "modulus": m}
                for s, t, m in self.pairs
            ],
            "targets": [{"site": [s.i, s.j], "modulus": m} for s, m in self.targets],
        }
        if self.column_probability is not None:
            d["column_probability"] = self.column_probability
        return d


def certify_pst(p: ModelParams, time: TimeLike, tol: float = 1e-6) -> TransferReport:
    """Evaluate |f| from every site to its mirror (i, N-i-j); PST when every
    mirror modulus reaches 1 - tol."""
    p.require_valid()
    t = EvolutionTime.coerce(time)
    pairs = []
    for s in sites(p.N):
        m = s.mirror(p.N)
        f = propagate_spectral(p, s, m, t)
        pairs.append((s, m, abs(f)))
    ok = all(m >= 1.0 - tol for _, _, m in pairs)
    origin = Site(0, 0)
    row = propagate_row(p, origin, t)
    ctx_sites = sites(p.N)
    col_prob = math.fsum(
        abs(row[k]) ** 2 for k, s in enumerate(ctx_sites) if s.i == origin.i
    )
    return TransferReport(
        kind="PST" if ok else "none",
        source=origin,
        time=t,
        phase_condition_satisfied=check_phase_condition(p, t),
        targets=tuple((m, v) for _, m, v in pairs),
        pairs=tuple(pairs),
        column_probability=col_prob,
    )


def detect_fractional_revival(p: ModelParams, time: TimeLike,
                              tol: float = 1e-6) -> TransferReport:
    """Amplitude row from (0,0); fractional revival when the probability on
    the column i = 0 reaches 1 - tol while at least two column sites carry
    modulus >= tol (a single carrier is transfer, not revival)."""
    p.require_valid()
    t = EvolutionTime.coerce(time)
    origin = Site(0, 0)
    row = propagate_row(p, origin, t)
    ss = sites(p.N)
    column = [(s, abs(row[k])) for k, s in enumerate(ss) if s.i == 0]
    col_prob = math.fsum(m * m for _, m in column)
    support = sum(1 for _, m in column if m >= tol)
    kind = "FR" if (col_prob >= 1.0 - tol and support >= 2) else "none"
    return TransferReport(
        kind=kind,
        source=origin,
        time=t,
        phase_condition_satisfied=check_phase_condition(p, t),
        targets=tuple(column),
        column_probability=col_prob,
    )
