"""Single-excitation time evolution.

Two independent propagation routes:

* :func:`propagate_spectral` evaluates the analytic spectral sum
  f(src->dst) = sum_{x<=y} W_src(x,y) W_dst(x,y) exp(-i T lambda_{x,y})
  through the closed-form eigensystem, with compensated summation in a fixed
  grid order.  For times given as exact rational multiples of pi the phase
  T*lambda is reduced modulo 2*pi in rational arithmetic before any rounding.

* :func:`propagate_oracle` diagonalizes the assembled matrix with a cyclic
  Jacobi eigensolver and exponentiates spectrally through the numerical
  eigenpairs.  It shares nothing with the analytic route past the matrix
  itself, which is what makes it a useful cross-check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _backend
from .bivariate import ModelContext, get_context
from .lattice import assemble
from .model import (ConvergenceError, EvolutionTime, ModelParams, Site,
                    TimeLike, format_float)


def phase_factors(ctx: ModelContext, time: EvolutionTime) -> np.ndarray:
    """exp(-i T lambda) over the grid; exact rational reduction when T is a
    rational multiple of pi (the eigenvalues are rational), float otherwise."""
    if time.pi_multiple is not None:
        tau = time.pi_multiple
        return np.array(
            [cmath.exp(-1j * math.pi * float((tau * lam) % 2)) for lam in ctx.lam_exact]
        )
    return np.exp(-1j * time.value * ctx.lam)


def propagate_spectral(p: ModelParams, src: Site, dst: Site, time: TimeLike) -> complex:
    """Transition amplitude f(src -> dst) at the given time."""
    t = EvolutionTime.coerce(time)
    ctx = get_context(p)
    ph = phase_factors(ctx, t)
    return _backend.backend.amp_single(ctx.W, ctx.site_index[src], ctx.site_index[dst], ph)


def propagate_row(p: ModelParams, src: Site, time: TimeLike) -> np.ndarray:
    """Amplitude row from src to every site, in site order."""
    t = EvolutionTime.coerce(time)
    ctx = get_context(p)
    ph = phase_factors(ctx, t)
    out = np.empty(len(ctx.sites), dtype=complex)
    _backend.backend.amp_row(ctx.W, ctx.site_index[src], ph, out)
    return out


def propagator_matrix(p: ModelParams, time: TimeLike) -> np.ndarray:
    """Full propagator W diag(exp(-i T lambda)) W^T (bulk form of the
    spectral sum; agrees with propagate_spectral to roundoff)."""
    t = EvolutionTime.coerce(time)
    ctx = get_context(p)
    ph = phase_factors(ctx, t)
    return (ctx.W * ph) @ ctx.W.T


@dataclass(frozen=True)
class AmplitudeGrid:
    """Amplitude row from one source at one time, over all target sites."""

    source: Site
    time: EvolutionTime
    values: dict[Site, complex]

    def total_probability(self) -> float:
        return math.fsum(abs(v) ** 2 for v in self.values.values())

    def to_dict(self) -> dict:
        return {
            "source": [self.source.i, self.source.j],
            "time": self.time.value,
            "time_label": self.time.describe(),
            "values": [
                {"site": [s.i, s.j], "re": v.real, "im": v.imag, "modulus": abs(v)}
                for s, v in self.values.items()
            ],
        }

    def csv_rows(self) -> list[str]:
        t = format_float(self.time.value)
        return [
            ",".join(
                (str(s.i), str(s.j), t, format_float(v.real), format_float(v.imag),
                 format_float(abs(v)))
            )
            for s, v in self.values.items()
        ]


CSV_HEADER = "i,j,t,re,im,abs"


def jacobi_eigensystem(matrix: np.ndarray, rel_tol: float = 1e-12,
                       max_sweeps: int = 50) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalization of a real symmetric matrix.

    Sweeps rotate every upper off-diagonal entry in row order until the
    off-diagonal Frobenius norm drops below rel_tol times the Frobenius norm
    of the input; exceeding the sweep budget is a hard error."""
    a = np.array(matrix, dtype=float)
    if not np.array_equal(a, a.T):
        raise ValueError("jacobi_eigensystem expects a symmetric matrix")
    n = a.shape[0]
    v = np.eye(n)
    target = rel_tol * math.sqrt(float(np.sum(a * a)))

    def off_norm() -> float:
        o = a - np.diag(np.diag(a))
        return math.sqrt(float(np.sum(o * o)))

    for _ in range(max_sweeps):
        if off_norm() <= target:
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, s], [-s, c]])
                a[:, [p, q]] = a[:, [p, q]] @ rot
                a[[p, q], :] = rot.T @ a[[p, q], :]
                a[p, q] = a[q, p] = 0.0
                v[:, [p, q]] = v[:, [p, q]] @ rot
    if off_norm() <= target:
        return np.diag(a).copy(), v
    raise ConvergenceError(f"jacobi sweep budget ({max_sweeps}) exhausted")


def propagate_oracle(p: ModelParams, src: Site, time: TimeLike,
                     max_sweeps: int = 50) -> AmplitudeGrid:
    """Numerical propagator row through Jacobi eigenpairs of the assembled
    matrix; independent of the closed-form eigensystem."""
    t = EvolutionTime.coerce(time)
    h = assemble(p)
    evals, evecs = jacobi_eigensystem(h.matrix, max_sweeps=max_sweeps)
    phases = np.exp(-1j * t.value * evals)
    k = h.index[src]
    row = (evecs * phases) @ (evecs.T[:, k])
    values = {s: complex(row[h.index[s]]) for s in h.sites}
    return AmplitudeGrid(source=src, time=t, values=values)


def amplitude_timeseries(p: ModelParams, src: Site, dsts: Sequence[Site],
                         times: Sequence[TimeLike]) -> list[tuple[Site, EvolutionTime, complex]]:
    """propagate_spectral over the (time, destination) product, time outer,
    preserving input order."""
    out = []
    for time in times:
        t = EvolutionTime.coerce(time)
        for dst in dsts:
            out.append((dst, t, propagate_spectral(p, src, dst, t)))
    return out


def amplitude_grid(p: ModelParams, src: Site, time: TimeLike) -> AmplitudeGrid:
    """Full spectral amplitude row packaged with site labels."""
    t = EvolutionTime.coerce(time)
    ctx = get_context(p)
    row = propagate_row(p, src, t)
    return AmplitudeGrid(
        source=src, time=t, values={s: complex(row[k]) for k, s in enumerate(ctx.sites)}
    )
