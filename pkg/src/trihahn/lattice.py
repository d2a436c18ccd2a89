"""Triangular-lattice geometry, coupling arrays and the 1-excitation matrix.

Couplings come from the recurrence coefficients of the orthonormal bivariate
polynomials:

    J_{m,n} = sqrt( m (N+1-m-n) (a-b+1-m) (c+N+m+n-1) )   horizontal edges
    L_{m,n} = sqrt( (m+1) n (a-b-m) (b-c+1-n) )           diagonal edges
    B_{m,n} = m (a-2b+1-2m)                               on-site field

Radicands are formed in exact rational arithmetic before the single floating
square root, so a parameter-regime violation surfaces as a definite error
rather than a NaN.

The J radicand's last factor admits a second variant, (c+N+m+n+1), reachable
through ``j_shift=+1``; it fails the eigen-relation test and is kept only so
the test suite can demonstrate that failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

import numpy as np

from .model import (ModelParams, RegimeViolationError, Site, grid_points,
                    site_index, sites)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]


def validate_params(p: ModelParams) -> ValidationReport:
    """Exact check of c > 0, a - b > N, b - c > N; reports each violation."""
    v = tuple(p.violations())
    return ValidationReport(ok=not v, violations=v)


def _checked_sqrt(radicand: Fraction, what: str) -> float:
    if radicand < 0:
        raise RegimeViolationError(f"negative radicand in {what}: {radicand}")
    return sqrt(float(radicand))


def coupling_J(m: int, n: int, p: ModelParams, j_shift: int = -1) -> float:
    rad = Fraction(m) * (p.N + 1 - m - n) * (p.a - p.b + 1 - m) * (p.c + p.N + m + n + j_shift)
    return _checked_sqrt(rad, f"J[{m},{n}]")

def coupling_L(m: int, n: int, p: ModelParams) -> float:
    rad = Fraction(m + 1) * n * (p.a - p.b - m) * (p.b - p.c + 1 - n)
    return _checked_sqrt(rad, f"L[{m},{n}]")

def coupling_B(m: int, n: int, p: ModelParams) -> float:
    return float(Fraction(m) * (p.a - 2 * p.b + 1 - 2 * m))


@dataclass(frozen=True)
class CouplingSet:
    """Edge and on-site coefficient maps over the site set."""

    J: dict[Site, float]
    L: dict[Site, float]
    B: dict[Site, float]


def couplings(p: ModelParams, j_shift: int = -1) -> CouplingSet:
    """All coupling coefficients; J vanishes on the i = 0 row and L on the
    j = 0 row by the factor structure."""
    ss = sites(p.N)
    return CouplingSet(
        J={s: coupling_J(s.i, s.j, p, j_shift) for s in ss},
        L={s: coupling_L(s.i, s.j, p) for s in ss},
        B={s: coupling_B(s.i, s.j, p) for s in ss},
    )


@dataclass(frozen=True)
class Hamiltonian1Ex:
    """Dense symmetric matrix over the site basis (row-major: j outer,
    i inner), together with the couplings it was assembled from."""

    params: ModelParams
    sites: tuple[Site, ...]
    index: dict[Site, int]
    matrix: np.ndarray
    couplings: CouplingSet

    @property
    def dimension(self) -> int:
        return len(self.sites)

    def to_dict(self) -> dict:
        edges = []
        for s in self.sites:
            right = Site(s.i + 1, s.j)
            if right in self.index:
                edges.append(
                    {"a": [s.i, s.j], "b": [right.i, right.j],
                     "weight": self.couplings.J[right], "kind": "horizontal"}
                )
            if s.j >= 1:
                diag = Site(s.i + 1, s.j - 1)
                edges.append(
                    {"a": [s.i, s.j], "b": [diag.i, diag.j],
                     "weight": self.couplings.L[s], "kind": "diagonal"}
                )
        return {
            "params": self.params.as_dict(),
            "dimension": self.dimension,
            "sites": [[s.i, s.j] for s in self.sites],
            "diagonal": [self.couplings.B[s] for s in self.sites],
            "edges": edges,
        }


def assemble(p: ModelParams, j_shift: int = -1) -> Hamiltonian1Ex:
    """Single-excitation matrix: site (i,j) couples to (i+1,j) with weight
    J_{i+1,j}, to (i+1,j-1) with weight L_{i,j}, and carries B_{i,j} on the
    diagonal.  Exactly symmetric by construction."""
    p.require_valid()
    cs = couplings(p, j_shift)
    ss = tuple(sites(p.N))
    idx = site_index(p.N)
    m = len(ss)
    h = np.zeros((m, m))
    for s in ss:
        k = idx[s]
        h[k, k] = cs.B[s]
        right = Site(s.i + 1, s.j)
        if right in idx:
            h[k, idx[right]] = h[idx[right], k] = cs.J[right]
        if s.j >= 1:
            diag = Site(s.i + 1, s.j - 1)
            h[k, idx[diag]] = h[idx[diag], k] = cs.L[s]
    h.setflags(write=False)
    return Hamiltonian1Ex(params=p, sites=ss, index=idx, matrix=h, couplings=cs)


def spectrum(p: ModelParams) -> list[tuple[Fraction, int, int]]:
    """Exact eigenvalues lambda_{x,y} = x(x+a) - y(y+b) over the grid."""
    return [
        (Fraction(g.x) * (g.x + p.a) - Fraction(g.y) * (g.y + p.b), g.x, g.y)
        for g in grid_points(p.N)
    ]


def eigenvalue_collisions(p: ModelParams) -> list[list[tuple[int, int]]]:
    """Groups of grid points sharing one eigenvalue (exact comparison).
    Nothing downstream requires a simple spectrum; this is reporting only."""
    groups: dict[Fraction, list[tuple[int, int]]] = {}
    for lam, x, y in spectrum(p):
        groups.setdefault(lam, []).append((x, y))
    return [pts for pts in groups.values() if len(pts) > 1]
