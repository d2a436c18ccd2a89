"""Bivariate polynomials on the triangular grid and their orthogonality data.

The two-variable polynomial is a parameter-coupled product of two univariate
families:

    D_{m,n}(x, y) = d_m(x; b+y-1, a+y, -y-1) * d_n(y-m; m+c+N-1, m+b+N, m-N-1)

for grid points 0 <= x <= y <= N and degrees 0 <= m+n <= N.  The first factor
carries the prefactor (-y)_m and therefore vanishes identically for m > y.

The orthogonality weight and norm are assembled from the univariate point
weights and norms (every gamma-function ratio reduces to a finite Pochhammer
product, so the pair is computable for all non-pole parameters and is
strictly positive in the regime c > 0, a-b > N, b-c > N):

    w_{x,y}  = w_x(b+y-1, a+y, -y-1) * w_y(c+N-1, b+N, -N-1)
               * (a-b-y+1)_y / (a+1)_y
    r_{m,n}  = w_m(c+N-1, b+N, -N-1) * m! (b+m)_m (-m)_m (b-a)_m
               * h_n(m+c+N-1, m+b+N, m-N-1)

normalized so that w_{0,0} = 1.  The test suite verifies this pair against
the orthogonality sum and against an alternative closed form built from raw
gamma ratios (see :func:`weight_gamma_ratio_form`), which is kept only as a
diagnostic: its overall constant is sign-indefinite and singular when a-b is
an integer.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _backend
from .model import (DegreeIndex, GridPoint, ModelParams, RegimeViolationError,
                    Site, grid_points, sites)
from .specfun import (DualHahnParams, SignedLog, dual_hahn, factorial_slog,
                      log_gamma_signed, slog_norm_h, slog_pochhammer,
                      slog_weight_w)


def first_family(y: int, p: ModelParams) -> DualHahnParams:
    """Univariate triple of the x-direction factor at row y."""
    return DualHahnParams(p.b + y - 1, p.a + y, Fraction(-y - 1))


def second_family(m: int, p: ModelParams) -> DualHahnParams:
    """Univariate triple of the y-direction factor at degree m."""
    return DualHahnParams(m + p.c + p.N - 1, m + p.b + p.N, Fraction(m - p.N - 1))


def tratnik_D(d: DegreeIndex, g: GridPoint, p: ModelParams) -> float:
    """The product polynomial D_{m,n}(x, y); zero for y < m."""
    if d.m < 0 or d.n < 0 or d.m + d.n > p.N:
        return 0.0
    if g.y < d.m:
        return 0.0
    return dual_hahn(d.m, g.x, first_family(g.y, p)) * dual_hahn(
        d.n, g.y - d.m, second_family(d.m, p)
    )


def _slog_weight(g: GridPoint, p: ModelParams) -> SignedLog:
    a, b = float(p.a), float(p.b)
    ratio = slog_pochhammer(a - b - g.y + 1, g.y) / slog_pochhammer(a + 1, g.y)
    return slog_weight_w(g.x, first_family(g.y, p)) * slog_weight_w(g.y, second_family(0, p)) * ratio


def _slog_norm(d: DegreeIndex, p: ModelParams) -> SignedLog:
    b, a = float(p.b), float(p.a)
    m, n = d.m, d.n
    ratio = (
        factorial_slog(m)
        * slog_pochhammer(b + m, m)
        * slog_pochhammer(float(-m), m)
        * slog_pochhammer(b - a, m)
    )
    return slog_weight_w(m, second_family(0, p)) * ratio * slog_norm_h(n, second_family(m, p))


def weight_W2(g: GridPoint, p: ModelParams) -> float:
    """Grid weight w_{x,y}; strictly positive in the parameter regime (a
    nonpositive value there is a hard error, signalling regime violation)."""
    v = _slog_weight(g, p).value()
    if p.is_valid and v <= 0.0:
        raise RegimeViolationError(f"weight at {g} is not positive: {v}")
    return v


def norm_r(d: DegreeIndex, p: ModelParams) -> float:
    """Orthogonality norm r_{m,n}; strictly positive in the parameter regime."""
    v = _slog_norm(d, p).value()
    if p.is_valid and v <= 0.0:
        raise RegimeViolationError(f"norm at {d} is not positive: {v}")
    return v


def eigvec_entry(site: Site, g: GridPoint, p: ModelParams) -> float:
    """W_{i,j}(x, y) = sqrt(w_{x,y} / r_{i,j}) * D_{i,j}(x, y)."""
    p.require_valid()
    w = _slog_weight(g, p)
    r = _slog_norm(DegreeIndex(site.i, site.j), p)
    scale = (w / r).sqrt()
    return scale.value() * tratnik_D(DegreeIndex(site.i, site.j), g, p)


def weight_gamma_ratio_form(g: GridPoint, p: ModelParams) -> SignedLog:
    """Diagnostic closed form of the grid weight built from raw gamma ratios:

        (-1)^x / (x! (y-x)!) * G(b-a+y-x) G(b+y+x) / G(a+1+y+x)
        * (a)_x (a/2+1)_x / (a/2)_x
        * (b/2+1)_y (c+N)_y (-N)_y / [ (b/2)_y (c-b-N+1)_y (b+N+1)_y ]

    Kept for comparison tests only: relative to :func:`weight_W2` it carries
    a sign-indefinite overall constant, an alternating defect from the
    (c-b-N+1)_y factor (the consistent pair requires (b-c-N+1)_y), and poles
    whenever a-b is an integer."""
    a, b, c, N = float(p.a), float(p.b), float(p.c), p.N
    x, y = g.x, g.y
    out = (
        log_gamma_signed(b - a + y - x)
        * log_gamma_signed(b + y + x)
        / log_gamma_signed(a + 1 + y + x)
        / factorial_slog(x)
        / factorial_slog(y - x)
        * slog_pochhammer(a, x)
        * slog_pochhammer(a / 2 + 1, x)
        / slog_pochhammer(a / 2, x)
        * slog_pochhammer(b / 2 + 1, y)
        * slog_pochhammer(c + N, y)
        * slog_pochhammer(float(-N), y)
        / slog_pochhammer(b / 2, y)
        / slog_pochhammer(c - b - N + 1, y)
        / slog_pochhammer(b + N + 1.0, y)
    )
    if x % 2:
        out = SignedLog(out.log_abs, -out.sign)
    return out


def norm_gamma_ratio_form(d: DegreeIndex, p: ModelParams) -> SignedLog:
    """Diagnostic closed form of the norm from raw gamma ratios:

        m! n! (-N)_{m+n} (c+N)_{m+n} G(b-a+m) G(c-b+n) G(b+N+1)
        / [ (-1)^N a b G(a) G(c-b+N) ]

    Same caveats as :func:`weight_gamma_ratio_form`."""
    a, b, c, N = float(p.a), float(p.b), float(p.c), p.N
    m, n = d.m, d.n
    out = (
        factorial_slog(m)
        * factorial_slog(n)
        * slog_pochhammer(float(-N), m + n)
        * slog_pochhammer(c + N, m + n)
        * log_gamma_signed(b - a + m)
        * log_gamma_signed(c - b + n)
        * log_gamma_signed(b + N + 1.0)
        / SignedLog.from_value(a)
        / SignedLog.from_value(b)
        / log_gamma_signed(a)
        / log_gamma_signed(c - b + N)
    )
    if N % 2:
        out = SignedLog(out.log_abs, -out.sign)
    return out


class ModelContext:
    """Eagerly-built, immutable tables for one parameter set.

    Holds the site/grid enumerations, the exact eigenvalues
    lambda_{x,y} = x(x+a) - y(y+b), and the dense eigenvector matrix
    W[site, grid] filled by the active backend.  Read-only after
    construction, so it is safe to share between threads.
    """

    def __init__(self, params: ModelParams):
        params.require_valid()
        self.params = params
        n = params.N
        self.sites = tuple(sites(n))
        self.grid = tuple(grid_points(n))
        self.site_index = {s: k for k, s in enumerate(self.sites)}
        self.grid_index = {g: k for k, g in enumerate(self.grid)}
        m = params.dimension
        self.lam_exact = tuple(
            Fraction(g.x) * (g.x + params.a) - Fraction(g.y) * (g.y + params.b) for g in self.grid
        )
        self.lam = np.array([float(v) for v in self.lam_exact])
        self.W = np.empty((m, m), dtype=np.float64)
        self.wlog = np.empty(m, dtype=np.float64)
        self.rlog = np.empty(m, dtype=np.float64)
        _backend.backend.fill_tables(
            float(params.a), float(params.b), float(params.c), n, self.W, self.wlog, self.rlog
        )
        self.W.setflags(write=False)
        self.wlog.setflags(write=False)
        self.rlog.setflags(write=False)


@lru_cache(maxsize=128)
def get_context(params: ModelParams) -> ModelContext:
    """Memoized per-parameter-set context."""
    return ModelContext(params)
