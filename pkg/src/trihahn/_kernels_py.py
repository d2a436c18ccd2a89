"""Pure-Python backend for the hot kernels.

Same contract as the compiled twin ``_kernels_c``: fill the eigenvector /
weight / norm tables for a parameter set and evaluate compensated amplitude
sums.  Table formulas are products of Pochhammer symbols accumulated in
sign-tracked log space; the polynomial factors come from terminating
hypergeometric series evaluated by their term-ratio recurrence.

Orderings are fixed: grid points y-outer/x-inner, degrees j-outer/i-inner
(matching the site basis).  Amplitude sums run in grid order with
compensation, so results are reproducible across runs.
"""

from __future__ import annotations

import math

import numpy as np

name = "pure"


def _poch(base: float, n: int) -> float:
    out = 1.0
    for j in range(n):
        out *= base + j
    return out


def _poch_vec(base: np.ndarray, n: int) -> np.ndarray:
    out = np.ones_like(base)
    for j in range(n):
        out = out * (base + j)
    return out


def _acc_slog_vec(log: np.ndarray, parity: np.ndarray, base: np.ndarray,
                  count: np.ndarray, subtract: bool = False) -> None:
    """Accumulate +/- log|(base)_count| and sign parity, elementwise."""
    top = int(count.max()) if count.size else 0
    sgn = -1.0 if subtract else 1.0
    for j in range(top):
        mask = j < count
        v = np.where(mask, base + j, 1.0)
        if np.any(v == 0.0):
            raise ValueError("vanishing Pochhammer factor in a weight/norm product")
        log += sgn * np.where(mask, np.log(np.abs(v)), 0.0)
        parity += np.where(mask & (v < 0.0), 1, 0)


def _hyp_series_vec(n: int, xarg: np.ndarray, t3: np.ndarray,
                    b1: np.ndarray, b2: np.ndarray) -> np.ndarray:
    """Vector form of the terminating 3F2(-n, -x, t3; b1, b2; 1) with Kahan
    accumulation; entries with negative x terminate through n alone."""
    total = np.ones_like(t3)
    comp = np.zeros_like(t3)
    term = np.ones_like(t3)
    smax = np.where(xarg < 0, n, np.minimum(n, xarg))
    for s in range(1, n + 1):
        active = s <= smax
        den = (b1 + s - 1) * (b2 + s - 1) * s
        den = np.where(active, den, 1.0)
        num = (-n + s - 1) * (-xarg + s - 1) * (t3 + s - 1)
        term = term * np.where(active, num / den, 0.0)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def fill_tables(a: float, b: float, c: float, N: int,
                W: np.ndarray, wlog: np.ndarray, rlog: np.ndarray) -> None:
    """Fill the eigenvector matrix W[degree, grid] = sqrt(w/r) * D and the
    log-weights/log-norms.  Requires the positivity regime (checked by the
    caller in exact arithmetic); a nonpositive weight or norm here is an
    internal error."""
    gxy = [(x, y) for y in range(N + 1) for x in range(y + 1)]
    dmn = [(i, j) for j in range(N + 1) for i in range(N + 1 - j)]
    xs = np.array([g[0] for g in gxy], dtype=float)
    ys = np.array([g[1] for g in gxy], dtype=float)
    xi = np.array([g[0] for g in gxy])
    yi = np.array([g[1] for g in gxy])
    lfact = np.array([math.lgamma(k + 1.0) for k in range(N + 1)])

    # -- log weights over the grid --
    parity = np.zeros(len(gxy), dtype=int)
    wlog[:] = 0.0
    # first-family point weight at (x; b+y-1, a+y, -y-1)
    _acc_slog_vec(wlog, parity, np.full_like(xs, a), xi, False)
    _acc_slog_vec(wlog, parity, np.full_like(xs, a / 2 + 1), xi, False)
    _acc_slog_vec(wlog, parity, b + ys, xi, False)
    _acc_slog_vec(wlog, parity, -ys, xi, False)
    _acc_slog_vec(wlog, parity, np.full_like(xs, a / 2), xi, True)
    _acc_slog_vec(wlog, parity, a - b - ys + 1, xi, True)
    _acc_slog_vec(wlog, parity, a + ys + 1, xi, True)
    wlog -= lfact[xi]
    parity += xi
    # second-family point weight at (y; c+N-1, b+N, -N-1)
    _acc_slog_vec(wlog, parity, np.full_like(ys, b), yi, False)
    _acc_slog_vec(wlog, parity, np.full_like(ys, b / 2 + 1), yi, False)
    _acc_slog_vec(wlog, parity, np.full_like(ys, c + N), yi, False)
    _acc_slog_vec(wlog, parity, np.full_like(ys, -N), yi, False)
    _acc_slog_vec(wlog, parity, np.full_like(ys, b / 2), yi, True)
    _acc_slog_vec(wlog, parity, np.full_like(ys, b - c - N + 1), yi, True)
    _acc_slog_vec(wlog, parity, np.full_like(ys, b + N + 1), yi, True)
    wlog -= lfact[yi]
    parity += yi
    # norm ratio (a-b-y+1)_y / (a+1)_y
    _acc_slog_vec(wlog, parity, a - b - ys + 1, yi, False)
    _acc_slog_vec(wlog, parity, np.full_like(ys, a + 1), yi, True)
    if np.any(parity % 2):
        raise ValueError("weight table is not positive; parameters violate the regime")

    # -- log norms over the degrees --
    for d, (m, n) in enumerate(dmn):
        log = 0.0
        par = 0
        for base, cnt, sub in (
            (b, m, False), (b / 2 + 1, m, False), (c + N, m, False), (-float(N), m, False),
            (b / 2, m, True), (b - c - N + 1, m, True), (b + N + 1, m, True),
            (b + m, m, False), (-float(m), m, False), (b - a, m, False),
            (m + c + N, n, False), (float(m - N), n, False), (c - b, n, False),
            (2 * m + b + 1, N - m, False), (m + b - c - N + 1, N - m, True),
        ):
            for j in range(cnt):
                v = base + j
                if v == 0.0:
                    raise ValueError("vanishing Pochhammer factor in a norm product")
                log += -math.log(abs(v)) if sub else math.log(abs(v))
                if v < 0.0:
                    par += 1
        # w_m(second family) carries (-1)^m; its 1/m! cancels against the m!
        # of the norm ratio, leaving only the n! of h_n
        par += m
        log += lfact[n]
        if par % 2:
            raise ValueError("norm table is not positive; parameters violate the regime")
        rlog[d] = log

    # -- polynomial factors --
    d1 = np.empty((N + 1, len(gxy)))
    for m in range(N + 1):
        pre = _poch_vec(b + ys, m) * _poch_vec(-ys, m)  # zero where y < m
        d1[m] = pre * _hyp_series_vec(m, xs, xs + a, b + ys, -ys)
    yr = np.arange(N + 1, dtype=float)
    d2 = np.zeros((len(dmn), N + 1))
    for d, (m, n) in enumerate(dmn):
        valid = yr >= m
        pre = _poch(m + c + N, n) * _poch(float(m - N), n)
        series = _hyp_series_vec(n, yr - m, yr + m + b,
                                 np.full_like(yr, m + c + N), np.full_like(yr, float(m - N)))
        d2[d] = np.where(valid, pre * series, 0.0)

    for d, (m, n) in enumerate(dmn):
        W[d, :] = d1[m] * d2[d][yi] * np.exp(0.5 * (wlog - rlog[d]))


def amp_single(W: np.ndarray, src: int, dst: int, phases: np.ndarray) -> complex:
    """f(src -> dst) = sum_g W[src,g] W[dst,g] phases[g] in fixed grid order,
    exactly-rounded via fsum on the real and imaginary parts."""
    prod = W[src] * W[dst]
    re = math.fsum(prod * phases.real)
    im = math.fsum(prod * phases.imag)
    return complex(re, im)


def amp_row(W: np.ndarray, src: int, phases: np.ndarray, out: np.ndarray) -> None:
    """Amplitude row from one source to every site."""
    for d in range(W.shape[0]):
        out[d] = amp_single(W, src, d, phases)
