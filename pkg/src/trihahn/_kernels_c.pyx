# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled backend for the hot kernels: table fill and compensated amplitude
sums.  Mirrors the pure-Python twin ``_kernels_py`` exactly; the cross-backend
test suite pins the two together."""

from libc.math cimport exp, fabs, lgamma, log

name = "compiled"


cdef double _poch(double a, int n) noexcept:
    cdef double out = 1.0
    cdef int j
    for j in range(n):
        out *= a + j
    return out


cdef int _acc_slog(double* lg, int* parity, double base, int count, int subtract) except -1:
    """Accumulate +/- log|(base)_count| into *lg and the sign parity."""
    cdef int j
    cdef double v
    for j in range(count):
        v = base + j
        if v == 0.0:
            raise ValueError("vanishing Pochhammer factor in a weight/norm product")
        if v < 0.0:
            parity[0] += 1
        if subtract:
            lg[0] -= log(fabs(v))
        else:
            lg[0] += log(fabs(v))
    return 0


cdef double _hyp_series(int n, int xarg, double t3, double b1, double b2) noexcept:
    """Terminating 3F2(-n, -x, t3; b1, b2; 1) by term-ratio recurrence with
    Kahan accumulation; negative xarg terminates through n alone."""
    cdef int smax = n if xarg < 0 else (n if n < xarg else xarg)
    cdef double total = 1.0, comp = 0.0, term = 1.0
    cdef double y, t
    cdef int s
    for s in range(1, smax + 1):
        term *= ((-n + s - 1) * (-xarg + s - 1) * (t3 + s - 1)) \
            / ((b1 + s - 1) * (b2 + s - 1) * s)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def fill_tables(double a, double b, double c, int N,
                double[:, ::1] W, double[::1] wlog, double[::1] rlog):
    """Fill W[degree, grid] = sqrt(w/r) * D plus log-weight/log-norm tables.
    Orderings: grid y-outer/x-inner, degrees j-outer/i-inner."""
    cdef int Mg = (N + 1) * (N + 2) // 2
    cdef int g, d, x, y, m, n, j
    cdef double lg, pre
    cdef int parity

    import numpy as _np
    xi_arr = _np.empty(Mg, dtype=_np.int32)
    yi_arr = _np.empty(Mg, dtype=_np.int32)
    mi_arr = _np.empty(Mg, dtype=_np.int32)
    ni_arr = _np.empty(Mg, dtype=_np.int32)
    cdef int[::1] xi = xi_arr, yi = yi_arr, mi = mi_arr, ni = ni_arr
    g = 0
    for y in range(N + 1):
        for x in range(y + 1):
            xi[g] = x
            yi[g] = y
            g += 1
    d = 0
    for n in range(N + 1):
        for m in range(N + 1 - n):
            mi[d] = m
            ni[d] = n
            d += 1

    # log weights over the grid
    for g in range(Mg):
        x = xi[g]
        y = yi[g]
        lg = 0.0
        parity = 0
        _acc_slog(&lg, &parity, a, x, 0)
        _acc_slog(&lg, &parity, a / 2 + 1, x, 0)
        _acc_slog(&lg, &parity, b + y, x, 0)
        _acc_slog(&lg, &parity, -y, x, 0)
        _acc_slog(&lg, &parity, a / 2, x, 1)
        _acc_slog(&lg, &parity, a - b - y + 1, x, 1)
        _acc_slog(&lg, &parity, a + y + 1, x, 1)
        lg -= lgamma(x + 1.0)
        parity += x
        _acc_slog(&lg, &parity, b, y, 0)
        _acc_slog(&lg, &parity, b / 2 + 1, y, 0)
        _acc_slog(&lg, &parity, c + N, y, 0)
        _acc_slog(&lg, &parity, -N, y, 0)
        _acc_slog(&lg, &parity, b / 2, y, 1)
        _acc_slog(&lg, &parity, b - c - N + 1, y, 1)
        _acc_slog(&lg, &parity, b + N + 1, y, 1)
        lg -= lgamma(y + 1.0)
        parity += y
        _acc_slog(&lg, &parity, a - b - y + 1, y, 0)
        _acc_slog(&lg, &parity, a + 1, y, 1)
        if parity % 2:
            raise ValueError("weight table is not positive; parameters violate the regime")
        wlog[g] = lg

    # log norms over the degrees
    for d in range(Mg):
        m = mi[d]
        n = ni[d]
        lg = 0.0
        parity = 0
        _acc_slog(&lg, &parity, b, m, 0)
        _acc_slog(&lg, &parity, b / 2 + 1, m, 0)
        _acc_slog(&lg, &parity, c + N, m, 0)
        _acc_slog(&lg, &parity, -N, m, 0)
        _acc_slog(&lg, &parity, b / 2, m, 1)
        _acc_slog(&lg, &parity, b - c - N + 1, m, 1)
        _acc_slog(&lg, &parity, b + N + 1, m, 1)
        _acc_slog(&lg, &parity, b + m, m, 0)
        _acc_slog(&lg, &parity, -m, m, 0)
        _acc_slog(&lg, &parity, b - a, m, 0)
        _acc_slog(&lg, &parity, m + c + N, n, 0)
        _acc_slog(&lg, &parity, m - N, n, 0)
        _acc_slog(&lg, &parity, c - b, n, 0)
        _acc_slog(&lg, &parity, 2 * m + b + 1, N - m, 0)
        _acc_slog(&lg, &parity, m + b - c - N + 1, N - m, 1)
        parity += m
        lg += lgamma(n + 1.0)
        if parity % 2:
            raise ValueError("norm table is not positive; parameters violate the regime")
        rlog[d] = lg

    # polynomial factor tables
    d1_arr = _np.empty((N + 1, Mg), dtype=_np.float64)
    d2_arr = _np.zeros((Mg, N + 1), dtype=_np.float64)
    cdef double[:, ::1] d1 = d1_arr
    cdef double[:, ::1] d2 = d2_arr
    for m in range(N + 1):
        for g in range(Mg):
            x = xi[g]
            y = yi[g]
            pre = _poch(b + y, m) * _poch(-y, m)  # zero where y < m
            if pre == 0.0:
                d1[m, g] = 0.0
            else:
                d1[m, g] = pre * _hyp_series(m, x, x + a, b + y, -y)
    for d in range(Mg):
        m = mi[d]
        n = ni[d]
        pre = _poch(m + c + N, n) * _poch(m - N, n)
        for y in range(m, N + 1):
            d2[d, y] = pre * _hyp_series(n, y - m, y + m + b, m + c + N, m - N)

    for d in range(Mg):
        for g in range(Mg):
            W[d, g] = d1[mi[d], g] * d2[d, yi[g]] * exp(0.5 * (wlog[g] - rlog[d]))


def amp_single(const double[:, ::1] W, int src, int dst,
               const double complex[::1] phases):
    """f(src -> dst) = sum_g W[src,g] W[dst,g] phases[g], Kahan-compensated
    separately on the real and imaginary parts, in fixed grid order."""
    cdef double re = 0.0, rc = 0.0, im = 0.0, ic = 0.0
    cdef double p, yv, t
    cdef int g
    for g in range(W.shape[1]):
        p = W[src, g] * W[dst, g]
        yv = p * phases[g].real - rc
        t = re + yv
        rc = (t - re) - yv
        re = t
        yv = p * phases[g].imag - ic
        t = im + yv
        ic = (t - im) - yv
        im = t
    return complex(re, im)


def amp_row(const double[:, ::1] W, int src, const double complex[::1] phases,
            double complex[::1] out):
    """Amplitude row from one source to every site."""
    cdef int d
    for d in range(W.shape[0]):
        out[d] = amp_single(W, src, d, phases)
