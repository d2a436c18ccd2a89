"""Cross-backend agreement: the compiled kernels and the pure-Python fallback
must produce the same tables and amplitudes to roundoff."""

import math
import numpy as np
import pytest

from trihahn import _backend
from trihahn import _kernels_py as pure

compiled = pytest.importorskip(
    "trihahn._kernels_c", reason="compiled backend not built"
)


def _fill(mod, a, b, c, n):
    m = (n + 1) * (n + 2) // 2
    w = np.empty((m, m))
    wlog = np.empty(m)
    rlog = np.empty(m)
    mod.fill_tables(a, b, c, n, w, wlog, rlog)
    return w, wlog, rlog


@pytest.mark.parametrize(
    "abc,n",
    [
        ((53 / 3, 34 / 3, 1 / 6), 6),
        ((19.0, 11.5, 0.25), 6),
        ((19.0, 12.0, 0.5), 6),  # integer a - b
        ((53 / 3, 34 / 3, 13 / 6), 4),
    ],
)
def test_tables_agree(abc, n):
    a, b, c = abc
    wc, wlogc, rlogc = _fill(compiled, a, b, c, n)
    wp, wlogp, rlogp = _fill(pure, a, b, c, n)
    assert np.abs(wlogc - wlogp).max() <= 1e-11
    assert np.abs(rlogc - rlogp).max() <= 1e-11
    scale = np.abs(wc).max()
    assert np.abs(wc - wp).max() <= 1e-12 * max(1.0, scale)


def test_amplitudes_agree():
    a, b, c, n = 53 / 3, 34 / 3, 1 / 6, 6
    w, _, _ = _fill(compiled, a, b, c, n)
    m = w.shape[0]
    rng = np.random.default_rng(7)
    phases = np.exp(1j * rng.uniform(0, 2 * math.pi, size=m))
    out_c = np.empty(m, dtype=complex)
    out_p = np.empty(m, dtype=complex)
    compiled.amp_row(w, 0, phases, out_c)
    pure.amp_row(w, 0, phases, out_p)
    assert np.abs(out_c - out_p).max() <= 1e-14
    fc = compiled.amp_single(w, 3, 11, phases)
    fp = pure.amp_single(w, 3, 11, phases)
    assert abs(fc - fp) <= 1e-15


def test_backend_selection():
    assert _backend.load("pure").name == "pure"
    assert _backend.load("compiled").name == "compiled"
    assert _backend.load("auto").name in ("pure", "compiled")
    assert _backend.backend_name() in ("pure", "compiled")


def test_invalid_regime_rejected_by_both():
    # a - b < N flips weight signs; both kernels must refuse
    for mod in (compiled, pure):
        with pytest.raises(ValueError):
            _fill(mod, 10.0, 5.0, 0.5, 6)
