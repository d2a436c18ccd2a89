"""Benchmark the compiled kernels against the pure-Python fallback.

Times the two hot paths (eigenvector-table fill and compensated amplitude
rows) on both backends over a range of lattice sizes, plus one end-to-end
transfer certification sweep.  Run as a script:

    python benchmarks/bench_backends.py [--repeats 5]
"""

import argparse
import math
import time
from fractions import Fraction as F

import numpy as np


def best_of(repeats, fn):
    out = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        out = min(out, time.perf_counter() - t0)
    return out


def bench_kernels(repeats: int):
    from trihahn import _kernels_py

    backends = [("pure", _kernels_py)]
    try:
        from trihahn import _kernels_c

        backends.append(("compiled", _kernels_c))
    except ImportError:
        print("compiled backend not built; benchmarking pure only")

    print(f"{'task':<26} {'N':>3} " + "".join(f"{name:>12}" for name, _ in backends)
          + ("  speedup" if len(backends) == 2 else ""))
    for n in (6, 10, 14, 18):
        m = (n + 1) * (n + 2) // 2
        # a valid parameter set at every size: c > 0, a - b > N, b - c > N
        a, b, cc = 3 * n + 2 / 3, 2.0 * n, 0.5
        times = []
        for _, mod in backends:
            w = np.empty((m, m))
            wlog = np.empty(m)
            rlog = np.empty(m)
            times.append(best_of(repeats, lambda: mod.fill_tables(a, b, cc, n, w, wlog, rlog)))
        row = f"{'fill_tables':<26} {n:>3} " + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"  {times[0] / times[1]:>6.1f}x"
        print(row)

        w = np.empty((m, m))
        wlog = np.empty(m)
        rlog = np.empty(m)
        backends[-1][1].fill_tables(a, b, cc, n, w, wlog, rlog)
        rng = np.random.default_rng(1)
        phases = np.exp(1j * rng.uniform(0, 2 * math.pi, size=m))
        out = np.empty(m, dtype=complex)
        times = []
        for _, mod in backends:
            times.append(best_of(repeats, lambda: mod.amp_row(w, 0, phases, out)))
        row = f"{'amp_row':<26} {n:>3} " + "".join(f"{t * 1e6:>10.1f}us" for t in times)
        if len(times) == 2:
            row += f"  {times[0] / times[1]:>6.1f}x"
        print(row)


def bench_certification(repeats: int):
    import trihahn
    from trihahn import _backend
    from trihahn.bivariate import get_context
    from trihahn.transfer import (ODD_PERIOD, FamilyRejection, PstFamilySpec,
                                  certify_pst, family_params, family_time)

    specs = []
    for k in (1, 2):
        for p in range(1, 41):
            for q in range(1, 31):
                spec = PstFamilySpec(ODD_PERIOD, k, p, q)
                params = family_params(spec, 6)
                if not isinstance(params, FamilyRejection):
                    specs.append((spec, params))

    def sweep():
        get_context.cache_clear()
        for spec, params in specs:
            certify_pst(params, family_time(spec))

    for name in ("pure", "compiled"):
        try:
            _backend.backend = _backend.load(name)
        except ImportError:
            continue
        t = best_of(max(1, repeats // 2), sweep)
        print(f"{'certify sweep (' + name + ')':<26} {6:>3} {t:>10.2f}s   "
              f"({len(specs)} parameter sets)")
    _backend.backend = _backend.load("auto")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    bench_kernels(args.repeats)
    bench_certification(args.repeats)


if __name__ == "__main__":
    main()
