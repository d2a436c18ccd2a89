"""Self-verification suites.

Each check recomputes an identity the model must satisfy (orthogonality sums,
recurrences, the eigen-relation, propagator agreement, transfer claims) and
reports pass/fail with a measured deviation.  The CLI ``verify`` command runs
these; the test suite asserts the same identities at pinned tolerances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bivariate import (first_family, get_context, norm_r, second_family,
                        tratnik_D, weight_W2)
from .dynamics import jacobi_eigensystem, propagator_matrix
from .lattice import (assemble, coupling_B, coupling_J, coupling_L,
                      eigenvalue_collisions)
from .model import DegreeIndex, EvolutionTime, ModelParams, grid_points, sites
from .specfun import dual_hahn, norm_h, weight_w
from .transfer import (EVEN_PERIOD, ODD_PERIOD, PstFamilySpec, certify_pst,
                       detect_fractional_revival, family_params, family_time)

FIG1_ABC = (Fraction(53, 3), Fraction(34, 3), Fraction(1, 6))
FIG2_ABC = (Fraction(19), Fraction(23, 2), Fraction(1, 4))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, dev: float, tol: float, extra: str = "") -> CheckResult:
    note = f"max deviation {dev:.3e} (tol {tol:.1e})"
    if extra:
        note += "; " + extra
    return CheckResult(name, dev <= tol, note)


def univariate_orthogonality(p: ModelParams, tol: float = 1e-8) -> CheckResult:
    """sum_x w_x d_n d_m == h_n delta_{nm} for every embedded triple."""
    dev = 0.0
    for label, triples in (
        ("x-direction", [(first_family(y, p), y) for y in range(p.N + 1)]),
        ("y-direction", [(second_family(i, p), p.N - i) for i in range(p.N + 1)]),
    ):
        for fam, trunc in triples:
            w = [weight_w(x, fam) for x in range(trunc + 1)]
            d = [[dual_hahn(n, x, fam) for x in range(trunc + 1)] for n in range(trunc + 1)]
            h = [norm_h(n, fam) for n in range(trunc + 1)]
            for n in range(trunc + 1):
                for m in range(n, trunc + 1):
                    s = math.fsum(w[x] * d[n][x] * d[m][x] for x in range(trunc + 1))
                    expect = h[n] if n == m else 0.0
                    scale = math.sqrt(abs(h[n] * h[m]))
                    dev = max(dev, abs(s - expect) / scale)
    return _result("univariate-orthogonality", dev, tol)


def univariate_recurrence(p: ModelParams, tol: float = 1e-8) -> CheckResult:
    """Three-term recurrence of the orthonormal univariate polynomials,
    checked on the alpha-truncated form of every embedded triple (the family
    is invariant under the alpha/gamma slot swap).

    Two equivalent statements are verified: the literal polynomials satisfy
    the all-plus form

        x(x+delta+gamma+1) dt_n = c_up dt_{n+1} + c_mid dt_n + c_dn dt_{n-1}

    and the alternating rescale (-1)^n dt_n satisfies the same relation with
    the lattice variable and middle coefficient negated (the form usually
    quoted for the sign-alternating normalization)."""
    dev = 0.0
    fams = [first_family(y, p) for y in range(p.N + 1)] + [
        second_family(i, p) for i in range(p.N + 1)
    ]
    for fam in fams:
        sw = fam.swapped()
        trunc = round(-float(sw.alpha) - 1)
        de, ga = float(sw.delta), float(sw.gamma)
        h = [norm_h(n, sw) for n in range(trunc + 1)]
        for x in range(trunc + 1):
            dt = [dual_hahn(n, x, sw) / math.sqrt(h[n]) for n in range(trunc + 1)]
            lam = x * (x + de + ga + 1)
            for n in range(trunc + 1):
                c_up = (
                    math.sqrt((n + 1) * (n + ga + 1) * (trunc - n) * (de + trunc - n))
                    if n + 1 <= trunc
                    else 0.0
                )
                c_mid = (n + ga + 1) * (trunc - n) + n * (de + trunc - n + 1)
                c_dn = (
                    math.sqrt(n * (n + ga) * (trunc - n + 1) * (de + 1 + trunc - n))
                    if n >= 1
                    else 0.0
                )
                up = dt[n + 1] if n + 1 <= trunc else 0.0
                dn = dt[n - 1] if n >= 1 else 0.0
                scale = max(1.0, abs(lam * dt[n]))
                resid = abs(lam * dt[n] - (c_up * up + c_mid * dt[n] + c_dn * dn))
                dev = max(dev, resid / scale)
                sgn = -1.0 if n % 2 else 1.0
                upa = -up if n % 2 == 0 else up  # (-1)^(n+1) relative to dt
                dna = -dn if n % 2 == 0 else dn
                resid_alt = abs(-lam * sgn * dt[n] - (c_up * upa - c_mid * sgn * dt[n] + c_dn * dna))
                dev = max(dev, resid_alt / scale)
    return _result("univariate-recurrence", dev, tol)


def _tables(p: ModelParams):
    gg = grid_points(p.N)
    dd = [DegreeIndex(s.i, s.j) for s in sites(p.N)]
    dtab = np.array([[tratnik_D(d, g, p) for g in gg] for d in dd])
    w = np.array([weight_W2(g, p) for g in gg])
    r = np.array([norm_r(d, p) for d in dd])
    return gg, dd, dtab, w, r


def bivariate_orthogonality(p: ModelParams, tol: float = 1e-8) -> CheckResult:
    """sum_{x<=y} D_1 D_2 w == r delta over all degree pairs."""
    _, dd, dtab, w, r = _tables(p)
    gram = (dtab * w) @ dtab.T
    expect = np.diag(r)
    scale = np.sqrt(np.abs(np.outer(r, r)))
    dev = float(np.abs((gram - expect) / scale).max())
    return _result("bivariate-orthogonality", dev, tol)


def recurrences(p: ModelParams, tol: float = 1e-8) -> CheckResult:
    """Raw recurrences in x(x+a) and y(y+b), their difference, and the
    orthonormal form with the square-root coefficients."""
    a, b, c, n = p.a, p.b, p.c, p.N
    gg = grid_points(n)

    def d(m_, n_, g):
        return tratnik_D(DegreeIndex(m_, n_), g, p)

    dev = 0.0
    for g in gg:
        x, y = g.x, g.y
        for m in range(n + 1):
            for k in range(n + 1 - m):
                base = d(m, k, g)
                lam_x = float(Fraction(x) * (x + a))
                lam_y = float(Fraction(y) * (y + b))
                diag_x = float(
                    n * (n + c) - m * (c + b - a - 1) - k * (2 * c - b - 1)
                    - 2 * m * m - 2 * m * k - 2 * k * k
                )
                back = float((a - b + 1 - m) * (n + 1 - m - k) * (c + n + m + k - 1)) * m
                backy = float((b - c + 1 - k) * (n + 1 - m - k) * (c + n + m + k - 1)) * k
                terms_x = [
                    d(m + 1, k, g), d(m, k + 1, g), diag_x * base,
                    back * d(m - 1, k, g), backy * d(m, k - 1, g),
                    m * float(a - b + 1 - m) * d(m - 1, k + 1, g),
                    k * float(b - c + 1 - k) * d(m + 1, k - 1, g),
                ]
                diag_y = float(n * (n + c) - k * (2 * c - b - 1) - m * (c - b) - 2 * m * k - 2 * k * k)
                terms_y = [d(m, k + 1, g), diag_y * base, backy * d(m, k - 1, g)]
                # pointwise relative to the size of the cancelling terms
                scale = max(1.0, abs(lam_x * base), abs(lam_y * base),
                            *(abs(t) for t in terms_x))
                dev = max(dev, abs(lam_x * base - sum(terms_x)) / scale)
                dev = max(dev, abs(lam_y * base - sum(terms_y)) / scale)
                # orthonormal form
                rt = math.sqrt(norm_r(DegreeIndex(m, k), p))
                lhs = (lam_x - lam_y) * base / rt

                def dt(m_, k_):
                    if m_ < 0 or k_ < 0 or m_ + k_ > n:
                        return 0.0
                    return d(m_, k_, g) / math.sqrt(norm_r(DegreeIndex(m_, k_), p))

                onf_terms = [
                    coupling_J(m + 1, k, p) * dt(m + 1, k),
                    coupling_J(m, k, p) * dt(m - 1, k),
                    coupling_B(m, k, p) * dt(m, k),
                    coupling_L(m - 1, k + 1, p) * dt(m - 1, k + 1),
                    coupling_L(m, k, p) * dt(m + 1, k - 1),
                ]
                onf_scale = max(1.0, abs(lhs), *(abs(t) for t in onf_terms))
                dev = max(dev, abs(lhs - sum(onf_terms)) / onf_scale)
    return _result("recurrences", dev, tol)


def eigvec_orthogonality(p: ModelParams, tol: float = 1e-8) -> CheckResult:
    """W W^T and W^T W against the identity."""
    ctx = get_context(p)
    eye = np.eye(len(ctx.sites))
    dev = max(
        float(np.abs(ctx.W @ ctx.W.T - eye).max()), float(np.abs(ctx.W.T @ ctx.W - eye).max())
    )
    return _result("eigvec-orthogonality", dev, tol)


def eigen_relation(p: ModelParams, tol: float = 1e-8, j_shift: int = -1) -> CheckResult:
    """H w_{x,y} == lambda_{x,y} w_{x,y} column by column, relative to the
    infinity norm of H."""
    ctx = get_context(p)
    h = assemble(p, j_shift=j_shift)
    hnorm = float(np.abs(h.matrix).sum(axis=1).max())
    resid = float(np.abs(h.matrix @ ctx.W - ctx.W * ctx.lam).max())
    return _result(f"eigen-relation(j_shift={j_shift})", resid / hnorm, tol)


def coupling_variant_fails(p: ModelParams, tol: float = 1e-8) -> CheckResult:
    """The +1 variant of the J radicand must fail the eigen-relation."""
    wrong = eigen_relation(p, tol, j_shift=+1)
    return CheckResult(
        "coupling-variant-rejected",
        not wrong.passed,
        f"+1 variant {wrong.detail}",
    )


def propagator_agreement(p: ModelParams, taus=(Fraction(0), Fraction(1, 2), Fraction(1),
                                               Fraction(2), Fraction(3)),
                         tol: float = 1e-7) -> CheckResult:
    """Spectral propagator against the Jacobi-eigensolver propagator at
    several times, max absolute entry difference."""
    h = assemble(p)
    evals, evecs = jacobi_eigensystem(h.matrix)
    dev = 0.0
    for tau in taus:
        t = EvolutionTime.pi(tau)
        u_spec = propagator_matrix(p, t)
        u_orac = (evecs * np.exp(-1j * t.value * evals)) @ evecs.T
        dev = max(dev, float(np.abs(u_spec - u_orac).max()))
    return _result("propagator-agreement", dev, tol)


def unitarity(p: ModelParams, taus=(Fraction(1, 3), Fraction(1), Fraction(7, 2)),
              tol: float = 1e-8) -> CheckResult:
    dev = 0.0
    for tau in taus:
        u = propagator_matrix(p, EvolutionTime.pi(tau))
        dev = max(dev, float(np.abs((np.abs(u) ** 2).sum(axis=1) - 1.0).max()))
    return _result("unitarity", dev, tol)


def transfer_claims(n: int, tol: float = 1e-6) -> list[CheckResult]:
    """Family members scaled to size n: mirror transfer at the family period,
    column-confined revival at half of an even period."""
    out = []
    for spec in (PstFamilySpec(ODD_PERIOD, 1, 26, 17), PstFamilySpec(EVEN_PERIOD, 1, 19, 11)):
        params = family_params(spec, n)
        if not isinstance(params, ModelParams):
            out.append(CheckResult(f"transfer-{spec.family}", False,
                                   f"rejected: {params.violations}"))
            continue
        rep = certify_pst(params, family_time(spec), tol)
        out.append(
            CheckResult(
                f"transfer-{spec.family}",
                rep.kind == "PST" and rep.phase_condition_satisfied,
                f"min mirror modulus {rep.min_modulus():.12f}",
            )
        )
        if spec.family == EVEN_PERIOD:
            half = family_time(spec).half()
            fr = detect_fractional_revival(params, half, tol)
            out.append(
                CheckResult(
                    "fractional-revival",
                    fr.kind == "FR",
                    f"column probability {fr.column_probability:.12f}, "
                    f"support {sum(1 for _, m in fr.targets if m >= tol)}",
                )
            )
    return out


def collision_report(p: ModelParams) -> CheckResult:
    """Informational: exact eigenvalue degeneracies over the grid."""
    groups = eigenvalue_collisions(p)
    detail = "none" if not groups else f"{len(groups)} degenerate group(s): {groups}"
    return CheckResult("eigenvalue-collisions", True, detail)


def run_suite(level: str = "quick") -> list[CheckResult]:
    """quick: identity suites at N = 4.  full: N = 6 and N = 8 orthogonality
    plus propagator agreement and transfer claims at the reference sizes."""
    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    out: list[CheckResult] = []
    sizes = (4,) if level == "quick" else (6, 8)
    base = 4 if level == "quick" else 6
    for abc in (FIG1_ABC, FIG2_ABC):
        for n in sizes:
            p = ModelParams(*abc, n)
            out.append(univariate_orthogonality(p))
            out.append(bivariate_orthogonality(p))
            if p.is_valid:  # the remaining identities need the positivity regime
                out.append(univariate_recurrence(p))
                out.append(recurrences(p))
                out.append(eigvec_orthogonality(p))
                out.append(eigen_relation(p))
                out.append(coupling_variant_fails(p))
        pb = ModelParams(*abc, base)
        out.append(unitarity(pb))
        out.append(propagator_agreement(pb))
        out.append(collision_report(pb))
    out.extend(transfer_claims(base))
    return out
