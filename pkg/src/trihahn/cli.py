"""Command-line front end.

Verbs:

* ``validate``  -- exact parameter-regime checks plus transfer-family membership
* ``simulate``  -- amplitude records over sites and times (JSON or CSV)
* ``scan``      -- enumerate family members, certify mirror transfer for each
* ``verify``    -- run the numerical self-check suites (quick / full)
* ``dump``      -- couplings and 1-excitation matrix as JSON

Times are rational multiples of pi when written as exact rationals ("3",
"1/2") and plain reals when written with a decimal point or exponent.
Model parameters may come from flags or from an INI config file (flags win);
see the README for the config keys.

Exit codes: 0 ok, 1 validation/parameter failure, 2 numerical-invariant
failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import configparser
import sys

from .checks import run_suite
from .dynamics import CSV_HEADER, amplitude_grid
from .lattice import assemble, validate_params
from .model import EvolutionTime, ModelParams, Site, json_dumps, parse_rational
from .transfer import (EVEN_PERIOD, ODD_PERIOD, FamilyRejection, PstFamilySpec,
                       certify_pst, detect_fractional_revival, family_params,
                       family_time, identify_family, phase_condition_parts)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_config(path: str) -> configparser.ConfigParser:
    cfg = configparser.ConfigParser()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg.read_file(fh)
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}", EXIT_IO)
    return cfg


def _cfg_get(cfg, section: str, key: str):
    if cfg is not None and cfg.has_option(section, key):
        return cfg.get(section, key)
    return None


def _resolve_params(args, cfg) -> ModelParams:
    vals = {}
    for key in ("a", "b", "c"):
        flag = getattr(args, key, None)
        raw = flag if flag is not None else _cfg_get(cfg, "model", key)
        if raw is None:
            raise CliError(f"missing model parameter {key!r}", EXIT_INVALID)
        try:
            vals[key] = parse_rational(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise CliError(f"bad rational for {key!r}: {exc}", EXIT_INVALID)
    n_raw = args.n if getattr(args, "n", None) is not None else _cfg_get(cfg, "model", "n")
    if n_raw is None:
        raise CliError("missing lattice size n", EXIT_INVALID)
    return ModelParams(vals["a"], vals["b"], vals["c"], int(n_raw))


def _resolve_source(args, cfg) -> Site:
    raw = args.source if getattr(args, "source", None) is not None else _cfg_get(cfg, "run", "source")
    if raw is None:
        raw = "0,0"
    try:
        i, j = (int(t) for t in raw.split(","))
    except ValueError:
        raise CliError(f"bad site {raw!r}; expected 'i,j'", EXIT_INVALID)
    return Site(i, j)


def _resolve_times(args, cfg) -> list[EvolutionTime]:
    raw = args.times if getattr(args, "times", None) is not None else _cfg_get(cfg, "run", "times")
    if not raw:
        raise CliError("missing times (e.g. --times '0,1,2,3')", EXIT_INVALID)
    try:
        return [EvolutionTime.parse(tok) for tok in raw.split(",") if tok.strip()]
    except ValueError as exc:
        raise CliError(f"bad time list {raw!r}: {exc}", EXIT_INVALID)


def _write_output(path, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO)


def cmd_validate(args, cfg) -> int:
    p = _resolve_params(args, cfg)
    report = validate_params(p)
    print(f"parameters: a={p.a} b={p.b} c={p.c} N={p.N}")
    print(f"c > 0:      {'ok' if p.c > 0 else 'VIOLATED'}")
    print(f"a - b > N:  {'ok' if p.a - p.b > p.N else 'VIOLATED'} (a - b = {p.a - p.b})")
    print(f"b - c > N:  {'ok' if p.b - p.c > p.N else 'VIOLATED'} (b - c = {p.b - p.c})")
    for spec in identify_family(p):
        t = family_time(spec)
        print(f"family: {spec.family} (k={spec.k}, p={spec.p}, q={spec.q}), "
              f"transfer period T = {t.describe()}")
        half = t.half()
        x_ok, y_ok = phase_condition_parts(p, half)
        if x_ok and not y_ok:
            print(f"  revival expected at T/2 = {half.describe()} "
                  "(column phases collapse, row phases do not)")
    if not report.ok:
        for v in report.violations:
            print(f"violation: {v}")
        return EXIT_INVALID
    return EXIT_OK


def cmd_simulate(args, cfg) -> int:
    p = _resolve_params(args, cfg)
    if not p.is_valid:
        for v in p.violations():
            print(f"violation: {v}", file=sys.stderr)
        return EXIT_INVALID
    src = _resolve_source(args, cfg)
    times = _resolve_times(args, cfg)
    fmt = args.format or _cfg_get(cfg, "output", "format") or "csv"
    out_path = args.output or _cfg_get(cfg, "output", "path")
    grids = [amplitude_grid(p, src, t) for t in times]
    if fmt == "csv":
        lines = [CSV_HEADER]
        for g in grids:
            lines.extend(g.csv_rows())
        _write_output(out_path, "\n".join(lines))
    elif fmt == "json":
        doc = {
            "params": p.as_dict(),
            "source": [src.i, src.j],
            "records": [g.to_dict() for g in grids],
        }
        _write_output(out_path, json_dumps(doc))
    else:
        raise CliError(f"unknown format {fmt!r}", EXIT_INVALID)
    return EXIT_OK


def cmd_scan(args, cfg) -> int:
    n = int(args.n)
    fams = {"odd": [ODD_PERIOD], "even": [EVEN_PERIOD], "both": [ODD_PERIOD, EVEN_PERIOD]}[
        args.family
    ]
    rows = []
    failures = 0
    for family in fams:
        for k in range(1, args.k_max + 1):
            for pp in range(1, args.p_max + 1):
                for q in range(1, args.q_max + 1):
                    spec = PstFamilySpec(family, k, pp, q)
                    params = family_params(spec, n)
                    if isinstance(params, FamilyRejection):
                        continue
                    rep = certify_pst(params, family_time(spec), args.tol)
                    ok = rep.kind == "PST"
                    failures += 0 if ok else 1
                    rows.append(
                        {
                            "family": family, "k": k, "p": pp, "q": q,
                            "a": str(params.a), "b": str(params.b), "c": str(params.c),
                            "pst": ok, "min_mirror_modulus": rep.min_modulus(),
                        }
                    )
    if args.format == "json":
        _write_output(args.output, json_dumps({"n": n, "rows": rows}))
    else:
        lines = ["family,k,p,q,a,b,c,pst,min_mirror_modulus"]
        for r in rows:
            lines.append(
                f"{r['family']},{r['k']},{r['p']},{r['q']},{r['a']},{r['b']},{r['c']},"
                f"{'yes' if r['pst'] else 'no'},{r['min_mirror_modulus']:.17g}"
            )
        _write_output(args.output, "\n".join(lines))
    return EXIT_NUMERICAL if failures else EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(args.level)
    failures = [r for r in results if not r.passed]
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}")
    print(json_dumps({"level": args.level, "checks": len(results),
                      "failures": [r.name for r in failures]}))
    return EXIT_NUMERICAL if failures else EXIT_OK


def cmd_dump(args, cfg) -> int:
    p = _resolve_params(args, cfg)
    if not p.is_valid:
        for v in p.violations():
            print(f"violation: {v}", file=sys.stderr)
        return EXIT_INVALID
    h = assemble(p)
    _write_output(args.output, json_dumps(h.to_dict()))
    return EXIT_OK


def cmd_revival(args, cfg) -> int:
    # convenience wrapper around detect_fractional_revival for ad-hoc use
    p = _resolve_params(args, cfg)
    if not p.is_valid:
        return EXIT_INVALID
    t = EvolutionTime.parse(args.time)
    rep = detect_fractional_revival(p, t, args.tol)
    _write_output(args.output, json_dumps(rep.to_dict()))
    return EXIT_OK


def _add_model_flags(sp):
    sp.add_argument("--a", help="rational, e.g. 53/3")
    sp.add_argument("--b", help="rational, e.g. 34/3")
    sp.add_argument("--c", help="rational, e.g. 1/6")
    sp.add_argument("--n", type=int, help="lattice size N")
    sp.add_argument("--config", help="INI config file; flags override it")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="trihahn",
        description="Triangular-lattice single-excitation dynamics with "
                    "dual-Hahn couplings: validation, simulation, transfer "
                    "certification.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check the parameter regime and family membership")
    _add_model_flags(sp)

    sp = sub.add_parser("simulate", help="amplitude records over sites and times")
    _add_model_flags(sp)
    sp.add_argument("--source", help="source site 'i,j' (default 0,0)")
    sp.add_argument("--times", help="comma list; rationals mean multiples of pi")
    sp.add_argument("--format", choices=("csv", "json"))
    sp.add_argument("--output", help="output path (default stdout)")

    sp = sub.add_parser("scan", help="enumerate family members and certify transfer")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--family", choices=("odd", "even", "both"), default="both")
    sp.add_argument("--k-max", type=int, default=2)
    sp.add_argument("--p-max", type=int, default=60)
    sp.add_argument("--q-max", type=int, default=40)
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--output", help="output path (default stdout)")

    sp = sub.add_parser("verify", help="run the numerical self-check suites")
    sp.add_argument("--level", choices=("quick", "full"), default="quick")

    sp = sub.add_parser("dump", help="couplings and 1-excitation matrix as JSON")
    _add_model_flags(sp)
    sp.add_argument("--output", help="output path (default stdout)")

    sp = sub.add_parser("revival", help="column-revival report at one time")
    _add_model_flags(sp)
    sp.add_argument("--time", required=True, help="time (rational = multiple of pi)")
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--output", help="output path (default stdout)")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load_config(args.config) if getattr(args, "config", None) else None
        if args.command == "validate":
            return cmd_validate(args, cfg)
        if args.command == "simulate":
            return cmd_simulate(args, cfg)
        if args.command == "scan":
            return cmd_scan(args, cfg)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "dump":
            return cmd_dump(args, cfg)
        if args.command == "revival":
            return cmd_revival(args, cfg)
        raise CliError(f"unknown command {args.command}", EXIT_INVALID)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
