"""Command-line entry point: ``heckeroot <command> ...``.

Exit codes: 0 success, 1 computation error or failed self-check, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from heckeroot import __version__, experiments, primes, selftest
from heckeroot.config import RunConfig
from heckeroot.curves import CurveClass, normalize_d
from heckeroot.errors import HeckeRootError
from heckeroot.gaussint import GaussInt, classify_prime, expand_base_1pi, odd_places
from heckeroot.hecke import count_points, expected_count, hecke_at_prime
from heckeroot.rootnum import (
    as_place,
    global_root_number,
    global_root_ratio,
    local_root_number,
    local_root_numbers,
    local_root_oracle,
)
from heckeroot.symbols import quartic_symbol, quartic_symbol_composite, quartic_symbol_fast

SCHEMA = "1"
# options whose values may start with '-', e.g. --d -1+2i
GAUSS_OPTIONS = ("--d", "--alpha", "--beta", "--place", "--prime", "--xi")


class Output:
    """A command result: a JSON document plus an optional CSV table."""

    def __init__(self, doc: dict, header=None, rows=None, ok: bool = True):
        self.doc = doc
        self.header = header
        self.rows = rows
        self.ok = ok

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            if self.header is None:
                raise HeckeRootError("this command has no CSV form; use --format json")
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.header)
            w.writerows(self.rows)
            return buf.getvalue()
        return json.dumps(self.doc, indent=2, sort_keys=True) + "\n"


def _gauss(text: str) -> GaussInt:
    try:
        return GaussInt.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _x_list(text: str) -> list[float]:
    try:
        xs = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad X list {text!r}") from None
    return [int(x) if x.is_integer() else x for x in xs]


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad complex number {text!r}") from None


def _base(doc: dict, cfg: RunConfig, command: str) -> dict:
    out = {"schema": SCHEMA, "command": command, "precision": cfg.precision}
    out.update(doc)
    return out


# ---------------------------------------------------------------- commands


def cmd_symbol(args, cfg: RunConfig) -> Output:
    alpha, beta = args.alpha, args.beta
    try:
        classify_prime(beta)
        is_prime = True
    except HeckeRootError:
        is_prime = False
    doc = {"alpha": str(alpha), "beta": str(beta)}
    ok = True
    if args.mode in ("oracle", "both"):
        s = quartic_symbol(alpha, beta) if is_prime else quartic_symbol_composite(alpha, beta)
        doc["oracle"] = {"value": str(s), "k": s.k}
    if args.mode in ("fast", "both"):
        f = quartic_symbol_fast(alpha, beta)
        doc["fast"] = {"value": str(f), "k": f.k}
    if args.mode == "both":
        ok = doc["oracle"]["k"] == doc["fast"]["k"]
        doc["agree"] = ok
    rows = [[str(alpha), str(beta), m, doc[m]["value"], doc[m]["k"]] for m in ("oracle", "fast") if m in doc]
    return Output(_base(doc, cfg, "symbol"), ["alpha", "beta", "mode", "value", "k"], rows, ok)


def cmd_curve(args, cfg: RunConfig) -> Output:
    dn, x = normalize_d(args.d)
    c = CurveClass.from_d(dn)
    doc = c.to_json()
    doc.update({"input": str(args.d), "x": str(x), "digits": list(expand_base_1pi(c.d, 6))})
    rows = [[str(args.d), str(c.d), str(x), c.kodaira, c.f2, ";".join(f"{k}:{v}" for k, v in doc["odd_conductor"].items())]]
    return Output(_base(doc, cfg, "curve"), ["input", "d", "x", "kodaira", "f2", "odd_conductor"], rows)


def cmd_hecke(args, cfg: RunConfig) -> Output:
    place = classify_prime(args.prime)
    chi = hecke_at_prime(args.d, place)
    count = count_points(args.d, place, cap=cfg.point_count_cap)
    expected = expected_count(args.d, place)
    doc = {
        "d": str(args.d),
        "place": str(place),
        "kind": place.kind,
        "residue_field_size": place.norm,
        "chi": str(chi.value),
        "count": count,
        "expected": expected,
        "agree": count == expected,
    }
    rows = [[doc[k] for k in ("d", "place", "kind", "chi", "count", "expected", "agree")]]
    return Output(_base(doc, cfg, "hecke"), ["d", "place", "kind", "chi", "count", "expected", "agree"], rows, count == expected)


def cmd_rootnum(args, cfg: RunConfig) -> Output:
    c = CurveClass.from_d(args.d)
    if args.place is not None:
        place = as_place(args.place)
        ws = [local_root_number(c, place, cfg.precision)]
    else:
        ws = local_root_numbers(c, cfg.precision)
    places = []
    ok = True
    for w in ws:
        entry = w.to_json()
        entry["certificate"] = w.describe()
        if args.oracle and w.kind in ("degree_one", "degree_two") and c.valuation(as_place(w.place)):
            o = local_root_oracle(c, as_place(w.place), cfg.precision)
            agree = bool(abs(o - w.numeric) < 1e-9)
            entry["oracle_agrees"] = agree
            ok &= agree
        places.append(entry)
    ratio = global_root_ratio(c, cfg.precision)
    doc = {
        "d": str(c.d),
        "input": str(args.d),
        "kodaira_at_1+i": c.kodaira,
        "places": places,
        "global_ratio": dict(ratio.to_json(), certificate=ratio.describe()),
    }
    if c.good_at_two:
        w = global_root_number(c, cfg.precision)
        doc["global"] = dict(w.to_json(), certificate=w.describe())
    header = ["place", "kind", "w_re", "w_im", "zeta_exponent", "method", "precision"]
    rows = [[p[k] for k in header] for p in places + [doc["global_ratio"]]]
    return Output(_base(doc, cfg, "rootnum"), header, rows, ok)


def cmd_selftest(args, cfg: RunConfig) -> Output:
    checks = selftest.run(quick=args.quick)
    ok = all(ch.passed for ch in checks)
    doc = {"quick": args.quick, "all_passed": ok, "checks": [ch.to_json() for ch in checks]}
    rows = [[ch.name, ch.passed, ch.detail] for ch in checks]
    return Output(_base(doc, cfg, "selftest"), ["check", "passed", "detail"], rows, ok)


def exp_density(args, cfg: RunConfig) -> Output:
    thetas = [2 * math.pi * k / args.grid for k in range(args.grid)]
    ws = [experiments.density_scan(t, args.eps, cfg.norm_bound, cfg.precision) for t in thetas]
    ok = all(w.distance < args.eps for w in ws)
    doc = {"eps": args.eps, "grid": args.grid, "norm_bound": cfg.norm_bound, "witnesses": [w.to_json() for w in ws], "checks_passed": ok}
    header = ["theta", "d", "place", "m", "w_re", "w_im", "distance", "precision"]
    rows = [[f"{w.theta:.17g}", str(w.d), str(w.place), w.m, f"{complex(w.value.numeric).real:.17g}", f"{complex(w.value.numeric).imag:.17g}", f"{w.distance:.17g}", cfg.precision] for w in ws]
    return Output(_base(doc, cfg, "experiment density"), header, rows, ok)


def exp_nusym(args, cfg: RunConfig) -> Output:
    rows, ok = [], True
    for v in odd_places(cfg.norm_bound if args.norm_bound_set else 2000):
        if v.kind != "degree_one" or not v.generator.is_3_plus_2i_mod_4():
            continue
        table = experiments.unit_twist_table(v.generator, cfg.precision)
        is_mu4 = sorted(t.k for t in table) == [0, 1, 2, 3]
        ok &= is_mu4
        rows.append([str(v.generator), v.norm] + [str(t) for t in table] + [is_mu4])
    doc = {"rows": [dict(zip(["pi", "norm", "m0", "m1", "m2", "m3", "is_mu4"], r)) for r in rows], "checks_passed": ok}
    return Output(_base(doc, cfg, "experiment nusym"), ["pi", "norm", "m0", "m1", "m2", "m3", "is_mu4"], rows, ok)


def exp_manytheta(args, cfg: RunConfig) -> Output:
    ws = experiments.many_theta_witnesses(args.d, args.place, args.count, precision=cfg.precision)
    certs = {(w.value.zeta, w.value.angles) for w in ws}
    ok = len({w.curve.d for w in ws}) == args.count and len(certs) == 1
    header = ["d", "twist_by", "place", "w_re", "w_im", "certificate", "precision"]
    rows = [[str(w.curve.d), str(w.twist_by), w.value.place, w.value.to_json()["w_re"], w.value.to_json()["w_im"], w.value.describe(), cfg.precision] for w in ws]
    doc = {"base_d": str(args.d), "place": str(args.place), "witnesses": [dict(zip(header, r)) for r in rows], "checks_passed": ok}
    return Output(_base(doc, cfg, "experiment manytheta"), header, rows, ok)


def exp_average(args, cfg: RunConfig) -> Output:
    rep = experiments.average_sweep(
        args.d, args.X, include_unit=cfg.include_unit_Q, precision=cfg.precision, workers=cfg.threads
    )
    ok = all(r.abs_mean <= 1 for r in rep.rows)
    doc = dict(rep.to_json(), checks_passed=ok)
    header = ["X", "size", "mean_re", "mean_im", "abs_mean", "precision"]
    rows = list(csv.reader(io.StringIO(rep.to_csv())))[1:]
    return Output(_base(doc, cfg, "experiment average"), header, rows, ok)


def exp_mertens(args, cfg: RunConfig) -> Output:
    fit = experiments.mertens_fit(args.xi, args.a, args.m, args.X)
    ok = abs(fit.slope - fit.predicted) <= 0.15
    doc = dict(fit.to_json(), checks_passed=ok)
    header = ["xi", "a", "m", "X", "slope", "predicted", "product_abs"]
    rows = [[str(args.xi), args.a, args.m, args.X, f"{fit.slope:.17g}", f"{fit.predicted:.17g}", f"{abs(fit.product):.17g}"]]
    return Output(_base(doc, cfg, "experiment mertens"), header, rows, ok)


# ---------------------------------------------------------------- parser


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--precision", type=int, help="working precision in decimal digits (>= 15)")
    p.add_argument("--norm-bound", type=int, help="search bound on prime norms")
    p.add_argument("--threads", type=int, help="worker processes for sweeps")
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), help="output format (default json, or from --out suffix)")
    p.add_argument("--exclude-unit-Q", action="store_true", default=None, help="drop Q = 1 from the family Q(X)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="heckeroot", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("symbol", parents=[common], help="quartic residue symbol (alpha/beta)_4")
    p.add_argument("--alpha", type=_gauss, required=True)
    p.add_argument("--beta", type=_gauss, required=True)
    p.add_argument("--mode", choices=("oracle", "fast", "both"), default="oracle")
    p.set_defaults(func=cmd_symbol)

    p = sub.add_parser("curve", parents=[common], help="class, reduction at 1+i and conductor of E_d")
    p.add_argument("--d", type=_gauss, required=True)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("hecke", parents=[common], help="Hecke character value and point count at a prime")
    p.add_argument("--d", type=_gauss, required=True)
    p.add_argument("--prime", type=_gauss, required=True)
    p.set_defaults(func=cmd_hecke)

    p = sub.add_parser("rootnum", parents=[common], help="local root numbers and the global ratio")
    p.add_argument("--d", type=_gauss, required=True)
    p.add_argument("--place", help="a prime of Z[i] or 'archimedean'")
    p.add_argument("--oracle", action="store_true", help="also run the congruence-prime route")
    p.set_defaults(func=cmd_rootnum)

    p = sub.add_parser("selftest", parents=[common], help="run the invariant suite")
    p.add_argument("--quick", action="store_true")
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("experiment", help="reproduce the desk-scale experiments")
    esub = p.add_subparsers(dest="experiment", required=True)
    e = esub.add_parser("density", parents=[common], help="witnesses near a grid of angles")
    e.add_argument("--grid", type=int, default=16)
    e.add_argument("--eps", type=float, default=0.15)
    e.set_defaults(func=exp_density)
    e = esub.add_parser("nusym", parents=[common], help="unit-twist ratio tables")
    e.set_defaults(func=exp_nusym)
    e = esub.add_parser("manytheta", parents=[common], help="distinct curves sharing a local root number")
    e.add_argument("--d", type=_gauss, required=True)
    e.add_argument("--place", type=_gauss, required=True)
    e.add_argument("--count", type=int, default=10)
    e.set_defaults(func=exp_manytheta)
    e = esub.add_parser("average", parents=[common], help="mean of w/w_2 over Q(X)")
    e.add_argument("--d", type=_gauss, required=True)
    e.add_argument("--X", type=_x_list, default=[100, 1000, 10000])
    e.set_defaults(func=exp_average)
    e = esub.add_parser("mertens", parents=[common], help="exponent fit for prod (1 - xi/p)")
    e.add_argument("--xi", type=_complex, default=1 + 0j)
    e.add_argument("--a", type=int, default=3)
    e.add_argument("--m", type=int, default=4)
    e.add_argument("--X", type=float, default=1e7)
    e.set_defaults(func=exp_mertens)
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--d -1+2i`` into ``--d=-1+2i`` so argparse does not see an option."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in GAUSS_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-") and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def make_config(args) -> RunConfig:
    fmt = args.format
    if fmt is None and args.out and args.out.lower().endswith(".csv"):
        fmt = "csv"
    return RunConfig.from_env(
        precision=args.precision,
        norm_bound=args.norm_bound,
        threads=args.threads,
        out=args.out,
        format=fmt,
        include_unit_Q=False if args.exclude_unit_Q else None,
    )


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    args.norm_bound_set = getattr(args, "norm_bound", None) is not None
    try:
        cfg = make_config(args)
    except ValueError as exc:
        print(f"heckeroot: error: {exc}", file=sys.stderr)
        return 2
    primes.configure(seed=cfg.seed, rho_iterations=cfg.factor_rho_iterations)
    try:
        result = args.func(args, cfg)
        text = result.render(cfg.format)
    except (HeckeRootError, ValueError, ArithmeticError) as exc:
        print(f"heckeroot: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if result.ok else 1


if __name__ == "__main__":
    sys.exit(main())
