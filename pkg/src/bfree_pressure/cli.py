"""Command-line front end: ``bfree-pressure <command> [options]``.

Every command prints one report (JSON by default, ``--output csv`` or
``pretty`` otherwise). Exit status is 0 on success, 1 on a computation
error (reported as ``{"error": {"kind": ..., "detail": ...}}``) or a failed
``verify`` suite, and 2 on a usage error.
"""

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import numpy as np

from .config import RunConfig, configured
from .errors import PressureError
from .mirsky import mirsky_cylinder, mirsky_sweep
from .numtheory import (
    ModulusSet,
    bfree_density,
    density_sweep,
    format_rational,
    is_pairwise_coprime,
    lcm_of,
    multiples_density,
    reciprocal_sum,
    truncate,
)
from .oracle import LanguageSpec, oracle_compare, single_period_pressure
from .pressure import (
    entropy_value,
    equilibrium_cylinder,
    equilibrium_identity_check,
    lin_chen_2inB,
    pressure_4local_2inB,
    pressure_bfree_hereditary,
    pressure_full_shift,
    pressure_one_hereditary,
    pressure_one_sandwich,
    pressure_periodic_sandwich,
    tempo_correction,
)
from .transfer import Potential1, Potential2, Potential4, build_transfer, partition_Z
from .words import CylinderPattern, PeriodicWord, eta_stream, eta_word, sandwich_marginals, sandwich_pair

__all__ = ["main", "dispatch", "emit_report", "build_parser"]


class Report:
    """Command output: a JSON-able dict plus optional tabular rows for CSV."""

    def __init__(self, data, rows=None, ok=True):
        self.data = data
        self.rows = rows
        self.ok = ok


def _frac(q):
    return {"value": format_rational(q), "float": float(q)}


def _json_default(obj):
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def emit_report(report, fmt="json"):
    """Serialize a Report (or a plain dict) to text."""
    if not isinstance(report, Report):
        report = Report(report)
    if fmt == "json":
        return json.dumps(report.data, default=_json_default) + "\n"
    if fmt == "pretty":
        return json.dumps(report.data, default=_json_default, indent=2) + "\n"
    if fmt == "csv":
        rows = report.rows
        if rows is None:
            rows = [{k: v for k, v in report.data.items() if not isinstance(v, (dict, list))}]
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({k: _json_default(v) if isinstance(v, (Fraction, np.generic)) else v
                                 for k, v in row.items()})
        return buf.getvalue()
    raise ValueError(f"unknown output format {fmt!r}")


def _int_list(text):
    return [int(t) for t in text.split(",") if t.strip()]


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise ValueError("missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _pair(args):
    _need(args, "w", "x")
    return sandwich_pair(PeriodicWord.parse(args.w), PeriodicWord.parse(args.x))


def _sweep_rows(points):
    return [{"K": K, "value": format_rational(v), "float": float(v)} for K, v in points]


# ---- commands ---------------------------------------------------------------


def cmd_density(args):
    bset = ModulusSet.parse(args.set)
    d = bfree_density(bset)
    S = reciprocal_sum(bset)
    data = {
        "set": str(bset),
        "d_free": format_rational(d),
        "d_free_float": float(d),
        "d_multiples": format_rational(multiples_density(bset)),
        "S": format_rational(S),
        "S_float": float(S),
        "pairwise_coprime": is_pairwise_coprime(bset),
    }
    rows = None
    if args.Ks:
        rows = _sweep_rows(density_sweep(bset, _int_list(args.Ks)))
        data["sweep"] = rows
    return Report(data, rows)


def cmd_eta(args):
    bset = ModulusSet.parse(args.set)
    hi = args.hi if args.hi is not None else (lcm_of(bset) if bset.moduli else 1)
    bits = eta_stream(bset, args.lo, hi)
    data = {"set": str(bset), "lo": args.lo, "hi": hi, "bits": "".join(map(str, bits.tolist()))}
    return Report(data)


def cmd_mirsky(args):
    bset = ModulusSet.parse(args.set)
    pattern = CylinderPattern.parse(args.pattern)
    data = {"set": str(bset), "pattern": str(pattern), "method": args.method}
    if args.Ks:
        sweep = mirsky_sweep(bset, pattern, _int_list(args.Ks), args.method)
        rows = [{"K": K, "value": v, "float": f, "spread": sp} for K, v, f, sp in sweep.rows()]
        data["sweep"] = rows
        data["spread"] = format_rational(sweep.spread)
        return Report(data, rows)
    data.update(_frac(mirsky_cylinder(bset, pattern, args.method)))
    return Report(data)


def cmd_transfer(args):
    phi = Potential2.parse(args.phi)
    td = build_transfer(phi, args.precision_bits)
    n_max = int(args.n) if args.n else 8
    rows = []
    for n in range(1, n_max + 1):
        row = {"n": n}
        for a in (0, 1):
            for b in (0, 1):
                row[f"Z{a}{b}"] = float(partition_Z(td, a, b, n, "power"))
        rows.append(row)
    data = {"phi": phi.to_json(), **td.to_json(), "Z": rows}
    if args.precision_bits:
        data["precision_bits"] = args.precision_bits
    return Report(data, rows)


def _one_local_report(args):
    phi = Potential1.parse(args.phi)
    if args.set is not None:
        return pressure_one_hereditary(bfree_density(ModulusSet.parse(args.set)), phi)
    if args.nu1 is not None:
        return pressure_one_hereditary(Fraction(args.nu1), phi)
    if args.w is not None or args.x is not None:
        return pressure_one_sandwich(*sandwich_marginals(_pair(args)), phi)
    if args.rho is not None:
        rho = dict(tok.split(":") for tok in args.rho.split(","))
        return pressure_one_sandwich(Fraction(rho.get("00", 0)), Fraction(rho.get("11", 0)),
                                     Fraction(rho.get("01", 0)), phi)
    raise ValueError("pressure one needs --set, --nu1, --w/--x or --rho")


def cmd_pressure(args):
    kind = args.kind
    if kind == "one":
        _need(args, "phi")
        report = _one_local_report(args)
    elif kind == "periodic":
        _need(args, "phi")
        report = pressure_periodic_sandwich(_pair(args), Potential2.parse(args.phi))
    elif kind == "bfree":
        _need(args, "set", "phi")
        bset, phi = ModulusSet.parse(args.set), Potential2.parse(args.phi)
        if args.Ks:
            rows = [{"K": K, "value": pressure_bfree_hereditary(truncate(bset, K), phi).value}
                    for K in _int_list(args.Ks)]
            vals = [r["value"] for r in rows]
            data = {"set": str(bset), "phi": phi.to_json(), "method": "bfree_hereditary",
                    "sweep": rows, "spread": max(vals) - min(vals)}
            return Report(data, rows)
        report = pressure_bfree_hereditary(bset, phi)
    elif kind == "linchen":
        _need(args, "set")
        report = lin_chen_2inB(ModulusSet.parse(args.set), args.a00, args.a01, args.a1)
    elif kind == "fourlocal":
        _need(args, "set", "phi4")
        report = pressure_4local_2inB(ModulusSet.parse(args.set), Potential4.parse(args.phi4))
    elif kind == "full":
        _need(args, "phi")
        report = pressure_full_shift(Potential2.parse(args.phi))
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(kind)
    data = report.to_json()
    row = {"value": data["value"], "method": data["method"]}
    if report.decomposition is not None:
        row.update(report.decomposition.to_json())
    return Report(data, [row])


def cmd_entropy(args):
    if args.set is not None:
        bset = ModulusSet.parse(args.set)
        h = entropy_value("hereditary", bset=bset)
        data = {"kind": "hereditary", "set": str(bset)}
    elif args.nu1 is not None:
        h = entropy_value("hereditary", nu1=Fraction(args.nu1))
        data = {"kind": "hereditary", "nu1": args.nu1}
    elif args.w is not None or args.x is not None:
        pair = _pair(args)
        h = entropy_value("sandwich", pair=pair)
        data = {"kind": "sandwich", "w": str(pair.w), "x": str(pair.x)}
    elif args.rho01 is not None:
        h = entropy_value("sandwich", rho01=Fraction(args.rho01))
        data = {"kind": "sandwich", "rho01": args.rho01}
    else:
        raise ValueError("entropy needs --set, --nu1, --w/--x or --rho01")
    data["entropy"] = format_rational(h)
    data["float"] = float(h)
    data["units"] = "bits/symbol"
    return Report(data)


def cmd_equilibrium(args):
    _need(args, "phi")
    phi = Potential1.parse(args.phi)
    p = phi.gibbs_p
    if args.set is not None:
        bset = ModulusSet.parse(args.set)
        word = eta_word(bset)
        report = pressure_one_hereditary(bfree_density(bset), phi)
        data = {"set": str(bset), "residual": equilibrium_identity_check(bset, phi)}
    elif args.x is not None:
        word = PeriodicWord.parse(args.x)
        nu1 = Fraction(sum(word.bits), word.period)
        report = pressure_one_hereditary(nu1, phi)
        data = {"x": str(word)}
    else:
        raise ValueError("equilibrium needs --set or --x")
    data.update({"p": p, "pressure": report.value, "phi": phi.to_json()})
    patterns = args.pattern or ["0:1"]
    rows = []
    for text in patterns:
        pat = CylinderPattern.parse(text)
        rows.append({"pattern": str(pat), "mu": equilibrium_cylinder(word, p, pat)})
    data["cylinders"] = rows
    return Report(data, rows)


def cmd_tempo(args):
    _need(args, "set", "phi")
    phi = Potential2.parse(args.phi)
    rows = []
    for text in args.set:
        for chunk in text.split(";"):
            rec = tempo_correction(ModulusSet.parse(chunk), phi, args.epsilon)
            rows.append(rec.to_json())
    data = {"phi": phi.to_json(), "epsilon": args.epsilon, "family": rows,
            "max_ratio": max(r["ratio"] for r in rows)}
    return Report(data, rows)


def _random_phis(count, seed, scale=2.0):
    rng = np.random.default_rng(seed)
    return [Potential2(rng.uniform(-scale, scale, (2, 2))) for _ in range(count)]


# older suite names, kept so existing scripts keep working
SUITE_ALIASES = {"okresowe": "sandwich", "w11": "hereditary"}


def cmd_verify(args):
    suite = SUITE_ALIASES.get(args.suite, args.suite)
    rows = []
    if suite == "sandwich":
        pair = _pair(args)
        schedule = _int_list(args.n) if args.n else [9, 30, 90]
        for phi in _random_phis(args.random_phis, args.seed):
            target = pressure_periodic_sandwich(pair, phi)
            cmp_ = oracle_compare(target, LanguageSpec.sandwich(pair), phi, schedule, method="dp")
            ok = cmp_.passed
            if not pair.is_full_shift:
                ok = ok and abs(single_period_pressure(pair, phi) - target.value) <= 1e-9
            rows.append({"phi": json.dumps(phi.to_json(), sort_keys=True), "target": target.value, "pass": ok})
    elif suite == "hereditary":
        _need(args, "set")
        bset = ModulusSet.parse(args.set)
        schedule = _int_list(args.n) if args.n else [6, 12, 24]
        phis = [Potential2.parse(args.phi)] if args.phi else _random_phis(args.random_phis, args.seed, 1.0)
        for phi in phis:
            target = pressure_bfree_hereditary(bset, phi)
            cmp_ = oracle_compare(target, LanguageSpec.hereditary(bset), phi, schedule)
            rows.append({"phi": json.dumps(phi.to_json(), sort_keys=True), "target": target.value,
                         "pass": cmp_.passed})
    elif suite == "fullshift":
        schedule = _int_list(args.n) if args.n else [4, 8, 12]
        phis = [Potential2.parse(args.phi)] if args.phi else _random_phis(args.random_phis, args.seed, 1.0)
        for phi in phis:
            target = pressure_full_shift(phi)
            cmp_ = oracle_compare(target, LanguageSpec.full_shift(), phi, schedule)
            rows.append({"phi": json.dumps(phi.to_json(), sort_keys=True), "target": target.value,
                         "pass": cmp_.passed})
    elif suite == "fourlocal":
        bset = ModulusSet.parse(args.set or "2,3")
        n = _int_list(args.n)[0] if args.n else 20
        rng = np.random.default_rng(args.seed)
        for _ in range(args.random_phis):
            phi = Potential4(rng.uniform(-1, 1, 16))
            target = pressure_4local_2inB(bset, phi)
            cmp_ = oracle_compare(target, LanguageSpec.hereditary(bset), phi, [n])
            rows.append({"phi": json.dumps(phi.to_json(), sort_keys=True), "target": target.value,
                         "pass": cmp_.passed})
    else:  # pragma: no cover
        raise ValueError(suite)
    ok = all(r["pass"] for r in rows)
    data = {"suite": suite, "seed": args.seed, "cases": len(rows), "pass": ok, "results": rows}
    return Report(data, rows, ok=ok)


COMMANDS = {
    "density": cmd_density,
    "eta": cmd_eta,
    "mirsky": cmd_mirsky,
    "transfer": cmd_transfer,
    "pressure": cmd_pressure,
    "entropy": cmd_entropy,
    "equilibrium": cmd_equilibrium,
    "tempo": cmd_tempo,
    "verify": cmd_verify,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=["json", "csv", "pretty"], default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--lcm-cap", type=int, default=None)
    common.add_argument("--enum-cap", type=int, default=None)
    common.add_argument("--precision-bits", type=int, default=None)
    common.add_argument("--serial", action="store_true")

    parser = argparse.ArgumentParser(prog="bfree-pressure", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("density", parents=[common], help="densities and reciprocal sum of a modulus set")
    p.add_argument("--set", required=True)
    p.add_argument("--Ks")

    p = sub.add_parser("eta", parents=[common], help="emit a segment of eta")
    p.add_argument("--set", required=True)
    p.add_argument("--lo", type=int, default=0)
    p.add_argument("--hi", type=int)

    p = sub.add_parser("mirsky", parents=[common], help="Mirsky cylinder probability")
    p.add_argument("--set", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--method", choices=["auto", "exact", "coprime"], default="auto")
    p.add_argument("--Ks")

    p = sub.add_parser("transfer", parents=[common], help="transfer matrix eigen-data and Z table")
    p.add_argument("--phi", required=True)
    p.add_argument("--n")

    p = sub.add_parser("pressure", parents=[common], help="closed-form pressure")
    p.add_argument("kind", choices=["one", "periodic", "bfree", "linchen", "fourlocal", "full"])
    p.add_argument("--set")
    p.add_argument("--w")
    p.add_argument("--x")
    p.add_argument("--phi")
    p.add_argument("--phi4")
    p.add_argument("--nu1")
    p.add_argument("--rho")
    p.add_argument("--a00", type=float, default=0.0)
    p.add_argument("--a01", type=float, default=0.0)
    p.add_argument("--a1", type=float, default=0.0)
    p.add_argument("--Ks")

    p = sub.add_parser("entropy", parents=[common], help="topological entropy")
    p.add_argument("--set")
    p.add_argument("--nu1")
    p.add_argument("--w")
    p.add_argument("--x")
    p.add_argument("--rho01")

    p = sub.add_parser("equilibrium", parents=[common], help="equilibrium cylinders and identity residual")
    p.add_argument("--set")
    p.add_argument("--x")
    p.add_argument("--phi")
    p.add_argument("--pattern", action="append")

    p = sub.add_parser("tempo", parents=[common], help="correction term over a family of coprime sets")
    p.add_argument("--set", action="append", help="repeat, or separate sets with ';'")
    p.add_argument("--phi")
    p.add_argument("--epsilon", type=float, default=1.0)

    p = sub.add_parser("verify", parents=[common], help="oracle comparison suites")
    p.add_argument("suite", choices=["sandwich", "hereditary", "fullshift", "fourlocal", *SUITE_ALIASES])
    p.add_argument("--set")
    p.add_argument("--w")
    p.add_argument("--x")
    p.add_argument("--phi")
    p.add_argument("--n")
    p.add_argument("--random-phis", type=int, default=5)
    return parser


def dispatch(argv, stdout=None, environ=None):
    """Run one command; returns the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = RunConfig.from_env(
            environ,
            lcm_cap=args.lcm_cap,
            enum_cap=args.enum_cap,
            output=args.output,
            seed=args.seed,
            precision_bits=args.precision_bits,
        )
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"bfree-pressure: error: {exc}", file=sys.stderr)
        return 2
    with configured(config, serial=True):
        try:
            report = COMMANDS[args.command](args)
        except (PressureError, ValueError, ArithmeticError) as exc:
            kind = exc.kind if isinstance(exc, PressureError) else type(exc).__name__
            stdout.write(json.dumps({"error": {"kind": kind, "detail": str(exc)}}) + "\n")
            return 1
        stdout.write(emit_report(report, config.output))
    return 0 if report.ok else 1


def main(argv=None):
    sys.exit(dispatch(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":  # pragma: no cover
    main()
