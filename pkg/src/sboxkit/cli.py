"""Command-line interface: build / analyze / diagnose / solve-l / verify / bench.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter
error, 3 desk-scale refusal.  Every file-producing run writes a manifest
(parameters + versions, no timestamps) beside its output, so identical
configurations reproduce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import analysis, diagnostics, formats, verify
from .analysis import SBoxTable, bct, bct_lqsl, boomerang_uniformity_lqsl, ddt, walsh
from .butterfly import (
    closed_butterfly_table,
    from_alpha_beta,
    from_theta,
    open_butterfly_table,
    univariate_table,
)
from .errors import ScaleRefusal, SboxkitError
from .gf2m import create_field
from .solvers import LInstance, classify_L, solve_L
from .tower import TowerCtx

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_SCALE = 3


def _hex(s: str) -> int:
    return int(s, 16)


def _tower(args) -> TowerCtx:
    modulus = args.modulus if args.modulus is not None else "default"
    if isinstance(modulus, str) and modulus != "default":
        modulus = _hex(modulus)
    return TowerCtx(create_field(args.m, modulus))


def _out_dir(args) -> Path:
    if getattr(args, "out", None):
        return Path(args.out)
    return Path(os.environ.get("SBOXKIT_OUT", "."))


# -- build --------------------------------------------------------------------


def cmd_build(args) -> int:
    tw = _tower(args)
    fam = args.family
    params_record = {
        "family": fam, "m": args.m, "k": args.k,
        "modulus": f"{tw.base.modulus:#x}", "seed": args.seed,
    }
    if fam in ("butterfly-closed", "butterfly-open", "univariate"):
        if args.theta is not None:
            p = from_theta(tw, args.k, _hex(args.theta))
        elif args.alpha is not None and args.beta is not None:
            p = from_alpha_beta(tw, args.k, _hex(args.alpha), _hex(args.beta))
        else:
            raise SboxkitError("butterfly families need --theta or --alpha/--beta")
        params_record.update({
            "theta": None if p.theta is None else f"{p.theta:#x}",
            "alpha": None if p.alpha is None else f"{p.alpha:#x}",
            "beta": None if p.beta is None else f"{p.beta:#x}",
            "condition_holds": p.condition,
        })
        table = {"butterfly-closed": closed_butterfly_table,
                 "butterfly-open": open_butterfly_table,
                 "univariate": univariate_table}[fam](p)
    else:
        fid = int(fam)
        gamma = _hex(args.gamma) if args.gamma is not None else None
        table = analysis.baseline_family(fid, tw, i=args.i, gamma=gamma)
        params_record.update({"i": args.i,
                              "gamma": None if gamma is None else f"{gamma:#x}"})
    out = Path(args.output)
    formats.write_table(out, table)
    formats.write_manifest(out, "build", params_record)
    print(f"wrote {out} (n={table.n}, 2^{table.n} entries)")
    return EXIT_OK


# -- analyze ------------------------------------------------------------------


def cmd_analyze(args) -> int:
    t = formats.read_table(args.table)
    if not (args.ddt or args.bct or args.bct_lqsl or args.walsh):
        raise SboxkitError("select at least one of --ddt --bct --bct-lqsl --walsh")
    out_dir = _out_dir(args)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.table).stem
    record = {
        "table": str(args.table), "n": t.n, "mode": args.mode,
        "seed": args.seed, "samples": args.samples, "threads": args.threads,
    }
    kw = dict(mode=args.mode, threads=args.threads)
    skw = dict(seed=args.seed, samples=args.samples) if args.mode == "sampled" else {}
    jobs = []
    if args.ddt:
        jobs.append(("ddt", lambda: ddt(t, **kw, **skw)))
    if args.bct:
        jobs.append(("bct", lambda: bct(t, **kw, **skw)))
    if args.walsh:
        jobs.append(("walsh", lambda: walsh(t, mode=args.mode, threads=args.threads)))
    for name, fn in jobs:
        spec = fn()
        extra = {}
        if spec.kind == "WALSH":
            extra["nonlinearity"] = (1 << (t.n - 1)) - spec.max_value // 2
        if spec.table is not None or spec.samples is not None:
            formats.write_spectrum_csv(out_dir / f"{stem}.{name}.csv", spec)
        json_path = out_dir / f"{stem}.{name}.json"
        summary = formats.write_summary_json(json_path, spec, extra)
        formats.write_manifest(json_path, f"analyze --{name}", record)
        print(json.dumps(summary, sort_keys=True))
    if args.bct_lqsl:
        if args.mode == "sampled":
            rng = np.random.default_rng(args.seed)
            N = len(t)
            triples = [(int(rng.integers(1, N)), int(rng.integers(1, N)), 0)
                       for _ in range(args.samples)]
            triples = [(a, b, bct_lqsl(t, a, b)) for a, b, _ in triples]
            mx = max(c for _, _, c in triples)
            summary = {"kind": "BCT-LQSL", "n": t.n, "delta_or_beta": mx,
                       "mode": "sampled", "seed": args.seed}
            (out_dir / f"{stem}.bct-lqsl.csv").write_text(
                "a,b,count\n" + "\n".join(f"{a},{b},{c}" for a, b, c in triples) + "\n")
        else:
            mx = boomerang_uniformity_lqsl(t, threads=args.threads)
            summary = {"kind": "BCT-LQSL", "n": t.n, "delta_or_beta": mx,
                       "mode": "max-only", "seed": None}
        json_path = out_dir / f"{stem}.bct-lqsl.json"
        json_path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
        formats.write_manifest(json_path, "analyze --bct-lqsl", record)
        print(json.dumps(summary, sort_keys=True))
    return EXIT_OK


# -- diagnose -----------------------------------------------------------------


def cmd_diagnose(args) -> int:
    tw = _tower(args)
    p = from_theta(tw, args.k, _hex(args.theta))
    a, b = _hex(args.a), _hex(args.b)
    report = diagnostics.boomerang_traces(p, a, b)
    dc = diagnostics.diff_coeffs(p, a, b)
    doc = {
        "m": args.m, "k": p.k, "theta": f"{p.theta:#x}",
        "modulus": f"{tw.base.modulus:#x}",
        "tau": [f"{v:#x}" for v in dc.tau],
        "v": [f"{v:#x}" for v in dc.v],
        "difference_solutions":
            sorted(f"{x:#x}" for x in diagnostics.solve_difference(p, a, b)),
        **report.as_dict(),
    }
    print(json.dumps(doc, indent=2, sort_keys=True))
    return EXIT_OK


# -- solve-l ------------------------------------------------------------------


def cmd_solve_l(args) -> int:
    tw = _tower(args)
    inst = LInstance(tw, args.k, _hex(args.mu), _hex(args.nu))
    cls = classify_L(inst)
    roots = solve_L(inst)
    assert len(roots) == cls.count
    print(f"branch: {cls.branch}")
    print(f"count: {cls.count}")
    print(f"xi: {cls.xi:#x}")
    print(f"delta: {cls.delta:#x}")
    print(f"lambda: {cls.lam:#x}")
    print("roots:", " ".join(sorted(f"{r:#x}" for r in roots)) if roots else "(none)")
    return EXIT_OK


# -- verify -------------------------------------------------------------------


def cmd_verify(args) -> int:
    suite = verify.SUITES[args.suite]
    kwargs = {"k": args.k, "seed": args.seed}
    if args.suite == "lemmas":
        kwargs["samples"] = args.samples
    if args.suite == "theorem":
        kwargs.pop("seed")
        kwargs["threads"] = args.threads
    if args.suite in ("necessity", "open-butterfly"):
        kwargs.pop("seed")
    if args.modulus is not None:
        kwargs["modulus"] = _hex(args.modulus)
    verdicts = suite(args.m, **kwargs)
    doc = json.dumps(verdicts, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(doc + "\n")
        formats.write_manifest(Path(args.out), f"verify --suite {args.suite}",
                               {"m": args.m, **{k: str(v) for k, v in kwargs.items()}})
    print(doc)
    return EXIT_OK if all(v["pass"] for v in verdicts) else EXIT_VERIFY_FAIL


# -- bench --------------------------------------------------------------------


def _time(fn, *a, **kw):
    t0 = time.perf_counter()
    r = fn(*a, **kw)
    return time.perf_counter() - t0, r


def cmd_bench(args) -> int:
    for n in args.bct_n:
        if n > analysis.BCT_SCAN_MAX_N:
            raise ScaleRefusal(
                f"full BCT at n={n} exceeds desk scale; use analyze --mode sampled")
    report = {}
    f5 = create_field(5)
    f17 = create_field(17, 0x20009)  # x^17 + x^3 + 1, above the table limit
    rng = np.random.default_rng(args.seed)
    pairs = [(int(a), int(b)) for a, b in rng.integers(1, 32, size=(20000, 2))]
    dt, _ = _time(lambda: [f5.mul(a, b) for a, b in pairs])
    report["field_mul_m5_table_ops_per_s"] = round(len(pairs) / dt)
    pairs17 = [(int(a), int(b)) for a, b in rng.integers(1, 1 << 17, size=(20000, 2))]
    dt, _ = _time(lambda: [f17.mul(a, b) for a, b in pairs17])
    report["field_mul_m17_clmul_ops_per_s"] = round(len(pairs17) / dt)
    for n in args.bct_n:
        m = n // 2
        tw = TowerCtx(create_field(m))
        dt, table = _time(lambda: univariate_table(from_theta(tw, 1, 2)))
        report[f"univariate_build_n{n}_s"] = round(dt, 4)
        dt, spec = _time(bct, table, mode="max-only", threads=args.threads)
        report[f"full_bct_n{n}_s"] = round(dt, 4)
        report[f"full_bct_n{n}_entries_per_s"] = round((1 << (2 * n)) / dt)
        report[f"full_bct_n{n}_beta"] = spec.max_value
    print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sboxkit",
        description="Butterfly S-box construction and BCT/DDT/Walsh analysis "
                    "over GF(2^(2m))")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, theta=False):
        p.add_argument("--m", type=int, required=True, help="base degree m (odd)")
        p.add_argument("--k", type=int, default=1, help="Frobenius shift k")
        p.add_argument("--modulus", default=None,
                       help="base modulus as hex (e.g. 0xB), default: built-in")
        if theta:
            p.add_argument("--theta", required=True, help="theta in hex")

    b = sub.add_parser("build", help="construct an S-box table file")
    b.add_argument("--family", required=True,
                   choices=["butterfly-closed", "butterfly-open", "univariate",
                            "1", "2", "3"])
    common(b)
    b.add_argument("--theta", default=None, help="theta in hex")
    b.add_argument("--alpha", default=None, help="alpha in hex (raw pair)")
    b.add_argument("--beta", default=None, help="beta in hex (raw pair)")
    b.add_argument("--i", type=int, default=None, help="family-2 exponent i")
    b.add_argument("--gamma", default=None, help="family-3 gamma in hex")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("-o", "--output", required=True)
    b.set_defaults(fn=cmd_build)

    a = sub.add_parser("analyze", help="spectrum analysis of a table file")
    a.add_argument("table")
    a.add_argument("--ddt", action="store_true")
    a.add_argument("--bct", action="store_true")
    a.add_argument("--bct-lqsl", dest="bct_lqsl", action="store_true")
    a.add_argument("--walsh", action="store_true")
    a.add_argument("--mode", choices=["full", "max-only", "sampled"], default="full")
    a.add_argument("--samples", type=int, default=10_000)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--threads", type=int, default=os.cpu_count())
    a.add_argument("-o", "--out", default=None, help="output directory")
    a.set_defaults(fn=cmd_analyze)

    d = sub.add_parser("diagnose", help="difference/boomerang diagnostics report")
    common(d, theta=True)
    d.add_argument("--a", required=True, help="direction a in hex, nonzero")
    d.add_argument("--b", required=True, help="difference b in hex, nonzero")
    d.set_defaults(fn=cmd_diagnose)

    s = sub.add_parser("solve-l", help="classify and solve one linearized equation")
    common(s)
    s.add_argument("--mu", required=True, help="mu in hex")
    s.add_argument("--nu", required=True, help="nu in hex")
    s.set_defaults(fn=cmd_solve_l)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=sorted(verify.SUITES))
    common(v)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--threads", type=int, default=os.cpu_count())
    v.add_argument("-o", "--out", default=None)
    v.set_defaults(fn=cmd_verify)

    be = sub.add_parser("bench", help="timing report")
    be.add_argument("--bct-n", dest="bct_n", type=int, nargs="+", default=[6, 10])
    be.add_argument("--seed", type=int, default=0)
    be.add_argument("--threads", type=int, default=os.cpu_count())
    be.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ScaleRefusal as exc:
        print(f"scale refusal: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except (SboxkitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
