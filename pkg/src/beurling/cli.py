"""Batch front-end: build element tables, sweep zeros, run diagnostics.

An artifact directory is the unit of state: `build` writes the element table
plus the axiom-A fit, later subcommands read them back, verify fingerprints,
and emit deterministic CSV reports (identical config and seed give byte-
identical files).

Exit codes: 0 success; 1 certified inequality violation from `verify`;
2 configuration error; 3 element budget exceeded; 4 missing or stale
artifacts.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import density as density_mod
from . import explicit as explicit_mod
from . import semigroup as sg
from . import zeta as zeta_mod
from . import zeros as zeros_mod
from .reports import StaleArtifactError, read_report, write_report

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_ARTIFACT = 4

CHECK_FAMILIES = ("partial-bounds", "growth", "reciprocal", "pole-region", "counting")

# Default artifact directory when --out/--artifact is not given.
OUT_ENV = "BEURLING_OUT"


def _default_dir() -> str | None:
    return os.environ.get(OUT_ENV)


class ArtifactError(RuntimeError):
    pass


def _load_artifact(outdir: Path):
    cfgp = outdir / "system.json"
    tablep = outdir / "table.csv"
    fitp = outdir / "fit.json"
    for p in (cfgp, tablep, fitp):
        if not p.exists():
            raise ArtifactError(f"missing artifact {p}; run `build` first")
    cfg = json.loads(cfgp.read_text(encoding="utf-8"))
    system = sg.build_system(cfg["descriptor"])
    table = sg.ElementTable.from_csv(tablep, system, cfg["cutoff"])
    if table.fingerprint() != cfg["fingerprint"]:
        raise ArtifactError(f"{tablep} does not match recorded fingerprint")
    fit = json.loads(fitp.read_text(encoding="utf-8"))
    params = sg.AxiomAParams(
        kappa=fit["kappa"],
        theta=fit["theta"],
        A=fit["A"],
        sup_location=fit["sup_location"],
        scan_cutoff=fit["scan_cutoff"],
    )
    return cfg, table, params


def _load_db(outdir: Path, table) -> zeros_mod.ZeroDatabase:
    zp, cp = outdir / "zeros.csv", outdir / "zero_certs.csv"
    if not zp.exists() or not cp.exists():
        raise ArtifactError("missing zero database; run `zeros` first")
    db = zeros_mod.ZeroDatabase.load(zp, cp)
    if db.fingerprint != table.fingerprint():
        raise StaleArtifactError("zero database was built from a different table")
    return db


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_build(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    system = sg.load_system(args.system)
    cutoff = float(args.cutoff)
    table = sg.enumerate_elements(system, cutoff, budget=args.budget)
    kappa = args.kappa
    if kappa is None:
        kappa = sg.BUILTIN_KAPPA.get(system.kind)
    params = sg.fit_axiom_a(table, args.theta, kappa)
    table.to_csv(outdir / "table.csv")
    fp = table.fingerprint()
    cfg = {
        "descriptor": json.loads(Path(args.system).read_text(encoding="utf-8")),
        "cutoff": cutoff,
        "theta": args.theta,
        "kappa": kappa,
        "seed": args.seed,
        "fingerprint": fp,
    }
    (outdir / "system.json").write_text(
        json.dumps(cfg, sort_keys=True, indent=1) + "\n", encoding="utf-8"
    )
    (outdir / "fit.json").write_text(
        json.dumps({**params.describe(), "fingerprint": fp}, sort_keys=True, indent=1)
        + "\n",
        encoding="utf-8",
    )
    print(f"built table: {table.total} elements, {len(table)} distinct norms <= {cutoff:g}")
    print(
        f"axiom-A fit: kappa={params.kappa:.12g} theta={params.theta:g} "
        f"A={params.A:.12g} at x={params.sup_location:g}"
    )
    return EXIT_OK


def _eval_context(cfg, table, params) -> zeta_mod.EvalContext:
    return zeta_mod.EvalContext(table, params)


def cmd_zeros(args) -> int:
    outdir = Path(args.artifact)
    cfg, table, params = _load_artifact(outdir)
    ctx = _eval_context(cfg, table, params)
    if args.sweep:
        b, t_max = (float(v) for v in args.sweep.split(","))
        db = zeros_mod.sweep_zeros(
            ctx, b, t_max, tol=args.tol, band_height=args.band,
            coarse_cutoff=min(args.coarse, ctx.x_trunc),
        )
    elif args.rect:
        b, t_low, t_high = (float(v) for v in args.rect.split(","))
        coarse = zeta_mod.SmoothedEvaluator(ctx, x_eff=min(args.coarse, ctx.x_trunc))
        fine = zeta_mod.SmoothedEvaluator(ctx)
        recs = zeros_mod.find_zeros(
            coarse, fine, zeros_mod.Rectangle(b, t_low, t_high), tol=args.tol
        )
        db = zeros_mod.ZeroDatabase(fingerprint=table.fingerprint(), b=b)
        db.records = recs
        found = sum(r.multiplicity for r in recs)
        db.certificates = [zeros_mod.SweepCertificate(b, t_low, t_high, found, found)]
    else:
        print("zeros: provide --sweep b,T or --rect b,t_low,t_high", file=sys.stderr)
        return EXIT_CONFIG
    db.save(outdir / "zeros.csv", outdir / "zero_certs.csv")
    print(f"located {sum(r.multiplicity for r in db.records)} zeros "
          f"({len(db.certificates)} certified bands)")
    for r in db.records[:12]:
        print(f"  rho = {r.beta:.9f} + {r.gamma:.9f}i  (mult {r.multiplicity}, "
              f"residual {r.residual:.2e})")
    if len(db.records) > 12:
        print(f"  ... and {len(db.records) - 12} more")
    return EXIT_OK


def cmd_density(args) -> int:
    outdir = Path(args.artifact)
    cfg, table, params = _load_artifact(outdir)
    db = _load_db(outdir, table)
    lo, hi, step = (float(v) for v in args.alphas.split(":"))
    alphas = []
    a = lo
    while a <= hi + 1e-12:
        alphas.append(round(a, 12))
        a += step
    report = density_mod.density_scan(db, params.theta, alphas, float(args.t_max))
    write_report(
        outdir / "density.csv",
        table.fingerprint(),
        ["alpha", "count", "theoretical_exponent", "empirical_exponent", "nontrivial_region"],
        [
            [r.alpha, r.count, r.theoretical_exponent, r.empirical_exponent, r.nontrivial_region]
            for r in report.rows
        ],
    )
    print(f"density scan: {len(report.rows)} alphas, T = {args.t_max}")
    if args.detect:
        t_cut, y_cut = (float(v) for v in args.detect.split(","))
        coeffs = density_mod.detecting_coeffs(table, t_cut, y_cut)
        rows = density_mod.detect_at_zeros(coeffs, db, (1.0 + params.theta) / 2.0)
        write_report(
            outdir / "detect.csv",
            table.fingerprint(),
            ["beta", "gamma", "h_re", "h_im"],
            [[r.beta, r.gamma, r.h_value.real, r.h_value.imag] for r in rows],
        )
        print(f"detecting sums at {len(rows)} zeros (T={t_cut:g}, Y={y_cut:g})")
    if args.moments:
        ps = [float(v) for v in args.moments.split(",")]
        rows = density_mod.moment_growth_report(table, ps)
        write_report(
            outdir / "moments.csv",
            table.fingerprint(),
            ["p", "x", "f_p", "log_ratio"],
            [[r.exponent, r.x, r.f_value, r.log_ratio] for r in rows],
        )
    return EXIT_OK


def cmd_formula(args) -> int:
    outdir = Path(args.artifact)
    cfg, table, params = _load_artifact(outdir)
    db = _load_db(outdir, table)
    ctx = _eval_context(cfg, table, params)
    xs = [float(v) for v in args.x.split(",")]
    rows = explicit_mod.explicit_formula_report(table, params, db, xs, float(args.t_max))
    write_report(
        outdir / "formula.csv",
        table.fingerprint(),
        ["x", "psi", "delta", "approx", "residual", "T"],
        [[r.x, r.psi, r.delta, r.approx, r.residual, r.t_cut] for r in rows],
    )
    for r in rows:
        print(f"x={r.x:g}: psi={r.psi:.6f} approx={r.approx:.6f} "
              f"residual={r.residual:.6f} shape-ratio={r.shape_ratio:.3e}")
    if args.cluster:
        crows = []
        for spec_str in args.cluster:
            g0, lam, yv = (float(v) for v in spec_str.split(","))
            seed = min(
                (r for r in db.records if r.gamma > 0),
                key=lambda r: abs(r.gamma - g0),
                default=None,
            )
            if seed is None:
                print("clustering: no zeros in database", file=sys.stderr)
                return EXIT_ARTIFACT
            stat = explicit_mod.clustering_statistic(db, seed.rho, lam, yv, params.theta)
            crows.append([stat.gamma0, stat.radius, stat.y_scale, stat.lhs,
                          stat.rhs_core, stat.in_regime])
        write_report(
            outdir / "clustering.csv",
            table.fingerprint(),
            ["gamma0", "lambda", "Y", "lhs", "rhs_core", "in_regime"],
            crows,
        )
    if args.turan:
        trows = []
        for spec_str in args.turan:
            b, h, tau, delta = (float(v) for v in spec_str.split(","))
            rep = explicit_mod.local_density_report(ctx, db, b, h, tau, delta)
            trows.append([rep.b, rep.h, rep.tau, rep.delta, rep.hypothesis_count,
                          rep.window_count, rep.ratio, rep.in_regime,
                          rep.log_deriv_max, rep.log_deriv_bound])
        write_report(
            outdir / "turan.csv",
            table.fingerprint(),
            ["b", "h", "tau", "delta", "n_hypothesis", "m_window", "ratio",
             "in_regime", "logderiv_max", "logderiv_bound"],
            trows,
        )
    return EXIT_OK


def cmd_verify(args) -> int:
    outdir = Path(args.artifact)
    cfg, table, params = _load_artifact(outdir)
    ctx = _eval_context(cfg, table, params)
    wanted = set(CHECK_FAMILIES if args.checks == "all" else args.checks.split(","))
    bad = wanted - set(CHECK_FAMILIES)
    if bad:
        print(f"verify: unknown check families {sorted(bad)}", file=sys.stderr)
        return EXIT_CONFIG
    family_of = {
        "zxesti-triangle": "partial-bounds",
        "zxesti-sigma": "partial-bounds",
        "zsgeneral": "growth",
        "zssmin1": "growth",
        "zsintheright": "growth",
        "reciprok": "reciprocal",
        "polenozero": "pole-region",
    }
    checks = zeta_mod.verify_lemma_bounds(
        ctx, n_points=args.points, seed=cfg.get("seed", 0) or 0
    )
    checks = [c for c in checks if family_of[c.inequality] in wanted]
    write_report(
        outdir / "verify.csv",
        table.fingerprint(),
        ["inequality", "s_re", "s_im", "lhs", "rhs", "margin", "pass"],
        [c.row() for c in checks],
    )
    violations = [c for c in checks if not c.passed]

    if "counting" in wanted and (outdir / "zeros.csv").exists():
        db = _load_db(outdir, table)
        cases = []
        b = min(0.45, params.theta + 0.9 * (1.0 - params.theta))
        if b <= params.theta:
            b = params.theta + 0.5 * (1.0 - params.theta)
        for t in (10.0, 20.0, 30.0, 50.0, 80.0):
            if t <= db.t_max:
                cases.append(zeros_mod.CountingCase("strip", b, t))
            if t + 1.5 <= db.t_max:
                cases.append(zeros_mod.CountingCase("unit-band", b, t))
                cases.append(zeros_mod.CountingCase("window-h", b, t))
        counting = zeros_mod.check_counting_lemmas(params, db, cases)
        write_report(
            outdir / "counting.csv",
            table.fingerprint(),
            ["lemma", "b", "T", "actual", "bound", "slack", "pass"],
            [[c.lemma, c.b, c.t, c.actual, c.bound, c.slack, c.passed] for c in counting],
        )
        violations.extend(c for c in counting if not c.passed)

    print(f"verify: {len(checks)} inequality checks, {len(violations)} certified violations")
    return EXIT_VIOLATION if violations else EXIT_OK


def cmd_report(args) -> int:
    outdir = Path(args.artifact)
    cfg, table, params = _load_artifact(outdir)
    lines = [
        f"system kind: {table.system.kind}",
        f"cutoff: {cfg['cutoff']!r}",
        f"elements: {table.total}",
        f"distinct norms: {len(table)}",
        f"kappa: {params.kappa!r}",
        f"theta: {params.theta!r}",
        f"A: {params.A!r} at x = {params.sup_location!r}",
        f"table fingerprint: {table.fingerprint()}",
    ]
    if (outdir / "zeros.csv").exists():
        db = _load_db(outdir, table)
        lines.append(f"zeros located: {sum(r.multiplicity for r in db.records)}")
        lines.append(f"certified bands: {len(db.certificates)} up to t = {db.t_max!r}")
        for r in db.records[:5]:
            lines.append(f"  zero {r.beta!r} + {r.gamma!r}i")
    for name in ("verify.csv", "counting.csv", "density.csv", "formula.csv"):
        p = outdir / name
        if p.exists():
            header, rows = read_report(p, table.fingerprint())
            lines.append(f"{name}: {len(rows)} rows")
    text = "\n".join(lines) + "\n"
    (outdir / "summary.txt").write_text(text, encoding="utf-8")
    print(text, end="")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="beurling",
        description="Generalized number systems: tables, zeta zeros, diagnostics",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="enumerate a system and fit axiom-A parameters")
    p.add_argument("--system", required=True, help="JSON descriptor path")
    p.add_argument("--cutoff", required=True, type=float)
    p.add_argument("--theta", type=float, default=0.5)
    p.add_argument("--kappa", type=float, default=None,
                   help="density; defaults to the known value for built-ins, else fitted")
    p.add_argument("--budget", type=int, default=sg.DEFAULT_ELEMENT_BUDGET)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("zeros", help="count and locate zeta zeros")
    p.add_argument("--artifact", required=True)
    p.add_argument("--sweep", help="b,T: certified sweep of [b,2]x[-T,T]")
    p.add_argument("--rect", help="b,t_low,t_high: single rectangle")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--band", type=float, default=4.0)
    p.add_argument("--coarse", type=float, default=zeros_mod.COARSE_CUTOFF)
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("density", help="density scans and detecting sums")
    p.add_argument("--artifact", required=True)
    p.add_argument("--t-max", "--T", dest="t_max", required=True, type=float)
    p.add_argument("--alphas", default="0.4:0.95:0.05", help="lo:hi:step")
    p.add_argument("--detect", help="T,Y for detecting coefficients")
    p.add_argument("--moments", help="comma list of moment exponents")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("formula", help="prime-counting formula diagnostics")
    p.add_argument("--artifact", required=True)
    p.add_argument("--x", required=True, help="comma list of evaluation points")
    p.add_argument("--t-max", "--T", dest="t_max", required=True, type=float)
    p.add_argument("--cluster", action="append",
                   help="gamma0,lambda,Y clustering statistic (repeatable)")
    p.add_argument("--turan", action="append",
                   help="b,h,tau,delta local-density window (repeatable)")
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("verify", help="runtime checks of the certified bounds")
    p.add_argument("--artifact", required=True)
    p.add_argument("--checks", default="all",
                   help="comma list of families: " + ",".join(CHECK_FAMILIES))
    p.add_argument("--points", type=int, default=170)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="summarize an artifact directory")
    p.add_argument("--artifact", required=True)
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except sg.BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (sg.DescriptorError, FileNotFoundError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ArtifactError, StaleArtifactError, zeros_mod.IncompleteDatabaseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARTIFACT


if __name__ == "__main__":
    sys.exit(main())
