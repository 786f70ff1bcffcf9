"""Command-line harness: coefficient tables, growth/bound/asymptotics sweeps,
and the acceptance suite.

Output files are deterministic: fixed column order, numbers printed with 17
significant digits, rows emitted in input order regardless of worker count.
Exit codes: 0 success, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import acceptance, asymptotics, blaschke, resolvent, wiener_opt
from .errors import ModeError
from .spectra import SpectrumSpec


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return format(x, ".17g")


def _write_csv(path, header, rows):
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(v if isinstance(v, str) else _fmt(v) for v in row) + "\n")


def _write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _parse_floats(text):
    return [float(v) for v in text.split(",") if v != ""]


def _parse_ints(text):
    return [int(v) for v in text.split(",") if v != ""]


def _parse_complexes(text):
    return [complex(v) for v in text.split(",") if v != ""]


def _load_config(path):
    values = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, val = line.partition("=")
            values[key.strip()] = val.strip()
    return values


def _pool_map(fn, tasks, workers):
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, tasks))


# ---------------------------------------------------------------------------
# subcommands


def _coeff_task(args):
    lam, n, kmax = args
    p = blaschke.MoebiusParam(lam, n)
    K = kmax if kmax is not None else blaschke.default_coeff_count(p)
    series = blaschke.weighted_coeffs(p, max(K, 2))
    rows = [(lam, n, k, c.real, c.imag) for k, c in enumerate(series.coeffs)]
    norm = blaschke.linf_A_norm(series) if kmax is None else series.linf
    defect = blaschke.parseval_defect(blaschke.blaschke_power_coeffs(p, series.max_index))
    return rows, (lam, n, series.max_index, norm, defect)


def cmd_coeffs(opts) -> int:
    tasks = [(lam, n, opts.kmax) for lam in opts.lambdas for n in opts.n]
    results = _pool_map(_coeff_task, tasks, opts.workers)
    rows = [r for res in results for r in res[0]]
    norms = [res[1] for res in results]
    if opts.format == "csv":
        _write_csv(opts.out, ["lambda", "n", "k", "coeff_re", "coeff_im"], rows)
        _write_csv(opts.out + ".norms.csv",
                   ["lambda", "n", "K", "linf_A", "parseval_defect"], norms)
    else:
        _write_json(opts.out, {
            "coefficients": [dict(zip(("lambda", "n", "k", "re", "im"), r)) for r in rows],
            "norms": [dict(zip(("lambda", "n", "K", "linf_A", "parseval_defect"), r))
                      for r in norms],
        })
    return 0


def _growth_task(args):
    lam, n, phi_max_n, cap = args
    spec = SpectrumSpec.single(lam, n)
    L = wiener_opt.phi_lower_bound(spec)
    if n <= phi_max_n:
        res = wiener_opt.phi_exact_truncated(spec, cap=cap)
        phi, conv = res.value, res.converged
    else:
        phi, conv = None, None
    upper = wiener_opt.schaeffer_upper(n)
    return (lam, n, L, phi, "" if conv is None else str(conv).lower(),
            upper, L / math.sqrt(n))


def cmd_growth(opts) -> int:
    tasks = [(lam, n, opts.phi_max_n, opts.degree) for lam in opts.lambdas for n in opts.n]
    rows = _pool_map(_growth_task, tasks, opts.workers)
    header = ["lambda", "n", "L", "phi_D", "phi_converged", "sqrt_en", "L_over_sqrt_n"]
    if opts.format == "csv":
        _write_csv(opts.out, header, rows)
    else:
        _write_json(opts.out, [dict(zip(header, r)) for r in rows])
    return 0


def _bounds_task(args):
    lam, n, zeta, C = args
    try:
        q = resolvent.BoundQuery(SpectrumSpec.single(lam, n), zeta, C)
    except Exception as ex:  # domain errors logged as skipped rows
        return [(lam, n, zeta.real, zeta.imag, C, "skipped", float("nan"), None,
                 str(ex).replace(",", ";"))]
    opt = resolvent.optimize_rho(q)
    rows = [(lam, n, zeta.real, zeta.imag, C, opt.rule.value, opt.value,
             opt.rho_star, "true")]
    for rule, value in resolvent.applicable_closed_forms(q).items():
        ok = opt.value <= value + 1e-9
        rows.append((lam, n, zeta.real, zeta.imag, C, rule.value, value, None,
                     str(ok).lower()))
    return rows


def cmd_bounds(opts) -> int:
    tasks = [(lam, n, z, opts.C)
             for lam in opts.lambdas for n in opts.n for z in opts.zetas]
    results = _pool_map(_bounds_task, tasks, opts.workers)
    rows = [r for res in results for r in res]
    header = ["lambda", "n", "zeta_re", "zeta_im", "C", "rule", "value",
              "rho_star", "dominance_ok"]
    if opts.format == "csv":
        _write_csv(opts.out, header, rows)
    else:
        _write_json(opts.out, [dict(zip(header, r)) for r in rows])
    return 0


def _asym_task(args):
    lam, n, ks, alpha, beta = args
    out = []
    for k in ks:
        region = asymptotics.classify_region(lam, n, k, alpha, beta)
        est = None
        g2 = None
        flag = ""
        try:
            ae = asymptotics.uniform_airy_estimate(lam, n, k)
            est, g2 = ae.value.real, ae.gamma_sq
            if not ae.branch_ok:
                flag = "branch-tracking"
        except ModeError:
            try:
                est = asymptotics.stationary_phase_estimate(lam, n, k, beta)
            except ModeError:
                est = None
        truth = asymptotics.weighted_truth(lam, n, k)
        rel = (abs(est - truth) / max(abs(truth), asymptotics.TRUTH_FLOOR)
               if est is not None else None)
        out.append((lam, n, k, region.value, est, truth, rel, g2, flag))
    return out


def _default_k_grid(lam, n):
    a0 = asymptotics.alpha0(lam)
    ratios = np.linspace(0.9 * a0, 1.1 / a0, 41)
    return sorted({max(2, int(round(a * n))) for a in ratios})


def cmd_asymptotics(opts) -> int:
    tasks = []
    for lam in opts.lambdas:
        for n in opts.n:
            ks = opts.k if opts.k else _default_k_grid(lam, n)
            tasks.append((lam, n, ks, opts.alpha, opts.beta))
    results = _pool_map(_asym_task, tasks, opts.workers)
    rows = [r for res in results for r in res]
    header = ["lambda", "n", "k", "region", "estimate_re", "truth_re",
              "rel_error", "gamma_sq", "flag"]
    if opts.format == "csv":
        _write_csv(opts.out, header, rows)
    else:
        _write_json(opts.out, [dict(zip(header, r)) for r in rows])
    # per-region decay-rate summary over the n grid
    if len(opts.n) >= 4:
        fit_rows = []
        for lam in opts.lambdas:
            for region in (asymptotics.Region.I, asymptotics.Region.III,
                           asymptotics.Region.IV, asymptotics.Region.V,
                           asymptotics.Region.VII):
                fit = asymptotics.decay_exponent_fit(lam, region, sorted(opts.n),
                                                     alpha=opts.alpha)
                fit_rows.append((lam, region.value, fit.mode, fit.slope))
        _write_csv(opts.out + ".fits.csv", ["lambda", "region", "mode", "slope"],
                   fit_rows)
    return 0


def cmd_validate(opts) -> int:
    numbers = set(opts.criteria) if opts.criteria else None
    results = acceptance.run_all(numbers)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# argument plumbing


def _add_common(sub, config):
    sub.add_argument("--lambda", dest="lambdas", type=_parse_floats,
                     default=_parse_floats(config.get("lambda", "0.5")))
    sub.add_argument("--out", default=config.get("out", None))
    sub.add_argument("--format", choices=("csv", "json"),
                     default=config.get("format", "csv"))
    sub.add_argument("--workers", type=int, default=int(config.get("workers", "1")))


def build_parser(config=None):
    config = config or {}
    ap = argparse.ArgumentParser(prog="schaeffer",
                                 description="counterexample growth, resolvent "
                                             "bounds and coefficient asymptotics")
    sp = ap.add_subparsers(dest="command", required=True)

    c = sp.add_parser("coeffs", help="coefficient tables and sup norms")
    _add_common(c, config)
    c.add_argument("--n", type=_parse_ints, default=_parse_ints(config.get("n", "")))
    c.add_argument("--k", dest="kmax", type=int,
                   default=int(config["k"]) if "k" in config else None)
    c.set_defaults(fn=cmd_coeffs, needs_out=True)

    g = sp.add_parser("growth", help="lower-bound and truncated-phi growth study")
    _add_common(g, config)
    g.add_argument("--n", type=_parse_ints, default=_parse_ints(config.get("n", "")))
    g.add_argument("--degree", type=int, default=int(config.get("degree", "4096")))
    g.add_argument("--phi-max-n", type=int, default=int(config.get("phi_max_n", "64")))
    g.set_defaults(fn=cmd_growth, needs_out=True)

    b = sp.add_parser("bounds", help="resolvent bound sweep")
    _add_common(b, config)
    b.add_argument("--n", type=_parse_ints, default=_parse_ints(config.get("n", "")))
    b.add_argument("--zeta", dest="zetas", type=_parse_complexes,
                   default=_parse_complexes(config.get("zeta", "0")))
    b.add_argument("--C", type=float, default=float(config.get("C", "1")))
    b.set_defaults(fn=cmd_bounds, needs_out=True)

    a = sp.add_parser("asymptotics", help="estimate-vs-truth sweep and decay fits")
    _add_common(a, config)
    a.add_argument("--n", type=_parse_ints, default=_parse_ints(config.get("n", "")))
    a.add_argument("--k", type=_parse_ints,
                   default=_parse_ints(config.get("k", "")))
    a.add_argument("--alpha", type=float,
                   default=float(config["alpha"]) if "alpha" in config else None)
    a.add_argument("--beta", type=float,
                   default=float(config["beta"]) if "beta" in config else None)
    a.set_defaults(fn=cmd_asymptotics, needs_out=True)

    v = sp.add_parser("validate", help="run the acceptance suite")
    v.add_argument("--criteria", type=_parse_ints, default=None)
    v.set_defaults(fn=cmd_validate, needs_out=False)

    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    config = {}
    if "--config" in argv:
        i = argv.index("--config")
        try:
            config = _load_config(argv[i + 1])
        except (IndexError, OSError) as ex:
            print(f"cannot read config: {ex}", file=sys.stderr)
            return 2
        del argv[i:i + 2]
    ap = build_parser(config)
    opts = ap.parse_args(argv)
    if opts.needs_out:
        if not getattr(opts, "n", None):
            print("error: empty n grid", file=sys.stderr)
            return 2
        if not opts.out:
            print("error: --out is required", file=sys.stderr)
            return 2
        if not opts.lambdas:
            print("error: empty lambda list", file=sys.stderr)
            return 2
    try:
        return opts.fn(opts)
    except OSError as ex:
        print(f"i/o error: {ex}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
