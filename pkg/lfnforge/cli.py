"""
Command line of lfnforge.

Every subcommand reads its inputs from and writes its artifacts to the output
directory of the run configuration. Exit codes are 0 on success, 1 when an
internal consistency check fails, 2 on usage errors and missing inputs and 3
when an evaluation does not converge.
"""

# License: BSD (3-clause)

import argparse
import glob
import logging
import math
import os
import sys

import numpy as np

from .arith import prime_sieve
from .config import RunConfig
from .datautil import (
    load_table_h5, read_csv, read_json, read_zero_store, save_table_h5, write_coefficient_file,
    write_csv, write_json, write_zero_store)
from .forms import (
    DirichletCharacter, FormDescriptor, build_delta_table, compute_root_number,
    ingest_coefficients, ramanujan_tau)
from .lfun import EvalContext, afe_L_prime
from .lfun.afe import coefficient_demand
from .lfun.context import ConvergenceError
from .lfun.engine import guard_bits, rotation_angle, terms_needed
from .moments import (
    derivative_moment, discrete_mean_check, dirichlet_bound_check, landau_gonek_check,
    mv_meanvalue_check, prime_poly_moment_check, random_unit_coefficients, reports_to_frame,
    second_moment_decomposition, second_moment_whole_range, shifted_moment, shifted_moment_grid,
    simple_zero_pipeline, value_distribution)
from .sums import (
    convolution_square_sums, default_cf, estimate_cf, pole_probe, sum_suite,
    weighted_square_sums)
from .util import set_random_seeds
from .version import __version__
from .zeros import classify_simplicity, count_vs_mainterm, scan_zeros

log = logging.getLogger(__name__)

SUBCOMMANDS = ("coeffs", "sums", "eval", "zeros", "moments", "dist", "gonek", "mv-check",
               "report")
MOMENT_STATISTICS = ("second-moment", "whole-range", "shifted", "shifted-grid", "derivative",
                     "simple-zeros")
SUM_STATISTICS = ("suite", "weighted", "convolution", "pole-lambda", "pole-alpha")
CHECK_KINDS = ("mv", "prime-poly", "discrete-mean", "dirichlet-bound")
ZEROS_FILE = "zeros.txt"
CF_FILE = "cf.json"
REPORT_FILE = "report.json"
NMAX_MARGIN = 1.1


class MissingArtifactError(FileNotFoundError):
    """An input of the pipeline stage does not exist."""


def _float_list(text):
    return [float(v) for v in text.split(",") if v.strip()]


def _complex(text):
    return complex(text.replace(" ", "").replace("i", "j"))


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value configuration file; flags win over it.")
    common.add_argument("--form", help="'builtin:delta' or 'file:<path>'.")
    common.add_argument("--weight", type=int, help="Weight of a form read from a file.")
    common.add_argument("--level", type=int, help="Level of a form read from a file.")
    common.add_argument("--character", help="Character label of a form read from a file.")
    common.add_argument("--precision", type=int, help="Working precision in bits.")
    common.add_argument("--nmax", type=int, help="Size of the coefficient table.")
    common.add_argument("--tmax", type=float, help="Height of the zero scan.")
    common.add_argument("--T", type=float, help="Window parameter of the statistics.")
    common.add_argument("--stat", action="append", dest="statistics",
                        help="Statistic to compute, may be repeated.")
    common.add_argument("--output-dir", dest="output_dir", help="Directory of all artifacts.")
    common.add_argument("--n-jobs", dest="n_jobs", type=int, help="Number of joblib workers.")
    common.add_argument("--seed", type=int, help="Seed of the randomized checkers.")
    common.add_argument("--overwrite", action="store_true", help="Replace existing artifacts.")
    common.add_argument("--zeros", help=f"Zero store, default <output-dir>/{ZEROS_FILE}.")
    common.add_argument("-v", "--verbose", action="store_true", help="Log progress.")
    return common


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="lfnforge", description="L-functions of holomorphic newforms and their zeros.")
    parser.add_argument("--version", action="version", version=f"lfnforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", parents=[common], help="Build or ingest a coefficient table.")
    p.add_argument("--exact", action="store_true", help="Print the integer coefficients.")
    p.add_argument("--digits", type=int, default=30, help="Digits of the coefficient file.")

    p = sub.add_parser("sums", parents=[common], help="Arithmetic sums and c_f.")
    p.add_argument("--x", type=_float_list, help="Comma separated lengths.")
    p.add_argument("--sigma", type=_float_list, default=[1.30, 1.25, 1.20, 1.15],
                   help="Sigma values of the pole probes.")

    p = sub.add_parser("eval", parents=[common], help="L, L' and the AFE at 1/2 + it.")
    p.add_argument("--t", type=_float_list, required=True, help="Comma separated heights.")
    p.add_argument("--method", choices=("contour", "engine"), default="contour")

    p = sub.add_parser("zeros", parents=[common], help="Scan and classify zeros.")
    p.add_argument("--no-classify", dest="classify", action="store_false",
                   help="Skip the simplicity classification.")

    p = sub.add_parser("moments", parents=[common], help="Moments over zeros.")
    p.add_argument("--ell", type=float, default=1.0)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--w", type=_complex, default=None, help="Shift, e.g. '0.1+0.2i'.")
    p.add_argument("--method", choices=("contour", "engine"), default="engine")

    p = sub.add_parser("dist", parents=[common], help="Distribution of log|L(rho + w)|.")
    p.add_argument("--w", type=_complex, default=None, help="Shift, default 1/(2 log T).")
    p.add_argument("--V", type=_float_list, default=None, help="Comma separated thresholds.")

    p = sub.add_parser("gonek", parents=[common], help="Sum of x^rho over zeros.")
    p.add_argument("--x", type=_float_list, default=[2.0, 6.0])

    p = sub.add_parser("mv-check", parents=[common], help="Mean values of Dirichlet polynomials.")
    p.add_argument("--kind", choices=CHECK_KINDS, default="mv")
    p.add_argument("--nterms", type=int, default=1000)
    p.add_argument("--H", type=float, default=1e4)
    p.add_argument("--T0", type=float, default=0.0)
    p.add_argument("--x", type=float, default=10.0)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--w", type=_complex, default=0j)
    p.add_argument("--C", type=float, default=1.0)

    sub.add_parser("report", parents=[common], help="Bundle all artifacts in one JSON file.")
    return parser


def config_from_args(args):
    """RunConfig from the config file, if any, with the flags applied on top."""
    base = RunConfig.from_file(args.config) if args.config else RunConfig()
    statistics = tuple(args.statistics) if args.statistics else None
    return base.update(form=args.form, weight=args.weight, level=args.level,
                       character=args.character, precision=args.precision, nmax=args.nmax,
                       tmax=args.tmax, T=args.T, statistics=statistics,
                       output_dir=args.output_dir, n_jobs=args.n_jobs, seed=args.seed)


def _path(cfg, name):
    return os.path.join(cfg.output_dir, name)


def _zeros_path(cfg, args):
    return args.zeros if args.zeros else _path(cfg, ZEROS_FILE)


def _load_store(cfg, args):
    path = _zeros_path(cfg, args)
    if not os.path.exists(path):
        raise MissingArtifactError(f"zero store {path} not found, run 'lfnforge zeros' first")
    return read_zero_store(path)


def _require_T(cfg):
    if cfg.T is None:
        raise ValueError("--T is required for this subcommand")
    return cfg.T


def required_nmax(form, t_max, precision):
    """Coefficients needed to evaluate L and L' up to height t_max."""
    t = t_max + 1
    beta = rotation_angle(t, precision)
    engine = terms_needed(form, complex(1.5, t), beta, precision + guard_bits(t, beta))
    afe = coefficient_demand(max(math.sqrt(form.level) * t / (2 * math.pi), 5), precision + 10)
    return int(NMAX_MARGIN * max(engine, afe))


def _file_descriptor(cfg, values=None):
    """Descriptor of a file form, self-dual only when ``values`` are known and real."""
    character = DirichletCharacter.from_label(cfg.character, cfg.level)
    self_dual = values is not None and character.is_real and \
        bool(np.all(np.abs(np.imag(values)) < 1e-12))
    return FormDescriptor(weight=cfg.weight, level=cfg.level, character=character,
                          self_dual=self_dual)


def load_table(cfg, n_max, root_number=True):
    """Coefficient table of the configured form with at least ``n_max`` entries.

    Delta tables are cached in ``<output_dir>/cache`` as HDF5. Forms read from
    a file get their root number computed when ``root_number`` is True.
    """
    n_max = max(int(n_max), cfg.nmax or 0, 2)
    path = cfg.form_path
    if path is None:
        cache = _path(cfg, os.path.join("cache", f"delta-{n_max}.h5"))
        if os.path.exists(cache):
            log.info(f"Loading Delta coefficients from {cache}.")
            return load_table_h5(cache)
        table = build_delta_table(n_max, precision=cfg.precision)
        save_table_h5(table, cache, overwrite=True)
        return table
    if not os.path.exists(path):
        raise MissingArtifactError(f"coefficient file {path} not found")
    provisional = ingest_coefficients(path, _file_descriptor(cfg))
    form = _file_descriptor(cfg, provisional.values)
    table = ingest_coefficients(path, form)
    if table.n_max < n_max:
        log.warning(f"{path} has {table.n_max} coefficients, {n_max} were asked for.")
    if root_number:
        ctx = EvalContext(precision=cfg.precision)
        table = table.with_form(form.with_root_number(compute_root_number(table, ctx)))
    return table


def _context(cfg, **kwargs):
    return EvalContext(precision=cfg.precision, **kwargs)


def _c_f(cfg, table):
    path = _path(cfg, CF_FILE)
    if os.path.exists(path):
        return float(read_json(path)["data"]["c_f"])
    log.info(f"{path} not found, estimating c_f from the coefficient table.")
    return default_cf(table, table.n_max)


def _emit_reports(cfg, args, reports, stem):
    write_csv(reports_to_frame(reports), _path(cfg, f"{stem}.csv"), fingerprint=cfg.fingerprint,
              overwrite=args.overwrite)
    write_json([r.to_dict() for r in reports], _path(cfg, f"{stem}.json"),
               fingerprint=cfg.fingerprint, overwrite=args.overwrite)
    for report in reports:
        print(report.summary())


def cmd_coeffs(cfg, args):
    n_max = cfg.nmax or 1000
    if args.exact:
        if cfg.form_path is not None:
            raise ValueError("--exact is only available for builtin:delta")
        tau = ramanujan_tau(n_max)
        for n in range(1, n_max + 1):
            print(f"{n} {tau[n]}")
    table = load_table(cfg, n_max, root_number=False)
    if cfg.form_path is None:
        write_coefficient_file(table, _path(cfg, "coeffs.txt"), digits=args.digits,
                               fingerprint=cfg.fingerprint, overwrite=args.overwrite)
    print(f"coeffs {table.form.label}: n_max={table.n_max} n_exact={table.n_exact}")
    return 0


def cmd_sums(cfg, args):
    table = load_table(cfg, cfg.nmax or 100000, root_number=False)
    grid = args.x or [float(x) for x in 2 ** np.arange(10, int(math.log2(table.n_max)) + 1)]
    if not grid:
        raise ValueError(f"no default x grid for n_max={table.n_max} < 1024, pass --x")
    constant = estimate_cf(table, max(1.0, max(grid) / 16), max(grid))
    write_json(constant.__dict__, _path(cfg, CF_FILE), fingerprint=cfg.fingerprint,
               overwrite=args.overwrite)
    print(f"c_f={constant.c_f:.12g} residual={constant.fit_residual:.3g}")
    statistics = cfg.statistics or ("suite", "weighted", "convolution")
    reports = []
    for stat in statistics:
        if stat not in SUM_STATISTICS:
            raise ValueError(f"statistic expected to be one of {SUM_STATISTICS}, got '{stat}'")
        if stat == "suite":
            reports.extend(sum_suite(table, grid, c_f=constant.c_f))
        elif stat == "weighted":
            reports.extend(weighted_square_sums(table, grid, constant.c_f, n_jobs=cfg.n_jobs))
        elif stat == "convolution":
            reports.extend(convolution_square_sums(table, grid, constant.c_f, n_jobs=cfg.n_jobs))
        else:
            reports.append(pole_probe(table, stat.split("-")[1], args.sigma))
    for report in reports:
        write_csv(report.to_frame(), _path(cfg, f"sums_{report.statistic}.csv"),
                  fingerprint=cfg.fingerprint, overwrite=args.overwrite)
        print(report.summary())
    return 0


def cmd_eval(cfg, args):
    t_top = max(abs(t) for t in args.t)
    table = load_table(cfg, required_nmax(_provisional_form(cfg), t_top, cfg.precision))
    ctx = _context(cfg)
    points = []
    for t in args.t:
        point = afe_L_prime(table, complex(0.5, t), ctx, method=args.method)
        points.append(point.to_record())
        print(f"t={t:g} |L|={abs(complex(point.L)):.10g} |L'|={abs(complex(point.L_prime)):.10g}")
    write_json(points, _path(cfg, "eval.json"), fingerprint=cfg.fingerprint,
               overwrite=args.overwrite)
    return 0


def _provisional_form(cfg):
    if cfg.form_path is None:
        return FormDescriptor(weight=12, level=1)
    return FormDescriptor(weight=cfg.weight, level=cfg.level,
                          character=DirichletCharacter.from_label(cfg.character, cfg.level))


def cmd_zeros(cfg, args):
    if cfg.tmax is None:
        raise ValueError("--tmax is required for 'zeros'")
    table = load_table(cfg, required_nmax(_provisional_form(cfg), cfg.tmax, cfg.precision))
    ctx = _context(cfg)
    store = scan_zeros(table, cfg.tmax, ctx, n_jobs=cfg.n_jobs)
    if args.classify:
        store = classify_simplicity(store, table, ctx, n_jobs=cfg.n_jobs)
    store.fingerprint = cfg.fingerprint
    write_zero_store(store, _zeros_path(cfg, args), overwrite=args.overwrite)
    found, main_term, difference = count_vs_mainterm(store, cfg.tmax)
    print(f"zeros {store.label}: {found} up to {cfg.tmax:g}, main term {main_term:.3f}, "
          f"difference {difference:+.3f}")
    return 0


def cmd_moments(cfg, args):
    store = _load_store(cfg, args)
    T = _require_T(cfg)
    statistics = cfg.statistics or ("second-moment",)
    needs_table = any(s != "simple-zeros" for s in statistics)
    table = load_table(cfg, required_nmax(_provisional_form(cfg), 2 * T + 1, cfg.precision)) \
        if needs_table else None
    ctx = _context(cfg)
    reports = []
    for stat in statistics:
        if stat == "second-moment":
            reports.extend(second_moment_decomposition(store, table, ctx, T, _c_f(cfg, table),
                                                       method=args.method, n_jobs=cfg.n_jobs))
        elif stat == "whole-range":
            reports.extend(second_moment_whole_range(store, table, ctx, T, _c_f(cfg, table),
                                                     method=args.method, n_jobs=cfg.n_jobs))
        elif stat == "shifted":
            w = args.w if args.w is not None else 1j / math.log(T)
            reports.append(shifted_moment(store, table, ctx, T, w, args.ell, n_jobs=cfg.n_jobs))
        elif stat == "shifted-grid":
            grid_reports, spread = shifted_moment_grid(store, table, ctx, T, args.ell,
                                                       n_jobs=cfg.n_jobs)
            reports.extend(grid_reports)
            print(f"shifted moments: spread of ratios {spread:.4g}")
        elif stat == "derivative":
            reports.append(derivative_moment(store, table, ctx, T, args.m, args.ell,
                                             n_jobs=cfg.n_jobs))
        elif stat == "simple-zeros":
            reports.append(simple_zero_pipeline(store, T, args.ell))
        else:
            raise ValueError(
                f"statistic expected to be one of {MOMENT_STATISTICS}, got '{stat}'")
    _emit_reports(cfg, args, reports, "moments")
    return 0


def default_V_grid():
    """-inf sentinel followed by thresholds -4, -3.5, ..., 4."""
    return [-math.inf] + [float(v) for v in np.arange(-8, 9) / 2]


def cmd_dist(cfg, args):
    store = _load_store(cfg, args)
    T = _require_T(cfg)
    table = load_table(cfg, required_nmax(_provisional_form(cfg), 2 * T + 2, cfg.precision))
    w = args.w if args.w is not None else 1 / (2 * math.log(T))
    distribution = value_distribution(store, table, _context(cfg), T, w,
                                      args.V or default_V_grid(), n_jobs=cfg.n_jobs)
    write_csv(distribution.to_frame(), _path(cfg, "dist.csv"), fingerprint=cfg.fingerprint,
              overwrite=args.overwrite)
    flag = " (tail bounds vacuous at desk scale)" if distribution.vacuous else ""
    print(f"dist T={T:g} w={distribution.w}: {distribution.n_window} zeros{flag}")
    return 0


def cmd_gonek(cfg, args):
    store = _load_store(cfg, args)
    T = cfg.T if cfg.T is not None else store.T_max
    table = load_table(cfg, max(int(max(args.x)) + 1, 2), root_number=False)
    reports = [landau_gonek_check(store, table, x, T) for x in args.x]
    _emit_reports(cfg, args, reports, "gonek")
    return 0


def cmd_mv_check(cfg, args):
    rng = set_random_seeds(cfg.seed)
    if args.kind == "mv":
        coeffs = np.concatenate([[0], random_unit_coefficients(args.nterms, rng)])
        reports = [mv_meanvalue_check(coeffs, args.T0, args.H)]
    else:
        store = _load_store(cfg, args)
        T = cfg.T if cfg.T is not None else store.T_max
        if args.kind == "prime-poly":
            primes = [int(p) for p in np.flatnonzero(prime_sieve(int(args.x)))]
            a = dict(zip(primes, random_unit_coefficients(len(primes), rng)))
            reports = list(prime_poly_moment_check(store, a, args.x, args.m, args.w, T=T,
                                                   C=args.C))
        elif args.kind == "discrete-mean":
            table = load_table(cfg, args.nterms, root_number=False)
            coeffs = np.concatenate([[0], random_unit_coefficients(args.nterms, rng)])
            reports = [discrete_mean_check(store, table, coeffs, T)]
        else:
            coeffs = np.concatenate([[0], random_unit_coefficients(args.nterms, rng)])
            reports = [dirichlet_bound_check(store, coeffs, T)]
    _emit_reports(cfg, args, reports, f"check_{args.kind}")
    return 0


def cmd_report(cfg, args):
    bundle = {"config": cfg.to_text(), "artifacts": {}}
    for path in sorted(glob.glob(_path(cfg, "*.csv")) + glob.glob(_path(cfg, "*.json"))):
        name = os.path.basename(path)
        if name == REPORT_FILE:
            continue
        if name.endswith(".csv"):
            bundle["artifacts"][name] = read_csv(path).to_dict(orient="list")
        else:
            bundle["artifacts"][name] = read_json(path)
        print(f"report: {name}")
    if not bundle["artifacts"]:
        raise MissingArtifactError(f"no artifacts in {cfg.output_dir}")
    write_json(bundle, _path(cfg, REPORT_FILE), fingerprint=cfg.fingerprint,
               overwrite=args.overwrite)
    return 0


COMMANDS = {"coeffs": cmd_coeffs, "sums": cmd_sums, "eval": cmd_eval, "zeros": cmd_zeros,
            "moments": cmd_moments, "dist": cmd_dist, "gonek": cmd_gonek,
            "mv-check": cmd_mv_check, "report": cmd_report}


def run(argv=None):
    """Run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        os.makedirs(cfg.output_dir, exist_ok=True)
        return COMMANDS[args.command](cfg, args)
    except MissingArtifactError as e:
        print(f"lfnforge {args.command}: missing artifact: {e}", file=sys.stderr)
        return 2
    except (ValueError, FileExistsError) as e:
        print(f"lfnforge {args.command}: {e}", file=sys.stderr)
        return 2
    except AssertionError as e:
        print(f"lfnforge {args.command}: check failed: {e}", file=sys.stderr)
        return 1
    except ConvergenceError as e:
        print(f"lfnforge {args.command}: no convergence: {e}", file=sys.stderr)
        return 3


def main():
    sys.exit(run())
