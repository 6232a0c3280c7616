"""Command-line front end: ``claytonmc {sample,density,fit,recover,bench,risk}``.

Exit codes: 0 success, 2 invalid flags or input, 1 runtime failure.
The default worker count can be set with ``CLAYTONMC_WORKERS``; an explicit
``--workers`` flag always wins.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import io, svg
from .copula import ClaytonCopula
from .estimation import FitOptions, fit_mle, pseudo_observations
from .exceptions import CopulaError, InvalidInput, PipelineError
from .risk import run_risk_pipeline
from .sampling import default_workers, sample_parallel
from .studies import linear_grid, recovery_summary, run_recovery, run_scaling_bench


class UsageError(Exception):
    pass


def _positive_float(s):
    try:
        x = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}") from None
    if not (math.isfinite(x) and x > 0):
        raise argparse.ArgumentTypeError(f"must be a finite number > 0, got {s!r}")
    return x


def _unit_open(s):
    try:
        x = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}") from None
    if not 0.0 < x < 1.0:
        raise argparse.ArgumentTypeError(f"must lie strictly between 0 and 1, got {s!r}")
    return x


def _count(minimum):
    def parse(s):
        try:
            n = int(s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
        if n < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}, got {s!r}")
        return n

    return parse


def _seed(s):
    try:
        n = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if not 0 <= n < 2**64:
        raise argparse.ArgumentTypeError(f"must be an unsigned 64-bit integer, got {s!r}")
    return n


def _int_list(s):
    parts = s.split(",")
    if any(not p.strip() for p in parts):
        raise argparse.ArgumentTypeError(f"malformed list {s!r}")
    out = [_count(1)(p.strip()) for p in parts]
    return out


def _bracket(s):
    parts = s.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {s!r}")
    lo, hi = (_positive_float(p) for p in parts)
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"need LO < HI, got {s!r}")
    return lo, hi


def build_parser():
    p = argparse.ArgumentParser(prog="claytonmc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    workers_kw = dict(type=_count(1), default=None,
                      help="worker processes (default: $CLAYTONMC_WORKERS or 1)")

    s = sub.add_parser("sample", help="draw a Clayton copula sample to CSV")
    s.add_argument("--theta", type=_positive_float, required=True)
    s.add_argument("--n", type=_count(1), default=1000)
    s.add_argument("--seed", type=_seed, default=0)
    s.add_argument("--workers", **workers_kw)
    s.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")

    d = sub.add_parser("density", help="evaluate the copula density at one point")
    d.add_argument("--theta", type=_positive_float, required=True)
    d.add_argument("--u", type=_unit_open, required=True)
    d.add_argument("--v", type=_unit_open, required=True)

    f = sub.add_parser("fit", help="pseudo maximum-likelihood fit of theta")
    f.add_argument("--input", required=True)
    f.add_argument("--pseudo", action="store_true",
                   help="data already lie in (0,1); skip the rank transform")
    f.add_argument("--bracket", type=_bracket, default=(1e-3, 50.0), help="LO,HI (default 0.001,50)")
    f.add_argument("--out", default=None)

    r = sub.add_parser("recover", help="theta recovery study over a linear grid")
    r.add_argument("--theta-min", type=_positive_float, default=0.1)
    r.add_argument("--theta-max", type=_positive_float, default=3.0)
    r.add_argument("--count", type=_count(2), default=20)
    r.add_argument("--n", type=_count(2), default=1000)
    r.add_argument("--seed", type=_seed, default=0)
    r.add_argument("--workers", **workers_kw)
    r.add_argument("--out", default="-")
    r.add_argument("--svg", default=None)

    b = sub.add_parser("bench", help="wall time of the recovery study against worker count")
    b.add_argument("--workers-list", type=_int_list, default=[1, 2, 3, 4])
    b.add_argument("--count", type=_count(2), default=20)
    b.add_argument("--n", type=_count(2), default=1000)
    b.add_argument("--seed", type=_seed, default=0)
    b.add_argument("--reps", type=_count(1), default=3)
    b.add_argument("--out", default="-")
    b.add_argument("--svg", default=None)

    k = sub.add_parser("risk", help="Monte Carlo VaR and expected shortfall")
    k.add_argument("--input", required=True)
    k.add_argument("--alpha", type=_unit_open, default=0.95)
    k.add_argument("--big-n", type=_count(1), default=100_000)
    k.add_argument("--seed", type=_seed, default=0)
    k.add_argument("--workers", **workers_kw)
    k.add_argument("--out", default=None)
    return p


def _emit_csv(path, header, rows, comment=None):
    if path in (None, "-"):
        if comment:
            for line in comment.splitlines():
                sys.stdout.write(f"# {line}\n")
        sys.stdout.write(",".join(header) + "\n")
        for row in rows:
            sys.stdout.write(",".join(io.fmt(x) for x in row) + "\n")
    else:
        io.write_csv(path, header, rows, comment)


def _write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _load_two_columns(path, min_rows=2):
    _, x = io.read_matrix(path)
    if x.ndim != 2 or x.shape[1] != 2:
        raise UsageError(f"--input: expected 2 numeric columns in {path}")
    if x.shape[0] < min_rows:
        raise UsageError(f"--input: need at least {min_rows} data rows, got {x.shape[0]}")
    if not np.all(np.isfinite(x)):
        raise UsageError("--input: non-finite values in data")
    return x


def cmd_sample(a):
    u = sample_parallel(ClaytonCopula(a.theta), a.n, a.seed, a.workers)
    _emit_csv(a.out, ["u1", "u2"], u.tolist())


def cmd_density(a):
    print(io.fmt(ClaytonCopula(a.theta).pdf(a.u, a.v)))


def cmd_fit(a):
    x = _load_two_columns(a.input)
    if a.pseudo:
        if not np.all((x > 0) & (x < 1)):
            raise UsageError("--pseudo: data must lie strictly inside (0, 1)")
        p = x
    else:
        p = pseudo_observations(x)
    try:
        res = fit_mle(p, FitOptions(*a.bracket))
    except CopulaError as exc:
        raise PipelineError("fit", exc) from exc
    print(f"theta_hat={io.fmt(res.theta_hat)}")
    print(f"log_likelihood={io.fmt(res.log_likelihood)}")
    print(f"converged={'true' if res.converged else 'false'}")
    print(f"evaluations={res.evaluations}")
    if a.out:
        io.write_csv(a.out, ["theta_hat", "log_likelihood", "converged", "evaluations"],
                     [[res.theta_hat, res.log_likelihood, res.converged, res.evaluations]])


def cmd_recover(a):
    if not a.theta_min < a.theta_max:
        raise UsageError("--theta-min must be smaller than --theta-max")
    grid = linear_grid(a.theta_min, a.theta_max, a.count)
    recs = run_recovery(grid, a.n, a.seed, a.workers)
    _emit_csv(a.out, ["theta_true", "theta_hat", "converged"],
              [[r.theta_true, r.theta_hat, r.converged] for r in recs])
    if a.svg:
        _write_text(a.svg, svg.recovery_svg([r.theta_true for r in recs], [r.theta_hat for r in recs]))
    summ = recovery_summary(recs)
    print(f"correlation={summ['correlation']:.6f} mean_relative_error={summ['mean_relative_error']:.6f} "
          f"converged={summ['converged']}/{summ['total']}", file=sys.stderr)


def cmd_bench(a):
    grid = linear_grid(0.1, 3.0, a.count)
    recs = run_scaling_bench(a.workers_list, grid, a.n, a.seed, a.reps)
    _emit_csv(a.out, ["workers", "wall_time_seconds", "repetitions"],
              [[r.workers, r.wall_time_seconds, r.repetitions] for r in recs],
              comment="wall_time_seconds is a timing measurement and is not deterministic")
    if a.svg:
        _write_text(a.svg, svg.scaling_svg([r.workers for r in recs],
                                           [r.wall_time_seconds for r in recs]))


def cmd_risk(a):
    x = _load_two_columns(a.input)
    rep = run_risk_pipeline(x, a.alpha, a.big_n, a.seed, a.workers)
    fields = ["alpha", "big_n", "theta_hat", "var", "es", "exceedances"]
    for name in fields:
        print(f"{name}={io.fmt(getattr(rep, name))}")
    if a.out:
        io.write_csv(a.out, fields, [[getattr(rep, name) for name in fields]])


COMMANDS = {
    "sample": cmd_sample,
    "density": cmd_density,
    "fit": cmd_fit,
    "recover": cmd_recover,
    "bench": cmd_bench,
    "risk": cmd_risk,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "workers", 0) is None:
        args.workers = default_workers()
    try:
        COMMANDS[args.command](args)
    except (UsageError, InvalidInput) as exc:
        print(f"claytonmc {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except CopulaError as exc:
        print(f"claytonmc {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"claytonmc {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
