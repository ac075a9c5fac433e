"""Command-line driver.

    octorand spacing   --ensemble gauss3 --trials 100000 --bins 60 --seed 42 --out csv
    octorand smallest  --n 2 --trials 100000 --seed 1 --out json --out-file fig2.json
    octorand detsign   --trials 10000 --a-param 1 --seed 7
    octorand jordan-positivity --trials 100000 --a-param 1 --seed 7
    octorand verify    [--quick]

Exit codes: 0 success, 1 usage error, 2 numeric failure, 3 verification failure.
The payload depends only on the arguments and the seed; timing and the
chosen seed go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import secrets
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import checks
from .hermitian import invariants3
from .sampling import WORKERS_ENV, EnsembleSpec, default_workers, run_ensemble
from .spectra import ConvergenceError, DegenerateSpectrumError, NumericInconsistencyError, eigen2, eigen3
from .stats import (
    QuadratureError,
    histogram,
    ks_statistic,
    smallest_eig_cdf,
    smallest_eig_pdf,
    unfold_spacings,
    wigner_surmise_cdf,
    wigner_surmise_pdf,
)

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3
NEGATIVE_EIG_TOL = 1e-10
DEFAULT_TRIALS = {"detsign": 10_000}
NUMERIC_ERRORS = (NumericInconsistencyError, DegenerateSpectrumError, ConvergenceError, QuadratureError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunResult:
    spec: dict
    stats: dict
    histogram: dict | None = None
    reference_curve: dict | None = None
    ks: float | None = None
    details: list | None = None
    wall_time: float = field(default=0.0, compare=False)

    def to_json(self) -> str:
        payload = {
            "spec": self.spec,
            "stats": self.stats,
            "histogram": self.histogram,
            "reference_curve": self.reference_curve,
            "ks": self.ks,
        }
        if self.details is not None:
            payload["checks"] = self.details
        return json.dumps(payload, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if self.histogram is not None:
            w.writerow(["bin_center", "empirical_density", self.reference_curve["name"]])
            for row in zip(self.reference_curve["x"], self.histogram["density"], self.reference_curve["density"]):
                w.writerow([repr(float(v)) for v in row])
        else:
            w.writerow(["statistic", "value"])
            for key, value in self.stats.items():
                w.writerow([key, repr(value)])
        return buf.getvalue()


def _floats(x) -> list[float]:
    return [float(v) for v in np.asarray(x).ravel()]


def _histogram_payload(samples, bins: int, pdf, name: str):
    h = histogram(samples, bins)
    centers = h.centers
    return (
        {"edges": _floats(h.edges), "counts": [int(c) for c in h.counts], "density": _floats(h.density)},
        {"name": name, "x": _floats(centers), "density": _floats(pdf(centers))},
    )


def cmd_spacing(args) -> RunResult:
    if args.ensemble not in ("gauss2", "gauss3"):
        raise UsageError("spacing needs --ensemble gauss2 or gauss3")
    spec = EnsembleSpec(args.ensemble, args.trials, args.seed)
    solver = eigen2 if args.ensemble == "gauss2" else eigen3
    eigs = run_ensemble(spec, solver, args.workers)
    pools = unfold_spacings(eigs)
    ks = [ks_statistic(p, lambda s: wigner_surmise_cdf(s, 8)) for p in pools]
    # one histogram over all pools, each already scaled to unit mean
    hist, curve = _histogram_payload(np.concatenate(pools), args.bins, lambda s: wigner_surmise_pdf(s, 8), "surmise_density")
    stats = {
        "ks_per_pool": ks,
        "variance_per_pool": [float(p.var()) for p in pools],
        "pools": ["l2-l1"] if len(pools) == 1 else ["l2-l1", "l3-l2"],
    }
    return RunResult({**spec.to_dict(), "bins": args.bins}, stats, hist, curve, max(ks))


def cmd_smallest(args) -> RunResult:
    if args.n < 2:
        raise UsageError("smallest needs --n >= 2")
    spec = EnsembleSpec("wishart2", args.trials, args.seed, n=args.n)
    smallest = run_ensemble(spec, lambda W: eigen2(W)[:, 0], args.workers)
    ks = ks_statistic(smallest, lambda s: smallest_eig_cdf(s, args.n))
    hist, curve = _histogram_payload(smallest, args.bins, lambda s: smallest_eig_pdf(s, args.n), "reference_density")
    stats = {"ks": ks, "mean": float(smallest.mean()), "min": float(smallest.min())}
    return RunResult({**spec.to_dict(), "bins": args.bins}, stats, hist, curve, ks)


def _fraction_stats(count: int, trials: int, label: str) -> dict:
    p = count / trials
    return {"trials": trials, label: count, "fraction": p, "stderr": float(np.sqrt(p * (1.0 - p) / trials))}


def cmd_detsign(args) -> RunResult:
    spec = EnsembleSpec("tri3-det", args.trials, args.seed, a_param=args.a_param, offdiag=args.offdiag)
    det = run_ensemble(spec, lambda W: invariants3(W)[2], args.workers)
    stats = _fraction_stats(int(np.sum(det < 0.0)), spec.trials, "negative_determinants")
    stats["min_det"] = float(det.min())
    return RunResult(spec.to_dict(), stats)


def cmd_jordan_positivity(args) -> RunResult:
    offdiag = "zero" if args.diagonal_only else args.offdiag
    spec = EnsembleSpec("tri3-jordan", args.trials, args.seed, a_param=args.a_param, offdiag=offdiag)
    lmin = run_ensemble(spec, lambda J: eigen3(J)[:, 0], args.workers)
    stats = _fraction_stats(int(np.sum(lmin < -NEGATIVE_EIG_TOL)), spec.trials, "negative_min_eigenvalue")
    stats["min_eigenvalue"] = float(lmin.min())
    return RunResult(spec.to_dict(), stats)


def cmd_verify(args) -> RunResult:
    table = checks.corrupted_table() if args.corrupt_table else checks.TABLE
    counts = checks.QUICK if args.quick else checks.FULL
    if args.trials is not None:
        counts = checks.Counts(pairs=args.trials, embeddings=min(100, args.trials), jordan=args.trials)

    def show(r):
        if args.out is None:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<30} {r.detail}", flush=True)

    results = checks.run_checks(counts=counts, seed=args.seed, table=table, progress=show)
    stats = {r.name: r.passed for r in results}
    spec = {"command": "verify", "seed": args.seed, "pairs": counts.pairs, "embeddings": counts.embeddings, "jordan": counts.jordan}
    return RunResult(spec, stats, details=[asdict(r) for r in results])


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="octorand", description="Octonion random matrix experiments")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="64-bit master seed (default: fresh entropy, echoed to stderr)")
    common.add_argument("--trials", type=int, default=None, help="number of trials (default: 10000 for detsign, else 100000)")
    common.add_argument("--out", choices=("csv", "json"), default=None, help="payload format (default: json; verify prints a table)")
    common.add_argument("--out-file", default=None, help="write the payload here instead of stdout")
    common.add_argument("--workers", type=int, default=None, help=f"worker threads (default: ${WORKERS_ENV} or 1)")

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spacing", parents=[common], help="unfolded spacings of gauss2/gauss3 vs the beta=8 surmise")
    p.add_argument("--ensemble", choices=("gauss2", "gauss3"), default="gauss3")
    p.add_argument("--bins", type=int, default=60)
    p.set_defaults(func=cmd_spacing)

    p = sub.add_parser("smallest", parents=[common], help="smallest eigenvalue of the 2x2 octonion Wishart matrix")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--bins", type=int, default=60)
    p.set_defaults(func=cmd_smallest)

    for name, func in (("detsign", cmd_detsign), ("jordan-positivity", cmd_jordan_positivity)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--a-param", type=float, default=1.0)
        p.add_argument("--offdiag", choices=("full", "real", "zero"), default="full")
        if name == "jordan-positivity":
            p.add_argument("--diagonal-only", action="store_true", help="zero off-diagonal entries of T")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("--quick", action="store_true", help="reduced sample counts")
    p.add_argument("--corrupt-table", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is None:
        args.seed = secrets.randbits(64)
        print(f"seed: {args.seed}", file=sys.stderr)
    if args.trials is None and args.command != "verify":
        args.trials = DEFAULT_TRIALS.get(args.command, 100_000)
    if args.workers is None:
        args.workers = default_workers()
    if args.trials is not None and args.trials < 1:
        parser.error("--trials must be >= 1")
    if not 0 <= args.seed < 2**64:
        parser.error("--seed must be an unsigned 64-bit integer")
    if getattr(args, "bins", 1) < 1:
        parser.error("--bins must be >= 1")

    start = time.perf_counter()
    try:
        result = args.func(args)
    except (UsageError, ValueError) as exc:
        parser.error(str(exc))
    except NUMERIC_ERRORS as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    result.wall_time = time.perf_counter() - start

    if args.command != "verify" or args.out is not None:
        text = result.to_csv() if args.out == "csv" else result.to_json()
        if args.out_file:
            with open(args.out_file, "w", newline="\n", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)

    if args.command == "verify":
        failed = [name for name, ok in result.stats.items() if not ok]
        if failed:
            print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
            return EXIT_VERIFY
        print(f"all {len(result.stats)} checks passed wall_time={result.wall_time:.2f}s", file=sys.stderr)
        return EXIT_OK
    summary = f"ks={result.ks:.5f}" if result.ks is not None else f"fraction={result.stats['fraction']:.5f}"
    print(f"{args.command}: {summary} wall_time={result.wall_time:.2f}s", file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
