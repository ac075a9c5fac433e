"""Acceptance gate: one test and one summary line per criterion, at the stated tolerances."""

import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from octorand import checks, cli
from octorand.hermitian import invariants3
from octorand.octonion import oct_norm2
from octorand.sampling import EnsembleSpec, RngStream, run_ensemble, sample_gamma
from octorand.spectra import eigen2, eigen3
from octorand.stats import (
    quadrature,
    ks_statistic,
    ks_two_sample,
    smallest_eig_cdf,
    surmise_moments,
    unfold_spacings,
    wigner_surmise_cdf,
    wigner_surmise_pdf,
)

SEED = 20240601


class Gate:
    def __init__(self, label: str, budget: float | None = None):
        self.label = label
        self.budget = budget
        self.parts: list[tuple[str, bool]] = []

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def check(self, text: str, ok) -> None:
        self.parts.append((text, bool(ok)))

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is None and self.budget is not None:
            self.check(f"runtime {elapsed:.1f}s < {self.budget:.0f}s", elapsed < self.budget)
        if exc_type is not None:
            self.parts.append((f"error {exc_type.__name__}: {exc}", False))
        ok = all(p for _, p in self.parts)
        detail = "; ".join(f"{t} [{'ok' if p else 'FAIL'}]" for t, p in self.parts)
        line = f"{'PASS' if ok else 'FAIL'}  {self.label}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        if exc_type is None:
            assert ok, line
        return False


def test_criterion_1_algebra():
    with Gate("1 algebra suite", budget=10) as g:
        n = checks.FULL.pairs
        for r in (
            checks.check_table(checks.TABLE),
            checks.check_norm_multiplicativity(checks.TABLE, n, SEED),
            checks.check_alternativity(checks.TABLE, n, SEED),
            checks.check_anti_associativity(checks.TABLE),
        ):
            g.check(f"{r.name}: {r.detail}", r.passed)


def test_criterion_2_embedding_degeneracy():
    with Gate("2 embedding degeneracy", budget=60) as g:
        for r in (checks.check_embedding_n2(100, SEED), checks.check_embedding_n3(100, SEED)):
            g.check(f"{r.name}: {r.detail}", r.passed)


def test_criterion_3_jordan_spectral():
    with Gate("3 Jordan spectral suite", budget=30) as g:
        for r in checks.check_jordan(10_000, SEED):
            g.check(f"{r.name} {r.detail.split(' over')[0]}", r.passed)


def _pools(ensemble: str):
    spec = EnsembleSpec(ensemble, 100_000, SEED)
    return unfold_spacings(run_ensemble(spec, eigen2 if ensemble == "gauss2" else eigen3))


def test_criterion_4_spacing_figure():
    cdf = lambda s: wigner_surmise_cdf(s, 8)  # noqa: E731
    with Gate("4 spacing vs beta=8 surmise", budget=120) as g:
        (pool,) = _pools("gauss2")
        ks = ks_statistic(pool, cdf)
        g.check(f"gauss2 KS {ks:.5f} <= 0.02", ks <= 0.02)
        for name, pool in zip(("l2-l1", "l3-l2"), _pools("gauss3")):
            ks = ks_statistic(pool, cdf)
            g.check(f"gauss3 {name} KS {ks:.5f} <= 0.05", ks <= 0.05)


def _smallest(spec: EnsembleSpec) -> np.ndarray:
    return run_ensemble(spec, lambda W: eigen2(W)[:, 0])


def test_criterion_5_smallest_eigenvalue_figure():
    with Gate("5 smallest eigenvalue law", budget=180) as g:
        wish2 = None
        for n in (2, 3):
            lmin = _smallest(EnsembleSpec("wishart2", 100_000, SEED, n=n))
            ks = ks_statistic(lmin, lambda s, n=n: smallest_eig_cdf(s, n))
            g.check(f"wishart2 n={n} KS {ks:.5f} <= 0.02", ks <= 0.02)
            wish2 = lmin if n == 2 else wish2
        chol = _smallest(EnsembleSpec("cholesky2", 100_000, SEED + 1, a_param=3.0))
        ks2 = ks_two_sample(wish2, chol)
        g.check(f"wishart2(n=2) vs cholesky2(a=3) two-sample KS {ks2:.5f} <= 0.015", ks2 <= 0.015)


def test_criterion_6_gamma_identity():
    with Gate("6 gamma identity", budget=30) as g:
        spec = EnsembleSpec("gauss2", 100_000, SEED)
        b2 = run_ensemble(spec, lambda H: oct_norm2(H.upper[:, 0]))
        direct = sample_gamma(RngStream(SEED, 2**32), 4.0, 1.0, 100_000)
        ks = ks_two_sample(b2, direct)
        g.check(f"|b|^2 vs Gamma(4,1) two-sample KS {ks:.5f} <= 0.01", ks <= 0.01)


def test_criterion_7_breakdown_experiments():
    with Gate("7 breakdown experiments", budget=120) as g:
        det = run_ensemble(EnsembleSpec("tri3-det", 10_000, SEED, a_param=1.0), lambda W: invariants3(W)[2])
        frac = float(np.mean(det < 0))
        g.check(f"negative-determinant fraction {frac:.4f} in [0.50, 0.60]", 0.50 <= frac <= 0.60)
        lmin = run_ensemble(EnsembleSpec("tri3-jordan", 100_000, SEED, a_param=1.0), lambda J: eigen3(J)[:, 0])
        rate = float(np.mean(lmin < -cli.NEGATIVE_EIG_TOL))
        g.check(f"Jordan-symmetrized negative rate {rate:.5f} <= 0.005", rate <= 0.005)


def test_criterion_8_surmise_moments():
    with Gate("8 surmise moments") as g:
        var, skew, _ = surmise_moments(4)
        g.check(f"beta=4 variance {var:.6f} vs 0.10447 within 5e-5", abs(var - 0.10447) <= 5e-5)
        g.check(f"beta=4 skewness {skew:.6f} vs 0.35939 within 5e-5", abs(skew - 0.35939) <= 5e-5)
        worst = 0.0
        for beta in (1, 2, 4, 8):
            pdf = lambda s, b=beta: float(wigner_surmise_pdf(s, b))  # noqa: E731
            worst = max(worst, abs(quadrature(pdf, 0.0) - 1), abs(quadrature(lambda s: s * pdf(s), 0.0) - 1))
        g.check(f"normalization and unit mean, max error {worst:.1e} <= 1e-10", worst <= 1e-10)


COMMANDS = [
    ("spacing", "--ensemble", "gauss2", "--trials", "20000", "--out", "csv"),
    ("spacing", "--ensemble", "gauss3", "--trials", "20000", "--out", "json"),
    ("smallest", "--n", "3", "--trials", "20000", "--out", "csv"),
    ("detsign", "--trials", "10000", "--out", "json"),
    ("jordan-positivity", "--trials", "20000", "--out", "json"),
    ("verify", "--quick", "--out", "json"),
]


def test_criterion_9_determinism(capsys):
    with Gate("9 determinism") as g:
        for argv in COMMANDS:
            outputs = []
            for workers in ("1", "1", "4"):
                cli.main([*argv, "--seed", str(SEED), "--workers", workers])
                outputs.append(capsys.readouterr().out.encode())
            same = outputs[0] == outputs[1] == outputs[2] and len(outputs[0]) > 0
            label = " ".join(argv[:3]) if argv[1] in ("--ensemble", "--n") else argv[0]
            g.check(f"{label} byte-identical across reruns and workers 1/4", same)
