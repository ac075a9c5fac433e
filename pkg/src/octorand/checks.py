"""Invariant suite behind ``octorand verify``.

Each check returns a :class:`CheckResult`; none of them raise on failure.
Algebra checks take the multiplication table as a parameter so a deliberately
broken table can serve as a negative control.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .hermitian import HermOct, invariants3, jordan_product, real_embedding, trace_square
from .octonion import TABLE, MultiplicationTable, cayley_dickson_mul, left_mult_matrix
from .sampling import RngStream, sample_gauss_oct2, sample_gauss_oct3
from .spectra import degeneracy_profile, eigen2, eigen3, eigen_projectors, spectral_scale, sym_eigen
from .stats import quadrature, smallest_eig_law, wigner_surmise_pdf

CHUNK = 100_000


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class Counts:
    pairs: int
    embeddings: int
    jordan: int


FULL = Counts(pairs=1_000_000, embeddings=100, jordan=10_000)
QUICK = Counts(pairs=20_000, embeddings=10, jordan=1_000)


def corrupted_table(table: MultiplicationTable = TABLE) -> MultiplicationTable:
    """Copy of ``table`` with the sign of ``e1 e2`` flipped."""
    sign = table.sign.copy()
    sign[1, 2] = -sign[1, 2]
    return MultiplicationTable(table.index.copy(), sign)


def _chunks(rng: np.random.Generator, total: int, width: int):
    done = 0
    while done < total:
        k = min(CHUNK, total - done)
        yield [rng.standard_normal((k, 8)) for _ in range(width)]
        done += k


def _scaled(lhs, rhs):
    scale = np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))
    return np.abs(lhs - rhs) / scale


def check_table(table: MultiplicationTable) -> CheckResult:
    basis = np.eye(8)
    mismatches = sum(
        not np.array_equal(table.mul(basis[i], basis[j]), cayley_dickson_mul(basis[i], basis[j]))
        for i in range(8)
        for j in range(8)
    )
    return CheckResult("table-vs-cayley-dickson", mismatches == 0, f"{64 - mismatches}/64 basis products agree")


def check_norm_multiplicativity(table: MultiplicationTable, pairs: int, seed: int) -> CheckResult:
    rng = np.random.default_rng([seed, 1])
    worst = 0.0
    for a, b in _chunks(rng, pairs, 2):
        lhs = np.linalg.norm(table.mul(a, b), axis=-1)
        rhs = np.linalg.norm(a, axis=-1) * np.linalg.norm(b, axis=-1)
        worst = max(worst, float(np.max(_scaled(lhs, rhs))))
    return CheckResult("norm-multiplicativity", worst <= 1e-12, f"max scaled error {worst:.2e} over {pairs} pairs")


def check_alternativity(table: MultiplicationTable, pairs: int, seed: int) -> CheckResult:
    rng = np.random.default_rng([seed, 2])
    worst = 0.0
    for a, b in _chunks(rng, pairs, 2):
        aa = table.mul(a, a)
        left = _scaled(table.mul(a, table.mul(a, b)), table.mul(aa, b))
        right = _scaled(table.mul(table.mul(b, a), a), table.mul(b, aa))
        worst = max(worst, float(np.max(left)), float(np.max(right)))
    return CheckResult("alternativity", worst <= 1e-12, f"max scaled error {worst:.2e} over {pairs} pairs")


def check_anti_associativity(table: MultiplicationTable) -> CheckResult:
    e5, e6, e7 = np.eye(8)[5], np.eye(8)[6], np.eye(8)[7]
    lhs = table.mul(e5, table.mul(e6, e7))
    rhs = table.mul(table.mul(e5, e6), e7)
    ok = np.array_equal(lhs, -rhs) and np.any(lhs != 0)
    return CheckResult("anti-associativity", bool(ok), "e5(e6 e7) = -(e5 e6) e7")


def check_left_mult(table: MultiplicationTable, pairs: int, seed: int) -> CheckResult:
    rng = np.random.default_rng([seed, 3])
    k = min(pairs, 10_000)
    a, x = rng.standard_normal((k, 8)), rng.standard_normal((k, 8))
    L = left_mult_matrix(a, table)
    prod = table.mul(a, x)
    act = np.max(np.abs(np.einsum("kij,kj->ki", L, x) - prod) / np.maximum(1.0, np.abs(prod).max(-1, keepdims=True)))
    gram = np.einsum("kji,kjl->kil", L, L) - np.einsum("k,il->kil", np.sum(a * a, -1), np.eye(8))
    orth = np.max(np.abs(gram) / np.maximum(1.0, np.sum(a * a, -1))[:, None, None])
    ok = act <= 1e-14 and orth <= 1e-12
    return CheckResult("left-mult-matrix", bool(ok), f"action error {act:.2e}, orthogonality error {orth:.2e}")


def check_embedding_n2(count: int, seed: int) -> CheckResult:
    H = sample_gauss_oct2(RngStream(seed, 11), count)
    lam = eigen2(H)
    bad = 0
    for h, l in zip(range(count), lam):
        eig = sym_eigen(real_embedding(H[h]))
        prof = degeneracy_profile(eig, 1e-8)
        if [m for _, m in prof] != [8, 8] or np.max(np.abs(eig - np.repeat(l, 8))) > 1e-9:
            bad += 1
    return CheckResult("embedding-degeneracy-n2", bad == 0, f"{count - bad}/{count} show two 8-fold eigenvalues matching eigen2")


def check_embedding_n3(count: int, seed: int) -> CheckResult:
    H = sample_gauss_oct3(RngStream(seed, 12), count)
    bad = 0
    for h in range(count):
        Hh = H[h]
        eig = sym_eigen(real_embedding(Hh))
        prof = degeneracy_profile(eig, 1e-8)
        if [m for _, m in prof] != [4] * 6 or abs(eig.sum() - 8.0 * float(Hh.trace())) > 1e-8 * max(1.0, abs(eig).sum()):
            bad += 1
    return CheckResult("embedding-degeneracy-n3", bad == 0, f"{count - bad}/{count} show six 4-fold eigenvalues")


def jordan_spectral_errors(H: HermOct) -> dict[str, float]:
    """Worst scaled violation of each spectral identity over a batch."""
    lam = eigen3(H)
    tr, sg, det = invariants3(H)
    scale = spectral_scale(H)
    l1, l2, l3 = lam[:, 0], lam[:, 1], lam[:, 2]
    resid = np.abs(((lam - tr[:, None]) * lam + sg[:, None]) * lam - det[:, None])
    P = eigen_projectors(H, lam)
    errs = {
        "cubic-residual": np.max(resid / scale[:, None] ** 3),
        "trace": np.max(np.abs(l1 + l2 + l3 - tr) / scale),
        "sigma": np.max(np.abs(l1 * l2 + l1 * l3 + l2 * l3 - sg) / scale**2),
        "det": np.max(np.abs(l1 * l2 * l3 - det) / scale**3),
        "trace-square": np.max(np.abs(np.sum(lam**2, -1) - trace_square(H)) / scale**2),
    }
    idem = orth = 0.0
    for i in range(3):
        idem = max(idem, float(np.max((jordan_product(P[i], P[i]) - P[i]).max_abs())))
        for j in range(i + 1, 3):
            orth = max(orth, float(np.max(jordan_product(P[i], P[j]).max_abs())))
    recon = P[0] * l1 + P[1] * l2 + P[2] * l3 - H
    errs["projector-idempotent"] = idem
    errs["projector-orthogonal"] = orth
    errs["projector-trace"] = float(np.max(np.abs(np.stack([p.trace() for p in P]) - 1.0)))
    errs["projector-sum"] = float(np.max((P[0] + P[1] + P[2] - HermOct.identity(3)).max_abs()))
    errs["reconstruction"] = float(np.max(recon.max_abs()))
    return {k: float(v) for k, v in errs.items()}


JORDAN_TOLERANCES = {
    "cubic-residual": 1e-9,
    "trace": 1e-9,
    "sigma": 1e-9,
    "det": 1e-9,
    "trace-square": 1e-9,
    "projector-idempotent": 1e-8,
    "projector-orthogonal": 1e-8,
    "projector-trace": 1e-8,
    "projector-sum": 1e-10,
    "reconstruction": 1e-8,
}


def check_jordan(count: int, seed: int) -> list[CheckResult]:
    errs = jordan_spectral_errors(sample_gauss_oct3(RngStream(seed, 13), count))
    return [
        CheckResult(f"jordan-{name}", errs[name] <= tol, f"max {errs[name]:.2e} (tol {tol:.0e}) over {count}")
        for name, tol in JORDAN_TOLERANCES.items()
    ]


def check_surmise_normalization() -> CheckResult:
    worst = 0.0
    for beta in (1, 2, 4, 8):
        pdf = lambda s, b=beta: float(wigner_surmise_pdf(s, b))  # noqa: E731
        worst = max(worst, abs(quadrature(pdf, 0.0) - 1.0), abs(quadrature(lambda s: s * pdf(s), 0.0) - 1.0))
    return CheckResult("surmise-normalization", worst <= 1e-10, f"max |integral - 1| {worst:.2e} for beta in 1,2,4,8")


def check_smallest_law() -> CheckResult:
    worst = 0.0
    for n in range(2, 7):
        law = smallest_eig_law(n)
        worst = max(worst, abs(quadrature(lambda s: float(law.pdf(s)), 0.0) - 1.0))
    return CheckResult("smallest-eig-normalization", worst <= 1e-8, f"max |integral - 1| {worst:.2e} for n = 2..6")


def run_checks(
    quick: bool = False,
    seed: int = 0,
    counts: Counts | None = None,
    table: MultiplicationTable = TABLE,
    progress: Callable[[CheckResult], None] | None = None,
) -> list[CheckResult]:
    if counts is None:
        counts = QUICK if quick else FULL
    steps = [
        lambda: check_table(table),
        lambda: check_norm_multiplicativity(table, counts.pairs, seed),
        lambda: check_alternativity(table, counts.pairs, seed),
        lambda: check_anti_associativity(table),
        lambda: check_left_mult(table, counts.pairs, seed),
        lambda: check_embedding_n2(counts.embeddings, seed),
        lambda: check_embedding_n3(counts.embeddings, seed),
        lambda: check_jordan(counts.jordan, seed),
        check_surmise_normalization,
        check_smallest_law,
    ]
    results = []
    for step in steps:
        out = step()
        for r in out if isinstance(out, list) else [out]:
            results.append(r)
            if progress is not None:
                progress(r)
    return results
