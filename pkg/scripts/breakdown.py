"""Negative determinants of T^dagger T and negative eigenvalues of its Jordan symmetrization.

Sweeps a_param and the off-diagonal mode of the triangular factor.

    python3 scripts/breakdown.py --det-trials 10000 --jordan-trials 100000
"""

import argparse
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from octorand.cli import NEGATIVE_EIG_TOL
from octorand.hermitian import invariants3
from octorand.sampling import EnsembleSpec, run_ensemble
from octorand.spectra import eigen3


@dataclass(frozen=True)
class BreakdownConfig:
    det_trials: int = 10_000
    jordan_trials: int = 100_000
    seed: int = 7
    a_params: tuple[float, ...] = field(default=(0.5, 1.0, 2.0, 5.0))
    offdiag: tuple[str, ...] = field(default=("full", "real"))


def run(cfg: BreakdownConfig) -> list[dict]:
    rows = []
    for mode in cfg.offdiag:
        for a in cfg.a_params:
            det = run_ensemble(EnsembleSpec("tri3-det", cfg.det_trials, cfg.seed, a_param=a, offdiag=mode), lambda W: invariants3(W)[2])
            lmin = run_ensemble(
                EnsembleSpec("tri3-jordan", cfg.jordan_trials, cfg.seed, a_param=a, offdiag=mode), lambda J: eigen3(J)[:, 0]
            )
            rows.append(
                {
                    "offdiag": mode,
                    "a_param": a,
                    "negative_det_fraction": float(np.mean(det < 0)),
                    "min_det": float(det.min()),
                    "jordan_negative_rate": float(np.mean(lmin < -NEGATIVE_EIG_TOL)),
                    "jordan_min_eigenvalue": float(lmin.min()),
                }
            )
    return rows


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--det-trials", type=int, default=BreakdownConfig.det_trials)
    p.add_argument("--jordan-trials", type=int, default=BreakdownConfig.jordan_trials)
    p.add_argument("--seed", type=int, default=BreakdownConfig.seed)
    a = p.parse_args()
    cfg = BreakdownConfig(a.det_trials, a.jordan_trials, a.seed)
    print(json.dumps({"config": asdict(cfg), "rows": run(cfg)}, indent=2))
