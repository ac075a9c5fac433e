"""Spacing histograms of the 2x2 and 3x3 Gaussian octonion ensembles against the beta=8 surmise.

    python3 scripts/figure1.py --trials 100000 --seed 42 --outdir results/figure1
"""

import argparse
import json
from dataclasses import asdict, dataclass
from pathlib import Path

from octorand.cli import main as cli_main
from octorand.stats import surmise_moments


@dataclass(frozen=True)
class Figure1Config:
    trials: int = 100_000
    seed: int = 42
    bins: int = 60
    outdir: str = "results/figure1"


def run(cfg: Figure1Config) -> dict:
    out = Path(cfg.outdir)
    out.mkdir(parents=True, exist_ok=True)
    summary = {"config": asdict(cfg), "surmise_beta8_moments": surmise_moments(8)}
    for ensemble in ("gauss2", "gauss3"):
        common = ["spacing", "--ensemble", ensemble, "--trials", str(cfg.trials), "--seed", str(cfg.seed), "--bins", str(cfg.bins)]
        cli_main(common + ["--out", "csv", "--out-file", str(out / f"{ensemble}.csv")])
        cli_main(common + ["--out", "json", "--out-file", str(out / f"{ensemble}.json")])
        payload = json.loads((out / f"{ensemble}.json").read_text())
        summary[ensemble] = {"ks": payload["ks"], **payload["stats"]}
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    return summary


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(Figure1Config()).items():
        p.add_argument(f"--{name}", type=type(default), default=default)
    print(json.dumps(run(Figure1Config(**vars(p.parse_args()))), indent=2))
