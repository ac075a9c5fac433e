"""How the sign of det(T^dagger T) depends on where the conjugate sits in the cubic term.

With ``Re(conj(x13) (x12 x23))`` the determinant of ``T^dagger T`` equals
``prod t_ii^2`` up to roundoff, so it is never negative. Moving or dropping the
conjugate gives a quantity that is negative for roughly half the samples.

    python3 scripts/detsign_probe.py --trials 10000 --seed 7
"""

import argparse
import json

import numpy as np

from octorand.hermitian import conj_transpose, conj_transpose_product, oct_mat_mul, HermOct
from octorand.octonion import CONJ_MASK, oct_mul, oct_norm2
from octorand.sampling import RngStream, triangular_factor3


def cubic_variants(W: HermOct) -> dict[str, np.ndarray]:
    x11, x22, x33 = np.moveaxis(W.diag, -1, 0)
    x12, x13, x23 = (W.upper[..., p, :] for p in range(3))
    rest = x11 * x22 * x33 - x33 * oct_norm2(x12) - x22 * oct_norm2(x13) - x11 * oct_norm2(x23)
    bar = lambda x: x * CONJ_MASK  # noqa: E731
    return {
        "Re(conj(x13)(x12 x23))": rest + 2 * oct_mul(bar(x13), oct_mul(x12, x23))[..., 0],
        "Re((conj(x13) x12) x23)": rest + 2 * oct_mul(oct_mul(bar(x13), x12), x23)[..., 0],
        "Re(x13 (x12 x23))": rest + 2 * oct_mul(x13, oct_mul(x12, x23))[..., 0],
        "Re(conj(x13)(x23 x12))": rest + 2 * oct_mul(bar(x13), oct_mul(x23, x12))[..., 0],
    }


def run(trials: int, seed: int, a_param: float) -> dict:
    T = triangular_factor3(RngStream(seed), a_param, trials)
    diag_product = np.prod(T[:, [0, 1, 2], [0, 1, 2], 0] ** 2, axis=-1)
    out = {}
    for name, matrix in (
        ("T^dagger T", conj_transpose_product(T)),
        ("T T^dagger", HermOct.from_matrix(oct_mat_mul(T, conj_transpose(T)))),
    ):
        dets = cubic_variants(matrix)
        out[name] = {
            k: {
                "negative_fraction": float(np.mean(v < 0)),
                "max_rel_gap_to_diag_product": float(np.max(np.abs(v - diag_product) / diag_product)),
            }
            for k, v in dets.items()
        }
    return out


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--a-param", type=float, default=1.0)
    a = p.parse_args()
    print(json.dumps(run(a.trials, a.seed, a.a_param), indent=2))
