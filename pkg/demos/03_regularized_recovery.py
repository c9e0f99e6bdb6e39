"""
Stabilized inversion: damp what the data cannot support.

The regularized estimator divides by the forward multiplier and then
applies the low-pass filter 1 / (1 + xi^2 mu^2).  Small mu keeps more of
the data (and more of the noise); large mu returns a smooth but biased
estimate.  Somewhere in between the two error sources balance.
"""

import math

import numpy as np

from sourcefft import (
    NoiseSpec,
    add_noise,
    cosine_source,
    estimate_source_regularized,
    estimate_source_unregularized,
    exact_data,
    make_grid,
    relative_l2_error,
    sample_source,
)

DELTA = 0.05
SEEDS = range(10)


def main():
    grid = make_grid(256, 0.0, 2.0 * math.pi)
    f = sample_source(cosine_source(), grid)
    g = exact_data(cosine_source(), grid)

    print(f"cosine source, iid noise delta = {DELTA}, {len(list(SEEDS))} seeds")
    print(f"\n  {'mu':>6}  {'mean rel error':>15}")
    raw = np.mean([
        relative_l2_error(
            estimate_source_unregularized(add_noise(g, NoiseSpec(DELTA, s))), f
        )
        for s in SEEDS
    ])
    print(f"  {'0':>6}  {raw:15.3f}    <- naive inversion")
    for mu in (0.1, 0.3, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0):
        mean = np.mean([
            relative_l2_error(
                estimate_source_regularized(add_noise(g, NoiseSpec(DELTA, s)), mu),
                f,
            )
            for s in SEEDS
        ])
        print(f"  {mu:6.1f}  {mean:15.3f}")

    print("\nthe error drops by three orders of magnitude once the filter")
    print("suppresses the amplified high-frequency noise, then climbs again")
    print("as the filter starts to eat the signal itself.")


if __name__ == "__main__":
    main()
