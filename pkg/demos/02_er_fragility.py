"""Top-k recovery on dense ER graphs collapses under mild noise.

Runs a small grid study on ER(n, p) at a fixed size, sweeping symmetric
flip rates upward, and prints the exact-recovery rate next to the mean
half-Hamming distance and its per-realization sandwich. The closed-form
lower bound on the expected half-Hamming distance is printed where the
noise is strong enough for it to apply (nan otherwise).

In a dense ER graph the top degrees are order-statistics of a Binomial
sample, so consecutive gaps are tiny compared to the noise standard
deviation. Even a one-percent flip rate destroys exact recovery.
"""

import math

from noisytopk import ExperimentConfig, NoiseParams, run_topk_experiment

N = 400
P = 0.3
K = 5
GRID = (0.002, 0.01, 0.05, 0.15)


def main():
    cfg = ExperimentConfig(
        model="er",
        model_params={"n": N, "p": P},
        k=K,
        graphs_per_point=15,
        noise_draws_per_graph=20,
        seed_root=4202,
        noise_grid=tuple(NoiseParams(r, r) for r in GRID),
        theory_curve=True,
    )
    rows = run_topk_experiment(cfg)

    print(f"ER(n={N}, p={P}), k={K}, symmetric flip rates, "
          f"{cfg.graphs_per_point} graphs x {cfg.noise_draws_per_graph} draws per cell")
    print()
    header = (f"{'rate':>6}  {'exact':>6}  {'dH/2':>7}  {'lower':>7}  "
              f"{'upper':>7}  {'theory':>9}")
    print(header)
    for row in rows:
        theory = f"{row.theory_lower:9.3e}" if not math.isnan(row.theory_lower) else f"{'nan':>9}"
        print(f"{row.alpha:6.3f}  {row.exact_recovery_rate:6.3f}  "
              f"{row.mean_half_hamming:7.3f}  {row.mean_lower_bound:7.3f}  "
              f"{row.mean_upper_bound:7.3f}  {theory}")
    print()
    print("exact is the fraction of draws that recovered the true top-k set,")
    print("dH/2 counts the misplaced nodes, and lower/upper are the means of the")
    print("per-realization sandwich, so dH/2 always sits between them. The theory")
    print("column is a closed-form lower bound on E[dH/2]: astronomically small")
    print("while the flip rate is below the graph's own degree fluctuations, and")
    print("only starting to bite at the largest rate (nan if inapplicable).")


if __name__ == "__main__":
    main()
