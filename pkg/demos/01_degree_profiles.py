"""Ordered degree profiles before and after edge-flip noise.

Builds one ER, one small-world, and one preferential-attachment graph,
all matched to roughly the same mean degree, perturbs each with the same
flip rates, and prints the top of the ranked degree table side by side.
The point of the comparison: PA hubs sit far above the crowd and keep
their lead after noise, while the near-flat ER and ring profiles get
scrambled at the top because the degree gaps are smaller than the noise.
"""

from noisytopk import NoiseParams, run_figure1_profile

N = 200
MEAN_DEGREE = 24
NOISE = NoiseParams(alpha=0.02, beta=0.05)
SEED = 71
SHOW = 12


def main():
    profile = run_figure1_profile(N, MEAN_DEGREE, NOISE, seed=SEED)
    print(f"n = {profile['n']}, target mean degree = {profile['mean_degree']}, "
          f"alpha = {profile['alpha']}, beta = {profile['beta']}")
    print()

    for name, entry in profile["models"].items():
        print(f"model {name}: achieved mean degree {entry['achieved_mean_degree']:.2f}")
        if "mean_degree_note" in entry:
            print(f"  ({entry['mean_degree_note']})")
        print(f"  {'rank':>4}  {'node':>5}  {'degree':>6}  {'noisy':>6}")
        for rank, node, deg, noisy in entry["rows"][:SHOW]:
            print(f"  {rank:>4}  {node:>5}  {deg:>6}  {noisy:>6}")
        top = entry["rows"][0][2]
        cut = entry["rows"][SHOW - 1][2]
        print(f"  spread across the top {SHOW} original ranks: {top - cut}")
        print()

    print("The PA column shows a large spread, so the noisy column preserves the")
    print("ordering of the biggest hubs. The ER and sw spreads are a few edges at")
    print("most, which is comparable to the noise, and the noisy column reorders.")


if __name__ == "__main__":
    main()
