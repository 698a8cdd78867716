"""The leading eigenvector of a PA tree localizes on the largest hub.

Samples preferential-attachment trees (one edge per arrival) at growing
sizes and summarizes three diagnostics of the leading adjacency
eigenvector: the entry at the maximum-degree vertex h, the squared mass
outside h and its neighborhood, and the entry gap between h and its
best neighbor.

The hub entry stays bounded away from zero as n grows and the outside
mass shrinks, which is the numerical signature of localization: the
eigenvector concentrates on the star around h instead of spreading.
"""

from noisytopk import run_localization

N_GRID = (100, 200, 400, 800)
REPS = 80


def main():
    rows = run_localization(N_GRID, reps=REPS, b=1.0, seed_root=4400)

    print(f"PA trees (m=1, b=1), {REPS} networks per size")
    print()
    print(f"{'n':>5}  {'x_h med':>8}  {'x_h q10':>8}  {'m_out med':>9}  "
          f"{'gap med':>8}  {'used':>5}  {'hub ties':>8}")
    for row in rows:
        print(f"{row.n:>5}  {row.x_h_q50:8.3f}  {row.x_h_q10:8.3f}  "
              f"{row.m_out_q50:9.3f}  {row.gap_q50:8.3f}  "
              f"{row.reps_used:>5}  {row.n_hub_ties:>8}")
    print()
    print("x_h is the eigenvector entry at the top-degree vertex, m_out the")
    print("squared eigenvector mass outside that vertex and its neighbors, and")
    print("gap the margin by which h beats its best neighbor. The hub entry and")
    print("the gap hold steady across a factor of eight in n while the outside")
    print("mass drifts down, so ranking by eigenvector entry keeps finding the")
    print("hub at every size instead of diluting as the tree grows.")


if __name__ == "__main__":
    main()
