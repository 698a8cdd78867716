"""Shared oracles and helpers for the test suite.

The dense eigensolver, the exact noise enumeration statistics, and the
quadrature normal CDF are independent reference implementations; library
code must match them, never the other way around.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.integrate
import scipy.linalg

from noisytopk import (
    Graph,
    NoiseParams,
    degree_scores,
    exact_noise_distribution,
    hamming_bounds_realization,
)


def dense_top2(g: Graph):
    """Reference (lambda1, lambda2, x) from a dense symmetric eigensolver.

    x is sign-aligned so its largest-magnitude entry is positive, matching
    the library convention.
    """
    a = np.zeros((g.n, g.n), dtype=float)
    for u, v in g.edges:
        a[u, v] = 1.0
        a[v, u] = 1.0
    vals, vecs = scipy.linalg.eigh(a)
    lam1 = float(vals[-1])
    lam2 = float(vals[-2]) if g.n >= 2 else lam1
    x = vecs[:, -1]
    pivot = np.argmax(np.abs(x))
    if x[pivot] < 0:
        x = -x
    return lam1, lam2, x


def expected_hamming_given_outcome(noisy_degrees, true_set: frozenset, k: int) -> float:
    """E[d_H | Y] under uniform tie-breaking of the noisy top-k cutoff.

    With t the (k+1)-th largest noisy score, every node above t is always
    selected and the remaining slots are a uniform subset of the nodes
    tied at t, so |selected ∩ S_k| has a hypergeometric mean.
    """
    s = np.asarray(noisy_degrees, dtype=float)
    n = s.size
    t = np.partition(s, n - k - 1)[n - k - 1]
    members = np.zeros(n, dtype=bool)
    members[list(true_set)] = True
    above = s > t
    tied = s == t
    slots = k - int(above.sum())
    mean_overlap = float(np.count_nonzero(above & members))
    n_tied = int(tied.sum())
    if slots > 0 and n_tied > 0:
        mean_overlap += slots * np.count_nonzero(tied & members) / n_tied
    return 2.0 * k - 2.0 * mean_overlap


def exact_stats(g: Graph, params: NoiseParams, true_topk, k: int):
    """Exact (E[d_H], E[lower], E[upper]) via full noise enumeration."""
    e_dh = e_lo = e_up = 0.0
    total = 0.0
    for outcome, prob in exact_noise_distribution(g, params):
        deg = outcome.degree_array()
        e_dh += prob * expected_hamming_given_outcome(deg, true_topk.members, k)
        hb = hamming_bounds_realization(true_topk, degree_scores(outcome), k)
        e_lo += prob * hb.lower
        e_up += prob * hb.upper
        total += prob
    assert abs(total - 1.0) <= 1e-12
    return e_dh, e_lo, e_up


def normal_cdf_quadrature(x: float) -> float:
    """Phi(x) by adaptive quadrature of the Gaussian density."""
    if x >= 0:
        tail, _ = scipy.integrate.quad(
            lambda u: math.exp(-u * u / 2.0) / math.sqrt(2.0 * math.pi), x, math.inf
        )
        return 1.0 - tail
    tail, _ = scipy.integrate.quad(
        lambda u: math.exp(-u * u / 2.0) / math.sqrt(2.0 * math.pi), -math.inf, x
    )
    return tail


def random_edges(rng: np.random.Generator, n: int, density: float = 0.4) -> Graph:
    """A random simple graph for oracle comparisons, direct pair sampling."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = rng.random(len(pairs)) < density
    edges = [pair for pair, flag in zip(pairs, keep) if flag]
    return Graph(n=n, edges=np.array(edges, dtype=np.int64).reshape(-1, 2))


def hill_tail_exponent(degrees_sorted_desc, top_fraction: float = 0.05) -> float:
    """Hill estimate of the CCDF tail exponent from the largest degrees.

    Uses the top `top_fraction` of the sample: exponent = 1 + 1/gamma with
    gamma the mean log-ratio against the cutoff order statistic.
    """
    d = np.asarray(degrees_sorted_desc, dtype=float)
    m = max(2, int(top_fraction * d.size))
    cutoff = d[m]
    ratios = np.log(d[:m] / cutoff)
    gamma = float(ratios.mean())
    return 1.0 + 1.0 / gamma
