"""Centrality scores, top-k extraction, and set-overlap metrics.

Degree scores are exact integer counts cast to float.  Eigenvector
centrality comes from power iteration: the leading pair is computed on
the shifted matrix A + I so that bipartite spectra (lambda_min equal to
-lambda_1, e.g. trees) cannot make the iteration oscillate, and the
second eigenvalue uses a deflated shift A + lambda1 I - 2 lambda1 x x^T
whose dominant eigenvalue is lambda1 + lambda2 >= 0, so the algebraic
second eigenvalue is recovered rather than the most negative one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import connected_components

from .graphs import Graph

__all__ = [
    "ScoreVector",
    "TopKSet",
    "SpectralPair",
    "degree_scores",
    "spectral_top2",
    "leading_eigenvector",
    "top_k",
    "hamming",
    "jaccard",
]

# entries of a converged Perron vector may dip below zero by roundoff;
# anything in [-CLAMP, 0) is snapped to zero, anything lower is an error
NEGATIVE_CLAMP = 1e-9


@dataclass(frozen=True)
class ScoreVector:
    """Per-node centrality scores with their kind ('degree' or 'eigenvector')."""

    scores: np.ndarray
    kind: str

    def __post_init__(self):
        if self.kind not in ("degree", "eigenvector"):
            raise ValueError(f"unknown score kind {self.kind!r}")
        s = np.asarray(self.scores, dtype=np.float64)
        if s.ndim != 1 or s.size == 0:
            raise ValueError("scores must be a non-empty 1-d array")
        if not np.all(np.isfinite(s)):
            raise ValueError("scores must be finite")
        if self.kind == "eigenvector":
            if np.any(s < -NEGATIVE_CLAMP):
                raise ValueError("eigenvector scores must be nonnegative up to roundoff")
            norm = float(np.linalg.norm(s))
            if abs(norm - 1.0) > 1e-9:
                raise ValueError(f"eigenvector scores must have unit l2 norm, got {norm}")
        s.flags.writeable = False
        object.__setattr__(self, "scores", s)

    def __len__(self) -> int:
        return int(self.scores.size)


@dataclass(frozen=True)
class TopKSet:
    """A selected set of k nodes; tie_broken means the cutoff value was shared."""

    k: int
    members: frozenset
    tie_broken: bool

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be positive, got {self.k}")
        if len(self.members) != self.k:
            raise ValueError(f"expected {self.k} members, got {len(self.members)}")


@dataclass(frozen=True)
class SpectralPair:
    """Leading eigenpair plus the second eigenvalue and solver diagnostics."""

    lambda1: float
    lambda2: float
    x: ScoreVector
    converged: bool
    degenerate: bool
    disconnected: bool
    iterations: int
    residual: float

    def __post_init__(self):
        if self.lambda2 > self.lambda1:
            raise ValueError("lambda2 cannot exceed lambda1")


def degree_scores(g: Graph) -> ScoreVector:
    """Degree of every node as a score vector."""
    return ScoreVector(g.degree_array().astype(np.float64), "degree")


def _power_leading(matvec, n: int, v0: np.ndarray, tol: float, max_iter: int):
    """Power iteration for a matrix with nonnegative spectrum shift applied by caller."""
    v = v0 / np.linalg.norm(v0)
    its = 0
    diff = np.inf
    for its in range(1, max_iter + 1):
        w = matvec(v)
        norm = float(np.linalg.norm(w))
        if norm <= 1e-300:
            # operator annihilates the iterate; caller interprets
            return v, its, 0.0, True
        w /= norm
        diff = float(np.linalg.norm(w - v))
        v = w
        if diff <= tol:
            return v, its, diff, True
    return v, its, diff, False


def leading_eigenvector(
    g: Graph, tol: float = 1e-10, max_iter: int = 10000
) -> tuple[float, np.ndarray, bool]:
    """Leading eigenvalue and unit eigenvector of the adjacency matrix.

    Fast path used by the simulation harness when the second eigenvalue
    is not needed.  Returns (lambda1, x, converged); x is sign-fixed so
    its largest-magnitude entry is positive and tiny negative entries are
    clamped to zero.
    """
    n = g.n
    if n < 2:
        raise ValueError(f"need at least two nodes, got n={n}")
    if g.num_edges == 0:
        return 0.0, np.full(n, 1.0 / np.sqrt(n)), True
    adj = g.adjacency_csr()
    v0 = np.full(n, 1.0 / np.sqrt(n))
    # iterate on A + I: spectrum shifted to [1 - lambda1, 1 + lambda1],
    # strictly dominant at 1 + lambda1, so bipartite graphs converge too
    v, _, _, ok = _power_leading(lambda z: adj @ z + z, n, v0, tol, max_iter)
    lam = float(v @ (adj @ v))
    x = _fix_sign_and_clamp(v)
    return lam, x, ok


def _fix_sign_and_clamp(v: np.ndarray) -> np.ndarray:
    if v[np.argmax(np.abs(v))] < 0:
        v = -v
    v = np.where((v < 0) & (v >= -NEGATIVE_CLAMP), 0.0, v)
    return v / np.linalg.norm(v)


def spectral_top2(g: Graph, tol: float = 1e-10, max_iter: int = 10000) -> SpectralPair:
    """Top two adjacency eigenvalues and the leading eigenvector of g.

    Args:
        g: graph on at least two nodes.
        tol: successive-iterate l2 difference at which iteration stops.
        max_iter: iteration budget per eigenvalue.

    Returns:
        SpectralPair; converged is False when a budget was exhausted with
        residual above tol * max(1, lambda1), degenerate is True when the
        top two eigenvalues agree to 1e-8, and disconnected reports a
        component diagnostic (not an error).
    """
    n = g.n
    if n < 2:
        raise ValueError(f"need at least two nodes, got n={n}")

    adj = g.adjacency_csr()
    n_comp, _ = connected_components(adj, directed=False)
    disconnected = bool(n_comp > 1)

    if g.num_edges == 0:
        x = ScoreVector(np.full(n, 1.0 / np.sqrt(n)), "eigenvector")
        return SpectralPair(0.0, 0.0, x, True, True, disconnected, 0, 0.0)

    v0 = np.full(n, 1.0 / np.sqrt(n))
    v, it1, _, ok1 = _power_leading(lambda z: adj @ z + z, n, v0, tol, max_iter)
    lam1 = float(v @ (adj @ v))
    res1 = float(np.linalg.norm(adj @ v - lam1 * v))
    x = _fix_sign_and_clamp(v)

    # second eigenvalue: deflate x out of A + lambda1 I; remaining spectrum
    # is {lambda_i + lambda1 : i >= 2} union {0}, all nonnegative, with the
    # algebraic second eigenvalue on top
    def deflated(z: np.ndarray) -> np.ndarray:
        z = z - x * (x @ z)
        w = adj @ z + lam1 * z
        return w - x * (x @ w)

    # generic fixed-seed start: symmetric graphs (stars, rings) can leave
    # the all-ones direction orthogonal to the eigenspace of lambda2, so a
    # deterministic Gaussian vector is used instead
    w0 = np.random.default_rng(0x9E3779B97F4A7C15).standard_normal(n)
    w0 -= x * float(x @ w0)
    if np.linalg.norm(w0) < 1e-8:
        for basis in range(n):
            w0 = np.zeros(n)
            w0[basis] = 1.0
            w0 -= x * float(x @ w0)
            if np.linalg.norm(w0) >= 1e-8:
                break
    w, it2, _, ok2 = _power_leading(deflated, n, w0, tol, max_iter)
    w = w - x * float(x @ w)
    wn = float(np.linalg.norm(w))
    if wn <= 1e-150:
        lam2 = -lam1  # deflated operator annihilated everything orthogonal to x
        res2 = 0.0
    else:
        w /= wn
        lam2 = float(w @ (adj @ w))
        res2 = float(np.linalg.norm(deflated(w) - (lam2 + lam1) * w))
    lam2 = min(lam2, lam1)

    residual = max(res1, res2)
    # non-convergence means a budget ran out and the residual is still large
    converged = bool((ok1 and ok2) or residual <= tol * max(1.0, abs(lam1)))
    degenerate = bool(lam1 - lam2 <= 1e-8)
    return SpectralPair(
        lambda1=lam1,
        lambda2=lam2,
        x=ScoreVector(x, "eigenvector"),
        converged=converged,
        degenerate=degenerate,
        disconnected=disconnected,
        iterations=it1 + it2,
        residual=residual,
    )


def top_k(scores: ScoreVector, k: int, seed: int) -> TopKSet:
    """The k nodes with the largest scores; cutoff ties break uniformly at random.

    Nodes scoring strictly above the k-th largest value are always
    included; the remaining slots are filled by a uniform random choice
    (driven by seed) among the nodes exactly at the cutoff value.
    """
    s = scores.scores
    n = s.size
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}, got k={k}")
    cutoff = np.partition(s, n - k)[n - k]
    above = np.flatnonzero(s > cutoff)
    tied = np.flatnonzero(s == cutoff)
    slots = k - above.size
    tie_broken = bool(tied.size > 1)
    if slots == tied.size:
        chosen = tied
    else:
        rng = np.random.default_rng(seed)
        chosen = rng.choice(tied, size=slots, replace=False)
    members = frozenset(int(i) for i in above) | frozenset(int(i) for i in chosen)
    return TopKSet(k=k, members=members, tie_broken=tie_broken)


def hamming(a: TopKSet, b: TopKSet) -> int:
    """Symmetric-difference size between two equally sized top-k sets."""
    if a.k != b.k:
        raise ValueError(f"sets have different k: {a.k} vs {b.k}")
    return len(a.members.symmetric_difference(b.members))


def jaccard(a: TopKSet, b: TopKSet) -> float:
    """Intersection-over-union of two top-k sets, in [0, 1]."""
    if not a.members or not b.members:
        raise ValueError("jaccard needs non-empty sets")
    inter = len(a.members & b.members)
    union = len(a.members | b.members)
    return inter / union
