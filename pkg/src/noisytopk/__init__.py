"""Top-k identification from noisy network observations.

Generate random graphs (Erdos-Renyi, preferential attachment, small
world), perturb them with independent edge flips, score nodes by degree
or eigenvector centrality, and evaluate recovery guarantees,
infeasibility thresholds, and Hamming-distance envelopes, with a Monte
Carlo harness that reproduces the reference simulations.
"""

from .bounds import (
    CorrectionTerms,
    DegreeMoments,
    EvecBound,
    HammingBoundsRealization,
    InfeasibilityReport,
    SeparationReport,
    TailEnvelope,
    bound_report,
    classify_regime,
    correction_terms,
    default_c_of_n,
    default_i_star,
    er_expected_hamming_lower_bound,
    er_noise_variance_proxy,
    evec_bound,
    evec_gap_check,
    hamming_bounds_realization,
    infeasibility_report,
    noisy_degree_moments,
    normal_cdf,
    separation_report,
    tail_envelope,
)
from .centrality import (
    ScoreVector,
    SpectralPair,
    TopKSet,
    degree_scores,
    hamming,
    jaccard,
    leading_eigenvector,
    spectral_top2,
    top_k,
)
from .experiments import (
    ExperimentConfig,
    LocalizationRow,
    NoiseSchedule,
    SummaryRow,
    derive_seed,
    run_figure1_profile,
    run_jaccard_comparison,
    run_localization,
    run_topk_experiment,
    write_figure1_csv,
    write_json_mirror,
    write_localization_csv,
    write_summary_csv,
)
from .graphs import (
    DegreeSequence,
    Graph,
    PaParams,
    degrees,
    generate_er,
    generate_pa,
    generate_small_world,
    load_edge_list,
    pair_from_index,
    pair_index,
    save_edge_list,
)
from .noise import NoiseParams, apply_noise, exact_noise_distribution

__version__ = "0.1.0"

__all__ = [
    "CorrectionTerms",
    "DegreeMoments",
    "DegreeSequence",
    "EvecBound",
    "ExperimentConfig",
    "Graph",
    "HammingBoundsRealization",
    "InfeasibilityReport",
    "LocalizationRow",
    "NoiseParams",
    "NoiseSchedule",
    "PaParams",
    "ScoreVector",
    "SeparationReport",
    "SpectralPair",
    "SummaryRow",
    "TailEnvelope",
    "TopKSet",
    "apply_noise",
    "bound_report",
    "classify_regime",
    "correction_terms",
    "default_c_of_n",
    "default_i_star",
    "degree_scores",
    "degrees",
    "derive_seed",
    "er_expected_hamming_lower_bound",
    "er_noise_variance_proxy",
    "evec_bound",
    "evec_gap_check",
    "exact_noise_distribution",
    "generate_er",
    "generate_pa",
    "generate_small_world",
    "hamming",
    "hamming_bounds_realization",
    "infeasibility_report",
    "jaccard",
    "leading_eigenvector",
    "load_edge_list",
    "noisy_degree_moments",
    "normal_cdf",
    "pair_from_index",
    "pair_index",
    "run_figure1_profile",
    "run_jaccard_comparison",
    "run_localization",
    "run_topk_experiment",
    "save_edge_list",
    "separation_report",
    "spectral_top2",
    "tail_envelope",
    "top_k",
    "write_figure1_csv",
    "write_json_mirror",
    "write_localization_csv",
    "write_summary_csv",
]
