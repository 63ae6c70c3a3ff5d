"""Random triangular group presentations and their certificates.

A triangular presentation has relations that are cyclically reduced words
of length three over n generators and their inverses.  This package
samples them (binomial and fixed-size models), searches for freeness
certificates by greedy generator elimination, computes link-graph spectra
to certify Kazhdan's property (T), evaluates the cheap non-freeness and
free-splitting witnesses, and drives seeded Monte Carlo sweeps over
(n, p) grids from a small CLI.
"""

from .freeness import (
    EliminationOutcome,
    FreenessCertificate,
    Hyperedge,
    Hypergraph,
    HypergraphReport,
    RelationClass,
    RelationKind,
    build_hypergraph,
    certificate_record,
    classify_relation,
    format_certificate,
    greedy_eliminate,
    hypergraph_diagnostics,
    subset_property_check,
    validate_certificate,
)
from .harness import (
    CSV_COLUMNS,
    EulerResult,
    SweepCell,
    SweepConfig,
    SweepResult,
    TrialSettings,
    TrialVerdict,
    classify_trial,
    euler_characteristic,
    find_isolated_generators,
    parse_p_expression,
    parse_sweep_config,
    run_sweep,
    summarize_rows,
    trial_seed,
    verdict_record,
)
from .linkgraph import (
    LinkDecomposition,
    Multigraph,
    MultiplicityReport,
    build_link_graph,
    decompose_link_graph,
    degree_concentration,
    dump_graph,
    is_connected,
    multiplicity_report,
    pair_capacity,
    partner,
)
from .spectra import (
    CombinationCheck,
    EigenSolution,
    PerturbationCheck,
    SolverError,
    SpectralReport,
    ZukResult,
    check_combination_inequality,
    check_perturbation_inequality,
    complete_graph,
    format_spectrum_csv,
    normalized_laplacian,
    spectral_gap,
    sym_eigs,
    zuk_certificate,
)
from .words import (
    FormatError,
    Presentation,
    Provenance,
    count_words,
    count_words_containing,
    decode_word,
    encode_word,
    enumerate_words,
    format_letter,
    is_cyclically_reduced,
    letter_rank,
    parse_letter,
    parse_presentation,
    rank_letter,
    sample_binomial,
    sample_uniform,
    serialize_presentation,
)

__version__ = "0.1.0"

_REPORT_NAMES = ("load_rows", "render_figures", "report_text")


def __getattr__(name):
    # figure rendering pulls in matplotlib; defer that until actually used
    if name in _REPORT_NAMES:
        from . import report

        return getattr(report, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = [
    "CSV_COLUMNS",
    "CombinationCheck",
    "EigenSolution",
    "EliminationOutcome",
    "EulerResult",
    "FormatError",
    "FreenessCertificate",
    "Hyperedge",
    "Hypergraph",
    "HypergraphReport",
    "LinkDecomposition",
    "Multigraph",
    "MultiplicityReport",
    "PerturbationCheck",
    "Presentation",
    "Provenance",
    "RelationClass",
    "RelationKind",
    "SolverError",
    "SpectralReport",
    "SweepCell",
    "SweepConfig",
    "SweepResult",
    "TrialSettings",
    "TrialVerdict",
    "ZukResult",
    "build_hypergraph",
    "build_link_graph",
    "certificate_record",
    "check_combination_inequality",
    "check_perturbation_inequality",
    "classify_relation",
    "classify_trial",
    "complete_graph",
    "count_words",
    "count_words_containing",
    "decode_word",
    "decompose_link_graph",
    "degree_concentration",
    "dump_graph",
    "encode_word",
    "enumerate_words",
    "euler_characteristic",
    "find_isolated_generators",
    "format_certificate",
    "format_letter",
    "format_spectrum_csv",
    "greedy_eliminate",
    "hypergraph_diagnostics",
    "is_connected",
    "is_cyclically_reduced",
    "letter_rank",
    "load_rows",
    "multiplicity_report",
    "normalized_laplacian",
    "pair_capacity",
    "parse_letter",
    "parse_p_expression",
    "parse_presentation",
    "parse_sweep_config",
    "partner",
    "rank_letter",
    "render_figures",
    "report_text",
    "run_sweep",
    "sample_binomial",
    "sample_uniform",
    "serialize_presentation",
    "spectral_gap",
    "subset_property_check",
    "summarize_rows",
    "sym_eigs",
    "trial_seed",
    "validate_certificate",
    "verdict_record",
    "zuk_certificate",
]
