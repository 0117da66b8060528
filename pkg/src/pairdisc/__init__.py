"""Pairwise causal discovery for heterogeneous data.

Classifies the relation between two observed variables as Causal,
Anticausal, Independent, or Confounded using a linear additive-noise model,
residual independence testing, and a per-data-type choice between a
chi-squared test and a permutation-based total information coefficient.
"""

from .bench import (
    BenchReport,
    LabeledPair,
    StratumScore,
    accuracy,
    ace,
    bootstrap_accuracy,
    load_pairs,
    run_benchmark,
    welch_t_test,
)
from .discover import CausalVerdict, DiscoveryConfig, classify_pvalues, resfit, resit
from .errors import (
    ConstantVariableError,
    DegenerateRegressorError,
    DegenerateTableError,
    PairdiscError,
    ParseError,
    ValidationError,
)
from .indep import (
    ContingencyTable,
    TestResult,
    bin_uniform,
    chi2_pvalue,
    chi2_statistic,
    chi2_test,
    mutual_information,
)
from .model import (
    DEFAULT_TEST_POLICY,
    ObservationSeries,
    PairType,
    Structure,
    TestKind,
    VariablePair,
    VarType,
    infer_pair_type,
    infer_var_type,
    select_test,
    variable_pair,
)
from .regress import LinearFit, ols_fit
from .rng import RngSeed, derive, generator
from .synth import StructureKind, SynthSample, generate_structure, mi_distribution
from .tic import GridPartition, optimal_partition, partition_mutual_information, tic_statistic, tic_test

__version__ = "0.1.0"

__all__ = [
    "BenchReport",
    "CausalVerdict",
    "ConstantVariableError",
    "ContingencyTable",
    "DEFAULT_TEST_POLICY",
    "DegenerateRegressorError",
    "DegenerateTableError",
    "DiscoveryConfig",
    "GridPartition",
    "LabeledPair",
    "LinearFit",
    "ObservationSeries",
    "PairdiscError",
    "PairType",
    "ParseError",
    "RngSeed",
    "StratumScore",
    "Structure",
    "StructureKind",
    "SynthSample",
    "TestKind",
    "TestResult",
    "ValidationError",
    "VarType",
    "VariablePair",
    "accuracy",
    "ace",
    "bin_uniform",
    "bootstrap_accuracy",
    "chi2_pvalue",
    "chi2_statistic",
    "chi2_test",
    "classify_pvalues",
    "derive",
    "generate_structure",
    "generator",
    "infer_pair_type",
    "infer_var_type",
    "load_pairs",
    "mi_distribution",
    "mutual_information",
    "ols_fit",
    "optimal_partition",
    "partition_mutual_information",
    "resfit",
    "resit",
    "run_benchmark",
    "select_test",
    "tic_statistic",
    "tic_test",
    "variable_pair",
    "welch_t_test",
]
