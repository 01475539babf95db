"""Bayesian updating of exchangeable quantum states.

The prior over single-system density operators is a finite weighted ensemble;
measurement outcomes reweight its atoms. :mod:`qbayes.oracle` checks that
rule against explicit multi-system states, and :mod:`qbayes.maxent` contrasts
it with maximum-entropy state assignment.
"""

from .bayes import (
    PosteriorMoments,
    PredictiveDistribution,
    bayes_update,
    bayes_update_collective,
    binomial_predictive,
    classical_bayes,
    counts_update,
    posterior_moments,
    posterior_predictive_counts,
    qubit_counts_update,
    total_variation,
)
from .core import (
    bloch_from_density,
    density_from_bloch,
    partial_trace,
    tensor_power,
    tensor_product,
    trace_distance,
    von_neumann_entropy,
)
from .ensemble import (
    Ensemble,
    MeasurementRecord,
    expand_to_copies,
    is_permutation_invariant,
    marginal_state,
    sample_measurement_record,
)
from .errors import (
    CapacityError,
    ConfigError,
    DimensionError,
    ImpossibleOutcomeError,
    InvalidArgumentError,
    InvalidPriorError,
    InvalidStateError,
    NoInteriorSolutionError,
    QBayesError,
)
from .maxent import ConstraintSet, MaxEntSolution, bayes_vs_maxent_report, maxent_qubit_z, maxent_state
from .measurement import (
    Povm,
    QuantumOperation,
    apply_operation,
    outcome_probabilities,
    povm_from_operation,
    projective_spin_povm,
    tetrahedral_sic_povm,
)
from .oracle import EquivalenceReport, brute_force_posterior, equivalence_report, probability_triple_check
from .priors import PriorSpec, discretize_prior, sample_bloch_uniform, sample_bures, sample_pure_haar

__version__ = "0.1.0"
