"""Operator-lattice calculus on coordinate Riesz spaces.

Finite-dimensional vector lattices (R^n with entrywise order), regular
operators between them (matrices), and two-sided multiplication
superoperators T |-> A T B.  The package computes moduli, joins, and
meets of such operators both by closed forms and by refinement oracles,
evaluates weighted p-norms with duality witnesses, and mechanically
verifies the lattice identities and norm identities that the
superoperator family satisfies — including an exact finite lab in which
a partition-infimum computation stays strictly positive while its
sequence-space analogue vanishes.
"""

from .counterexample import (
    CoordinateFunctional,
    build_B,
    counterexample_report,
    identity_meet_B,
    inf_G_double_prime,
    meet_superoperator,
    meet_via_components,
    single_support_check,
)
from .corpus import Corpus, claim_cases, generate_corpus, parse_corpus_spec
from .lattice import (
    BandProjection,
    Component,
    DimensionMismatchError,
    LatticeVector,
    Partition,
    PartitionScheme,
    atomic_partition,
    disjoint_partitions,
    dyadic_partition,
    enumerate_components,
    halves_partition,
    refinement_chain,
    trivial_partition,
    vector_partitions,
)
from .norms import (
    LatticeNorm,
    NormAssignment,
    NormResult,
    batched_operator_norm,
    dual_norm,
    gap_report,
    hadamard_tensor_power,
    norming_functional,
    norming_vector,
    operator_norm,
    regular_norm,
    superop_regular_norm_1chain,
    vector_norm,
    verify_cor23,
)
from .operators import (
    OperatorPartition,
    OperatorSplitScheme,
    OracleResult,
    RegularOperator,
    atomic_operator_partition,
    meet_oracle,
    modulus_oracle,
    operator_partitions,
    random_operator_partition,
    rank_one,
    refinement_sums,
    trivial_operator_partition,
)
from .reports import (
    VerificationReport,
    canonical_json,
    digest_inputs,
    emit_report,
    make_report,
    render_console,
)
from .scalars import DEFAULT_TOLERANCE, ScalarModeError, parse_scalar, scalar_to_json
from .superop import (
    FactorlessSuperoperatorError,
    Superoperator,
    build,
    kron,
    operator_partition_sup,
    unvec,
    vec,
    verify_cor22,
    verify_prop21,
    verify_synnatzschke_a,
)

__version__ = "0.1.0"

__all__ = [
    "BandProjection",
    "Component",
    "CoordinateFunctional",
    "Corpus",
    "DEFAULT_TOLERANCE",
    "DimensionMismatchError",
    "FactorlessSuperoperatorError",
    "LatticeNorm",
    "LatticeVector",
    "NormAssignment",
    "NormResult",
    "OperatorPartition",
    "OperatorSplitScheme",
    "OracleResult",
    "Partition",
    "PartitionScheme",
    "RegularOperator",
    "ScalarModeError",
    "Superoperator",
    "VerificationReport",
    "atomic_operator_partition",
    "atomic_partition",
    "batched_operator_norm",
    "build",
    "build_B",
    "canonical_json",
    "claim_cases",
    "counterexample_report",
    "digest_inputs",
    "disjoint_partitions",
    "dual_norm",
    "dyadic_partition",
    "emit_report",
    "enumerate_components",
    "gap_report",
    "generate_corpus",
    "hadamard_tensor_power",
    "halves_partition",
    "identity_meet_B",
    "inf_G_double_prime",
    "kron",
    "make_report",
    "meet_oracle",
    "meet_superoperator",
    "meet_via_components",
    "modulus_oracle",
    "norming_functional",
    "norming_vector",
    "operator_norm",
    "operator_partition_sup",
    "operator_partitions",
    "parse_corpus_spec",
    "parse_scalar",
    "random_operator_partition",
    "rank_one",
    "refinement_chain",
    "refinement_sums",
    "regular_norm",
    "render_console",
    "scalar_to_json",
    "single_support_check",
    "superop_regular_norm_1chain",
    "trivial_operator_partition",
    "trivial_partition",
    "unvec",
    "vec",
    "vector_norm",
    "vector_partitions",
    "verify_cor22",
    "verify_cor23",
    "verify_prop21",
    "verify_synnatzschke_a",
]
