"""Exact n-plectic calculus on torsionless Lie-Rinehart pairs over Q."""

from .calculus import (
    ce_differential,
    contract,
    higher_bracket,
    lie_derivative,
    natural_inclusion,
    pairing,
    schouten,
    tensor_jacobi_residual,
)
from .cohomology import (
    CohomClass,
    NotACocycle,
    ce_cohomology_rank,
    ce_cohomology_table,
    class_of,
    extension_cohomology_rank,
    extension_cohomology_table,
    poisson_bracket,
    poisson_jacobi_residual,
)
from .elements import Cotensor, Tensor
from .engine import (
    DEFAULT_EXTENSION_ARITY_CAP,
    DegreeError,
    ExtensionElement,
    NotClosedError,
    NPlecticStructure,
    SymplecticTensor,
    d_omega,
    extension_bracket,
    extension_jacobi_residual,
    fundamental_pairing_check,
    hamiltonian_potential,
    is_symplectic,
    kernel_basis,
    make_structure,
    reduce_mod_kernel,
    structure_from_json,
    symplectic_basis,
)
from .identities import cartan_suite, pairing_suite
from .linf import (
    ClassLinf,
    ExtensionLinf,
    FiniteLInfinity,
    PairLinf,
    TensorLinf,
    check_linf,
    check_momentum_map,
    check_morphism,
    inclusion_component,
    jacobi_residual,
    morphism_residual,
)
from .models import (
    BUILTIN_STRUCTURES,
    degenerate_plane,
    heisenberg_pair,
    rotation_momentum,
    su2_cartan,
    su2_pair,
    symplectic_plane,
)
from .pairs import (
    ConstantPair,
    PairDescriptor,
    PairMorphismCandidate,
    PolyVectorFieldPair,
    pair_from_json,
    pair_to_json,
    validate_morphism,
    validate_pair,
)
from .report import CheckResult, Report, canonical_json
from .scalars import (
    CapExceeded,
    Fraction,
    Permutation,
    Poly,
    Rational,
    ShuffleSet,
    bell,
    bell_identity_check,
    enumerate_shuffles,
    koszul_sign,
    shuffles,
)

__all__ = [
    "BUILTIN_STRUCTURES",
    "CapExceeded",
    "CheckResult",
    "ClassLinf",
    "CohomClass",
    "ConstantPair",
    "Cotensor",
    "DEFAULT_EXTENSION_ARITY_CAP",
    "DegreeError",
    "ExtensionElement",
    "ExtensionLinf",
    "FiniteLInfinity",
    "Fraction",
    "NPlecticStructure",
    "NotACocycle",
    "NotClosedError",
    "PairDescriptor",
    "PairLinf",
    "PairMorphismCandidate",
    "Permutation",
    "Poly",
    "PolyVectorFieldPair",
    "Rational",
    "Report",
    "ShuffleSet",
    "SymplecticTensor",
    "Tensor",
    "TensorLinf",
    "bell",
    "bell_identity_check",
    "canonical_json",
    "cartan_suite",
    "ce_cohomology_rank",
    "ce_cohomology_table",
    "ce_differential",
    "check_linf",
    "check_momentum_map",
    "check_morphism",
    "class_of",
    "contract",
    "d_omega",
    "degenerate_plane",
    "enumerate_shuffles",
    "extension_bracket",
    "extension_cohomology_rank",
    "extension_cohomology_table",
    "extension_jacobi_residual",
    "fundamental_pairing_check",
    "hamiltonian_potential",
    "heisenberg_pair",
    "higher_bracket",
    "inclusion_component",
    "is_symplectic",
    "jacobi_residual",
    "kernel_basis",
    "koszul_sign",
    "lie_derivative",
    "make_structure",
    "morphism_residual",
    "natural_inclusion",
    "pair_from_json",
    "pair_to_json",
    "pairing",
    "pairing_suite",
    "poisson_bracket",
    "poisson_jacobi_residual",
    "reduce_mod_kernel",
    "rotation_momentum",
    "schouten",
    "shuffles",
    "structure_from_json",
    "su2_cartan",
    "su2_pair",
    "symplectic_basis",
    "symplectic_plane",
    "tensor_jacobi_residual",
    "validate_morphism",
    "validate_pair",
]

__version__ = "0.1.0"
