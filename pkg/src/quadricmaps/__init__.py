"""Exact arithmetic for holomorphic maps between real hyperquadrics.

Everything is computed over Gaussian rationals: multiplier certificates
for the quadric-to-quadric identity, transversality and degeneracy
reports, Segre variety containments, recentering, automorphism groups,
and normalization into the paired polynomial form.
"""

from .scalars import GaussianRational, parse_scalar, format_scalar
from .polynomials import (
    HoloPoly,
    VariableSpace,
    divide_exact,
    weighted_truncation,
)
from .hermitian import BiholoPoly, ChartPoly, HermPoly
from .expressions import parse_constant, parse_expression, parse_point
from .linalg import Matrix, SparseRealSystem
from .isometries import (
    extend_rows_to_isometry,
    extend_rows_to_unitary,
    isometry_onto_basis,
    isometry_sending,
    reflection,
)
from .quadrics import (
    GeneralizedDelta,
    Hyperquadric,
    SegreVariety,
    Signature,
    cayley_identity_check,
    cayley_signs,
    cayley_transform,
    chart_q,
    flip_map,
    heisenberg_translation,
    hermitian_q,
    interchange_map,
    interchange_order,
)
from .maps import (
    AnyMap,
    DegeneracyReport,
    LocusReport,
    MultiplierCertificate,
    NotVerifiedError,
    QuadricMap,
    RationalMap,
    RecenteredMap,
    SegreContainmentReport,
    SignatureCheck,
    TransversalityReport,
    compose_quadric_maps,
    degeneracy_check,
    multiplier,
    nontransversality_locus,
    recenter,
    segre_containment,
    siegel_side_samples,
    signature_necessary_conditions,
    span_dimension,
    transversality,
)
from .automorphisms import (
    AutParams,
    Automorphism,
    compose,
    conjugate_by_permutation,
    make_automorphism,
    random_indefinite_unitary,
)
from .normalform import (
    CouplingReport,
    NormalizationError,
    NormalizedMap,
    apply_factors,
    as_polynomial,
    check_coupling,
    normalize,
    pre_normal_form,
    reference_normal_form,
)
from .lemmas import (
    DecompositionReport,
    DivisionOutcome,
    IsometryWitness,
    LayeredVerdict,
    PairingVerdict,
    SignedSquaresVerdict,
    divide_by_form,
    isometry_decompose,
    layered_pairing_check,
    pairing_divisibility_check,
    pairing_form,
    signed_squares_check,
)
from .linearize import (
    BlockCertificate,
    KernelReport,
    MembershipReport,
    block_rank_membership,
    cm_kernel_solve,
    cm_kernel_solve_many,
    linearized_operator,
    paired_block_sum,
)
from .mapfiles import (
    MapFileError,
    autparams_from_dict,
    autparams_to_dict,
    load_map,
    map_from_dict,
    map_to_dict,
    save_map,
    validate_mapfile,
)
from .gallery import gallery_entry, gallery_ids, gallery_map
from .corpus import CorpusSpec, corpus_entry, gen_corpus

__version__ = "0.1.0"

__all__ = [
    "AnyMap",
    "AutParams",
    "Automorphism",
    "BiholoPoly",
    "BlockCertificate",
    "ChartPoly",
    "CorpusSpec",
    "CouplingReport",
    "DecompositionReport",
    "DegeneracyReport",
    "DivisionOutcome",
    "GaussianRational",
    "GeneralizedDelta",
    "HermPoly",
    "HoloPoly",
    "Hyperquadric",
    "IsometryWitness",
    "KernelReport",
    "LayeredVerdict",
    "LocusReport",
    "MapFileError",
    "Matrix",
    "MembershipReport",
    "MultiplierCertificate",
    "NormalizationError",
    "NormalizedMap",
    "NotVerifiedError",
    "PairingVerdict",
    "QuadricMap",
    "RationalMap",
    "RecenteredMap",
    "SegreContainmentReport",
    "SegreVariety",
    "SignedSquaresVerdict",
    "Signature",
    "SignatureCheck",
    "SparseRealSystem",
    "TransversalityReport",
    "VariableSpace",
    "apply_factors",
    "as_polynomial",
    "autparams_from_dict",
    "autparams_to_dict",
    "block_rank_membership",
    "cayley_identity_check",
    "cayley_signs",
    "cayley_transform",
    "chart_q",
    "check_coupling",
    "cm_kernel_solve",
    "cm_kernel_solve_many",
    "compose",
    "compose_quadric_maps",
    "conjugate_by_permutation",
    "corpus_entry",
    "degeneracy_check",
    "divide_by_form",
    "divide_exact",
    "extend_rows_to_isometry",
    "extend_rows_to_unitary",
    "flip_map",
    "format_scalar",
    "gallery_entry",
    "gallery_ids",
    "gallery_map",
    "gen_corpus",
    "heisenberg_translation",
    "hermitian_q",
    "interchange_map",
    "interchange_order",
    "isometry_decompose",
    "isometry_onto_basis",
    "isometry_sending",
    "layered_pairing_check",
    "linearized_operator",
    "load_map",
    "make_automorphism",
    "map_from_dict",
    "map_to_dict",
    "multiplier",
    "nontransversality_locus",
    "normalize",
    "paired_block_sum",
    "pairing_divisibility_check",
    "pairing_form",
    "parse_constant",
    "parse_expression",
    "parse_point",
    "pre_normal_form",
    "random_indefinite_unitary",
    "recenter",
    "reference_normal_form",
    "reflection",
    "save_map",
    "segre_containment",
    "siegel_side_samples",
    "signature_necessary_conditions",
    "signed_squares_check",
    "span_dimension",
    "transversality",
    "validate_mapfile",
]
