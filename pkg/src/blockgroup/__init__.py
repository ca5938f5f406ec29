"""Block designs whose blocks, with the empty set, form a group under
symmetric difference."""

from .constructions import (
    HadamardMatrix,
    hadamard_to_2design,
    hadamard_to_3design,
    pg_complement,
    pg_hyperplanes,
    sdp_biplane,
    sylvester_hadamard,
)
from .design import (
    Design,
    DesignFormatError,
    DesignParams,
    NotBIBDError,
    complement_design,
    coverage_number,
    design_from_matrix,
    format_design,
    incidence_matrix,
    is_symmetric,
    parse_design,
    verify_bibd,
)
from .enumeration import EnumerationResult, enumerate_delta_closed, weight_filtered_basis_search
from .gf2 import BitVector, GF2Matrix, gf2_rank, rref, span_size, xor
from .group import (
    delta_closure_check,
    forced_params,
    good_block_classes,
    hamada_bound_check,
    kantor_group,
    kimberley_group,
    lemma2_predicate,
    sdp_check,
)
from .isomorphism import (
    CanonicalForm,
    PointPermutation,
    apply_permutation,
    are_isomorphic,
    automorphism_group_order,
    canonical_form,
    verify_certificate,
)
from .kernels import BACKEND

__version__ = "0.1.0"
