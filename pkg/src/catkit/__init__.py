"""Verification toolkit for finite category theory: categories, functors,
natural transformations, diagram chasing, limits and adjunctions, with
finite-topology and table-group companions."""

from .core import (
    FinCategory,
    FinFunction,
    MorData,
    MultiGraph,
    PosetData,
    RawCategory,
    classify_category,
    classify_morphism,
    find_special_object,
    finset_skeleton,
    free_category,
    hom_set,
    is_full_subcategory,
    opposite_category,
    poset_category,
    product_category,
    recheck_category,
    subcategory,
    validate_category,
    zero_morphism,
)
from .diagram import Diagram, achievable_composites, build_diagram, is_commutative
from .errors import CheckError
from .functor import (
    FunctorData,
    MonoidalTensor,
    check_bifunctoriality,
    classify_functor,
    compose_functors,
    diagonal_functor,
    hom_bifunctor,
    hom_functor,
    identity_functor,
    inclusion_functor,
    product_of_functions,
    product_tensor,
    validate_functor,
)
from .nattrans import (
    NatTransData,
    check_interchange,
    check_natural,
    coend_finset,
    end_equals_limit_check,
    end_finset,
    functor_category,
    godement,
    is_natural_iso,
    vcompose,
)
from .universal import (
    AdjunctionData,
    Cone,
    check_adjunction,
    colimit_finset,
    comma_category,
    duality_check,
    find_adjoint,
    is_limit_cone,
    limit_finset,
    preservation_check,
    search_colimit,
    search_limit,
)

__version__ = "0.1.0"
