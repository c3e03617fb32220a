"""Finite rough sets: approximation spaces, rough closure and interior
operators, their morphisms, and the functors relating them."""

from .approximation import (
    ApproximationSpace,
    Partition,
    all_spaces,
    associated_clopen_topology,
    boundary,
    equivalence_class,
    lower_approximation,
    set_partitions,
    upper_approximation,
)
from .errors import CapacityError, ConsistencyError, DomainError, InputError, RoughError
from .functors import (
    Arrow,
    Corpus,
    FunctorCheckReport,
    functor_F,
    functor_F_prime,
    functor_G,
    functor_G_inverse,
    space_corpus,
    verify_functor_laws,
    verify_roundtrips,
)
from .infosys import (
    InfoSystem,
    OADHom,
    find_reducts,
    finest_space,
    functor_H,
    functor_H_arrow,
    functor_H_prime,
    functor_H_prime_arrow,
    hprime_h_counterexample,
    indiscernibility,
    is_non_expansive,
    is_oad_homomorphism,
    single_attribute_system,
    verify_H_roundtrip,
)
from .morphisms import (
    MorphismVerdict,
    continuity_suite,
    is_aprs_isomorphism,
    is_continuous_closure_map,
    is_continuous_interior_map,
    is_lower_natural_transformation,
    is_relation_preserving,
    is_upper_natural_transformation,
    upper_natural_witness,
)
from .operators import (
    AxiomReport,
    SetOperator,
    classify_closure,
    classify_interior,
    dual_closure,
    dual_interior,
    evaluate,
    operator_topology,
    operators_equal,
    point_closure_basis,
    rough_census,
)
from .sets import (
    Check,
    Subset,
    TotalMap,
    Universe,
    complement,
    compose_maps,
    difference,
    direct_image,
    identity_map,
    intersection,
    inverse_image,
    union,
)
from .topology import FiniteTopology, analyze_topology, is_base, minimal_neighborhood

__version__ = "0.1.0"
