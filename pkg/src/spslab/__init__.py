"""Finite state property systems, closure spaces and their decomposition."""

from .closure import (
    ContinuousMap,
    FiniteClosureSpace,
    Partition,
    clopen_sets,
    closure_of,
    components,
    induced_subspace,
    is_connected,
    is_continuous,
    is_topological,
    is_totally_disconnected,
    is_zero_dimensional,
    quotient_space,
    validate_closure_space,
    zero_dimensional_core,
)
from .decomposition import (
    ComponentSystem,
    Decomposition,
    classical_part,
    component_property,
    component_systems,
    decompose,
    segment_system,
    totally_classical_system,
    totally_classical_via_quotient,
)
from .functors import (
    IsoWitness,
    counit_check,
    functor_F,
    functor_F_mor,
    functor_G,
    functor_G_mor,
    sps_isomorphic,
    unit_iso,
)
from .order import FiniteLattice, PointUniverse, SetFamily, interval, intersection_closure, join, meet, validate_lattice
from .report import Counterexample, InputError, InvalidInstance, ValidationReport, Violation
from .sps import (
    SpsMorphism,
    StatePropertySystem,
    cartan,
    cartan_image,
    classical_properties,
    is_classical_property,
    is_classical_sps,
    is_pure_nonclassical,
    ssr,
    strongest_property,
    validate_morphism,
    validate_sps,
)

__version__ = "0.1.0"

__all__ = [
    "cartan",
    "cartan_image",
    "classical_part",
    "classical_properties",
    "clopen_sets",
    "closure_of",
    "component_property",
    "component_systems",
    "components",
    "ComponentSystem",
    "ContinuousMap",
    "counit_check",
    "Counterexample",
    "decompose",
    "Decomposition",
    "FiniteClosureSpace",
    "FiniteLattice",
    "functor_F",
    "functor_F_mor",
    "functor_G",
    "functor_G_mor",
    "induced_subspace",
    "InputError",
    "intersection_closure",
    "interval",
    "InvalidInstance",
    "is_classical_property",
    "is_classical_sps",
    "is_connected",
    "is_continuous",
    "is_pure_nonclassical",
    "is_topological",
    "is_totally_disconnected",
    "is_zero_dimensional",
    "IsoWitness",
    "join",
    "meet",
    "Partition",
    "PointUniverse",
    "quotient_space",
    "segment_system",
    "SetFamily",
    "sps_isomorphic",
    "SpsMorphism",
    "ssr",
    "StatePropertySystem",
    "strongest_property",
    "totally_classical_system",
    "totally_classical_via_quotient",
    "unit_iso",
    "validate_closure_space",
    "validate_lattice",
    "validate_morphism",
    "validate_sps",
    "ValidationReport",
    "Violation",
    "zero_dimensional_core",
]
