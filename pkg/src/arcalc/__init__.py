"""Exact Auslander-Reiten computations for invariant subspaces of nilpotent operators."""

from .linalg import DEFAULT_P, PrimeField
from .modules import Algebra, LMap, Module, module_from_partition
from .morphisms import HMorphism, HObject, SObject, FObject, mimo, mepi, named_object
from .krull_schmidt import decompose_object, is_isomorphic
from .ar import ar_sequence, orbit, tau_S
from .quiver import knit

__all__ = [
    "DEFAULT_P", "PrimeField", "Algebra", "LMap", "Module", "module_from_partition",
    "HMorphism", "HObject", "SObject", "FObject", "mimo", "mepi", "named_object",
    "decompose_object", "is_isomorphic", "ar_sequence", "orbit", "tau_S", "knit",
]
