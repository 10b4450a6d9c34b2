"""Finite Galois connections, formal contexts and their orderings.

Subsets of a carrier are bitmasks (bit ``i`` is element ``i``). Set
``GALCORE_NUMBA=0`` to run the pure-numpy kernels, ``GALCORE_CAP`` to change
the largest carrier whose powerset is built explicitly, and
``GALCORE_CHECK=1`` to cross-check every characterization on each call.
"""

from ._accel import BACKEND
from .poset import CapExceededError, OrderMap, Poset, ValidationReport, Violation
from .galois import GaloisConnection, derive_adjoint, leaves, leaf_antiiso, nodes, validate_gc, validate_gc_adjoint
from .context import FormalContext, parse_cxt, polarity_of, relation_of, write_cxt
from .concepts import Concept, ConceptLattice, enumerate_concepts, gm_quotient
from .ordering import OrderVerdict, le_pointwise, le_relation, preceq_P, preceq_PQ, preceq_Q, sq_nodes
from .category import GalMorphism, embed_into_polarity, is_gal_morphism

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CapExceededError",
    "OrderMap",
    "Poset",
    "ValidationReport",
    "Violation",
    "GaloisConnection",
    "derive_adjoint",
    "leaves",
    "leaf_antiiso",
    "nodes",
    "validate_gc",
    "validate_gc_adjoint",
    "FormalContext",
    "parse_cxt",
    "polarity_of",
    "relation_of",
    "write_cxt",
    "Concept",
    "ConceptLattice",
    "enumerate_concepts",
    "gm_quotient",
    "OrderVerdict",
    "le_pointwise",
    "le_relation",
    "preceq_P",
    "preceq_PQ",
    "preceq_Q",
    "sq_nodes",
    "GalMorphism",
    "embed_into_polarity",
    "is_gal_morphism",
]
