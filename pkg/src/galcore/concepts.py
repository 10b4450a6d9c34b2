"""Concept lattices, preconcepts, protoconcepts, and the quotient of the
preconcept pre-order.

Concepts are listed in canonical order: ascending extent bitmask. That order
is a linear extension of the concept order, since ``A ⊊ A'`` implies
``int(A) < int(A')``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import kernels
from .context import FormalContext, is_subset
from .poset import Poset, covers, is_complete_lattice, join, meet


class PreconceptError(ValueError):
    """Raised when an operation defined on preconcepts receives some other pair."""


class Concept(NamedTuple):
    extent: int
    intent: int


@dataclass(frozen=True)
class ConceptLattice:
    context: FormalContext
    concepts: tuple[Concept, ...]

    def __len__(self):
        return len(self.concepts)

    def __iter__(self):
        return iter(self.concepts)

    @cached_property
    def order(self) -> np.ndarray:
        """``order[i, j]`` iff extent ``i`` is contained in extent ``j``."""
        ext = np.array([c.extent for c in self.concepts], dtype=object)
        n = len(ext)
        out = np.zeros((n, n), dtype=bool)
        for i in range(n):
            for j in range(n):
                out[i, j] = ext[i] & ~ext[j] == 0
        out.setflags(write=False)
        return out

    @cached_property
    def poset(self) -> Poset:
        return Poset(self.order, [str(i) for i in range(len(self.concepts))])

    @cached_property
    def index(self) -> dict[int, int]:
        """Extent bitmask to concept index."""
        return {c.extent: i for i, c in enumerate(self.concepts)}

    def join(self, indices) -> int | None:
        return join(self.poset, indices)

    def meet(self, indices) -> int | None:
        return meet(self.poset, indices)

    def covers(self) -> list[tuple[int, int]]:
        return covers(self.poset)

    def top(self) -> int:
        return self.index[self.context.G]

    def bottom(self) -> int:
        return self.index[self.context.K(self.context.M)]

    def is_complete(self) -> bool:
        return is_complete_lattice(self.poset)

    def extents(self) -> list[int]:
        return [c.extent for c in self.concepts]

    def intents(self) -> list[int]:
        return [c.intent for c in self.concepts]


def is_concept(ctx: FormalContext, A: int, B: int) -> bool:
    return ctx.H(A) == B and ctx.K(B) == A


def enumerate_concepts(ctx: FormalContext) -> ConceptLattice:
    """All concepts, once each, in ascending extent order (closure-based enumeration)."""
    rows, cols = ctx.row_array, ctx.col_array
    gfull, mfull = kernels.full_mask(ctx.g_count), kernels.full_mask(ctx.m_count)
    extents = kernels.closed_extents(rows, cols, gfull, mfull)
    intents = kernels.intents_of(extents, rows, mfull)
    concepts = tuple(Concept(int(a), int(b)) for a, b in zip(extents, intents))
    return ConceptLattice(ctx, concepts)


# --------------------------------------------------------------------------
# preconcepts


def is_preconcept(ctx: FormalContext, C: int, D: int) -> bool:
    return is_subset(D, ctx.H(C))


def _require_preconcept(ctx: FormalContext, C: int, D: int):
    if not is_preconcept(ctx, C, D):
        raise PreconceptError(
            f"({ctx.objects(C)}, {ctx.attributes(D)}) is not a preconcept: D is not contained in H(C)"
        )


def is_protoconcept(ctx: FormalContext, C: int, D: int) -> bool:
    """``KH(C) == K(D)`` for a preconcept ``(C, D)``."""
    _require_preconcept(ctx, C, D)
    return ctx.K(ctx.H(C)) == ctx.K(D)


def precon_interval(ctx: FormalContext, C: int, D: int) -> tuple[Concept, Concept]:
    """Smallest and largest concept above ``(C, D)`` componentwise."""
    _require_preconcept(ctx, C, D)
    hc, kd = ctx.H(C), ctx.K(D)
    return Concept(ctx.K(hc), hc), Concept(kd, ctx.H(kd))


def precon_members(ctx: FormalContext, C: int, D: int, lattice: ConceptLattice | None = None) -> list[Concept]:
    """Concepts ``(A, B)`` with ``C ⊆ A`` and ``D ⊆ B``, in canonical order."""
    _require_preconcept(ctx, C, D)
    lattice = lattice or enumerate_concepts(ctx)
    return [c for c in lattice if is_subset(C, c.extent) and is_subset(D, c.intent)]


def precon_members_by_interval(ctx: FormalContext, C: int, D: int,
                               lattice: ConceptLattice | None = None) -> list[Concept]:
    """Concepts whose extent lies between ``KH(C)`` and ``K(D)``."""
    lo, hi = precon_interval(ctx, C, D)
    lattice = lattice or enumerate_concepts(ctx)
    return [c for c in lattice if is_subset(lo.extent, c.extent) and is_subset(c.extent, hi.extent)]


def preconcept_sq_leq(first: tuple[int, int], second: tuple[int, int]) -> bool:
    (C, D), (C2, D2) = first, second
    return is_subset(C, C2) and is_subset(D, D2)


def preconcept_preceq(ctx: FormalContext, first: tuple[int, int], second: tuple[int, int]) -> bool:
    """``Precon(second) ⊆ Precon(first)``, decided by ``K(D') ⊆ K(D)`` and ``H(C') ⊆ H(C)``."""
    (C, D), (C2, D2) = first, second
    _require_preconcept(ctx, C, D)
    _require_preconcept(ctx, C2, D2)
    return is_subset(ctx.K(D2), ctx.K(D)) and is_subset(ctx.H(C2), ctx.H(C))


def preconcept_preceq_by_members(ctx: FormalContext, first, second, lattice=None) -> bool:
    """Same relation as :func:`preconcept_preceq`, by comparing member sets."""
    lattice = lattice or enumerate_concepts(ctx)
    return set(precon_members(ctx, *second, lattice)) <= set(precon_members(ctx, *first, lattice))


def preconcept_equiv(ctx: FormalContext, first, second) -> bool:
    (C, D), (C2, D2) = first, second
    _require_preconcept(ctx, C, D)
    _require_preconcept(ctx, C2, D2)
    return ctx.K(ctx.H(C)) == ctx.K(ctx.H(C2)) and ctx.H(ctx.K(D)) == ctx.H(ctx.K(D2))


# --------------------------------------------------------------------------
# quotient of the preconcept pre-order


@dataclass(frozen=True)
class GMQuotient:
    """Admissible pairs of leaves, each leaf named by its node.

    ``elements[i] = (A, B)``: the leaf of all object sets closing to extent
    ``A`` and the leaf of all attribute sets closing to intent ``B``.
    """

    context: FormalContext
    elements: tuple[tuple[int, int], ...]
    order: np.ndarray

    def __len__(self):
        return len(self.elements)

    def leaf_members(self, i: int) -> tuple[list[int], list[int]]:
        """Every subset in both leaves of element ``i`` (exponential; small carriers only)."""
        ctx = self.context
        if ctx.g_count > 4 or ctx.m_count > 4:
            raise ValueError("leaf listing is limited to carriers of at most 4 elements")
        A, B = self.elements[i]
        objs = [C for C in range(1 << ctx.g_count) if ctx.K(ctx.H(C)) == A]
        atts = [D for D in range(1 << ctx.m_count) if ctx.H(ctx.K(D)) == B]
        return objs, atts


def gm_quotient(ctx: FormalContext, lattice: ConceptLattice | None = None) -> GMQuotient:
    """Leaf pairs ``(E, F)`` with ``E <= K*(F)`` and ``F <= H*(E)``.

    Leaves of P(G) correspond to concept extents and leaves of P(M) to concept
    intents; the leaf order is the inclusion order of those nodes. ``H*`` sends
    the object leaf with node ``A`` to the attribute leaf with node ``H(A)``,
    ``K*`` sends the attribute leaf with node ``B`` to the object leaf ``K(B)``.
    """
    lattice = lattice or enumerate_concepts(ctx)
    ext_nodes = lattice.extents()
    int_nodes = sorted(lattice.intents())

    def h_star(a: int) -> int:
        return ctx.H(a)

    def k_star(b: int) -> int:
        return ctx.K(b)

    elements = [
        (a, b)
        for a in ext_nodes
        for b in int_nodes
        if is_subset(a, k_star(b)) and is_subset(b, h_star(a))
    ]
    n = len(elements)
    order = np.zeros((n, n), dtype=bool)
    for i, (a, b) in enumerate(elements):
        for j, (a2, b2) in enumerate(elements):
            order[i, j] = is_subset(k_star(b2), k_star(b)) and is_subset(h_star(a2), h_star(a))
    order.setflags(write=False)
    return GMQuotient(ctx, tuple(elements), order)


def concept_labels(ctx: FormalContext, c: Concept) -> str:
    return "({" + ",".join(ctx.objects(c.extent)) + "}, {" + ",".join(ctx.attributes(c.intent)) + "})"


def reduced_labels(lattice: ConceptLattice) -> list[tuple[list[str], list[str]]]:
    """Objects and attributes introduced at each concept (own, not inherited)."""
    ctx = lattice.context
    out: list[tuple[list[str], list[str]]] = [([], []) for _ in lattice.concepts]
    for g in range(ctx.g_count):
        out[lattice.index[ctx.K(ctx.H(1 << g))]][0].append(ctx.g_labels[g])
    for m in range(ctx.m_count):
        out[lattice.index[ctx.K(1 << m)]][1].append(ctx.m_labels[m])
    return out

