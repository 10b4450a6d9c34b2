"""Orderings on the set of Galois connections between two fixed posets.

Each comparison returns an :class:`OrderVerdict`. Where several
characterizations of the same relation exist, ``via`` selects one; with
``GALCORE_CHECK=1`` in the environment every characterization is computed
and a disagreement raises ``AssertionError``.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

import numpy as np

from .context import FormalContext, polarity_of
from .galois import GaloisConnection, derive_adjoint, leaves, nodes
from .poset import CapExceededError, OrderMap, Poset, is_antitone, top_bottom

ENUMERATION_LIMIT = 1_000_000


@dataclass(frozen=True)
class OrderVerdict:
    holds: bool
    witness: tuple | None = None
    via: str = ""

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("a verdict carries a witness exactly when it fails")

    def __bool__(self):
        return self.holds

    def __str__(self):
        if self.holds:
            return f"holds (via {self.via})"
        return f"fails (via {self.via}); witness {self.witness}"


def _cross_check() -> bool:
    return os.environ.get("GALCORE_CHECK", "").strip() not in ("", "0")


def _agree(verdicts: list[OrderVerdict]) -> OrderVerdict:
    first = verdicts[0]
    if _cross_check():
        for other in verdicts[1:]:
            if other.holds != first.holds:
                raise AssertionError(f"characterizations disagree: {first} vs {other}")
    return first


def _require_shared(gc1: GaloisConnection, gc2: GaloisConnection):
    if not gc1.same_carriers(gc2):
        raise ValueError("both connections must share the posets P and Q")


def _pick(via: str, options: dict):
    if via not in options:
        raise ValueError(f"unknown characterization {via!r}; choose from {sorted(options)}")
    first = options[via]()
    if not _cross_check():
        return first
    return _agree([first] + [fn() for name, fn in options.items() if name != via])


# --------------------------------------------------------------------------
# pointwise order


def _pointwise(leq: np.ndarray, t1: np.ndarray, t2: np.ndarray, via: str) -> OrderVerdict:
    bad = np.flatnonzero(~leq[t1, t2])
    if bad.size:
        x = int(bad[0])
        return OrderVerdict(False, (x, int(t1[x]), int(t2[x])), via)
    return OrderVerdict(True, None, via)


def le_pointwise(gc1: GaloisConnection, gc2: GaloisConnection, via: str = "f") -> OrderVerdict:
    """``f1(p) <= f2(p)`` for all ``p``; equivalently ``g1(q) <= g2(q)`` for all ``q``.

    Witness: ``(element, value under gc1, value under gc2)``.
    """
    _require_shared(gc1, gc2)
    return _pick(via, {
        "f": lambda: _pointwise(gc1.Q.leq, gc1.f.table, gc2.f.table, "f"),
        "g": lambda: _pointwise(gc1.P.leq, gc1.g.table, gc2.g.table, "g"),
    })


def le_relation(ctx1: FormalContext, ctx2: FormalContext, via: str = "relation") -> OrderVerdict:
    """``R1 ⊆ R2``; ``via='polarity'`` compares the Birkhoff maps pointwise instead."""
    if ctx1.incidence.shape != ctx2.incidence.shape:
        raise ValueError("contexts must share G and M")

    def by_relation():
        extra = np.argwhere(ctx1.incidence & ~ctx2.incidence)
        if extra.size:
            return OrderVerdict(False, tuple(int(v) for v in extra[0]), "relation")
        return OrderVerdict(True, None, "relation")

    def by_polarity():
        p1, p2 = polarity_of(ctx1), polarity_of(ctx2)
        h1, h2 = p1.h_table(), p2.h_table()
        bad = np.flatnonzero(h1 & ~h2)
        if bad.size:
            s = int(bad[0])
            return OrderVerdict(False, (s, int(h1[s]), int(h2[s])), "polarity")
        return OrderVerdict(True, None, "polarity")

    return _pick(via, {"relation": by_relation, "polarity": by_polarity})


def constant_top(P: Poset, Q: Poset) -> GaloisConnection | None:
    tp, tq = top_bottom(P)[0], top_bottom(Q)[0]
    if tp is None or tq is None:
        return None
    return GaloisConnection(P, Q, [tq] * P.size, [tp] * Q.size)


def constant_bottom(P: Poset, Q: Poset) -> GaloisConnection | None:
    """``f`` sends the bottom of P to the top of Q and everything else to the bottom."""
    tp, bp = top_bottom(P)
    tq, bq = top_bottom(Q)
    if None in (tp, bp, tq, bq):
        return None
    f = [tq if p == bp else bq for p in range(P.size)]
    g = [tp if q == bq else bp for q in range(Q.size)]
    return GaloisConnection(P, Q, f, g)


def extremal_gcs(P: Poset, Q: Poset) -> tuple[GaloisConnection | None, GaloisConnection | None]:
    """Greatest and least connection under the pointwise order, when they exist."""
    return constant_top(P, Q), constant_bottom(P, Q)


# --------------------------------------------------------------------------
# closure pre-orders


def _closure_side(gc1, gc2, side: str, via: str) -> OrderVerdict:
    poset = gc1.P if side == "P" else gc1.Q
    c1 = gc1.gf if side == "P" else gc1.fg
    c2 = gc2.gf if side == "P" else gc2.fg

    def by_closure():
        bad = np.flatnonzero(~poset.leq[c2, c1])
        if bad.size:
            x = int(bad[0])
            return OrderVerdict(False, (x, int(c2[x]), int(c1[x])), "closure")
        return OrderVerdict(True, None, "closure")

    def by_nodes():
        missing = sorted(nodes(gc1, side) - nodes(gc2, side))
        if missing:
            return OrderVerdict(False, (missing[0],), "nodes")
        return OrderVerdict(True, None, "nodes")

    def by_partition():
        l1, l2 = leaves(gc1, side), leaves(gc2, side)
        for leaf in l2.leaves:
            if len({l1.leaf_of(x) for x in leaf}) > 1:
                return OrderVerdict(False, tuple(sorted(leaf)), "partition")
        return OrderVerdict(True, None, "partition")

    return _pick(via, {"closure": by_closure, "nodes": by_nodes, "partition": by_partition})


def preceq_P(gc1: GaloisConnection, gc2: GaloisConnection, via: str = "closure") -> OrderVerdict:
    """``g2 f2 (p) <= g1 f1 (p)`` for all ``p``.

    ``via='nodes'`` tests node inclusion, ``via='partition'`` tests that the
    leaves of ``gc2`` refine those of ``gc1``. Closure witnesses are
    ``(p, g2f2(p), g1f1(p))``.
    """
    _require_shared(gc1, gc2)
    return _closure_side(gc1, gc2, "P", via)


def preceq_Q(gc1: GaloisConnection, gc2: GaloisConnection, via: str = "closure") -> OrderVerdict:
    """``f2 g2 (q) <= f1 g1 (q)`` for all ``q``; witnesses ``(q, f2g2(q), f1g1(q))``."""
    _require_shared(gc1, gc2)
    return _closure_side(gc1, gc2, "Q", via)


def preceq_PQ(gc1: GaloisConnection, gc2: GaloisConnection) -> OrderVerdict:
    vp = preceq_P(gc1, gc2)
    if not vp:
        return OrderVerdict(False, ("P",) + vp.witness, "PQ")
    vq = preceq_Q(gc1, gc2)
    if not vq:
        return OrderVerdict(False, ("Q",) + vq.witness, "PQ")
    return OrderVerdict(True, None, "PQ")


def sq_nodes(gc1: GaloisConnection, gc2: GaloisConnection) -> OrderVerdict:
    """Node sets of ``gc1`` contained in those of ``gc2`` on both sides."""
    _require_shared(gc1, gc2)
    for side in ("P", "Q"):
        missing = sorted(nodes(gc1, side) - nodes(gc2, side))
        if missing:
            return OrderVerdict(False, (side, missing[0]), "nodes")
    verdict = OrderVerdict(True, None, "nodes")
    if _cross_check() and not preceq_PQ(gc1, gc2):
        raise AssertionError("node inclusion holds but the closure pre-order does not")
    return verdict


def equiv(relation, a, b) -> bool:
    """Both directions of a pre-order."""
    return bool(relation(a, b)) and bool(relation(b, a))


def identity_is_maximal(gc: GaloisConnection) -> bool:
    """``g∘f`` is the identity on P: a sufficient condition for maximality under ``preceq_P``."""
    return bool(np.array_equal(gc.gf, np.arange(gc.P.size)))


def maximal_elements(gcs: list[GaloisConnection], relation=None) -> list[int]:
    """Indices of maximal members of ``gcs`` under a pre-order (default ``preceq_PQ``)."""
    relation = relation or preceq_PQ
    out = []
    for i, a in enumerate(gcs):
        if all(not relation(a, b) or relation(b, a) for b in gcs):
            out.append(i)
    return out


def fiber_leq(gcA: GaloisConnection, gcB: GaloisConnection) -> OrderVerdict:
    """The identity pair is a morphism ``gcA -> gcB`` (orders may differ)."""
    from .category import is_gal_morphism

    if gcA.P.size != gcB.P.size or gcA.Q.size != gcB.Q.size:
        raise ValueError("fiber comparison needs equal carrier sets")
    verdict = is_gal_morphism(gcA, gcB, np.arange(gcA.P.size), np.arange(gcA.Q.size))
    return OrderVerdict(verdict.holds, verdict.witness, "identity-morphism")


# --------------------------------------------------------------------------
# enumeration


def enumerate_gcs(P: Poset, Q: Poset) -> list[GaloisConnection]:
    """Every Galois connection between P and Q, ordered lexicographically by ``f``."""
    if Q.size ** P.size > ENUMERATION_LIMIT:
        raise CapExceededError(f"{Q.size}^{P.size} candidate maps exceeds the enumeration limit")
    out = []
    for table in itertools.product(range(Q.size), repeat=P.size):
        f = OrderMap(P, Q, table)
        if not is_antitone(f):
            continue
        gc = derive_adjoint(f)
        if gc is not None:
            out.append(gc)
    return out
