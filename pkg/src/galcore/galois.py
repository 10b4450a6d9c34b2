"""Order-reversing Galois connections between finite posets."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import kernels
from .poset import OrderMap, Poset, ValidationReport, induced, join

SIDES = ("P", "Q")


class GaloisConnection:
    """A quadruple ``(f, P, Q, g)`` with ``f: P -> Q`` and ``g: Q -> P`` as tables.

    Nothing beyond totality is checked here; see :func:`validate_gc`.
    """

    __slots__ = ("P", "Q", "f", "g")

    def __init__(self, P: Poset, Q: Poset, f, g):
        self.P, self.Q = P, Q
        self.f = f if isinstance(f, OrderMap) else OrderMap(P, Q, f)
        self.g = g if isinstance(g, OrderMap) else OrderMap(Q, P, g)

    def __repr__(self):
        return f"GaloisConnection(f={self.f.table.tolist()}, g={self.g.table.tolist()})"

    def __eq__(self, other):
        if not isinstance(other, GaloisConnection):
            return NotImplemented
        return (
            self.P == other.P
            and self.Q == other.Q
            and np.array_equal(self.f.table, other.f.table)
            and np.array_equal(self.g.table, other.g.table)
        )

    def __hash__(self):
        return hash((self.f.table.tobytes(), self.g.table.tobytes()))

    @property
    def gf(self) -> np.ndarray:
        return self.g.table[self.f.table]

    @property
    def fg(self) -> np.ndarray:
        return self.f.table[self.g.table]

    def same_carriers(self, other: GaloisConnection) -> bool:
        return self.P == other.P and self.Q == other.Q

    def poset(self, side: str) -> Poset:
        return self.P if _side(side) == "P" else self.Q

    def to_json(self) -> dict:
        return {
            "P": self.P.to_json(),
            "Q": self.Q.to_json(),
            "f": self.f.table.tolist(),
            "g": self.g.table.tolist(),
        }

    @classmethod
    def from_json(cls, data: dict) -> GaloisConnection:
        return cls(Poset.from_json(data["P"]), Poset.from_json(data["Q"]), data["f"], data["g"])

    @classmethod
    def loads(cls, text: str) -> GaloisConnection:
        return cls.from_json(json.loads(text))


def _side(side: str) -> str:
    if side not in SIDES:
        raise ValueError(f"side must be 'P' or 'Q', got {side!r}")
    return side


def validate_gc(gc: GaloisConnection) -> ValidationReport:
    """Both maps antitone, ``p <= g(f(p))`` and ``q <= f(g(q))`` everywhere."""
    report = ValidationReport("galois connection")
    P, Q, f, g = gc.P, gc.Q, gc.f.table, gc.g.table
    for x, y in kernels.antitone_violations(P.leq, Q.leq, f):
        report.add("f-not-antitone", (x, y), f"{x} <= {y} but f({y})={f[y]} not <= f({x})={f[x]}")
    for x, y in kernels.antitone_violations(Q.leq, P.leq, g):
        report.add("g-not-antitone", (x, y), f"{x} <= {y} but g({y})={g[y]} not <= g({x})={g[x]}")
    gf, fg = gc.gf, gc.fg
    for p in np.flatnonzero(~P.leq[np.arange(P.size), gf]):
        report.add("p-not-below-gf", (p,), f"g(f({p}))={gf[p]}")
    for q in np.flatnonzero(~Q.leq[np.arange(Q.size), fg]):
        report.add("q-not-below-fg", (q,), f"f(g({q}))={fg[q]}")
    return report


def validate_gc_adjoint(gc: GaloisConnection) -> ValidationReport:
    """``p <= g(q)`` iff ``q <= f(p)`` for every pair."""
    report = ValidationReport("galois connection (adjoint form)")
    viol = kernels.adjoint_violations(gc.P.leq, gc.Q.leq, gc.f.table, gc.g.table)
    for p, q in viol:
        lhs = gc.P.le(p, gc.g(q))
        report.add("adjoint", (p, q), f"p<=g(q) is {lhs} but q<=f(p) is {not lhs}")
    return report


def is_valid(gc: GaloisConnection) -> bool:
    return validate_gc(gc).ok


def nodes(gc: GaloisConnection, side: str) -> frozenset[int]:
    """Fixed points of ``g∘f`` (side P) or ``f∘g`` (side Q)."""
    closure = gc.gf if _side(side) == "P" else gc.fg
    return frozenset(int(x) for x in np.flatnonzero(closure == np.arange(closure.shape[0])))


def image(gc: GaloisConnection, side: str) -> frozenset[int]:
    """Image of the map landing on ``side``."""
    return gc.g.image() if _side(side) == "P" else gc.f.image()


@dataclass(frozen=True)
class LeafDecomposition:
    side: str
    leaves: tuple[frozenset[int], ...]
    nodes: tuple[int, ...]
    leaf_order: np.ndarray
    leaf_index: tuple[int, ...]

    def leaf_of(self, x: int) -> int:
        return self.leaf_index[x]

    def __len__(self):
        return len(self.leaves)


def leaves(gc: GaloisConnection, side: str) -> LeafDecomposition:
    """Fibers of ``f`` (side P) or ``g`` (side Q), listed in ascending node order."""
    side = _side(side)
    poset = gc.poset(side)
    m = gc.f.table if side == "P" else gc.g.table
    back = gc.g.table if side == "P" else gc.f.table
    fibers: dict[int, list[int]] = {}
    for x, y in enumerate(m.tolist()):
        fibers.setdefault(y, []).append(x)
    entries = sorted((int(back[y]), frozenset(xs)) for y, xs in fibers.items())
    node_list = tuple(n for n, _ in entries)
    leaf_sets = tuple(s for _, s in entries)
    k = len(leaf_sets)
    order = np.zeros((k, k), dtype=bool)
    members = [sorted(s) for s in leaf_sets]
    for i in range(k):
        for j in range(k):
            order[i, j] = poset.leq[np.ix_(members[i], members[j])].any()
    index = [0] * poset.size
    for i, s in enumerate(leaf_sets):
        for x in s:
            index[x] = i
    order.setflags(write=False)
    return LeafDecomposition(side, leaf_sets, node_list, order, tuple(index))


@dataclass(frozen=True)
class LeafCorrespondence:
    """``forward`` is f* on leaf indices, ``backward`` is g*."""

    p_leaves: LeafDecomposition
    q_leaves: LeafDecomposition
    forward: tuple[int, ...]
    backward: tuple[int, ...]


def leaf_antiiso(gc: GaloisConnection) -> LeafCorrespondence:
    lp, lq = leaves(gc, "P"), leaves(gc, "Q")
    forward = tuple(lq.leaf_of(gc.f(n)) for n in lp.nodes)
    backward = tuple(lp.leaf_of(gc.g(n)) for n in lq.nodes)
    return LeafCorrespondence(lp, lq, forward, backward)


def adjoint_table(f: OrderMap) -> tuple[list[int | None], list[int]]:
    """``g(q) = join{p : q <= f(p)}`` per ``q``; second item lists ``q`` with no join."""
    P, Q, t = f.dom, f.cod, f.table
    table: list[int | None] = []
    missing = []
    for q in range(Q.size):
        j = join(P, np.flatnonzero(Q.leq[q, t]).tolist())
        table.append(j)
        if j is None:
            missing.append(q)
    return table, missing


def derive_adjoint(f: OrderMap) -> GaloisConnection | None:
    """The unique ``g`` completing ``f`` to a Galois connection, if there is one."""
    table, missing = adjoint_table(f)
    if missing:
        return None
    gc = GaloisConnection(f.dom, f.cod, f, table)
    return gc if validate_gc(gc).ok else None


def is_perfect(gc: GaloisConnection) -> bool:
    return len(nodes(gc, "P")) == gc.P.size and len(nodes(gc, "Q")) == gc.Q.size


def idempotence_report(gc: GaloisConnection) -> ValidationReport:
    report = ValidationReport("fgf = f, gfg = g")
    f, g = gc.f.table, gc.g.table
    for p in np.flatnonzero(f[g[f]] != f):
        report.add("fgf", (p,), f"f(g(f({p})))={f[g[f[p]]]} != f({p})={f[p]}")
    for q in np.flatnonzero(g[f[g]] != g):
        report.add("gfg", (q,), f"g(f(g({q})))={g[f[g[q]]]} != g({q})={g[q]}")
    return report


def idempotence_check(gc: GaloisConnection) -> bool:
    return idempotence_report(gc).ok


def node_poset(gc: GaloisConnection, side: str) -> Poset:
    """Nodes of ``side`` with the order induced from the carrier."""
    return induced(gc.poset(side), sorted(nodes(gc, side)))
