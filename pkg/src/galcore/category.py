"""Morphisms of Galois connections and the embedding of a connection into a polarity.

A morphism ``(h, k): (f1, g1) -> (f2, g2)`` is a pair of plain set maps on the
carriers with ``k∘f1 = f2∘h`` and ``h∘g1 = g2∘k``. Monotonicity is not
required; :func:`is_order_preserving` tests it separately.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .context import FormalContext, polarity_of
from .galois import GaloisConnection
from .ordering import OrderVerdict
from .poset import CapExceededError, materialization_cap, powerset_poset, powerset_rank


def _tables(src: GaloisConnection, dst: GaloisConnection, h, k) -> tuple[np.ndarray, np.ndarray]:
    h = np.asarray(h, dtype=np.int64).reshape(-1)
    k = np.asarray(k, dtype=np.int64).reshape(-1)
    if h.shape[0] != src.P.size or k.shape[0] != src.Q.size:
        raise ValueError(f"map sizes ({h.shape[0]}, {k.shape[0]}) do not match source carriers "
                         f"({src.P.size}, {src.Q.size})")
    for name, t, n in (("h", h, dst.P.size), ("k", k, dst.Q.size)):
        if t.size and (t.min() < 0 or t.max() >= n):
            raise ValueError(f"{name} points outside the target carrier")
    return h, k


def is_gal_morphism(src: GaloisConnection, dst: GaloisConnection, h, k) -> OrderVerdict:
    """Both squares commute. Witness: ``("f", p)`` or ``("g", q)`` where one fails."""
    h, k = _tables(src, dst, h, k)
    bad = np.flatnonzero(k[src.f.table] != dst.f.table[h])
    if bad.size:
        return OrderVerdict(False, ("f", int(bad[0])), "squares")
    bad = np.flatnonzero(h[src.g.table] != dst.g.table[k])
    if bad.size:
        return OrderVerdict(False, ("g", int(bad[0])), "squares")
    return OrderVerdict(True, None, "squares")


@dataclass
class MorphismReport:
    """Each characterization of a morphism, with a witness for every failure."""

    commutes: bool
    nodes_preserved: bool
    levels_preserved: bool
    antiiso_preserved: bool
    fixed_point_paths: bool
    witnesses: dict[str, tuple] = field(default_factory=dict)

    @property
    def structural(self) -> bool:
        return self.nodes_preserved and self.levels_preserved and self.antiiso_preserved

    @property
    def consistent(self) -> bool:
        return self.commutes == self.structural == self.fixed_point_paths

    def lines(self) -> list[str]:
        rows = [
            ("commuting squares", self.commutes),
            ("nodes map to nodes", self.nodes_preserved),
            ("leaves map into leaves", self.levels_preserved),
            ("anti-isomorphic leaves preserved", self.antiiso_preserved),
            ("both paths reach one fixed point", self.fixed_point_paths),
        ]
        out = []
        for name, ok in rows:
            line = f"{name:<34} {'yes' if ok else 'no'}"
            key = name.split()[0]
            if not ok and key in self.witnesses:
                line += f"  witness {self.witnesses[key]}"
            out.append(line)
        return out


def characterize_morphism(src: GaloisConnection, dst: GaloisConnection, h, k) -> MorphismReport:
    h, k = _tables(src, dst, h, k)
    f1, g1, f2, g2 = src.f.table, src.g.table, dst.f.table, dst.g.table
    witnesses: dict[str, tuple] = {}

    commute = is_gal_morphism(src, dst, h, k)
    if not commute:
        witnesses["commuting"] = commute.witness

    # nodes of the source go to nodes of the target
    nodes_ok = True
    for p in range(src.P.size):
        if g1[f1[p]] == p and g2[f2[h[p]]] != h[p]:
            nodes_ok = False
            witnesses["nodes"] = ("P", p)
            break
    if nodes_ok:
        for q in range(src.Q.size):
            if f1[g1[q]] == q and f2[g2[k[q]]] != k[q]:
                nodes_ok = False
                witnesses["nodes"] = ("Q", q)
                break

    # same leaf in, same leaf out
    levels_ok = True
    for side, m1, m2, t, n in (("P", f1, f2, h, src.P.size), ("Q", g1, g2, k, src.Q.size)):
        for x in range(n):
            for y in range(x + 1, n):
                if m1[x] == m1[y] and m2[t[x]] != m2[t[y]]:
                    levels_ok = False
                    witnesses.setdefault("leaves", (side, x, y))
    # p and q lie in anti-isomorphic leaves iff f(p) is the node of q's leaf
    anti_ok = True
    for p in range(src.P.size):
        for q in range(src.Q.size):
            if f1[p] == f1[g1[q]] and f2[h[p]] != f2[g2[k[q]]]:
                anti_ok = False
                witnesses.setdefault("anti-isomorphic", (p, q))

    # both routes from a leaf land on the same fixed point of the other side
    paths_ok = True
    for side, m1, m2, t_in, t_out, back2, n in (
        ("P", f1, f2, h, k, g2, src.P.size),
        ("Q", g1, g2, k, h, f2, src.Q.size),
    ):
        for x in range(n):
            for y in range(n):
                if m1[x] != m1[y]:
                    continue
                a, b = t_out[m1[x]], m2[t_in[y]]
                if a != b or m2[back2[a]] != a:
                    paths_ok = False
                    witnesses.setdefault("both", (side, x, y))

    return MorphismReport(bool(commute), nodes_ok, levels_ok, anti_ok, paths_ok, witnesses)


def is_injective(table) -> bool:
    t = np.asarray(table)
    return np.unique(t).size == t.size


def is_order_preserving(src: GaloisConnection, dst: GaloisConnection, h, k) -> bool:
    """Both component maps monotone (the order-preserving subcategory)."""
    h, k = _tables(src, dst, h, k)
    return bool(
        np.all(~src.P.leq | dst.P.leq[np.ix_(h, h)]) and np.all(~src.Q.leq | dst.Q.leq[np.ix_(k, k)])
    )


class GalMorphism:
    """A validated morphism; construction fails if a square does not commute."""

    __slots__ = ("src", "dst", "h", "k")

    def __init__(self, src: GaloisConnection, dst: GaloisConnection, h, k):
        h, k = _tables(src, dst, h, k)
        verdict = is_gal_morphism(src, dst, h, k)
        if not verdict:
            raise ValueError(f"not a morphism: square fails at {verdict.witness}")
        h.setflags(write=False)
        k.setflags(write=False)
        self.src, self.dst, self.h, self.k = src, dst, h, k

    def __eq__(self, other):
        if not isinstance(other, GalMorphism):
            return NotImplemented
        return (self.src == other.src and self.dst == other.dst
                and np.array_equal(self.h, other.h) and np.array_equal(self.k, other.k))

    def __hash__(self):
        return hash((self.h.tobytes(), self.k.tobytes()))

    def __repr__(self):
        return f"GalMorphism(h={self.h.tolist()}, k={self.k.tolist()})"


def is_monomorphism(m: GalMorphism) -> bool:
    return is_injective(m.h) and is_injective(m.k)


def identity(gc: GaloisConnection) -> GalMorphism:
    return GalMorphism(gc, gc, np.arange(gc.P.size), np.arange(gc.Q.size))


def compose(m2: GalMorphism, m1: GalMorphism) -> GalMorphism:
    """``m2 ∘ m1``."""
    if m1.dst != m2.src:
        raise ValueError("cannot compose: the first morphism does not end where the second starts")
    return GalMorphism(m1.src, m2.dst, m2.h[m1.h], m2.k[m1.k])


# --------------------------------------------------------------------------
# embedding into a polarity


@dataclass(frozen=True)
class Embedding:
    polarity: GaloisConnection
    morphism: GalMorphism


def _intersections_of_downsets(dom_size: int, cod, images) -> np.ndarray:
    rows = kernels.as_masks([cod.down_mask(int(y)) for y in images])
    return kernels.meet_table(rows, kernels.full_mask(cod.size)).astype(np.int64)


def embed_into_polarity(gc: GaloisConnection) -> Embedding:
    """``F(A) = ⋂_{p∈A} ↓f(p)``, ``G(B) = ⋂_{q∈B} ↓g(q)`` with ``(i_P, i_Q) = (↓·, ↓·)``.

    The empty intersection is the whole carrier.
    """
    cap = materialization_cap()
    if gc.P.size > cap or gc.Q.size > cap:
        raise CapExceededError(f"carriers above {cap} elements cannot be embedded")
    F = _intersections_of_downsets(gc.P.size, gc.Q, gc.f.table)
    G = _intersections_of_downsets(gc.Q.size, gc.P, gc.g.table)
    polarity = GaloisConnection(powerset_poset(gc.P.size), powerset_poset(gc.Q.size), F, G)
    i_p = [gc.P.down_mask(p) for p in range(gc.P.size)]
    i_q = [gc.Q.down_mask(q) for q in range(gc.Q.size)]
    return Embedding(polarity, GalMorphism(gc, polarity, i_p, i_q))


def embedding_relation(gc: GaloisConnection) -> FormalContext:
    """``(p, q)`` related iff ``p <= g(q)`` and ``q <= f(p)``."""
    P, Q, f, g = gc.P, gc.Q, gc.f.table, gc.g.table
    inc = P.leq[:, g] & Q.leq[:, f].T
    return FormalContext(inc.reshape(P.size, Q.size), P.labels, Q.labels)


@dataclass
class InitialityReport:
    probes: int = 0
    checked: int = 0
    triggered: int = 0
    violations: list[tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_initiality(m: GalMorphism, probes: list[GaloisConnection], limit: int = 2_000_000) -> InitialityReport:
    """Every ``(r, s)`` into ``m.src`` whose composite with ``m`` is a morphism is one itself."""
    report = InitialityReport()
    target = m.src
    for probe in probes:
        report.probes += 1
        count = target.P.size ** probe.P.size * target.Q.size ** probe.Q.size
        if count > limit:
            raise CapExceededError(f"probe needs {count} map pairs, above the limit {limit}")
        for r in itertools.product(range(target.P.size), repeat=probe.P.size):
            r = np.array(r, dtype=np.int64)
            for s in itertools.product(range(target.Q.size), repeat=probe.Q.size):
                s = np.array(s, dtype=np.int64)
                report.checked += 1
                if not is_gal_morphism(probe, m.dst, m.h[r], m.k[s]):
                    continue
                report.triggered += 1
                if not is_gal_morphism(probe, target, r, s):
                    report.violations.append((probe, r.tolist(), s.tolist()))
    return report


# --------------------------------------------------------------------------
# formal contexts as objects


def is_fc_morphism(ctx1: FormalContext, ctx2: FormalContext, h, k) -> OrderVerdict:
    """Morphism of contexts: ``h``, ``k`` act on subsets (tables over bitmasks)
    and must form a morphism between the two polarities."""
    p1, p2 = polarity_of(ctx1).gc, polarity_of(ctx2).gc
    if p1 is None or p2 is None:
        raise CapExceededError("polarities above the materialization cap")
    return is_gal_morphism(p1, p2, h, k)


def is_pol_morphism(src: GaloisConnection, dst: GaloisConnection, h, k) -> OrderVerdict:
    for gc in (src, dst):
        if powerset_rank(gc.P) is None or powerset_rank(gc.Q) is None:
            raise ValueError("polarity morphisms need connections between powerset lattices")
    return is_gal_morphism(src, dst, h, k)

