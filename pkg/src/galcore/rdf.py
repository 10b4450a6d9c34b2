"""N-Triples ingestion and schema classes from subject/predicate incidence."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .concepts import ConceptLattice, enumerate_concepts
from .context import FormalContext, polarity_of
from .ordering import OrderVerdict, le_relation, preceq_P, preceq_PQ, preceq_Q


class NTriplesError(ValueError):
    def __init__(self, message: str, lineno: int):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


@dataclass(frozen=True)
class TripleSet:
    triples: tuple[tuple[str, str, str], ...]
    source: str = ""

    def __len__(self):
        return len(self.triples)


_IRI = r"<([^<>\"{}|^`\\\s]*)>"
_BNODE = r"(_:[A-Za-z0-9_][A-Za-z0-9_.\-]*)"
_LITERAL = r"(\"(?:[^\"\\]|\\.)*\"(?:@[A-Za-z]+(?:-[A-Za-z0-9]+)*|\^\^<[^<>\s]*>)?)"
_LINE = re.compile(
    rf"^\s*(?:{_IRI}|{_BNODE})\s+{_IRI}\s+(?:{_IRI}|{_BNODE}|{_LITERAL})\s*\.\s*(?:#.*)?$"
)


def parse_ntriples(text: str, source: str = "") -> TripleSet:
    """Line-based subset of N-Triples: IRIs, blank node labels, and literals.

    Terms are kept as exact strings (IRIs without angle brackets). Duplicate
    lines are retained.
    """
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        m = _LINE.match(line)
        if m is None:
            if not stripped.endswith("."):
                raise NTriplesError("missing terminating '.'", lineno)
            raise NTriplesError(f"malformed triple: {stripped[:60]!r}", lineno)
        s_iri, s_bn, p, o_iri, o_bn, o_lit = m.groups()
        subject = s_iri if s_iri is not None else s_bn
        obj = o_iri if o_iri is not None else (o_bn if o_bn is not None else o_lit)
        if not subject or not p:
            raise NTriplesError("empty subject or predicate", lineno)
        out.append((subject, p, obj))
    return TripleSet(tuple(out), source)


def context_from_triples(t: TripleSet, name: str = "") -> FormalContext:
    """Subjects as objects, predicates as attributes, both sorted; objects of triples dropped."""
    subjects = sorted({s for s, _, _ in t.triples})
    predicates = sorted({p for _, p, _ in t.triples})
    si = {s: i for i, s in enumerate(subjects)}
    pi = {p: i for i, p in enumerate(predicates)}
    inc = np.zeros((len(subjects), len(predicates)), dtype=bool)
    for s, p, _ in t.triples:
        inc[si[s], pi[p]] = True
    return FormalContext(inc, subjects, predicates, name or t.source)


@dataclass(frozen=True)
class SchemaClass:
    extent: int
    intent: int
    subjects: tuple[str, ...]
    predicates: tuple[str, ...]


@dataclass
class Schema:
    context: FormalContext
    classes: list[SchemaClass]
    subclass_of: list[tuple[int, int]]
    lattice: ConceptLattice


def schema_classes(ctx: FormalContext) -> Schema:
    """Concept extents as classes; ``subclass_of`` lists every strict inclusion ``(i, j)``."""
    lattice = enumerate_concepts(ctx)
    classes = [
        SchemaClass(c.extent, c.intent, tuple(ctx.objects(c.extent)), tuple(ctx.attributes(c.intent)))
        for c in lattice
    ]
    order = lattice.order
    sub = [(i, j) for i in range(len(classes)) for j in range(len(classes)) if i != j and order[i, j]]
    return Schema(ctx, classes, sub, lattice)


def align(old: FormalContext, new: FormalContext) -> tuple[FormalContext, FormalContext]:
    """Extend both contexts to the union of their carriers; missing incidences are absent.

    Carrier order: labels of ``old`` first, then labels only in ``new``.
    """
    g = list(old.g_labels) + [x for x in new.g_labels if x not in set(old.g_labels)]
    m = list(old.m_labels) + [x for x in new.m_labels if x not in set(old.m_labels)]

    def extend(ctx: FormalContext) -> FormalContext:
        gi = {l: i for i, l in enumerate(g)}
        mi = {l: i for i, l in enumerate(m)}
        inc = np.zeros((len(g), len(m)), dtype=bool)
        for a, b in ctx.pairs():
            inc[gi[ctx.g_labels[a]], mi[ctx.m_labels[b]]] = True
        return FormalContext(inc, g, m, ctx.name)

    return extend(old), extend(new)


@dataclass
class SchemaDiff:
    added: list[frozenset[str]]
    removed: list[frozenset[str]]
    preserved: list[frozenset[str]]
    verdicts: dict[str, OrderVerdict] = field(default_factory=dict)
    node_counts: tuple[int, int] = (0, 0)

    @property
    def empty(self) -> bool:
        return not self.added and not self.removed

    def lines(self) -> list[str]:
        def fmt(s):
            return "{" + ", ".join(sorted(s)) + "}"

        out = [f"classes: {self.node_counts[0]} -> {self.node_counts[1]}"]
        out += [f"+ {fmt(c)}" for c in self.added]
        out += [f"- {fmt(c)}" for c in self.removed]
        out.append(f"preserved: {len(self.preserved)}")
        for name, v in self.verdicts.items():
            out.append(f"{name}: {v}")
        return out


def schema_diff(ctx_old: FormalContext, ctx_new: FormalContext) -> SchemaDiff:
    old, new = align(ctx_old, ctx_new)
    lo, ln = enumerate_concepts(old), enumerate_concepts(new)

    def classes(ctx, lattice):
        return {frozenset(ctx.objects(e)) for e in lattice.extents()}

    co, cn = classes(old, lo), classes(new, ln)

    def key(s):
        return (len(s), sorted(s))

    diff = SchemaDiff(
        added=sorted(cn - co, key=key),
        removed=sorted(co - cn, key=key),
        preserved=sorted(co & cn, key=key),
        node_counts=(len(lo), len(ln)),
    )
    diff.verdicts["old <= new (relation)"] = le_relation(old, new)
    diff.verdicts["new <= old (relation)"] = le_relation(new, old)
    po, pn = polarity_of(old).gc, polarity_of(new).gc
    if po is not None and pn is not None:
        diff.verdicts["old preceq_P new"] = preceq_P(po, pn)
        diff.verdicts["old preceq_Q new"] = preceq_Q(po, pn)
        diff.verdicts["old preceq_PQ new"] = preceq_PQ(po, pn)
        diff.verdicts["new preceq_PQ old"] = preceq_PQ(pn, po)
    return diff

