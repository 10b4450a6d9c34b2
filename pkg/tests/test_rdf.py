import random

import numpy as np
import pytest

from galcore.context import FormalContext
from galcore.oracle import brute_concepts
from galcore.rdf import (
    NTriplesError,
    TripleSet,
    align,
    context_from_triples,
    parse_ntriples,
    schema_classes,
    schema_diff,
)

THREE = """\
<s1> <p1> <o1> .
<s1> <p2> "o2"@en .
<s2> <p2> _:o3 .
"""


def test_parse_basic():
    assert len(parse_ntriples("")) == 0
    t = parse_ntriples("<http://a> <http://b> <http://c> .")
    assert t.triples == (("http://a", "http://b", "http://c"),)


def test_parse_literals_and_comments():
    text = '# header\n_:x <p> "a \\"quoted\\" word"^^<http://t> .  # trailing\n\n'
    assert parse_ntriples(text).triples == (("_:x", "p", '"a \\"quoted\\" word"^^<http://t>'),)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(NTriplesError) as err:
        parse_ntriples("<a> <b> <c> .\n<a> <b> <c>\n")
    assert err.value.lineno == 2 and "'.'" in str(err.value)
    with pytest.raises(NTriplesError) as err:
        parse_ntriples('"lit" <b> <c> .')
    assert err.value.lineno == 1


def test_three_triples_context():
    ctx = context_from_triples(parse_ntriples(THREE))
    assert list(ctx.g_labels) == ["s1", "s2"]
    assert list(ctx.m_labels) == ["p1", "p2"]
    assert ctx.pairs() == {(0, 0), (0, 1), (1, 1)}


def test_empty_triples():
    ctx = context_from_triples(TripleSet(()))
    assert ctx.incidence.shape == (0, 0)


def test_duplicates_and_order_do_not_matter():
    lines = THREE.splitlines()
    rng = random.Random(1)
    base = context_from_triples(parse_ntriples(THREE))
    for _ in range(5):
        shuffled = lines + rng.sample(lines, 2)
        rng.shuffle(shuffled)
        assert context_from_triples(parse_ntriples("\n".join(shuffled))) == base


def test_schema_classes_match_concepts():
    ctx = context_from_triples(parse_ntriples(THREE))
    schema = schema_classes(ctx)
    extents = {frozenset(i for i in range(2) if c.extent >> i & 1) for c in schema.classes}
    assert extents == {a for a, _ in brute_concepts(ctx)}
    assert [c.subjects for c in schema.classes] == [("s1",), ("s1", "s2")]
    assert schema.subclass_of == [(0, 1)]


def test_schema_of_trivial_relations():
    full = schema_classes(FormalContext(np.ones((3, 2), dtype=bool), ["a", "b", "c"]))
    assert [c.subjects for c in full.classes] == [("a", "b", "c")]
    empty = schema_classes(FormalContext(np.zeros((2, 2), dtype=bool)))
    assert [c.subjects for c in empty.classes] == [(), ("g1", "g2")]


def test_diff_with_itself():
    ctx = context_from_triples(parse_ntriples(THREE))
    d = schema_diff(ctx, ctx)
    assert d.empty and len(d.preserved) == 2
    assert d.verdicts["old <= new (relation)"].holds


def test_adding_a_triple():
    old = context_from_triples(parse_ntriples(THREE))
    new = context_from_triples(parse_ntriples(THREE + "<s2> <p1> <o4> .\n"))
    d = schema_diff(old, new)
    assert d.verdicts["old <= new (relation)"].holds
    assert not d.verdicts["new <= old (relation)"].holds
    assert d.removed == [frozenset({"s1"})] and d.added == []


def test_diff_aligns_carriers():
    old = context_from_triples(parse_ntriples(THREE))
    new = context_from_triples(parse_ntriples(THREE + "<s3> <p3> <o> .\n"))
    a, b = align(old, new)
    assert list(a.g_labels) == ["s1", "s2", "s3"] and list(a.m_labels) == ["p1", "p2", "p3"]
    assert a.pairs() <= b.pairs()
    assert schema_diff(old, new).verdicts["old <= new (relation)"].holds


def test_removing_everything():
    old = context_from_triples(parse_ntriples(THREE))
    new = FormalContext(np.zeros((2, 2), dtype=bool), old.g_labels, old.m_labels)
    d = schema_diff(old, new)
    assert set(d.added) | set(d.preserved) == {frozenset(), frozenset({"s1", "s2"})}
