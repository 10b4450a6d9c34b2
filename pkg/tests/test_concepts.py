import itertools
import random

import numpy as np
import pytest

from galcore.concepts import (
    Concept,
    PreconceptError,
    enumerate_concepts,
    gm_quotient,
    is_concept,
    is_preconcept,
    is_protoconcept,
    precon_interval,
    precon_members,
    precon_members_by_interval,
    preconcept_equiv,
    preconcept_preceq,
    preconcept_preceq_by_members,
    preconcept_sq_leq,
    reduced_labels,
)
from galcore.context import FormalContext
from galcore.oracle import brute_concepts


def as_sets(lattice):
    def bits(x):
        return frozenset(i for i in range(x.bit_length()) if x >> i & 1)

    return {(bits(c.extent), bits(c.intent)) for c in lattice}


# values frozen from brute_concepts on K1 (object/attribute indices)
K1_CONCEPTS = [
    ([], [0, 1, 2]),
    ([0], [0, 1]),
    ([0, 1], [1]),
    ([2], [2]),
    ([0, 1, 2], []),
]


def mask(idx):
    return sum(1 << i for i in idx)


def test_k1_concepts(ctx_k1):
    lattice = enumerate_concepts(ctx_k1)
    assert [(c.extent, c.intent) for c in lattice] == [(mask(a), mask(b)) for a, b in K1_CONCEPTS]
    assert as_sets(lattice) == brute_concepts(ctx_k1)


def test_is_concept(ctx_k1):
    assert is_concept(ctx_k1, 0b001, 0b011)
    assert not is_concept(ctx_k1, 0b011, 0b001)
    full = FormalContext(np.ones((2, 2), dtype=bool))
    assert is_concept(full, full.G, full.M)


def test_trivial_relations():
    full = FormalContext(np.ones((3, 2), dtype=bool))
    assert [(c.extent, c.intent) for c in enumerate_concepts(full)] == [(0b111, 0b11)]
    empty = FormalContext(np.zeros((3, 2), dtype=bool))
    assert [(c.extent, c.intent) for c in enumerate_concepts(empty)] == [(0, 0b11), (0b111, 0)]


def test_degenerate_carriers():
    assert len(enumerate_concepts(FormalContext(np.zeros((0, 2), dtype=bool)))) == 1
    assert len(enumerate_concepts(FormalContext(np.zeros((2, 0), dtype=bool)))) == 1
    assert len(enumerate_concepts(FormalContext(np.zeros((0, 0), dtype=bool)))) == 1


def test_brute_force_limits():
    with pytest.raises(ValueError):
        brute_concepts(FormalContext(np.zeros((5, 1), dtype=bool)))


def test_random_contexts_match_brute_force():
    rng = random.Random(7)
    for _ in range(200):
        n, m = rng.randint(0, 4), rng.randint(0, 4)
        ctx = FormalContext.from_code(n, m, rng.getrandbits(n * m) if n * m else 0)
        lattice = enumerate_concepts(ctx)
        assert as_sets(lattice) == brute_concepts(ctx)
        assert len(lattice) == len(brute_concepts(ctx))


def test_lattice_structure(ctx_k1):
    lattice = enumerate_concepts(ctx_k1)
    assert lattice.top() == 4 and lattice.bottom() == 0
    assert lattice.is_complete()
    assert lattice.join([1, 3]) == 4 and lattice.meet([2, 3]) == 0
    # extent order is the reverse of intent order
    for i, a in enumerate(lattice):
        for j, b in enumerate(lattice):
            assert bool(lattice.order[i, j]) == (b.intent & ~a.intent == 0)


def test_reduced_labels(ctx_k1):
    labels = reduced_labels(enumerate_concepts(ctx_k1))
    assert labels == [([], []), (["g1"], ["m1"]), (["g2"], ["m2"]), (["g3"], ["m3"]), ([], [])]


# preconcepts


def test_protoconcepts_k1(ctx_k1):
    assert is_protoconcept(ctx_k1, 0b001, 0b001)
    assert not is_protoconcept(ctx_k1, 0, 0)
    for c in enumerate_concepts(ctx_k1):
        assert is_protoconcept(ctx_k1, c.extent, c.intent)


def test_non_preconcept_rejected(ctx_k1):
    assert not is_preconcept(ctx_k1, 0b011, 0b001)
    with pytest.raises(PreconceptError):
        is_protoconcept(ctx_k1, 0b011, 0b001)
    with pytest.raises(PreconceptError):
        precon_interval(ctx_k1, 0b011, 0b001)


def test_precon_interval_k1(ctx_k1):
    lo, hi = precon_interval(ctx_k1, 0, 0)
    assert lo == Concept(0, 0b111) and hi == Concept(0b111, 0)
    lo, hi = precon_interval(ctx_k1, 0b001, 0)
    assert lo == Concept(0b001, 0b011) and hi == Concept(0b111, 0)
    c = Concept(0b011, 0b010)
    assert precon_interval(ctx_k1, *c) == (c, c)


def test_precon_members_k1(ctx_k1):
    lattice = enumerate_concepts(ctx_k1)
    assert precon_members(ctx_k1, 0, 0) == list(lattice)
    assert precon_members(ctx_k1, 0b001, 0b001) == [Concept(0b001, 0b011)]
    # ({g1}, {}) sits below ({g1}, {m1,m2}) and ({g1,g2}, {m2}) and the top
    assert precon_members(ctx_k1, 0b001, 0) == [Concept(0b001, 0b011), Concept(0b011, 0b010), Concept(0b111, 0)]
    for C in range(8):
        for D in range(8):
            if is_preconcept(ctx_k1, C, D):
                assert precon_members(ctx_k1, C, D) == precon_members_by_interval(ctx_k1, C, D)


def test_preconcept_orders(ctx_k1):
    assert preconcept_sq_leq((0, 0), (0b101, 0b1))
    assert preconcept_sq_leq((0b001, 0), (0b001, 0b001))
    # ({g2}, {}) and ({g1,g2}, {}) close to the same extent: equivalent but unequal
    a, b = (0b010, 0), (0b011, 0)
    assert preconcept_preceq(ctx_k1, a, b) and preconcept_preceq(ctx_k1, b, a)
    assert preconcept_equiv(ctx_k1, a, b)
    assert not preconcept_equiv(ctx_k1, (0b001, 0), (0b001, 0b001))


def test_preceq_matches_member_inclusion(ctx_k1):
    pre = [(C, D) for C in range(8) for D in range(8) if is_preconcept(ctx_k1, C, D)]
    lattice = enumerate_concepts(ctx_k1)
    for x, y in itertools.product(pre, repeat=2):
        assert preconcept_preceq(ctx_k1, x, y) == preconcept_preceq_by_members(ctx_k1, x, y, lattice)
        if preconcept_sq_leq(x, y):
            assert preconcept_preceq(ctx_k1, x, y)


def test_maximal_preconcepts_are_protoconcepts(ctx_k1):
    pre = [(C, D) for C in range(8) for D in range(8) if is_preconcept(ctx_k1, C, D)]
    for x in pre:
        maximal = not any(y != x and preconcept_sq_leq(x, y) for y in pre)
        if maximal:
            assert len(precon_members(ctx_k1, *x)) == 1


def test_gm_quotient_k1(ctx_k1):
    q = gm_quotient(ctx_k1)
    # 13 classes: brute-force partition of all preconcepts of K1 by their Precon sets
    assert len(q) == 13
    order = q.order
    assert all(order[i, i] for i in range(len(q)))
    assert not any(order[i, j] and order[j, i] for i in range(len(q)) for j in range(len(q)) if i != j)


def test_gm_quotient_full_relation():
    assert len(gm_quotient(FormalContext(np.ones((2, 2), dtype=bool)))) == 1


def test_leaf_members_limits():
    q = gm_quotient(FormalContext(np.ones((5, 1), dtype=bool)))
    with pytest.raises(ValueError):
        q.leaf_members(0)
