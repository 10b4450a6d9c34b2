import json

from hypothesis import given, settings, strategies as st

from galcore.galois import (
    GaloisConnection,
    derive_adjoint,
    idempotence_check,
    idempotence_report,
    image,
    is_perfect,
    leaf_antiiso,
    leaves,
    node_poset,
    nodes,
    validate_gc,
    validate_gc_adjoint,
)
from galcore.oracle import all_ref_posets, ref_gcs, ref_is_gc
from galcore.ordering import constant_top, enumerate_gcs
from galcore.poset import OrderMap, Poset

from conftest import chain


def test_chain_pair_connections_validate(chain_pair):
    for gc in chain_pair:
        assert validate_gc(gc).ok
        assert validate_gc_adjoint(gc).ok
        assert idempotence_check(gc)


def test_chain_pair_values(chain_pair):
    gc1, gc2 = chain_pair
    # labels are 1-based: f1(3) = f1(2) = 2, f1(1) = 4, g1(4) = g1(3) = 1
    assert [gc1.P.labels[gc1.g(q)] for q in (3, 2)] == ["1", "1"]
    assert [gc1.Q.labels[gc1.f(p)] for p in (2, 1, 0)] == ["2", "2", "4"]
    assert gc2.Q.labels[gc2.f(2)] == "1"


def test_constant_top_validates():
    for P, Q in [(chain(3), chain(2)), (Poset.diamond(), chain(3))]:
        top = constant_top(P, Q)
        assert validate_gc(top).ok
        assert nodes(top, "P") == {P.size - 1} and nodes(top, "Q") == {Q.size - 1}
        assert len(leaves(top, "P")) == 1
        assert not is_perfect(top)


def test_identity_on_chain_is_not_a_connection():
    c = chain(2)
    report = validate_gc(GaloisConnection(c, c, [0, 1], [0, 1]))
    assert {"f-not-antitone", "g-not-antitone"} <= report.kinds()


def test_adjoint_failure_has_witness():
    c = chain(3)
    gc = GaloisConnection(c, c, [2, 1, 0], [0, 0, 0])
    report = validate_gc_adjoint(gc)
    assert not report.ok
    p, q = report.first("adjoint").witness
    assert (c.le(p, gc.g(q))) != (c.le(q, gc.f(p)))


def test_nodes_and_leaves_chain_pair(chain_pair):
    gc1, _ = chain_pair
    assert nodes(gc1, "P") == {0, 2}
    dec = leaves(gc1, "P")
    assert [sorted(l) for l in dec.leaves] == [[0], [1, 2]]
    assert dec.nodes == (0, 2)
    assert [sorted(l) for l in leaves(gc1, "Q").leaves] == [[0, 1], [2, 3]]


def test_leaf_antiiso_chain_pair(chain_pair):
    gc1, _ = chain_pair
    corr = leaf_antiiso(gc1)
    # P-leaf {2,3} goes to the Q-leaf {1,2}; P-leaf {1} to {3,4}
    sends = {
        tuple(sorted(corr.p_leaves.leaves[i])): tuple(sorted(corr.q_leaves.leaves[j]))
        for i, j in enumerate(corr.forward)
    }
    assert sends == {(1, 2): (0, 1), (0,): (2, 3)}


def test_perfect_diamond_pair(diamond_pair):
    for gc in diamond_pair:
        assert is_perfect(gc)
        assert nodes(gc, "P") == set(range(4))
        assert all(len(l) == 1 for l in leaves(gc, "P").leaves)
        corr = leaf_antiiso(gc)
        assert [corr.q_leaves.nodes[j] for j in corr.forward] == list(gc.f.table[list(corr.p_leaves.nodes)])


def test_chain_pair_not_perfect(chain_pair):
    assert not is_perfect(chain_pair[0])


def test_derive_adjoint(chain_pair):
    gc1, _ = chain_pair
    got = derive_adjoint(gc1.f)
    assert got is not None and list(got.g.table) == [2, 2, 0, 0]
    P, Q = chain(3), chain(2)
    top = derive_adjoint(OrderMap(P, Q, [1, 1, 1]))
    assert list(top.g.table) == [2, 2]


def test_derive_adjoint_absent_without_join():
    # bottom below two incomparable elements: the join needed for g(bottom) does not exist
    V = Poset.from_pairs(3, [(0, 1), (0, 2)])
    assert derive_adjoint(OrderMap(V, chain(2), [1, 0, 0])) is None


def test_idempotence_detects_perturbation(chain_pair):
    gc1, _ = chain_pair
    bad = GaloisConnection(gc1.P, gc1.Q, gc1.f.table, [2, 2, 0, 1])
    assert not idempotence_report(bad).ok
    assert not idempotence_check(bad)


def test_node_poset_of_chain_pair(chain_pair):
    np_ = node_poset(chain_pair[0], "P")
    assert np_.size == 2 and list(np_.labels) == ["1", "3"]
    assert np_.le(0, 1)


def test_json_roundtrip(chain_pair):
    gc1, _ = chain_pair
    assert GaloisConnection.loads(json.dumps(gc1.to_json())) == gc1


def test_nodes_equal_image_of_other_map():
    for P in all_ref_posets(3):
        for Q in all_ref_posets(3):
            for gc in enumerate_gcs(P, Q):
                assert nodes(gc, "P") == image(gc, "P") == set(gc.g.table.tolist())
                assert nodes(gc, "Q") == set(gc.f.table.tolist())


def test_uniqueness_of_adjoint():
    # every left map has at most one partner, and derive_adjoint finds it
    for P in all_ref_posets(3):
        for Q in all_ref_posets(2):
            partners = {}
            for f, g in ref_gcs(P, Q):
                partners.setdefault(f, []).append(g)
            for f, gs in partners.items():
                assert len(gs) == 1
                assert tuple(derive_adjoint(OrderMap(P, Q, f)).g.table.tolist()) == gs[0]


small_posets = st.sampled_from(all_ref_posets(3))


@settings(max_examples=150, deadline=None)
@given(small_posets, small_posets, st.data())
def test_two_definitions_agree_on_random_maps(P, Q, data):
    f = data.draw(st.lists(st.integers(0, max(Q.size - 1, 0)), min_size=P.size, max_size=P.size)) if Q.size else []
    g = data.draw(st.lists(st.integers(0, max(P.size - 1, 0)), min_size=Q.size, max_size=Q.size)) if P.size else []
    if (P.size and not Q.size) or (Q.size and not P.size):
        return
    gc = GaloisConnection(P, Q, f, g)
    assert validate_gc(gc).ok == validate_gc_adjoint(gc).ok == ref_is_gc(P, Q, f, g)
