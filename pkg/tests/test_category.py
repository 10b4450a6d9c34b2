import itertools

import numpy as np
import pytest

from galcore.category import (
    GalMorphism,
    characterize_morphism,
    check_initiality,
    compose,
    embed_into_polarity,
    embedding_relation,
    identity,
    is_fc_morphism,
    is_gal_morphism,
    is_monomorphism,
    is_order_preserving,
    is_pol_morphism,
)
from galcore.context import FormalContext, polarity_of
from galcore.galois import GaloisConnection, validate_gc
from galcore.oracle import all_ref_posets
from galcore.ordering import constant_top, enumerate_gcs
from galcore.poset import CapExceededError, Poset

from conftest import chain

# (p, q) pairs with p <= g(q) and q <= f(p), computed by a direct double loop
CHAIN_RELATION = {(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (1, 1), (2, 0), (2, 1)}
DIAMOND_RELATION = {(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (1, 1), (2, 0), (2, 2), (3, 0)}


def test_identity_is_morphism(chain_pair):
    gc = chain_pair[0]
    m = identity(gc)
    assert is_gal_morphism(gc, gc, m.h, m.k)
    assert is_monomorphism(m)
    rep = characterize_morphism(gc, gc, m.h, m.k)
    assert rep.commutes and rep.structural and rep.fixed_point_paths


def test_perturbed_morphism_fails_with_witness(chain_pair):
    gc = chain_pair[0]
    v = is_gal_morphism(gc, gc, [2, 2, 2], [0, 1, 2, 3])
    assert not v and v.witness[0] in ("f", "g")


def test_node_to_non_node_breaks_everything(chain_pair):
    gc = chain_pair[0]
    # P-node 1 (index 0) sent to 2 (index 1), which is not a node
    rep = characterize_morphism(gc, gc, [1, 1, 2], [0, 1, 2, 3])
    assert not rep.commutes and not rep.nodes_preserved
    assert not rep.structural and not rep.fixed_point_paths
    assert rep.consistent
    assert any("witness" in line for line in rep.lines())


def test_collapsing_map_not_mono(chain_pair):
    top = constant_top(chain(2), chain(2))
    m = GalMorphism(top, top, [1, 1], [1, 1])
    assert not is_monomorphism(m)


def test_morphism_construction_validates(chain_pair):
    gc = chain_pair[0]
    with pytest.raises(ValueError):
        GalMorphism(gc, gc, [2, 2, 2], [0, 1, 2, 3])
    with pytest.raises(ValueError):
        GalMorphism(gc, gc, [0, 1], [0, 1, 2, 3])


def test_composition_laws():
    D = Poset.diamond()
    gcs = enumerate_gcs(D, chain(2))[:4]
    morphisms = []
    for src, dst in itertools.product(gcs, repeat=2):
        for h in itertools.product(range(4), repeat=4):
            for k in itertools.product(range(2), repeat=2):
                if is_gal_morphism(src, dst, h, k):
                    morphisms.append(GalMorphism(src, dst, h, k))
    assert morphisms
    for m in morphisms[:40]:
        assert compose(m, identity(m.src)) == m == compose(identity(m.dst), m)
    chains = [(a, b, c) for a in morphisms[:30] for b in morphisms[:30] for c in morphisms[:30]
              if a.dst == b.src and b.dst == c.src]
    for a, b, c in chains[:200]:
        assert compose(c, compose(b, a)) == compose(compose(c, b), a)


def test_compose_rejects_mismatch(chain_pair, diamond_pair):
    with pytest.raises(ValueError):
        compose(identity(diamond_pair[0]), identity(chain_pair[0]))


def test_order_preserving_flag(chain_pair):
    gc = chain_pair[0]
    assert is_order_preserving(gc, gc, [0, 1, 2], [0, 1, 2, 3])
    assert not is_order_preserving(gc, gc, [2, 1, 0], [0, 1, 2, 3])


# embedding


def test_embedding_one_element():
    one = chain(1)
    emb = embed_into_polarity(GaloisConnection(one, one, [0], [0]))
    assert emb.polarity.P == chain(2)
    assert emb.polarity.f(0) == 1  # empty intersection is the whole carrier


@pytest.mark.parametrize("which", [0, 1])
def test_embedding_chain_pair(chain_pair, which):
    gc = chain_pair[which]
    emb = embed_into_polarity(gc)
    assert validate_gc(emb.polarity).ok
    assert is_gal_morphism(gc, emb.polarity, emb.morphism.h, emb.morphism.k)
    assert is_monomorphism(emb.morphism)


def test_embedding_relations(chain_pair, diamond_pair):
    assert embedding_relation(chain_pair[0]).pairs() == CHAIN_RELATION
    assert embedding_relation(diamond_pair[0]).pairs() == DIAMOND_RELATION
    for gc in (chain_pair[0], diamond_pair[0], diamond_pair[1]):
        back = polarity_of(embedding_relation(gc)).gc
        emb = embed_into_polarity(gc)
        assert np.array_equal(back.f.table, emb.polarity.f.table)
        assert np.array_equal(back.g.table, emb.polarity.g.table)


def test_constant_top_relation_is_full():
    top = constant_top(chain(2), chain(3))
    assert embedding_relation(top).pairs() == set(itertools.product(range(2), range(3)))


def test_embedding_square_formula(chain_pair):
    gc = chain_pair[0]
    emb = embed_into_polarity(gc)
    for p in range(gc.P.size):
        assert emb.polarity.f(gc.P.down_mask(p)) == gc.Q.down_mask(gc.f(p))


def test_embedding_cap(monkeypatch, chain_pair):
    monkeypatch.setenv("GALCORE_CAP", "3")
    with pytest.raises(CapExceededError):
        embed_into_polarity(chain_pair[0])


def test_initiality_identity_probe():
    gc = constant_top(chain(2), chain(2))
    report = check_initiality(identity(gc), [gc])
    assert report.ok and report.triggered >= 1


def test_initiality_of_embeddings_small():
    probes = [gc for P in all_ref_posets(2) for Q in all_ref_posets(2) for gc in enumerate_gcs(P, Q)]
    targets = [gc for gc in probes if gc.P.size == 2 and gc.Q.size == 2]
    for gc in targets:
        report = check_initiality(embed_into_polarity(gc).morphism, probes)
        assert report.ok
        # most map pairs do not compose to a morphism and are skipped
        assert report.triggered < report.checked


def test_initiality_limit():
    gc = constant_top(chain(3), chain(3))
    with pytest.raises(CapExceededError):
        check_initiality(embed_into_polarity(gc).morphism, [gc], limit=10)


def test_fc_and_pol_entry_points_agree():
    a = FormalContext.from_code(2, 2, 0b1001)
    b = FormalContext.from_code(2, 2, 0b0110)
    pa, pb = polarity_of(a).gc, polarity_of(b).gc
    swap = [0, 2, 1, 3]
    for h, k in [(swap, [0, 1, 2, 3]), ([0, 1, 2, 3], swap), (swap, swap)]:
        assert is_fc_morphism(a, b, h, k).holds == is_pol_morphism(pa, pb, h, k).holds


def test_pol_rejects_non_powersets(chain_pair):
    gc = chain_pair[0]
    with pytest.raises(ValueError):
        is_pol_morphism(gc, gc, [0, 1, 2], [0, 1, 2, 3])
