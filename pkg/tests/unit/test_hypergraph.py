"""
Unit tests for hypergraphs and their morphisms.
"""

import pytest

from src.core import finset
from src.core.errors import CarrierMismatch, InvalidMorphism
from src.core.finset import FinSet
from src.core.hypergraph import (Hypergraph, compose_hyp, coproduct_hyp, discrete, discrete_morphism,
                                 example_graph, find_morphisms, hyp_morphism, identity_hyp, is_iso_hyp, is_mono_hyp,
                                 kernel_pair_hyp, morphisms_between, pullback_hyp, pullback_mediator_hyp,
                                 pushout_hyp, pushout_mediator_hyp, validate_morphism)
from src.core.termgraph import labelling_morphism
from src.lab.fixtures import example_term_graph
from src.lab.oracles import is_mono_by_kernel_pair_hyp


def edge(src, tgt):
    return (tuple(src), tuple(tgt))


class TestHypergraph:
    """Test construction and incidences."""

    def test_example_graph(self):
        G = example_graph()
        assert len(G.nodes) == 4 and len(G.edges) == 4
        assert G.source(4) == (3, 2)
        assert G.incident_nodes(3) == (1, 2, 3)

    def test_dangling_incidence(self):
        with pytest.raises(CarrierMismatch):
            Hypergraph.build([0], {0: edge([1], [0])})

    def test_invalid_morphism(self):
        G = Hypergraph.build([0, 1], {0: edge([0], [1])})
        with pytest.raises(InvalidMorphism):
            hyp_morphism(G, G, {0: 0}, {0: 1, 1: 0})


class TestColimits:
    """Test pushouts and pullbacks of hypergraphs."""

    def test_pushout_glues_along_shared_node(self):
        point = Hypergraph.build([0], {})
        B = Hypergraph.build([0, 1], {0: edge([0], [1])})
        f = hyp_morphism(point, B, {}, {0: 0})
        po = pushout_hyp(f, f)
        assert len(po.apex.nodes) == 3
        assert len(po.apex.edges) == 2
        assert validate_morphism(po.leg1) and validate_morphism(po.leg2)

    def test_pullback_pairs_source_words(self):
        D = Hypergraph.build([0], {0: edge([0, 0], [0])})
        B = Hypergraph.build([0, 1], {0: edge([0, 1], [0])})
        f = hyp_morphism(B, D, {0: 0}, {0: 0, 1: 0})
        pb = pullback_hyp(f, f)
        assert len(pb.apex.nodes) == 4
        assert len(pb.apex.edges) == 1
        assert validate_morphism(pb.leg1)

    def test_kernel_pair_detects_monos(self):
        G = example_graph()
        m = identity_hyp(G)
        assert is_mono_hyp(m)
        assert is_mono_by_kernel_pair_hyp(m)
        assert is_iso_hyp(m)

    def test_collapsing_morphism_is_not_mono(self):
        G = Hypergraph.build([0, 1], {})
        H = Hypergraph.build([0], {})
        m = hyp_morphism(G, H, {}, {0: 0, 1: 0})
        assert not is_mono_hyp(m)
        assert not is_mono_by_kernel_pair_hyp(m)
        assert len(kernel_pair_hyp(m).apex.nodes) == 4


class TestMorphismSearch:
    """Test enumeration of morphisms."""

    def test_automorphisms_of_example(self):
        G = example_graph()
        assert [m for m in morphisms_between(G, G) if is_iso_hyp(m)] == [identity_hyp(G)]

    def test_injective_search(self):
        G = Hypergraph.build([0, 1], {})
        H = Hypergraph.build([0, 1, 2], {})
        assert len(list(find_morphisms(G, H))) == 9
        assert len(list(find_morphisms(G, H, injective=True))) == 6

    def test_fixed_nodes(self):
        G = Hypergraph.build([0, 1], {0: edge([0], [1])})
        H = Hypergraph.build([0, 1, 2], {0: edge([0], [1]), 1: edge([0], [2])})
        found = list(find_morphisms(G, H, fixed_nodes={1: 2}))
        assert found == [({0: 1}, {0: 0, 1: 2})]


class TestUniversalProperties:
    """Mediators out of pushouts and pullbacks, checked against every cocone."""

    def test_pushout_mediator_is_unique(self):
        point = Hypergraph.build([0], {})
        B = Hypergraph.build([0, 1], {0: edge([0], [1])})
        C = Hypergraph.build([0, 1], {0: edge([1], [0])})
        f = hyp_morphism(point, B, {}, {0: 0})
        g = hyp_morphism(point, C, {}, {0: 0})
        po = pushout_hyp(f, g)
        loop = Hypergraph.build([0], {0: edge([0], [0])})
        swap = Hypergraph.build([0, 1], {0: edge([0], [1]), 1: edge([1], [0])})
        cocones = 0
        for T in (po.apex, loop, swap):
            for u in morphisms_between(B, T):
                for v in morphisms_between(C, T):
                    if compose_hyp(u, f) != compose_hyp(v, g):
                        continue
                    cocones += 1
                    mediators = [phi for phi in morphisms_between(po.apex, T)
                                 if compose_hyp(phi, po.leg1) == u and compose_hyp(phi, po.leg2) == v]
                    assert len(mediators) == 1
                    assert pushout_mediator_hyp(po, u, v) == mediators[0]
        assert cocones > 3

    def test_pushout_of_a_mono_is_a_pullback(self):
        A = Hypergraph.build([0, 1], {})
        B = Hypergraph.build([0, 1, 2], {0: edge([0], [2])})
        C = Hypergraph.build([0], {0: edge([0], [0])})
        m = hyp_morphism(A, B, {}, {0: 0, 1: 1})
        g = hyp_morphism(A, C, {}, {0: 0, 1: 0})
        po = pushout_hyp(m, g)
        pb = pullback_hyp(po.leg1, po.leg2)
        phi = pullback_mediator_hyp(pb, m, g)
        assert phi is not None and is_iso_hyp(phi)

    def test_pushout_of_a_non_mono_need_not_be_a_pullback(self):
        A = Hypergraph.build([0, 1], {})
        point = Hypergraph.build([0], {})
        g = hyp_morphism(A, point, {}, {0: 0, 1: 0})
        po = pushout_hyp(g, g)
        pb = pullback_hyp(po.leg1, po.leg2)
        assert len(pb.apex.nodes) == 1
        phi = pullback_mediator_hyp(pb, g, g)
        assert phi is not None and not is_iso_hyp(phi)

    def test_coproduct(self):
        G = example_graph()
        loop = Hypergraph.build([0], {0: edge([0], [0])})
        co = coproduct_hyp(G, loop)
        assert len(co.apex.nodes) == 5 and len(co.apex.edges) == 5
        assert is_mono_hyp(co.leg1) and is_mono_hyp(co.leg2)
        assert set(co.leg1.h_V.images).isdisjoint(co.leg2.h_V.images)
        assert len(pullback_hyp(co.leg1, co.leg2).apex.nodes) == 0


class TestDiscrete:
    """Test discrete hypergraphs and the node-set adjunction."""

    def test_discrete(self):
        assert len(discrete(FinSet.range(0)).nodes) == 0
        point = discrete(FinSet.range(1))
        assert len(point.nodes) == 1 and len(point.edges) == 0

    def test_morphisms_out_of_discrete_are_node_functions(self):
        X, H = FinSet.range(2), example_graph()
        transposes = [discrete_morphism(X, H, fn) for fn in finset.all_functions(X, H.nodes)]
        assert all(validate_morphism(m) for m in transposes)
        found = morphisms_between(discrete(X), H)
        assert len(found) == len(transposes) == 16
        assert all(m in transposes for m in found)

    def test_transpose_is_natural(self):
        X, H = FinSet.range(2), example_graph()
        k = labelling_morphism(example_term_graph())
        for fn in finset.all_functions(X, H.nodes):
            assert compose_hyp(k, discrete_morphism(X, H, fn)) == \
                discrete_morphism(X, k.cod, finset.compose(k.h_V, fn))
