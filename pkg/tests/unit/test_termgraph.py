"""
Unit tests for signatures, labellings and term graphs.
"""

import pytest

from src.core.errors import LabelError, NotATermGraph, ParseError
from src.core.hypergraph import Hypergraph, hyp_morphism
from src.core.termgraph import (Labelling, Signature, TermGraphCert, find_labelled_morphisms, input_nodes,
                                is_acyclic_labelling, is_regular_mono_tg, is_term_graph, labelling_morphism,
                                pushout_labelled, sigma_graph, term, term_graph_from_term)
from src.lab.campaigns import small_term_graphs
from src.lab.fixtures import example_term_graph
from src.lab.oracles import is_regular_by_cokernel_pair_tg


class TestSignature:
    """Test signature files."""

    def test_from_text(self):
        sig = Signature.from_text("; arithmetic\nop a 0\nop f 1\n\n# binary\nop + 2\n")
        assert sig.ops == ('+', 'a', 'f')
        assert sig.arity('+') == 2
        assert Signature.from_text(sig.to_text()) == sig

    def test_malformed_line(self):
        with pytest.raises(ParseError) as err:
            Signature.from_text("op a 0\n  op f x\n")
        assert (err.value.line, err.value.column) == (2, 3)

    def test_unknown_symbol(self, sig):
        with pytest.raises(LabelError):
            sig.arity('+')

    def test_sigma_graph(self, sig):
        graph, ids = sigma_graph(sig)
        assert len(graph.nodes) == 1
        assert len(graph.edges) == len(sig.ops)
        assert graph.source(ids['*']) == (0, 0)


class TestLabelling:
    """Test labelled hypergraphs and term graphs."""

    def test_arity_is_enforced(self, sig):
        G = Hypergraph.build([0, 1], {0: ((1,), (0,))})
        with pytest.raises(LabelError):
            Labelling.of(G, {0: '*'}, sig)

    def test_single_target_required(self, sig):
        G = Hypergraph.build([0, 1], {0: ((), (0, 1))})
        with pytest.raises(LabelError):
            Labelling.of(G, {0: 'a'}, sig)

    def test_example_is_a_term_graph(self):
        lab = example_term_graph()
        assert is_term_graph(lab)
        assert is_acyclic_labelling(lab)
        assert TermGraphCert.of(lab).tau.images == (1, 2, 3, 4)
        assert labelling_morphism(lab).h_V.images == (0, 0, 0, 0)

    def test_shared_target_is_not_a_term_graph(self, sig):
        G = Hypergraph.build([0], {0: ((), (0,)), 1: ((), (0,))})
        lab = Labelling.of(G, {0: 'a', 1: 'b'}, sig)
        assert not is_term_graph(lab)
        with pytest.raises(NotATermGraph):
            TermGraphCert.of(lab)

    def test_cycle_is_still_a_term_graph(self, sig):
        G = Hypergraph.build([0, 1], {0: ((0, 1), (0,))})
        lab = Labelling.of(G, {0: '*'}, sig)
        assert is_term_graph(lab)
        assert not is_acyclic_labelling(lab)

    def test_term_graph_from_term_is_preorder(self, sig):
        t = term('/', term('*', term('a'), term('2')), term('2'))
        lab = term_graph_from_term(t, sig)
        assert lab.labels == ('/', '*', 'a', '2', '2')
        assert lab.base.source(0) == (1, 4)
        assert lab.base.source(1) == (2, 3)
        assert list(input_nodes(lab)) == []
        assert str(t) == '(/ (* a 2) 2)'


class TestRegularMonos:
    """Test input-preserving monos of term graphs."""

    def _pair(self, sig):
        # a ↦ x where x is an input of G but the output of an edge in H
        G = Labelling.of(Hypergraph.build([0, 1], {0: ((1, 1), (0,))}), {0: '*'}, sig)
        H = Labelling.of(Hypergraph.build([0, 1], {0: ((1, 1), (0,)), 1: ((), (1,))}), {0: '*', 1: 'a'}, sig)
        return G, H

    def test_input_must_stay_input(self, sig):
        G, H = self._pair(sig)
        m = hyp_morphism(G.base, H.base, {0: 0}, {0: 0, 1: 1})
        assert not is_regular_mono_tg(m, G, H)
        assert not is_regular_by_cokernel_pair_tg(m, G, H)

    def test_identity_is_regular(self, sig):
        _, H = self._pair(sig)
        m = hyp_morphism(H.base, H.base, {0: 0, 1: 1}, {0: 0, 1: 1})
        assert is_regular_mono_tg(m, H, H)
        assert is_regular_by_cokernel_pair_tg(m, H, H)

    def test_non_term_graph_rejected(self, sig):
        G = Labelling.of(Hypergraph.build([0], {0: ((), (0,)), 1: ((), (0,))}), {0: 'a', 1: 'a'}, sig)
        m = hyp_morphism(G.base, G.base, {0: 0, 1: 1}, {0: 0})
        with pytest.raises(NotATermGraph):
            is_regular_mono_tg(m, G, G)


class TestPushouts:
    """Test labelled pushouts of term graphs."""

    def test_gluing_two_constants_on_an_input(self, sig):
        """Two inclusions of a bare node that are monos but not regular."""
        point = Labelling.of(Hypergraph.build([0], {}), {}, sig)
        a = Labelling.of(Hypergraph.build([0], {0: ((), (0,))}), {0: 'a'}, sig)
        b = Labelling.of(Hypergraph.build([0], {0: ((), (0,))}), {0: 'b'}, sig)
        f = hyp_morphism(point.base, a.base, {}, {0: 0})
        g = hyp_morphism(point.base, b.base, {}, {0: 0})
        assert not is_regular_mono_tg(f, point, a)
        assert not is_regular_mono_tg(g, point, b)
        po = pushout_labelled(f, g, a, b)
        assert len(po.apex.base.nodes) == 1
        assert sorted(po.apex.labels) == ['a', 'b']
        assert not is_term_graph(po.apex)

    def test_pushout_along_a_regular_mono_is_a_term_graph(self):
        graphs = list(small_term_graphs(1, 2))
        squares = 0
        for G in graphs:
            regular = []
            for H in graphs:
                for edge_map, node_map in find_labelled_morphisms(G, H, injective=True):
                    m = hyp_morphism(G.base, H.base, edge_map, node_map)
                    if is_regular_mono_tg(m, G, H):
                        regular.append((m, H))
            for K in graphs:
                for edge_map, node_map in find_labelled_morphisms(G, K):
                    g = hyp_morphism(G.base, K.base, edge_map, node_map)
                    for m, H in regular:
                        po = pushout_labelled(m, g, H, K)
                        assert is_term_graph(po.apex)
                        squares += 1
        assert squares > 400
