"""
Unit tests for hypergraphs with equivalence.
"""

import pytest

from src.core import finset
from src.core.errors import InvalidMorphism, LabelError
from src.core.eqhyp import (EqHypergraph, LabelledEqHypergraph, complete_classes, compose_eq, eq_morphism,
                            equalizer_eq, find_eq_morphisms, free_eq, identity_eq, indiscrete_eq,
                            is_class_injective, is_iso_eq, is_mono_eq, is_pb_mono, is_regular_mono_eq,
                            is_T_morphism, pullback_eqhyp, pullback_mediator_eq, pushout_eqhyp,
                            pushout_labelled_eq, pushout_mediator_eq, subobject)
from src.core.hypergraph import Hypergraph
from src.lab.campaigns import small_eq_hypergraphs
from src.lab.fixtures import div_self_rule
from src.lab.oracles import is_mono_by_kernel_pair_eq, is_regular_by_cokernel_pair_eq


def nodes(*ids, classes=None):
    hyp = Hypergraph.build(ids, {})
    return EqHypergraph.from_partition(hyp, classes or [])


class TestEqHypergraph:
    """Test objects and morphisms."""

    def test_from_partition_numbers_by_least_node(self):
        G = nodes(0, 1, 2, classes=[[1, 2]])
        assert G.q.images == (0, 1, 1)
        assert G.partition() == [[0], [1, 2]]

    def test_indiscrete_and_free(self):
        hyp = Hypergraph.build([0, 1, 2], {})
        assert len(indiscrete_eq(hyp).classes) == 1
        assert len(free_eq(hyp).classes) == 3
        assert len(indiscrete_eq(Hypergraph.build([], {})).classes) == 0

    def test_class_map_is_completed(self):
        G = nodes(0, 1, classes=[[0, 1]])
        H = nodes(0, 1, 2, classes=[[1, 2]])
        m = eq_morphism(G, H, {}, {0: 1, 1: 2})
        assert m.h_Q.images == (1,)

    def test_node_map_splitting_a_class(self):
        G = nodes(0, 1, classes=[[0, 1]])
        H = nodes(0, 1)
        assert complete_classes(G, H, finset.identity(G.nodes)) is None
        with pytest.raises(InvalidMorphism):
            eq_morphism(G, H, {}, {0: 0, 1: 1})

    def test_search_respects_classes(self):
        G = nodes(0, 1, classes=[[0, 1]])
        H = nodes(0, 1)
        found = list(find_eq_morphisms(G, H))
        assert [m.h_V.images for m in found] == [(0, 0), (1, 1)]


class TestMonoClasses:
    """Test mono, regular mono and Pb membership."""

    def test_identity_in_every_class(self):
        G = nodes(0, 1, classes=[[0, 1]])
        m = identity_eq(G)
        assert is_mono_eq(m) and is_regular_mono_eq(m) and is_pb_mono(m) and is_iso_eq(m)

    def test_mono_not_regular(self):
        G = nodes(0, 1)
        H = nodes(0, 1, classes=[[0, 1]])
        m = eq_morphism(G, H, {}, {0: 0, 1: 1})
        assert is_mono_eq(m)
        assert is_mono_by_kernel_pair_eq(m)
        assert not is_class_injective(m)
        assert not is_regular_mono_eq(m)
        assert not is_regular_by_cokernel_pair_eq(m)

    def test_regular_not_pb(self):
        H = nodes(0, 1, classes=[[0, 1]])
        m = subobject(H, [0])
        assert is_regular_mono_eq(m)
        assert is_regular_by_cokernel_pair_eq(m)
        assert not is_pb_mono(m)

    def test_whole_class_is_pb(self):
        H = nodes(0, 1, 2, classes=[[0, 1]])
        assert is_pb_mono(subobject(H, [0, 1]))

    def test_div_self_right_leg(self):
        """The right leg adds a node to the class of the root: regular, not Pb."""
        rule = div_self_rule()
        assert is_regular_mono_eq(rule.r)
        assert not is_pb_mono(rule.r)
        assert not is_T_morphism(rule.r, rule.lhs, rule.rhs)


class TestPbMonos:
    """Test closure of the Pb class under composition and pullback."""

    def test_composite_of_pb_monos_is_pb(self):
        C = nodes(0, 1, 2, 3, 4, classes=[[0, 1], [2, 3]])
        n = subobject(C, [0, 1, 4])
        m = subobject(n.dom, [0, 1])
        assert is_pb_mono(n) and is_pb_mono(m)
        assert is_pb_mono(compose_eq(n, m))

    def test_composite_with_a_partial_class_is_not_pb(self):
        C = nodes(0, 1, 2, classes=[[0, 1]])
        n = subobject(C, [0, 1])
        m = subobject(n.dom, [0])
        assert is_regular_mono_eq(compose_eq(n, m))
        assert not is_pb_mono(compose_eq(n, m))

    def test_pullback_along_every_small_morphism(self):
        hyp = Hypergraph.build([0, 1, 2], {0: ((0,), (1,))})
        D = EqHypergraph.from_partition(hyp, [[0, 1]])
        monos = [m for m in (subobject(D, s) for s in ([0, 1], [2], [0, 1, 2], [0]))
                 if is_pb_mono(m)]
        assert len(monos) == 3
        pulled = 0
        for G in small_eq_hypergraphs(1, 2, 2):
            for g in find_eq_morphisms(G, D):
                for m in monos:
                    pb = pullback_eqhyp(m, g)
                    assert is_pb_mono(pb.leg2)
                    pulled += 1
        assert pulled > 30


class TestColimits:
    """Test pushouts, pullbacks and equalizers."""

    def test_pushout_merges_classes(self):
        A = nodes(0)
        B = nodes(0, 1, classes=[[0, 1]])
        f = eq_morphism(A, B, {}, {0: 0})
        po = pushout_eqhyp(f, f)
        assert len(po.apex.nodes) == 3
        assert len(po.apex.classes) == 1

    def test_pullback_keeps_only_inhabited_classes(self):
        D = nodes(0, 1, classes=[[0, 1]])
        b, c = subobject(D, [0]), subobject(D, [1])
        pb = pullback_eqhyp(b, c)
        assert len(pb.apex.nodes) == 0
        assert len(pb.apex.classes) == 0

    def test_pushout_mediator(self):
        A = nodes(0)
        B = nodes(0, 1)
        f = eq_morphism(A, B, {}, {0: 0})
        po = pushout_eqhyp(f, f)
        T = nodes(0)
        u = eq_morphism(B, T, {}, {0: 0, 1: 0})
        phi = pushout_mediator_eq(po, u, u)
        assert phi is not None
        assert compose_eq(phi, po.leg1) == u

    def test_pullback_mediator(self):
        D = nodes(0, 1)
        b = subobject(D, [0, 1])
        pb = pullback_eqhyp(b, b)
        phi = pullback_mediator_eq(pb, identity_eq(b.dom), identity_eq(b.dom))
        assert phi is not None and is_iso_eq(phi)

    def test_equalizer(self):
        G = nodes(0, 1)
        H = nodes(0, 1)
        f = eq_morphism(G, H, {}, {0: 0, 1: 1})
        g = eq_morphism(G, H, {}, {0: 0, 1: 0})
        e = equalizer_eq(f, g)
        assert list(e.dom.nodes) == [0]

    def test_labelled_pushout_clash(self, sig):
        base = Hypergraph.build([0], {0: ((), (0,))})
        a = LabelledEqHypergraph.of(free_eq(base), {0: 'a'}, sig)
        b = LabelledEqHypergraph.of(free_eq(base), {0: 'b'}, sig)
        f = eq_morphism(a.eq, a.eq, {0: 0}, {0: 0})
        g = eq_morphism(a.eq, b.eq, {0: 0}, {0: 0})
        with pytest.raises(LabelError):
            pushout_labelled_eq(f, g, a, b)
