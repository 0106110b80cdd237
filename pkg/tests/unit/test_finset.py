"""
Unit tests for finite sets and their (co)limits.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core import finset
from src.core.errors import CarrierMismatch
from src.core.finset import FinFn, FinSet, UnionFind


@st.composite
def functions(draw, dom=None, cod=None, max_size=4):
    """A random FinFn; the codomain is inhabited whenever the domain is."""
    if dom is None:
        upper = max_size if cod is None or len(cod) else 0
        dom = FinSet.range(draw(st.integers(0, upper)))
    if cod is None:
        cod = FinSet.range(draw(st.integers(1 if len(dom) else 0, max_size)))
    images = draw(st.lists(st.sampled_from(cod.elems), min_size=len(dom), max_size=len(dom))) if len(dom) else []
    return FinFn(dom, cod, tuple(images))


@st.composite
def spans(draw, max_size=4):
    f = draw(functions(max_size=max_size))
    g = draw(functions(dom=f.dom, max_size=max_size))
    return f, g


@st.composite
def cospans(draw, max_size=4):
    f = draw(functions(max_size=max_size))
    g = draw(functions(cod=f.cod, max_size=max_size))
    return f, g


class TestFinSet:
    """Test carriers and functions."""

    def test_ids_must_increase(self):
        with pytest.raises(CarrierMismatch):
            FinSet((2, 1))

    def test_of_sorts_and_deduplicates(self):
        assert FinSet.of([3, 1, 3]).elems == (1, 3)

    def test_function_outside_codomain(self):
        with pytest.raises(CarrierMismatch):
            FinFn(FinSet.range(1), FinSet.range(1), (5,))

    def test_compose_checks_carriers(self):
        f = finset.fn({0: 0})
        g = finset.fn({1: 1})
        with pytest.raises(CarrierMismatch):
            finset.compose(g, f)

    def test_preimage_and_image(self):
        f = FinFn(FinSet.range(3), FinSet.range(2), (1, 0, 1))
        assert f.preimage(1) == [0, 2]
        assert f.image() == FinSet.range(2)
        assert finset.is_surjective(f)
        assert not finset.is_injective(f)

    def test_union_find_classes(self):
        uf = UnionFind(range(5))
        uf.union(0, 3)
        uf.union(3, 4)
        assert uf.same(0, 4)
        assert not uf.same(1, 2)
        assert uf.classes() == [[0, 3, 4], [1], [2]]


class TestPushout:
    """Test pushouts of finite sets."""

    def test_glue_along_a_point(self):
        """Two 2-element sets glued at one point have three elements."""
        C = FinSet.range(1)
        f = FinFn(C, FinSet.range(2), (0,))
        g = FinFn(C, FinSet.range(2), (0,))
        po = finset.pushout(f, g)
        assert len(po.apex) == 3
        assert po.leg1.images == (0, 1)
        assert finset.compose(po.leg1, f) == finset.compose(po.leg2, g)

    def test_mediator_rejects_non_commuting_cocone(self):
        C = FinSet.range(1)
        f = g = FinFn(C, FinSet.range(1), (0,))
        po = finset.pushout(f, g)
        u = FinFn(FinSet.range(1), FinSet.range(2), (0,))
        v = FinFn(FinSet.range(1), FinSet.range(2), (1,))
        assert finset.pushout_mediator(po, u, v) is None
        assert finset.count_pushout_mediators(po, u, v) == 0

    @settings(max_examples=60, deadline=None)
    @given(spans())
    def test_canonical_pushout_is_a_pushout(self, span):
        f, g = span
        po = finset.pushout(f, g)
        assert finset.is_pushout_square(po.leg1, po.leg2, f, g)

    @settings(max_examples=40, deadline=None)
    @given(spans(max_size=3), st.data())
    def test_unique_mediator(self, span, data):
        f, g = span
        po = finset.pushout(f, g)
        X = FinSet.range(2)
        u = data.draw(functions(dom=f.cod, cod=X))
        v = data.draw(functions(dom=g.cod, cod=X))
        expected = 1 if finset.compose(u, f) == finset.compose(v, g) else 0
        assert finset.count_pushout_mediators(po, u, v) == expected


class TestPullback:
    """Test pullbacks, kernel pairs and products."""

    def test_pairs_in_lexicographic_order(self):
        f = FinFn(FinSet.range(3), FinSet.range(2), (0, 0, 1))
        g = FinFn(FinSet.range(2), FinSet.range(2), (0, 1))
        pb = finset.pullback(f, g)
        assert list(zip(pb.leg1.images, pb.leg2.images)) == [(0, 0), (1, 0), (2, 1)]

    def test_kernel_pair_of_injection_is_diagonal(self):
        f = FinFn(FinSet.range(3), FinSet.range(4), (3, 0, 2))
        kp = finset.kernel_pair(f)
        assert kp.leg1 == kp.leg2

    def test_product_size(self):
        assert len(finset.product(FinSet.range(3), FinSet.range(2)).apex) == 6

    def test_equalizer(self):
        f = FinFn(FinSet.range(3), FinSet.range(2), (0, 1, 1))
        g = FinFn(FinSet.range(3), FinSet.range(2), (0, 0, 1))
        assert finset.equalizer(f, g).images == (0, 2)

    @settings(max_examples=60, deadline=None)
    @given(cospans())
    def test_canonical_pullback_is_a_pullback(self, cospan):
        f, g = cospan
        pb = finset.pullback(f, g)
        assert finset.is_pullback_square(pb.leg1, pb.leg2, f, g)

    @settings(max_examples=40, deadline=None)
    @given(cospans(max_size=3), st.data())
    def test_unique_mediator(self, cospan, data):
        f, g = cospan
        pb = finset.pullback(f, g)
        X = FinSet.range(2)
        u = data.draw(functions(dom=X, cod=f.dom)) if len(f.dom) else None
        v = data.draw(functions(dom=X, cod=g.dom)) if len(g.dom) else None
        if u is None or v is None:
            return
        expected = 1 if finset.compose(f, u) == finset.compose(g, v) else 0
        assert finset.count_pullback_mediators(pb, u, v) == expected
        assert (finset.pullback_mediator(pb, u, v) is not None) == bool(expected)


class TestKleeneStar:
    """Test words and the star functor."""

    def test_word_count(self):
        assert len(list(finset.words(FinSet.range(2), 3))) == 1 + 2 + 4 + 8

    def test_star_rejects_foreign_letters(self):
        with pytest.raises(CarrierMismatch):
            finset.star(finset.identity(FinSet.range(2)))((0, 5))

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_star_preserves_composition(self, data):
        f = data.draw(functions(max_size=3))
        g = data.draw(functions(dom=f.cod, max_size=3))
        composite = finset.star(finset.compose(g, f))
        for w in finset.words(f.dom, 2):
            assert composite(w) == finset.star(g)(finset.star(f)(w))
            assert finset.length(finset.star(f)(w)) == finset.length(w)

    def test_all_functions_count(self):
        assert len(list(finset.all_functions(FinSet.range(2), FinSet.range(3)))) == 9
        assert len(list(finset.all_functions(FinSet.range(1), FinSet.range(0)))) == 0
