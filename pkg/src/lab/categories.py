"""
Uniform access to the four concrete categories the lab works in.

Each adapter exposes composition, the canonical pushout and pullback,
their mediating arrows, isomorphism tests and membership in the mono
classes, so squares and cubes can be certified without knowing which
category they live in.
"""

from dataclasses import dataclass
from typing import Dict

from ..core import finset
from ..core.eqhyp import (EqMorphism, LabelledEqHypergraph, compose_eq, identity_eq, is_iso_eq,
                          is_mono_eq, is_pb_mono, is_regular_mono_eq, pullback_eqhyp,
                          pullback_mediator_eq, pushout_eqhyp, pushout_labelled_eq,
                          pushout_mediator_eq)
from ..core.errors import CarrierMismatch, SchemaError
from ..core.finset import CospanResult, FinFn, SpanResult
from ..core.hypergraph import (HypMorphism, compose_hyp, identity_hyp, is_iso_hyp, is_mono_hyp,
                               pullback_hyp, pullback_mediator_hyp, pushout_hyp,
                               pushout_mediator_hyp)
from ..core.termgraph import is_regular_mono_tg, is_term_graph

CLASSES = ('all', 'mono', 'regular', 'pb')


class Category:
    """Operations every adapter provides."""

    name = ''

    def compose(self, g, f):
        raise NotImplementedError

    def identity(self, X):
        raise NotImplementedError

    def pushout(self, f, g) -> CospanResult:
        raise NotImplementedError

    def pullback(self, f, g) -> SpanResult:
        raise NotImplementedError

    def pushout_mediator(self, po: CospanResult, u, v):
        raise NotImplementedError

    def pullback_mediator(self, pb: SpanResult, u, v):
        raise NotImplementedError

    def is_iso(self, f) -> bool:
        raise NotImplementedError

    def in_class(self, f, cls: str) -> bool:
        raise NotImplementedError

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod


class FinSetCategory(Category):
    name = 'finset'

    def compose(self, g: FinFn, f: FinFn) -> FinFn:
        return finset.compose(g, f)

    def identity(self, X):
        return finset.identity(X)

    def pushout(self, f, g):
        return finset.pushout(f, g)

    def pullback(self, f, g):
        return finset.pullback(f, g)

    def pushout_mediator(self, po, u, v):
        return finset.pushout_mediator(po, u, v)

    def pullback_mediator(self, pb, u, v):
        return finset.pullback_mediator(pb, u, v)

    def is_iso(self, f) -> bool:
        return finset.is_bijective(f)

    def in_class(self, f, cls: str) -> bool:
        _check_class(cls)
        return cls == 'all' or finset.is_injective(f)


class HypCategory(Category):
    name = 'hyp'

    def compose(self, g: HypMorphism, f: HypMorphism) -> HypMorphism:
        return compose_hyp(g, f)

    def identity(self, X):
        return identity_hyp(X)

    def pushout(self, f, g):
        return pushout_hyp(f, g)

    def pullback(self, f, g):
        return pullback_hyp(f, g)

    def pushout_mediator(self, po, u, v):
        return pushout_mediator_hyp(po, u, v)

    def pullback_mediator(self, pb, u, v):
        return pullback_mediator_hyp(pb, u, v)

    def is_iso(self, f) -> bool:
        return is_iso_hyp(f)

    def in_class(self, f, cls: str) -> bool:
        _check_class(cls)
        # every mono of Hyp is regular and satisfies the pullback condition vacuously
        return cls == 'all' or is_mono_hyp(f)


class EqHypCategory(Category):
    name = 'eqhyp'

    def compose(self, g: EqMorphism, f: EqMorphism) -> EqMorphism:
        return compose_eq(g, f)

    def identity(self, X):
        return identity_eq(X)

    def pushout(self, f, g):
        return pushout_eqhyp(f, g)

    def pullback(self, f, g):
        return pullback_eqhyp(f, g)

    def pushout_mediator(self, po, u, v):
        return pushout_mediator_eq(po, u, v)

    def pullback_mediator(self, pb, u, v):
        return pullback_mediator_eq(pb, u, v)

    def is_iso(self, f) -> bool:
        return is_iso_eq(f)

    def in_class(self, f, cls: str) -> bool:
        _check_class(cls)
        if cls == 'all':
            return True
        if cls == 'mono':
            return is_mono_eq(f)
        if cls == 'regular':
            return is_regular_mono_eq(f)
        return is_pb_mono(f)


@dataclass(frozen=True)
class LabelledMorphism:
    """An EqMorphism together with the labelled objects at its ends."""

    morphism: EqMorphism
    dom: LabelledEqHypergraph
    cod: LabelledEqHypergraph

    def __post_init__(self):
        if self.morphism.dom != self.dom.eq or self.morphism.cod != self.cod.eq:
            raise CarrierMismatch("labelled objects do not match the morphism")


class EqTGCategory(Category):
    """
    Term graphs with equivalence. Pushouts are computed in the labelled
    category; the lab checks separately that the apex is a term graph.
    """

    name = 'eqtg'

    def compose(self, g: LabelledMorphism, f: LabelledMorphism) -> LabelledMorphism:
        return LabelledMorphism(compose_eq(g.morphism, f.morphism), f.dom, g.cod)

    def identity(self, X: LabelledEqHypergraph):
        return LabelledMorphism(identity_eq(X.eq), X, X)

    def pushout(self, f, g):
        po = pushout_labelled_eq(f.morphism, g.morphism, f.cod, g.cod)
        return CospanResult(po.apex, LabelledMorphism(po.leg1, f.cod, po.apex),
                            LabelledMorphism(po.leg2, g.cod, po.apex))

    def pullback(self, f, g):
        pb = pullback_eqhyp(f.morphism, g.morphism)
        labels = tuple(f.dom.label(pb.leg1.h_E(e)) for e in pb.apex.edges)
        apex = LabelledEqHypergraph(pb.apex, labels, f.dom.signature)
        return SpanResult(apex, LabelledMorphism(pb.leg1, apex, f.dom), LabelledMorphism(pb.leg2, apex, g.dom))

    def pushout_mediator(self, po, u, v):
        raw = CospanResult(po.apex.eq, po.leg1.morphism, po.leg2.morphism)
        phi = pushout_mediator_eq(raw, u.morphism, v.morphism)
        return None if phi is None else LabelledMorphism(phi, po.apex, u.cod)

    def pullback_mediator(self, pb, u, v):
        raw = SpanResult(pb.apex.eq, pb.leg1.morphism, pb.leg2.morphism)
        phi = pullback_mediator_eq(raw, u.morphism, v.morphism)
        return None if phi is None else LabelledMorphism(phi, u.dom, pb.apex)

    def is_iso(self, f) -> bool:
        return is_iso_eq(f.morphism)

    def in_class(self, f, cls: str) -> bool:
        _check_class(cls)
        if cls == 'all':
            return True
        m = f.morphism
        if cls == 'mono':
            return is_mono_eq(m)
        if not (is_term_graph(f.dom.labelling) and is_term_graph(f.cod.labelling)):
            return False
        regular = is_regular_mono_eq(m) and is_regular_mono_tg(m.hyp, f.dom.labelling, f.cod.labelling)
        return regular if cls == 'regular' else regular and is_pb_mono(m)


def _check_class(cls: str) -> None:
    if cls not in CLASSES:
        raise SchemaError(f"unknown morphism class {cls!r}; expected one of {CLASSES}")


CATEGORIES: Dict[str, Category] = {
    cat.name: cat for cat in (FinSetCategory(), HypCategory(), EqHypCategory(), EqTGCategory())
}


def get_category(name: str) -> Category:
    try:
        return CATEGORIES[name]
    except KeyError:
        raise SchemaError(f"unknown category {name!r}; expected one of {sorted(CATEGORIES)}") from None


def same(a, b) -> bool:
    """Equality of morphisms as values (labelled ones compare their EqMorphism)."""
    if isinstance(a, LabelledMorphism) and isinstance(b, LabelledMorphism):
        return a.morphism == b.morphism
    return a == b


def optional_iso(cat: Category, phi) -> bool:
    return phi is not None and cat.is_iso(phi)


__all__ = ['Category', 'CATEGORIES', 'CLASSES', 'LabelledMorphism', 'get_category', 'same',
           'optional_iso']
