"""Fixed instances: the regular-mono counterexample cube, the a/a sharing family and the demo rules."""

from typing import List, Optional, Tuple

from ..core.dpo import Rule
from ..core.egraph import EGraph, term_to_egg
from ..core.eqhyp import (EqHypergraph, EqMorphism, LabelledEqHypergraph, eq_morphism, free_eq,
                          indiscrete_eq, subobject)
from ..core.hypergraph import Hypergraph, example_graph
from ..core.termgraph import Labelling, Signature, example_signature, sigma_graph, term
from ..utils.sexpr import parse_rules
from .categories import get_category
from .squares import Cube

DEMO_TERM = '(/ (* a 2) 2)'

DEMO_RULES = """\
; reassociate, cancel, drop unit
(rule assoc-div (/ (* x y) z) (* x (/ y z)))
(rule div-self (/ x x) 1)
(rule mul-one (* x 1) x)
"""


def counterexample_cube() -> Cube:
    """
    Pushouts along regular monos are not stable.

    Bottom: {a,b} ← {a} → {a,c} glued into {a,b,c}, all in one class.
    Top: ∅ with {b} and {c} over {b,c}, again one class. Every arrow is an
    inclusion and a regular mono, but only the bottom square is a pushout.
    """
    a, b, c = 0, 1, 2
    D = EqHypergraph.from_partition(Hypergraph.build([a, b, c], {}), [[a, b, c]])
    sub = lambda nodes: subobject(D, nodes).dom
    A, B, C = sub([a]), sub([a, b]), sub([a, c])
    A2, B2, C2, D2 = sub([]), sub([b]), sub([c]), sub([b, c])

    def inc(X: EqHypergraph, Y: EqHypergraph) -> EqMorphism:
        return eq_morphism(X, Y, {}, {v: v for v in X.nodes})

    return Cube(f=inc(A, B), m=inc(A, C), g=inc(B, D), n=inc(C, D),
                f2=inc(A2, B2), m2=inc(A2, C2), g2=inc(B2, D2), n2=inc(C2, D2),
                a=inc(A2, A), b=inc(B2, B), c=inc(C2, C), d=inc(D2, D),
                category=get_category('eqhyp'))


# -- the a/a family ------------------------------------------------------------------------

def aa_term():
    return term('/', term('a'), term('a'))


def aa_middle(sig: Optional[Signature] = None) -> EGraph:
    """Tree-shaped a/a: two ``a`` nodes sharing one class, rooted at node 0."""
    return term_to_egg(aa_term(), sig or example_signature())


def aa_rightmost(sig: Optional[Signature] = None) -> LabelledEqHypergraph:
    """The same term graph with discrete classes: a term graph that is not an e-graph."""
    base = aa_middle(sig).base
    return base.with_eq(free_eq(base.hyp))


def aa_shared(sig: Optional[Signature] = None) -> EGraph:
    """Maximally shared a/a: ``/`` reads the single ``a`` node twice."""
    hyp = Hypergraph.build([0, 1], {0: ((1, 1), (0,)), 1: ((), (1,))})
    base = LabelledEqHypergraph.of(free_eq(hyp), {0: '/', 1: 'a'}, sig or example_signature())
    return EGraph(base, root=0)


def div_self_rule(sig: Optional[Signature] = None) -> Rule:
    x = term('x')
    return Rule.from_patterns('div-self', term('/', x, x), term('1'), sig or example_signature())


def demo_rules(sig: Optional[Signature] = None) -> List[Rule]:
    return parse_rules(DEMO_RULES, sig or example_signature())


def example_term_graph(sig: Optional[Signature] = None) -> Labelling:
    """The four-edge example labelled a, 2, * and /: the term graph of (a*2)/2 with 2 shared."""
    return Labelling.of(example_graph(), {1: 'a', 2: '2', 3: '*', 4: '/'}, sig or example_signature())


def indiscrete_sigma(sig: Optional[Signature] = None) -> EqHypergraph:
    graph, _ = sigma_graph(sig or example_signature())
    return indiscrete_eq(graph)


# -- gluings that leave the e-hypergraph world -------------------------------------------------

def closure_gap_source() -> Tuple[EqMorphism, EqMorphism]:
    """
    A Pb mono A ↣ B missing an edge whose source lies in A: gluing x → y
    and x → z along x puts two targets of one source class apart.
    """
    B = free_eq(Hypergraph.build([0, 1], {0: ((0,), (1,))}))
    m = subobject(B, [0])
    C = free_eq(Hypergraph.build([0, 1], {0: ((0,), (1,))}))
    return m, eq_morphism(m.dom, C, {}, {0: 0})


def closure_gap_merge() -> Tuple[EqMorphism, EqMorphism]:
    """
    A source-closed Pb mono glued along a map that merges two of its
    classes: edges (x,w) → t1 and (y,w) → t2 end up with equal sources.
    """
    B = free_eq(Hypergraph.build([0, 1, 2, 3, 4], {0: ((0, 2), (3,)), 1: ((1, 2), (4,))}))
    m = subobject(B, [0, 1])
    C = free_eq(Hypergraph.build([0], {}))
    return m, eq_morphism(m.dom, C, {}, {0: 0, 1: 0})
