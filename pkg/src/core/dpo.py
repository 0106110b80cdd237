"""
Double-pushout rewriting on e-graphs.

Rules have an identity left leg, so applying one is a single pushout of
the right leg along the match: nothing is deleted, the right-hand side is
added and linked into the classes of the matched items. Rules come with
negative application conditions; a rule declared without any gets its own
right-hand side as NAC, which forbids re-applying it where its effect is
already present.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from . import finset
from .egraph import EGraph, is_egg, rebuild_with_map
from .eqhyp import (EqHypergraph, EqMorphism, LabelledEqHypergraph, complete_classes,
                    compose_eq, eq_morphism, find_eq_morphisms, identity_eq, is_class_injective,
                    is_iso_eq, is_mono_eq, is_pb_mono, pushout_eqhyp, pushout_labelled_eq,
                    pushout_mediator_eq, subobject, validate_eq_morphism)
from .errors import (CarrierMismatch, CyclicGraph, DanglingCondition, ExtractionError,
                     IdentificationCondition, InvalidMorphism, LabelError, SchemaError,
                     SignatureMismatch)
from .finset import ElemId, FinFn, UnionFind
from .hypergraph import Hypergraph
from .termgraph import Signature, Symbol, Term, is_regular_mono_tg, labels_commute
from ..utils.config import MATCH_CLASSES, get_config
from ..utils.logging import get_logger, log_step

logger = get_logger('dpo')


# -- rules ---------------------------------------------------------------------

@dataclass(frozen=True)
class Nac:
    """A negative application condition n: L → N."""

    n: EqMorphism
    target: LabelledEqHypergraph


@dataclass(frozen=True)
class Rule:
    """
    A span L = L → R with its NACs.

    The right leg must be a label-preserving mono that keeps input nodes
    input; it may merge classes (a right-hand side that is a bare variable).
    """

    name: str
    lhs: LabelledEqHypergraph
    rhs: LabelledEqHypergraph
    r: EqMorphism
    nacs: Tuple[Nac, ...] = ()
    lhs_root: Optional[ElemId] = None
    variables: Tuple[Tuple[str, ElemId], ...] = ()
    links: Tuple[Tuple[ElemId, ElemId], ...] = ()

    def __post_init__(self):
        if self.r.dom != self.lhs.eq or self.r.cod != self.rhs.eq:
            raise CarrierMismatch(f"rule {self.name}: right leg does not go from L to R")
        if not validate_eq_morphism(self.r) or not labels_commute(self.r.hyp, self.lhs.labelling,
                                                                   self.rhs.labelling):
            raise InvalidMorphism(f"rule {self.name}: right leg is not a labelled morphism")
        if not is_mono_eq(self.r) or not is_regular_mono_tg(self.r.hyp, self.lhs.labelling,
                                                             self.rhs.labelling):
            raise InvalidMorphism(f"rule {self.name}: right leg must be a mono preserving input nodes")
        for nac in self.nacs:
            if nac.n.dom != self.lhs.eq or nac.n.cod != nac.target.eq:
                raise CarrierMismatch(f"rule {self.name}: NAC does not start at L")

    @property
    def signature(self) -> Signature:
        return self.lhs.signature

    @classmethod
    def from_patterns(cls, name: str, lhs: Term, rhs: Term, sig: Signature,
                      nacs: Optional[Sequence[Term]] = None) -> 'Rule':
        """
        Compile a rule from two patterns.

        Leaves whose symbol is not in Σ are variables. Every argument
        position of L becomes an input node placed in the class of the
        argument, so matching works up to the equivalence. The right-hand
        side is attached the same way, its root joining the class of L's
        root. The (slot, subterm output) pairs of L are kept as ``links``
        so a match may land both on one node. Each NAC pattern is
        compiled like a right-hand side; without NAC patterns, R itself is
        the NAC.

        Raises:
            LabelError: on a variable left-hand side, an unbound variable or
                an arity mismatch
        """
        L, R, r, root, variables, links = _compile_extension(name, lhs, rhs, sig)
        if nacs is None:
            compiled = (Nac(r, R),)
        else:
            compiled = tuple(Nac(n, N) for _, N, n, _, _, _ in
                             (_compile_extension(name, lhs, p, sig) for p in nacs))
        return cls(name, L, R, r, compiled, root, tuple(sorted(variables.items())), links)


def _is_variable(t: Term, sig: Signature) -> bool:
    return not t.args and t.symbol not in sig


class _PatternBuilder:
    def __init__(self, sig: Signature, rule: str):
        self.sig = sig
        self.rule = rule
        self.nodes: List[ElemId] = []
        self.edges: Dict[ElemId, Tuple[Tuple[ElemId, ...], Tuple[ElemId, ...]]] = {}
        self.labels: Dict[ElemId, Symbol] = {}
        self.classes = UnionFind()
        self.bound: Dict[str, ElemId] = {}
        self.links: List[Tuple[ElemId, ElemId]] = []
        self.binding = True

    def node(self) -> ElemId:
        v = len(self.nodes)
        self.nodes.append(v)
        self.classes.add(v)
        return v

    def value(self, t: Term) -> ElemId:
        """Compile an operator position; returns its target node."""
        n = self.sig.arity(t.symbol)
        if len(t.args) != n:
            raise LabelError(f"rule {self.rule}: {t.symbol!r} expects {n} arguments, got {len(t.args)}")
        slots = []
        for arg in t.args:
            slot = self.node()
            self.link(slot, arg)
            slots.append(slot)
        target = self.node()
        e = len(self.edges)
        self.edges[e] = (tuple(slots), (target,))
        self.labels[e] = t.symbol
        return target

    def link(self, slot: ElemId, arg: Term) -> None:
        if _is_variable(arg, self.sig):
            self.classes.union(slot, self.variable(arg.symbol, slot))
        else:
            output = self.value(arg)
            self.classes.union(slot, output)
            self.links.append((slot, output))

    def variable(self, name: str, slot: ElemId) -> ElemId:
        if name not in self.bound:
            if not self.binding:
                raise LabelError(f"rule {self.rule}: variable {name!r} does not occur on the left")
            self.bound[name] = slot
        return self.bound[name]

    def snapshot(self) -> LabelledEqHypergraph:
        hyp = Hypergraph.build(self.nodes, self.edges)
        eq = EqHypergraph.from_partition(hyp, self.classes.classes())
        return LabelledEqHypergraph.of(eq, self.labels, self.sig)


def _compile_extension(name: str, lhs: Term, ext: Term, sig: Signature):
    if _is_variable(lhs, sig):
        raise LabelError(f"rule {name}: left-hand side must not be a variable")
    b = _PatternBuilder(sig, name)
    root = b.value(lhs)
    L = b.snapshot()
    links = tuple(b.links)
    b.binding = False
    if _is_variable(ext, sig):
        b.classes.union(root, b.variable(ext.symbol, root))
    else:
        b.classes.union(root, b.value(ext))
    R = b.snapshot()
    h_V = finset.inclusion(L.eq.nodes, R.eq.nodes)
    h_Q = complete_classes(L.eq, R.eq, h_V)
    r = EqMorphism(L.eq, R.eq, finset.inclusion(L.eq.edges, R.eq.edges), h_V, h_Q)
    variables = {var: L.eq.q(v) for var, v in b.bound.items()}
    return L, R, r, root, variables, links


# -- matching --------------------------------------------------------------------

def has_match_class(m: EqMorphism, match_class: str) -> bool:
    """
    any: every morphism; classinj: injective on classes; mono: injective on
    edges and nodes; pb: Pb monos.
    """
    if match_class == 'any':
        return True
    if match_class == 'classinj':
        return is_class_injective(m)
    if match_class == 'mono':
        return is_mono_eq(m)
    if match_class == 'pb':
        return is_pb_mono(m)
    raise SchemaError(f"unknown match class {match_class!r}; expected one of {MATCH_CLASSES}")


def collapse_links(rule: Rule, m: EqMorphism) -> EqMorphism:
    """
    The match with every linked slot glued onto the subterm output it
    shares an image with.

    On a tree the slot of an argument and the output of the argument's
    subterm are the same node, so a mono or Pb test on the raw match could
    never succeed for a nested pattern. Classes are left as they are.
    """
    glued = [(slot, output) for slot, output in rule.links if m.h_V(slot) == m.h_V(output)]
    if not glued:
        return m
    L = m.dom
    uf = UnionFind(L.nodes)
    for slot, output in glued:
        uf.union(slot, output)
    rep = {v: uf.find(v) for v in L.nodes}
    nodes = sorted(set(rep.values()))
    edges = {e: (tuple(rep[v] for v in s), tuple(rep[v] for v in t))
             for e, s, t in zip(L.edges, L.hyp.src, L.hyp.tgt)}
    collapsed = EqHypergraph.from_partition(Hypergraph.build(nodes, edges),
                                            [[rep[v] for v in block] for block in L.partition()])
    return eq_morphism(collapsed, m.cod, m.h_E.as_dict(), {v: m.h_V(v) for v in nodes})


def is_admissible(rule: Rule, m: EqMorphism, match_class: str) -> bool:
    """Does the match, with its linked slots collapsed, belong to the match class?"""
    return has_match_class(collapse_links(rule, m), match_class)


@dataclass(frozen=True)
class Match:
    morphism: EqMorphism
    class_tag: str = 'pb'
    rule: str = ''


def factors_through(n: EqMorphism, m: EqMorphism, N: LabelledEqHypergraph, G: LabelledEqHypergraph) -> bool:
    """Is there p: N → G with p ∘ n = m?"""
    fixed_nodes: Dict[ElemId, ElemId] = {}
    fixed_edges: Dict[ElemId, ElemId] = {}
    for fixed, n_fn, m_fn, carrier in ((fixed_nodes, n.h_V, m.h_V, n.dom.nodes),
                                       (fixed_edges, n.h_E, m.h_E, n.dom.edges)):
        for x in carrier:
            if fixed.setdefault(n_fn(x), m_fn(x)) != m_fn(x):
                return False
    found = find_eq_morphisms(N.eq, G.eq, N.labels, G.labels,
                              fixed_edges=fixed_edges, fixed_nodes=fixed_nodes)
    return next(found, None) is not None


def is_blocked(rule: Rule, m: EqMorphism, G: LabelledEqHypergraph) -> bool:
    return any(factors_through(nac.n, m, nac.target, G) for nac in rule.nacs)


def iter_matches(rule: Rule, G: EGraph, match_class: Optional[str] = None) -> Iterator[Match]:
    match_class = match_class or get_config().match_class
    if rule.signature != G.signature:
        raise SignatureMismatch(f"rule {rule.name} is over a different signature")
    L = rule.lhs
    injective = match_class in ('mono', 'pb') and not rule.links
    for m in find_eq_morphisms(L.eq, G.eq, L.labels, G.labels, injective=injective):
        if is_admissible(rule, m, match_class) and not is_blocked(rule, m, G.base):
            yield Match(m, match_class, rule.name)


def find_matches(rule: Rule, G: EGraph, match_class: Optional[str] = None) -> List[Match]:
    """
    All admissible matches of the rule's left-hand side, in lexicographic
    order of their assignments.

    Args:
        rule: Rule to match
        G: Target e-graph
        match_class: any | classinj | mono | pb (configured default if None)

    Returns:
        Matches of the requested class not blocked by any NAC
    """
    return list(iter_matches(rule, G, match_class))


# -- rewriting ---------------------------------------------------------------------

@dataclass(frozen=True)
class PushoutComplement:
    """C with its inclusion into G and the arrow K → C."""

    context: EqHypergraph
    inclusion: EqMorphism
    k: EqMorphism


def pushout_complement(l: EqMorphism, m: EqMorphism) -> PushoutComplement:
    """
    Complete K → L → G to a pushout square K → C → G.

    C is G without the images of the items of L outside l(K); classes are
    those still inhabited.

    Raises:
        InvalidMorphism: if l is not a mono or l and m do not compose
        IdentificationCondition: m identifies a deleted item with another item
        DanglingCondition: a kept edge would lose one of its nodes
    """
    if l.cod != m.dom:
        raise CarrierMismatch("pushout complement needs l: K → L and m: L → G")
    if not is_mono_eq(l):
        raise InvalidMorphism("pushout complements are only computed along monos")
    L, G = l.cod, m.cod
    kept_nodes, kept_edges = set(l.h_V.images), set(l.h_E.images)
    deleted_nodes: Dict[ElemId, ElemId] = {}
    deleted_edges: Dict[ElemId, ElemId] = {}
    for deleted, kept, fn, carrier, what in ((deleted_nodes, kept_nodes, m.h_V, L.nodes, 'node'),
                                             (deleted_edges, kept_edges, m.h_E, L.edges, 'edge')):
        kept_images = {fn(x) for x in kept}
        for x in carrier:
            if x in kept:
                continue
            y = fn(x)
            if y in kept_images or deleted.setdefault(y, x) != x:
                raise IdentificationCondition(f"match identifies deleted {what} {x} with another {what}")
    for e in G.edges:
        if e in deleted_edges:
            continue
        for v in G.hyp.incident_nodes(e):
            if v in deleted_nodes:
                raise DanglingCondition(f"edge {e} would lose its node {v}")
    c = subobject(G, [v for v in G.nodes if v not in deleted_nodes],
                  [e for e in G.edges if e not in deleted_edges])
    C = c.dom
    k_V = FinFn(l.dom.nodes, C.nodes, tuple(m.h_V(l.h_V(v)) for v in l.dom.nodes))
    k_Q = complete_classes(l.dom, C, k_V)
    if k_Q is None:
        raise IdentificationCondition("match does not respect the classes of the kept part")
    k = EqMorphism(l.dom, C, FinFn(l.dom.edges, C.edges, tuple(m.h_E(l.h_E(e)) for e in l.dom.edges)),
                   k_V, k_Q)
    phi = pushout_mediator_eq(pushout_eqhyp(l, k), m, c)
    if phi is None or not is_iso_eq(phi):
        raise IdentificationCondition("the completed square is not a pushout")
    return PushoutComplement(C, c, k)


@dataclass(frozen=True)
class RewriteResult:
    """The rewritten e-graph, the tracking morphism G → H and the co-match R → H."""

    result: EGraph
    tracking: EqMorphism
    comatch: EqMorphism
    repaired: bool = False


def apply_rule(rule: Rule, match: Match, G: EGraph) -> RewriteResult:
    """
    Apply a rule at a match by pushing its right leg out along the match.

    G is the first summand of the pushout, so G's node and edge ids survive.
    When the pushout violates the closure condition it is rebuilt and the
    result is flagged as repaired.
    """
    m = match.morphism
    if m.dom != rule.lhs.eq or m.cod != G.eq:
        raise CarrierMismatch(f"match is not a morphism from the left-hand side of {rule.name} into G")
    if get_config().debug_checks:
        pushout_complement(identity_eq(rule.lhs.eq), m)
    po = pushout_labelled_eq(m, rule.r, G.base, rule.rhs)
    H, leg, comatch = po.apex, po.leg1, po.leg2
    repaired = False
    class_map = finset.identity(H.eq.classes)
    if not is_egg(H):
        H, class_map = rebuild_with_map(H)
        repaired = True
        logger.debug(f"{rule.name}: closure repaired after a {match.class_tag} match")
    tracking = EqMorphism(G.eq, H.eq, leg.h_E, leg.h_V, finset.compose(class_map, leg.h_Q))
    comatch = EqMorphism(rule.rhs.eq, H.eq, comatch.h_E, comatch.h_V, finset.compose(class_map, comatch.h_Q))
    root = None if G.root is None else leg.h_V(G.root)
    logger.debug(f"applied {rule.name}: {len(G.eq.edges)} -> {len(H.eq.edges)} edges")
    return RewriteResult(EGraph(H, root), tracking, comatch, repaired)


# -- saturation ---------------------------------------------------------------------

@dataclass
class SaturationReport:
    """Outcome of a saturation run."""

    status: str = 'fixpoint'
    iterations: int = 0
    applications: int = 0
    repairs: int = 0
    per_rule: Dict[str, int] = field(default_factory=dict)
    classes: int = 0
    nodes: int = 0
    edges: int = 0

    @property
    def fixpoint(self) -> bool:
        return self.status == 'fixpoint'

    def to_dict(self) -> dict:
        return {
            'status': self.status,
            'fixpoint': self.fixpoint,
            'iterations': self.iterations,
            'applications': self.applications,
            'repairs': self.repairs,
            'per_rule': dict(sorted(self.per_rule.items())),
            'classes': self.classes,
            'nodes': self.nodes,
            'edges': self.edges,
        }


def saturate(G: EGraph, rules: Sequence[Rule], max_iters: Optional[int] = None,
             max_classes: Optional[int] = None, max_edges: Optional[int] = None,
             match_class: Optional[str] = None) -> Tuple[EGraph, SaturationReport]:
    """
    Apply rules until no admissible match is left or a limit trips.

    Each round collects the matches of every rule (in rule order) on a
    snapshot, then applies them one by one after transporting them along
    the rewrites already done in the round and re-checking their class and
    NACs against the current graph.

    Args:
        G: Starting e-graph
        rules: Rules, scheduled in the given order
        max_iters: Rounds with at least one application before stopping
        max_classes: Stop once the graph has more classes than this
        max_edges: Stop once the graph has more edges than this
        match_class: Match class (configured default if None)

    Returns:
        The saturated e-graph and a report; limit trips are reported in
        ``report.status``, never raised
    """
    config = get_config()
    max_iters = config.max_iters if max_iters is None else max_iters
    max_classes = config.max_classes if max_classes is None else max_classes
    max_edges = config.max_edges if max_edges is None else max_edges
    match_class = match_class or config.match_class
    if match_class not in MATCH_CLASSES:
        raise SchemaError(f"unknown match class {match_class!r}; expected one of {MATCH_CLASSES}")

    report = SaturationReport()
    counts: Counter = Counter({rule.name: 0 for rule in rules})
    current = G
    while True:
        snapshot = current
        candidates = [(rule, match) for rule in rules for match in iter_matches(rule, snapshot, match_class)]
        if not candidates:
            report.status = 'fixpoint'
            break
        if report.iterations >= max_iters:
            report.status = 'max_iters'
            break
        log_step(f"round {report.iterations + 1}: {len(candidates)} candidate matches")
        moved = identity_eq(snapshot.eq)
        applied = 0
        for rule, match in candidates:
            m = compose_eq(moved, match.morphism)
            if not is_admissible(rule, m, match_class) or is_blocked(rule, m, current.base):
                continue
            outcome = apply_rule(rule, Match(m, match_class, rule.name), current)
            moved = compose_eq(outcome.tracking, moved)
            current = outcome.result
            applied += 1
            counts[rule.name] += 1
            report.repairs += outcome.repaired
        if applied == 0:
            report.status = 'fixpoint'
            break
        report.iterations += 1
        report.applications += applied
        if len(current.eq.classes) > max_classes:
            report.status = 'max_classes'
            break
        if len(current.eq.edges) > max_edges:
            report.status = 'max_edges'
            break
    report.per_rule = dict(counts)
    report.classes = len(current.eq.classes)
    report.nodes = len(current.eq.nodes)
    report.edges = len(current.eq.edges)
    logger.info(f"saturation stopped ({report.status}) after {report.iterations} rounds, "
                f"{report.applications} applications")
    return current, report


# -- extraction ---------------------------------------------------------------------

def best_derivations(G: EGraph, costs: Optional[Mapping[str, int]] = None,
                     default_cost: Optional[int] = None) -> Dict[ElemId, Tuple[int, Symbol, Tuple[ElemId, ...]]]:
    """
    Cheapest derivation of every class: (cost, symbol, child classes).

    A Bellman-Ford style fixpoint over the class graph; ties go to the
    smaller symbol, then to the smaller child class ids. Classes without a
    finite derivation are absent.
    """
    config = get_config()
    costs = config.costs if costs is None else costs
    default_cost = config.default_cost if default_cost is None else default_cost
    if default_cost <= 0 or any(c <= 0 for c in costs.values()):
        raise SchemaError("symbol costs must be positive integers")
    q = G.eq.q
    options = [(sym, tuple(q(v) for v in s), q(t[0]))
               for sym, s, t in zip(G.labels, G.hyp.src, G.hyp.tgt)]
    best: Dict[ElemId, Tuple[int, Symbol, Tuple[ElemId, ...]]] = {}
    changed = True
    while changed:
        changed = False
        for sym, children, c in options:
            if not all(ch in best for ch in children):
                continue
            candidate = (costs.get(sym, default_cost) + sum(best[ch][0] for ch in children), sym, children)
            if c not in best or candidate < best[c]:
                best[c] = candidate
                changed = True
    return best


def extract_with_cost(G: EGraph, root: Optional[ElemId] = None, costs: Optional[Mapping[str, int]] = None,
                      default_cost: Optional[int] = None) -> Tuple[Term, int]:
    """
    Minimum-cost term of a class and its cost.

    Raises:
        CyclicGraph: on a cyclic e-graph
        ExtractionError: unknown class or no finite derivation
    """
    if not G.acyclic:
        raise CyclicGraph("extraction needs an acyclic e-graph")
    root = G.root_class if root is None else root
    if root is None or root not in G.eq.classes:
        raise ExtractionError(f"unknown class {root}")
    best = best_derivations(G, costs, default_cost)
    if root not in best:
        raise ExtractionError(f"class {root} has no finite-cost derivation")

    def build(c: ElemId) -> Term:
        _, sym, children = best[c]
        return Term(sym, tuple(build(ch) for ch in children))

    return build(root), best[root][0]


def extract(G: EGraph, root: Optional[ElemId] = None, costs: Optional[Mapping[str, int]] = None,
            default_cost: Optional[int] = None) -> Term:
    return extract_with_cost(G, root, costs, default_cost)[0]
