"""
JSON documents for graphs, morphisms and reports.

Documents are pydantic models; encoding is deterministic (fields in
declaration order, arrays sorted by id, two-space indentation) so exported
files can be compared byte for byte.
"""

import json
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError

from ..core.egraph import EGraph
from ..core.eqhyp import EqHypergraph, EqMorphism, LabelledEqHypergraph, complete_classes
from ..core.errors import EggError, SchemaError
from ..core.finset import FinFn, FinSet
from ..core.hypergraph import Hypergraph
from ..core.termgraph import Signature

Pair = Tuple[int, int]


class FinFnDoc(BaseModel):
    dom: List[int]
    cod: List[int]
    map: List[Pair]


class EdgeDoc(BaseModel):
    id: int
    src: List[int] = Field(default_factory=list)
    tgt: List[int] = Field(default_factory=list)
    label: Optional[str] = None


class HypergraphDoc(BaseModel):
    nodes: List[int] = Field(default_factory=list)
    edges: List[EdgeDoc] = Field(default_factory=list)


class EqHypergraphDoc(HypergraphDoc):
    classes: List[int] = Field(default_factory=list)
    q: List[Pair] = Field(default_factory=list)


class EGraphDoc(EqHypergraphDoc):
    signature: Optional[Dict[str, int]] = None
    root: Optional[int] = None


class MorphismDoc(BaseModel):
    source: EGraphDoc
    target: EGraphDoc
    edges: List[Pair] = Field(default_factory=list)
    nodes: List[Pair] = Field(default_factory=list)
    classes: List[Pair] = Field(default_factory=list)


class SaturationReportDoc(BaseModel):
    status: str
    fixpoint: bool
    iterations: int
    applications: int
    repairs: int
    per_rule: Dict[str, int]
    classes: int
    nodes: int
    edges: int


class CampaignReportDoc(BaseModel):
    campaign: str
    seed: int
    trials: int
    bounds: Dict[str, Any]
    passed: int
    failed: int
    skipped: int = 0
    failures: List[Dict[str, Any]] = Field(default_factory=list)
    details: Dict[str, Any] = Field(default_factory=dict)


# -- encoding -------------------------------------------------------------------

def finfn_to_doc(f: FinFn) -> FinFnDoc:
    return FinFnDoc(dom=list(f.dom), cod=list(f.cod), map=[list(p) for p in f.items()])


def finfn_from_doc(doc: FinFnDoc) -> FinFn:
    return FinFn.from_mapping(FinSet.of(doc.dom), FinSet.of(doc.cod), dict(doc.map))


def eq_to_doc(G: Union[Hypergraph, EqHypergraph, LabelledEqHypergraph, EGraph]) -> EGraphDoc:
    """Encode any graph value; absent structure stays absent in the document."""
    root = signature = labels = eq = None
    if isinstance(G, EGraph):
        root, G = G.root, G.base
    if isinstance(G, LabelledEqHypergraph):
        signature, labels, G = dict(G.signature.arities), G.label_fn(), G.eq
    if isinstance(G, EqHypergraph):
        eq, G = G, G.hyp
    edges = [EdgeDoc(id=e, src=list(s), tgt=list(t), label=labels[e] if labels else None)
             for e, s, t in zip(G.edges, G.src, G.tgt)]
    doc = EGraphDoc(nodes=list(G.nodes), edges=edges, signature=signature, root=root)
    if eq is not None:
        doc.classes = list(eq.classes)
        doc.q = [tuple(p) for p in eq.q.items()]
    return doc


def dump_doc(doc: BaseModel) -> str:
    return doc.model_dump_json(indent=2, exclude_none=True) + '\n'


def dump_graph(G) -> str:
    return dump_doc(eq_to_doc(G))


@dataclass(frozen=True)
class LoadedGraph:
    """A decoded graph document; ``labelled`` is None for unlabelled documents."""

    eq: EqHypergraph
    labelled: Optional[LabelledEqHypergraph]
    root: Optional[int]

    def egraph(self) -> EGraph:
        if self.labelled is None:
            raise SchemaError("document has no labels or signature, an e-graph needs both")
        return EGraph(self.labelled, self.root)


def _parse(model, text: str):
    try:
        return model.model_validate(json.loads(text))
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e.msg} at {e.lineno}:{e.colno}") from e
    except ValidationError as e:
        raise SchemaError(f"invalid document: {e.errors()[0]['msg']} at {e.errors()[0]['loc']}") from e


def graph_from_doc(doc: EGraphDoc) -> LoadedGraph:
    """
    Decode a graph document. Missing classes mean the discrete equivalence.

    Raises:
        SchemaError: inconsistent document
    """
    try:
        hyp = Hypergraph.build(doc.nodes, {e.id: (e.src, e.tgt) for e in doc.edges})
        if len({e.id for e in doc.edges}) != len(doc.edges):
            raise SchemaError("duplicate edge id")
        if doc.classes or doc.q:
            q = dict(doc.q)
            classes = FinSet.of(doc.classes)
            eq = EqHypergraph(hyp, classes, FinFn.from_mapping(hyp.nodes, classes, q))
        else:
            eq = EqHypergraph(hyp, hyp.nodes, FinFn(hyp.nodes, hyp.nodes, hyp.nodes.elems))
        labelled = None
        if doc.signature is not None:
            if any(e.label is None for e in doc.edges):
                raise SchemaError("every edge of a labelled document needs a label")
            labelled = LabelledEqHypergraph.of(eq, {e.id: e.label for e in doc.edges},
                                               Signature.of(doc.signature))
        return LoadedGraph(eq, labelled, doc.root)
    except SchemaError:
        raise
    except EggError as e:
        raise SchemaError(f"inconsistent graph document: {e}") from e


def load_graph(text: str) -> LoadedGraph:
    return graph_from_doc(_parse(EGraphDoc, text))


def load_egraph(text: str) -> EGraph:
    return load_graph(text).egraph()


def morphism_to_doc(m: EqMorphism, source=None, target=None) -> MorphismDoc:
    """Encode a morphism; ``source``/``target`` may be labelled versions of its ends."""
    return MorphismDoc(source=eq_to_doc(source if source is not None else m.dom),
                       target=eq_to_doc(target if target is not None else m.cod),
                       edges=[tuple(p) for p in m.h_E.items()],
                       nodes=[tuple(p) for p in m.h_V.items()],
                       classes=[tuple(p) for p in m.h_Q.items()])


@dataclass(frozen=True)
class LoadedMorphism:
    morphism: EqMorphism
    source: LoadedGraph
    target: LoadedGraph


def load_morphism(text: str) -> LoadedMorphism:
    """
    Decode a morphism document. An empty class map is completed from the
    node map.
    """
    doc = _parse(MorphismDoc, text)
    source, target = graph_from_doc(doc.source), graph_from_doc(doc.target)
    G, H = source.eq, target.eq
    try:
        h_E = FinFn.from_mapping(G.edges, H.edges, dict(doc.edges))
        h_V = FinFn.from_mapping(G.nodes, H.nodes, dict(doc.nodes))
        if doc.classes:
            h_Q = FinFn.from_mapping(G.classes, H.classes, dict(doc.classes))
        else:
            h_Q = complete_classes(G, H, h_V)
            if h_Q is None:
                raise SchemaError("node map does not respect the classes and no class map is given")
        return LoadedMorphism(EqMorphism(G, H, h_E, h_V, h_Q), source, target)
    except SchemaError:
        raise
    except EggError as e:
        raise SchemaError(f"inconsistent morphism document: {e}") from e


def report_to_doc(report) -> SaturationReportDoc:
    return SaturationReportDoc(**report.to_dict())
