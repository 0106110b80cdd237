"""
DOT export: nodes as dots, hyperedges as labelled boxes, and every class
with more than one node as a dashed cluster.
"""

from typing import List, Optional, Union

from ..core.egraph import EGraph
from ..core.eqhyp import EqHypergraph, LabelledEqHypergraph
from ..core.hypergraph import Hypergraph


def _quote(text: str) -> str:
    return '"' + text.replace('\\', '\\\\').replace('"', '\\"') + '"'


def to_dot(G: Union[Hypergraph, EqHypergraph, LabelledEqHypergraph, EGraph], name: str = 'egraph') -> str:
    """
    Render a graph deterministically: nodes by id, clusters by class id.

    Source arcs are numbered by argument position so the order of a source
    word is visible.
    """
    labels: Optional[dict] = None
    eq: Optional[EqHypergraph] = None
    if isinstance(G, EGraph):
        G = G.base
    if isinstance(G, LabelledEqHypergraph):
        labels, G = G.label_fn(), G.eq
    if isinstance(G, EqHypergraph):
        eq, G = G, G.hyp

    lines: List[str] = [f"digraph {_quote(name)} {{", "  rankdir=BT;",
                        "  node [shape=point, width=0.12];"]
    clustered = set()
    if eq is not None:
        for c in eq.classes:
            members = eq.members(c)
            if len(members) < 2:
                continue
            lines.append(f"  subgraph cluster_q{c} {{")
            lines.append("    style=\"dashed,rounded\";")
            lines.append(f"    label={_quote(f'q{c}')};")
            for v in members:
                lines.append(f"    v{v};")
                clustered.add(v)
            lines.append("  }")
    for v in G.nodes:
        if v not in clustered:
            lines.append(f"  v{v};")
    for e, s, t in zip(G.edges, G.src, G.tgt):
        text = labels[e] if labels is not None else f"h{e}"
        lines.append(f"  h{e} [shape=box, width=0.3, height=0.3, label={_quote(text)}];")
        for i, v in enumerate(s):
            lines.append(f"  v{v} -> h{e} [arrowhead=none, taillabel=\"{i + 1}\"];")
        for v in t:
            lines.append(f"  h{e} -> v{v};")
    lines.append("}")
    return '\n'.join(lines) + '\n'
