"""Degeneration graph: verified edges, invariant blocks, transitive closure,
and irreducible-component candidates."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .algebra import Algebra
from .degeneration import (
    Certificate,
    Verdict,
    closure_dimension,
    compare_profiles,
    trivial_scaling_certificate,
    verify_certificate,
)
from .errors import CDAlgError, GraphInconsistencyError
from .invariants import InvariantProfile, invariant_profile

__all__ = [
    "Node",
    "Edge",
    "Block",
    "DegenerationGraph",
    "CertificateRejected",
    "ComponentsReport",
    "build_graph",
    "saturate",
    "components_report",
    "to_json",
    "to_dot",
    "monotonicity_violations",
]


class CertificateRejected(CDAlgError):
    def __init__(self, certificate: Certificate, verdict: Verdict):
        self.certificate = certificate
        self.verdict = verdict
        super().__init__(f"certificate {certificate.name}: {verdict}")


@dataclass(frozen=True)
class Node:
    name: str
    algebra: Algebra = field(repr=False)
    profile: InvariantProfile = field(repr=False)
    closure_dim: int = 0

    @property
    def is_family(self) -> bool:
        return self.algebra.is_family()


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    evidence: str  # certificate name | trivial-scaling | transitive
    via: Optional[tuple] = None  # (source->mid, mid->target) for transitive edges

    @property
    def transitive(self) -> bool:
        return self.evidence == "transitive"


@dataclass(frozen=True)
class Block:
    source: str
    target: str
    reasons: tuple


@dataclass
class DegenerationGraph:
    nodes: list
    edges: list
    blocks: list

    def node(self, name: str) -> Node:
        for n in self.nodes:
            if n.name == name:
                return n
        raise KeyError(name)

    def edge_pairs(self) -> set:
        return {(e.source, e.target) for e in self.edges}

    def block_pairs(self) -> set:
        return {(b.source, b.target) for b in self.blocks}


def _make_node(A: Algebra) -> Node:
    profile = invariant_profile(A, "paper")
    return Node(A.name, A, profile, closure_dimension(A, profile))


def _find_node(nodes: list, A: Algebra) -> Optional[Node]:
    for n in nodes:
        if n.name == A.name and n.algebra.structurally_equal(A):
            return n
    for n in nodes:
        if n.algebra.structurally_equal(A) and set(n.algebra.params) == set(A.params):
            return n
    return None


def _add_edge(edges: list, edge: Edge):
    if edge.source == edge.target:
        return
    if any(e.source == edge.source and e.target == edge.target for e in edges):
        return
    edges.append(edge)


def build_graph(
    catalog: Iterable[Algebra],
    certificates: Iterable[Certificate] = (),
    mode: str = "exact",
    samples: int = 5,
    seed: Optional[int] = None,
    auto_scaling: bool = True,
) -> DegenerationGraph:
    """Nodes for the catalog, edges from verified certificates (plus trivial
    scalings into zero algebras in the catalog), blocks from pairwise
    default-mode obstructions.  A rejected certificate raises
    :class:`CertificateRejected`."""
    nodes = []
    for A in catalog:
        if any(n.name == A.name for n in nodes):
            raise CDAlgError(f"duplicate node name {A.name!r}")
        nodes.append(_make_node(A))
    edges: list = []
    for cert in certificates:
        cert_mode = "sampled" if cert.uses_sqrt else mode
        verdict = verify_certificate(cert, cert_mode, samples, seed)
        if not verdict.accepted:
            raise CertificateRejected(cert, verdict)
        ends = []
        for A in (cert.source, cert.target):
            node = _find_node(nodes, A)
            if node is None:
                node = _make_node(A)
                nodes.append(node)
            ends.append(node.name)
        _add_edge(edges, Edge(ends[0], ends[1], cert.name))
    if auto_scaling:
        zeros = [n for n in nodes if not any(True for _ in n.algebra.products())]
        for z in zeros:
            for n in nodes:
                if n.name == z.name or n.algebra.dim != z.algebra.dim:
                    continue
                cert = trivial_scaling_certificate(n.algebra)
                if verify_certificate(cert).accepted:
                    _add_edge(edges, Edge(n.name, z.name, "trivial-scaling"))
    blocks = []
    for a in nodes:
        for b in nodes:
            if a.name == b.name or a.algebra.dim != b.algebra.dim:
                continue
            res = compare_profiles(
                a.profile,
                b.profile,
                a.closure_dim,
                b.closure_dim,
                a.is_family or b.is_family,
                a.algebra.structurally_equal(b.algebra),
            )
            if res.blocked:
                blocks.append(Block(a.name, b.name, tuple(str(r) for r in res.reasons)))
    g = DegenerationGraph(nodes, edges, blocks)
    _check_conflicts(g)
    return g


def _check_conflicts(g: DegenerationGraph):
    blocked = {(b.source, b.target): b for b in g.blocks}
    for e in g.edges:
        b = blocked.get((e.source, e.target))
        if b is not None:
            raise GraphInconsistencyError(e.source, e.target, f"edge '{e.evidence}' vs block {list(b.reasons)}")


def saturate(g: DegenerationGraph) -> DegenerationGraph:
    """Transitive closure; each new edge cites a two-edge witness."""
    edges = list(g.edges)
    pairs = {(e.source, e.target) for e in edges}
    succ: dict = {}
    for s, t in pairs:
        succ.setdefault(s, set()).add(t)
    changed = True
    while changed:
        changed = False
        for a in sorted(succ):
            for b in sorted(succ.get(a, ())):
                for c in sorted(succ.get(b, ())):
                    if c != a and (a, c) not in pairs:
                        pairs.add((a, c))
                        succ.setdefault(a, set()).add(c)
                        edges.append(Edge(a, c, "transitive", ((a, b), (b, c))))
                        changed = True
    out = DegenerationGraph(list(g.nodes), edges, list(g.blocks))
    _check_conflicts(out)
    return out


def monotonicity_violations(g: DegenerationGraph) -> list:
    """Edges along which a default-mode invariant moves the wrong way."""
    out = []
    for e in g.edges:
        a, b = g.node(e.source), g.node(e.target)
        if a.profile.square < b.profile.square:
            out.append((e, "square dimension increases"))
        if a.profile.derivations > b.profile.derivations and not (a.is_family or b.is_family):
            out.append((e, "derivation dimension decreases"))
        if a.closure_dim <= b.closure_dim:
            out.append((e, "closure dimension does not drop"))
    return out


@dataclass(frozen=True)
class Candidate:
    name: str
    kind: str  # family | single algebra
    closure_dim: int
    dominates: tuple


@dataclass(frozen=True)
class ComponentsReport:
    candidates: tuple
    warnings: tuple

    def to_dict(self):
        return {
            "candidates": [
                {
                    "name": c.name,
                    "kind": c.kind,
                    "closure_dimension_estimate": c.closure_dim,
                    "dominates": list(c.dominates),
                }
                for c in self.candidates
            ],
            "warnings": list(self.warnings),
        }

    def __str__(self):
        lines = [f"{len(self.candidates)} component candidate(s):"]
        for c in self.candidates:
            dom = ", ".join(c.dominates) or "-"
            lines.append(f"  {c.name} [{c.kind}] closure dim {c.closure_dim} (estimate); dominates: {dom}")
        for w in self.warnings:
            lines.append(f"  warning: {w}")
        return "\n".join(lines)


def components_report(g: DegenerationGraph) -> ComponentsReport:
    """Maximal elements of the reachability preorder of a saturated graph.

    These are only candidates: the catalog may be incomplete, and a
    missing edge is not a non-degeneration unless a block is recorded.
    """
    reach: dict = {n.name: set() for n in g.nodes}
    for e in g.edges:
        reach[e.source].add(e.target)
    candidates = []
    for n in g.nodes:
        dominated = any(n.name in reach[m] and m not in reach[n.name] for m in reach if m != n.name)
        if not dominated:
            kind = "family" if n.is_family else "single algebra"
            candidates.append(Candidate(n.name, kind, n.closure_dim, tuple(sorted(reach[n.name]))))
    warnings = []
    blocked = g.block_pairs()
    names = [c.name for c in candidates]
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            if g.node(a).algebra.dim != g.node(b).algebra.dim:
                continue
            missing = [p for p in ((a, b), (b, a)) if p not in blocked and p not in g.edge_pairs()]
            for s, t in missing:
                warnings.append(f"no edge and no block for {s} -> {t}; absence of an edge is not a proof of non-degeneration")
    uncovered = [n.name for n in g.nodes if n.name not in names and not any(n.name in reach[c] for c in names)]
    for name in uncovered:
        warnings.append(f"{name} is not dominated by any candidate")
    return ComponentsReport(tuple(candidates), tuple(warnings))


def to_json(g: DegenerationGraph, report: Optional[ComponentsReport] = None) -> str:
    report = report or components_report(g)
    doc = {
        "nodes": [
            {
                "name": n.name,
                "dim": n.algebra.dim,
                "params": list(n.algebra.params),
                "profile": n.profile.to_dict(),
                "closure_dimension_estimate": n.closure_dim,
            }
            for n in g.nodes
        ],
        "edges": [
            {
                "source": e.source,
                "target": e.target,
                "evidence": e.evidence,
                **({"via": [list(p) for p in e.via]} if e.via else {}),
            }
            for e in g.edges
        ],
        "blocks": [{"source": b.source, "target": b.target, "reasons": list(b.reasons)} for b in g.blocks],
        "components": report.to_dict(),
    }
    return json.dumps(doc, indent=2)


def _dot_id(name: str) -> str:
    return '"' + name.replace('"', r"\"") + '"'


def to_dot(g: DegenerationGraph) -> str:
    lines = ["digraph degenerations {", "  rankdir=TB;"]
    for n in g.nodes:
        label = f"{n.name}\\ncl.dim {n.closure_dim}"
        shape = "box" if n.is_family else "ellipse"
        lines.append(f"  {_dot_id(n.name)} [label={_dot_id(label)}, shape={shape}];")
    for e in g.edges:
        style = "dashed" if e.transitive else "solid"
        lines.append(f"  {_dot_id(e.source)} -> {_dot_id(e.target)} [style={style}, label={_dot_id(e.evidence)}];")
    for b in g.blocks:
        label = "; ".join(r.split(":")[0] for r in b.reasons)
        lines.append(
            f"  {_dot_id(b.source)} -> {_dot_id(b.target)} [style=dotted, color=red, fontcolor=red, constraint=false, label={_dot_id(label)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
