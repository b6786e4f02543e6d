"""Fusion quivers, normalization, sink/source reflection, the FP-labeled
graph, the Coxeter graph, and the finite-Coxeter-type classifier."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import InconsistentVerdict, NotReflectable
from .module import (
    ActionLabel,
    ModuleCategory,
    action_matrix_of,
    regular_module,
)
from .ring import (
    FPVector,
    FusionRing,
    INFINITY,
    angle_label,
    default_tol,
    dual as ring_dual,
    fpdim,
    fpdim_of,
)


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    label: object  # RingElement tuple or ActionLabel


@dataclass(frozen=True)
class FusionQuiver:
    vertices: tuple  # names
    edges: tuple  # of Edge
    ring: FusionRing | None = None
    module: ModuleCategory | None = None
    mnames: tuple | None = None  # display names for partial mode

    @property
    def nv(self) -> int:
        return len(self.vertices)

    @property
    def partial_mode(self) -> bool:
        return self.ring is None or any(
            isinstance(e.label, ActionLabel) for e in self.edges
        )

    def resolved_module(self) -> ModuleCategory | None:
        if self.module is not None:
            return self.module
        if self.ring is not None:
            return regular_module(self.ring)
        return None

    def module_names(self) -> tuple:
        m = self.resolved_module()
        if m is not None:
            return m.mnames
        if self.mnames is not None:
            return self.mnames
        sizes = {e.label.size for e in self.edges if isinstance(e.label, ActionLabel)}
        if len(sizes) != 1:
            raise ValueError("cannot infer module size in partial mode")
        return tuple(f"L{k}" for k in range(sizes.pop()))


def _zero_label(label) -> bool:
    if isinstance(label, ActionLabel):
        return all(all(x == 0 for x in row) for row in label.matrix)
    return all(x == 0 for x in label)


def _add_labels(a, b):
    if isinstance(a, ActionLabel) != isinstance(b, ActionLabel):
        raise ValueError("cannot merge a ring-element label with a matrix label")
    if isinstance(a, ActionLabel):
        return ActionLabel.from_rows(
            [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a.matrix, b.matrix)]
        )
    return tuple(x + y for x, y in zip(a, b))


def normalize(Q: FusionQuiver) -> FusionQuiver:
    """Merge parallel same-direction edges by label addition and drop
    zero-labeled edges; idempotent."""
    merged: dict = {}
    order: list = []
    for e in Q.edges:
        key = (e.source, e.target)
        if key in merged:
            merged[key] = _add_labels(merged[key], e.label)
        else:
            merged[key] = e.label
            order.append(key)
    edges = tuple(
        Edge(s, t, merged[(s, t)])
        for (s, t) in order
        if not _zero_label(merged[(s, t)])
    )
    return replace(Q, edges=edges)


def dual_label(Q: FusionQuiver, label):
    if isinstance(label, ActionLabel):
        return label.transpose()
    return ring_dual(Q.ring, label)


def label_fpdim(Q: FusionQuiver, label, fpv: FPVector | None = None) -> float:
    if isinstance(label, ActionLabel):
        return label.fpdim()
    return fpdim_of(Q.ring, label, fpv)


def is_sink(Q: FusionQuiver, v: int) -> bool:
    return all(e.source != v for e in Q.edges)


def is_source(Q: FusionQuiver, v: int) -> bool:
    return all(e.target != v for e in Q.edges)


def reflect_quiver(Q: FusionQuiver, v: int) -> FusionQuiver:
    """Reverse all arrows abutting a sink or source vertex, replacing their
    labels by the dual class (matrix transpose in partial mode)."""
    if any(e.source == v and e.target == v for e in Q.edges):
        raise NotReflectable(f"vertex {v} carries a loop")
    if not (is_sink(Q, v) or is_source(Q, v)):
        raise NotReflectable(f"vertex {v} is neither a sink nor a source")
    edges = tuple(
        Edge(e.target, e.source, dual_label(Q, e.label))
        if v in (e.source, e.target)
        else e
        for e in Q.edges
    )
    return replace(Q, edges=edges)


@dataclass(frozen=True)
class LabeledGraph:
    vertices: tuple
    edges: tuple  # (u, v, real label) with u < v


@dataclass(frozen=True)
class CoxeterGraph:
    vertices: tuple
    edges: tuple  # (u, v, m) with u < v, m >= 3 or inf


def labeled_graph(Q: FusionQuiver) -> LabeledGraph:
    """The underlying undirected graph with each edge labeled by the FP
    dimension of its label; opposite directed edges are combined."""
    fpv = fpdim(Q.ring) if Q.ring is not None else None
    acc: dict = {}
    order = []
    for e in Q.edges:
        u, v = sorted((e.source, e.target))
        key = (u, v)
        if key not in acc:
            acc[key] = 0.0
            order.append(key)
        acc[key] += label_fpdim(Q, e.label, fpv)
    return LabeledGraph(
        vertices=Q.vertices, edges=tuple((u, v, acc[(u, v)]) for u, v in order)
    )


def coxeter_graph(Q_or_G, tol: float | None = None) -> CoxeterGraph:
    G = Q_or_G if isinstance(Q_or_G, LabeledGraph) else labeled_graph(Q_or_G)
    edges = []
    for u, v, f in G.edges:
        m = angle_label(f, tol)
        if m != 2:
            edges.append((u, v, m))
    return CoxeterGraph(vertices=G.vertices, edges=tuple(edges))


@dataclass(frozen=True)
class ComponentClass:
    vertices: tuple  # vertex indices, sorted
    type_name: str  # e.g. "A4", "I2(5)", "infinite"
    finite: bool
    coxeter_number: object  # int or inf


@dataclass(frozen=True)
class CoxeterClassification:
    components: tuple  # of ComponentClass

    @property
    def finite(self) -> bool:
        return all(c.finite for c in self.components)

    def type_names(self) -> tuple:
        return tuple(c.type_name for c in self.components)


def _graph_components(n, edges):
    adj = {v: set() for v in range(n)}
    for u, v, _ in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = set()
    comps = []
    for v in range(n):
        if v in seen:
            continue
        comp = []
        stack = [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def _posdef(gram, tol) -> bool:
    """Positive definiteness via leading principal minors (exact expansion on
    small float matrices); |minor| < tol counts as not positive definite."""
    import numpy as np

    g = np.asarray(gram, dtype=float)
    for k in range(1, g.shape[0] + 1):
        minor = float(np.linalg.det(g[:k, :k]))
        if minor < tol:
            return False
    return True


def _coxeter_pattern(comp, edges):
    """Name a connected Coxeter-graph component from the finite table, or
    return None if it matches nothing (infinite type).

    `comp` is the sorted vertex tuple; `edges` the (u, v, m) list restricted
    to it."""
    n = len(comp)
    if n == 1:
        return "A1", 2
    if any(m == INFINITY for _, _, m in edges):
        return None
    if len(edges) != n - 1:
        return None  # a connected non-tree has a cycle: never finite
    adj = {v: [] for v in comp}
    for u, v, m in edges:
        adj[u].append((v, m))
        adj[v].append((u, m))
    degs = {v: len(adj[v]) for v in comp}
    high = [(u, v, m) for u, v, m in edges if m > 3]

    if max(degs.values()) >= 4 or sum(1 for v in comp if degs[v] == 3) >= 2:
        return None
    branch = [v for v in comp if degs[v] == 3]

    def arm_lengths(c):
        lengths = []
        for w, _ in adj[c]:
            ln, prev, cur = 1, c, w
            while degs[cur] == 2:
                nxt = [x for x, _ in adj[cur] if x != prev][0]
                prev, cur, ln = cur, nxt, ln + 1
            lengths.append(ln)
        return sorted(lengths)

    if branch:
        if high:
            return None
        a, b, c = arm_lengths(branch[0])
        if a == b == 1:
            return f"D{n}", 2 * n - 2
        if (a, b) == (1, 2) and c in (2, 3, 4):
            return {2: ("E6", 12), 3: ("E7", 18), 4: ("E8", 30)}[c]
        return None

    # path component
    if not high:
        return f"A{n}", n + 1
    if len(high) > 1:
        return None
    u, v, m = high[0]
    at_leaf = degs[u] == 1 or degs[v] == 1
    if m == 4:
        if at_leaf:
            return f"B{n}", 2 * n
        if n == 4:  # the only interior-4 finite path
            return "F4", 12
        return None
    if m == 5 and at_leaf:
        if n == 2:
            return "I2(5)", 5
        if n == 3:
            return "H3", 10
        if n == 4:
            return "H4", 30
        return None
    if n == 2:
        m = int(m)
        if m == 6:
            return "G2", 6
        return f"I2({m})", m
    return None


def classify_coxeter(G, tol: float | None = None) -> CoxeterClassification:
    """Classify each connected component of a Coxeter graph (or labeled
    graph) as a named finite type or infinite, cross-checking the pattern
    match against positive definiteness of the associated symmetric form."""
    if tol is None:
        tol = default_tol()
    if isinstance(G, LabeledGraph):
        gram_label = {(min(u, v), max(u, v)): f for u, v, f in G.edges}
        G = coxeter_graph(G, tol)
    else:
        gram_label = {
            (min(u, v), max(u, v)): (
                2.0 if m == INFINITY else 2 * math.cos(math.pi / m)
            )
            for u, v, m in G.edges
        }
    comps = _graph_components(len(G.vertices), G.edges)
    out = []
    for comp in comps:
        idx = {v: i for i, v in enumerate(comp)}
        sub = [(u, v, m) for u, v, m in G.edges if u in idx and v in idx]
        gram = [[2.0 if i == j else 0.0 for j in comp] for i in comp]
        for u, v, _ in sub:
            f = gram_label[(min(u, v), max(u, v))]
            gram[idx[u]][idx[v]] = -f
            gram[idx[v]][idx[u]] = -f
        pd = _posdef(gram, tol)
        named = _coxeter_pattern(comp, sub)
        if (named is not None) != pd:
            raise InconsistentVerdict(
                f"pattern match and positive definiteness disagree on {comp}"
            )
        if named is None:
            out.append(ComponentClass(comp, "infinite", False, INFINITY))
        else:
            name, h = named
            out.append(ComponentClass(comp, name, True, h))
    return CoxeterClassification(components=tuple(out))


def admissible_sink_ordering(Q: FusionQuiver):
    """An ordering of vertices in which each is a sink once all earlier ones
    have been reflected; None when the quiver has a loop or directed cycle."""
    if any(e.source == e.target for e in Q.edges):
        return None
    remaining = set(range(Q.nv))
    order = []
    while remaining:
        sinks = [
            v
            for v in sorted(remaining)
            if all(e.source != v or e.target not in remaining for e in Q.edges)
        ]
        if not sinks:
            return None
        order.append(sinks[0])
        remaining.remove(sinks[0])
    return tuple(order)
