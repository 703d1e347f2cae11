"""FTCY graphs: lattice-decorated weakly trivalent graphs, their axioms and operations.

A graph stores each unoriented edge once, as ``Edge(id, tail, head, p, f, fr)``.
The oriented edge ``(id, +1)`` runs tail -> head with position ``p`` and framing
``f``; ``(id, -1)`` runs head -> tail with position ``-p`` and framing ``fr``.
Framings are only present on oriented edges whose terminal vertex is uni- or
bivalent.  Antisymmetry of the position map holds by construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Mapping

from .partitions import Partition, partitions

Vec = tuple[int, int]
OEdge = tuple[str, int]


def wedge(a: Vec, b: Vec) -> int:
    return a[0] * b[1] - a[1] * b[0]


def neg(a: Vec | None) -> Vec | None:
    return None if a is None else (-a[0], -a[1])


def vadd(a: Vec, b: Vec) -> Vec:
    return (a[0] + b[0], a[1] + b[1])


def vsub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def reverse(oe: OEdge) -> OEdge:
    return (oe[0], -oe[1])


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    p: Vec
    f: Vec | None = None
    fr: Vec | None = None


@dataclass(frozen=True)
class Violation:
    label: str
    element: str
    detail: str = ""

    def __str__(self) -> str:
        extra = f": {self.detail}" if self.detail else ""
        return f"{self.label} at {self.element}{extra}"


class GraphValidationError(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


class GraphSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class FtcyGraph:
    """Immutable FTCY graph.  Construct through :meth:`build` to validate."""

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge]):
        self.vertices: tuple[str, ...] = tuple(vertices)
        self.edges: dict[str, Edge] = {e.id: e for e in edges}

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[Edge]) -> "FtcyGraph":
        g = cls(vertices, edges)
        g.check()
        return g

    # oriented-edge accessors

    def oriented_edges(self) -> list[OEdge]:
        return [(eid, s) for eid in self.edges for s in (1, -1)]

    def v0(self, oe: OEdge) -> str:
        e = self.edges[oe[0]]
        return e.tail if oe[1] > 0 else e.head

    def v1(self, oe: OEdge) -> str:
        e = self.edges[oe[0]]
        return e.head if oe[1] > 0 else e.tail

    def p(self, oe: OEdge) -> Vec:
        e = self.edges[oe[0]]
        return e.p if oe[1] > 0 else neg(e.p)

    def f(self, oe: OEdge) -> Vec | None:
        e = self.edges[oe[0]]
        return e.f if oe[1] > 0 else e.fr

    @cached_property
    def _outgoing(self) -> dict[str, tuple[OEdge, ...]]:
        out: dict[str, list[OEdge]] = {v: [] for v in self.vertices}
        for oe in self.oriented_edges():
            out.setdefault(self.v0(oe), []).append(oe)
        return {v: tuple(sorted(es, key=self.p)) for v, es in out.items()}

    def outgoing(self, v: str) -> tuple[OEdge, ...]:
        return self._outgoing.get(v, ())

    def incoming(self, v: str) -> tuple[OEdge, ...]:
        return tuple(reverse(oe) for oe in self.outgoing(v))

    def valence(self, v: str) -> int:
        return len(self.outgoing(v))

    def vertices_of_valence(self, k: int) -> list[str]:
        return [v for v in self.vertices if self.valence(v) == k]

    @property
    def univalent(self) -> list[str]:
        return self.vertices_of_valence(1)

    @property
    def bivalent(self) -> list[str]:
        return self.vertices_of_valence(2)

    @property
    def trivalent(self) -> list[str]:
        return self.vertices_of_valence(3)

    def is_regular(self) -> bool:
        return not self.bivalent

    def framed_edges(self) -> list[OEdge]:
        """E^f: oriented edges whose terminal vertex is not trivalent."""
        return [oe for oe in self.oriented_edges() if self.valence(self.v1(oe)) in (1, 2)]

    # validation

    def validate(self) -> list[Violation]:
        out: list[Violation] = []
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            out.append(Violation("graph", "vertices", "duplicate vertex id"))
        for e in self.edges.values():
            for end in (e.tail, e.head):
                if end not in vset:
                    out.append(Violation("graph", e.id, f"unknown vertex {end!r}"))
            if e.p == (0, 0):
                out.append(Violation("nonzero", e.id, "position vector is zero"))
            for fr in (e.f, e.fr):
                if fr == (0, 0):
                    out.append(Violation("nonzero", e.id, "framing vector is zero"))
            if e.tail == e.head:
                out.append(Violation("graph", e.id, "loop edge"))
        if out:
            return out
        for v in self.vertices:
            k = self.valence(v)
            if k == 0:
                out.append(Violation("surjectivity", v, "vertex has no edges"))
            elif k > 3:
                out.append(Violation("weakly trivalent", v, f"valence {k}"))
        for oe in self.oriented_edges():
            name = _oe_name(oe)
            framed = self.valence(self.v1(oe)) in (1, 2)
            f = self.f(oe)
            if framed and f is None:
                out.append(Violation("missing framing on E^f edge", name))
            elif not framed and f is not None:
                out.append(Violation("framing domain", name, "terminal vertex is trivalent"))
            elif framed and wedge(self.p(oe), f) != 1:
                out.append(Violation("T3 primitive", name,
                                     f"p={self.p(oe)} f={f} has wedge {wedge(self.p(oe), f)}"))
        for v in self.vertices:
            k = self.valence(v)
            if k == 2:
                e1, e2 = self.incoming(v)
                if vadd(self.p(e1), self.p(e2)) != (0, 0):
                    out.append(Violation("T2 balanced", v, "incoming positions do not cancel"))
                f1, f2 = self.f(e1), self.f(e2)
                if f1 is not None and f2 is not None and vadd(f1, f2) != (0, 0):
                    out.append(Violation("T2 balanced", v, "incoming framings do not cancel"))
            elif k == 3:
                ps = [self.p(oe) for oe in self.outgoing(v)]
                if vadd(vadd(ps[0], ps[1]), ps[2]) != (0, 0):
                    out.append(Violation("T2 balanced", v, "outgoing positions do not sum to zero"))
                elif any(abs(wedge(ps[i], ps[j])) != 1 for i in range(3) for j in range(i + 1, 3)):
                    out.append(Violation("T3 primitive", v, "positions are not pairwise a basis"))
        if out:
            return out
        for oe in self.oriented_edges():
            l0, l1 = self.l0(oe), self.l1(oe)
            if _multiple(vsub(l1, l0), self.p(oe)) is None:
                out.append(Violation("divisibility", _oe_name(oe),
                                     "l1 - l0 is not a multiple of the position vector"))
        return out

    def check(self) -> "FtcyGraph":
        violations = self.validate()
        if violations:
            raise GraphValidationError(violations)
        return self

    # derived maps

    def _wedge_neighbour(self, v: str, direction: Vec) -> Vec:
        hits = [self.p(o) for o in self.outgoing(v) if wedge(direction, self.p(o)) == 1]
        if len(hits) != 1:
            raise GraphValidationError([Violation("T3 primitive", v, "no unique wedge neighbour")])
        return hits[0]

    def l0(self, oe: OEdge) -> Vec:
        v = self.v0(oe)
        if self.valence(v) != 3:
            return neg(self.f(reverse(oe)))
        return self._wedge_neighbour(v, self.p(oe))

    def l1(self, oe: OEdge) -> Vec:
        v = self.v1(oe)
        if self.valence(v) != 3:
            return self.f(oe)
        return self._wedge_neighbour(v, self.p(oe))

    def n(self, oe: OEdge) -> int:
        k = _multiple(vsub(self.l1(oe), self.l0(oe)), self.p(oe))
        if k is None:
            raise GraphValidationError([Violation("divisibility", _oe_name(oe))])
        return 1 - k if self.valence(self.v1(oe)) == 3 else -k

    def derived_maps(self, oe: OEdge) -> tuple[Vec, Vec, int]:
        return self.l0(oe), self.l1(oe), self.n(oe)

    # comparison

    def canonical_form(self) -> tuple:
        """Relabeling-invariant key; equal keys mean isomorphic decorated graphs."""
        comps = []
        seen: set[str] = set()
        for v in self.vertices:
            if v in seen:
                continue
            best = None
            comp = self._component(v)
            seen |= comp
            for root in sorted(comp):
                key = self._traverse(root)
                if best is None or key < best:
                    best = key
            comps.append(best)
        return tuple(sorted(comps))

    def _component(self, v: str) -> set[str]:
        stack, comp = [v], {v}
        while stack:
            u = stack.pop()
            for oe in self.outgoing(u):
                w = self.v1(oe)
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        return comp

    def _traverse(self, root: str) -> tuple:
        # outgoing positions at a vertex are distinct, so the traversal is determined by the root
        label = {root: 0}
        order = [root]
        rows = []
        i = 0
        while i < len(order):
            v = order[i]
            for oe in self.outgoing(v):
                w = self.v1(oe)
                if w not in label:
                    label[w] = len(order)
                    order.append(w)
            i += 1
        for v in order:
            for oe in self.outgoing(v):
                rows.append((label[v], label[self.v1(oe)], self.p(oe), self.f(oe) or (0, 0)))
        return (len(order), tuple(sorted(rows)))

    def isomorphic(self, other: "FtcyGraph") -> bool:
        return self.canonical_form() == other.canonical_form()

    def __eq__(self, other) -> bool:
        if not isinstance(other, FtcyGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, tuple(self.edges.values())))

    def __repr__(self) -> str:
        return f"FtcyGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    # helpers for operations

    def fresh_vertex(self, stem: str = "v") -> str:
        k = len(self.vertices)
        while f"{stem}{k}" in self.vertices:
            k += 1
        return f"{stem}{k}"


def _oe_name(oe: OEdge) -> str:
    return oe[0] if oe[1] > 0 else f"-{oe[0]}"


def _multiple(a: Vec, b: Vec) -> int | None:
    """Integer k with a = k*b, or None."""
    if wedge(a, b) != 0:
        return None
    i = 0 if b[0] else 1
    if a[i] % b[i]:
        return None
    return a[i] // b[i]


def _with_terminal(edge: Edge, sign: int, vertex: str) -> Edge:
    """Move the terminal vertex of the oriented edge (edge.id, sign)."""
    return replace(edge, head=vertex) if sign > 0 else replace(edge, tail=vertex)


def _fresh_edge(g: FtcyGraph, stem: str) -> str:
    k = 1
    while f"{stem}{k}" in g.edges:
        k += 1
    return f"{stem}{k}"


# --- operations ----------------------------------------------------------------


def smooth(g: FtcyGraph, v: str) -> FtcyGraph:
    """Remove the bivalent vertex ``v`` and merge its two edges."""
    if v not in g.vertices or g.valence(v) != 2:
        raise ValueError(f"vertex {v!r} is not bivalent")
    e1, e2 = sorted(g.incoming(v))
    a, b = g.v0(e1), g.v0(e2)
    merged = Edge(e1[0], a, b, g.p(e1), g.f(reverse(e2)), g.f(reverse(e1)))
    edges = [merged if e.id == e1[0] else e for e in g.edges.values() if e.id != e2[0]]
    return FtcyGraph.build([u for u in g.vertices if u != v], edges)


def degenerate(g: FtcyGraph, oe: OEdge, f0: Vec, vertex: str | None = None) -> FtcyGraph:
    """Split the oriented edge ``oe`` at a new bivalent vertex with framings f0 and -f0."""
    if oe[0] not in g.edges:
        raise ValueError(f"unknown edge {oe[0]!r}")
    p = g.p(oe)
    if wedge(p, f0) != 1:
        raise ValueError(f"framing {f0} is not primitive against position {p}")
    new_v = vertex or g.fresh_vertex()
    a, b = g.v0(oe), g.v1(oe)
    e1 = Edge(oe[0], a, new_v, p, f0, g.f(reverse(oe)))
    e2 = Edge(_fresh_edge(g, oe[0] + "_"), b, new_v, neg(p), neg(f0), g.f(oe))
    edges = []
    for e in g.edges.values():
        edges.extend([e1, e2] if e.id == oe[0] else [e])
    return FtcyGraph.build(list(g.vertices) + [new_v], edges)


def normalize(g: FtcyGraph, v: str, names: tuple[str, str] | None = None) -> FtcyGraph:
    """Split the bivalent vertex ``v`` into two univalent vertices."""
    if v not in g.vertices or g.valence(v) != 2:
        raise ValueError(f"vertex {v!r} is not bivalent")
    e1, e2 = sorted(g.incoming(v))
    n1, n2 = names or (f"{v}_1", f"{v}_2")
    if n1 in g.vertices or n2 in g.vertices or n1 == n2:
        raise ValueError("normalization vertex names clash")
    edges = {eid: e for eid, e in g.edges.items()}
    edges[e1[0]] = _with_terminal(edges[e1[0]], e1[1], n1)
    edges[e2[0]] = _with_terminal(edges[e2[0]], e2[1], n2)
    vertices = [u for u in g.vertices if u != v] + [n1, n2]
    return FtcyGraph.build(vertices, edges.values())


def glue(g: FtcyGraph, u1: str, u2: str, name: str | None = None) -> FtcyGraph:
    """Identify two univalent vertices with opposite positions and framings."""
    for u in (u1, u2):
        if u not in g.vertices or g.valence(u) != 1:
            raise ValueError(f"vertex {u!r} is not univalent")
    if u1 == u2:
        raise ValueError("cannot glue a vertex to itself")
    (e1,), (e2,) = g.incoming(u1), g.incoming(u2)
    if g.p(e1) != neg(g.p(e2)):
        raise ValueError(f"position mismatch: p={g.p(e1)} vs p={g.p(e2)}")
    if g.f(e1) != neg(g.f(e2)):
        raise ValueError(f"framing mismatch: f={g.f(e1)} vs f={g.f(e2)}")
    v = name or g.fresh_vertex()
    edges = {eid: e for eid, e in g.edges.items()}
    edges[e1[0]] = _with_terminal(edges[e1[0]], e1[1], v)
    edges[e2[0]] = _with_terminal(edges[e2[0]], e2[1], v)
    vertices = [x for x in g.vertices if x not in (u1, u2)] + [v]
    return FtcyGraph.build(vertices, edges.values())


def smooth_along(g: FtcyGraph, vertices: Iterable[str]) -> tuple[FtcyGraph, dict[str, str]]:
    """Smoothing along a set A of bivalent vertices with the edge map E(G) -> E(G_A)."""
    index = {eid: eid for eid in g.edges}
    for v in vertices:
        e1, e2 = sorted(g.incoming(v))
        g = smooth(g, v)
        for k, target in index.items():
            if target == e2[0]:
                index[k] = e1[0]
    return g, index


def normalize_along(g: FtcyGraph, vertices: Iterable[str]) -> tuple[FtcyGraph, dict[str, str]]:
    """Normalization along A with the vertex map V(G^A) -> V(G)."""
    index = {v: v for v in g.vertices}
    for v in vertices:
        g = normalize(g, v)
        index.pop(v, None)
        index[f"{v}_1"] = v
        index[f"{v}_2"] = v
    return g, index


def full_smoothing(g: FtcyGraph) -> tuple[FtcyGraph, dict[str, str]]:
    return smooth_along(g, list(g.bivalent))


def full_resolution(g: FtcyGraph) -> tuple[FtcyGraph, dict[str, str]]:
    return normalize_along(g, list(g.bivalent))


def components(g: FtcyGraph) -> list[FtcyGraph]:
    """Connected components as separate graphs, in vertex order."""
    out = []
    seen: set[str] = set()
    for v in g.vertices:
        if v in seen:
            continue
        comp = g._component(v)
        seen |= comp
        out.append(FtcyGraph([u for u in g.vertices if u in comp],
                             [e for e in g.edges.values() if e.tail in comp]))
    return out


# --- standard graphs ---------------------------------------------------------

W1: Vec = (1, 0)
W2: Vec = (0, 1)
W3: Vec = (-1, -1)


def standard_vertex(n: tuple[int, int, int] = (0, 0, 0)) -> FtcyGraph:
    """One trivalent vertex with outer edges e1, e2, e3 of positions w1, w2, w3.

    Framings are f1 = w2 - n1 w1, f2 = w3 - n2 w2, f3 = w1 - n3 w3.
    """
    w = [W1, W2, W3]
    edges = []
    for i in range(3):
        p, nxt = w[i], w[(i + 1) % 3]
        f = (nxt[0] - n[i] * p[0], nxt[1] - n[i] * p[1])
        edges.append(Edge(f"e{i + 1}", "v", f"u{i + 1}", p, f, None))
    return FtcyGraph.build(["v", "u1", "u2", "u3"], edges)


def conifold(n: int = 0) -> FtcyGraph:
    """Two trivalent vertices joined by a compact edge of position w1 and framing integer n."""
    a = (W2[0] + (1 - n) * W1[0], W2[1] + (1 - n) * W1[1])
    b = (-W2[0] + n * W1[0], -W2[1] + n * W1[1])
    edges = [
        Edge("c", "v0", "v1", W1),
        Edge("a2", "v0", "a2", W2, W3),
        Edge("a3", "v0", "a3", W3, W1),
        Edge("b2", "v1", "b2", a, _unit_framing(a)),
        Edge("b3", "v1", "b3", b, _unit_framing(b)),
    ]
    return FtcyGraph.build(["v0", "v1", "a2", "a3", "b2", "b3"], edges)


def _unit_framing(p: Vec) -> Vec:
    """Some f with wedge(p, f) = 1 (p primitive)."""
    a, b = p
    # extended Euclid on (a, b): x*a + y*b = 1 gives wedge(p, (-y, x)) = 1
    old_r, r, old_s, s, old_t, t = a, b, 1, 0, 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if abs(old_r) != 1:
        raise ValueError(f"{p} is not primitive")
    x, y = old_s * old_r, old_t * old_r
    return (-y, x)


# --- effective classes ---------------------------------------------------------


@dataclass(frozen=True)
class EffectiveClass:
    degrees: tuple[tuple[str, int], ...]
    boundary: tuple[tuple[str, Partition], ...] = field(default=())

    def degree(self, edge_id: str) -> int:
        return dict(self.degrees)[edge_id]

    def partition(self, vertex: str) -> Partition:
        return dict(self.boundary)[vertex]

    def __str__(self) -> str:
        d = " ".join(f"{k}={v}" for k, v in self.degrees)
        b = " ".join(f"{k}:{v}" for k, v in self.boundary)
        return f"d[{d}] mu[{b}]"


def effective_classes(g: FtcyGraph, caps: Mapping[str, int] | int) -> list[EffectiveClass]:
    """Every effective class with d(e) <= caps[e]."""
    ids = list(g.edges)
    if isinstance(caps, int):
        caps = {eid: caps for eid in ids}
    # bivalent vertices force equal degree on their two edges: union-find the edges
    parent = {eid: eid for eid in ids}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in g.bivalent:
        a, b = (oe[0] for oe in g.incoming(v))
        parent[find(a)] = find(b)
    groups: dict[str, list[str]] = {}
    for eid in ids:
        groups.setdefault(find(eid), []).append(eid)
    roots = list(groups)
    out = []
    for degs in product(*(range(min(caps[e] for e in groups[r]) + 1) for r in roots)):
        d = {}
        for r, k in zip(roots, degs):
            for eid in groups[r]:
                d[eid] = k
        uni = g.univalent
        choices = [partitions(d[g.incoming(u)[0][0]]) for u in uni]
        for mus in product(*choices):
            out.append(EffectiveClass(tuple((eid, d[eid]) for eid in ids), tuple(zip(uni, mus))))
    return out


def splitting_types(g: FtcyGraph, c: EffectiveClass) -> Iterator[dict[str, Partition]]:
    """Maps from bivalent vertices to partitions of the adjacent edge degree."""
    bi = g.bivalent
    degs = dict(c.degrees)
    choices = [partitions(degs[g.incoming(v)[0][0]]) for v in bi]
    for sigmas in product(*choices):
        yield dict(zip(bi, sigmas))


# --- text format ---------------------------------------------------------------

_IDENT = r"[A-Za-z_][A-Za-z0-9_.']*"
_VEC = r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)"
_VERTEX_RE = re.compile(rf"vertex\s+({_IDENT})\s*$")
_EDGE_RE = re.compile(rf"edge\s+({_IDENT})\s+({_IDENT})\s+({_IDENT})\s+(.*)$")
_ATTR_RE = re.compile(rf"\s*(p|f|fr)\s*=\s*{_VEC}")


def parse_graph(text: str) -> FtcyGraph:
    """Parse and validate the line-oriented ``.ftcy`` text form."""
    vertices: list[str] = []
    edges: list[Edge] = []
    seen_edges: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        col = len(line) - len(stripped) + 1
        word = stripped.split()[0]
        if word == "vertex":
            m = _VERTEX_RE.match(stripped)
            if not m:
                raise GraphSyntaxError("expected 'vertex <id>'", lineno, col)
            if m.group(1) in vertices:
                raise GraphSyntaxError(f"duplicate vertex {m.group(1)!r}", lineno, col)
            vertices.append(m.group(1))
        elif word == "edge":
            m = _EDGE_RE.match(stripped)
            if not m:
                raise GraphSyntaxError("expected 'edge <id> <from> <to> p=(a,b) ...'", lineno, col)
            eid, tail, head, rest = m.groups()
            if eid in seen_edges:
                raise GraphSyntaxError(f"duplicate edge {eid!r}", lineno, col)
            attrs: dict[str, Vec] = {}
            pos = 0
            offset = col - 1 + m.start(4)
            while pos < len(rest):
                am = _ATTR_RE.match(rest, pos)
                if not am:
                    if rest[pos:].strip() == "":
                        break
                    bad = pos + len(rest[pos:]) - len(rest[pos:].lstrip())
                    raise GraphSyntaxError("malformed attribute", lineno, offset + bad + 1)
                key = am.group(1)
                if key in attrs:
                    raise GraphSyntaxError(f"repeated attribute {key!r}", lineno,
                                           offset + am.start(1) + 1)
                attrs[key] = (int(am.group(2)), int(am.group(3)))
                pos = am.end()
            if "p" not in attrs:
                raise GraphSyntaxError("edge is missing p=(a,b)", lineno, col)
            seen_edges.add(eid)
            edges.append(Edge(eid, tail, head, attrs["p"], attrs.get("f"), attrs.get("fr")))
        else:
            raise GraphSyntaxError(f"unknown directive {word!r}", lineno, col)
    return FtcyGraph.build(vertices, edges)


def _vec(v: Vec) -> str:
    return f"({v[0]},{v[1]})"


def serialize_graph(g: FtcyGraph) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    for e in g.edges.values():
        parts = [f"edge {e.id} {e.tail} {e.head} p={_vec(e.p)}"]
        if e.f is not None:
            parts.append(f"f={_vec(e.f)}")
        if e.fr is not None:
            parts.append(f"fr={_vec(e.fr)}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def load_graph(path) -> FtcyGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())
