"""Explicit finite labeled graphs: the root unit graph, central subgraphs,
signed 2-lifts and structural validators.

Vertices are dense integer ids.  Labels (role, level bitstring, integer cell)
are carried in a parallel tuple.  Graphs are immutable after construction and
all transforms return new graphs, so values can be shared freely.

Level bit order: position i of the level string records the choice made at
the i-th lift (position 0 = first lift).  When a level is interpreted as an
unsigned integer for ordering, bit i has weight 2**i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Literal, Mapping

from .errors import CentralEdgeCrossed, DegreeTooSmall, MalformedGraph

Edge = tuple[int, int]
Cell = tuple[int, int, int]

# Canonical role ranks; hub roles t/b and spoke roles c form the central
# subgraph, v* are the merged connector vertices of the quotient base graph.
ROLE_TAGS = ("c", "t", "b", "f", "lx", "ly", "lz", "rx", "ry", "rz", "vx", "vy", "vz")
_RANK = {tag: i for i, tag in enumerate(ROLE_TAGS)}
_INDEXED = {"c", "f"}
CENTRAL_TAGS = {"c", "t", "b"}


@dataclass(frozen=True)
class Role:
    """Structural role of a vertex; c/f roles carry a 1-based index."""

    tag: str
    index: int = 0

    def __post_init__(self):
        if self.tag not in _RANK:
            raise ValueError(f"unknown role tag {self.tag!r}")
        if self.tag in _INDEXED and self.index < 1:
            raise ValueError(f"role {self.tag!r} needs an index >= 1")
        if self.tag not in _INDEXED and self.index != 0:
            raise ValueError(f"role {self.tag!r} takes no index")

    @property
    def black(self) -> bool:
        return self.tag == "c"

    @property
    def rank(self) -> tuple[int, int]:
        return (_RANK[self.tag], self.index)

    def __str__(self) -> str:
        return f"{self.tag}{self.index}" if self.tag in _INDEXED else self.tag

    @classmethod
    def parse(cls, text: str) -> "Role":
        for tag in _INDEXED:
            if text.startswith(tag) and text[len(tag):].isdigit():
                return cls(tag, int(text[len(tag):]))
        return cls(text)


def level_uint(level: str) -> int:
    """Level bitstring as an unsigned integer, bit i weighted 2**i."""
    return sum(1 << i for i, ch in enumerate(level) if ch == "1")


@dataclass(frozen=True)
class VertexLabel:
    role: Role
    level: str = ""
    cell: Cell = (0, 0, 0)

    @property
    def sort_key(self):
        return (*self.role.rank, level_uint(self.level), self.cell)

    def __str__(self) -> str:
        name = str(self.role)
        if self.level:
            name += f"@{self.level}"
        if self.cell != (0, 0, 0):
            name += f"{self.cell}"
        return name


@dataclass(frozen=True)
class LabeledGraph:
    """Immutable simple graph with optional per-vertex labels."""

    vertex_count: int
    edges: tuple[Edge, ...]
    labels: tuple[VertexLabel, ...] | None = None
    d: int | None = None

    def __post_init__(self):
        norm = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u},{v}) out of range")
            norm.append((u, v) if u < v else (v, u))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(norm))
        if self.labels is not None and len(self.labels) != self.vertex_count:
            raise ValueError("labels length != vertex count")

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def degree_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for a in self.adjacency:
            hist[len(a)] = hist.get(len(a), 0) + 1
        return hist

    @cached_property
    def level_length(self) -> int:
        if self.labels is None:
            return 0
        lengths = {len(lab.level) for lab in self.labels}
        if len(lengths) > 1:
            raise MalformedGraph("inconsistent level lengths")
        return lengths.pop() if lengths else 0

    def label_index(self) -> dict[tuple, int]:
        """Map (role, level, cell) -> vertex id; requires labels."""
        if self.labels is None:
            raise MalformedGraph("graph has no labels")
        out = {}
        for v, lab in enumerate(self.labels):
            key = (lab.role, lab.level, lab.cell)
            if key in out:
                raise MalformedGraph(f"duplicate label {lab}")
            out[key] = v
        return out

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_set

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)


def from_labeled_vertices(
    labels: Iterable[VertexLabel],
    edges_by_label: Iterable[tuple[VertexLabel, VertexLabel]],
    d: int | None = None,
) -> LabeledGraph:
    """Build a graph from labels, assigning ids in canonical label order."""
    labs = sorted(set(labels), key=lambda lab: lab.sort_key)
    ids = {lab: i for i, lab in enumerate(labs)}
    edges = tuple((ids[a], ids[b]) for a, b in edges_by_label)
    return LabeledGraph(len(labs), edges, tuple(labs), d)


def build_root_unit_graph(d: int) -> LabeledGraph:
    """The (2d+3)-vertex seed graph of the construction.

    Black spokes c_1..c_d; white hubs t, b; white fillers f_1..f_{d-5};
    one-sided connectors lx, ly, lz (degree 1, attached to c_1) and
    rx, ry, rz (degree d-1, attached to c_2..c_d).
    """
    if d < 5:
        raise DegreeTooSmall(f"construction requires d >= 5, got {d}")
    c = [VertexLabel(Role("c", i)) for i in range(1, d + 1)]
    t, b = VertexLabel(Role("t")), VertexLabel(Role("b"))
    f = [VertexLabel(Role("f", j)) for j in range(1, d - 4)]
    lx, ly, lz = (VertexLabel(Role(r)) for r in ("lx", "ly", "lz"))
    rx, ry, rz = (VertexLabel(Role(r)) for r in ("rx", "ry", "rz"))
    edges: list[tuple[VertexLabel, VertexLabel]] = []
    for ci in c:
        edges.append((t, ci))
        edges.append((b, ci))
        for fj in f:
            edges.append((ci, fj))
    edges += [(lx, c[0]), (ly, c[0]), (lz, c[0])]
    for ci in c[1:]:
        edges += [(rx, ci), (ry, ci), (rz, ci)]
    return from_labeled_vertices([*c, t, b, *f, lx, ly, lz, rx, ry, rz], edges, d)


def _require_central_roles(g: LabeledGraph) -> None:
    if g.labels is None:
        raise MalformedGraph("graph has no labels")
    tags = {lab.role.tag for lab in g.labels}
    if not {"c", "t", "b"} <= tags:
        raise MalformedGraph(f"central roles missing, found {sorted(tags)}")


def central_subgraph(g: LabeledGraph) -> LabeledGraph:
    """Induced structure on hub/spoke roles restricted to (t,c_i), (b,c_i) edges.

    For a lifted graph this is the disjoint union of the 2**s central copies;
    see central_copies for the per-level split.
    """
    _require_central_roles(g)
    assert g.labels is not None
    keep = {v for v, lab in enumerate(g.labels) if lab.role.tag in CENTRAL_TAGS}
    edges = []
    for u, v in g.edges:
        if u in keep and v in keep:
            tags = {g.labels[u].role.tag, g.labels[v].role.tag}
            if tags in ({"t", "c"}, {"b", "c"}):
                edges.append((g.labels[u], g.labels[v]))
    return from_labeled_vertices((g.labels[v] for v in keep), edges, g.d)


def central_copies(g: LabeledGraph) -> tuple[LabeledGraph, ...]:
    """The vertex-disjoint central copies of a (lifted) graph, grouped by
    (cell, level) and returned in canonical order."""
    whole = central_subgraph(g)
    assert whole.labels is not None
    groups: dict[tuple, list[int]] = {}
    for v, lab in enumerate(whole.labels):
        groups.setdefault((lab.cell, level_uint(lab.level)), []).append(v)
    copies = []
    for key in sorted(groups):
        members = set(groups[key])
        edges = [
            (whole.labels[u], whole.labels[v])
            for u, v in whole.edges
            if u in members and v in members
        ]
        copies.append(
            from_labeled_vertices((whole.labels[v] for v in members), edges, whole.d)
        )
    return tuple(copies)


EdgeSign = Literal["parallel", "crossed"]


@dataclass(frozen=True)
class Signing:
    """Total assignment of parallel/crossed to the edges of one graph."""

    assignment: Mapping[Edge, EdgeSign]

    def sign(self, u: int, v: int) -> EdgeSign:
        return self.assignment[(min(u, v), max(u, v))]

    @classmethod
    def from_crossed(cls, g: LabeledGraph, crossed: Iterable[Edge]) -> "Signing":
        crossed_set = {(min(u, v), max(u, v)) for u, v in crossed}
        unknown = crossed_set - set(g.edges)
        if unknown:
            raise ValueError(f"crossed edges not in graph: {sorted(unknown)}")
        return cls({e: ("crossed" if e in crossed_set else "parallel") for e in g.edges})


def two_lift(g: LabeledGraph, sgn: Signing) -> LabeledGraph:
    """Double cover determined by the signing.

    Each vertex splits into bit-0 and bit-1 copies (the new bit is appended to
    the level).  A parallel edge (u,v) lifts to (u0,v0),(u1,v1); a crossed edge
    to (u0,v1),(u1,v0).  Edges projecting onto central edges must be parallel.
    """
    if g.labels is None:
        raise MalformedGraph("two_lift needs a labeled graph")
    missing = set(g.edges) - set(sgn.assignment)
    if missing:
        raise ValueError(f"signing not total, missing {sorted(missing)}")
    extra = set(sgn.assignment) - set(g.edges)
    if extra:
        raise ValueError(f"signing mentions non-edges {sorted(extra)}")
    for u, v in g.edges:
        tags = {g.labels[u].role.tag, g.labels[v].role.tag}
        if tags in ({"t", "c"}, {"b", "c"}) and sgn.sign(u, v) == "crossed":
            raise CentralEdgeCrossed(f"central edge ({u},{v}) marked crossed")

    def lifted(v: int, bit: int) -> VertexLabel:
        lab = g.labels[v]
        return VertexLabel(lab.role, lab.level + str(bit), lab.cell)

    labels = [lifted(v, bit) for v in range(g.vertex_count) for bit in (0, 1)]
    edges = []
    for u, v in g.edges:
        if sgn.sign(u, v) == "parallel":
            edges.append((lifted(u, 0), lifted(v, 0)))
            edges.append((lifted(u, 1), lifted(v, 1)))
        else:
            edges.append((lifted(u, 0), lifted(v, 1)))
            edges.append((lifted(u, 1), lifted(v, 0)))
    return from_labeled_vertices(labels, edges, g.d)


def two_coloring(g: LabeledGraph) -> list[int] | None:
    """A proper 2-coloring by BFS, or None if the graph is not bipartite."""
    color = [-1] * g.vertex_count
    for start in range(g.vertex_count):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for w in g.adjacency[v]:
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return color


@dataclass(frozen=True)
class ValidationReport:
    simple: bool
    bipartite: bool
    roles_bipartition_ok: bool | None
    degree_histogram: dict[int, int]
    regular_ok: bool | None
    passed: bool = field(init=False)

    def __post_init__(self):
        ok = self.simple and self.bipartite
        if self.roles_bipartition_ok is not None:
            ok = ok and self.roles_bipartition_ok
        if self.regular_ok is not None:
            ok = ok and self.regular_ok
        object.__setattr__(self, "passed", ok)

    def to_dict(self) -> dict:
        return {
            "simple": self.simple,
            "bipartite": self.bipartite,
            "roles_bipartition_ok": self.roles_bipartition_ok,
            "degree_histogram": {str(k): v for k, v in sorted(self.degree_histogram.items())},
            "regular_ok": self.regular_ok,
            "passed": self.passed,
        }


def validate(g: LabeledGraph, expect_regular: int | None = None) -> ValidationReport:
    """Report simplicity, bipartiteness (black = c-roles when labeled),
    the degree histogram, and optional d-regularity.  Never raises."""
    coloring = two_coloring(g)
    bipartite = coloring is not None
    roles_ok: bool | None = None
    if g.labels is not None and bipartite:
        assert coloring is not None
        # every component must color all c-roles one class and the rest the other
        roles_ok = True
        comp_seen: dict[int, int] = {}
        comp = _components(g)
        for v, lab in enumerate(g.labels):
            expected = comp_seen.get(comp[v])
            black = coloring[v] if lab.role.black else 1 - coloring[v]
            if expected is None:
                comp_seen[comp[v]] = black
            elif expected != black:
                roles_ok = False
                break
    elif g.labels is not None:
        roles_ok = False
    regular_ok = None
    if expect_regular is not None:
        regular_ok = all(len(a) == expect_regular for a in g.adjacency)
    return ValidationReport(True, bipartite, roles_ok, g.degree_histogram, regular_ok)


def _components(g: LabeledGraph) -> list[int]:
    comp = [-1] * g.vertex_count
    c = 0
    for start in range(g.vertex_count):
        if comp[start] != -1:
            continue
        stack = [start]
        comp[start] = c
        while stack:
            v = stack.pop()
            for w in g.adjacency[v]:
                if comp[w] == -1:
                    comp[w] = c
                    stack.append(w)
        c += 1
    return comp


def connected_components(g: LabeledGraph) -> list[list[int]]:
    comp = _components(g)
    out: dict[int, list[int]] = {}
    for v, c in enumerate(comp):
        out.setdefault(c, []).append(v)
    return [out[c] for c in sorted(out)]


def drops_last_bit_covering(lift: LabeledGraph, base: LabeledGraph) -> bool:
    """Check that forgetting the last level bit maps each lift vertex's
    neighborhood bijectively onto its image's neighborhood."""
    if lift.labels is None or base.labels is None:
        raise MalformedGraph("covering check needs labels")
    base_ids = base.label_index()
    try:
        img = [
            base_ids[(lab.role, lab.level[:-1], lab.cell)] for lab in lift.labels
        ]
    except KeyError:
        return False
    for v in range(lift.vertex_count):
        images = sorted(img[w] for w in lift.adjacency[v])
        if images != sorted(set(images)):
            return False
        if images != list(base.adjacency[img[v]]):
            return False
    return True


# ---------------------------------------------------------------------------
# serialization

def graph_to_json_dict(g: LabeledGraph) -> dict:
    if g.labels is None:
        raise MalformedGraph("JSON export needs a labeled graph")
    return {
        "d": g.d if g.d is not None else 0,
        "s": g.level_length,
        "vertices": [
            {
                "id": v,
                "role": str(lab.role),
                "level": lab.level,
                "cell": list(lab.cell),
            }
            for v, lab in enumerate(g.labels)
        ],
        "edges": [list(e) for e in g.edges],
    }


def graph_from_json_dict(data: dict) -> LabeledGraph:
    verts = sorted(data["vertices"], key=lambda rec: rec["id"])
    if [rec["id"] for rec in verts] != list(range(len(verts))):
        raise MalformedGraph("vertex ids must be dense 0..n-1")
    labels = tuple(
        VertexLabel(Role.parse(rec["role"]), rec.get("level", ""), tuple(rec.get("cell", (0, 0, 0))))
        for rec in verts
    )
    edges = tuple((int(u), int(v)) for u, v in data["edges"])
    d = int(data.get("d", 0)) or None
    return LabeledGraph(len(labels), edges, labels, d)


def graph_to_json(g: LabeledGraph) -> str:
    return json.dumps(graph_to_json_dict(g), indent=2, sort_keys=True) + "\n"


def graph_from_json(text: str) -> LabeledGraph:
    return graph_from_json_dict(json.loads(text))


def graph_to_dot(g: LabeledGraph) -> str:
    """DOT export; node labels are role@level."""
    if g.labels is None:
        raise MalformedGraph("DOT export needs a labeled graph")
    lines = ["graph lattice {"]
    for v, lab in enumerate(g.labels):
        name = str(lab.role) + (f"@{lab.level}" if lab.level else "")
        lines.append(f'  v{v} [label="{name}"];')
    for u, v in g.edges:
        lines.append(f"  v{u} -- v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
