"""The quotient base graph with displacement and level-bit voltages, finite
torus quotients, the explicit full unit graph, and lift certificates.

The base graph merges lx with rx (into vx), ly with ry, lz with rz, giving a
2d-vertex d-regular bipartite graph with d**2 edges.  Oriented edges carry a
displacement in Z^3 (nonzero only on vx->c1 = +e_x, vy->c1 = +e_y,
vz->c1 = +e_z) and an orientation-free level-bit vector in GF(2)**s (zero on
the central hub edges).  The infinite lattice is the derived cover over
Z^3 x GF(2)**s; derived_torus builds its finite quotients.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from . import linalg
from .errors import DegreeTooSmall, MalformedGraph, TorusTooSmall
from .graphs import (
    Cell,
    Edge,
    LabeledGraph,
    Role,
    VertexLabel,
    from_labeled_vertices,
)

Vec3 = tuple[int, int, int]

ZERO3: Vec3 = (0, 0, 0)
UNIT: dict[str, Vec3] = {"vx": (1, 0, 0), "vy": (0, 1, 0), "vz": (0, 0, 1)}


def vadd(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def vneg(a: Vec3) -> Vec3:
    return (-a[0], -a[1], -a[2])


@dataclass(frozen=True)
class BaseGraph:
    """2d-vertex quotient graph; spokes c_1..c_d are black, the rest white."""

    d: int
    graph: LabeledGraph

    @cached_property
    def blacks(self) -> tuple[int, ...]:
        assert self.graph.labels is not None
        return tuple(v for v, lab in enumerate(self.graph.labels) if lab.role.black)

    @cached_property
    def whites(self) -> tuple[int, ...]:
        assert self.graph.labels is not None
        return tuple(v for v, lab in enumerate(self.graph.labels) if not lab.role.black)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.graph.edges)}

    def role_of(self, v: int) -> Role:
        assert self.graph.labels is not None
        return self.graph.labels[v].role

    @cached_property
    def central_edges(self) -> frozenset[Edge]:
        out = set()
        for u, v in self.graph.edges:
            tags = {self.role_of(u).tag, self.role_of(v).tag}
            if tags in ({"t", "c"}, {"b", "c"}):
                out.add((u, v))
        return frozenset(out)

    @cached_property
    def noncentral_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.graph.edges if e not in self.central_edges)


@dataclass(frozen=True)
class VoltageAssignment:
    """Per-edge voltages: displacement (negates under orientation reversal)
    and an s-bit level mask (orientation-free), keyed by (u<v) edges."""

    s: int
    displacement: Mapping[Edge, Vec3]
    level_bits: Mapping[Edge, int]

    def disp(self, u: int, v: int) -> Vec3:
        e = (u, v) if u < v else (v, u)
        t = self.displacement.get(e, ZERO3)
        return t if u < v else vneg(t)

    def bits(self, u: int, v: int) -> int:
        e = (u, v) if u < v else (v, u)
        return self.level_bits.get(e, 0)

    def with_bits(self, s: int, level_bits: Mapping[Edge, int]) -> "VoltageAssignment":
        return VoltageAssignment(s, self.displacement, dict(level_bits))


def build_base_graph(d: int) -> tuple[BaseGraph, VoltageAssignment]:
    """Base graph plus the canonical displacement voltages (s = 0).

    Crossing vx->c1 gains +e_x: the merged connector vertex belongs to the
    cube where it plays the rx role.
    """
    if d < 5:
        raise DegreeTooSmall(f"construction requires d >= 5, got {d}")
    c = [VertexLabel(Role("c", i)) for i in range(1, d + 1)]
    t, b = VertexLabel(Role("t")), VertexLabel(Role("b"))
    f = [VertexLabel(Role("f", j)) for j in range(1, d - 4)]
    vx, vy, vz = (VertexLabel(Role(r)) for r in ("vx", "vy", "vz"))
    whites = [t, b, *f, vx, vy, vz]
    edges = [(ci, w) for ci in c for w in whites]
    graph = from_labeled_vertices([*c, *whites], edges, d)
    base = BaseGraph(d, graph)
    ids = graph.label_index()
    c1 = ids[(Role("c", 1), "", (0, 0, 0))]
    displacement: dict[Edge, Vec3] = {}
    for tag in ("vx", "vy", "vz"):
        w = ids[(Role(tag), "", (0, 0, 0))]
        e = (c1, w) if c1 < w else (w, c1)
        # stored for orientation min->max; voltage of v*->c1 is +unit
        displacement[e] = vneg(UNIT[tag]) if c1 < w else UNIT[tag]
    return base, VoltageAssignment(0, displacement, {})


def make_bits(base: BaseGraph, s: int, level_bits: Mapping[Edge, int]) -> dict[Edge, int]:
    """Validate a level-bit map: known edges, s-bit masks, central edges zero."""
    out: dict[Edge, int] = {}
    for e, mask in level_bits.items():
        if e not in base.edge_index:
            raise ValueError(f"unknown edge {e}")
        if mask >> s:
            raise ValueError(f"mask {mask:#x} wider than s={s}")
        if e in base.central_edges and mask:
            raise ValueError(f"central edge {e} must carry zero bits")
        if mask:
            out[e] = mask
    return out


def derived_torus(base: BaseGraph, volt: VoltageAssignment, n: int) -> LabeledGraph:
    """Explicit quotient on base-vertices x (Z_n)^3 x GF(2)^s.

    An edge (u,v) with displacement t and bit mask m joins (u, z, l) to
    (v, z + t mod n, l xor m).  The result is d-regular, bipartite and simple
    with n^3 * 2^s * 2d vertices and n^3 * 2^s * d^2 edges.
    """
    if n <= 1:
        raise TorusTooSmall(
            "n must be >= 2: wrapping unit displacements at n=1 closes stray short cycles"
        )
    assert base.graph.labels is not None
    s = volt.s
    cells = [(x, y, z) for x in range(n) for y in range(n) for z in range(n)]
    levels = [format(l, f"0{s}b")[::-1] if s else "" for l in range(1 << s)]

    def lab(v: int, cell: Cell, l: int) -> VertexLabel:
        src = base.graph.labels[v]
        return VertexLabel(src.role, levels[l], cell)

    labels = [lab(v, z, l) for v in range(base.graph.vertex_count) for z in cells for l in range(1 << s)]
    edges = []
    for u, v in base.graph.edges:
        t = volt.disp(u, v)
        m = volt.bits(u, v)
        for z in cells:
            z2 = ((z[0] + t[0]) % n, (z[1] + t[1]) % n, (z[2] + t[2]) % n)
            for l in range(1 << s):
                edges.append((lab(u, z, l), lab(v, z2, l ^ m)))
    return from_labeled_vertices(labels, edges, base.d)


_ROOT_TO_BASE = {"lx": "vx", "ly": "vy", "lz": "vz", "rx": "vx", "ry": "vy", "rz": "vz"}


def _root_edge_to_base_edge(root: LabeledGraph, base: BaseGraph, u: int, v: int) -> Edge:
    assert root.labels is not None
    ids = base.graph.label_index()

    def to_base(w: int) -> int:
        role = root.labels[w].role
        tag = _ROOT_TO_BASE.get(role.tag, role.tag)
        return ids[(Role(tag, role.index), "", (0, 0, 0))]

    a, b = to_base(u), to_base(v)
    return (a, b) if a < b else (b, a)


def full_unit_graph(root: LabeledGraph, volt: VoltageAssignment) -> LabeledGraph:
    """The root unit graph after the s fiber-uniform 2-lifts encoded by volt.

    Vertices are (root vertex, level); the edge over root edge e joins levels
    l and l xor bits(e), where the one-sided connector edges (lx,c1) etc.
    inherit the bits of their merged base edges (vx,c1) etc.  Identical, up to
    relabeling, to iterating two_lift with the per-stage signings.
    """
    if root.labels is None or root.d is None:
        raise MalformedGraph("full_unit_graph needs a labeled root unit graph")
    base, _ = build_base_graph(root.d)
    s = volt.s
    levels = [format(l, f"0{s}b")[::-1] if s else "" for l in range(1 << s)]

    def lab(v: int, l: int) -> VertexLabel:
        src = root.labels[v]
        return VertexLabel(src.role, levels[l], src.cell)

    labels = [lab(v, l) for v in range(root.vertex_count) for l in range(1 << s)]
    edges = []
    for u, v in root.edges:
        e = _root_edge_to_base_edge(root, base, u, v)
        m = volt.level_bits.get(e, 0)
        for l in range(1 << s):
            edges.append((lab(u, l), lab(v, l ^ m)))
    return from_labeled_vertices(labels, edges, root.d)


def fundamental_cycle_voltages(
    base: BaseGraph, volt: VoltageAssignment
) -> list[tuple[Vec3, int]]:
    """Net (displacement, bits) voltages of the fundamental cycles of a BFS
    spanning tree rooted at vertex 0."""
    g = base.graph
    parent = [-1] * g.vertex_count
    tree_volt: list[tuple[Vec3, int]] = [(ZERO3, 0)] * g.vertex_count
    seen = [False] * g.vertex_count
    seen[0] = True
    order = [0]
    head = 0
    tree_edges = set()
    while head < len(order):
        v = order[head]
        head += 1
        for w in g.adjacency[v]:
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                tree_volt[w] = (
                    vadd(tree_volt[v][0], volt.disp(v, w)),
                    tree_volt[v][1] ^ volt.bits(v, w),
                )
                tree_edges.add((min(v, w), max(v, w)))
                order.append(w)
    if not all(seen):
        raise MalformedGraph("base graph is disconnected")
    out = []
    for u, v in g.edges:
        if (u, v) in tree_edges:
            continue
        disp = vadd(vadd(tree_volt[u][0], volt.disp(u, v)), vneg(tree_volt[v][0]))
        bits = tree_volt[u][1] ^ volt.bits(u, v) ^ tree_volt[v][1]
        out.append((disp, bits))
    return out


def max_connected_stages(d: int) -> int:
    """Largest s for which the derived lattice can possibly be connected.

    Bit masks reachable while returning to the same cell are indexed by
    zero-displacement cycle classes modulo the central cycle space (central
    edges always carry zero bits), a space of dimension
    (d-1)^2 - 3 - (d-1) = (d-1)(d-2) - 3.  Beyond that many stages the level
    group can never be generated.
    """
    return (d - 1) * (d - 2) - 3


def voltage_group_generated(base: BaseGraph, volt: VoltageAssignment) -> bool:
    """True iff the fundamental-cycle voltages generate Z^3 x GF(2)^s,
    i.e. the derived infinite graph is connected.

    Split check: the displacement rows must span Z^3 as an integer lattice,
    and the bit masks reachable by integer kernel combinations of the
    displacement rows must span GF(2)^s.
    """
    cyc = fundamental_cycle_voltages(base, volt)
    disp_rows = [list(t) for t, _ in cyc]
    if not linalg.spans_full_lattice(disp_rows, 3):
        return False
    if volt.s == 0:
        return True
    kernel = linalg.kernel_basis_sparse(disp_rows)
    masks = []
    for combo in kernel:
        m = 0
        for coeff, (_, bits) in zip(combo, cyc):
            if coeff & 1:
                m ^= bits
        masks.append(m)
    return linalg.gf2_rank(masks) == volt.s


# ---------------------------------------------------------------------------
# certificates

@dataclass(frozen=True)
class CertificateFlags:
    no_zero_voltage_hexes: bool
    no_zero_voltage_stray4s: bool
    voltage_group_generated: bool

    @property
    def all_true(self) -> bool:
        return (
            self.no_zero_voltage_hexes
            and self.no_zero_voltage_stray4s
            and self.voltage_group_generated
        )

    def to_dict(self) -> dict:
        return {
            "no_zero_voltage_hexes": self.no_zero_voltage_hexes,
            "no_zero_voltage_stray4s": self.no_zero_voltage_stray4s,
            "voltage_group_generated": self.voltage_group_generated,
        }


@dataclass(frozen=True)
class LiftCertificate:
    """Replayable record of one certified lift sequence.

    stage_bits[i] is the stage-i signing as a bitstring over the canonical
    base edge order ('1' = crossed); central edges are always '0'.
    """

    d: int
    s: int
    stage_bits: tuple[str, ...]
    edge_order: tuple[tuple[str, str], ...]
    flags: CertificateFlags
    constraint_count: int
    seed: int

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "s": self.s,
            "level_bits": list(self.stage_bits),
            "edge_order": [list(pair) for pair in self.edge_order],
            "flags": self.flags.to_dict(),
            "constraint_count": self.constraint_count,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json_dict(cls, data: dict) -> "LiftCertificate":
        flags = CertificateFlags(**data["flags"])
        return cls(
            d=int(data["d"]),
            s=int(data["s"]),
            stage_bits=tuple(data["level_bits"]),
            edge_order=tuple(tuple(pair) for pair in data["edge_order"]),
            flags=flags,
            constraint_count=int(data["constraint_count"]),
            seed=int(data["seed"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "LiftCertificate":
        return cls.from_json_dict(json.loads(text))

    def to_voltage(self, base: BaseGraph) -> VoltageAssignment:
        """Rebuild the voltage assignment (displacements + per-edge masks)."""
        if len(self.edge_order) != len(base.graph.edges):
            raise MalformedGraph("certificate edge order does not match base graph")
        ids = base.graph.label_index()
        bits: dict[Edge, int] = {}
        for j, (ru, rv) in enumerate(self.edge_order):
            u = ids[(Role.parse(ru), "", (0, 0, 0))]
            v = ids[(Role.parse(rv), "", (0, 0, 0))]
            e = (u, v) if u < v else (v, u)
            mask = 0
            for i, stage in enumerate(self.stage_bits):
                if stage[j] == "1":
                    mask |= 1 << i
            if mask:
                bits[e] = mask
        _, volt0 = build_base_graph(self.d)
        return volt0.with_bits(self.s, make_bits(base, self.s, bits))


def canonical_edge_order(base: BaseGraph) -> tuple[tuple[str, str], ...]:
    assert base.graph.labels is not None
    return tuple(
        (str(base.graph.labels[u].role), str(base.graph.labels[v].role))
        for u, v in base.graph.edges
    )


def stage_bitstrings(base: BaseGraph, volt: VoltageAssignment) -> tuple[str, ...]:
    """Per-stage signing bitstrings over the canonical base edge order."""
    out = []
    for i in range(volt.s):
        out.append(
            "".join(
                "1" if (volt.level_bits.get(e, 0) >> i) & 1 else "0"
                for e in base.graph.edges
            )
        )
    return tuple(out)
