"""Exact counts of 4-cycles, 6-cycles and theta graphs (K_{2,3} subgraphs) on
explicit graphs, a subset-enumeration oracle for small graphs, and the
per-cube census of the infinite derived lattice via zero-voltage cycles.

All reported averages are exact rationals; no count ever passes through
floating point except inside the dense 6-cycle path, whose intermediates are
integers far below 2**53 and therefore exact.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import MalformedGraph, TooLarge
from .graphs import CENTRAL_TAGS, LabeledGraph, two_coloring
from .voltage import BaseGraph, VoltageAssignment

# explicit 6-cycle counting switches to the dense bipartite formula above this
_DENSE_C6_THRESHOLD = 96


@dataclass(frozen=True)
class CensusReport:
    c4_total: int
    c4_central: int
    c4_stray: int
    c6: int
    theta222: int
    c4_bar: Fraction
    c6_bar: Fraction
    theta_bar: Fraction
    scope: str  # "explicit-graph" | "per-cube"

    def __post_init__(self):
        assert self.c4_total == self.c4_central + self.c4_stray

    def to_json_dict(self) -> dict:
        return {
            "c4_total": self.c4_total,
            "c4_central": self.c4_central,
            "c4_stray": self.c4_stray,
            "c6": self.c6,
            "theta222": self.theta222,
            "per_vertex": {
                "c4_bar": _frac_str(self.c4_bar),
                "c6_bar": _frac_str(self.c6_bar),
                "theta_bar": _frac_str(self.theta_bar),
            },
            "scope": self.scope,
        }


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


# ---------------------------------------------------------------------------
# codegree-based counters

def _codegrees(g: LabeledGraph) -> Counter:
    """codeg(u,v) for all unordered pairs with a common neighbor."""
    cod: Counter = Counter()
    for w in range(g.vertex_count):
        nbrs = g.adjacency[w]
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                cod[(nbrs[i], nbrs[j])] += 1
    return cod


def count_c4(g: LabeledGraph) -> int:
    """Number of 4-cycle subgraphs: half the sum over unordered vertex pairs
    of C(codegree, 2) (each 4-cycle is seen from both diagonals)."""
    total = sum(comb(c, 2) for c in _codegrees(g).values())
    assert total % 2 == 0
    return total // 2


def count_theta222(g: LabeledGraph) -> int:
    """Number of K_{2,3} subgraphs: sum over unordered vertex pairs of
    C(codegree, 3) (the hub pair of a theta graph is unique)."""
    return sum(comb(c, 3) for c in _codegrees(g).values())


def count_c6(g: LabeledGraph) -> int:
    """Exact number of 6-cycle subgraphs.

    Small or non-bipartite graphs use a min-rooted DFS (each cycle counted at
    its minimum vertex, once per direction).  Larger bipartite graphs use the
    dense codegree-triple formula, which is cross-checked against the DFS in
    the test suite.
    """
    coloring = two_coloring(g)
    if coloring is not None and g.vertex_count > _DENSE_C6_THRESHOLD:
        return _count_c6_bipartite_dense(g, coloring)
    return _count_c6_dfs(g)


def _count_c6_dfs(g: LabeledGraph) -> int:
    adj = g.adjacency
    count = 0
    path = [0] * 6
    on_path = [False] * g.vertex_count

    def walk(v: int, depth: int, root: int) -> int:
        found = 0
        for w in adj[v]:
            if w == root:
                if depth == 5:
                    found += 1
            elif w > root and depth < 5 and not on_path[w]:
                on_path[w] = True
                found += walk(w, depth + 1, root)
                on_path[w] = False
        return found

    for root in range(g.vertex_count):
        on_path[root] = True
        count += walk(root, 0, root)
        on_path[root] = False
    assert count % 2 == 0
    return count // 2


def _count_c6_bipartite_dense(g: LabeledGraph, coloring: list[int]) -> int:
    """6-cycles of a bipartite graph from same-side codegrees.

    With X one side, Y the other, chat the X-side codegree matrix with zero
    diagonal, and for w in Y q_w = x_w^T chat x_w over its neighborhood x_w:

        C6 = tr(chat^3)/6 - sum_w (deg_w - 2) q_w / 2 + 2 sum_w C(deg_w, 3)

    The first term counts ordered codegree triangles, the others remove
    triples that reuse a middle vertex.
    """
    xs = [v for v in range(g.vertex_count) if coloring[v] == 0]
    ys = [v for v in range(g.vertex_count) if coloring[v] == 1]
    if len(ys) < len(xs):
        xs, ys = ys, xs
    ix = {v: i for i, v in enumerate(xs)}
    iy = {v: i for i, v in enumerate(ys)}
    a = np.zeros((len(xs), len(ys)))
    for u, v in g.edges:
        if u in ix:
            a[ix[u], iy[v]] = 1.0
        else:
            a[ix[v], iy[u]] = 1.0
    chat = a @ a.T
    np.fill_diagonal(chat, 0.0)
    tr3 = float((chat * (chat @ chat)).sum())
    q = (a * (chat @ a)).sum(axis=0)
    deg = a.sum(axis=0)
    t2 = float(((deg - 2.0) * q).sum())
    t3 = float((deg * (deg - 1.0) * (deg - 2.0)).sum())
    # float64 arithmetic on integers is exact below 2**53; refuse anything bigger
    if not (tr3 < 2**53 and abs(t2) < 2**53 and t3 < 2**53):
        raise TooLarge("graph too large for exact dense 6-cycle counting")
    num = round(tr3) - 3 * round(t2) + round(t3) * 2
    if num % 6:
        raise AssertionError("6-cycle identity produced a non-integral count")
    return num // 6


# ---------------------------------------------------------------------------
# subset-enumeration oracle

_BRUTE_LIMIT = 16
# the three distinct 4-cycles on four labeled vertices, as cyclic orders
_FOUR_ORDERS = ((0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3))


def brute_force_census(g: LabeledGraph) -> CensusReport:
    """Counts by enumerating all 4-, 5- and 6-vertex subsets directly.

    Independent of the codegree/DFS counters; guarded to 16 vertices.
    """
    n = g.vertex_count
    if n > _BRUTE_LIMIT:
        raise TooLarge(f"brute-force census guarded to {_BRUTE_LIMIT} vertices, got {n}")
    mask = [0] * n
    for u, v in g.edges:
        mask[u] |= 1 << v
        mask[v] |= 1 << u

    def adjacent(u: int, v: int) -> bool:
        return bool(mask[u] >> v & 1)

    c4 = 0
    c4_cycles = []
    for sub in itertools.combinations(range(n), 4):
        for order in _FOUR_ORDERS:
            seq = tuple(sub[i] for i in order)
            if all(adjacent(seq[i], seq[(i + 1) % 4]) for i in range(4)):
                c4 += 1
                c4_cycles.append(seq)

    theta = 0
    for sub in itertools.combinations(range(n), 5):
        for hubs in itertools.combinations(range(5), 2):
            u, v = sub[hubs[0]], sub[hubs[1]]
            mids = [sub[i] for i in range(5) if i not in hubs]
            if all(adjacent(u, m) and adjacent(v, m) for m in mids):
                theta += 1

    c6 = 0
    for sub in itertools.combinations(range(n), 6):
        sub_mask = 0
        for v in sub:
            sub_mask |= 1 << v
        if sum((mask[v] & sub_mask).bit_count() for v in sub) < 12:
            continue  # a 6-cycle needs 6 induced edges
        first, rest = sub[0], sub[1:]
        for perm in itertools.permutations(rest):
            if perm[0] > perm[-1]:
                continue  # each cycle once per direction
            seq = (first, *perm)
            if all(adjacent(seq[i], seq[(i + 1) % 6]) for i in range(6)):
                c6 += 1

    central = sum(1 for seq in c4_cycles if _is_central_cycle(g, seq))
    return _explicit_report(g, c4, central, c6, theta)


def _is_central_cycle(g: LabeledGraph, seq: tuple[int, ...]) -> bool:
    if g.labels is None:
        return False
    labs = [g.labels[v] for v in seq]
    return (
        all(lab.role.tag in CENTRAL_TAGS for lab in labs)
        and len({lab.level for lab in labs}) == 1
        and len({lab.cell for lab in labs}) == 1
    )


def _explicit_report(
    g: LabeledGraph, c4: int, central: int, c6: int, theta: int
) -> CensusReport:
    n = g.vertex_count
    return CensusReport(
        c4_total=c4,
        c4_central=central,
        c4_stray=c4 - central,
        c6=c6,
        theta222=theta,
        c4_bar=Fraction(c4, n) if n else Fraction(0),
        c6_bar=Fraction(c6, n) if n else Fraction(0),
        theta_bar=Fraction(theta, n) if n else Fraction(0),
        scope="explicit-graph",
    )


def classify_c4(g: LabeledGraph) -> tuple[int, int]:
    """(central, stray) 4-cycle counts.

    Central 4-cycles have all four vertices with hub/spoke roles at one
    (cell, level); they are counted inside each central copy, stray is the
    remainder of the full count.
    """
    if g.labels is None:
        raise MalformedGraph("classify_c4 needs a labeled graph")
    groups: dict[tuple, list[int]] = {}
    for v, lab in enumerate(g.labels):
        if lab.role.tag in CENTRAL_TAGS:
            groups.setdefault((lab.cell, lab.level), []).append(v)
    central = 0
    for members in groups.values():
        member_set = set(members)
        ids = {v: i for i, v in enumerate(members)}
        edges = [
            (ids[u], ids[v]) for u, v in g.edges if u in member_set and v in member_set
        ]
        central += count_c4(LabeledGraph(len(members), tuple(edges)))
    total = count_c4(g)
    return central, total - central


def census(g: LabeledGraph) -> CensusReport:
    """Full explicit-graph census using the fast counters."""
    c4 = count_c4(g)
    if g.labels is not None and {lab.role.tag for lab in g.labels} >= {"t", "b", "c"}:
        central, stray = classify_c4(g)
        assert central + stray == c4
    else:
        central = 0
    return _explicit_report(g, c4, central, count_c6(g), count_theta222(g))


# ---------------------------------------------------------------------------
# per-cube census of the infinite lattice

FullVoltage = tuple[int, int, int, int]  # dx, dy, dz, bit mask


def _path_voltage(volt: VoltageAssignment, w1: int, c: int, w2: int) -> FullVoltage:
    d1, d2 = volt.disp(w1, c), volt.disp(c, w2)
    return (d1[0] + d2[0], d1[1] + d2[1], d1[2] + d2[2], volt.bits(w1, c) ^ volt.bits(c, w2))


def _v_add(a: FullVoltage, b: FullVoltage) -> FullVoltage:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] ^ b[3])


def _v_neg(a: FullVoltage) -> FullVoltage:
    return (-a[0], -a[1], -a[2], a[3])


def voltage_census(base: BaseGraph, volt: VoltageAssignment) -> CensusReport:
    """Per-cube counts for the infinite lattice.

    A base cycle contributes one cycle to the derived cover per fiber element,
    so per fundamental cube C4 = 2^s * #{4-cycles with zero total voltage},
    C6 likewise, and theta counts hub pairs with three common-neighbor paths
    of equal total voltage.  Averages divide by the 2^s * 2d vertices a cube
    owns.
    """
    g = base.graph
    d, s = base.d, volt.s
    whites, blacks = base.whites, base.blacks
    assert g.labels is not None
    t_id = next(v for v in whites if base.role_of(v).tag == "t")
    b_id = next(v for v in whites if base.role_of(v).tag == "b")

    paths: dict[tuple[int, int], list[tuple[int, FullVoltage]]] = {}
    for w1, w2 in itertools.combinations(whites, 2):
        paths[(w1, w2)] = [(c, _path_voltage(volt, w1, c, w2)) for c in blacks]

    zero4 = 0
    central4 = 0
    theta = 0
    for pair, plist in paths.items():
        counts = Counter(v for _, v in plist)
        pair_c4 = sum(comb(m, 2) for m in counts.values())
        zero4 += pair_c4
        theta += sum(comb(m, 3) for m in counts.values())
        if pair in ((t_id, b_id), (b_id, t_id)):
            central4 += pair_c4
            assert counts[(0, 0, 0, 0)] == d, "central hub paths must carry zero voltage"

    # theta hubs may also be a black pair with three white middles (4-cycles
    # and 6-cycles are already counted once via their white diagonals/triples)
    for c1, c2 in itertools.combinations(blacks, 2):
        counts = Counter(_path_voltage(volt, c1, w, c2) for w in whites)
        theta += sum(comb(m, 3) for m in counts.values())

    zero6 = 0
    for w1, w2, w3 in itertools.combinations(whites, 3):
        pa = paths[(w1, w2)]
        pb = paths[(w2, w3)]
        pc = [(c, _v_neg(v)) for c, v in paths[(w1, w3)]]  # oriented w3 -> w1
        cnt_c = Counter(v for _, v in pc)
        val_c = dict(pc)
        for ca, ga in pa:
            for cb, gb in pb:
                if ca == cb:
                    continue
                need = _v_neg(_v_add(ga, gb))
                hits = cnt_c.get(need, 0)
                if hits:
                    if val_c[ca] == need:
                        hits -= 1
                    if val_c[cb] == need:
                        hits -= 1
                    zero6 += hits

    scale = 1 << s
    owned = scale * 2 * d
    return CensusReport(
        c4_total=scale * zero4,
        c4_central=scale * central4,
        c4_stray=scale * (zero4 - central4),
        c6=scale * zero6,
        theta222=scale * theta,
        c4_bar=Fraction(scale * zero4, owned),
        c6_bar=Fraction(scale * zero6, owned),
        theta_bar=Fraction(scale * theta, owned),
        scope="per-cube",
    )
