"""Straight-line placement of a full unit graph in R^3 with exact verification.

Connector vertices rx/ry/rz are sampled in the outer face boxes, everything
else in the center box; lx/ly/lz positions are the matching-level rx/ry/rz
points shifted back by one unit, realizing the gluing.  A try is good when,
over the full 3x3x3 block of unit translates, edge segments meet only at
shared endpoints.  All predicates run in integer arithmetic on grid-scaled
coordinates, so verdicts are exact and platform-independent.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import AttemptsExhausted, GridTooCoarse, MalformedGraph
from .graphs import LabeledGraph, Role

Point = tuple[Fraction, Fraction, Fraction]
IPoint = tuple[int, int, int]

THIRD = Fraction(1, 3)
CENTER = (THIRD, 2 * THIRD)
OUTER = (2 * THIRD, Fraction(1))
DEFAULT_RESOLUTION = Fraction(1, 2**20)

# role tag -> (x-interval, y-interval, z-interval); lx/ly/lz are derived
_BOXES = {
    "rx": (OUTER, CENTER, CENTER),
    "ry": (CENTER, OUTER, CENTER),
    "rz": (CENTER, CENTER, OUTER),
}
_DERIVED = {"lx": ("rx", (1, 0, 0)), "ly": ("ry", (0, 1, 0)), "lz": ("rz", (0, 0, 1))}


@dataclass(frozen=True)
class RolePartition:
    s1: frozenset[Role]
    s2: frozenset[Role]
    s3: frozenset[Role]
    s4: frozenset[Role]
    s5: frozenset[Role]


def partition_roles(d: int) -> RolePartition:
    """The five disjoint role sets steering the placement: the three right
    connectors alone, the left connectors together, and everything else."""
    if d < 5:
        raise ValueError("d must be >= 5")
    rest = {Role("t"), Role("b")}
    rest |= {Role("c", i) for i in range(1, d + 1)}
    rest |= {Role("f", j) for j in range(1, d - 4)}
    return RolePartition(
        s1=frozenset({Role("rx")}),
        s2=frozenset({Role("ry")}),
        s3=frozenset({Role("rz")}),
        s4=frozenset({Role("lx"), Role("ly"), Role("lz")}),
        s5=frozenset(rest),
    )


@dataclass(frozen=True)
class Try:
    """One candidate placement: vertex id -> rational point."""

    points: Mapping[int, Point]
    grid_resolution: Fraction

    def scaled(self) -> tuple[dict[int, IPoint], int]:
        """Integer coordinates in grid units plus the units-per-1 scale."""
        denom = 1
        for p in self.points.values():
            for c in p:
                denom = denom * c.denominator // math.gcd(denom, c.denominator)
        scaled = {
            v: tuple(int(c * denom) for c in p) for v, p in self.points.items()
        }
        return scaled, denom


def _grid_range(lo: Fraction, hi: Fraction, res: Fraction) -> tuple[int, int]:
    """Integer k range with lo < k*res < hi, or GridTooCoarse."""
    kmin = math.floor(lo / res) + 1
    kmax = math.ceil(hi / res) - 1
    if kmin > kmax:
        raise GridTooCoarse(f"no grid point of resolution {res} inside ({lo},{hi})")
    return kmin, kmax


def sample_try(
    fug: LabeledGraph, seed: int, grid_resolution: Fraction = DEFAULT_RESOLUTION
) -> Try:
    """Uniform placement on the rational grid inside each role's open box,
    rejection-sampled to distinct points; deterministic in the seed."""
    if fug.labels is None:
        raise MalformedGraph("sample_try needs a labeled full unit graph")
    res = Fraction(grid_resolution)
    rng = random.Random(seed)
    points: dict[int, Point] = {}
    used: set[Point] = set()
    by_key = fug.label_index()
    for v in range(fug.vertex_count):
        lab = fug.labels[v]
        tag = lab.role.tag
        if tag in _DERIVED:
            continue
        box = _BOXES.get(tag, (CENTER, CENTER, CENTER))
        ranges = [_grid_range(lo, hi, res) for lo, hi in box]
        for _ in range(1000):
            p = tuple(res * rng.randint(kmin, kmax) for kmin, kmax in ranges)
            if p not in used:
                break
        else:
            raise GridTooCoarse(f"cannot place distinct points at resolution {res}")
        used.add(p)
        points[v] = p
    for v in range(fug.vertex_count):
        lab = fug.labels[v]
        if lab.role.tag not in _DERIVED:
            continue
        src_tag, shift = _DERIVED[lab.role.tag]
        src = by_key[(Role(src_tag), lab.level, lab.cell)]
        sp = points[src]
        points[v] = (sp[0] - shift[0], sp[1] - shift[1], sp[2] - shift[2])
    return Try(points, res)


# ---------------------------------------------------------------------------
# exact integer segment predicates

def _sub(a: IPoint, b: IPoint) -> IPoint:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _cross(a: IPoint, b: IPoint) -> IPoint:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _dot(a: IPoint, b: IPoint) -> int:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def segment_pair_ok(p1: IPoint, p2: IPoint, q1: IPoint, q2: IPoint) -> bool:
    """True iff closed segments p1p2 and q1q2 meet only at a shared endpoint.

    Collinear segments that overlap beyond a shared endpoint count as bad.
    """
    shared = {p1, p2} & {q1, q2}
    if len(shared) >= 2:
        return False
    if len(shared) == 1:
        a = shared.pop()
        b = p2 if p1 == a else p1
        c = q2 if q1 == a else q1
        u, v = _sub(b, a), _sub(c, a)
        if _cross(u, v) != (0, 0, 0):
            return True
        return _dot(u, v) < 0  # opposite rays only touch at the vertex
    u = _sub(p2, p1)
    v = _sub(q2, q1)
    w = _sub(q1, p1)
    n = _cross(u, v)
    if n == (0, 0, 0):
        if _cross(w, u) != (0, 0, 0):
            return True  # parallel, different lines
        # collinear: closed parameter intervals along u must not meet
        uu = _dot(u, u)
        t1, t2 = _dot(w, u), _dot(_sub(q2, p1), u)
        lo, hi = min(t1, t2), max(t1, t2)
        return hi < 0 or lo > uu
    if _dot(w, n) != 0:
        return True  # skew lines
    den = _dot(n, n)
    s_num = _dot(_cross(w, v), n)
    t_num = _dot(_cross(w, u), n)
    if 0 <= s_num <= den and 0 <= t_num <= den:
        return False  # proper crossing or endpoint-on-interior touch
    return True


def _segments_of_block(t: Try, fug: LabeledGraph) -> list[tuple[IPoint, IPoint]]:
    scaled, denom = t.scaled()
    segs = []
    for u, v in fug.edges:
        p, q = scaled[u], scaled[v]
        for ox in (-denom, 0, denom):
            for oy in (-denom, 0, denom):
                for oz in (-denom, 0, denom):
                    segs.append(
                        (
                            (p[0] + ox, p[1] + oy, p[2] + oz),
                            (q[0] + ox, q[1] + oy, q[2] + oz),
                        )
                    )
    return segs


def is_good_try(t: Try, fug: LabeledGraph) -> bool:
    """Exact check that over the 3x3x3 block of unit translates every pair of
    intersecting edge segments meets only at a shared endpoint.

    A conservative spatial-bucket prefilter (quarter-unit buckets on bounding
    boxes) keeps the pair count tractable without affecting exactness.
    """
    if fug.labels is None:
        raise MalformedGraph("is_good_try needs a labeled graph")
    missing = set(range(fug.vertex_count)) - set(t.points)
    if missing:
        raise ValueError(f"try does not cover vertices {sorted(missing)}")
    segs = _segments_of_block(t, fug)
    _, denom = t.scaled()
    bucket = max(denom // 4, 1)
    boxes = []
    for p, q in segs:
        boxes.append(
            tuple(
                (min(p[i], q[i]) // bucket, max(p[i], q[i]) // bucket) for i in range(3)
            )
        )
    grid: dict[tuple[int, int, int], list[int]] = {}
    for idx, b in enumerate(boxes):
        for bx in range(b[0][0], b[0][1] + 1):
            for by in range(b[1][0], b[1][1] + 1):
                for bz in range(b[2][0], b[2][1] + 1):
                    grid.setdefault((bx, by, bz), []).append(idx)
    for cell, members in grid.items():
        for ii in range(len(members)):
            i = members[ii]
            bi = boxes[i]
            for jj in range(ii + 1, len(members)):
                j = members[jj]
                bj = boxes[j]
                # each candidate pair is examined once, in the smallest
                # common bucket of its bounding boxes
                common = (
                    max(bi[0][0], bj[0][0]),
                    max(bi[1][0], bj[1][0]),
                    max(bi[2][0], bj[2][0]),
                )
                if common != cell:
                    continue
                if any(
                    max(bi[k][0], bj[k][0]) > min(bi[k][1], bj[k][1]) for k in range(3)
                ):
                    continue
                if not segment_pair_ok(*segs[i], *segs[j]):
                    return False
    return True


def find_good_try(
    fug: LabeledGraph,
    seed: int,
    max_attempts: int = 1000,
    grid_resolution: Fraction = DEFAULT_RESOLUTION,
) -> tuple[Try, int]:
    """First good try from the seed-offset attempt stream, with its attempt
    count (1-based)."""
    if max_attempts < 1:
        raise ValueError("max_attempts must be >= 1")
    for k in range(max_attempts):
        t = sample_try(fug, seed + k, grid_resolution)
        if is_good_try(t, fug):
            return t, k + 1
    raise AttemptsExhausted(f"no good try within {max_attempts} attempts")


def check_embedding_properties(t: Try, fug: LabeledGraph) -> dict[str, bool]:
    """The lattice placement checklist, computed exactly.

    straight_line_segments and integer_translation_invariant hold by
    construction (edges are stored as endpoint pairs; the block is built from
    integer shifts); vertex interiority and edge locality are computed.
    """
    interior = all(
        all(c.denominator != 1 for c in p) for p in t.points.values()
    )
    local = True
    for u, v in fug.edges:
        cu = tuple(math.floor(c) for c in t.points[u])
        cv = tuple(math.floor(c) for c in t.points[v])
        diff = sum(abs(a - b) for a, b in zip(cu, cv))
        if diff > 1:
            local = False
            break
    return {
        "straight_line_segments": True,
        "integer_translation_invariant": True,
        "vertices_interior_of_cubes": interior,
        "edges_within_cube_or_nearest_neighbor": local,
    }


# ---------------------------------------------------------------------------
# serialization

def try_to_json_dict(t: Try, attempts: int | None = None, seed: int | None = None) -> dict:
    out = {
        "grid_resolution": f"{t.grid_resolution.numerator}/{t.grid_resolution.denominator}",
        "points": {
            str(v): [f"{c.numerator}/{c.denominator}" for c in p]
            for v, p in sorted(t.points.items())
        },
    }
    if attempts is not None:
        out["attempts"] = attempts
    if seed is not None:
        out["seed"] = seed
    return out


def try_from_json_dict(data: dict) -> Try:
    points = {
        int(v): tuple(Fraction(c) for c in p) for v, p in data["points"].items()
    }
    return Try(points, Fraction(data["grid_resolution"]))


def try_to_obj(t: Try, fug: LabeledGraph) -> str:
    """OBJ-style line-set export (float coordinates, for viewers only)."""
    lines = []
    order = sorted(t.points)
    pos = {v: i + 1 for i, v in enumerate(order)}
    for v in order:
        x, y, z = (float(c) for c in t.points[v])
        lines.append(f"v {x:.9f} {y:.9f} {z:.9f}")
    for u, v in fug.edges:
        lines.append(f"l {pos[u]} {pos[v]}")
    return "\n".join(lines) + "\n"
