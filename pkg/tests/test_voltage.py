import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_bits_voltage
from thetalattice.errors import DegreeTooSmall, TorusTooSmall
from thetalattice.graphs import (
    Role,
    VertexLabel,
    connected_components,
    from_labeled_vertices,
    validate,
)
from thetalattice.voltage import (
    LiftCertificate,
    build_base_graph,
    canonical_edge_order,
    derived_torus,
    full_unit_graph,
    fundamental_cycle_voltages,
    make_bits,
    stage_bitstrings,
    voltage_group_generated,
)
from thetalattice.graphs import build_root_unit_graph


def test_base_graph_d5_counts():
    base, volt = build_base_graph(5)
    assert base.graph.vertex_count == 10
    assert len(base.graph.edges) == 25
    assert base.graph.degree_histogram == {5: 10}
    assert validate(base.graph, expect_regular=5).passed


def test_base_graph_d10_counts():
    base, _ = build_base_graph(10)
    assert base.graph.vertex_count == 20
    assert len(base.graph.edges) == 100
    assert base.graph.degree_histogram == {10: 20}


def test_base_graph_rejects_small_degree():
    with pytest.raises(DegreeTooSmall):
        build_base_graph(4)


def test_base_graph_displacements():
    base, volt = build_base_graph(5)
    ids = base.graph.label_index()
    vx = ids[(Role("vx"), "", (0, 0, 0))]
    for i in range(1, 6):
        ci = ids[(Role("c", i), "", (0, 0, 0))]
        expected = (1, 0, 0) if i == 1 else (0, 0, 0)
        assert volt.disp(vx, ci) == expected
        assert volt.disp(ci, vx) == tuple(-x for x in expected)
    vy = ids[(Role("vy"), "", (0, 0, 0))]
    c1 = ids[(Role("c", 1), "", (0, 0, 0))]
    assert volt.disp(vy, c1) == (0, 1, 0)


def test_base_edge_count_is_d_noncentral_plus_central():
    for d in (5, 6, 8):
        base, _ = build_base_graph(d)
        assert len(base.central_edges) == 2 * d
        assert len(base.noncentral_edges) == d * d - 2 * d


# ---------------------------------------------------------------------------
# derived torus

def test_derived_torus_d5_counts():
    base, volt = build_base_graph(5)
    torus = derived_torus(base, volt, 2)
    assert torus.vertex_count == 80
    assert len(torus.edges) == 200
    assert validate(torus, expect_regular=5).passed


def test_derived_torus_rejects_n1():
    base, volt = build_base_graph(5)
    with pytest.raises(TorusTooSmall):
        derived_torus(base, volt, 1)


def test_derived_torus_zero_bits_two_components():
    base, volt0 = build_base_graph(5)
    volt = volt0.with_bits(1, {})
    torus = derived_torus(base, volt, 2)
    assert torus.vertex_count == 160
    comps = connected_components(torus)
    assert len(comps) == 2
    assert sorted(len(c) for c in comps) == [80, 80]
    # the two level slices are isomorphic: dropping the level bit yields the
    # same labeled edge set for both
    def strip(comp):
        edges = set()
        for u, v in torus.edges:
            if u in comp and v in comp:
                lu, lv = torus.labels[u], torus.labels[v]
                a = (lu.role.rank, lu.cell)
                b = (lv.role.rank, lv.cell)
                edges.add((min(a, b), max(a, b)))
        return edges

    assert strip(set(comps[0])) == strip(set(comps[1]))


@settings(max_examples=10, deadline=None)
@given(
    st.integers(min_value=5, max_value=6),
    st.integers(min_value=0, max_value=2),
    st.integers(min_value=2, max_value=3),
    st.integers(min_value=0, max_value=10_000),
)
def test_torus_count_conservation(d, s, n, seed):
    base, volt0 = build_base_graph(d)
    volt = random_bits_voltage(base, volt0, s, seed) if s else volt0
    torus = derived_torus(base, volt, n)
    assert torus.vertex_count == n**3 * 2**s * 2 * d
    assert len(torus.edges) == n**3 * 2**s * d * d
    report = validate(torus, expect_regular=d)
    assert report.passed


# ---------------------------------------------------------------------------
# full unit graph

def test_full_unit_graph_s0_is_root():
    root = build_root_unit_graph(5)
    _, volt = build_base_graph(5)
    fug = full_unit_graph(root, volt)
    assert fug.labels == root.labels
    assert fug.edges == root.edges


def test_full_unit_graph_zero_bits_two_copies():
    root = build_root_unit_graph(5)
    base, volt0 = build_base_graph(5)
    fug = full_unit_graph(root, volt0.with_bits(1, {}))
    assert fug.vertex_count == 2 * root.vertex_count
    assert len(connected_components(fug)) == 2


def test_full_unit_graph_d5_s3_counts(certified=None):
    root = build_root_unit_graph(5)
    base, volt0 = build_base_graph(5)
    volt = random_bits_voltage(base, volt0, 3, seed=11)
    fug = full_unit_graph(root, volt)
    assert fug.vertex_count == 104
    assert len(fug.edges) == 200
    from thetalattice.graphs import central_copies

    assert len(central_copies(fug)) == 8


def test_full_unit_graph_equals_iterated_two_lift():
    from thetalattice.graphs import Signing, two_lift
    from thetalattice.voltage import _root_edge_to_base_edge

    d, s = 5, 2
    root = build_root_unit_graph(d)
    base, volt0 = build_base_graph(d)
    volt = random_bits_voltage(base, volt0, s, seed=23)
    fug = full_unit_graph(root, volt)

    g = root
    root_ids = root.label_index()
    for stage in range(s):
        crossed = []
        for u, v in g.edges:
            lu, lv = g.labels[u], g.labels[v]
            ru = root_ids[(lu.role, "", lu.cell)]
            rv = root_ids[(lv.role, "", lv.cell)]
            e = _root_edge_to_base_edge(root, base, ru, rv)
            if (volt.level_bits.get(e, 0) >> stage) & 1:
                crossed.append((u, v))
        g = two_lift(g, Signing.from_crossed(g, crossed))
    assert g.labels == fug.labels
    assert g.edges == fug.edges


@pytest.mark.parametrize("d,s", [(5, 1), (5, 2), (5, 3), (6, 2), (6, 3)])
def test_derived_torus_equals_glued_full_unit_graphs(d, s):
    """Cover consistency: gluing n^3 copies of the full unit graph along
    identified connector vertices, level-preservingly, reproduces the torus."""
    n = 2
    root = build_root_unit_graph(d)
    base, volt0 = build_base_graph(d)
    volt = random_bits_voltage(base, volt0, s, seed=37)
    fug = full_unit_graph(root, volt)
    torus = derived_torus(base, volt, n)

    merge = {"rx": "vx", "ry": "vy", "rz": "vz", "lx": "vx", "ly": "vy", "lz": "vz"}
    shifts = {"lx": (1, 0, 0), "ly": (0, 1, 0), "lz": (0, 0, 1)}

    def place(lab, cell):
        tag = lab.role.tag
        if tag in ("rx", "ry", "rz"):
            return VertexLabel(Role(merge[tag]), lab.level, cell)
        if tag in ("lx", "ly", "lz"):
            sh = shifts[tag]
            return VertexLabel(
                Role(merge[tag]),
                lab.level,
                tuple((cell[i] - sh[i]) % n for i in range(3)),
            )
        return VertexLabel(lab.role, lab.level, cell)

    cells = [(x, y, z) for x in range(n) for y in range(n) for z in range(n)]
    labels = {place(lab, cell) for cell in cells for lab in fug.labels}
    edges = [
        (place(fug.labels[u], cell), place(fug.labels[v], cell))
        for cell in cells
        for u, v in fug.edges
    ]
    glued = from_labeled_vertices(labels, edges, d)
    assert glued.labels == torus.labels
    assert glued.edges == torus.edges


# ---------------------------------------------------------------------------
# voltage group generation

def test_voltage_group_generated_s0():
    base, volt = build_base_graph(5)
    assert voltage_group_generated(base, volt)


def test_voltage_group_not_generated_zero_bits():
    base, volt0 = build_base_graph(5)
    assert not voltage_group_generated(base, volt0.with_bits(1, {}))


def test_voltage_group_generated_certified(certified):
    cert, base, volt, _ = certified(5)
    assert voltage_group_generated(base, volt)
    assert cert.flags.voltage_group_generated


def test_fundamental_cycles_count():
    for d in (5, 6):
        base, volt = build_base_graph(d)
        cyc = fundamental_cycle_voltages(base, volt)
        assert len(cyc) == d * d - 2 * d + 1  # |E| - |V| + 1


# ---------------------------------------------------------------------------
# certificate serialization

def test_certificate_roundtrip(certified):
    cert, base, volt, _ = certified(5)
    text = cert.to_json()
    back = LiftCertificate.from_json(text)
    assert back == cert
    assert back.to_json() == text
    data = json.loads(text)
    assert set(data) == {
        "d",
        "s",
        "level_bits",
        "edge_order",
        "flags",
        "constraint_count",
        "seed",
    }
    assert len(data["level_bits"]) == cert.s
    assert all(len(row) == 25 for row in data["level_bits"])


def test_certificate_voltage_roundtrip(certified):
    cert, base, volt, _ = certified(5)
    rebuilt = cert.to_voltage(base)
    assert rebuilt.s == volt.s
    assert dict(rebuilt.level_bits) == dict(volt.level_bits)
    assert stage_bitstrings(base, rebuilt) == cert.stage_bits


def test_canonical_edge_order_sorted_by_roles():
    base, _ = build_base_graph(5)
    order = canonical_edge_order(base)
    assert order[0] == ("c1", "t")
    assert len(order) == 25
    assert order == tuple(sorted(order, key=lambda p: (Role.parse(p[0]).rank, Role.parse(p[1]).rank)))


def test_make_bits_rejects_central_and_wide_masks():
    base, _ = build_base_graph(5)
    central = next(iter(base.central_edges))
    with pytest.raises(ValueError):
        make_bits(base, 2, {central: 1})
    noncentral = base.noncentral_edges[0]
    with pytest.raises(ValueError):
        make_bits(base, 2, {noncentral: 4})
