import random

import pytest

from thetalattice.graphs import LabeledGraph, Role, VertexLabel, from_labeled_vertices
from thetalattice.voltage import make_bits


def plain_graph(n, edges):
    """Unlabeled simple graph for counting tests."""
    return LabeledGraph(n, tuple(edges))


def cycle_graph(k):
    return plain_graph(k, [(i, (i + 1) % k) for i in range(k)])


def complete_bipartite(m, n):
    return plain_graph(m + n, [(i, m + j) for i in range(m) for j in range(n)])


def labeled_k2d(d):
    """K_{2,d} with hub/spoke roles (a standalone central copy)."""
    t, b = VertexLabel(Role("t")), VertexLabel(Role("b"))
    c = [VertexLabel(Role("c", i)) for i in range(1, d + 1)]
    edges = [(t, ci) for ci in c] + [(b, ci) for ci in c]
    return from_labeled_vertices([t, b, *c], edges, d)


def labeled_cycle4():
    """A lone labeled 4-cycle with no central edges (c-f alternation)."""
    c1, c2 = VertexLabel(Role("c", 1)), VertexLabel(Role("c", 2))
    f1, f2 = VertexLabel(Role("f", 1)), VertexLabel(Role("f", 2))
    return from_labeled_vertices([c1, f1, c2, f2], [(c1, f1), (f1, c2), (c2, f2), (f2, c1)])


def random_graph(rng, n, p):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return plain_graph(n, edges)


def random_bits_voltage(base, volt0, s, seed):
    rng = random.Random(seed)
    bits = {e: rng.getrandbits(s) for e in base.noncentral_edges}
    return volt0.with_bits(s, make_bits(base, s, bits))


@pytest.fixture(scope="session")
def certified():
    """Lazily certified lattices shared across tests, with elapsed times."""
    import time

    from thetalattice.certify import certify

    cache = {}

    def get(d, seed=1):
        if d not in cache:
            t0 = time.perf_counter()
            cert, base, volt = certify(d, seed=seed)
            cache[d] = (cert, base, volt, time.perf_counter() - t0)
        return cache[d]

    return get
