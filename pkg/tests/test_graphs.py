import itertools
import math
from fractions import Fraction as F

import pytest

from powergraph import graphs as gr
from powergraph.arith import primes_up_to
from powergraph.groups import Cyclic, Q, Qn, Unitary, Z, Zn, identity
from powergraph.heights import HeightFunction, g_p

W = gr.WindowSpec


def edge_labels(g):
    return {frozenset((g.vertices[i], g.vertices[j])) for i, j in g.edges}


def arc_labels(g):
    return {(g.vertices[i], g.vertices[j]) for i, j in g.arcs}


def test_build_window_examples():
    assert gr.build_window(Z(), W(bound=3)) == [-3, -2, -1, 0, 1, 2, 3]
    got = gr.build_window(Unitary(g_p(2)), W(num_bound=3, den_bound=4))
    expected = {0} | {s * F(m, n) for s in (1, -1) for m, n in [(1, 1), (2, 1), (3, 1), (1, 2), (3, 2), (1, 4), (3, 4)]}
    assert set(got) == expected and len(got) == len(expected)
    assert gr.build_window(Cyclic(6), W()) == [0, 1, 2, 3, 4, 5]


def test_build_window_properties():
    cases = [
        (Z(), W(bound=5)),
        (Zn(2), W(bound=2)),
        (Q(), W(num_bound=4, den_bound=5)),
        (Qn(2), W(num_bound=1, den_bound=2)),
        (Unitary(HeightFunction(((3, 1),))), W(num_bound=5, den_bound=9)),
    ]
    for G, spec in cases:
        verts = gr.build_window(G, spec)
        assert len(set(verts)) == len(verts)
        assert verts == sorted(verts)
        assert identity(G) in verts
        neg = {tuple(-c for c in x) if isinstance(x, tuple) else -x for x in verts}
        assert neg == set(verts)


def test_build_window_rejects_mismatch():
    with pytest.raises(ValueError):
        gr.build_window(Z(), W(num_bound=3, den_bound=3))
    with pytest.raises(ValueError):
        gr.build_window(Q(), W(bound=3))


def test_power_graph_small_Z():
    g = gr.power_graph(Z(), W(bound=2))
    expected = {frozenset(p) for p in [(1, 2), (-1, -2), (1, -1), (2, -2), (1, -2), (-1, 2)]}
    assert edge_labels(g) == expected
    g1 = gr.power_graph(Z(), W(bound=1))
    assert edge_labels(g1) == {frozenset((1, -1))}
    assert not g1.neighbours(g1.index(0))


def test_power_graph_C6_is_K6_minus_two_edges():
    g = gr.finite_cyclic_power_graph(6)
    k6 = {frozenset(p) for p in itertools.combinations(range(6), 2)}
    assert edge_labels(g) == k6 - {frozenset((2, 3)), frozenset((4, 3))}
    assert len(g.edges) == 13


def test_directed_power_graph_small_Z():
    d = gr.directed_power_graph(Z(), W(bound=2))
    expected = {(1, 2), (1, -2), (-1, 2), (-1, -2), (1, -1), (-1, 1), (2, -2), (-2, 2)}
    assert arc_labels(d) == expected
    d1 = gr.directed_power_graph(Z(), W(bound=1))
    assert arc_labels(d1) == {(1, -1), (-1, 1)}


def test_directed_unitary_window():
    d = gr.directed_power_graph(Unitary(g_p(2)), W(num_bound=1, den_bound=2))
    assert (F(1, 2), F(1)) in arc_labels(d)
    assert (F(1), F(1, 2)) not in arc_labels(d)


@pytest.mark.parametrize("G, spec", [
    (Z(), W(bound=30)),
    (Zn(2), W(bound=3)),
    (Q(), W(num_bound=5, den_bound=5)),
    (Qn(2), W(num_bound=2, den_bound=2)),
    (Unitary(g_p(3)), W(num_bound=10, den_bound=27)),
    (Cyclic(12), W()),
])
def test_directed_forgets_to_undirected(G, spec):
    d = gr.directed_power_graph(G, spec)
    u = gr.power_graph(G, spec)
    assert d.undirected() == u
    assert u.edges == {(min(i, j), max(i, j)) for i, j in d.arcs}


@pytest.mark.parametrize("G, spec", [
    (Z(), W(bound=10)),
    (Zn(2), W(bound=3)),
    (Zn(3), W(bound=1)),
    (Q(), W(num_bound=4, den_bound=4)),
    (Qn(2), W(num_bound=2, den_bound=3)),
    (Unitary(g_p(2)), W(num_bound=5, den_bound=16)),
])
def test_identity_is_only_isolated_vertex(G, spec):
    g = gr.power_graph(G, spec)
    isolated = [g.vertices[i] for i in range(len(g)) if not g.neighbours(i)]
    assert isolated == [identity(G)]


def test_s_set_window_examples():
    spec = W(bound=20)
    assert gr.s_set_window(Z(), spec, 4, 2) == {6, -6, 10, -10, 14, -14, 18, -18}
    assert gr.s_set_window(Z(), spec, 5, -5) == set()
    assert gr.s_set_window(Z(), spec, 2, 4) == set()
    with pytest.raises(ValueError, match="adjacent pairs"):
        gr.s_set_window(Z(), spec, 2, 3)


def test_s_set_window_matches_adjacency_version():
    g = gr.power_graph(Z(), W(bound=40))
    for i, j in g.edges:
        for u, v in ((i, j), (j, i)):
            by_elements = gr.s_set_window(Z(), g.vertices, g.vertices[u], g.vertices[v])
            by_graph = {g.vertices[k] for k in gr.s_set_indices(g, u, v)}
            assert by_elements == by_graph


def test_s_set_exact_examples():
    r = gr.s_set_exact_Z(2, 12)
    assert r.finite and r.members == {3, -3}
    r = gr.s_set_exact_Z(2, 4)
    assert r.finite and r.members == frozenset()
    r = gr.s_set_exact_Z(4, 2)
    assert not r.finite and r.witness == 6
    assert gr.s_set_exact_Z(5, -5).members == frozenset()
    assert gr.s_set_exact_Z(-12, 4).witness == 8
    with pytest.raises(ValueError):
        gr.s_set_exact_Z(2, 3)
    with pytest.raises(ValueError):
        gr.s_set_exact_Z(0, 3)


def test_s_set_exact_infinite_family_members_are_genuine():
    for a in range(-20, 21):
        for b in range(-20, 21):
            if a == 0 or b == 0 or a == b or a % b or b % a == 0:
                continue
            r = gr.s_set_exact_Z(a, b)
            assert not r.finite
            window = gr.s_set_window(Z(), W(bound=120), a, b)
            assert r.witness in window
            assert r.members_within(120) <= window


def test_s_set_exact_matches_window_for_divisor_pairs():
    for b in range(-50, 51):
        if b == 0:
            continue
        for a in range(-abs(b), abs(b) + 1):
            if a == 0 or a == b or b % a:
                continue
            exact = gr.s_set_exact_Z(a, b)
            assert exact.finite
            assert set(exact.members) == gr.s_set_window(Z(), W(bound=abs(b)), a, b)


def test_s_set_exact_infinite_grows_with_window():
    for a in range(-20, 21):
        for b in range(-20, 21):
            if a == 0 or b == 0 or a == b or a % b or b % a == 0:
                continue
            sizes = [len(gr.s_set_window(Z(), W(bound=N), a, b)) for N in (50, 100, 200)]
            assert sizes[0] < sizes[1] < sizes[2]


def test_neighborhood_complement_split_examples():
    g = gr.power_graph(Z(), W(bound=12))
    parts = gr.neighborhood_complement_split(g, 2)
    part_of = {x: k for k, part in enumerate(parts) for x in part}
    assert part_of[4] == part_of[6] == part_of[10]
    assert part_of[1] != part_of[4] and part_of[-1] != part_of[4]
    assert sorted(x for part in parts for x in part) == sorted(g.vertices[j] for j in g.neighbours(g.index(2)))
    # -2 is adjacent to every neighbour of 2
    assert [-2] in parts
    with pytest.raises(ValueError, match="identity has no neighborhood"):
        gr.neighborhood_complement_split(g, 0)


def test_neighborhood_complement_split_single_neighbour():
    g = gr.power_graph(Z(), W(bound=1))
    assert gr.neighborhood_complement_split(g, 1) == [[-1]]


def test_components_examples():
    g = gr.power_graph(Zn(2), W(bound=3))
    comps = [c for c in gr.components(g) if c != [(0, 0)]]
    for comp in comps:
        v = next(x for x in comp if math.gcd(*x) == 1)
        multiples = {tuple(k * c for c in v) for k in range(-3, 4) if k}
        assert set(comp) == multiples & set(g.vertices)
    z = gr.power_graph(Z(), W(bound=15))
    assert sorted(map(len, gr.components(z))) == [1, 30]
    empty = gr.WindowGraph(Z(), [], set())
    assert gr.components(empty) == []


def test_automorphism_orbits():
    g = gr.finite_cyclic_power_graph(6)
    assert gr.automorphism_orbits(g) == [[0, 1, 5], [2, 4], [3]]
    k5 = gr.WindowGraph(Cyclic(5), list(range(5)), set(itertools.combinations(range(5), 2)))
    assert gr.automorphism_orbits(k5) == [[0, 1, 2, 3, 4]]
    big = gr.power_graph(Z(), W(bound=6))
    with pytest.raises(ValueError, match="brute force bound exceeded"):
        gr.automorphism_orbits(big)


def test_lemma_Q_in_out_separation_is_exact():
    for G, spec in [(Z(), W(bound=60)), (Unitary(g_p(2)), W(num_bound=40, den_bound=16)), (Q(), W(num_bound=8, den_bound=8))]:
        d = gr.directed_power_graph(G, spec)
        for i in range(len(d)):
            if not d.neighbours(i):
                continue
            for y in gr.in_neighbours(d, i):
                for z in gr.out_neighbours(d, i):
                    assert y == z or d.has_edge(y, z)


def test_lemma_Q_out_complement_connected_with_margin():
    for G, spec in [(Z(), W(bound=100)), (Unitary(g_p(2)), W(num_bound=100, den_bound=32))]:
        d = gr.directed_power_graph(G, spec)
        members = set(d.vertices)
        for x in d.vertices:
            if x == 0 or not all(p * x in members for p in primes_up_to(13)):
                continue
            i = d.index(x)
            strict_out = {j for j in gr.out_neighbours(d, i) if d.vertices[j] != -x}
            if len(strict_out) >= 2:
                assert len(gr.complement_components(d, strict_out)) == 1


def test_lemma_component_in_unitary_window():
    for h in (g_p(2), HeightFunction(((2, 1), (3, 1))), HeightFunction()):
        g = gr.power_graph(Unitary(h), W(num_bound=12, den_bound=12))
        comp_of = {x: k for k, comp in enumerate(gr.components(g)) for x in comp}
        for x, y in itertools.product(g.vertices, repeat=2):
            if x == 0 or y == 0 or comp_of[x] != comp_of[y]:
                continue
            if x - y in comp_of:
                assert x - y == 0 or comp_of[x - y] == comp_of[x]


def test_complement_component_counts_across_windows():
    # how many pieces N(2)' splits into as the window grows; recorded, not bounded
    counts = {}
    for N in (25, 50, 100, 200):
        g = gr.power_graph(Z(), W(bound=N))
        counts[N] = len(gr.neighborhood_complement_split(g, 2))
    print("components of N(2)' by window:", counts)
    assert counts[100] == counts[200]


@pytest.mark.parametrize("G, spec, directed", [
    (Z(), W(bound=6), False),
    (Z(), W(bound=6), True),
    (Zn(2), W(bound=2), True),
    (Qn(2), W(num_bound=1, den_bound=2), False),
    (Unitary(HeightFunction(((2, 2), (5, 1)))), W(num_bound=4, den_bound=20), True),
    (Cyclic(6), W(), False),
])
def test_tsv_round_trip(G, spec, directed):
    build = gr.directed_power_graph if directed else gr.power_graph
    g = build(G, spec)
    text = gr.to_tsv(g)
    assert text.startswith(f"# group={G} window={spec} mode={'directed' if directed else 'undirected'}\n")
    back = gr.parse_tsv(text)
    assert back == g
    assert gr.to_tsv(back) == text


def test_window_spec_text():
    for spec in (W(bound=3), W(num_bound=4, den_bound=9), W()):
        assert gr.WindowSpec.parse(str(spec)) == spec
    with pytest.raises(ValueError):
        W(bound=0)
