"""Named invariant checks run by ``powergraph verify``.

Each check returns a :class:`CheckResult`; a failing one carries the first
counterexample found.  Sizes are kept small enough for the whole suite to run
in a few seconds.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import graphs as gr
from . import groups as grp
from . import heights as ht
from . import orient as ori
from .arith import divisors, primes_up_to
from .graphs import WindowSpec


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


def _fail(name, msg):
    return CheckResult(name, False, msg)


def check_lemma_order(rng) -> CheckResult:
    cases = [
        (grp.Z(), WindowSpec(bound=20)),
        (grp.Zn(2), WindowSpec(bound=4)),
        (grp.Q(), WindowSpec(num_bound=6, den_bound=6)),
        (grp.Qn(2), WindowSpec(num_bound=2, den_bound=2)),
        (grp.Unitary(ht.g_p(2)), WindowSpec(num_bound=8, den_bound=8)),
    ]
    for G, spec in cases:
        g = gr.power_graph(G, spec)
        isolated = [g.vertices[i] for i in range(len(g)) if not g.neighbours(i)]
        if isolated != [grp.identity(G)]:
            return _fail("lemma-order", f"{G} {spec}: isolated vertices {isolated}")
    return CheckResult("lemma-order", True)


def check_lemma_inverse(rng) -> CheckResult:
    g = gr.power_graph(grp.Z(), WindowSpec(bound=50))
    for i, j in g.edges:
        a, b = g.vertices[i], g.vertices[j]
        if abs(a) + abs(b) > 50:
            continue
        both_empty = not gr.s_set_indices(g, i, j) and not gr.s_set_indices(g, j, i)
        if both_empty != (b == -a):
            return _fail("lemma-inverse", f"edge {a} ~ {b}")
    return CheckResult("lemma-inverse", True)


def check_lemma_finite(rng) -> CheckResult:
    G = grp.Z()
    for b in range(-50, 51):
        if b == 0:
            continue
        for a in (s * d for d in divisors(b) for s in (1, -1)):
            if a == b:
                continue
            exact = gr.s_set_exact_Z(a, b)
            window = gr.s_set_window(G, WindowSpec(bound=50), a, b)
            if not exact.finite or set(exact.members) != window:
                return _fail("lemma-finite", f"S({a},{b}) exact {sorted(exact.members)} window {sorted(window)}")
    for a in range(-20, 21):
        if a == 0:
            continue
        for b in (s * d for d in divisors(a) for s in (1, -1)):
            if b % a == 0:
                continue
            exact = gr.s_set_exact_Z(a, b)
            if exact.finite:
                return _fail("lemma-finite", f"S({a},{b}) reported finite")
            sizes = [len(gr.s_set_window(G, WindowSpec(bound=N), a, b)) for N in (50, 100, 200)]
            if not sizes[0] < sizes[1] < sizes[2]:
                return _fail("lemma-finite", f"S({a},{b}) window sizes {sizes} do not grow")
    return CheckResult("lemma-finite", True)


def check_orientation_Z(rng) -> CheckResult:
    truth = gr.directed_power_graph(grp.Z(), WindowSpec(bound=100))
    report = ori.recover_orientation(truth.undirected(), margin=8, core_bound=33, truth=truth)
    if report.mismatches or report.undetermined or report.conflicts:
        first = (report.mismatches or report.conflicts or ["undetermined edges"])[0]
        return _fail("thm-orientation-Z", str(first))
    return CheckResult("thm-orientation-Z", True, f"{len(report.classifications)} core edges")


def _strict_out(g, i):
    return {j for j in gr.out_neighbours(g, i) if (j, i) not in g.arcs}


def check_lemma_Q(rng) -> CheckResult:
    windows = [
        (grp.Z(), WindowSpec(bound=100)),
        (grp.Unitary(ht.g_p(2)), WindowSpec(num_bound=100, den_bound=16)),
    ]
    for G, spec in windows:
        g = gr.directed_power_graph(G, spec)
        members = set(g.vertices)
        candidates = [
            x for x in g.vertices
            if x != 0 and all(p * x in members for p in primes_up_to(13))
        ]
        for x in rng.sample(candidates, min(10, len(candidates))):
            i = g.index(x)
            ins, outs = gr.in_neighbours(g, i), gr.out_neighbours(g, i)
            for y in ins:
                for z in outs:
                    if y != z and not g.has_edge(y, z):
                        return _fail("lemma-Q", f"{G}: in {g.label(y)} and out {g.label(z)} of {g.label(i)} not adjacent")
            strict = _strict_out(g, i)
            if len(gr.complement_components(g, strict)) > 1:
                return _fail("lemma-Q", f"{G}: complement on O({g.label(i)}) minus inverse is disconnected")
    return CheckResult("lemma-Q", True)


def check_uniquecyclic(rng) -> CheckResult:
    G = grp.Zn(2)
    g = gr.power_graph(G, WindowSpec(bound=10))
    comps = [c for c in gr.components(g) if c != [(0, 0)]]
    for comp in comps:
        gens = {min(grp.maximal_cyclic_generator(G, x), grp.negate(G, grp.maximal_cyclic_generator(G, x))) for x in comp}
        if len(gens) != 1:
            return _fail("thm-uniquecyclic", f"component {comp[:3]}... has generators {gens}")
    primitive = sum(1 for a in range(-10, 11) for b in range(-10, 11) if math.gcd(a, b) == 1) // 2
    if primitive != len(comps):
        return _fail("thm-uniquecyclic", f"{len(comps)} components vs {primitive} primitive lines")
    return CheckResult("thm-uniquecyclic", True, f"{len(comps)} components")


def _phi_graphs(a):
    verts = ori.phi_closed_window(a, 6, 6)
    d = gr.directed_power_graph(grp.Q(), verts)
    return d, (lambda x: ori.involution_phi(a, x))


def check_lemma_isomorphism(rng) -> CheckResult:
    for a in (Fraction(1), Fraction(2), Fraction(3, 2)):
        d, phi = _phi_graphs(a)
        if any(phi(phi(x)) != x for x in d.vertices):
            return _fail("lemma-isomorphism", f"phi_{a} is not an involution")
        res = ori.verify_digraph_isomorphism(phi, d, d, ori.Mode.REVERSE)
        if not res:
            return _fail("lemma-isomorphism", f"a={a}: {res.counterexample}")
        i = d.index(a)
        outs = {d.vertices[j] for j in gr.out_neighbours(d, i)}
        ins = {d.vertices[j] for j in gr.in_neighbours(d, i)}
        if {phi(x) for x in outs} != ins:
            return _fail("lemma-isomorphism", f"a={a}: phi(O(a)) != I(a)")
    return CheckResult("lemma-isomorphism", True)


def check_thm_Q1(rng) -> CheckResult:
    for a in (Fraction(1), Fraction(2), Fraction(3, 2)):
        d, phi = _phi_graphs(a)
        for f, expect in ((phi, ori.Orientation.REVERSES), (lambda x: x, ori.Orientation.PRESERVES)):
            verdicts = set(ori.decide_preserve_or_reverse(f, d, d).values())
            if verdicts != {expect}:
                return _fail("thm-Q1", f"a={a}: verdicts {sorted(map(str, verdicts))}")
    G = grp.Qn(2)
    d = gr.directed_power_graph(G, WindowSpec(num_bound=2, den_bound=2))
    flip = {x: tuple(-c for c in x) for x in d.vertices}
    verdicts = set(ori.decide_preserve_or_reverse(flip, d, d).values())
    if ori.Orientation.NEITHER in verdicts:
        return _fail("thm-Q1", "negation of Q^2 mixes orientations")
    return CheckResult("thm-Q1", True)


def random_height(rng, primes=(2, 3, 5, 7, 11), top=4) -> ht.HeightFunction:
    values = {}
    for p in primes:
        r = rng.randrange(top + 3)
        values[p] = ht.INF if r == top + 2 else min(r, top)
    return ht.HeightFunction.from_mapping(values)


def check_height_iso(rng) -> CheckResult:
    for _ in range(300):
        h, f, k = (random_height(rng) for _ in range(3))
        eq = ht.equivalent
        if not eq(h, h):
            return _fail("thm-height-iso", f"{h} not equivalent to itself")
        if eq(h, f) != eq(f, h):
            return _fail("thm-height-iso", f"asymmetric on {h}, {f}")
        if eq(h, f) and eq(f, k) and not eq(h, k):
            return _fail("thm-height-iso", f"not transitive on {h}, {f}, {k}")
        m = rng.randrange(1, 10**4 + 1)
        if not eq(h, ht.scale(h, m)):
            return _fail("thm-height-iso", f"{h} vs {m}*h")
        w = ht.equivalence_witness(h, f)
        if w is not None and ht.scale(h, w[0]) != ht.scale(f, w[1]):
            return _fail("thm-height-iso", f"witness {w} fails for {h}, {f}")
    if ht.equivalent(ht.g_p(2), ht.g_p(3)):
        return _fail("thm-height-iso", "G_2 and G_3 reported isomorphic")
    return CheckResult("thm-height-iso", True)


def check_prime_swap(rng) -> CheckResult:
    dom, img = ori.prime_swap_windows(2, 3, 30, 16)
    if len(set(img)) != len(dom):
        return _fail("thm-prime-swap", "prime swap is not injective on the window")
    G2, G3 = grp.Unitary(ht.g_p(2)), grp.Unitary(ht.g_p(3))
    d2 = gr.directed_power_graph(G2, dom)
    d3 = gr.directed_power_graph(G3, img)
    res = ori.verify_digraph_isomorphism(lambda x: ht.prime_swap_iso(2, 3, x), d2, d3, ori.Mode.PRESERVE)
    if not res:
        return _fail("thm-prime-swap", res.counterexample)
    return CheckResult("thm-prime-swap", True)


def check_example_C6(rng) -> CheckResult:
    g = gr.finite_cyclic_power_graph(6)
    expected = {(i, j) for i, j in itertools.combinations(range(6), 2)} - {(2, 3), (3, 4)}
    if g.edges != expected:
        return _fail("example-C6", f"edges {sorted(g.edges)}")
    orbits = gr.automorphism_orbits(g)
    if [0, 1, 5] not in orbits:
        return _fail("example-C6", f"orbits {orbits}")
    return CheckResult("example-C6", True)


def check_cardinalities(rng) -> CheckResult:
    G = grp.Unitary(ht.g_p(2))
    sizes = []
    for H in (8, 32, 128):
        d = gr.directed_power_graph(G, WindowSpec(num_bound=2, den_bound=H))
        sizes.append(len(gr.in_neighbours(d, d.index(1))))
    if not sizes[0] < sizes[1] < sizes[2]:
        return _fail("lemma-cardinalities", f"G_2 in-degree of 1 not growing: {sizes}")
    if ht.classify_in_neighbour_cardinality(ht.g_p(2)) is not ht.Cardinality.ALL_INFINITE:
        return _fail("lemma-cardinalities", "G_2 not classified AllInfinite")
    return CheckResult("lemma-cardinalities", True, f"sizes {sizes}")


def check_lemma_component(rng) -> CheckResult:
    G = grp.Unitary(ht.scale(ht.HeightFunction(), 6))
    g = gr.power_graph(G, WindowSpec(num_bound=12, den_bound=6))
    comp_of = {}
    for k, comp in enumerate(gr.components(g)):
        for x in comp:
            comp_of[x] = k
    for x, y in itertools.product(g.vertices, repeat=2):
        if x == 0 or y == 0 or comp_of[x] != comp_of[y]:
            continue
        diff = x - y
        if diff in comp_of and diff != 0 and comp_of[diff] != comp_of[x]:
            return _fail("lemma-component", f"{x} - {y} left the component")
    return CheckResult("lemma-component", True)


CHECKS: dict[str, Callable[[random.Random], CheckResult]] = {
    "lemma-order": check_lemma_order,
    "lemma-inverse": check_lemma_inverse,
    "lemma-Q": check_lemma_Q,
    "lemma-finite": check_lemma_finite,
    "thm-orientation-Z": check_orientation_Z,
    "thm-uniquecyclic": check_uniquecyclic,
    "lemma-isomorphism": check_lemma_isomorphism,
    "thm-Q1": check_thm_Q1,
    "lemma-component": check_lemma_component,
    "lemma-cardinalities": check_cardinalities,
    "thm-height-iso": check_height_iso,
    "thm-prime-swap": check_prime_swap,
    "example-C6": check_example_C6,
}


def run_checks(names=None, seed: int = 0) -> list[CheckResult]:
    out = []
    for name in names or CHECKS:
        if name not in CHECKS:
            raise KeyError(f"unknown check {name!r}")
        out.append(CHECKS[name](random.Random(f"{seed}:{name}")))
    return out
