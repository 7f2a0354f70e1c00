"""Finite windows of power graphs and the set computations on them.

A window is a finite, negation-closed set of group elements containing the
identity.  Graphs built on a window are induced subgraphs of the infinite
power graph, so anything true of every induced subgraph (arc consistency,
in/out separation) holds exactly, while statements about infinite sets can
only be probed through growth across windows.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from . import groups as grp
from .arith import divisors
from .groups import Cyclic, Group, Q, Qn, Unitary, Z, Zn

__all__ = [
    "WindowSpec", "WindowGraph", "SSetResult",
    "build_window", "power_graph", "directed_power_graph", "finite_cyclic_power_graph",
    "s_set_window", "s_set_indices", "s_set_exact_Z",
    "complement_components", "neighborhood_complement_split", "components",
    "automorphism_orbits", "in_neighbours", "out_neighbours",
    "to_tsv", "parse_tsv",
]


@dataclass(frozen=True)
class WindowSpec:
    """Window bounds.

    ``bound`` is ``|x| <= N`` for Z and the sup-norm bound for Z^n.  Q, Q^n and
    unitary windows use ``num_bound``/``den_bound`` on the reduced form
    (componentwise for Q^n).  Finite cyclic groups take the whole group.
    """

    bound: int | None = None
    num_bound: int | None = None
    den_bound: int | None = None

    def __post_init__(self):
        for name in ("bound", "num_bound", "den_bound"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValueError(f"{name} must be >= 1")

    def __str__(self):
        parts = []
        if self.bound is not None:
            parts.append(f"N={self.bound}")
        if self.num_bound is not None:
            parts.append(f"D={self.num_bound}")
        if self.den_bound is not None:
            parts.append(f"H={self.den_bound}")
        return ",".join(parts) or "all"

    @classmethod
    def parse(cls, text: str) -> "WindowSpec":
        text = text.strip()
        if text == "all":
            return cls()
        keys = {"N": "bound", "D": "num_bound", "H": "den_bound"}
        kwargs = {}
        for part in text.split(","):
            key, _, value = part.partition("=")
            if key not in keys:
                raise ValueError(f"bad window spec {text!r}")
            kwargs[keys[key]] = int(value)
        return cls(**kwargs)


def _rational_window(num_bound: int, den_bound: int, keep=None) -> list[Fraction]:
    out = [Fraction(0)]
    for n in range(1, den_bound + 1):
        for m in range(1, num_bound + 1):
            if math.gcd(m, n) == 1:
                x = Fraction(m, n)
                if keep is None or keep(x):
                    out += [x, -x]
    return out


def build_window(G: Group, spec: WindowSpec) -> list:
    """Vertex list of the window, sorted in canonical order."""
    if isinstance(G, Cyclic):
        return list(range(G.order))
    if isinstance(G, (Z, Zn)):
        if spec.bound is None:
            raise ValueError(f"{G} windows need a bound N")
        N = spec.bound
        if isinstance(G, Z):
            return list(range(-N, N + 1))
        return list(itertools.product(range(-N, N + 1), repeat=G.dim))
    if spec.num_bound is None or spec.den_bound is None:
        raise ValueError(f"{G} windows need numerator and denominator bounds")
    if isinstance(G, Qn):
        line = sorted(_rational_window(spec.num_bound, spec.den_bound))
        return list(itertools.product(line, repeat=G.dim))
    keep = G.height.contains if isinstance(G, Unitary) else None
    return sorted(_rational_window(spec.num_bound, spec.den_bound, keep))


@dataclass(eq=False)
class WindowGraph:
    """Induced power graph on a window.

    Vertices are group elements; ``edges`` holds index pairs ``(i, j)`` with
    ``i < j``, and ``arcs`` (directed graphs only) holds ordered pairs
    ``(i, j)``, ``i != j``, meaning vertex ``j`` is a multiple of vertex ``i``.
    """

    group: Group
    vertices: list
    edges: set[tuple[int, int]]
    arcs: set[tuple[int, int]] | None = None
    window: WindowSpec | None = None
    _index: dict = field(init=False, repr=False)
    _adj: list = field(init=False, repr=False)

    def __post_init__(self):
        self._index = {x: i for i, x in enumerate(self.vertices)}
        if len(self._index) != len(self.vertices):
            raise ValueError("duplicate vertices")
        self._adj = [set() for _ in self.vertices]
        for i, j in self.edges:
            if i == j:
                raise ValueError("power graphs have no loops")
            self._adj[i].add(j)
            self._adj[j].add(i)

    def __eq__(self, other):
        if not isinstance(other, WindowGraph):
            return NotImplemented
        return (self.group, self.vertices, self.edges, self.arcs) == (
            other.group, other.vertices, other.edges, other.arcs)

    def __len__(self):
        return len(self.vertices)

    @property
    def directed(self) -> bool:
        return self.arcs is not None

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise KeyError(f"{self.label_of(x)} is not a vertex of this window") from None

    def label(self, i: int) -> str:
        return grp.format_element(self.group, self.vertices[i])

    def label_of(self, x) -> str:
        try:
            return grp.format_element(self.group, x)
        except Exception:
            return repr(x)

    def neighbours(self, i: int) -> set[int]:
        return self._adj[i]

    def has_edge(self, i: int, j: int) -> bool:
        return j in self._adj[i]

    def undirected(self) -> "WindowGraph":
        return WindowGraph(self.group, list(self.vertices), set(self.edges), None, self.window)


def _pair_scan(G: Group, vertices: list):
    arc = grp.arc_predicate(G)
    n = len(vertices)
    for i in range(n):
        x = vertices[i]
        for j in range(i + 1, n):
            y = vertices[j]
            yield i, j, arc(x, y), arc(y, x)


def _vertices(G: Group, window):
    if isinstance(window, WindowSpec):
        return build_window(G, window), window
    verts = list(window)
    for x in verts:
        grp.check_element(G, x)
    return verts, None


def power_graph(G: Group, window) -> WindowGraph:
    """Undirected power graph induced on a window (a ``WindowSpec`` or a vertex list)."""
    verts, spec = _vertices(G, window)
    edges = {(i, j) for i, j, fw, bw in _pair_scan(G, verts) if fw or bw}
    return WindowGraph(G, verts, edges, None, spec)


def directed_power_graph(G: Group, window) -> WindowGraph:
    verts, spec = _vertices(G, window)
    edges, arcs = set(), set()
    for i, j, fw, bw in _pair_scan(G, verts):
        if fw:
            arcs.add((i, j))
        if bw:
            arcs.add((j, i))
        if fw or bw:
            edges.add((i, j))
    return WindowGraph(G, verts, edges, arcs, spec)


def finite_cyclic_power_graph(k: int) -> WindowGraph:
    """Power graph of the cyclic group of order ``k``; vertex ``i`` is ``a**i``."""
    return power_graph(Cyclic(k), WindowSpec())


def out_neighbours(graph: WindowGraph, i: int) -> set[int]:
    if not graph.directed:
        raise ValueError("in/out neighbourhoods need a directed graph")
    return {j for j in graph.neighbours(i) if (i, j) in graph.arcs}


def in_neighbours(graph: WindowGraph, i: int) -> set[int]:
    if not graph.directed:
        raise ValueError("in/out neighbourhoods need a directed graph")
    return {j for j in graph.neighbours(i) if (j, i) in graph.arcs}


# --- S-sets ---------------------------------------------------------------

def s_set_window(G: Group, window, a, b) -> set:
    """Elements of the window related to ``b`` but not to ``a`` (element arithmetic)."""
    verts, _ = _vertices(G, window)
    if a == b or not grp.related(G, a, b):
        raise ValueError("S-set defined for adjacent pairs")
    arc = grp.arc_predicate(G)

    def rel(x, y):
        return x == y or arc(x, y) or arc(y, x)

    return {c for c in verts if rel(c, b) and not rel(c, a)}


def s_set_indices(graph: WindowGraph, a: int, b: int) -> set[int]:
    """The same set computed from adjacency alone, for vertex indices ``a``, ``b``."""
    if a == b or not graph.has_edge(a, b):
        raise ValueError("S-set defined for adjacent pairs")
    related_b = graph.neighbours(b) | {b}
    related_a = graph.neighbours(a) | {a}
    return related_b - related_a


@dataclass(frozen=True)
class SSetResult:
    """Exact S-set in Z: a complete finite listing, or an infinite family with a witness."""

    finite: bool
    members: frozenset = frozenset()
    family: str = ""
    witness: int | None = None
    a: int | None = None
    b: int | None = None

    def members_within(self, N: int) -> set[int]:
        """Members with ``|c| <= N``."""
        if self.finite:
            return {c for c in self.members if abs(c) <= N}
        m = self.a // self.b
        return {
            k * self.b
            for k in range(-(N // abs(self.b)), N // abs(self.b) + 1)
            if abs(k) > 1 and math.gcd(k, m) == 1
        }


def s_set_exact_Z(a: int, b: int) -> SSetResult:
    """S-set of an adjacent pair of non-zero integers, decided exactly.

    If ``a | b`` everything related to ``b`` but not to ``a`` divides ``b``, so
    the set is finite and listed in full.  Otherwise ``b | a`` with quotient
    ``m``, ``|m| > 1``, and every ``k*b`` with ``gcd(k, m) = 1``, ``|k| > 1``
    is a member.
    """
    if type(a) is not int or type(b) is not int:
        raise TypeError("integers expected")
    if a == 0 or b == 0:
        raise ValueError("S-set arguments must be non-zero")
    if a == b or (b % a and a % b):
        raise ValueError("S-set defined for adjacent pairs")
    if b % a == 0:
        members = frozenset(
            s * c
            for c in divisors(b)
            for s in (1, -1)
            if a % c and (s * c) % a
        )
        return SSetResult(True, members, a=a, b=b)
    m = a // b
    k = next(k for k in itertools.count(2) if math.gcd(k, m) == 1)
    return SSetResult(
        False,
        family=f"k*{b} for integers k with |k| > 1 and gcd(k, {m}) = 1",
        witness=k * b,
        a=a,
        b=b,
    )


# --- components -------------------------------------------------------------

def complement_components(graph: WindowGraph, subset) -> list[list[int]]:
    """Connected components of the complement graph induced on ``subset`` (indices)."""
    remaining = set(subset)
    out = []
    for start in sorted(subset):
        if start not in remaining:
            continue
        remaining.discard(start)
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            step = remaining - graph.neighbours(u)
            remaining -= step
            comp.extend(step)
            queue.extend(step)
        out.append(sorted(comp))
    return out


def neighborhood_complement_split(graph: WindowGraph, x) -> list[list]:
    """Partition ``N(x)`` into the components of the complement graph on it."""
    i = graph.index(x)
    nbrs = graph.neighbours(i)
    if not nbrs:
        raise ValueError("identity has no neighborhood")
    return [[graph.vertices[j] for j in comp] for comp in complement_components(graph, nbrs)]


def components(graph: WindowGraph) -> list[list]:
    seen = set()
    out = []
    for start in range(len(graph)):
        if start in seen:
            continue
        seen.add(start)
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in graph.neighbours(u):
                if v not in seen:
                    seen.add(v)
                    comp.append(v)
                    queue.append(v)
        out.append([graph.vertices[j] for j in sorted(comp)])
    return out


def _automorphisms(graph: WindowGraph):
    n = len(graph)
    adj = [graph.neighbours(i) for i in range(n)]
    deg = [len(a) for a in adj]
    image = [-1] * n
    used = [False] * n

    def extend(v):
        if v == n:
            yield tuple(image)
            return
        for w in range(n):
            if used[w] or deg[w] != deg[v]:
                continue
            if all((u in adj[v]) == (image[u] in adj[w]) for u in range(v)):
                image[v], used[w] = w, True
                yield from extend(v + 1)
                image[v], used[w] = -1, False

    yield from extend(0)


def automorphism_orbits(graph: WindowGraph, max_vertices: int = 10) -> list[list]:
    """Orbits of the full automorphism group, by exhaustive search over permutations."""
    n = len(graph)
    if n > max_vertices:
        raise ValueError("brute force bound exceeded")
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for perm in _automorphisms(graph):
        for i, j in enumerate(perm):
            parent[find(i)] = find(j)
    orbits: dict[int, list] = {}
    for i in range(n):
        orbits.setdefault(find(i), []).append(graph.vertices[i])
    return sorted(orbits.values(), key=lambda orb: graph.index(orb[0]))


# --- TSV edge lists ----------------------------------------------------------

def to_tsv(graph: WindowGraph) -> str:
    mode = "directed" if graph.directed else "undirected"
    window = graph.window if graph.window is not None else WindowSpec()
    lines = [f"# group={graph.group} window={window} mode={mode}"]
    pairs = sorted(graph.arcs) if graph.directed else sorted(graph.edges)
    lines += [f"{graph.label(i)}\t{graph.label(j)}" for i, j in pairs]
    return "\n".join(lines) + "\n"


_HEADER = re.compile(r"# group=(\S+) window=(\S+) mode=(undirected|directed)")


def parse_tsv(text: str) -> WindowGraph:
    """Rebuild a graph from ``to_tsv`` output; the vertex set comes from the header."""
    lines = text.splitlines()
    if not lines or not (m := _HEADER.fullmatch(lines[0].strip())):
        raise ValueError("missing TSV header")
    G = grp.parse_group(m[1])
    spec = WindowSpec.parse(m[2])
    verts = build_window(G, spec)
    index = {x: i for i, x in enumerate(verts)}
    pairs = set()
    for line in lines[1:]:
        if not line.strip():
            continue
        u, v = line.split("\t")
        pairs.add((index[grp.parse_element(G, u)], index[grp.parse_element(G, v)]))
    if m[3] == "undirected":
        return WindowGraph(G, verts, pairs, None, spec)
    edges = {(min(i, j), max(i, j)) for i, j in pairs}
    return WindowGraph(G, verts, edges, pairs, spec)
