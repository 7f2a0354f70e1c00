"""Recovering arc directions from undirected power graphs.

For an edge ``a ~ b`` of P(Z), exactly one of three things happens: both
S-sets are empty (``b == -a``), or ``S(a, b)`` is finite while ``S(b, a)`` is
infinite (``a -> b``), or the reverse.  On a finite window "infinite" becomes
"larger than a margin", which is not enough near the window boundary, so
:func:`recover_orientation` follows the margin test with exact propagation
rules that only read the undirected graph.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .graphs import (
    SSetResult,
    WindowGraph,
    _rational_window,
    complement_components,
    components,
    s_set_exact_Z,
    s_set_indices,
)
from .groups import Group, format_element, identity
from .heights import g_p, prime_swap_iso

__all__ = [
    "Verdict", "EdgeClassification", "OrientationReport",
    "classify_edge_exact_Z", "classify_edge_window", "recover_orientation",
    "parse_report", "involution_phi", "phi_closed_window",
    "prime_swap_windows", "Mode", "IsoCheck", "Orientation",
    "decide_preserve_or_reverse", "verify_digraph_isomorphism",
]


class Verdict(enum.Enum):
    INVERSE_PAIR = "InversePair"
    FORWARD = "Forward"
    BACKWARD = "Backward"
    UNDETERMINED = "Undetermined"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class EdgeClassification:
    """Direction verdict for the edge ``(a, b)``; ``FORWARD`` means ``a -> b`` only.

    ``s_ab``/``s_ba`` are windowed S-set sizes, or exact results in Z.
    ``source`` records how the verdict was reached.
    """

    a: object
    b: object
    verdict: Verdict
    s_ab: int | SSetResult | None = None
    s_ba: int | SSetResult | None = None
    source: str = "s-set"


def classify_edge_exact_Z(a: int, b: int) -> EdgeClassification:
    s_ab = s_set_exact_Z(a, b)
    s_ba = s_set_exact_Z(b, a)
    if s_ab.finite and s_ba.finite:
        # both finite only happens for b == -a, where both are empty
        verdict = Verdict.INVERSE_PAIR
    elif s_ab.finite:
        verdict = Verdict.FORWARD
    else:
        verdict = Verdict.BACKWARD
    return EdgeClassification(a, b, verdict, s_ab, s_ba, "exact")


def _margin_verdict(s_ab: int, s_ba: int, margin: int) -> Verdict:
    if s_ab == 0 and s_ba == 0:
        return Verdict.INVERSE_PAIR
    if s_ab <= margin < s_ba:
        return Verdict.FORWARD
    if s_ba <= margin < s_ab:
        return Verdict.BACKWARD
    return Verdict.UNDETERMINED


def classify_edge_window(graph: WindowGraph, a, b, margin: int = 8) -> EdgeClassification:
    """Margin test on windowed S-set sizes, computed from adjacency only."""
    i, j = graph.index(a), graph.index(b)
    if i == j or not graph.has_edge(i, j):
        raise ValueError("S-set defined for adjacent pairs")
    s_ab = len(s_set_indices(graph, i, j))
    s_ba = len(s_set_indices(graph, j, i))
    return EdgeClassification(a, b, _margin_verdict(s_ab, s_ba, margin), s_ab, s_ba)


@dataclass
class OrientationReport:
    classifications: list[EdgeClassification]
    mismatches: list[tuple] = field(default_factory=list)
    conflicts: list[tuple] = field(default_factory=list)
    group: Group | None = None

    def counts(self) -> dict[str, int]:
        out = {str(v): 0 for v in Verdict}
        for c in self.classifications:
            out[str(c.verdict)] += 1
        return out

    @property
    def undetermined(self) -> int:
        return self.counts()[str(Verdict.UNDETERMINED)]

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.conflicts

    def _fmt(self, x) -> str:
        return format_element(self.group, x) if self.group is not None else str(x)

    def to_text(self) -> str:
        lines = []
        for c in self.classifications:
            lines.append(f"{self._fmt(c.a)} {self._fmt(c.b)} {c.verdict} {c.s_ab} {c.s_ba}")
        lines.append("# summary")
        lines.append(f"edges {len(self.classifications)}")
        for name, n in self.counts().items():
            lines.append(f"{name} {n}")
        lines.append(f"propagated {sum(c.source == 'propagated' for c in self.classifications)}")
        lines.append(f"conflicts {len(self.conflicts)}")
        lines.append(f"mismatches {len(self.mismatches)}")
        for m in self.mismatches:
            lines.append("mismatch " + " ".join(str(part) for part in m))
        return "\n".join(lines) + "\n"


def parse_report(text: str) -> dict:
    """Read back ``OrientationReport.to_text`` output as plain data."""
    edges, summary, mismatches = [], {}, []
    in_summary = False
    for line in text.splitlines():
        if line == "# summary":
            in_summary = True
            continue
        parts = line.split()
        if not parts:
            continue
        if not in_summary:
            u, v, verdict, s_uv, s_vu = parts
            edges.append((u, v, verdict, int(s_uv), int(s_vu)))
        elif parts[0] == "mismatch":
            mismatches.append(parts[1:])
        else:
            summary[parts[0]] = int(parts[1])
    return {"edges": edges, "summary": summary, "mismatches": mismatches}


class _Orienter:
    """Fixpoint propagation of strict arcs on an undirected window.

    Every rule is a consequence of facts about power graphs that survive
    restriction to an induced subgraph, except the one marked below, which
    needs the window promise for core vertices.
    """

    def __init__(self, graph: WindowGraph, core: set[int]):
        self.g = graph
        self.core = core
        self.arcs: set[tuple[int, int]] = set()
        self.inverse: dict[int, int] = {}
        self.conflicts: list[tuple] = []

    def add(self, u: int, v: int) -> bool:
        if (u, v) in self.arcs:
            return False
        if (v, u) in self.arcs or self.inverse.get(u) == v:
            self.conflicts.append((self.g.label(u), self.g.label(v)))
            return False
        self.arcs.add((u, v))
        return True

    def find_inverses(self):
        g = self.g
        for i in self.core:
            for j in g.neighbours(i):
                if not s_set_indices(g, i, j) and not s_set_indices(g, j, i):
                    self.inverse[i] = j

    def split_rule(self, a: int) -> bool:
        """Complement components of ``N(a)`` minus the inverse are wholly in or wholly out.

        In-neighbours of ``a`` are adjacent to all its out-neighbours, so no
        complement edge crosses between them.
        """
        g = self.g
        nbrs = set(g.neighbours(a))
        nbrs.discard(self.inverse.get(a))
        changed = False
        unknown = []
        has_out = False
        for comp in complement_components(g, nbrs):
            ins = any((c, a) in self.arcs for c in comp)
            outs = any((a, c) in self.arcs for c in comp)
            if ins and outs:
                self.conflicts.append((g.label(a), "component straddles in/out"))
                continue
            if ins:
                for c in comp:
                    changed |= self.add(c, a)
            elif outs:
                has_out = True
                for c in comp:
                    changed |= self.add(a, c)
            else:
                unknown.append(comp)
        # window promise: 2a lies in the window for core vertices, so some
        # component holds out-neighbours; if only one is unresolved it is that one
        if len(unknown) == 1 and not has_out:
            for c in unknown[0]:
                changed |= self.add(a, c)
        return changed

    def transitivity(self) -> bool:
        g = self.g
        succ: dict[int, set[int]] = {}
        for u, v in self.arcs:
            succ.setdefault(u, set()).add(v)
        changed = False
        for u, v in list(self.arcs):
            for w in succ.get(v, ()):
                if w != u and g.has_edge(u, w):
                    changed |= self.add(u, w)
        return changed

    def run(self):
        changed = True
        while changed:
            changed = False
            for a in sorted(self.core):
                if self.g.neighbours(a):
                    changed |= self.split_rule(a)
            changed |= self.transitivity()


def recover_orientation(
    graph: WindowGraph,
    margin: int = 8,
    core_bound: int | None = None,
    truth: WindowGraph | None = None,
) -> OrientationReport:
    """Orient every core edge of an undirected window of P(Z).

    The core is the set of vertices of absolute value at most ``core_bound``
    (default a third of the window bound).  Labels are used only to pick the
    core and to print the report; all reasoning reads adjacency alone.
    """
    g = graph.undirected() if graph.directed else graph
    if core_bound is None:
        N = g.window.bound if g.window is not None and g.window.bound else max(abs(v) for v in g.vertices)
        core_bound = N // 3
    core = {i for i, v in enumerate(g.vertices) if abs(v) <= core_bound and g.neighbours(i)}
    core_edges = sorted((i, j) for i, j in g.edges if i in core and j in core)

    state = _Orienter(g, core)
    state.find_inverses()
    seeds = {}
    for i, j in core_edges:
        s_ab = len(s_set_indices(g, i, j))
        s_ba = len(s_set_indices(g, j, i))
        verdict = _margin_verdict(s_ab, s_ba, margin)
        seeds[i, j] = (verdict, s_ab, s_ba)
        if verdict is Verdict.FORWARD:
            state.add(i, j)
        elif verdict is Verdict.BACKWARD:
            state.add(j, i)
    state.run()

    out = []
    for i, j in core_edges:
        verdict, s_ab, s_ba = seeds[i, j]
        source = "s-set"
        if verdict is Verdict.UNDETERMINED:
            source = "propagated"
            if state.inverse.get(i) == j:
                verdict = Verdict.INVERSE_PAIR
            elif (i, j) in state.arcs:
                verdict = Verdict.FORWARD
            elif (j, i) in state.arcs:
                verdict = Verdict.BACKWARD
            else:
                source = "none"
        out.append(EdgeClassification(g.vertices[i], g.vertices[j], verdict, s_ab, s_ba, source))

    report = OrientationReport(out, conflicts=state.conflicts, group=g.group)
    if truth is not None:
        report.mismatches = _compare(report, truth)
    return report


def _compare(report: OrientationReport, truth: WindowGraph) -> list[tuple]:
    bad = []
    for c in report.classifications:
        if c.verdict is Verdict.UNDETERMINED:
            continue
        i, j = truth.index(c.a), truth.index(c.b)
        fw, bw = (i, j) in truth.arcs, (j, i) in truth.arcs
        expected = (
            Verdict.INVERSE_PAIR if fw and bw
            else Verdict.FORWARD if fw
            else Verdict.BACKWARD
        )
        if expected is not c.verdict:
            bad.append((report._fmt(c.a), report._fmt(c.b), c.verdict, expected))
    return bad


# --- maps between directed windows ---------------------------------------

def involution_phi(a: Fraction | int, x: Fraction | int) -> Fraction:
    """``x -> a**2/x`` with ``0 -> 0``: swaps the out- and in-neighbours of ``a`` in P(Q)."""
    a, x = Fraction(a), Fraction(x)
    if a == 0:
        raise ValueError("a must be non-zero")
    return x if x == 0 else a * a / x


def phi_closed_window(a: Fraction | int, num_bound: int, den_bound: int) -> list[Fraction]:
    """Rationals in the (num, den) window whose image under ``involution_phi(a, .)`` is too."""
    base = _rational_window(num_bound, den_bound)
    members = set(base)
    return sorted(x for x in base if involution_phi(a, x) in members)


def prime_swap_windows(p: int, q: int, num_bound: int, den_bound: int) -> tuple[list, list]:
    """The ``G_p`` window and its image in ``G_q`` under the prime swap, both sorted."""
    domain = _rational_window(num_bound, den_bound, g_p(p).contains)
    image = sorted(prime_swap_iso(p, q, x) for x in domain)
    return sorted(domain), image


class Mode(enum.Enum):
    PRESERVE = "Preserve"
    REVERSE = "Reverse"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class IsoCheck:
    ok: bool
    counterexample: str | None = None

    def __bool__(self):
        return self.ok


def _as_function(f) -> Callable:
    if isinstance(f, Mapping):
        return f.__getitem__
    return f


def _image_indices(f, D1: WindowGraph, D2: WindowGraph) -> list[int] | str:
    fn = _as_function(f)
    images = []
    for x in D1.vertices:
        y = fn(x)
        if y not in D2._index:
            return f"{D1.label_of(x)} maps to {D2.label_of(y)}, which is not a vertex of the target"
        images.append(D2.index(y))
    if len(set(images)) != len(images):
        return "map is not injective"
    if len(images) != len(D2):
        return "map is not onto the target vertices"
    return images


def verify_digraph_isomorphism(f, D1: WindowGraph, D2: WindowGraph, mode: Mode | str = Mode.PRESERVE) -> IsoCheck:
    """Check ``f`` is a bijection ``D1 -> D2`` taking arcs to arcs (``Reverse``: to reversed arcs).

    Every ordered pair of vertices is checked both ways.
    """
    mode = Mode(mode) if not isinstance(mode, Mode) else mode
    if not D1.directed or not D2.directed:
        raise ValueError("both graphs must be directed")
    images = _image_indices(f, D1, D2)
    if isinstance(images, str):
        return IsoCheck(False, images)
    arcs2 = D2.arcs
    n = len(D1)
    for i in range(n):
        fi = images[i]
        for j in range(n):
            if i == j:
                continue
            target = (fi, images[j]) if mode is Mode.PRESERVE else (images[j], fi)
            if ((i, j) in D1.arcs) != (target in arcs2):
                have = "arc" if (i, j) in D1.arcs else "no arc"
                return IsoCheck(
                    False,
                    f"{have} {D1.label(i)} -> {D1.label(j)} but "
                    f"{'no arc' if have == 'arc' else 'arc'} {D2.label(target[0])} -> {D2.label(target[1])}",
                )
    return IsoCheck(True)


class Orientation(enum.Enum):
    PRESERVES = "Preserves"
    REVERSES = "Reverses"
    NEITHER = "Neither"

    def __str__(self):
        return self.value


def decide_preserve_or_reverse(f, D1: WindowGraph, D2: WindowGraph) -> dict[tuple, Orientation]:
    """Per non-identity component of ``D1``: does ``f`` keep all strict arcs, reverse them all, or mix?

    Inverse pairs carry arcs both ways and do not vote.  A component with no
    strict arcs is reported as ``PRESERVES``.
    """
    images = _image_indices(f, D1, D2)
    if isinstance(images, str):
        raise ValueError(images)
    edges2 = D2.edges
    for i, j in D1.edges:
        a, b = images[i], images[j]
        if (min(a, b), max(a, b)) not in edges2:
            raise ValueError(f"not an isomorphism of power graphs: edge {D1.label(i)} ~ {D1.label(j)} is lost")
    if len(D1.edges) != len(edges2):
        raise ValueError("not an isomorphism of power graphs: edge counts differ")

    zero = identity(D1.group)
    out = {}
    for comp in components(D1.undirected()):
        if comp == [zero]:
            continue
        idx = [D1.index(x) for x in comp]
        members = set(idx)
        kept = flipped = 0
        for i in idx:
            for j in D1.neighbours(i):
                if j not in members or (i, j) not in D1.arcs or (j, i) in D1.arcs:
                    continue
                if (images[i], images[j]) in D2.arcs and (images[j], images[i]) not in D2.arcs:
                    kept += 1
                elif (images[j], images[i]) in D2.arcs and (images[i], images[j]) not in D2.arcs:
                    flipped += 1
                else:
                    kept = flipped = -1
                    break
            if kept < 0:
                break
        if kept < 0 or (kept and flipped):
            verdict = Orientation.NEITHER
        elif flipped:
            verdict = Orientation.REVERSES
        else:
            verdict = Orientation.PRESERVES
        out[tuple(comp)] = verdict
    return out
