"""Command-line front end.

    powergraph generate --group Z --bound 3 --format tsv
    powergraph orient --group Z --bound 100 --margin 8 --core 33
    powergraph sset --group Z --bound 20 --a 4 --b 2 [--exact]
    powergraph heights --equiv h1.txt h2.txt
    powergraph iso-check --map prime-swap --p 2 --q 3 --num-bound 100 --den-bound 64
    powergraph verify --seed 0

Exit status is 0 when every requested check passes, 1 on a failed check and
2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import graphs as gr
from . import groups as grp
from . import heights as ht
from . import orient as ori
from .arith import parse_rational
from .suite import CHECKS, run_checks


def emit_dot(graph: gr.WindowGraph) -> str:
    """Graphviz text; inverse pairs of a directed graph become one ``dir=both`` edge."""
    kind, sep = ("digraph", "->") if graph.directed else ("graph", "--")
    lines = [f"{kind} G {{"]
    lines += [f'  "{graph.label(i)}";' for i in range(len(graph))]
    if graph.directed:
        for i, j in sorted(graph.arcs):
            both = (j, i) in graph.arcs
            if both and j < i:
                continue
            attr = " [dir=both]" if both else ""
            lines.append(f'  "{graph.label(i)}" {sep} "{graph.label(j)}"{attr};')
    else:
        for i, j in sorted(graph.edges):
            lines.append(f'  "{graph.label(i)}" {sep} "{graph.label(j)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _window(args) -> gr.WindowSpec:
    return gr.WindowSpec(bound=args.bound, num_bound=args.num_bound, den_bound=args.den_bound)


def _write(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_height(path: str) -> ht.HeightFunction:
    with open(path, encoding="utf-8") as fh:
        return ht.parse_height_function(fh.read())


def cmd_generate(args) -> int:
    G = grp.parse_group(args.group)
    spec = _window(args)
    build = gr.directed_power_graph if args.directed else gr.power_graph
    graph = build(G, spec)
    _write(args, gr.to_tsv(graph) if args.format == "tsv" else emit_dot(graph))
    return 0


def cmd_orient(args) -> int:
    G = grp.parse_group(args.group)
    if not isinstance(G, grp.Z):
        raise UsageError("orient works on windows of Z only")
    truth = gr.directed_power_graph(G, _window(args))
    report = ori.recover_orientation(truth.undirected(), args.margin, args.core, truth=truth)
    _write(args, report.to_text())
    return 0 if report.ok else 1


def cmd_sset(args) -> int:
    G = grp.parse_group(args.group)
    a, b = grp.parse_element(G, args.a), grp.parse_element(G, args.b)
    if args.exact:
        if not isinstance(G, grp.Z):
            raise UsageError("--exact needs --group Z")
        res = gr.s_set_exact_Z(a, b)
        if res.finite:
            text = "finite " + " ".join(str(c) for c in sorted(res.members)) + "\n"
        else:
            text = f"infinite witness={res.witness} family: {res.family}\n"
    else:
        members = gr.s_set_window(G, _window(args), a, b)
        ordered = sorted(members, key=lambda x: grp.sort_key(G, x))
        text = f"size {len(members)}\n" + "".join(grp.format_element(G, c) + "\n" for c in ordered)
    _write(args, text)
    return 0


def cmd_heights(args) -> int:
    lines = []
    if args.equiv:
        h, f = (_read_height(p) for p in args.equiv)
        w = ht.equivalence_witness(h, f)
        lines.append("not equivalent" if w is None else f"equivalent (m={w[0]}, n={w[1]})")
    if args.classify:
        for path in args.classify:
            lines.append(f"{path}: {ht.classify_in_neighbour_cardinality(_read_height(path))}")
    if not lines:
        raise UsageError("heights needs --equiv or --classify")
    _write(args, "\n".join(lines) + "\n")
    return 0


def cmd_iso_check(args) -> int:
    D, H = args.num_bound, args.den_bound
    if D is None or H is None:
        raise UsageError("iso-check needs --num-bound and --den-bound")
    if args.map == "phi":
        a = parse_rational(args.a)
        verts = ori.phi_closed_window(a, D, H)
        d1 = d2 = gr.directed_power_graph(grp.Q(), verts)

        def f(x: Fraction):
            return ori.involution_phi(a, x)

        mode = ori.Mode.REVERSE
    else:
        p, q = args.p, args.q
        dom, img = ori.prime_swap_windows(p, q, D, H)
        d1 = gr.directed_power_graph(grp.Unitary(ht.g_p(p)), dom)
        d2 = gr.directed_power_graph(grp.Unitary(ht.g_p(q)), img)

        def f(x: Fraction):
            return ht.prime_swap_iso(p, q, x)

        mode = ori.Mode.PRESERVE
    res = ori.verify_digraph_isomorphism(f, d1, d2, mode)
    if res:
        _write(args, f"PASS {args.map} {mode} on {len(d1)} vertices\n")
        return 0
    _write(args, f"FAIL {args.map} {mode}: {res.counterexample}\n")
    return 1


def cmd_verify(args) -> int:
    results = run_checks(args.only, seed=args.seed)
    _write(args, "".join(r.line() + "\n" for r in results))
    return 0 if all(r.ok for r in results) else 1


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="powergraph", description="Power graphs of torsion-free abelian groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def window_flags(p, group=True):
        if group:
            p.add_argument("--group", required=True, help='Z, Z^2, Q, Q^3, C6, "U[2:inf]" or U:<heightfile>')
        p.add_argument("--bound", type=int, help="|x| <= N for Z, sup-norm for Z^n")
        p.add_argument("--num-bound", type=int, help="numerator bound for Q, Q^n and U windows")
        p.add_argument("--den-bound", type=int, help="denominator bound for Q, Q^n and U windows")
        p.add_argument("--out", help="write here instead of stdout")

    p = sub.add_parser("generate", help="emit a window of the (directed) power graph")
    window_flags(p)
    p.add_argument("--format", choices=("tsv", "dot"), default="tsv")
    p.add_argument("--directed", action="store_true")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("orient", help="recover arc directions of a Z window from its undirected graph")
    window_flags(p)
    p.add_argument("--margin", type=int, default=8)
    p.add_argument("--core", type=int, default=None, help="core bound (default N/3)")
    p.set_defaults(func=cmd_orient)

    p = sub.add_parser("sset", help="S-set of an adjacent pair")
    window_flags(p)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--exact", action="store_true", help="exact answer in Z")
    p.set_defaults(func=cmd_sset)

    p = sub.add_parser("heights", help="height-function equivalence and cardinality")
    p.add_argument("--equiv", nargs=2, metavar="FILE")
    p.add_argument("--classify", nargs="+", metavar="FILE")
    p.add_argument("--out")
    p.set_defaults(func=cmd_heights)

    p = sub.add_parser("iso-check", help="verify a built-in directed power graph isomorphism on a window")
    window_flags(p, group=False)
    p.add_argument("--map", choices=("phi", "prime-swap"), required=True)
    p.add_argument("--a", default="1", help="phi parameter")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--q", type=int, default=3)
    p.set_defaults(func=cmd_iso_check)

    p = sub.add_parser("verify", help="run the named invariant checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--only", nargs="+", choices=sorted(CHECKS))
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, TypeError, KeyError, OSError) as exc:
        print(f"powergraph: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
