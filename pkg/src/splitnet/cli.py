"""Command-line interface.

Exit status: 0 on success, 1 on domain errors (single-line message on stderr),
2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .categories import sample, verify_category_laws, verify_equivalence
from .compat import (
    all_pairwise_compatible,
    count_all_splits,
    count_all_splits_piecewise,
    count_bhv_orthants,
    count_circular_orders,
    count_splits_per_order,
    find_circular_order,
)
from .complexes import (
    cells_of_m0n_real,
    complexes_isomorphic,
    dual_intersection_complex,
    pbhv_complex,
    root_to_label,
)
from .curves import dual_from_network, tree_curve
from .errors import NotCompatible, SplitNetError
from .model import CyclicOrder, WeightedSplitSystem, universe
from .network import build_network


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise SplitNetError(f"cannot read {path}: {exc.strerror}") from None


def _emit(args, payload: dict, human: str):
    if getattr(args, "emit", None) == "json":
        sys.stdout.write(io.dumps(payload))
    else:
        sys.stdout.write(human.rstrip("\n") + "\n")


def cmd_counts(args):
    n = args.n
    payload = {
        "schemaVersion": io.SCHEMA_VERSION,
        "n": n,
        "splits": count_all_splits(n),
        "splitsPiecewise": count_all_splits_piecewise(n),
        "orders": count_circular_orders(n),
        "perOrder": count_splits_per_order(n),
        "bhvOrthants": count_bhv_orthants(n),
    }
    human = (f"splits={payload['splits']} orders={payload['orders']} "
             f"perOrder={payload['perOrder']} bhvOrthants={payload['bhvOrthants']}")
    _emit(args, payload, human)
    return 0


def cmd_check(args):
    doc = io.parse_splits(_read(args.splits))
    order = find_circular_order(doc.system().splits, doc.n)
    payload = {"schemaVersion": io.SCHEMA_VERSION, "circular": order is not None,
               "order": None if order is None else list(order.order)}
    _emit(args, payload, f"circular: {'true' if order else 'false'}"
          + (f"\norder: {order}" if order else ""))
    return 0 if order is not None else 1


def _parse_order(text):
    if text is None:
        return None
    try:
        return CyclicOrder(tuple(int(t) for t in text.split(",")))
    except ValueError:
        raise SplitNetError(f"bad cyclic order {text!r}") from None


def cmd_netbuild(args):
    doc = io.parse_splits(_read(args.splits))
    net = build_network(doc.system(), _parse_order(args.order), args.insertion, args.rule)
    if args.emit == "dot":
        sys.stdout.write(io.emit_dot(net, doc.names))
    else:
        sys.stdout.write(io.dumps(io.network_json(net)))
    return 0


def cmd_dual(args):
    doc = io.parse_splits(_read(args.splits))
    system = doc.system()
    if args.source == "tree":
        if not all_pairwise_compatible(system.splits):
            raise NotCompatible("splits are not pairwise compatible; not a tree")
        dual = tree_curve(system.splits, universe(doc.n))
    else:
        dual = dual_from_network(build_network(system))
    if args.emit == "dot":
        sys.stdout.write(io.emit_dot(dual, doc.names))
        return 0
    payload = io.dual_json(dual)
    human = (f"components={payload['components']} intersections={payload['intersections']} "
             f"genus={payload['genus']} stable={'true' if payload['stable'] else 'false'}")
    _emit(args, payload, human)
    return 0


def cmd_complex(args):
    if args.which == "pbhv":
        cx = pbhv_complex(args.m)
        _emit(args, io.complex_json(cx), f"f-vector {cx.f_vector()}")
    elif args.which == "dual-m0n":
        cx = dual_intersection_complex(args.n)
        _emit(args, io.complex_json(cx), f"f-vector {cx.f_vector()}")
    else:
        n = args.n
        left = dual_intersection_complex(n)
        right = pbhv_complex(n - 1)
        iso = complexes_isomorphic(right, left, root_to_label(n - 1))
        payload = {"schemaVersion": io.SCHEMA_VERSION, "n": n, "isomorphic": iso,
                   "fVector": left.f_vector(), "pbhvFVector": right.f_vector()}
        fv = ",".join(map(str, left.f_vector()))
        _emit(args, payload, f"isomorphic: {'true' if iso else 'false'}, f-vector [{fv}]")
    return 0


def cmd_cells(args):
    dec = cells_of_m0n_real(args.n)
    payload = {"schemaVersion": io.SCHEMA_VERSION, "n": args.n, "cells": len(dec.cells)}
    human = f"{len(dec.cells)}"
    if args.adjacency:
        payload["adjacency"] = [[i, j, str(s)] for i, j, s in dec.adjacency]
        payload["orders"] = [list(c.order) for c in dec.cells]
        human += "\n" + "\n".join(f"{dec.cells[i]}  {dec.cells[j]}  {s}" for i, j, s in dec.adjacency)
    _emit(args, payload, human)
    return 0


def cmd_cat(args):
    n = args.n
    kinds = ("tree", "curve") if args.pair == "trees" else ("topology", "divisorset")
    laws = [verify_category_laws(sample(k, n)) for k in kinds]
    eq = verify_equivalence(args.pair, n)
    ok = eq.ok and all(r.ok for r in laws)
    payload = {
        "schemaVersion": io.SCHEMA_VERSION,
        "pair": args.pair,
        "n": n,
        "pass": ok,
        "categories": [{"name": r.name, "objects": r.objects, "pass": r.ok,
                        "violations": r.violations} for r in laws],
        "equivalence": {"leftObjects": eq.left_count, "rightObjects": eq.right_count,
                        "pass": eq.ok, "failures": eq.failures},
    }
    lines = [f"{r.name}: objects={r.objects} {'PASS' if r.ok else 'FAIL'}" for r in laws]
    for r in laws:
        lines += [f"  witness: {v}" for v in r.violations]
    lines.append(f"equivalence {args.pair} n={n}: {eq.left_count} <-> {eq.right_count} "
                 f"{'PASS' if eq.ok else 'FAIL'}")
    lines += [f"  witness: {f}" for f in eq.failures]
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


def cmd_newick(args):
    point = io.parse_newick(_read(args.file))
    if args.emit == "splits":
        # the root becomes taxon m+1 so the file stays an ordinary unrooted document
        m = point.internal.n
        relabel = root_to_label(m)
        unrooted = WeightedSplitSystem(m + 1, tuple((relabel(s), w) for s, w in point.internal.entries))
        sys.stdout.write(io.emit_splits(unrooted))
    elif args.emit == "json":
        sys.stdout.write(io.dumps({
            "schemaVersion": io.SCHEMA_VERSION,
            "leaves": point.internal.n,
            "splits": [{"split": str(s), "weight": w} for s, w in point.internal.entries],
            "external": list(point.external),
        }))
    else:
        sys.stdout.write(io.emit_newick(point) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="splitnet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("counts", help="closed-form split/order/orthant counts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--emit", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("check", help="decide properties of a split file")
    p.add_argument("what", choices=["circular"])
    p.add_argument("--splits", required=True)
    p.add_argument("--emit", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("netbuild", help="realize a circular split system as a planar network")
    p.add_argument("--splits", required=True)
    p.add_argument("--order")
    p.add_argument("--insertion", choices=["given", "canonical"], default="given")
    p.add_argument("--rule", choices=["nested", "midpoint"], default="nested")
    p.add_argument("--emit", choices=["dot", "json"], default="json")
    p.set_defaults(func=cmd_netbuild)

    p = sub.add_parser("dual", help="stable curve associated with a network or tree")
    p.add_argument("--splits", required=True)
    p.add_argument("--from", dest="source", choices=["network", "tree"], default="network")
    p.add_argument("--emit", choices=["text", "json", "dot"], default="text")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("complex", help="simplicial complexes of the duality")
    csub = p.add_subparsers(dest="which", required=True)
    q = csub.add_parser("pbhv")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--emit", choices=["text", "json"], default="text")
    q = csub.add_parser("dual-m0n")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--emit", choices=["text", "json"], default="text")
    q = csub.add_parser("compare")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--emit", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("cells", help="associahedral cells of the real moduli space")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--adjacency", action="store_true")
    p.add_argument("--emit", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_cells)

    p = sub.add_parser("cat", help="category checks")
    p.add_argument("action", choices=["verify"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pair", choices=["trees", "networks"], required=True)
    p.add_argument("--emit", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_cat)

    p = sub.add_parser("newick", help="Newick trees")
    p.add_argument("action", choices=["parse"])
    p.add_argument("file")
    p.add_argument("--emit", choices=["newick", "splits", "json"], default="newick")
    p.set_defaults(func=cmd_newick)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SplitNetError as exc:
        print(f"error: {exc}".replace("\n", " "), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
