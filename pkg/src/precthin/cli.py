"""Command-line front door.

Every subcommand reads a JSON instance (or a DIMACS-like formula for
``reduce-nae``), emits one JSON document on stdout, and exits 0 on
YES/success, 1 on NO, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import sys

from .consistency import greedy_min_precedence_partition, verify, verify_precedence
from .graphs import Graph
from .instances import InstanceDocument, InstanceError, dump_payload, graph_payload, load_instance
from .nae import parse_nae_dimacs, reduce_formula
from .oracle import BudgetExceeded, OracleBudget, brute_force_partitioned, brute_force_precedence_thinness
from .pqtree import build_pqtree, tree_to_sexpr
from .recognizer import (
    Certificate,
    recognize_precedence_proper_thin_connected,
    recognize_precedence_proper_thin_fixed_k,
    recognize_precedence_thin,
)
from .thresholds import in_accordance, strongly_in_accordance


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="precthin",
        description="Recognition and verification of precedence (proper) k-thin structure",
    )
    ap.add_argument("--seed", type=int, default=None, help="reserved; all algorithms are deterministic")
    sub = ap.add_subparsers(dest="command", required=True)

    pt = sub.add_parser("recognize-pt", help="partitioned precedence-thin recognition")
    pt.add_argument("file")

    ppt = sub.add_parser("recognize-ppt", help="partitioned precedence-proper-thin recognition")
    ppt.add_argument("file")
    ppt.add_argument("--connected", action="store_true", help="require and exploit connected parts")

    mp = sub.add_parser("min-partition", help="greedy minimum consecutive partition for an ordering")
    mp.add_argument("file")
    mp.add_argument("--order", help="comma-separated vertex ids (defaults to the document's order)")
    mp.add_argument("--strong", action="store_true")

    ve = sub.add_parser("verify", help="check an ordering against the document's partition")
    ve.add_argument("file")
    ve.add_argument("--order", help="comma-separated vertex ids (defaults to the document's order)")
    ve.add_argument("--strong", action="store_true")

    pq = sub.add_parser("pqtree", help="clique tree of an interval graph")
    pq.add_argument("file")
    pq.add_argument("--dot", action="store_true", help="also emit a Graphviz rendering")

    ac = sub.add_parser("accordance", help="threshold accordance of two side orderings")
    ac.add_argument("file")
    ac.add_argument("--s1", required=True, help="comma-separated first side")
    ac.add_argument("--s2", required=True, help="comma-separated second side")
    ac.add_argument("--strong", action="store_true")

    rn = sub.add_parser("reduce-nae", help="build the partitioned instance of a NAE-3SAT formula")
    rn.add_argument("file")

    orc = sub.add_parser("oracle", help="brute-force ground truth (desk scale)")
    orc.add_argument("file")
    orc.add_argument("--strong", action="store_true")
    orc.add_argument("--thinness", action="store_true", help="minimum part count over all orderings")
    orc.add_argument("--max-vertices", type=int, default=None)
    return ap


def _split_ids(raw: str) -> tuple[str, ...]:
    return tuple(x.strip() for x in raw.split(",") if x.strip())


def _need_partition(doc: InstanceDocument):
    if doc.partition is None:
        raise InstanceError("partition: missing (this command needs one)")
    return doc.partition


def _need_order(doc: InstanceDocument, flag: str | None):
    if flag is not None:
        return _split_ids(flag)
    if doc.order is None:
        raise InstanceError("order: missing (pass --order or add it to the document)")
    return doc.order


def _certificate_payload(cert: Certificate) -> dict:
    payload: dict = {"answer": cert.answer}
    if cert.witness is not None:
        payload["witness"] = list(cert.witness)
    if cert.part_order is not None:
        payload["part_order"] = list(cert.part_order)
    if cert.reason is not None:
        payload["reason"] = cert.reason
    return payload


def _tree_dot(tree) -> str:
    lines = ["digraph pqtree {"]
    counter = [0]

    def walk(node) -> str:
        name = f"n{counter[0]}"
        counter[0] += 1
        if node.kind == "leaf":
            label = "C" + str(node.index + 1)
            lines.append(f'  {name} [shape=circle, label="{label}"];')
        else:
            shape = "circle" if node.kind == "P" else "box"
            lines.append(f'  {name} [shape={shape}, label="{node.kind}"];')
        for child in node.children:
            lines.append(f"  {name} -> {walk(child)};")
        return name

    if tree.root is not None:
        walk(tree.root)
    lines.append("}")
    return "\n".join(lines)


def run(argv) -> int:
    args = _parser().parse_args(list(argv))
    try:
        if args.command == "reduce-nae":
            with open(args.file, "r", encoding="utf-8") as fh:
                formula = parse_nae_dimacs(fh.read())
            inst = reduce_formula(formula)
            payload = graph_payload(inst.graph, inst.partition, inst.part_roles)
            payload["answer"] = "YES"
            sys.stdout.write(dump_payload(payload))
            return 0

        doc = load_instance(args.file)
        g = doc.graph

        if args.command == "recognize-pt":
            cert = recognize_precedence_thin(g, _need_partition(doc))
            sys.stdout.write(dump_payload(_certificate_payload(cert)))
            return 0 if cert.is_yes else 1

        if args.command == "recognize-ppt":
            parts = _need_partition(doc)
            if args.connected:
                cert = recognize_precedence_proper_thin_connected(g, parts)
            else:
                cert = recognize_precedence_proper_thin_fixed_k(g, parts)
            sys.stdout.write(dump_payload(_certificate_payload(cert)))
            return 0 if cert.is_yes else 1

        if args.command == "min-partition":
            order = _need_order(doc, args.order)
            parts = greedy_min_precedence_partition(g, order, strong=args.strong)
            payload = {
                "answer": "YES",
                "partition": [sorted(part) for part in parts],
                "value": len(parts),
            }
            sys.stdout.write(dump_payload(payload))
            return 0

        if args.command == "verify":
            order = _need_order(doc, args.order)
            parts = _need_partition(doc)
            report = verify(g, order, parts)
            precedence = verify_precedence(order, parts)
            ok = precedence and (report.strongly_consistent if args.strong else report.consistent)
            payload = {
                "answer": "YES" if ok else "NO",
                "consistent": report.consistent,
                "strongly_consistent": report.strongly_consistent,
                "precedence": precedence,
            }
            if not ok:
                payload["violations"] = [list(t) for t in report.violations]
            sys.stdout.write(dump_payload(payload))
            return 0 if ok else 1

        if args.command == "pqtree":
            tree = build_pqtree(g)
            if tree is None:
                sys.stdout.write(dump_payload({"answer": "NO", "reason": "NOT_INTERVAL"}))
                return 1
            payload = {
                "answer": "YES",
                "cliques": [sorted(c) for c in tree.cliques],
                "tree": tree_to_sexpr(tree),
            }
            if args.dot:
                payload["dot"] = _tree_dot(tree)
            sys.stdout.write(dump_payload(payload))
            return 0

        if args.command == "accordance":
            s1 = _split_ids(args.s1)
            s2 = _split_ids(args.s2)
            pred = strongly_in_accordance if args.strong else in_accordance
            ok = pred(g, s1, s2)
            sys.stdout.write(dump_payload({"answer": "YES" if ok else "NO"}))
            return 0 if ok else 1

        if args.command == "oracle":
            budget = None
            if args.max_vertices:
                budget = OracleBudget(max_vertices=args.max_vertices, max_parts=args.max_vertices)
            if args.thinness:
                value = brute_force_precedence_thinness(g, strong=args.strong, budget=budget)
                sys.stdout.write(dump_payload({"answer": "YES", "value": value}))
                return 0
            cert = brute_force_partitioned(g, _need_partition(doc), strong=args.strong, budget=budget)
            sys.stdout.write(dump_payload(_certificate_payload(cert)))
            return 0 if cert.is_yes else 1

        raise AssertionError("unreachable")
    except (InstanceError, BudgetExceeded, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
