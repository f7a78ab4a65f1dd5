"""Command-line front end.

    symgen enumerate <spec.json>
    symgen graph <spec.json> --format dot|json [--out FILE]
    symgen elt <spec.json> convert|mult|invert|centralize ELEMENT...
    symgen selftest [--jobs N]

Spec files are the JSON format of groupfile; bundled fixture names
(l2_19, 5sq_d6, u3_3) are accepted wherever a path is.  Exit codes:
0 ok, 2 parse/validation error, 3 expectation mismatch, 4 resource
limit, 5 membership failure.  SYMGEN_MAX_COSETS overrides the coset
limit for enumeration.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .fpgroup import CosetLimitExceeded
from .perm import parse_cycles, cycles_str
from .dcenum import CollapsedGraph, double_cosets, emit_graph
from .groupfile import (GroupSpecFile, SpecFileError, bundled_fixture_names,
                        load_bundled, load_spec_file)
from . import symrep

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_MISMATCH = 3
EXIT_LIMIT = 4
EXIT_MEMBERSHIP = 5


def _load(spec_arg: str) -> GroupSpecFile:
    if os.path.exists(spec_arg):
        return load_spec_file(spec_arg)
    if spec_arg in bundled_fixture_names():
        return load_bundled(spec_arg)
    raise SpecFileError(f"no such spec file or bundled fixture: {spec_arg}")


def _max_cosets() -> int:
    value = os.environ.get("SYMGEN_MAX_COSETS")
    return int(value) if value else 10 ** 6


def _word_str(gf: GroupSpecFile, word) -> str:
    if not word:
        return "*"
    return ".".join(gf.spec.labels[i - 1] for i in word)


def _enumerate(gf: GroupSpecFile, out) -> int:
    ctx = gf.build_context(with_rules=False, max_cosets=_max_cosets())
    img = ctx.image
    graph = double_cosets(img)
    order = img.index * gf.spec.control_group.order()
    print(f"fixture: {gf.name}", file=out)
    print(f"index: {img.index}", file=out)
    print(f"order: {order}", file=out)
    print(f"double cosets: {len(graph.nodes)}", file=out)
    for node in graph.nodes:
        print(f"  [{_word_str(gf, node.rep)}]  size {node.size}  "
              f"stabilizer {node.stabilizer.order()}", file=out)
    problems = _check_expected(gf, img.index, order, graph)
    if problems:
        for line in problems:
            print(f"MISMATCH: {line}", file=out)
        return EXIT_MISMATCH
    return EXIT_OK


def _check_expected(gf: GroupSpecFile, index: int, order: int,
                    graph: CollapsedGraph) -> list[str]:
    problems = []
    exp = gf.expected
    if exp.index is not None and exp.index != index:
        problems.append(f"index {index} != expected {exp.index}")
    if exp.group_order is not None and exp.group_order != order:
        problems.append(f"order {order} != expected {exp.group_order}")
    if exp.node_sizes is not None:
        sizes = tuple(graph.node_sizes())
        if sizes != exp.node_sizes:
            problems.append(f"node sizes {sizes} != expected {exp.node_sizes}")
    return problems


def _graph(gf: GroupSpecFile, fmt: str, out_path: str | None, out) -> int:
    ctx = gf.build_context(with_rules=False, max_cosets=_max_cosets())
    text = emit_graph(double_cosets(ctx.image), fmt)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def _parse_elt_arg(ctx, img, text: str):
    """An element argument is either a sym pair "(control | word)" or a
    permutation of the coset points in cycle notation."""
    if "|" in text:
        return symrep.parse_element(ctx, text)
    perm = parse_cycles(text, img.index)
    return symrep.per2sym(ctx, perm)


def _elt(gf: GroupSpecFile, action: str, element_args: list[str], out) -> int:
    ctx = gf.build_context(with_rules=True, max_cosets=_max_cosets())
    img = ctx.image
    need = {"convert": 1, "invert": 1, "centralize": 1, "mult": 2}[action]
    if len(element_args) != need:
        print(f"error: {action} takes {need} element argument(s)", file=sys.stderr)
        return EXIT_PARSE
    elements = [_parse_elt_arg(ctx, img, a) for a in element_args]
    if action == "convert":
        e = elements[0]
        if "|" in element_args[0]:
            print(cycles_str(symrep.sym2per(ctx, e)), file=out)
            canonical = symrep.mult(e, ctx.identity_element(), mode="pure")
            print(symrep.format_element(canonical), file=out)
        else:
            print(symrep.format_element(e), file=out)
        return EXIT_OK
    if action == "mult":
        print(symrep.format_element(symrep.mult(elements[0], elements[1])), file=out)
        return EXIT_OK
    if action == "invert":
        print(symrep.format_element(symrep.invert_sym(elements[0])), file=out)
        return EXIT_OK
    order, gens = symrep.cenelt(ctx, elements[0])
    print(f"centralizer order: {order}", file=out)
    for g in gens:
        print(f"  {symrep.format_element(g)}", file=out)
    return EXIT_OK


def _selftest_one(name: str) -> tuple[str, int, str]:
    import io
    buf = io.StringIO()
    code = _enumerate(load_bundled(name), buf)
    return name, code, buf.getvalue()


def _selftest(jobs: int, out) -> int:
    names = bundled_fixture_names()
    worst = EXIT_OK
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_selftest_one, names))
    else:
        results = [_selftest_one(name) for name in names]
    for name, code, text in results:
        status = "ok" if code == EXIT_OK else f"FAILED (exit {code})"
        print(f"== {name}: {status}", file=out)
        out.write(text)
        worst = max(worst, code)
    return worst


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symgen",
        description="Symmetric generation: enumeration, graphs, element arithmetic")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="run double coset enumeration")
    p.add_argument("spec")

    p = sub.add_parser("graph", help="emit the collapsed Cayley graph")
    p.add_argument("spec")
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.add_argument("--out")

    p = sub.add_parser("elt", help="element arithmetic in symmetric form")
    p.add_argument("spec")
    p.add_argument("action", choices=["convert", "mult", "invert", "centralize"])
    p.add_argument("elements", nargs="*")

    p = sub.add_parser("selftest", help="enumerate all bundled fixtures")
    p.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "enumerate":
            return _enumerate(_load(args.spec), out)
        if args.command == "graph":
            return _graph(_load(args.spec), args.format, args.out, out)
        if args.command == "elt":
            return _elt(_load(args.spec), args.action, args.elements, out)
        return _selftest(args.jobs, out)
    except CosetLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (SpecFileError, ValueError) as exc:
        from .perm import IdentificationError
        membership = isinstance(exc, IdentificationError) or \
            "not in the control group" in str(exc) or \
            "is not in the group" in str(exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MEMBERSHIP if membership else EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
