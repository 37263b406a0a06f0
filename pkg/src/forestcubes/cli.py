"""Command-line front end.

Exit codes: 0 all requested checks pass, 1 a check failed (the report
carries a witness), 2 usage or configuration error.  Identical invocations
produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .complexes import build_complex, check_npc, model_json, skeleton_dot
from .cover import (
    lift_word,
    parse_word,
    presentation,
    verify_covering,
    verify_relators,
    word_image,
)
from .forests import ForestError, enumerate_forests
from .hyperplanes import (
    hyperplanes_dot,
    specialness_report,
    verify_type_lemma,
)
from .params import param_hex, parse_param, type_index

CHECKS = ("npc", "special", "cover", "types", "relators")


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="forestcubes",
        description="Build forest-labelled cube complexes and verify their structure.",
    )
    top.add_argument("--version", action="version", version=f"forestcubes {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, space=True, fmt=("text", "json")):
        p.add_argument("--n", type=int, choices=(2, 3, 4), default=3)
        if space:
            p.add_argument("--space", choices=("base", "cover"), default="base")
        p.add_argument("--format", choices=fmt, default=fmt[0])
        p.add_argument("--out", help="write the report to a file instead of stdout")

    p = sub.add_parser("enumerate", help="list forests with a given edge count")
    p.add_argument("--n", type=int, choices=(2, 3, 4, 5), default=3)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")

    p = sub.add_parser("build", help="build a complex and report its census")
    common(p)

    p = sub.add_parser("check", help="run a verification")
    p.add_argument("what", choices=CHECKS)
    common(p)

    p = sub.add_parser("lift", help="trace a word through the cover")
    p.add_argument("--word", required=True, help="for example s(2,1)·s(3,1,2)")
    p.add_argument("--start", default="0", help="start parameter, hex")
    p.add_argument("--n", type=int, choices=(2, 3, 4))
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")

    p = sub.add_parser("presentation", help="print a group presentation")
    p.add_argument("--kind", choices=("cactus", "virtual_cactus", "pvcn"), required=True)
    p.add_argument("--n", type=int, choices=(2, 3, 4), default=3)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")

    p = sub.add_parser("export", help="export DOT graphs")
    p.add_argument("--what", choices=("skeleton", "hyperplanes"), required=True)
    common(p, fmt=("dot",))

    return top


def _emit(text: str, out_path: str | None, stream) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        stream.write(text)


def _envelope(n: int, payload: dict) -> dict:
    head = {
        "tool": {"name": "forestcubes", "version": __version__},
        "typeOrder": type_index(n).labels(),
    }
    head.update(payload)
    return head


def _dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_enumerate(args, stream) -> int:
    try:
        forests = enumerate_forests(args.n, args.k)
    except ForestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    serials = [f.serialize() for f in forests]
    if args.format == "json":
        text = _dumps(
            _envelope(args.n, {"n": args.n, "k": args.k, "count": len(serials), "forests": serials})
        )
    else:
        text = "\n".join(serials) + "\n"
    _emit(text, args.out, stream)
    return 0


def _cmd_build(args, stream) -> int:
    model = build_complex(args.n, args.space)
    if args.format == "json":
        text = _dumps(model_json(model))
    else:
        text = model.describe() + "\n"
    _emit(text, args.out, stream)
    return 0


def _cmd_check(args, stream) -> int:
    n, space = args.n, args.space
    if args.what == "npc":
        report = check_npc(build_complex(n, space))
        payload = {"check": "npc", "n": n, "space": space}
        payload.update(report.to_json())
        lines = [
            f"npc check ({space}, n={n}): simplicial={report.simplicial} flag={report.flag}"
        ]
        if report.witness:
            lines.append(f"witness: {report.witness}")
        passed = report.passed
    elif args.what == "special":
        report = specialness_report(build_complex(n, space))
        payload = {"check": "special", "space": space}
        payload.update(report.to_json())
        lines = [
            f"specialness check ({space}, n={n}): {len(report.hyperplanes)} hyperplanes",
            f"two-sided: {'all' if report.all_two_sided else 'FAILED'}",
            f"self-intersection: {'none' if not report.any_self_intersection else 'FOUND'}",
            f"self-osculation: {'none' if not report.any_self_osculation else 'FOUND'}",
            f"inter-osculation: {'none' if not report.any_inter_osculation else 'FOUND'}",
            f"same-type intersections: {report.same_type_intersections}",
        ]
        lines += [f"witness: {w}" for w in report.witnesses]
        passed = report.passed
    elif args.what == "cover":
        report = verify_covering(n)
        payload = {"check": "cover", "space": "cover"}
        payload.update(report.to_json())
        lines = [
            f"covering check (n={n}): degree {report.degree_actual}"
            f" (expected {report.degree_expected})",
            f"cells map to cells: {report.cells_ok}",
            f"link isomorphisms: {report.links_checked} checked, ok={report.links_ok}",
        ]
        if report.witness:
            lines.append(f"witness: {report.witness}")
        passed = report.passed
    elif args.what == "types":
        if space != "base":
            print("error: the type lemma is a base-space check", file=sys.stderr)
            return 2
        report = verify_type_lemma(build_complex(n, "base"))
        payload = {"check": "types", "n": n, "space": "base"}
        payload.update(report.to_json())
        lines = [
            f"type lemma (base, n={n}): {report.hyperplane_count} hyperplanes"
            f" (expected {2**n - n - 1})"
        ]
        if report.witness:
            lines.append(f"witness: {report.witness}")
        passed = report.passed and report.hyperplane_count == 2**n - n - 1
        payload["pass"] = passed
    else:  # relators
        report = verify_relators(n)
        payload = {"check": "relators", "space": "base"}
        payload.update(report.to_json())
        lines = [
            f"relator check (n={n}): {report.relator_count} relators,"
            f" {report.four_letter_count} four-letter,"
            f" {report.square_class_count} square classes",
            f"zero image: {report.all_zero_image}, closed lifts: {report.all_closed},"
            f" realized by squares: {report.all_realized},"
            f" squares are relators: {report.squares_are_relators}",
        ]
        if report.witness:
            lines.append(f"witness: {report.witness}")
        passed = report.passed

    lines.append("PASS" if passed else "FAIL")
    if args.format == "json":
        text = _dumps(_envelope(n, payload))
    else:
        text = "\n".join(lines) + "\n"
    _emit(text, args.out, stream)
    return 0 if passed else 1


def _cmd_lift(args, stream) -> int:
    try:
        word = parse_word(args.word)
        start = parse_param(args.start)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    n = args.n or max((max(a) for a in word), default=2)
    if n not in (2, 3, 4):
        print(f"error: inferred n={n} unsupported, pass --n", file=sys.stderr)
        return 2
    try:
        result = lift_word(n, word, start)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        payload = {"command": "lift", "n": n, "word": args.word}
        payload.update(result.to_json())
        payload["image"] = param_hex(word_image(n, word))
        text = _dumps(_envelope(n, payload))
    else:
        text = (
            f"word: {args.word}\n"
            f"start: {param_hex(result.start)}\n"
            f"end: {param_hex(result.end)}\n"
            f"closed: {result.closed}\n"
        )
    _emit(text, args.out, stream)
    return 0


def _cmd_presentation(args, stream) -> int:
    pres = presentation(args.kind, args.n)
    if args.format == "json":
        text = _dumps(_envelope(args.n, pres.to_json()))
    else:
        text = pres.text()
    _emit(text, args.out, stream)
    return 0


def _cmd_export(args, stream) -> int:
    model = build_complex(args.n, args.space)
    if args.what == "skeleton":
        text = skeleton_dot(model)
    else:
        text = hyperplanes_dot(specialness_report(model))
    _emit(text, args.out, stream)
    return 0


def run(argv: list[str], stream=None) -> int:
    stream = stream or sys.stdout
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        if args.command == "enumerate":
            return _cmd_enumerate(args, stream)
        if args.command == "build":
            return _cmd_build(args, stream)
        if args.command == "check":
            return _cmd_check(args, stream)
        if args.command == "lift":
            return _cmd_lift(args, stream)
        if args.command == "presentation":
            return _cmd_presentation(args, stream)
        if args.command == "export":
            return _cmd_export(args, stream)
    except (ForestError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
