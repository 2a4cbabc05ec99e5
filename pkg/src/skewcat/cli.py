"""Batch front end.

Every command prints a JSON document on standard output and a short
human-readable explanation on standard error.  Exit codes: 0 when the input
passes / the property holds, 1 for law or property failures, 2 for unreadable
or structurally invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .correspondence import (
    NotLeftRepresentable, monoidal_to_multicat, multicat_to_monoidal,
    roundtrip_monoidal, roundtrip_multicat,
)
from .fincat import StructureError, category_from_json, check_category, report_to_json
from .representability import analyze
from .search import enumerate_skew_structures
from .skewmon import check_skew_monoidal, skewmon_from_json, skewmon_to_json
from .tmulticat import check_tmulticat, multicat_from_json, multicat_to_json

_CATEGORY_KEYS = {"objects", "morphisms", "identities", "compose"}
_MONOIDAL_KEYS = {"category", "tensor", "unit", "alpha", "lambda", "rho"}
_MULTICAT_KEYS = {"operad", "max_arity", "objects", "homs", "identities", "action", "subst"}


def _emit(data: dict | list, message: str) -> None:
    print(json.dumps(data, sort_keys=True, indent=2))
    print(message, file=sys.stderr)


def _fail_input(message: str) -> int:
    _emit({"error": message}, f"input error: {message}")
    return 2


def _load(path: str):
    """Returns ("category" | "monoidal" | "multicat", parsed structure)."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise StructureError("top-level JSON must be an object")
    keys = set(data)
    if keys == _CATEGORY_KEYS:
        return "category", category_from_json(data)
    if keys == _MONOIDAL_KEYS:
        return "monoidal", skewmon_from_json(data)
    if keys == _MULTICAT_KEYS:
        return "multicat", multicat_from_json(data)
    raise StructureError(f"unrecognized schema with keys {sorted(keys)}")


def _arity(value: int) -> int:
    if value > 6:
        raise StructureError("--max-arity is capped at 6")
    if value >= 5:
        print(f"warning: --max-arity {value} is combinatorially expensive",
              file=sys.stderr)
    return value


def cmd_check(path: str) -> int:
    try:
        kind, value = _load(path)
        checker = {"category": check_category, "monoidal": check_skew_monoidal,
                   "multicat": check_tmulticat}[kind]
        report = checker(value)
    except (OSError, json.JSONDecodeError, StructureError) as exc:
        return _fail_input(str(exc))
    _emit({"kind": kind, "violations": report_to_json(report)},
          f"{kind}: {'all laws hold' if not report else f'{len(report)} violations'}")
    return 0 if not report else 1


def cmd_analyze(path: str, max_arity: int) -> int:
    try:
        max_arity = _arity(max_arity)
        kind, value = _load(path)
        if kind == "category":
            raise StructureError("analyze expects a skew multicategory or skew monoidal category")
        if kind == "monoidal":
            report = check_skew_monoidal(value)
            if report:
                _emit({"kind": kind, "violations": report_to_json(report)},
                      "input fails its own laws; fix before analyzing")
                return 1
            value = monoidal_to_multicat(value, max_arity)
        elif value.operad.name != "R":
            raise StructureError("analyze requires tight/loose typing (operad R)")
        else:
            report = check_tmulticat(value)
            if report:
                _emit({"kind": kind, "violations": report_to_json(report)},
                      "input fails its own laws; fix before analyzing")
                return 1
    except (OSError, json.JSONDecodeError, StructureError) as exc:
        return _fail_input(str(exc))
    result = analyze(value)
    _emit(result, "analyzed up to arity "
          f"{result['checked_up_to_arity']}: left_representable={result['left_representable']}")
    return 0


def cmd_convert(path: str, to: str, max_arity: int) -> int:
    try:
        max_arity = _arity(max_arity)
        kind, value = _load(path)
        if to == "multicat":
            if kind != "monoidal":
                raise StructureError("convert --to multicat expects a skew monoidal input")
            out = multicat_to_json(monoidal_to_multicat(value, max_arity))
            _emit(out, f"converted to a skew multicategory at arity {max_arity}")
            return 0
        if kind != "multicat":
            raise StructureError("convert --to monoidal expects a skew multicategory input")
        if value.operad.name != "R":
            raise StructureError("convert --to monoidal requires tight/loose typing")
    except (OSError, json.JSONDecodeError, StructureError) as exc:
        return _fail_input(str(exc))
    try:
        conv = multicat_to_monoidal(value)
    except NotLeftRepresentable as exc:
        _emit({"error": "not left representable", "missing": str(exc.missing)},
              f"cannot convert: {exc}")
        return 1
    except StructureError as exc:
        return _fail_input(str(exc))
    _emit(skewmon_to_json(conv.monoidal), "converted to a skew monoidal category")
    return 0


def cmd_roundtrip(path: str, max_arity: int) -> int:
    try:
        max_arity = _arity(max_arity)
        kind, value = _load(path)
        if kind == "monoidal":
            verdict = roundtrip_monoidal(value, max_arity)
        elif kind == "multicat" and value.operad.name == "R":
            verdict = roundtrip_multicat(value)
        else:
            raise StructureError("roundtrip expects a skew monoidal category or skew multicategory")
    except (OSError, json.JSONDecodeError, StructureError) as exc:
        return _fail_input(str(exc))
    _emit(verdict.to_json(),
          "round trip " + ("isomorphic" if verdict.isomorphic else "FAILED"))
    return 0 if verdict.isomorphic else 1


def cmd_search(objects_path: str, emit_dir: str) -> int:
    try:
        with open(objects_path, encoding="utf-8") as fh:
            base = category_from_json(json.load(fh))
        report = check_category(base)
        if report:
            _emit({"kind": "category", "violations": report_to_json(report)},
                  "search base category fails its laws")
            return 1
    except (OSError, json.JSONDecodeError, StructureError) as exc:
        return _fail_input(str(exc))
    os.makedirs(emit_dir, exist_ok=True)
    found = enumerate_skew_structures(base)
    files = []
    for idx, structure in enumerate(found):
        name = f"structure_{idx:03d}.json"
        with open(os.path.join(emit_dir, name), "w", encoding="utf-8") as fh:
            json.dump(skewmon_to_json(structure), fh, sort_keys=True, indent=2)
            fh.write("\n")
        files.append(name)
    _emit({"count": len(found), "files": files},
          f"found {len(found)} skew monoidal structures")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="skewcat",
        description="check, analyze, convert and search finite skew monoidal "
                    "categories and skew multicategories")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a structure file against its laws")
    p.add_argument("path")

    p = sub.add_parser("analyze", help="representability and closedness report")
    p.add_argument("path")
    p.add_argument("--max-arity", type=int, default=4)

    p = sub.add_parser("convert", help="translate between the two presentations")
    p.add_argument("path")
    p.add_argument("--to", choices=("multicat", "monoidal"), required=True)
    p.add_argument("--max-arity", type=int, default=4)

    p = sub.add_parser("roundtrip", help="convert there and back, then search for an isomorphism")
    p.add_argument("path")
    p.add_argument("--max-arity", type=int, default=4)

    p = sub.add_parser("search", help="enumerate all skew monoidal structures on a category")
    p.add_argument("--objects", required=True, metavar="FILE")
    p.add_argument("--emit", required=True, metavar="DIR")

    args = parser.parse_args(argv)
    if args.command == "check":
        return cmd_check(args.path)
    if args.command == "analyze":
        return cmd_analyze(args.path, args.max_arity)
    if args.command == "convert":
        return cmd_convert(args.path, args.to, args.max_arity)
    if args.command == "roundtrip":
        return cmd_roundtrip(args.path, args.max_arity)
    return cmd_search(args.objects, args.emit)


if __name__ == "__main__":
    sys.exit(main())
