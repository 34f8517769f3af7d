"""Command-line entry point.

Payloads (JSON or presentation text) go to stdout, diagnostics to stderr.
Exit status: 0 success, 1 a valid negative answer (failed verification,
nothing found within budget), 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import catalog
from .compiler import CompileContext, compile_source_equality, compile_specific
from .encoder import RecordMode, build_pipeline, free_product_with_free_generator
from .errors import BudgetExhausted, InvalidInput
from .presentations import (Derivation, check_derivation, classify_presentation, derivation_from_json,
                            derivation_to_json, format_presentation, parse_presentation)
from .rewriting import (check_local_confluence, complete_knuth_bendix, critical_pairs,
                        decide_termination_on_word, normalize, parse_rewrite_system)
from .search import Found, search_equality
from .words import format_word

SCHEMA = "stylus/1"


class UsageError(Exception):
    pass


def emit_report(payload: dict, fmt: str = "json") -> str:
    """Render a report with a leading ``schema`` key and stable key order."""
    ordered = {"schema": payload.get("schema", SCHEMA), **{k: v for k, v in payload.items() if k != "schema"}}
    if fmt == "json":
        return json.dumps(ordered, indent=1)
    return "\n".join(f"{k}: {v}" for k, v in ordered.items())


def _diag(message: str) -> None:
    if sys.stderr.isatty() and not os.environ.get("NO_COLOR"):
        message = f"\033[31m{message}\033[0m"
    print(message, file=sys.stderr)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _load_presentation(ref: str):
    if Path(ref).exists():
        return parse_presentation(_read_text(ref))
    try:
        return catalog.resolve_name(ref)
    except InvalidInput:
        raise UsageError(f"{ref!r} is neither a readable file nor a catalog name") from None


def _load_system(ref: str):
    return parse_rewrite_system(_read_text(ref))


def _load_certificate(path: str) -> Derivation:
    try:
        data = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not JSON: {exc}") from None
    return derivation_from_json(data)


def _certificate_payload(d: Derivation) -> dict:
    return {"schema": SCHEMA, **derivation_to_json(d)}


# -- catalog -----------------------------------------------------------------


def cmd_catalog_list(args):
    print("\n".join(catalog.NAMES))
    return 0


def cmd_catalog_show(args):
    entry = catalog.get_entry(args.name, args.i, args.j)
    sys.stdout.write(format_presentation(entry.presentation))
    if not entry.complete:
        _diag(f"partial entry: {entry.metadata}")
    return 0


def cmd_catalog_stats(args):
    entry = catalog.get_entry(args.name, args.i, args.j)
    st = catalog.letter_statistics(entry.presentation)
    print(emit_report({"name": entry.name, "relations": st.relation_count,
                       "letters": st.letter_occurrence_count, "per_relation": list(st.per_relation),
                       "complete": entry.complete}))
    return 0


def cmd_classify(args):
    rep = classify_presentation(_load_presentation(args.presentation))
    print(emit_report({"special": rep.is_special, "positive": rep.is_positive, "monadic": rep.is_monadic,
                       "relations": rep.relation_count, "letters": rep.letter_occurrence_count}))
    return 0


# -- pipeline and compilation ------------------------------------------------


def cmd_pipeline_build(args):
    p = _load_presentation(args.presentation)
    bundle = build_pipeline(p, args.i, mode=RecordMode(args.mode))
    print(emit_report(bundle.to_json()))
    return 0


def _source_witness(args, p, lhs, rhs):
    if args.witness:
        d = _load_certificate(args.witness)
        if d.presentation.relations != p.relations:
            raise UsageError("witness is over a different presentation")
        if d.start != lhs or d.end != rhs:
            raise UsageError("witness endpoints do not match --lhs/--rhs")
        if not check_derivation(d).ok:
            raise UsageError("witness fails its check")
        return Derivation(p, d.start, d.steps, d.end)
    if args.budget_nodes is None or args.budget_depth is None:
        raise UsageError("without --witness both --budget-nodes and --budget-depth are required")
    result = search_equality(p, lhs, rhs, max_nodes=args.budget_nodes, max_depth=args.budget_depth)
    if not isinstance(result, Found):
        return None
    _diag(f"source witness found: {len(result.derivation)} steps")
    return result.derivation


def cmd_compile_equality(args):
    p = _load_presentation(args.presentation)
    lhs, rhs = p.alphabet.parse(args.lhs), p.alphabet.parse(args.rhs)
    d = _source_witness(args, p, lhs, rhs)
    if d is None:
        _diag("no source witness within budget")
        return 1
    ctx = CompileContext.for_bundle(build_pipeline(p, args.i))
    cert = compile_source_equality(ctx, d)
    print(json.dumps(_certificate_payload(cert), indent=1))
    return 0


def cmd_compile_specific(args):
    p = _load_presentation(args.presentation)
    word = p.alphabet.parse(args.word)
    d = _source_witness(args, p, word, ())
    if d is None:
        _diag("no source witness within budget")
        return 1
    extended = free_product_with_free_generator(p, "y")
    bundle = build_pipeline(extended, args.i, rank={"y": args.j})
    ctx = CompileContext.for_bundle(bundle, args.j)
    cert = compile_specific(ctx, d)
    print(json.dumps(_certificate_payload(cert), indent=1))
    return 0


def cmd_verify(args):
    d = _load_certificate(args.certificate)
    report = check_derivation(d)
    payload = {"ok": report.ok, "steps": len(d.steps), "start": format_word(d.start),
               "end": format_word(d.end)}
    if not report.ok:
        payload["failed_step"] = report.failed_step
        _diag(f"verification failed at step {report.failed_step}: {report.reason}")
    print(emit_report(payload))
    return 0 if report.ok else 1


def cmd_solve(args):
    p = _load_presentation(args.presentation)
    u, v = p.alphabet.parse(args.lhs), p.alphabet.parse(args.rhs)
    result = search_equality(p, u, v, max_nodes=args.budget_nodes, max_depth=args.budget_depth)
    if isinstance(result, Found):
        print(json.dumps(_certificate_payload(result.derivation), indent=1))
        return 0
    print(emit_report({"result": "not-found-within-budget", "expanded": result.expanded,
                       "depth": result.depth, "class_exhausted": result.exhausted}))
    return 1


# -- rewriting ---------------------------------------------------------------


def cmd_rewrite_normalize(args):
    s = _load_system(args.system)
    try:
        word, d = normalize(s, s.alphabet.parse(args.word), args.max_steps)
    except BudgetExhausted as exc:
        _diag(str(exc))
        print(emit_report({"result": "budget-exhausted", "word": format_word(exc.word)}))
        return 1
    print(format_word(word))
    return 0


def _pair_json(cp):
    return {"peak": format_word(cp.peak), "left": format_word(cp.left), "right": format_word(cp.right),
            "rules": list(cp.rules), "offset": cp.offset, "kind": cp.kind}


def cmd_rewrite_critical_pairs(args):
    s = _load_system(args.system)
    print(emit_report({"pairs": [_pair_json(cp) for cp in critical_pairs(s)]}))
    return 0


def cmd_rewrite_confluence(args):
    s = _load_system(args.system)
    res = check_local_confluence(s, args.join_budget)
    payload = {"verdict": res.status.value, "pairs_checked": res.pairs_checked}
    if res.witness is not None:
        payload["witness"] = _pair_json(res.witness)
    if res.normal_forms is not None:
        payload["normal_forms"] = [format_word(w) for w in res.normal_forms]
    print(emit_report(payload))
    return 1 if res.status.value == "not-locally-confluent" else 0


def cmd_rewrite_complete(args):
    p = _load_presentation(args.presentation)
    ranking = args.ranking.split() if args.ranking else None
    res = complete_knuth_bendix(p, ranking, max_rules=args.max_rules, max_normalizations=args.max_normalizations)
    print(emit_report({"status": res.status.value, "reason": res.reason,
                       "rules": [str(r) for r in res.system.rules], "system": res.system.to_text()}))
    return 0 if res.status.value == "completed" else 1


def cmd_rewrite_termination(args):
    s = _load_system(args.system)
    v = decide_termination_on_word(s, s.alphabet.parse(args.word), args.max_closure)
    payload = {"verdict": v.verdict.value, "explored": v.explored}
    if v.closure_size is not None:
        payload["closure_size"] = v.closure_size
        payload["max_chain"] = v.max_chain
    if v.cycle is not None:
        payload["cycle"] = derivation_to_json(v.cycle)
        payload["prefix"] = derivation_to_json(v.prefix)
    print(emit_report(payload))
    return 0 if v.verdict.value == "terminates" else 1


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stylus", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("catalog", help="browse named presentations").add_subparsers(dest="action", required=True)
    cat.add_parser("list").set_defaults(func=cmd_catalog_list)
    for action, func in (("show", cmd_catalog_show), ("stats", cmd_catalog_stats)):
        sp = cat.add_parser(action)
        sp.add_argument("name")
        sp.add_argument("--i", type=int)
        sp.add_argument("--j", type=int)
        sp.set_defaults(func=func)

    sp = sub.add_parser("classify")
    sp.add_argument("--presentation", required=True)
    sp.set_defaults(func=cmd_classify)

    pipe = sub.add_parser("pipeline").add_subparsers(dest="action", required=True)
    sp = pipe.add_parser("build")
    sp.add_argument("--presentation", required=True)
    sp.add_argument("--i", type=int, default=0)
    sp.add_argument("--mode", choices=[m.value for m in RecordMode], default="compiler")
    sp.set_defaults(func=cmd_pipeline_build)

    comp = sub.add_parser("compile").add_subparsers(dest="action", required=True)
    sp = comp.add_parser("equality")
    sp.add_argument("--presentation", required=True)
    sp.add_argument("--i", type=int, default=0)
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)
    sp.add_argument("--witness")
    sp.add_argument("--budget-nodes", type=int)
    sp.add_argument("--budget-depth", type=int)
    sp.set_defaults(func=cmd_compile_equality)
    sp = comp.add_parser("specific")
    sp.add_argument("--presentation", required=True)
    sp.add_argument("--i", type=int, default=1)
    sp.add_argument("--j", type=int, default=0)
    sp.add_argument("--word", required=True)
    sp.add_argument("--witness")
    sp.add_argument("--budget-nodes", type=int)
    sp.add_argument("--budget-depth", type=int)
    sp.set_defaults(func=cmd_compile_specific)

    sp = sub.add_parser("verify")
    sp.add_argument("certificate")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("solve")
    sp.add_argument("--presentation", required=True)
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)
    sp.add_argument("--budget-nodes", type=int, required=True)
    sp.add_argument("--budget-depth", type=int, required=True)
    sp.set_defaults(func=cmd_solve)

    rw = sub.add_parser("rewrite").add_subparsers(dest="action", required=True)
    sp = rw.add_parser("normalize")
    sp.add_argument("--system", required=True)
    sp.add_argument("--word", required=True)
    sp.add_argument("--max-steps", type=int, default=100_000)
    sp.set_defaults(func=cmd_rewrite_normalize)
    sp = rw.add_parser("critical-pairs")
    sp.add_argument("--system", required=True)
    sp.set_defaults(func=cmd_rewrite_critical_pairs)
    sp = rw.add_parser("confluence")
    sp.add_argument("--system", required=True)
    sp.add_argument("--join-budget", type=int, default=10_000)
    sp.set_defaults(func=cmd_rewrite_confluence)
    sp = rw.add_parser("complete")
    sp.add_argument("--presentation", required=True)
    sp.add_argument("--ranking", help="symbols smallest first, e.g. 'b a'")
    sp.add_argument("--max-rules", type=int, required=True)
    sp.add_argument("--max-normalizations", type=int, required=True)
    sp.set_defaults(func=cmd_rewrite_complete)
    sp = rw.add_parser("termination")
    sp.add_argument("--system", required=True)
    sp.add_argument("--word", required=True)
    sp.add_argument("--max-closure", type=int, required=True)
    sp.set_defaults(func=cmd_rewrite_termination)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, InvalidInput) as exc:
        _diag(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
