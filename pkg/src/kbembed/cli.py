"""Command-line front end.

Exit codes: 0 success / complete / embeds, 2 parse or input error,
3 fuel exhausted, 4 completion budget exhausted, 5 inconclusive,
6 graph not bipartite.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .completion import CompletionConfig, knuth_bendix, rule_record, trace_document, trace_lines
from .core import Kind, format_presentation, format_word, parse_presentation, parse_word
from .embedding import (
    adian_criterion,
    adian_graphs,
    embed_verdict,
    probe_isomorphism,
    seed_system,
    verdict_document,
    VerdictStatus,
)
from .errors import FuelExhausted, KBError
from .ordering import LetterOrder, parse_order
from .raag import (
    NotBipartite,
    coloring_order,
    default_order,
    format_coloring,
    parse_graph,
    raag_normal_form,
    raag_presentation,
    raag_re0,
    two_coloring,
)
from .rewriting import format_rule, normal_form, parse_system

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_FUEL = 3
EXIT_BUDGET = 4
EXIT_INCONCLUSIVE = 5
EXIT_NOT_BIPARTITE = 6


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise KBError(f"cannot read {path}: {exc.strerror}") from None


def _order(arg: Optional[str], alphabet) -> Optional[LetterOrder]:
    if arg is None:
        return None
    text = _read(arg) if os.path.isfile(arg) else arg
    lines = [ln for ln in text.splitlines() if ln.split("#", 1)[0].strip()]
    return parse_order(lines[0] if lines else "", alphabet)


def _config(args) -> CompletionConfig:
    return CompletionConfig(
        max_steps=args.max_steps,
        max_rules=args.max_rules,
        max_rule_length=args.max_rule_length,
        record_trace=True,
    )


def _emit(args, doc: dict, human: list[str]) -> None:
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in human:
            print(line)


def cmd_nf(args) -> int:
    if args.system:
        rs = parse_system(_read(args.system))
        status = None
    else:
        seed, order = _seed(args)
        out = knuth_bendix(seed, order, _config(args))
        rs, status = out.system, out.status.value
    w = parse_word(args.word, rs.alphabet)
    nf = normal_form(rs, w, args.fuel)
    text = format_word(nf, rs.alphabet)
    _emit(args, {"word": format_word(w, rs.alphabet), "normal_form": text, "completion": status}, [text])
    return EXIT_OK


def _seed(args):
    """Seed system and order from ``--presentation`` or ``--raag``."""
    if getattr(args, "raag", None):
        g = parse_graph(_read(args.raag))
        order = _order(args.order, g.vertices) or default_order(g)
        return raag_re0(g, order), order
    p = parse_presentation(_read(args.presentation))
    order = _order(args.order, p.alphabet) or LetterOrder.interleaved(p.alphabet)
    return seed_system(p, order), order


def cmd_complete(args) -> int:
    seed, order = _seed(args)
    out = knuth_bendix(seed, order, _config(args))
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write("\n".join(trace_lines(out)) + "\n")
    if args.trace_json:
        with open(args.trace_json, "w", encoding="utf-8") as fh:
            json.dump(trace_document(out), fh, indent=2, sort_keys=True)
            fh.write("\n")
    a = out.system.alphabet
    created = sum(1 for r in out.system.rules if r.step > 0)
    doc = {
        "status": out.status.value,
        "exhausted": out.exhausted,
        "steps_run": out.steps_run,
        "created": created,
        "rules": [rule_record(r, a) for r in out.system.rules],
    }
    human = [f"{r.id}: {format_rule(r, a)}" + (f"  [step {r.step}]" if r.step else "") for r in out.system.rules]
    status = f"status: {out.status.value.replace('_', ' ')}"
    if out.exhausted:
        status += f" ({out.exhausted})"
    human += [status, f"rules: {len(out.system)} ({created} created)"]
    _emit(args, doc, human)
    return EXIT_OK if out.complete else EXIT_BUDGET


def cmd_embed(args) -> int:
    adian = None
    if args.raag:
        g = parse_graph(_read(args.raag))
        p = raag_presentation(g)
        order = _order(args.order, p.alphabet)
        if order is None:
            col = two_coloring(g)
            order = default_order(g) if isinstance(col, NotBipartite) else coloring_order(g, col)
    else:
        p = parse_presentation(_read(args.presentation))
        if p.kind is not Kind.GROUP:
            raise KBError("embed expects a group presentation (kind: group)")
        order = _order(args.order, p.alphabet)
    precompleted = parse_system(_read(args.precompleted)) if args.precompleted else None
    v = embed_verdict(p, order, _config(args), precompleted=precompleted, fuel=args.fuel)
    try:
        adian = adian_criterion(adian_graphs(p))
    except KBError:
        adian = None
    doc = verdict_document(v, adian)
    human = [f"status: {v.status.value}"]
    if v.reasons:
        human += [f"reason: {r}" for r in v.reasons]
    if v.status is VerdictStatus.EMBEDS:
        human.append("positive rules (M = Mon<X | R+>):")
        human += [f"  {r.id}: {format_rule(r, v.positive_system.alphabet)}" for r in v.positive_system.rules]
    if args.check_n:
        n = parse_presentation(_read(args.check_n))
        probe = probe_isomorphism(n, v.positive_system, args.depth, fuel=args.fuel)
        doc["isomorphism_probe"] = {
            "consistent": probe.consistent,
            "depth": probe.depth,
            "words_checked": probe.words_checked,
            "undecided": probe.undecided,
            "note": "bounded necessary condition only; not a proof of isomorphism",
        }
        human.append(
            f"N vs M up to length {probe.depth}: "
            + ("no difference found (not a proof)" if probe.consistent else "partitions differ")
        )
    _emit(args, doc, human)
    return EXIT_OK if v.status is VerdictStatus.EMBEDS else EXIT_INCONCLUSIVE


def cmd_adian(args) -> int:
    p = parse_presentation(_read(args.presentation))
    res = adian_criterion(adian_graphs(p))
    doc = {
        "left_cycle": res.left_has_cycle,
        "right_cycle": res.right_has_cycle,
        "embeds_by_adian": res.embeds_by_adian,
    }
    human = [
        f"left cycle: {'yes' if res.left_has_cycle else 'no'}",
        f"right cycle: {'yes' if res.right_has_cycle else 'no'}",
        "embeds_by_adian" if res.embeds_by_adian else "nothing can be concluded",
    ]
    _emit(args, doc, human)
    return EXIT_OK if res.embeds_by_adian else EXIT_INCONCLUSIVE


def cmd_raag(args) -> int:
    g = parse_graph(_read(args.graph))
    names = g.vertices.generators
    order = _order(args.order, g.vertices) or default_order(g)
    doc: dict = {}
    human: list[str] = []
    code = EXIT_OK
    if args.emit_presentation:
        text = format_presentation(raag_presentation(g))
        doc["presentation"] = text
        human += text.splitlines()
    if args.emit_re0:
        re0 = raag_re0(g, order)
        doc["re0"] = [rule_record(r, g.vertices) for r in re0.rules]
        human += [f"rule: {format_rule(r, g.vertices)}" for r in re0.rules]
    if args.color:
        col = two_coloring(g)
        if isinstance(col, NotBipartite):
            doc["not_bipartite"] = [names[v] for v in col.cycle]
            human.append("not bipartite; odd cycle: " + " - ".join(names[v] for v in col.cycle))
            code = EXIT_NOT_BIPARTITE
        else:
            doc["coloring"] = {names[v]: c.value for v, c in col.items()}
            human += format_coloring(g, col).splitlines()
    if args.nf is not None:
        w = parse_word(args.nf, g.vertices)
        nf = format_word(raag_normal_form(g, order, w), g.vertices)
        doc["normal_form"] = nf
        human.append(nf)
    _emit(args, doc, human)
    return code


def _add_budgets(sp) -> None:
    sp.add_argument("--max-steps", type=int, default=10)
    sp.add_argument("--max-rules", type=int, default=10_000)
    sp.add_argument("--max-rule-length", type=int, default=32, help="0 = unlimited")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kbembed", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("nf", help="normal form of a word")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--system", help="rewriting system file")
    src.add_argument("--presentation", help="presentation file (completed first)")
    src.add_argument("--raag", help="defining graph file (completed first)")
    sp.add_argument("--order")
    sp.add_argument("--word", required=True)
    sp.add_argument("--fuel", type=int)
    _add_budgets(sp)
    sp.set_defaults(func=cmd_nf)

    sp = sub.add_parser("complete", help="run Knuth-Bendix completion")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--presentation")
    src.add_argument("--raag", help="defining graph file; seeds with all signed commutation rules")
    sp.add_argument("--order")
    sp.add_argument("--trace", help="write the line-oriented trace here")
    sp.add_argument("--trace-json", help="write the structured trace here")
    _add_budgets(sp)
    sp.set_defaults(func=cmd_complete)

    sp = sub.add_parser("embed", help="positive-monoid embedding verdict")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--presentation")
    src.add_argument("--raag", help="defining graph file")
    sp.add_argument("--order")
    sp.add_argument("--precompleted", help="use this system instead of running completion")
    sp.add_argument("--fuel", type=int)
    sp.add_argument("--check-n", help="presentation of N for the bounded isomorphism probe")
    sp.add_argument("--depth", type=int, default=4)
    _add_budgets(sp)
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("adian", help="Adian left/right graph criterion")
    sp.add_argument("--presentation", required=True)
    sp.set_defaults(func=cmd_adian)

    sp = sub.add_parser("raag", help="right-angled Artin group tools")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--order")
    sp.add_argument("--emit-presentation", action="store_true")
    sp.add_argument("--emit-re0", action="store_true")
    sp.add_argument("--color", action="store_true")
    sp.add_argument("--nf", metavar="WORD")
    sp.set_defaults(func=cmd_raag)

    for p in sub.choices.values():
        p.add_argument("--json", action="store_true", help="structured output")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FuelExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FUEL
    except (KBError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
