"""Step-indexed Knuth-Bendix completion with a provenance trace.

Step n looks at every ambiguity of the system obtained at step n-1 that
involves a rule created at step n-1 (seed rules count as step 0).  Both
words of each critical pair are normalised modulo that previous system.
The surviving pairs are then admitted shortest first, and a pair that
becomes joinable through a rule admitted earlier in the same step adds
nothing.  The outcome of a step therefore does not depend on the order
in which its ambiguities are visited.  Rules are never deleted.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Optional

from .core import format_word
from .errors import MalformedSystem, MissingTrace
from .ordering import GREATER, LetterOrder, compare_shortlex, orient
from .rewriting import (
    Ambiguity,
    CriticalPair,
    Overlap,
    RewritingSystem,
    Rule,
    critical_pair,
    find_ambiguities,
    format_rule,
    normal_form,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompletionConfig:
    max_steps: int = 10
    max_rules: int = 10_000
    max_rule_length: int = 32  # 0 means unlimited
    record_trace: bool = True

    def __post_init__(self):
        if self.max_steps < 1 or self.max_rules < 1 or self.max_rule_length < 0:
            raise ValueError("budgets must be >= 1 (max_rule_length >= 0)")


class Outcome(enum.Enum):
    RESOLVED = "resolved"
    NEW_RULE = "new_rule"
    JOINED = "joined"  # joinable once rules admitted earlier in the same step are used
    TOO_LONG = "too_long"  # dropped by max_rule_length
    DROPPED = "dropped"  # dropped by max_rules


@dataclass(frozen=True)
class Event:
    ambiguity: Ambiguity
    cp_before: CriticalPair
    cp_normalized: tuple
    outcome: Outcome
    rule_id: Optional[int] = None


@dataclass
class CompletionStep:
    step_index: int
    events: list = field(default_factory=list)


class Status(enum.Enum):
    COMPLETE = "complete"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass
class CompletionOutcome:
    status: Status
    system: RewritingSystem
    trace: Optional[list]
    exhausted: Optional[str] = None  # which budget ran out
    steps_run: int = 0

    @property
    def complete(self) -> bool:
        return self.status is Status.COMPLETE


def knuth_bendix(
    rs0: RewritingSystem, order: LetterOrder, cfg: CompletionConfig = CompletionConfig()
) -> CompletionOutcome:
    for r in rs0.rules:
        if compare_shortlex(order, r.lhs, r.rhs) != GREATER:
            raise MalformedSystem(f"seed rule {r.id} is not decreasing under the order")
    system = RewritingSystem(rs0.alphabet, rs0.rules, order)
    trace = [] if cfg.record_trace else None
    newest = [r.id for r in system.rules]
    step = 0
    exhausted = None
    while True:
        if step >= cfg.max_steps:
            exhausted = exhausted or "max_steps"
            break
        step += 1
        created, events, truncated, full = _run_step(system, newest, order, cfg, step)
        if full:
            exhausted = "max_rules"
        if trace is not None:
            trace.append(CompletionStep(step, events))
        log.debug("step %d: %d new rules", step, len(created))
        system = system.extended(created)
        if truncated and exhausted is None:
            # keep going on what could be added; the result cannot be complete
            exhausted = "max_rule_length"
        if exhausted == "max_rules" or not created:
            break
        newest = [r.id for r in created]
    status = Status.COMPLETE if exhausted is None else Status.BUDGET_EXHAUSTED
    return CompletionOutcome(status, system, trace, exhausted, step)


def _run_step(system: RewritingSystem, newest, order: LetterOrder, cfg: CompletionConfig, step: int):
    """One completion step.

    Pairs that survive normalisation modulo ``system`` become candidates.
    Candidates are admitted in ascending shortlex order of the rule they
    would add; each is first re-normalised modulo ``system`` plus the rules
    already admitted in this step, and is dropped if it now joins.
    """
    events: list = []
    pending = []
    for amb in find_ambiguities(system, touching=newest):
        cp = critical_pair(amb)
        left = normal_form(system, cp.left)
        right = normal_form(system, cp.right)
        oriented = orient(order, left, right)
        events.append(Event(amb, cp, (left, right), Outcome.RESOLVED))
        if oriented is not None:
            pending.append((order.key(oriented[0]), order.key(oriented[1]), len(events) - 1, oriented))
    pending.sort(key=lambda t: t[:3])

    work = system.index.copy()
    created: list[Rule] = []
    next_id = system.next_id()
    truncated = full = False
    for *_, idx, (big, small) in pending:
        ev = events[idx]
        rule_id = None
        oriented = orient(order, normal_form(work, big), normal_form(work, small))
        if oriented is None:
            outcome = Outcome.JOINED
        elif cfg.max_rule_length and len(oriented[0]) > cfg.max_rule_length:
            outcome = Outcome.TOO_LONG
            truncated = True
        elif full or len(system) + len(created) >= cfg.max_rules:
            outcome = Outcome.DROPPED
            full = True
        else:
            outcome = Outcome.NEW_RULE
            rule_id = next_id
            next_id += 1
            amb = ev.ambiguity
            rule = Rule(rule_id, oriented[0], oriented[1], step, (_first_parent(amb).id, _second_parent(amb).id))
            created.append(rule)
            work.add(rule)
        events[idx] = Event(ev.ambiguity, ev.cp_before, ev.cp_normalized, outcome, rule_id)
    return created, events, truncated, full


def _first_parent(amb: Ambiguity) -> Rule:
    return amb.left if isinstance(amb, Overlap) else amb.outer


def _second_parent(amb: Ambiguity) -> Rule:
    return amb.right if isinstance(amb, Overlap) else amb.inner


def rules_added_at_step(out: CompletionOutcome, n: int) -> list[Rule]:
    return [r for r in out.system.rules if r.step == n]


def rule_parents(out: CompletionOutcome) -> dict:
    """Map created rule id -> the ambiguity that created it."""
    if out.trace is None:
        raise MissingTrace("completion was run without record_trace")
    found = {}
    for st in out.trace:
        for ev in st.events:
            if ev.outcome is Outcome.NEW_RULE:
                found[ev.rule_id] = ev.ambiguity
    return found


def prune(rs: RewritingSystem) -> RewritingSystem:
    """Drop rules whose lhs is reducible by another rule.  Display only."""
    keep = []
    for r in rs.rules:
        others = RewritingSystem(rs.alphabet, [s for s in rs.rules if s.id != r.id])
        if any(s.id != r.id for _, s in others.matches(r.lhs)):
            continue
        keep.append(r)
    return RewritingSystem(rs.alphabet, keep, rs.order)


def _event_record(ev: Event, step: int, alphabet) -> dict:
    amb = ev.ambiguity
    if isinstance(amb, Overlap):
        kind, left_rule, right_rule = "overlap", amb.left.id, amb.right.id
        overlap_len, offset = len(amb.v), len(amb.u)
    else:
        kind, left_rule, right_rule = "inclusion", amb.outer.id, amb.inner.id
        overlap_len, offset = len(amb.inner.lhs), len(amb.u)
    return {
        "step": step,
        "kind": kind,
        "left_rule": left_rule,
        "right_rule": right_rule,
        "overlap_len": overlap_len,
        "offset": offset,
        "raw_left": format_word(ev.cp_before.left, alphabet),
        "raw_right": format_word(ev.cp_before.right, alphabet),
        "cp_left": format_word(ev.cp_normalized[0], alphabet),
        "cp_right": format_word(ev.cp_normalized[1], alphabet),
        "outcome": ev.outcome.value,
        "new_rule_id": ev.rule_id,
    }


def trace_document(out: CompletionOutcome) -> dict:
    """Key/value tree of the run: status, every rule, every step event."""
    if out.trace is None:
        raise MissingTrace("completion was run without record_trace")
    a = out.system.alphabet
    return {
        "status": out.status.value,
        "exhausted": out.exhausted,
        "steps_run": out.steps_run,
        "rules": [rule_record(r, a) for r in out.system.rules],
        "steps": [
            {
                "step": st.step_index,
                "events": [_event_record(ev, st.step_index, a) for ev in st.events],
            }
            for st in out.trace
        ],
    }


def rule_record(r: Rule, alphabet) -> dict:
    return {
        "id": r.id,
        "lhs": format_word(r.lhs, alphabet),
        "rhs": format_word(r.rhs, alphabet),
        "step": r.step,
        "parents": list(r.parents) if r.parents else None,
    }


def trace_lines(out: CompletionOutcome) -> list[str]:
    """Line-oriented log; one line per event, then one per rule."""
    doc = trace_document(out)
    lines = []
    for st in doc["steps"]:
        for ev in st["events"]:
            lines.append(
                "step={step} kind={kind} left_rule={left_rule} right_rule={right_rule} "
                "overlap_len={overlap_len} cp_left=[{cp_left}] cp_right=[{cp_right}] "
                "outcome={outcome} new_rule_id={new_rule_id}".format(**ev)
            )
    a = out.system.alphabet
    for r in out.system.rules:
        lines.append(f"rule {r.id} step={r.step} parents={r.parents}: {format_rule(r, a)}")
    lines.append(f"status: {out.status.value}" + (f" ({out.exhausted})" if out.exhausted else ""))
    return lines
