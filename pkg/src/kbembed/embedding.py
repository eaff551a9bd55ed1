"""Positive-rule criterion for embedding a monoid in a group, plus Adian's graphs.

The verdict is one-directional: a failing leg yields ``Inconclusive``,
never "does not embed".
"""

from __future__ import annotations

import enum
import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional

from .completion import (
    CompletionConfig,
    CompletionOutcome,
    knuth_bendix,
)
from .core import Kind, Letter, Presentation, Word, group_to_monoid, is_positive
from .errors import (
    EmptyRelationSide,
    MissingTrace,
    NonPositiveInput,
    NonPositivePresentation,
)
from .ordering import LetterOrder, orient
from .rewriting import (
    RewritingSystem,
    equivalence_class_bfs,
    format_rule,
    is_locally_confluent,
    normal_form,
)


class CPlus(enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class CPlusResult:
    status: CPlus
    violations: tuple = ()  # rule ids

    @property
    def holds(self) -> bool:
        return self.status is CPlus.HOLDS


def satisfies_c_plus(rs: RewritingSystem) -> CPlusResult:
    """Every rule with a positive lhs must have a positive rhs (1 counts as positive)."""
    positive = [r for r in rs.rules if r.positive]
    if not positive:
        return CPlusResult(CPlus.NOT_APPLICABLE)
    bad = tuple(r.id for r in positive if not is_positive(r.rhs))
    return CPlusResult(CPlus.VIOLATED, bad) if bad else CPlusResult(CPlus.HOLDS)


def positive_subsystem(rs: RewritingSystem) -> RewritingSystem:
    return rs.subsystem(lambda r: r.positive)


@dataclass(frozen=True)
class ProvenanceResult:
    holds: bool
    counterexample: Optional[int] = None


def positive_provenance_ok(out: CompletionOutcome) -> ProvenanceResult:
    """Each created positive rule must come from two positive rules of earlier steps."""
    if out.trace is None:
        raise MissingTrace("positive provenance needs a recorded trace")
    rs = out.system
    for r in rs.rules:
        if r.step == 0 or not r.positive:
            continue
        if r.parents is None:
            return ProvenanceResult(False, r.id)
        for pid in r.parents:
            parent = rs.rule(pid)
            if not parent.positive or parent.step >= r.step:
                return ProvenanceResult(False, r.id)
    return ProvenanceResult(True)


class VerdictStatus(enum.Enum):
    EMBEDS = "embeds"
    INCONCLUSIVE = "inconclusive"
    NOT_APPLICABLE = "not_applicable"


@dataclass
class EmbeddingVerdict:
    status: VerdictStatus
    reasons: list = field(default_factory=list)
    positive_system: Optional[RewritingSystem] = None
    system: Optional[RewritingSystem] = None
    c_plus: Optional[CPlusResult] = None
    provenance: Optional[ProvenanceResult] = None
    completion: Optional[CompletionOutcome] = None

    @property
    def reason(self) -> str:
        return "; ".join(self.reasons)


def seed_system(p: Presentation, order: LetterOrder) -> RewritingSystem:
    """Orient the monoid presentation of a group by ``order``; drop trivial relations."""
    mp = group_to_monoid(p) if p.kind is Kind.GROUP else p
    pairs = []
    for rel in mp.relations:
        oriented = orient(order, rel.left, rel.right)
        if oriented is not None and oriented not in pairs:
            pairs.append(oriented)
    return RewritingSystem.from_pairs(mp.alphabet, pairs, order)


def embed_verdict(
    p: Presentation,
    order: Optional[LetterOrder] = None,
    cfg: CompletionConfig = CompletionConfig(),
    precompleted: Optional[RewritingSystem] = None,
    fuel: Optional[int] = None,
) -> EmbeddingVerdict:
    """Decide whether the positive monoid Mon<X | R+> embeds in ``p``.

    With ``precompleted``, the supplied system is taken as the candidate
    complete system for the group: it is checked for local confluence but
    its termination and equivalence with ``p`` are the caller's burden, and
    there is no trace for the provenance leg.
    """
    if p.kind is not Kind.GROUP:
        return EmbeddingVerdict(VerdictStatus.NOT_APPLICABLE, ["presentation is not a group presentation"])
    reasons = []
    outcome = None
    if precompleted is not None:
        system = precompleted
        if not is_locally_confluent(system, fuel):
            reasons.append("supplied system is not locally confluent")
        provenance = None
    else:
        if order is None:
            order = LetterOrder.interleaved(p.alphabet)
        outcome = knuth_bendix(seed_system(p, order), order, cfg)
        system = outcome.system
        if not outcome.complete:
            reasons.append(f"completion stopped: {outcome.exhausted} budget exhausted")
        provenance = positive_provenance_ok(outcome)
        if not provenance.holds:
            r = system.rule(provenance.counterexample)
            reasons.append(
                f"positive provenance fails at rule {r.id}: {format_rule(r, system.alphabet)}"
            )
    cplus = satisfies_c_plus(system)
    if cplus.status is CPlus.NOT_APPLICABLE:
        reasons.append("no rule has a positive left-hand side")
    elif cplus.status is CPlus.VIOLATED:
        shown = ", ".join(format_rule(system.rule(i), system.alphabet) for i in cplus.violations)
        reasons.append(f"C+ violated by {shown}")
    status = VerdictStatus.INCONCLUSIVE if reasons else VerdictStatus.EMBEDS
    return EmbeddingVerdict(
        status,
        reasons,
        positive_system=positive_subsystem(system),
        system=system,
        c_plus=cplus,
        provenance=provenance,
        completion=outcome,
    )


def verdict_document(v: EmbeddingVerdict, adian: Optional["AdianResult"] = None) -> dict:
    alphabet = v.system.alphabet if v.system is not None else None
    doc = {
        "status": v.status.value,
        "reason": v.reason,
        "c_plus": v.c_plus.status.value if v.c_plus else None,
        "c_plus_violations": list(v.c_plus.violations) if v.c_plus else [],
        "provenance": (
            None
            if v.provenance is None
            else ("holds" if v.provenance.holds else f"counterexample:{v.provenance.counterexample}")
        ),
        "completion": (
            None
            if v.completion is None
            else {"status": v.completion.status.value, "exhausted": v.completion.exhausted}
        ),
        "positive_rule_ids": [r.id for r in v.positive_system.rules] if v.positive_system else [],
        "positive_rules": (
            [format_rule(r, alphabet) for r in v.positive_system.rules] if v.positive_system else []
        ),
        "adian": None,
    }
    if adian is not None:
        doc["adian"] = {"left_cycle": adian.left_has_cycle, "right_cycle": adian.right_has_cycle}
    return doc


# Adian's left and right graphs


@dataclass(frozen=True)
class AdianGraphs:
    vertices: tuple  # generator indices
    left_edges: tuple  # (x, y, relation index)
    right_edges: tuple


@dataclass(frozen=True)
class AdianResult:
    left_has_cycle: bool
    right_has_cycle: bool

    @property
    def embeds_by_adian(self) -> bool:
        return not (self.left_has_cycle or self.right_has_cycle)


def adian_graphs(p: Presentation) -> AdianGraphs:
    left, right = [], []
    for i, rel in enumerate(p.relations):
        if not rel.left or not rel.right:
            raise EmptyRelationSide(f"relation {i} has an empty side")
        if not (is_positive(rel.left) and is_positive(rel.right)):
            raise NonPositivePresentation(f"relation {i} uses inverse letters")
        left.append((rel.left[0].generator, rel.right[0].generator, i))
        right.append((rel.left[-1].generator, rel.right[-1].generator, i))
    return AdianGraphs(tuple(range(len(p.alphabet))), tuple(left), tuple(right))


def multigraph_has_cycle(vertices, edges) -> bool:
    """True when some component has at least as many edges as vertices.

    Parallel edges and self-loops count, so a self-loop is a cycle.
    """
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for x, y, *_ in edges:
        rx, ry = find(x), find(y)
        if rx == ry:
            return True
        parent[rx] = ry
    return False


def adian_criterion(g: AdianGraphs) -> AdianResult:
    return AdianResult(
        multigraph_has_cycle(g.vertices, g.left_edges),
        multigraph_has_cycle(g.vertices, g.right_edges),
    )


def monoid_equal(rs_plus: RewritingSystem, w1: Word, w2: Word, fuel: Optional[int] = None) -> bool:
    """Equality of positive words in Mon<X | R+>, assuming R+ is complete."""
    if not (is_positive(w1) and is_positive(w2)):
        raise NonPositiveInput("monoid_equal only accepts positive words")
    return normal_form(rs_plus, w1, fuel) == normal_form(rs_plus, w2, fuel)


@dataclass(frozen=True)
class IsomorphismProbe:
    """Result of the bounded comparison between N and Mon<X | R+>.

    ``consistent`` only says no difference was found up to ``depth``;
    it never proves the two monoids isomorphic.
    """

    consistent: bool
    depth: int
    words_checked: int
    mismatch: Optional[tuple] = None  # (w1, w2) equal in one monoid only
    undecided: int = 0  # classes that did not close under the caps


def probe_isomorphism(
    n: Presentation,
    rs_plus: RewritingSystem,
    depth: int,
    len_cap: Optional[int] = None,
    count_cap: int = 5000,
    fuel: Optional[int] = None,
) -> IsomorphismProbe:
    """Compare how N and R+ partition the positive words of length <= depth.

    N's side is computed by breadth-first search over its relations, so
    relations that shrink words may need a larger ``len_cap``.
    """
    if len_cap is None:
        len_cap = depth + max((max(len(r.left), len(r.right)) for r in n.relations), default=0)
    letters = [Letter(i, 1) for i in range(len(n.alphabet))]
    words = [tuple(w) for k in range(depth + 1) for w in itertools.product(letters, repeat=k)]
    nf_groups = defaultdict(set)
    for w in words:
        nf_groups[normal_form(rs_plus, w, fuel)].add(w)
    undecided = 0
    for w in words:
        cls = equivalence_class_bfs(n, w, len_cap, count_cap)
        if cls is None:
            undecided += 1
            continue
        same_n = {x for x in cls if len(x) <= depth}
        same_m = nf_groups[normal_form(rs_plus, w, fuel)]
        if same_n != same_m:
            other = next(iter(same_n ^ same_m))
            return IsomorphismProbe(False, depth, len(words), (w, other), undecided)
    return IsomorphismProbe(True, depth, len(words), None, undecided)
