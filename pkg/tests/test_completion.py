import functools
import random

import pytest
from hypothesis import given, settings, strategies as st

from kbembed.completion import (
    CompletionConfig,
    Outcome,
    Status,
    knuth_bendix,
    prune,
    rule_parents,
    rules_added_at_step,
    trace_document,
    trace_lines,
)
from kbembed.core import Letter, group_to_monoid, parse_presentation, parse_word
from kbembed.embedding import seed_system
from kbembed.errors import MalformedSystem, MissingTrace
from kbembed.ordering import GREATER, LetterOrder, compare_shortlex
from kbembed.raag import DefiningGraph, coloring_order, raag_re0, two_coloring
from kbembed.rewriting import (
    RewritingSystem,
    Rule,
    equivalence_class_bfs,
    format_rule,
    is_locally_confluent,
    normal_form,
)

P3 = DefiningGraph.from_names("abc", [("a", "b"), ("b", "c")])
P3_ORDER = LetterOrder.interleaved(P3.vertices)

S3 = "kind: group\ngens: a b\nrel: a a = 1\nrel: b b = 1\nrel: a b a = b a b\n"
SMALL_MONOID = "kind: monoid\ngens: a b\nrel: a a = 1\nrel: b b b = 1\nrel: a b = b b a\n"
BICYCLIC = "kind: group\ngens: x y\nrel: x y = 1\n"


def run(text, steps=10, order=None):
    p = parse_presentation(text)
    o = order or LetterOrder.interleaved(p.alphabet)
    return p, o, knuth_bendix(seed_system(p, o), o, CompletionConfig(max_steps=steps))


@functools.lru_cache(maxsize=None)
def p3_run(steps):
    return knuth_bendix(raag_re0(P3, P3_ORDER), P3_ORDER, CompletionConfig(max_steps=steps))


def texts(out, n):
    return {format_rule(r, out.system.alphabet) for r in rules_added_at_step(out, n)}


def test_p3_step_one_creates_acb():
    out = p3_run(1)
    step1 = texts(out, 1)
    assert "a c b -> b a c" in step1
    signed = {f"a{s1} c{s2} b{s3} -> b{s3} a{s1} c{s2}" for s1 in ("", "^-1") for s2 in ("", "^-1") for s3 in ("", "^-1")}
    assert step1 == signed
    assert all(len(r.lhs) == len(r.rhs) == 3 for r in rules_added_at_step(out, 1))


def test_p3_step_two_and_growth():
    out = p3_run(4)
    assert "a c c b -> b a c c" in texts(out, 2)
    counts = [len(rules_added_at_step(out, n)) for n in range(1, 5)]
    assert all(c > 0 for c in counts)
    for n in range(1, 5):
        assert all(len(r.lhs) == len(r.rhs) == n + 2 for r in rules_added_at_step(out, n))
    assert out.status is Status.BUDGET_EXHAUSTED and out.exhausted == "max_steps"


def test_rules_added_at_step_edges():
    out = p3_run(2)
    assert [r.id for r in rules_added_at_step(out, 0)] == [r.id for r in raag_re0(P3, P3_ORDER).rules]
    assert rules_added_at_step(out, 99) == []


def test_bipartite_order_completes_immediately():
    order = coloring_order(P3, two_coloring(P3))
    out = knuth_bendix(raag_re0(P3, order), order)
    assert out.complete and out.steps_run == 1
    assert rules_added_at_step(out, 1) == []


def test_free_group_completes():
    _, _, out = run("kind: group\ngens: a b\n")
    assert out.complete and len(out.system) == 4


@pytest.mark.parametrize("text", [S3, SMALL_MONOID, BICYCLIC])
def test_complete_implies_confluent(text):
    _, _, out = run(text)
    assert out.complete
    assert is_locally_confluent(out.system)


def _bfs_pres(p):
    return group_to_monoid(p) if p.kind.value == "group" else p


@pytest.mark.parametrize("text", [S3, SMALL_MONOID])
def test_equivalence_preserved(text):
    p, o, out = run(text)
    mp = _bfs_pres(p)
    letters = o.descending
    rng = random.Random(7)
    for _ in range(60):
        u = tuple(rng.choice(letters) for _ in range(rng.randint(0, 5)))
        cls = equivalence_class_bfs(mp, u, 7, 5000)
        if cls is None:
            continue
        nf = normal_form(out.system, u)
        # every word the oracle finds must share the normal form
        assert all(normal_form(out.system, x) == nf for x in cls)
        # the normal form itself is reachable, so the class is not split
        assert nf in cls


def test_created_rules_decreasing_and_monotone():
    out = p3_run(4)
    system = out.system
    for n in range(1, 5):
        prior = system.subsystem(lambda r: r.step < n)
        for r in rules_added_at_step(out, n):
            assert compare_shortlex(P3_ORDER, r.lhs, r.rhs) == GREATER
            assert prior.is_irreducible(r.lhs) and prior.is_irreducible(r.rhs)
            assert r.parents is not None and all(system.rule(pid).step < n for pid in r.parents)
    ids = [r.id for r in system.rules]
    assert ids == sorted(ids) and [r.step for r in system.rules] == sorted(r.step for r in system.rules)


def test_trace_events():
    out = p3_run(3)
    for st_ in out.trace:
        for ev in st_.events:
            if ev.outcome is Outcome.NEW_RULE:
                assert out.system.rule(ev.rule_id).step == st_.step_index
            else:
                assert ev.rule_id is None
    parents = rule_parents(out)
    assert set(parents) == {r.id for r in out.system.rules if r.step > 0}


def test_same_step_rules_join_pairs():
    c5 = DefiningGraph.from_names("abcde", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")])
    o = LetterOrder.interleaved(c5.vertices)
    out = knuth_bendix(raag_re0(c5, o), o, CompletionConfig(max_steps=3))
    outcomes = {ev.outcome for st_ in out.trace for ev in st_.events}
    assert Outcome.JOINED in outcomes
    for n in range(1, 4):
        assert all(len(r.lhs) == n + 2 for r in rules_added_at_step(out, n))


def test_independent_of_seed_numbering():
    seed = raag_re0(P3, P3_ORDER)
    flipped = RewritingSystem(
        seed.alphabet, [Rule(len(seed) + 1 - r.id, r.lhs, r.rhs) for r in seed.rules], P3_ORDER
    )
    a = knuth_bendix(seed, P3_ORDER, CompletionConfig(max_steps=4))
    b = knuth_bendix(flipped, P3_ORDER, CompletionConfig(max_steps=4))
    for n in range(5):
        assert {(r.lhs, r.rhs) for r in rules_added_at_step(a, n)} == {(r.lhs, r.rhs) for r in rules_added_at_step(b, n)}


def test_determinism():
    fresh = lambda: knuth_bendix(raag_re0(P3, P3_ORDER), P3_ORDER, CompletionConfig(max_steps=4))
    assert trace_document(fresh()) == trace_document(fresh())
    assert trace_lines(fresh()) == trace_lines(fresh())


def test_budgets():
    seed = raag_re0(P3, P3_ORDER)
    out = knuth_bendix(seed, P3_ORDER, CompletionConfig(max_steps=50, max_rules=30))
    assert out.exhausted == "max_rules" and len(out.system) <= 30
    out = knuth_bendix(seed, P3_ORDER, CompletionConfig(max_steps=50, max_rule_length=4))
    assert out.exhausted == "max_rule_length"
    assert max(len(r.lhs) for r in out.system.rules) <= 4
    assert any(ev.outcome is Outcome.TOO_LONG for st_ in out.trace for ev in st_.events)


@pytest.mark.parametrize("kwargs", [{"max_steps": 0}, {"max_rules": 0}, {"max_rule_length": -1}])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        CompletionConfig(**kwargs)


def test_rejects_non_decreasing_seed():
    rs = RewritingSystem.from_pairs(P3.vertices, [(parse_word("b a", P3.vertices), parse_word("a b", P3.vertices))])
    with pytest.raises(MalformedSystem):
        knuth_bendix(rs, P3_ORDER)


def test_without_trace():
    out = knuth_bendix(raag_re0(P3, P3_ORDER), P3_ORDER, CompletionConfig(max_steps=2, record_trace=False))
    assert out.trace is None
    with pytest.raises(MissingTrace):
        trace_document(out)
    with pytest.raises(MissingTrace):
        rule_parents(out)


def test_trace_document_fields():
    doc = trace_document(p3_run(1))
    ev = doc["steps"][0]["events"][0]
    for key in ("step", "left_rule", "right_rule", "overlap_len", "cp_left", "cp_right", "outcome", "new_rule_id"):
        assert key in ev


def test_prune_drops_reducible_lhs():
    a = P3.vertices
    rs = RewritingSystem.from_pairs(
        a, [(parse_word(x, a), parse_word(y, a)) for x, y in [("a b", "b a"), ("a b c", "b a c"), ("c c", "c")]], P3_ORDER
    )
    assert [r.id for r in prune(rs).rules] == [1, 3]
    assert len(prune(p3_run(3).system)) == len(p3_run(3).system)


def test_bicyclic_creates_y_to_x_inverse():
    p = parse_presentation(BICYCLIC)
    o = LetterOrder(p.alphabet, (Letter(1, 1), Letter(1, -1), Letter(0, 1), Letter(0, -1)))
    _, _, out = run(BICYCLIC, order=o)
    assert "y -> x^-1" in {format_rule(r, p.alphabet) for r in out.system.rules}


word_st = st.lists(st.sampled_from(P3_ORDER.descending), max_size=7).map(tuple)


@settings(max_examples=40, deadline=None)
@given(word_st)
def test_p3_normal_forms_are_irreducible(word):
    out = p3_run(5)
    nf = normal_form(out.system, word)
    assert out.system.is_irreducible(nf)
    assert len(nf) <= len(word)
