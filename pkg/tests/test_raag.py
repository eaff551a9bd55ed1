import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from kbembed.completion import CompletionConfig, knuth_bendix, rules_added_at_step
from kbembed.core import EMPTY, Letter, format_word, is_positive, parse_word
from kbembed.embedding import positive_provenance_ok
from kbembed.errors import MissingTrace, ParseError
from kbembed.ordering import LetterOrder, parse_order
from kbembed.raag import (
    Colour,
    DefiningGraph,
    NotBipartite,
    coloring_order,
    default_order,
    format_coloring,
    format_graph,
    is_clique,
    parse_graph,
    prefix_condition_holds,
    prefix_genesis_violations,
    raag_normal_form,
    raag_presentation,
    raag_re0,
    two_coloring,
    verify_structure,
)
from kbembed.rewriting import Rule, equivalence_class_bfs, format_rule

from oracles import random_consistent_order, random_graph, raag_cancel, raag_group_equal, shortlex_min


def cycle(n):
    names = [chr(ord("a") + i) for i in range(n)]
    return DefiningGraph.from_names(names, [(names[i], names[(i + 1) % n]) for i in range(n)])


def complete_graph(n):
    names = [f"x{i + 1}" for i in range(n)]
    return DefiningGraph.from_names(names, itertools.combinations(names, 2))


def texts(rs):
    return [format_rule(r, rs.alphabet) for r in rs.rules]


def test_presentation(p3, k3):
    pres = raag_presentation(p3)
    assert pres.kind.value == "group"
    assert [(format_word(r.left, p3.vertices), format_word(r.right, p3.vertices)) for r in pres.relations] == [
        ("a b", "b a"),
        ("b c", "c b"),
    ]
    assert len(raag_presentation(k3).relations) == 3
    assert raag_presentation(DefiningGraph.from_names("ab", [])).relations == ()


def test_re0_single_edge():
    g = DefiningGraph.from_names("ab", [("a", "b")])
    assert texts(raag_re0(g, default_order(g))) == [
        "a b -> b a",
        "a b^-1 -> b^-1 a",
        "a^-1 b -> b a^-1",
        "a^-1 b^-1 -> b^-1 a^-1",
        "a a^-1 -> 1",
        "a^-1 a -> 1",
        "b b^-1 -> 1",
        "b^-1 b -> 1",
    ]


def test_re0_positive_rules_have_positive_rhs(p3):
    for r in raag_re0(p3, default_order(p3)).rules:
        if r.positive and r.rhs:
            assert is_positive(r.rhs)


def test_re0_edgeless():
    g = DefiningGraph.from_names("abc", [])
    assert len(raag_re0(g, default_order(g))) == 6


def test_two_coloring(p3, k3):
    col = two_coloring(p3)
    assert col == {0: Colour.WHITE, 1: Colour.BLACK, 2: Colour.WHITE}
    nb = two_coloring(k3)
    assert isinstance(nb, NotBipartite)
    c = nb.cycle
    assert c[0] == c[-1] and (len(c) - 1) % 2 == 1
    assert all(k3.adjacent(x, y) for x, y in zip(c, c[1:]))
    c4 = two_coloring(cycle(4))
    assert [c4[v] for v in range(4)] in (
        [Colour.BLACK, Colour.WHITE, Colour.BLACK, Colour.WHITE],
        [Colour.WHITE, Colour.BLACK, Colour.WHITE, Colour.BLACK],
    )


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000))
def test_coloring_proper_or_odd_cycle(seed):
    g = random_graph(random.Random(seed), max_vertices=7)
    col = two_coloring(g)
    if isinstance(col, NotBipartite):
        c = col.cycle
        assert c[0] == c[-1] and (len(c) - 1) % 2 == 1
        assert all(g.adjacent(x, y) for x, y in zip(c, c[1:]))
    else:
        assert all(col[i] is not col[j] for i, j in g.sorted_edges())


def test_coloring_order_p3(p3):
    o = coloring_order(p3, two_coloring(p3))
    assert o == parse_order("b > b^-1 > a > a^-1 > c > c^-1", p3.vertices)
    re0 = raag_re0(p3, o)
    for r in re0.rules:
        if len(r.lhs) == 2 and r.rhs:
            assert r.lhs[0].generator == 1 and r.rhs[0].generator != 1
    out = knuth_bendix(re0, o)
    assert out.complete and rules_added_at_step(out, 1) == []


def test_coloring_order_validates(p3):
    col = two_coloring(p3)
    with pytest.raises(ValueError):
        coloring_order(p3, col, black_order=[Letter(0, 1), Letter(0, -1)])


@pytest.mark.parametrize("n", [4, 6])
def test_even_cycles_complete_with_coloring(n):
    g = cycle(n)
    o = coloring_order(g, two_coloring(g))
    out = knuth_bendix(raag_re0(g, o), o)
    assert out.complete and len(out.system) == len(raag_re0(g, o))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cliques_are_inert(n):
    g = complete_graph(n)
    rng = random.Random(n)
    orders = [LetterOrder.interleaved(g.vertices, list(reversed(range(n))))]
    orders += [random_consistent_order(rng, g) for _ in range(3)]
    for o in orders:
        out = knuth_bendix(raag_re0(g, o), o)
        assert out.complete and all(r.step == 0 for r in out.system.rules)


def test_is_clique(p3, k3):
    assert is_clique(k3, [0, 1, 2])
    assert not is_clique(p3, [0, 1, 2])
    assert is_clique(p3, [0]) and is_clique(p3, [])


def test_prefix_condition(p3):
    o = default_order(p3)
    re0 = raag_re0(p3, o)
    a = p3.vertices
    acb = Rule(99, parse_word("a c b", a), parse_word("b a c", a))
    ab = Rule(98, parse_word("a b", a), parse_word("b a", a))
    assert prefix_condition_holds(acb, re0)
    assert prefix_condition_holds(ab, re0)
    assert not prefix_condition_holds(ab, re0.subsystem(lambda r: False))
    assert not prefix_condition_holds(Rule(97, parse_word("a c", a), parse_word("c", a)), re0)


def test_structure_p3_and_c5():
    p3 = DefiningGraph.from_names("abc", [("a", "b"), ("b", "c")])
    o = default_order(p3)
    out = knuth_bendix(raag_re0(p3, o), o, CompletionConfig(max_steps=5))
    assert verify_structure(out, raag_re0(p3, o)).ok
    c5 = cycle(5)
    for o in (default_order(c5), LetterOrder.interleaved(c5.vertices, [2, 0, 4, 1, 3])):
        out = knuth_bendix(raag_re0(c5, o), o, CompletionConfig(max_steps=4))
        rep = verify_structure(out, raag_re0(c5, o))
        assert rep.ok, rep.as_dict()
        assert prefix_genesis_violations(out) == []
        assert positive_provenance_ok(out).holds


def test_structure_bipartite_is_vacuous(p3):
    o = coloring_order(p3, two_coloring(p3))
    out = knuth_bendix(raag_re0(p3, o), o)
    assert verify_structure(out, raag_re0(p3, o)).ok


def test_structure_needs_trace(p3):
    o = default_order(p3)
    out = knuth_bendix(raag_re0(p3, o), o, CompletionConfig(max_steps=2, record_trace=False))
    with pytest.raises(MissingTrace):
        verify_structure(out, raag_re0(p3, o))


def test_normal_form_examples(p3):
    a = p3.vertices
    o = default_order(p3)
    assert raag_normal_form(p3, o, parse_word("a b c", a)) == parse_word("b a c", a)
    assert raag_normal_form(p3, o, parse_word("a a^-1", a)) == EMPTY
    bip = coloring_order(p3, two_coloring(p3))
    assert raag_normal_form(p3, bip, parse_word("b a", a)) == parse_word("a b", a)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_normal_form_solves_word_problem(seed):
    rng = random.Random(seed)
    g = random_graph(rng, max_vertices=4)
    o = random_consistent_order(rng, g)
    letters = o.descending
    u = tuple(rng.choice(letters) for _ in range(rng.randint(0, 6)))
    v = tuple(rng.choice(letters) for _ in range(rng.randint(0, 6)))
    same = raag_normal_form(g, o, u) == raag_normal_form(g, o, v)
    assert same == raag_group_equal(g, u, v)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_normal_form_stable_in_budget(seed):
    rng = random.Random(seed)
    g = random_graph(rng, max_vertices=4)
    o = random_consistent_order(rng, g)
    u = tuple(rng.choice(o.descending) for _ in range(rng.randint(0, 5)))
    base = raag_normal_form(g, o, u)
    assert raag_normal_form(g, o, u, extra_steps=1) == base
    assert raag_normal_form(g, o, u, extra_steps=2) == base


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_positive_normal_form_is_bfs_minimum(seed):
    rng = random.Random(seed)
    g = random_graph(rng, max_vertices=4)
    o = random_consistent_order(rng, g)
    u = tuple(Letter(rng.randrange(len(g.vertices)), 1) for _ in range(rng.randint(0, 6)))
    nf = raag_normal_form(g, o, u)
    assert is_positive(nf)
    cls = equivalence_class_bfs(raag_presentation(g), u, len(u), 10_000)
    assert nf == shortlex_min(o, cls)


def test_cancel_oracle_sanity():
    g = DefiningGraph.from_names("ab", [("a", "b")])
    a = g.vertices
    assert raag_cancel(g, parse_word("a b a^-1", a)) == parse_word("b", a)
    free = DefiningGraph.from_names("ab", [])
    assert raag_cancel(free, parse_word("a b a^-1", a)) == parse_word("a b a^-1", a)


def test_graph_round_trip_and_errors(p3):
    assert parse_graph(format_graph(p3)) == p3
    assert parse_graph("vertices: a b\nedge: a b 2\n") == DefiningGraph.from_names("ab", [("a", "b")])
    for bad in (
        "edge: a b\n",
        "vertices: a b\nedge: a a\n",
        "vertices: a b\nedge: a b\nedge: b a\n",
        "vertices: a b\nedge: a b 3\n",
        "vertices: a b\nedge: a z\n",
        "vertices: a b\nlabel: x\n",
    ):
        with pytest.raises(ParseError):
            parse_graph(bad)


def test_format_coloring(p3):
    assert format_coloring(p3, two_coloring(p3)) == "color: a white\ncolor: b black\ncolor: c white\n"
