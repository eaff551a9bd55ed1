"""String rewriting, Knuth-Bendix completion and positive-monoid embedding checks."""

from .completion import CompletionConfig, CompletionOutcome, Status, knuth_bendix, rules_added_at_step
from .core import (
    EMPTY,
    Alphabet,
    Kind,
    Letter,
    Presentation,
    Relation,
    free_reduce,
    format_word,
    group_to_monoid,
    is_positive,
    parse_presentation,
    parse_word,
)
from .embedding import (
    adian_criterion,
    adian_graphs,
    embed_verdict,
    monoid_equal,
    positive_provenance_ok,
    positive_subsystem,
    satisfies_c_plus,
)
from .ordering import LetterOrder, compare_shortlex, orient, parse_order
from .rewriting import (
    RewritingSystem,
    Rule,
    critical_pair,
    equivalence_class_bfs,
    find_ambiguities,
    is_locally_confluent,
    normal_form,
    parse_system,
    reduce_once,
)

__version__ = "0.1.0"

__all__ = [
    "parse_order",
    "orient",
    "compare_shortlex",
    "LetterOrder",
    "Alphabet",
    "CompletionConfig",
    "CompletionOutcome",
    "EMPTY",
    "Kind",
    "Letter",
    "Presentation",
    "Relation",
    "RewritingSystem",
    "Rule",
    "Status",
    "adian_criterion",
    "adian_graphs",
    "critical_pair",
    "embed_verdict",
    "equivalence_class_bfs",
    "find_ambiguities",
    "format_word",
    "free_reduce",
    "group_to_monoid",
    "is_locally_confluent",
    "is_positive",
    "knuth_bendix",
    "monoid_equal",
    "normal_form",
    "parse_presentation",
    "parse_system",
    "parse_word",
    "positive_provenance_ok",
    "positive_subsystem",
    "reduce_once",
    "rules_added_at_step",
    "satisfies_c_plus",
]
