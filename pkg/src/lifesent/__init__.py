"""Lifelong sentiment classification.

A Naive Bayes classifier that mines polarity words into a persistent
knowledge base across review domains, then teaches itself new domains
from its own pseudo-labels.
"""

from .config import EngineConfig
from .corpus import (
    CorpusFormatError,
    Document,
    DomainCorpus,
    Label,
    load_domain,
    split_folds,
    tokenize,
)
from .engine import (
    ConsumedDomain,
    LifelongState,
    initial_learn,
    run_sequence,
    self_study,
)
from .evaluate import (
    EvalReport,
    SweepReport,
    compare_systems,
    macro_f1,
    nbs_baseline,
    nbt_baseline,
    percentage_sweep,
)
from .knowledge import DuplicateDomainError, KbEntry, KnowledgeBase
from .naive_bayes import NbModel
from .polarity import (
    PolarityDegree,
    PolaritySelection,
    frequency_filter,
    polarity_degrees,
    select_top,
)

__version__ = "0.1.0"

__all__ = [
    "ConsumedDomain",
    "CorpusFormatError",
    "Document",
    "DomainCorpus",
    "DuplicateDomainError",
    "EngineConfig",
    "EvalReport",
    "KbEntry",
    "KnowledgeBase",
    "Label",
    "LifelongState",
    "NbModel",
    "PolarityDegree",
    "PolaritySelection",
    "SweepReport",
    "compare_systems",
    "frequency_filter",
    "initial_learn",
    "load_domain",
    "macro_f1",
    "nbs_baseline",
    "nbt_baseline",
    "percentage_sweep",
    "polarity_degrees",
    "run_sequence",
    "select_top",
    "self_study",
    "split_folds",
    "tokenize",
]
