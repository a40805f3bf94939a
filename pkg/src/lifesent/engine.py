"""The two-stage lifelong learning protocol.

Initial learning fits a cumulative model on a handful of labeled
domains and seeds the knowledge base from each domain's own polarity
ranking. Self-study then consumes unlabeled domains one at a time:
predict with the knowledge-base vocabulary, adopt the predictions as
pseudo-labels, refit the cumulative model on everything consumed so
far, and credit the new domain's polar words to the knowledge base.

The cumulative model is always refit on the pooled consumed data, so
for a fixed consumed set it does not depend on arrival order; order
sensitivity enters only through the pseudo-labels themselves.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .config import EngineConfig
from .corpus import Document, DomainCorpus, Label
from .knowledge import DuplicateDomainError, KnowledgeBase
from .naive_bayes import NbModel
from .polarity import (
    PolaritySelection,
    frequency_filter,
    polarity_degrees,
    select_top,
)

log = logging.getLogger(__name__)

INITIAL_STAGE = "initial"
SELF_STUDY_STAGE = "self_study"


def word_counts(documents: Sequence[Document]) -> Counter:
    """Total token counts over a document collection."""
    counts: Counter = Counter()
    for doc in documents:
        counts.update(doc.tokens)
    return counts


@dataclass(frozen=True)
class ConsumedDomain:
    """A domain the engine has trained on, with the labels it used.

    Labels are the gold ones for initial-stage domains and pseudo-labels
    for self-study domains.
    """

    name: str
    documents: tuple[Document, ...]
    labels: tuple[Label, ...]
    stage: str


@dataclass
class LifelongState:
    config: EngineConfig
    cumulative_model: NbModel
    kb: KnowledgeBase
    consumed: list[ConsumedDomain] = field(default_factory=list)

    @property
    def consumed_domains(self) -> list[str]:
        return [c.name for c in self.consumed]

    def pooled_training_data(self) -> tuple[list[Document], list[Label]]:
        docs: list[Document] = []
        labels: list[Label] = []
        for consumed in self.consumed:
            docs.extend(consumed.documents)
            labels.extend(consumed.labels)
        return docs, labels


def _fit_allow_missing_class(
    documents: Sequence[Document],
    labels: Sequence[Label],
    smoothing: float,
) -> NbModel:
    """Like NbModel.fit but tolerates a class with zero documents."""
    counts: dict[Label, Counter] = {label: Counter() for label in Label}
    doc_counts: Counter = Counter(labels)
    for doc, label in zip(documents, labels):
        counts[label].update(doc.tokens)
    n = len(documents)
    return NbModel.from_counts(
        priors={label: doc_counts[label] / n for label in Label},
        counts=counts,
        smoothing=smoothing,
    )


def _domain_selection(
    domain_model: NbModel, eligible: set[str], percent: float
) -> PolaritySelection:
    return select_top(polarity_degrees(domain_model), eligible, percent)


def initial_learn(
    domains: Sequence[DomainCorpus], config: EngineConfig | None = None
) -> LifelongState:
    """Supervised stage over a few labeled domains.

    Fits the cumulative model on the pooled documents, then credits the
    knowledge base once per domain using that domain's own single-domain
    polarity ranking. Word eligibility for the ranking is computed from
    the frequency filter across all the initial domains together.
    """
    config = config or EngineConfig()
    if len(domains) < config.min_initial_domains:
        raise ValueError(
            f"insufficient initial domains: got {len(domains)}, "
            f"need at least {config.min_initial_domains}"
        )
    names = [d.name for d in domains]
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate domain names in {names}")
    for domain in domains:
        if not domain.labeled:
            raise ValueError(f"initial domain {domain.name!r} has no labels")

    pooled_docs: list[Document] = []
    pooled_labels: list[Label] = []
    for domain in domains:
        pooled_docs.extend(domain.documents)
        pooled_labels.extend(domain.labels)
    cumulative = NbModel.fit(pooled_docs, pooled_labels, config.smoothing)

    eligible = frequency_filter(
        [word_counts(d.documents) for d in domains], config.min_avg_freq
    )
    kb = KnowledgeBase()
    consumed: list[ConsumedDomain] = []
    for domain in domains:
        domain_model = NbModel.fit(
            domain.documents, domain.labels, config.smoothing
        )
        selection = _domain_selection(domain_model, eligible, config.select_percent)
        kb.update(domain.name, selection)
        consumed.append(
            ConsumedDomain(
                name=domain.name,
                documents=domain.documents,
                labels=domain.labels,
                stage=INITIAL_STAGE,
            )
        )
    return LifelongState(
        config=config, cumulative_model=cumulative, kb=kb, consumed=consumed
    )


def self_study(
    state: LifelongState, domain: DomainCorpus
) -> tuple[LifelongState, list[Label]]:
    """Consume one unlabeled domain with pseudo-labels.

    Predicts every document using the knowledge-base vocabulary, refits
    the cumulative model on all consumed data plus the pseudo-labeled
    newcomer, and credits the domain's own polarity ranking to the
    knowledge base. Any gold labels on the domain are ignored here.
    """
    config = state.config
    if domain.name in state.consumed_domains:
        raise DuplicateDomainError(f"domain {domain.name!r} already consumed")

    active = state.kb.vocabulary() if config.use_kb_vocab else None
    pool_docs, pool_labels = state.pooled_training_data()
    model = state.cumulative_model
    pseudo: list[Label] = []
    for _ in range(config.self_study_iterations):
        pseudo = [model.decide(doc, active) for doc in domain.documents]
        model = NbModel.fit(
            pool_docs + list(domain.documents),
            pool_labels + pseudo,
            config.smoothing,
        )
    state.cumulative_model = model

    pseudo_classes = set(pseudo)
    if len(pseudo_classes) < len(Label):
        only = next(iter(pseudo_classes)).value if pseudo_classes else "none"
        log.warning(
            "domain %r: pseudo-labels collapsed onto a single class (%s); "
            "continuing with a degenerate domain model",
            domain.name,
            only,
        )
        domain_model = _fit_allow_missing_class(
            domain.documents, pseudo, config.smoothing
        )
    else:
        domain_model = NbModel.fit(domain.documents, pseudo, config.smoothing)

    eligible = frequency_filter(
        [word_counts(domain.documents)], config.min_avg_freq
    )
    if eligible:
        selection = _domain_selection(
            domain_model, eligible, config.select_percent
        )
    else:
        log.warning(
            "domain %r: no words pass the frequency filter; "
            "crediting an empty selection",
            domain.name,
        )
        selection = PolaritySelection(
            percent=config.select_percent,
            entries=(),
            selected_words=frozenset(),
        )
    state.kb.update(domain.name, selection)

    state.consumed.append(
        ConsumedDomain(
            name=domain.name,
            documents=domain.documents,
            labels=tuple(pseudo),
            stage=SELF_STUDY_STAGE,
        )
    )
    return state, pseudo


def run_sequence(
    labeled: Sequence[DomainCorpus],
    unlabeled: Sequence[DomainCorpus],
    config: EngineConfig | None = None,
    seed: int = 42,
):
    """Initial learning, then self-study over the given domain order.

    Unlabeled domains that carry gold labels are scored (pseudo-labels
    against gold, or a post-refit re-prediction when the config asks for
    it) and contribute a row to the returned report.

    Returns (final state, pseudo-labels per domain name, EvalReport).
    """
    from .evaluate import EvalReport, macro_f1

    state = initial_learn(labeled, config)
    pseudo_by_domain: dict[str, list[Label]] = {}
    report = EvalReport(seed=seed)
    for domain in unlabeled:
        state, pseudo = self_study(state, domain)
        pseudo_by_domain[domain.name] = pseudo
        if domain.labels is not None:
            if state.config.score_post_refit:
                active = (
                    state.kb.vocabulary() if state.config.use_kb_vocab else None
                )
                scored = [
                    state.cumulative_model.decide(doc, active)
                    for doc in domain.documents
                ]
            else:
                scored = pseudo
            report.add(domain.name, "SU-LML", macro_f1(scored, domain.labels))
    return state, pseudo_by_domain, report
