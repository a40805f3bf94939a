"""Multinomial Naive Bayes over bag-of-words counts.

Likelihoods are Laplace-smoothed:

    P(w|c) = (lambda + N[c,w]) / (lambda*|V| + sum_v N[c,v])

Document scores are computed in log space; the literal product of
per-token likelihoods underflows for long reviews. The decision rule
compares the two joint log scores and breaks exact ties as positive.

Out-of-vocabulary tokens are skipped at prediction time: |V| is fixed
when the model is fitted and unseen words have no defined likelihood.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .corpus import Document, Label

NEG_INF = float("-inf")


class ModelFormatError(ValueError):
    """A model snapshot line that cannot be parsed."""


def _log(x: float) -> float:
    return math.log(x) if x > 0.0 else NEG_INF


@dataclass(frozen=True)
class NbModel:
    """Fitted model: class priors, per-class word counts, and smoothing."""

    priors: dict[Label, float]
    counts: dict[Label, dict[str, int]]
    totals: dict[Label, int]
    vocabulary: frozenset[str]
    smoothing: float

    @classmethod
    def from_counts(
        cls,
        priors: Mapping[Label, float],
        counts: Mapping[Label, Mapping[str, int]],
        smoothing: float = 1.0,
    ) -> "NbModel":
        """Assemble a model from raw count tables.

        Accepts classes with zero documents (prior 0, empty counts),
        which fit() rejects; the lifelong engine needs this for domains
        whose pseudo-labels collapse onto a single class.
        """
        if not 0.0 <= smoothing <= 1.0:
            raise ValueError(f"smoothing must be in [0, 1], got {smoothing}")
        total_prior = sum(priors.get(label, 0.0) for label in Label)
        if abs(total_prior - 1.0) > 1e-12:
            raise ValueError(f"priors sum to {total_prior}, expected 1")
        full_counts = {label: dict(counts.get(label, {})) for label in Label}
        vocabulary = frozenset(w for table in full_counts.values() for w in table)
        return cls(
            priors={label: float(priors.get(label, 0.0)) for label in Label},
            counts=full_counts,
            totals={label: sum(full_counts[label].values()) for label in Label},
            vocabulary=vocabulary,
            smoothing=smoothing,
        )

    @classmethod
    def fit(
        cls,
        documents: Sequence[Document],
        labels: Sequence[Label],
        smoothing: float = 1.0,
    ) -> "NbModel":
        """Count words per class and estimate priors as document fractions."""
        if len(documents) != len(labels):
            raise ValueError(
                f"{len(documents)} documents but {len(labels)} labels"
            )
        doc_counts = Counter(labels)
        for label in Label:
            if doc_counts[label] == 0:
                raise ValueError(f"no documents labeled {label.value!r}")
        counts: dict[Label, Counter] = {label: Counter() for label in Label}
        for doc, label in zip(documents, labels):
            counts[label].update(doc.tokens)
        n = len(documents)
        return cls.from_counts(
            priors={label: doc_counts[label] / n for label in Label},
            counts=counts,
            smoothing=smoothing,
        )

    def word_likelihood(self, word: str, label: Label) -> float:
        """Smoothed P(word|label). Unseen words use count 0 and the same |V|."""
        numerator = self.smoothing + self.counts[label].get(word, 0)
        denominator = self.smoothing * len(self.vocabulary) + self.totals[label]
        if denominator == 0.0:
            return 0.0
        return numerator / denominator

    def _active_tokens(
        self, doc: Document, active_vocab: Iterable[str] | None
    ) -> Counter:
        kept = Counter(t for t in doc.tokens if t in self.vocabulary)
        if active_vocab is not None:
            active = active_vocab if isinstance(active_vocab, (set, frozenset)) else set(active_vocab)
            kept = Counter({w: n for w, n in kept.items() if w in active})
        return kept

    def log_scores(
        self, doc: Document, active_vocab: Iterable[str] | None = None
    ) -> dict[Label, float]:
        """Per-class log P(c) + sum_w n_w log P(w|c) over active tokens."""
        kept = self._active_tokens(doc, active_vocab)
        scores = {}
        for label in Label:
            score = _log(self.priors[label])
            for word, freq in kept.items():
                score += freq * _log(self.word_likelihood(word, label))
            scores[label] = score
        return scores

    def posterior(
        self, doc: Document, active_vocab: Iterable[str] | None = None
    ) -> dict[Label, float]:
        """Normalized class probabilities for a document.

        Restricted to tokens in the training vocabulary and, when given,
        in active_vocab. A document with no active tokens scores the
        priors exactly.
        """
        scores = self.log_scores(doc, active_vocab)
        top = max(scores.values())
        if top == NEG_INF:
            # Every class is impossible under the restriction (only
            # reachable with smoothing 0); fall back to the priors.
            return dict(self.priors)
        weights = {label: math.exp(s - top) for label, s in scores.items()}
        total = sum(weights.values())
        return {label: w / total for label, w in weights.items()}

    def decide(
        self, doc: Document, active_vocab: Iterable[str] | None = None
    ) -> Label:
        """Positive iff the positive joint score is >= the negative one.

        Uses the log scores, but near-ties are re-checked with exact
        rational arithmetic so that rounding in the log sums can never
        flip the documented tie rule.
        """
        scores = self.log_scores(doc, active_vocab)
        pos, neg = scores[Label.POS], scores[Label.NEG]
        if pos == NEG_INF and neg == NEG_INF:
            return Label.POS
        magnitude = max(1.0, abs(pos), abs(neg))
        if math.isfinite(pos) and math.isfinite(neg) and abs(pos - neg) <= 1e-9 * magnitude:
            return self._decide_exact(self._active_tokens(doc, active_vocab))
        return Label.POS if pos >= neg else Label.NEG

    def _exact_joint(self, kept: Counter, label: Label) -> Fraction:
        lam = Fraction(self.smoothing)
        denominator = lam * len(self.vocabulary) + self.totals[label]
        value = Fraction(self.priors[label])
        for word, freq in kept.items():
            if denominator == 0:
                return Fraction(0)
            value *= (lam + self.counts[label].get(word, 0)) ** freq
            value /= denominator ** freq
        return value

    def _decide_exact(self, kept: Counter) -> Label:
        pos = self._exact_joint(kept, Label.POS)
        neg = self._exact_joint(kept, Label.NEG)
        return Label.POS if pos >= neg else Label.NEG

    def save(self, path) -> None:
        """Write the snapshot: 'prior <class> <decimal>' then 'count' lines.

        Decimals use 17 significant digits so reloading is bit-exact.
        Word order is sorted for reproducible bytes. Smoothing is not
        part of the snapshot; callers keep it in their run config.
        """
        lines = []
        for label in Label:
            lines.append(f"prior {label.value} {self.priors[label]:.17g}")
        for label in Label:
            for word in sorted(self.counts[label]):
                if any(ch.isspace() for ch in word):
                    # Cannot happen for whitespace-tokenized corpora.
                    raise ValueError(f"word {word!r} is not serializable")
                lines.append(f"count {label.value} {word} {self.counts[label][word]}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path, smoothing: float = 1.0) -> "NbModel":
        priors: dict[Label, float] = {}
        counts: dict[Label, dict[str, int]] = {label: {} for label in Label}
        with open(path, encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                fields = line.split(" ")
                try:
                    if fields[0] == "prior" and len(fields) == 3:
                        priors[Label.parse(fields[1])] = float(fields[2])
                    elif fields[0] == "count" and len(fields) == 4:
                        counts[Label.parse(fields[1])][fields[2]] = int(fields[3])
                    else:
                        raise ValueError(f"unrecognized record {fields[0]!r}")
                except ValueError as exc:
                    raise ModelFormatError(f"{path}:{line_no}: {exc}") from exc
        if len(priors) != len(Label):
            raise ModelFormatError(f"{path}: missing prior lines")
        return cls.from_counts(priors=priors, counts=counts, smoothing=smoothing)
