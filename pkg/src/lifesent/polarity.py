"""Polarity-degree word mining.

A word's polarity degree for a class is O_c(w) = P(w|c) / P(w), the
factor by which the word is over-represented in that class. P(w) is the
prior-weighted mixture sum_c P(c) P(w|c) of the smoothed likelihoods,
which keeps the Bayes identity sum_c P(c) O_c(w) = 1 exact and every
degree finite.

Words are ranked on dominant_degree = max over the two classes, one
global list for both polarities, sorted descending with lexicographic
tie-break, and the top percentage is selected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .corpus import Label
from .naive_bayes import NbModel


@dataclass(frozen=True)
class PolarityDegree:
    word: str
    degree_pos: float
    degree_neg: float

    @property
    def dominant_class(self) -> Label:
        # Exact tie goes to positive, same as the decision rule.
        return Label.POS if self.degree_pos >= self.degree_neg else Label.NEG

    @property
    def dominant_degree(self) -> float:
        return max(self.degree_pos, self.degree_neg)


@dataclass(frozen=True)
class PolaritySelection:
    """The degree-ranked words kept at a cutoff percentage.

    entries holds the selected PolarityDegree rows in rank order
    (rank 1 = highest dominant_degree).
    """

    percent: float
    entries: tuple[PolarityDegree, ...]
    selected_words: frozenset[str]

    def export_lines(self) -> list[str]:
        return [
            f"{e.word}\t{e.dominant_class.value}\t{e.dominant_degree:.17g}"
            for e in self.entries
        ]


def polarity_degrees(model: NbModel) -> list[PolarityDegree]:
    """Degrees for every vocabulary word, in sorted word order."""
    if model.smoothing <= 0.0:
        raise ValueError("polarity degrees need smoothing > 0")
    degrees = []
    for word in sorted(model.vocabulary):
        likelihood = {c: model.word_likelihood(word, c) for c in Label}
        marginal = sum(model.priors[c] * likelihood[c] for c in Label)
        degrees.append(
            PolarityDegree(
                word=word,
                degree_pos=likelihood[Label.POS] / marginal,
                degree_neg=likelihood[Label.NEG] / marginal,
            )
        )
    return degrees


def frequency_filter(
    domain_counts: Sequence[Mapping[str, int]],
    min_avg_per_domain: float = 5.0,
) -> set[str]:
    """Words whose total count across domains is >= min_avg * n_domains.

    Takes one word -> count table per training domain. Filters out rare
    symbols and numbers that would otherwise be noise in the ranking.
    """
    if not domain_counts:
        raise ValueError("frequency_filter needs at least one domain's counts")
    threshold = min_avg_per_domain * len(domain_counts)
    totals: dict[str, int] = {}
    for table in domain_counts:
        for word, count in table.items():
            totals[word] = totals.get(word, 0) + count
    return {word for word, total in totals.items() if total >= threshold}


def select_top(
    degrees: Iterable[PolarityDegree],
    eligible: set[str],
    percent: float,
) -> PolaritySelection:
    """Keep the top percent of eligible words by dominant degree.

    Selection size is ceil(percent/100 * #eligible-ranked-words), so the
    selected sets nest as the percentage grows.
    """
    if not 0.0 < percent <= 100.0:
        raise ValueError(f"percent must be in (0, 100], got {percent}")
    if not eligible:
        raise ValueError("no eligible words to select from")
    ranked = sorted(
        (d for d in degrees if d.word in eligible),
        key=lambda d: (-d.dominant_degree, d.word),
    )
    keep = math.ceil(percent / 100.0 * len(ranked))
    chosen = tuple(ranked[:keep])
    return PolaritySelection(
        percent=percent,
        entries=chosen,
        selected_words=frozenset(e.word for e in chosen),
    )
