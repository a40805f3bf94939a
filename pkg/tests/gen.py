"""Synthetic review-domain generators with a known planted lexicon.

The corpus mimics the shape of real multi-domain review data:

* 20 shared polar words (10 per class), consistently class-skewed in
  every domain with a planted likelihood ratio of 5, at Zipf-shaped
  frequencies like a real sentiment lexicon;
* 200 domain-specific neutral words per domain, class-balanced, also
  Zipf-distributed;
* a large shared rare tail (10k words, roughly one occurrence per
  domain each) whose class association is redrawn per domain, the
  "tough"-style words that are sentiment-bearing only locally;
* negative reviews run longer than positive ones, which balances the
  per-class token mass despite the 60/40 document imbalance.

The tail is what separates the baselines: rare words never pass the
"average five per domain" filter, so the knowledge base ignores them,
while a plain source-trained classifier consumes their smoothed,
domain-misleading ratios on every new domain.
"""

from __future__ import annotations

import random

from lifesent import Document, DomainCorpus, Label

POS_POLAR = tuple(f"pp{i:02d}" for i in range(10))
NEG_POLAR = tuple(f"nn{i:02d}" for i in range(10))
PLANTED = {Label.POS: POS_POLAR, Label.NEG: NEG_POLAR}

POLAR_RATIO = 5.0


def planted_domain(
    name: str,
    rng: random.Random,
    docs_per_domain: int = 500,
    polar_ratio: float = POLAR_RATIO,
    polar_rate: float = 0.13,
    polar_zipf: float = 1.2,
    tail_rate: float = 0.50,
    n_tail: int = 10_000,
    tail_ratio: float = 5.0,
    n_neutral: int = 200,
    neutral_zipf: float = 1.0,
    pos_fraction: float = 0.6,
    len_pos: tuple[int, int] = (22, 36),
    len_neg: tuple[int, int] = (33, 54),
) -> DomainCorpus:
    neutral_words = [f"{name}_nw{i:03d}" for i in range(n_neutral)]
    neutral_weights = [1.0 / (i + 1) ** neutral_zipf for i in range(n_neutral)]
    polar_pool = POS_POLAR + NEG_POLAR
    polar_base = {
        w: 1.0 / (i % 10 + 1) ** polar_zipf for i, w in enumerate(polar_pool)
    }
    polar_weights = {
        label: [
            polar_base[w] * (polar_ratio if w in PLANTED[label] else 1.0)
            for w in polar_pool
        ]
        for label in Label
    }
    # Per-domain class lean of each tail word; drawn by rejection so a
    # token aligned with its word's lean is tail_ratio times likelier.
    tail_leans_pos = [rng.random() < 0.5 for _ in range(n_tail)]
    accept = 1.0 / tail_ratio

    n_pos = round(docs_per_domain * pos_fraction)
    labels = [Label.POS] * n_pos + [Label.NEG] * (docs_per_domain - n_pos)
    rng.shuffle(labels)

    documents = []
    for label in labels:
        low, high = len_pos if label is Label.POS else len_neg
        tokens = []
        for _ in range(rng.randint(low, high)):
            roll = rng.random()
            if roll < polar_rate:
                tokens.append(
                    rng.choices(polar_pool, weights=polar_weights[label])[0]
                )
            elif roll < polar_rate + tail_rate:
                while True:
                    wid = rng.randrange(n_tail)
                    aligned = tail_leans_pos[wid] == (label is Label.POS)
                    if aligned or rng.random() < accept:
                        break
                tokens.append(f"rr{wid:05d}")
            else:
                tokens.append(
                    rng.choices(neutral_words, weights=neutral_weights)[0]
                )
        documents.append(Document.from_text(" ".join(tokens)))
    return DomainCorpus(name=name, documents=tuple(documents), labels=tuple(labels))


def planted_corpus(
    n_domains: int = 8, seed: int = 0, docs_per_domain: int = 500, **kwargs
) -> list[DomainCorpus]:
    rng = random.Random(seed)
    return [
        planted_domain(f"domain{i:02d}", rng, docs_per_domain, **kwargs)
        for i in range(n_domains)
    ]


def separable_domain(
    name: str = "separable", n_docs: int = 200, seed: int = 0
) -> DomainCorpus:
    """Near-disjoint class vocabularies; any sane classifier aces it."""
    rng = random.Random(seed)
    pos_words = [f"bright{i}" for i in range(30)]
    neg_words = [f"gloom{i}" for i in range(30)]
    common = [f"filler{i}" for i in range(10)]
    labels = [Label.POS] * (n_docs * 6 // 10) + [Label.NEG] * (n_docs - n_docs * 6 // 10)
    rng.shuffle(labels)
    documents = []
    for label in labels:
        own = pos_words if label is Label.POS else neg_words
        tokens = rng.choices(own, k=12) + rng.choices(common, k=4)
        rng.shuffle(tokens)
        documents.append(Document.from_text(" ".join(tokens)))
    return DomainCorpus(name=name, documents=tuple(documents), labels=tuple(labels))
