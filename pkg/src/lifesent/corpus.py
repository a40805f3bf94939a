"""Review corpus ingestion, tokenization, and fold splitting.

A domain is one product category's review collection. Reviews are kept
raw: tokenization is bare whitespace splitting, with case, punctuation
and numerals preserved.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from pathlib import Path


class Label(enum.Enum):
    """Binary sentiment class. File token is the enum value."""

    POS = "pos"
    NEG = "neg"

    @classmethod
    def parse(cls, token: str) -> "Label":
        for member in cls:
            if member.value == token:
                return member
        raise ValueError(f"unknown label {token!r} (expected 'pos' or 'neg')")


class CorpusFormatError(ValueError):
    """A corpus file line that cannot be parsed. Carries the line number."""

    def __init__(self, path, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


def tokenize(text: str) -> tuple[str, ...]:
    """Split on runs of whitespace, keeping symbols, case and numbers."""
    return tuple(text.split())


@dataclass(frozen=True)
class Document:
    """One review. tokens is exactly the whitespace split of raw_text."""

    tokens: tuple[str, ...]
    raw_text: str

    @classmethod
    def from_text(cls, text: str) -> "Document":
        return cls(tokens=tokenize(text), raw_text=text)


@dataclass(frozen=True)
class DomainCorpus:
    """One domain's documents with optional gold labels."""

    name: str
    documents: tuple[Document, ...]
    labels: tuple[Label, ...] | None = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("domain name must be non-empty")
        if self.labels is not None and len(self.labels) != len(self.documents):
            raise ValueError(
                f"domain {self.name!r}: {len(self.labels)} labels for "
                f"{len(self.documents)} documents"
            )

    def __len__(self) -> int:
        return len(self.documents)

    @property
    def labeled(self) -> bool:
        return self.labels is not None


def load_domain(path, name: str, *, labeled: bool = True) -> DomainCorpus:
    """Read one domain file, one record per non-blank line.

    Labeled mode expects ``<label>\\t<text>`` with label ``pos`` or ``neg``;
    unlabeled mode expects bare ``<text>`` lines. Documents keep file order.
    """
    path = Path(path)
    documents: list[Document] = []
    labels: list[Label] = []
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if labeled:
                token, sep, text = line.partition("\t")
                if not sep:
                    raise CorpusFormatError(
                        path, line_no, "expected '<label>\\t<text>'"
                    )
                try:
                    labels.append(Label.parse(token))
                except ValueError as exc:
                    raise CorpusFormatError(path, line_no, str(exc)) from exc
                documents.append(Document.from_text(text))
            else:
                documents.append(Document.from_text(line))
    if not documents:
        raise CorpusFormatError(path, 0, "empty corpus file")
    return DomainCorpus(
        name=name,
        documents=tuple(documents),
        labels=tuple(labels) if labeled else None,
    )


def split_folds(corpus: DomainCorpus, k: int, seed: int) -> list[tuple[int, ...]]:
    """Stratified k-fold split of document indices, deterministic per seed.

    Folds partition all indices; overall fold sizes and per-class fold
    counts each differ by at most one.
    """
    if not corpus.labeled:
        raise ValueError("split_folds requires a labeled corpus")
    n = len(corpus)
    if k < 2 or k > n:
        raise ValueError(f"k={k} out of range for {n} documents")
    rng = random.Random(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    position = 0
    for label in Label:
        indices = [i for i, lab in enumerate(corpus.labels) if lab is label]
        rng.shuffle(indices)
        for idx in indices:
            folds[position % k].append(idx)
            position += 1
    return [tuple(sorted(fold)) for fold in folds]
