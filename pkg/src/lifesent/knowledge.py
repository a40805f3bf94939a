"""Cumulative knowledge base of polarity scores.

Every domain credits each of its selected words once: +1 for being
selected, plus a rank bonus falling linearly from 1 (top of the ranking)
to 0 (bottom). Scores accumulate per (word, class) pair across domains,
so a word like "tough" may carry entries for both classes, earned in
different domains; consumers wanting one orientation take the
higher-scored class.

The store is a plain text file so the learned lexicon can be inspected
directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Label
from .polarity import PolaritySelection

KB_VERSION = 1


class DuplicateDomainError(ValueError):
    """A domain may credit the knowledge base only once."""


class KbFormatError(ValueError):
    """A knowledge base file line that cannot be parsed."""


def _check_domain_name(name: str) -> str:
    if not name or any(ch in name for ch in "\t\n,"):
        raise ValueError(f"domain name {name!r} must be non-empty, without tabs or commas")
    return name


@dataclass
class KbEntry:
    word: str
    label: Label
    score: float = 0.0
    domains_seen: set[str] = field(default_factory=set)


@dataclass
class KnowledgeBase:
    entries: dict[tuple[str, Label], KbEntry] = field(default_factory=dict)
    update_log: list[tuple[str, int]] = field(default_factory=list)

    def update(self, domain: str, selection: PolaritySelection) -> "KnowledgeBase":
        """Credit one domain's selection. Rank r of S earns 1 + (S-r)/(S-1)."""
        _check_domain_name(domain)
        if any(domain == seen for seen, _ in self.update_log):
            raise DuplicateDomainError(f"domain {domain!r} already credited")
        size = len(selection.entries)
        for rank, degree in enumerate(selection.entries, start=1):
            bonus = 1.0 if size == 1 else (size - rank) / (size - 1)
            key = (degree.word, degree.dominant_class)
            entry = self.entries.get(key)
            if entry is None:
                entry = KbEntry(word=degree.word, label=degree.dominant_class)
                self.entries[key] = entry
            entry.score += 1.0 + bonus
            entry.domains_seen.add(domain)
        self.update_log.append((domain, size))
        return self

    def top_k(self, label: Label, k: int) -> list[KbEntry]:
        """The k highest-scored entries of a class, ties broken by word."""
        if k < 0:
            raise ValueError(f"k must be non-negative, got {k}")
        ranked = sorted(
            (e for e in self.entries.values() if e.label is label),
            key=lambda e: (-e.score, e.word),
        )
        return ranked[:k]

    def vocabulary(self, label: Label | None = None) -> set[str]:
        """All words holding an entry, optionally restricted to one class.

        This is the active vocabulary handed to the classifier while
        pseudo-labeling a new domain.
        """
        if label is None:
            return {word for word, _ in self.entries}
        return {word for word, lab in self.entries if lab is label}

    def save(self, path) -> None:
        """Write entries (sorted by word, class) then the update log in order."""
        lines = [f"kbversion {KB_VERSION}"]
        for word, label in sorted(self.entries, key=lambda k: (k[0], k[1].value)):
            entry = self.entries[(word, label)]
            domains = ",".join(sorted(entry.domains_seen))
            lines.append(
                f"entry\t{word}\t{label.value}\t{entry.score:.17g}\t{domains}"
            )
        for domain, size in self.update_log:
            lines.append(f"log\t{domain}\t{size}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path) -> "KnowledgeBase":
        kb = cls()
        with open(path, encoding="utf-8") as handle:
            first = handle.readline().rstrip("\n")
            if first != f"kbversion {KB_VERSION}":
                raise KbFormatError(f"{path}:1: expected 'kbversion {KB_VERSION}', got {first!r}")
            for line_no, line in enumerate(handle, start=2):
                line = line.rstrip("\n")
                if not line:
                    continue
                fields = line.split("\t")
                try:
                    if fields[0] == "entry":
                        if len(fields) != 5:
                            raise ValueError("malformed entry record")
                        word, label = fields[1], Label.parse(fields[2])
                        kb.entries[(word, label)] = KbEntry(
                            word=word,
                            label=label,
                            score=float(fields[3]),
                            domains_seen=set(fields[4].split(",")) if fields[4] else set(),
                        )
                    elif fields[0] == "log":
                        if len(fields) != 3:
                            raise ValueError("malformed log record")
                        kb.update_log.append((fields[1], int(fields[2])))
                    else:
                        raise ValueError(f"unrecognized record {fields[0]!r}")
                except ValueError as exc:
                    raise KbFormatError(f"{path}:{line_no}: {exc}") from exc
        return kb
