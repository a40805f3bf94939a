"""Macro-F1 scoring, baselines, percentage sweeps, and report assembly.

Macro-F1 is the unweighted mean of the two per-class F1 scores, the
right summary for imbalanced review sets. Cross-validation predictions
are pooled into one confusion count per class before scoring (stable
with singleton folds), and fold assignment is seeded so reports are
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .config import EngineConfig
from .corpus import DomainCorpus, Label, split_folds
from .naive_bayes import NbModel
from .polarity import frequency_filter, polarity_degrees, select_top

AVERAGE_ROW = "Average"


def macro_f1(predictions: Sequence[Label], gold: Sequence[Label]) -> float:
    """Unweighted mean of per-class F1 over both classes.

    A class with no true or predicted members contributes F1 = 0.
    """
    if len(predictions) != len(gold):
        raise ValueError(
            f"{len(predictions)} predictions but {len(gold)} gold labels"
        )
    if not gold:
        raise ValueError("cannot score an empty label sequence")
    f1_sum = 0.0
    for label in Label:
        tp = sum(1 for p, g in zip(predictions, gold) if p is label and g is label)
        fp = sum(1 for p, g in zip(predictions, gold) if p is label and g is not label)
        fn = sum(1 for p, g in zip(predictions, gold) if p is not label and g is label)
        denominator = 2 * tp + fp + fn
        f1_sum += 2 * tp / denominator if denominator else 0.0
    return f1_sum / len(Label)


@dataclass
class EvalReport:
    """Per-domain macro-F1 rows for named systems plus an average row."""

    seed: int | None = None
    rows: list[tuple[str, str, float]] = field(default_factory=list)

    def add(self, domain: str, system: str, score: float) -> None:
        self.rows.append((domain, system, score))

    def systems(self) -> list[str]:
        seen: list[str] = []
        for _, system, _ in self.rows:
            if system not in seen:
                seen.append(system)
        return seen

    def domains(self) -> list[str]:
        seen: list[str] = []
        for domain, _, _ in self.rows:
            if domain not in seen:
                seen.append(domain)
        return seen

    def score(self, domain: str, system: str) -> float | None:
        for row_domain, row_system, value in self.rows:
            if row_domain == domain and row_system == system:
                return value
        return None

    def average(self, system: str) -> float:
        scores = [v for _, s, v in self.rows if s == system]
        if not scores:
            raise ValueError(f"no rows for system {system!r}")
        return sum(scores) / len(scores)

    def render(self) -> str:
        """Aligned text table: one row per domain, one column per system."""
        systems = self.systems()
        header = ["Domain"] + systems
        body = []
        for domain in self.domains():
            cells = [domain]
            for system in systems:
                value = self.score(domain, system)
                cells.append("-" if value is None else f"{value:.4f}")
            body.append(cells)
        average = [AVERAGE_ROW] + [f"{self.average(s):.4f}" for s in systems]
        widths = [
            max(len(row[i]) for row in [header] + body + [average])
            for i in range(len(header))
        ]
        lines = [f"# seed {self.seed}"] if self.seed is not None else []
        for row in [header] + body + [average]:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        return "\n".join(lines)

    def tsv_lines(self) -> list[str]:
        lines = [f"# seed {self.seed}"] if self.seed is not None else []
        lines += [f"{d}\t{s}\t{v:.17g}" for d, s, v in self.rows]
        return lines

    def save(self, path) -> None:
        Path(path).write_text("\n".join(self.tsv_lines()) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path) -> "EvalReport":
        report = cls()
        for line_no, line in enumerate(
            Path(path).read_text(encoding="utf-8").splitlines(), start=1
        ):
            if not line.strip():
                continue
            if line.startswith("# seed "):
                report.seed = int(line.split(" ")[2])
                continue
            fields_ = line.split("\t")
            if len(fields_) != 3:
                raise ValueError(f"{path}:{line_no}: malformed report row")
            report.add(fields_[0], fields_[1], float(fields_[2]))
        return report


def _cross_validated_predictions(
    domain: DomainCorpus,
    k: int,
    seed: int,
    config: EngineConfig,
    active_for_fold=None,
) -> list[Label]:
    """Pooled held-out predictions over stratified k-fold splits.

    active_for_fold, when given, maps a fitted training model to the
    active vocabulary used for that fold's predictions.
    """
    folds = split_folds(domain, k, seed)
    predictions: list[Label | None] = [None] * len(domain)
    for fold in folds:
        held_out = set(fold)
        train_docs = [d for i, d in enumerate(domain.documents) if i not in held_out]
        train_labels = [
            lab for i, lab in enumerate(domain.labels) if i not in held_out
        ]
        model = NbModel.fit(train_docs, train_labels, config.smoothing)
        active = active_for_fold(model, train_docs) if active_for_fold else None
        for i in fold:
            predictions[i] = model.decide(domain.documents[i], active)
    return predictions


def nbt_baseline(
    domain: DomainCorpus,
    k: int = 5,
    seed: int = 42,
    config: EngineConfig | None = None,
) -> float:
    """In-domain supervised baseline: stratified k-fold CV, pooled macro-F1."""
    config = config or EngineConfig()
    if not domain.labeled:
        raise ValueError(f"domain {domain.name!r} has no labels")
    for label in Label:
        count = sum(1 for lab in domain.labels if lab is label)
        if count < k:
            raise ValueError(
                f"domain {domain.name!r}: class {label.value!r} has {count} "
                f"documents, need at least k={k}"
            )
    predictions = _cross_validated_predictions(domain, k, seed, config)
    return macro_f1(predictions, domain.labels)


def nbs_baseline(
    sources: Sequence[DomainCorpus],
    target: DomainCorpus,
    config: EngineConfig | None = None,
) -> float:
    """Source-only baseline: fit on the pooled sources, score the target."""
    config = config or EngineConfig()
    if not sources:
        raise ValueError("nbs_baseline needs at least one source domain")
    if not target.labeled:
        raise ValueError(f"target {target.name!r} has no labels")
    docs = [doc for source in sources for doc in source.documents]
    labels = [lab for source in sources for lab in source.labels]
    model = NbModel.fit(docs, labels, config.smoothing)
    predictions = [model.decide(doc) for doc in target.documents]
    return macro_f1(predictions, target.labels)


@dataclass
class SweepReport:
    """Macro-F1 grid: domains as rows, cutoff percentages as columns."""

    seed: int
    percentages: list[float]
    grid: dict[str, dict[float, float]] = field(default_factory=dict)

    def average(self, percent: float) -> float:
        scores = [row[percent] for row in self.grid.values()]
        return sum(scores) / len(scores)

    def render(self) -> str:
        header = ["Domain"] + [f"{p:g}%" for p in self.percentages]
        body = [
            [domain] + [f"{row[p]:.4f}" for p in self.percentages]
            for domain, row in self.grid.items()
        ]
        average = [AVERAGE_ROW] + [
            f"{self.average(p):.4f}" for p in self.percentages
        ]
        widths = [
            max(len(row[i]) for row in [header] + body + [average])
            for i in range(len(header))
        ]
        lines = [f"# seed {self.seed}"]
        for row in [header] + body + [average]:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        return "\n".join(lines)

    def tsv_lines(self) -> list[str]:
        lines = [f"# seed {self.seed}"]
        for domain, row in self.grid.items():
            for percent in self.percentages:
                lines.append(f"{domain}\t{percent:g}\t{row[percent]:.17g}")
        return lines

    def save(self, path) -> None:
        Path(path).write_text("\n".join(self.tsv_lines()) + "\n", encoding="utf-8")


def percentage_sweep(
    domains: Sequence[DomainCorpus],
    percentages: Sequence[float],
    config: EngineConfig | None = None,
    k: int = 5,
    seed: int = 42,
) -> SweepReport:
    """In-domain CV accuracy as the decision vocabulary shrinks.

    Per fold, words are ranked by polarity degree on the training split
    (restricted to frequency-eligible words) and predictions for the
    held-out fold use only the top percent. Predictions are pooled per
    (domain, percent) cell.
    """
    from .engine import word_counts

    config = config or EngineConfig()
    for percent in percentages:
        if not 0.0 < percent <= 100.0:
            raise ValueError(f"percent must be in (0, 100], got {percent}")
    report = SweepReport(seed=seed, percentages=list(percentages))
    for domain in domains:
        folds = split_folds(domain, k, seed)
        predictions: dict[float, list[Label | None]] = {
            p: [None] * len(domain) for p in percentages
        }
        for fold in folds:
            held_out = set(fold)
            train_docs = [
                d for i, d in enumerate(domain.documents) if i not in held_out
            ]
            train_labels = [
                lab for i, lab in enumerate(domain.labels) if i not in held_out
            ]
            model = NbModel.fit(train_docs, train_labels, config.smoothing)
            degrees = polarity_degrees(model)
            eligible = frequency_filter(
                [word_counts(train_docs)], config.min_avg_freq
            )
            for percent in percentages:
                selection = select_top(degrees, eligible, percent)
                for i in fold:
                    predictions[percent][i] = model.decide(
                        domain.documents[i], selection.selected_words
                    )
        report.grid[domain.name] = {
            p: macro_f1(predictions[p], domain.labels) for p in percentages
        }
    return report


def compare_systems(
    labeled: Sequence[DomainCorpus],
    evaluation_domains: Sequence[DomainCorpus],
    config: EngineConfig | None = None,
    k: int = 5,
    seed: int = 42,
) -> EvalReport:
    """NB-S / NB-T / SU-LML rows per evaluation domain.

    Evaluation domains must carry gold labels; the lifelong run treats
    them as unlabeled and the gold is used only for scoring.
    """
    from .engine import run_sequence

    config = config or EngineConfig()
    for domain in evaluation_domains:
        if not domain.labeled:
            raise ValueError(f"evaluation domain {domain.name!r} has no labels")
    _, _, lifelong_report = run_sequence(labeled, evaluation_domains, config, seed)
    report = EvalReport(seed=seed)
    for domain in evaluation_domains:
        report.add(domain.name, "NB-S", nbs_baseline(labeled, domain, config))
        report.add(domain.name, "NB-T", nbt_baseline(domain, k, seed, config))
        report.add(
            domain.name, "SU-LML", lifelong_report.score(domain.name, "SU-LML")
        )
    return report
