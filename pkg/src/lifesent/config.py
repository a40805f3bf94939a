"""Run configuration shared by the lifelong engine and the evaluation harness."""

from __future__ import annotations

from dataclasses import dataclass, fields


@dataclass(frozen=True)
class EngineConfig:
    """Knobs for the two-stage protocol.

    smoothing: Laplace constant, 1 by default.
    select_percent: share of ranked words kept when mining polar words.
    min_avg_freq: per-domain average frequency a word needs to be ranked.
    min_initial_domains: hard floor on labeled domains for initial learning.
    use_kb_vocab: restrict self-study prediction to knowledge-base words;
        turning this off is the full-vocabulary ablation.
    self_study_iterations: predict/refit passes per new domain.
    score_post_refit: score a fresh post-refit prediction of each domain
        instead of the pseudo-labels themselves.
    """

    smoothing: float = 1.0
    select_percent: float = 30.0
    min_avg_freq: float = 5.0
    min_initial_domains: int = 2
    use_kb_vocab: bool = True
    self_study_iterations: int = 1
    score_post_refit: bool = False

    def __post_init__(self):
        if not 0.0 <= self.smoothing <= 1.0:
            raise ValueError(f"smoothing must be in [0, 1], got {self.smoothing}")
        if not 0.0 < self.select_percent <= 100.0:
            raise ValueError(
                f"select_percent must be in (0, 100], got {self.select_percent}"
            )
        if self.min_avg_freq < 0.0:
            raise ValueError(f"min_avg_freq must be >= 0, got {self.min_avg_freq}")
        if self.min_initial_domains < 2:
            raise ValueError("min_initial_domains has a hard floor of 2")
        if self.self_study_iterations < 1:
            raise ValueError("self_study_iterations must be >= 1")

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: dict) -> "EngineConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)
