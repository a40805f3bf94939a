"""Command-line front end.

Subcommands:
  initial     supervised initial learning over labeled domain files
  selfstudy   consume one unlabeled domain file with pseudo-labels
  sweep       vocabulary-percentage grid over labeled domain files
  export-kb   print the top-scored knowledge-base words for a class

State directory layout (written by initial, extended by selfstudy):
  formatversion          compatibility marker
  manifest.json          config, seed, input digests, command log
  model.txt              cumulative model snapshot
  kb.txt                 knowledge base
  report.tsv             accumulated macro-F1 rows
  consumed/<name>.tsv    training copies (gold or pseudo labels)
  pseudo/<name>.tsv      pseudo-label export, one "<index>\\t<pos|neg>" per doc

Exit codes: 0 success, 1 environment or I/O problem, 2 usage or
contract violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from contextlib import contextmanager
from pathlib import Path

from .config import EngineConfig
from .corpus import DomainCorpus, Label, load_domain
from .engine import (
    ConsumedDomain,
    INITIAL_STAGE,
    LifelongState,
    initial_learn,
    self_study,
)
from .evaluate import EvalReport, macro_f1, nbs_baseline, nbt_baseline, percentage_sweep
from .knowledge import KnowledgeBase
from .naive_bayes import NbModel

FORMAT_VERSION = "1"
EXIT_OK = 0
EXIT_ENV = 1
EXIT_USAGE = 2


class StateError(Exception):
    """State directory missing, locked, or incompatible."""


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


@contextmanager
def _state_lock(state_dir: Path):
    lock = state_dir / "lock"
    try:
        handle = open(lock, "x")
    except FileExistsError:
        raise StateError(f"state dir {state_dir} is locked by another writer")
    try:
        handle.close()
        yield
    finally:
        lock.unlink(missing_ok=True)


def _read_manifest(state_dir: Path) -> dict:
    version_file = state_dir / "formatversion"
    if not version_file.exists():
        raise StateError(f"{state_dir} is not a state directory (no formatversion)")
    version = version_file.read_text(encoding="utf-8").strip()
    if version != FORMAT_VERSION:
        raise StateError(
            f"state format {version!r} is not supported (expected {FORMAT_VERSION!r})"
        )
    with open(state_dir / "manifest.json", encoding="utf-8") as handle:
        return json.load(handle)


def _write_manifest(state_dir: Path, manifest: dict) -> None:
    text = json.dumps(manifest, indent=2, sort_keys=False)
    (state_dir / "manifest.json").write_text(text + "\n", encoding="utf-8")


def _log_command(manifest: dict, name: str, args: list[str], inputs: list[Path], outputs: list[str]) -> None:
    manifest["commands"].append(
        {
            "command": name,
            "args": args,
            "inputs": {str(p): _sha256(p) for p in inputs},
            "outputs": outputs,
        }
    )


def _write_consumed(state_dir: Path, consumed: ConsumedDomain) -> None:
    lines = [
        f"{label.value}\t{doc.raw_text}"
        for doc, label in zip(consumed.documents, consumed.labels)
    ]
    directory = state_dir / "consumed"
    directory.mkdir(exist_ok=True)
    (directory / f"{consumed.name}.tsv").write_text(
        "\n".join(lines) + "\n", encoding="utf-8"
    )


def _load_state(state_dir: Path) -> tuple[dict, LifelongState]:
    manifest = _read_manifest(state_dir)
    config = EngineConfig.from_dict(manifest["config"])
    consumed = []
    for record in manifest["consumed"]:
        corpus = load_domain(
            state_dir / "consumed" / f"{record['name']}.tsv", record["name"]
        )
        consumed.append(
            ConsumedDomain(
                name=record["name"],
                documents=corpus.documents,
                labels=corpus.labels,
                stage=record["stage"],
            )
        )
    kb = KnowledgeBase.load(state_dir / "kb.txt")
    docs = [doc for c in consumed for doc in c.documents]
    labels = [label for c in consumed for label in c.labels]
    state = LifelongState(
        config=config,
        cumulative_model=NbModel.fit(docs, labels, config.smoothing),
        kb=kb,
        consumed=consumed,
    )
    return manifest, state


def _save_state(state_dir: Path, state: LifelongState) -> None:
    state.cumulative_model.save(state_dir / "model.txt")
    state.kb.save(state_dir / "kb.txt")


def _config_from_args(args) -> EngineConfig:
    return EngineConfig(
        smoothing=args.smoothing,
        select_percent=args.percent,
        min_avg_freq=args.min_freq,
    )


def cmd_initial(args) -> int:
    state_dir = Path(args.out)
    if (state_dir / "formatversion").exists():
        raise ValueError(f"state dir {state_dir} is already initialized")
    config = _config_from_args(args)
    paths = [Path(p) for p in args.files]
    domains = [load_domain(p, p.stem) for p in paths]
    state = initial_learn(domains, config)

    state_dir.mkdir(parents=True, exist_ok=True)
    with _state_lock(state_dir):
        (state_dir / "formatversion").write_text(
            FORMAT_VERSION + "\n", encoding="utf-8"
        )
        for consumed in state.consumed:
            _write_consumed(state_dir, consumed)
        _save_state(state_dir, state)
        report = EvalReport(seed=args.seed)
        report.save(state_dir / "report.tsv")
        manifest = {
            "formatversion": int(FORMAT_VERSION),
            "seed": args.seed,
            "config": config.to_dict(),
            "consumed": [
                {"name": c.name, "stage": c.stage} for c in state.consumed
            ],
            "commands": [],
        }
        _log_command(
            manifest,
            "initial",
            args.files,
            paths,
            ["model.txt", "kb.txt", "report.tsv"]
            + [f"consumed/{c.name}.tsv" for c in state.consumed],
        )
        _write_manifest(state_dir, manifest)
    print(f"initialized {state_dir} from {len(domains)} labeled domains")
    return EXIT_OK


def _load_gold(path: Path, expected: int) -> tuple[Label, ...]:
    labels = []
    for line_no, line in enumerate(
        path.read_text(encoding="utf-8").splitlines(), start=1
    ):
        token = line.strip()
        if not token:
            continue
        try:
            labels.append(Label.parse(token))
        except ValueError as exc:
            raise ValueError(f"{path}:{line_no}: {exc}") from exc
    if len(labels) != expected:
        raise ValueError(
            f"{path}: {len(labels)} gold labels for {expected} documents"
        )
    return tuple(labels)


def cmd_selfstudy(args) -> int:
    state_dir = Path(args.state)
    domain_path = Path(args.domain)
    with _state_lock(state_dir):
        manifest, state = _load_state(state_dir)
        domain = load_domain(domain_path, domain_path.stem, labeled=False)
        state, pseudo = self_study(state, domain)

        pseudo_dir = state_dir / "pseudo"
        pseudo_dir.mkdir(exist_ok=True)
        pseudo_file = pseudo_dir / f"{domain.name}.tsv"
        pseudo_file.write_text(
            "\n".join(f"{i}\t{label.value}" for i, label in enumerate(pseudo)) + "\n",
            encoding="utf-8",
        )
        _write_consumed(state_dir, state.consumed[-1])
        _save_state(state_dir, state)

        outputs = [
            "model.txt",
            "kb.txt",
            f"consumed/{domain.name}.tsv",
            f"pseudo/{domain.name}.tsv",
        ]
        inputs = [domain_path]
        report = EvalReport.load(state_dir / "report.tsv")
        if args.gold:
            gold_path = Path(args.gold)
            gold = _load_gold(gold_path, len(domain))
            target = DomainCorpus(domain.name, domain.documents, gold)
            sources = [
                DomainCorpus(c.name, c.documents, c.labels)
                for c in state.consumed
                if c.stage == INITIAL_STAGE
            ]
            config = state.config
            seed = manifest["seed"]
            report.add(domain.name, "NB-S", nbs_baseline(sources, target, config))
            report.add(domain.name, "NB-T", nbt_baseline(target, 5, seed, config))
            report.add(domain.name, "SU-LML", macro_f1(pseudo, gold))
            report.save(state_dir / "report.tsv")
            inputs.append(gold_path)
            outputs.append("report.tsv")

        manifest["consumed"].append(
            {"name": domain.name, "stage": state.consumed[-1].stage}
        )
        _log_command(manifest, "selfstudy", [args.domain], inputs, outputs)
        _write_manifest(state_dir, manifest)

    print(f"consumed {domain.name}: {len(domain)} documents pseudo-labeled")
    if args.emit_table2:
        print(report.render())
    return EXIT_OK


def cmd_sweep(args) -> int:
    percentages = _parse_percents(args.percents)
    config = EngineConfig(smoothing=args.smoothing, min_avg_freq=args.min_freq)
    paths = [Path(p) for p in args.files]
    domains = [load_domain(p, p.stem) for p in paths]
    report = percentage_sweep(domains, percentages, config, seed=args.seed)
    report.save(args.out)
    if args.emit_table1:
        print(report.render())
    return EXIT_OK


def _parse_percents(spec_text: str) -> list[float]:
    try:
        percentages = [float(tok) for tok in spec_text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ValueError(f"bad --percents value: {exc}") from exc
    if not percentages:
        raise ValueError("--percents must list at least one value")
    for percent in percentages:
        if not 0.0 < percent <= 100.0:
            raise ValueError(f"percent must be in (0, 100], got {percent:g}")
    return percentages


def cmd_export_kb(args) -> int:
    state_dir = Path(args.state)
    kb_path = state_dir / "kb.txt"
    if not kb_path.exists():
        raise StateError(f"no knowledge base at {kb_path}")
    kb = KnowledgeBase.load(kb_path)
    label = Label.parse(args.kb_class)
    for entry in kb.top_k(label, args.top):
        print(f"{entry.word}\t{entry.score:.17g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lifesent",
        description="Lifelong sentiment classification over review domains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model_flags(p):
        p.add_argument(
            "--lambda", dest="smoothing", type=float, default=1.0,
            help="smoothing constant in [0, 1] (default 1.0)",
        )
        p.add_argument(
            "--min-freq", dest="min_freq", type=float, default=5.0,
            help="average per-domain frequency a ranked word needs (default 5)",
        )
        p.add_argument("--seed", type=int, default=42, help="fold seed (default 42)")

    p_initial = sub.add_parser("initial", help="supervised initial learning")
    p_initial.add_argument("files", nargs="+", help="labeled domain files")
    p_initial.add_argument("--out", required=True, help="state directory to create")
    p_initial.add_argument(
        "--percent", type=float, default=30.0,
        help="polar-word selection percentage (default 30)",
    )
    add_model_flags(p_initial)
    p_initial.set_defaults(func=cmd_initial)

    p_self = sub.add_parser("selfstudy", help="pseudo-label one unlabeled domain")
    p_self.add_argument("domain", help="unlabeled domain file")
    p_self.add_argument("--state", required=True, help="state directory")
    p_self.add_argument("--gold", help="gold labels, one pos/neg per line")
    p_self.add_argument(
        "--emit-table2", action=argparse.BooleanOptionalAction, default=False,
        help="print the accumulated comparison table",
    )
    p_self.set_defaults(func=cmd_selfstudy)

    p_sweep = sub.add_parser("sweep", help="vocabulary percentage sweep")
    p_sweep.add_argument("files", nargs="+", help="labeled domain files")
    p_sweep.add_argument(
        "--percents",
        default="100,90,80,70,60,50,40,30,20,10",
        help="comma-separated cutoffs in (0, 100]",
    )
    p_sweep.add_argument(
        "--out", default="sweep.tsv", help="machine-readable output file"
    )
    p_sweep.add_argument(
        "--emit-table1", action=argparse.BooleanOptionalAction, default=True,
        help="print the aligned grid (default on)",
    )
    add_model_flags(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_export = sub.add_parser("export-kb", help="print top knowledge-base words")
    p_export.add_argument("--state", required=True, help="state directory")
    p_export.add_argument(
        "--class", dest="kb_class", required=True, choices=["pos", "neg"],
        help="which polarity to export",
    )
    p_export.add_argument("--top", type=int, default=20, help="how many words")
    p_export.set_defaults(func=cmd_export_kb)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENV
    except OSError as exc:
        name = getattr(exc, "filename", None)
        detail = f"{exc.strerror}: {name}" if name else str(exc)
        print(f"error: {detail}", file=sys.stderr)
        return EXIT_ENV
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
