"""Run LAW or the baseline over a dataset and render the score table."""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from pathlib import Path

from ..agents.client import make_client
from ..config import DEFAULT_CONFIG, Config
from ..errors import ToolError
from ..orchestrator.engine import Engine
from .baseline import baseline_analytical, baseline_retrieve
from .dataset import ANALYTICAL_TASKS, RETRIEVAL_TASKS, EvalCase
from .scoring import SimilarityScorer, TokenF1Scorer, recall_counts

HIT_RATE_NOTE = ("hit rate = micro-averaged recall (matched truth items over "
                 "total truth items); analytical similarity = token-level F1")


@dataclass
class TaskScore:
    task: str
    kind: str
    n_cases: int = 0
    hits: int = 0
    truth_total: int = 0
    f1_sum: float = 0.0

    @property
    def hit_rate(self) -> float | None:
        if self.kind != "retrieval":
            return None
        return self.hits / self.truth_total if self.truth_total else 0.0

    @property
    def similarity_f1(self) -> float | None:
        if self.kind != "analytical":
            return None
        return self.f1_sum / self.n_cases if self.n_cases else 0.0

    def to_dict(self) -> dict:
        return {
            "task": self.task,
            "kind": self.kind,
            "n_cases": self.n_cases,
            "hits": self.hits,
            "truth_total": self.truth_total,
            "hit_rate": self.hit_rate,
            "similarity_f1": self.similarity_f1,
        }


@dataclass
class ScoreCard:
    system: str
    note: str = HIT_RATE_NOTE
    tasks: dict[str, TaskScore] = field(default_factory=dict)

    def task_score(self, task: str) -> TaskScore | None:
        return self.tasks.get(task)

    def to_dict(self) -> dict:
        return {
            "system": self.system,
            "note": self.note,
            "tasks": {name: ts.to_dict() for name, ts in sorted(self.tasks.items())},
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n",
                              encoding="utf-8")


def law_retrieved(result, task: str) -> list:
    """Pull (id, value) answers out of a jsonified envelope result."""
    if not isinstance(result, list):
        return []
    out = []
    for item in result:
        if task == "explore_all":
            if isinstance(item, list) and len(item) == 2 and isinstance(item[1], dict):
                out.append(item[1].get("contract_id"))
        elif task == "find_master_agreements":
            if isinstance(item, list) and len(item) == 2 and isinstance(item[1], dict):
                out.append([item[0], item[1].get("contract_id")])
        else:
            if isinstance(item, list) and len(item) == 2:
                out.append(list(item))
    return out


def run_eval(
    cases: list[EvalCase],
    system: str = "law",
    engine: Engine | None = None,
    docs: dict | None = None,
    entries: list | None = None,
    scorer: SimilarityScorer | None = None,
    config: Config = DEFAULT_CONFIG,
) -> ScoreCard:
    """Score one system over the dataset; unanswerable cases score zero."""
    if system not in ("law", "baseline"):
        raise ValueError(f"unknown system {system!r}")
    if system == "law" and engine is None:
        raise ValueError("law needs an engine")
    if system == "baseline" and (docs is None or entries is None):
        raise ValueError("baseline needs docs and the party registry")
    scorer = scorer or TokenF1Scorer()
    client = make_client("mock", [e.name for e in entries]) if entries else None

    card = ScoreCard(system=system)
    for case in cases:
        task = case.query.task
        score = card.tasks.setdefault(
            task, TaskScore(task, case.kind))
        score.n_cases += 1
        if case.kind == "retrieval":
            if system == "law":
                try:
                    envelope = engine.answer(case.query)
                    retrieved = law_retrieved(envelope.result, task)
                except ToolError:
                    retrieved = []
            else:
                retrieved = baseline_retrieve(case, docs, entries, config)
            hits, total = recall_counts(retrieved, case.truth)
            score.hits += hits
            score.truth_total += total
        else:
            if system == "law":
                try:
                    envelope = engine.answer(case.query)
                    candidate = envelope.result if isinstance(envelope.result, str) else ""
                except ToolError:
                    candidate = ""
            else:
                candidate = baseline_analytical(
                    case, docs, client or engine.client, config)
            score.f1_sum += scorer.score(candidate, case.reference)
    return card


def _fmt(value: float | None) -> str:
    return "-" if value is None else f"{100 * value:5.1f}"


def render_report(cards: list[ScoreCard]) -> str:
    """Text table, one row per task, one column per system."""
    systems = [c.system for c in cards]
    lines = [HIT_RATE_NOTE, ""]
    width = max(len(t) for t in (*RETRIEVAL_TASKS, *ANALYTICAL_TASKS)) + 5
    lines.append("task".ljust(width) + "".join(s.rjust(10) for s in systems))
    for task in (*RETRIEVAL_TASKS, *ANALYTICAL_TASKS):
        label = task if task in RETRIEVAL_TASKS else f"{task} (F1)"
        row = label.ljust(width)
        for c in cards:
            ts = c.task_score(task)
            value = None
            if ts is not None:
                value = ts.hit_rate if ts.kind == "retrieval" else ts.similarity_f1
            row += _fmt(value).rjust(10)
        lines.append(row)
    return "\n".join(lines) + "\n"


def render_report_csv(cards: list[ScoreCard]) -> str:
    import csv

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["task", *(c.system for c in cards)])
    for task in (*RETRIEVAL_TASKS, *ANALYTICAL_TASKS):
        row = [task]
        for c in cards:
            ts = c.task_score(task)
            value = None
            if ts is not None:
                value = ts.hit_rate if ts.kind == "retrieval" else ts.similarity_f1
            row.append("" if value is None else f"{value:.4f}")
        writer.writerow(row)
    return buf.getvalue()
