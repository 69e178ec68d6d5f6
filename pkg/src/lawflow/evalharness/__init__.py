from .baseline import baseline_analytical, baseline_retrieve, build_context
from .dataset import (ANALYTICAL_TASKS, ENTITY_COMBOS, RETRIEVAL_TASKS,
                      EvalCase, build_dataset, load_dataset, save_dataset)
from .run import (HIT_RATE_NOTE, ScoreCard, TaskScore, law_retrieved,
                  render_report, render_report_csv, run_eval)
from .scoring import TokenF1Scorer, as_hit_item, recall_counts, token_f1

__all__ = [
    "ANALYTICAL_TASKS",
    "ENTITY_COMBOS",
    "RETRIEVAL_TASKS",
    "EvalCase",
    "HIT_RATE_NOTE",
    "ScoreCard",
    "TaskScore",
    "TokenF1Scorer",
    "as_hit_item",
    "baseline_analytical",
    "baseline_retrieve",
    "build_context",
    "build_dataset",
    "law_retrieved",
    "load_dataset",
    "recall_counts",
    "render_report",
    "render_report_csv",
    "run_eval",
    "save_dataset",
    "token_f1",
]
