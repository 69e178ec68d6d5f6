"""Front door: query specs, feature cache, engine, HTTP service."""

from .cache import CacheRow, FeatureCache, warm_cache
from .engine import (
    AnswerEnvelope,
    Engine,
    Snapshot,
    build_snapshot_from_docs,
    jsonify_value,
    load_snapshot,
)
from .query import CLAUSE_TASKS, ENTITY_KEYS, TASKS, QuerySpec
from .tools import Capture, build_bindings

__all__ = [
    "AnswerEnvelope",
    "CLAUSE_TASKS",
    "CacheRow",
    "Capture",
    "ENTITY_KEYS",
    "Engine",
    "FeatureCache",
    "QuerySpec",
    "Snapshot",
    "TASKS",
    "build_bindings",
    "build_snapshot_from_docs",
    "jsonify_value",
    "load_snapshot",
    "warm_cache",
]
