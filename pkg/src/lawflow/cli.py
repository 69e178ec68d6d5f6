"""Operator entry points over the library and the HTTP service."""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

import click

from .config import Config
from .corpus.store import CorpusStore, ingest_documents
from .corpus.synth import generate_corpus, registry_entries
from .corpus.types import ContractDoc, CorpusManifest
from .errors import ToolError
from .evalharness import (build_dataset, render_report, render_report_csv,
                          run_eval, save_dataset)
from .extraction.parties import RegistryEntry
from .index.bm25 import build_index, save_index
from .index.labels import KeywordLabeler, LabeledSection
from .orchestrator.cache import warm_cache
from .orchestrator.engine import Engine, build_snapshot_from_docs
from .orchestrator.query import TASKS, QuerySpec
from .orchestrator.service import create_app


@click.group()
@click.option("--config", "config_path",
              type=click.Path(exists=True, dir_okay=False),
              help="YAML file overriding defaults (thresholds, budgets, "
                   "planner/client selection, rate limits).")
@click.pass_context
def cli(ctx: click.Context, config_path: str | None) -> None:
    ctx.obj = Config.load(config_path)


@cli.group()
def corpus() -> None:
    """Generate synthetic corpora."""


@corpus.command("synth")
@click.option("--seed", type=int, required=True)
@click.option("--families", type=int, default=None)
@click.option("--contracts", type=int, default=None)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
def corpus_synth(seed: int, families: int | None, contracts: int | None,
                 out_dir: str) -> None:
    """Write raw contract markup plus the ground-truth manifest."""
    if families is None and contracts is None:
        families = 12
    docs, manifest = generate_corpus(seed, n_families=families,
                                     n_contracts=contracts)
    raw = Path(out_dir) / "raw"
    raw.mkdir(parents=True, exist_ok=True)
    for doc in docs:
        (raw / f"{doc.contract_id}.sgml").write_text(doc.raw_markup,
                                                     encoding="utf-8")
        meta = {
            "contract_id": doc.contract_id,
            "accession_no": doc.accession_no,
            "source_uri": doc.source_uri,
            "filed_date": doc.filed_date,
            "metadata_parties": doc.metadata_parties,
        }
        (raw / f"{doc.contract_id}.json").write_text(
            json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    out = Path(out_dir)
    (out / "manifest.json").write_text(
        json.dumps(manifest.to_dict(), indent=2, sort_keys=True) + "\n",
        encoding="utf-8")
    (out / "registry.json").write_text(
        json.dumps(registry_entries(manifest), indent=2, sort_keys=True) + "\n",
        encoding="utf-8")
    click.echo(f"wrote {len(docs)} contracts under {out_dir}")


def _read_raw(in_dir: str) -> list[ContractDoc]:
    raw = Path(in_dir) / "raw"
    if not raw.is_dir():
        raise ToolError("E_NOT_READY", f"no raw/ directory under {in_dir}")
    docs = []
    for meta_path in sorted(raw.glob("*.json")):
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
        markup = (raw / f"{meta['contract_id']}.sgml").read_text(encoding="utf-8")
        docs.append(ContractDoc(
            contract_id=meta["contract_id"],
            accession_no=meta["accession_no"],
            source_uri=meta["source_uri"],
            raw_markup=markup,
            plain_text="",
            filed_date=meta["filed_date"],
            metadata_parties=list(meta.get("metadata_parties", [])),
        ))
    if not docs:
        raise ToolError("E_NOT_READY", f"no contracts under {in_dir}")
    return docs


@cli.command()
@click.option("--in", "in_dir", type=click.Path(exists=True, file_okay=False),
              required=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
@click.option("--workers", type=int, default=4, show_default=True)
@click.pass_obj
def ingest(config: Config, in_dir: str, out_dir: str, workers: int) -> None:
    """Normalize, sectionize, and label raw contracts into a corpus store."""
    docs = _read_raw(in_dir)
    store = CorpusStore(out_dir)
    labeler = KeywordLabeler(threshold=config.label_score_threshold)
    prepared = ingest_documents(docs, store=store, labeler=labeler,
                                workers=workers)
    src = Path(in_dir)
    manifest_path = src / "manifest.json"
    if manifest_path.exists():
        store.save_manifest(CorpusManifest.from_dict(
            json.loads(manifest_path.read_text(encoding="utf-8"))))
    registry_path = src / "registry.json"
    if registry_path.exists():
        store.save_registry(json.loads(registry_path.read_text(encoding="utf-8")))
    click.echo(f"ingested {len(prepared)} contracts into {out_dir}")


def _loaded_store(root: str) -> tuple[CorpusStore, list[ContractDoc]]:
    store = CorpusStore(root)
    docs = store.load_all()
    if not docs:
        raise ToolError("E_NOT_READY", f"no contracts ingested under {root}")
    return store, docs


@cli.group()
def index() -> None:
    """Full-text section index."""


@index.command("build")
@click.option("--root", type=click.Path(exists=True, file_okay=False),
              required=True)
def index_build(root: str) -> None:
    _, docs = _loaded_store(root)
    labeled = [LabeledSection(span, 1.0) for doc in docs for span in doc.sections]
    idx = build_index(labeled)
    save_index(idx, Path(root) / "index.json")
    click.echo(f"indexed {len(labeled)} sections from {len(docs)} contracts")


@cli.group()
def cache() -> None:
    """Per-contract feature cache."""


@cache.command("warm")
@click.option("--root", type=click.Path(exists=True, file_okay=False),
              required=True)
@click.pass_obj
def cache_warm(config: Config, root: str) -> None:
    store, docs = _loaded_store(root)
    entries = [RegistryEntry(e["name"], e["role"]) for e in store.load_registry()]
    if not entries:
        raise ToolError("E_NOT_READY", "parties.json missing or empty; re-ingest")
    feats = warm_cache(docs, entries, config)
    feats.save(root)
    click.echo(f"cached {len(feats.rows)} contracts "
               f"({len(feats.errors)} degraded)")


def _flat(item) -> str:
    if isinstance(item, dict):
        if "ordinal" in item:
            return f"{item['contract_id']}#{item['ordinal']}"
        if "contract_id" in item:
            return str(item["contract_id"])
    return str(item)


def render_envelope(env) -> str:
    lines = [f"task: {env.query['task']}", f"result ({env.result_kind}):"]
    if isinstance(env.result, str):
        lines.append(f"  {env.result}")
    elif isinstance(env.result, list):
        for item in env.result:
            if isinstance(item, list) and len(item) == 2:
                lines.append(f"  {_flat(item[0])} -> {_flat(item[1])}")
            else:
                lines.append(f"  {_flat(item)}")
    else:
        lines.append(f"  {env.result!r}")
    if env.comparison:
        lines.append("deltas:")
        for d in env.comparison["deltas"]:
            lines.append(f"  {d['left_id']} vs {d['right_id']}: {d['narrative']}")
    if env.citations:
        lines.append("citations:")
        for c in env.citations:
            lines.append(f"  {c['contract_id']}#{c['ordinal']}")
    lines.append(f"attempts: {len(env.attempts)}; tool calls: {len(env.trace)}")
    return "\n".join(lines)


@cli.command()
@click.option("--root", type=click.Path(exists=True, file_okay=False),
              default="corpus", show_default=True)
@click.option("--fund")
@click.option("--trust")
@click.option("--custodian")
@click.option("--task", type=click.Choice(sorted(TASKS)), required=True)
@click.option("--clause", help="clause label for section tasks")
@click.option("--hint", help="free-text steering passed to the planner")
@click.option("--json", "as_json", is_flag=True, help="print the full envelope")
@click.pass_obj
def ask(config: Config, root: str, fund: str | None, trust: str | None,
        custodian: str | None, task: str, clause: str | None,
        hint: str | None, as_json: bool) -> None:
    """Answer one query against an ingested corpus."""
    entities = {k: v for k, v in
                (("fund", fund), ("trust", trust), ("custodian", custodian)) if v}
    query = QuerySpec(task, entities, clause, hint)
    engine = Engine.open(root, config)
    env = engine.answer(query)
    if as_json:
        click.echo(json.dumps(env.to_dict(), indent=2, sort_keys=True))
    else:
        click.echo(render_envelope(env))


@cli.group("eval")
def eval_group() -> None:
    """Build datasets and score systems on them."""


@eval_group.command("build")
@click.option("--seed", type=int, required=True)
@click.option("--contracts", type=int, default=200, show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True)
def eval_build(seed: int, contracts: int, out_path: str) -> None:
    docs, manifest = generate_corpus(seed, n_contracts=contracts)
    cases = build_dataset(manifest, docs={d.contract_id: d for d in docs},
                          seed=seed)
    save_dataset(cases, out_path)
    click.echo(f"{len(cases)} cases -> {out_path}")


@eval_group.command("run")
@click.option("--system", type=click.Choice(["law", "baseline"]), required=True)
@click.option("--seed", type=int, required=True)
@click.option("--contracts", type=int, default=200, show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False),
              help="write the scorecard JSON here")
@click.option("--csv", "as_csv", is_flag=True, help="CSV table instead of text")
@click.pass_obj
def eval_run(config: Config, system: str, seed: int, contracts: int,
             out_path: str | None, as_csv: bool) -> None:
    """Regenerate the seeded corpus and dataset, then score one system."""
    docs, manifest = generate_corpus(seed, n_contracts=contracts)
    docmap = {d.contract_id: d for d in docs}
    entries = [RegistryEntry(**e) for e in registry_entries(manifest)]
    cases = build_dataset(manifest, docs=docmap, seed=seed)
    if system == "law":
        with tempfile.TemporaryDirectory() as tmp:
            snap = build_snapshot_from_docs(tmp, docs, entries, manifest, config)
            card = run_eval(cases, "law", engine=Engine(snap, config),
                            config=config)
    else:
        card = run_eval(cases, "baseline", docs=docmap, entries=entries,
                        config=config)
    if out_path:
        card.save(out_path)
    click.echo(render_report_csv([card]) if as_csv else render_report([card]),
               nl=False)


@cli.command()
@click.option("--root", type=click.Path(exists=True, file_okay=False),
              default="corpus", show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.pass_obj
def serve(config: Config, root: str, host: str, port: int) -> None:
    """Start the HTTP service over an ingested corpus."""
    import uvicorn

    engine = Engine.open(root, config)
    uvicorn.run(create_app(engine), host=host, port=port, log_level="warning")


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 130
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except ToolError as err:
        click.echo(json.dumps(err.problem_detail(), sort_keys=True), err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
