import pytest

from lawflow.corpus.synth import generate_corpus, registry_entries
from lawflow.extraction.parties import RegistryEntry
from lawflow.orchestrator.engine import Engine, build_snapshot_from_docs


@pytest.fixture(scope="session")
def corpus7():
    """Raw seed-7 corpus; nothing here mutates it, ingest works on copies."""
    docs, manifest = generate_corpus(seed=7, n_families=8)
    return docs, manifest


@pytest.fixture(scope="session")
def entries7(corpus7):
    _, manifest = corpus7
    return [RegistryEntry(**e) for e in registry_entries(manifest)]


@pytest.fixture(scope="session")
def snapshot7(tmp_path_factory):
    # built from its own generation so corpus7 stays unsectionized
    docs, manifest = generate_corpus(seed=7, n_families=8)
    entries = [RegistryEntry(**e) for e in registry_entries(manifest)]
    root = tmp_path_factory.mktemp("snap7")
    return build_snapshot_from_docs(root, docs, entries, manifest)


@pytest.fixture(scope="session")
def engine7(snapshot7):
    return Engine(snapshot7)


def fund_of(manifest, with_trust=None):
    """First fund party name in manifest order, optionally from a family
    that also has (or lacks) a trust."""
    for fam in manifest.families:
        roles = {p["role"] for p in fam.parties}
        if with_trust is True and "trust" not in roles:
            continue
        if with_trust is False and "trust" in roles:
            continue
        for p in fam.parties:
            if p["role"] == "fund":
                return p["name"]
    raise AssertionError("no matching family in manifest")


def family_entities(fam, *roles):
    out = {}
    for role in roles:
        out[role] = next(p["name"] for p in fam.parties if p["role"] == role)
    return out
