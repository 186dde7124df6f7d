"""Shared fixtures and small builders used across the test suite."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from senticite.classifiers import LabeledExample, Provenance, Task
from senticite.corpus import AnnotatedCorpus, CorpusRecord, load_corpus
from senticite.features import FeatureVector
from senticite.lexicon import LexicalResource
from senticite.postag import load_tag_lexicon
from senticite.respath import data_path

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

TESTS_DIR = Path(__file__).parent
DATA_DIR = TESTS_DIR / "data"


def vec(features: dict[str, float], sentence_id: int = 0) -> FeatureVector:
    return FeatureVector(features=features, source_sentence_id=sentence_id)


def example(features: dict[str, float], label: str, i: int = 0) -> LabeledExample:
    return LabeledExample(
        vector=vec(features, i),
        label=label,
        provenance=Provenance(doc_id="toy", span=(i, i + 1), section="other"),
    )


def point_example(x: float, y: float, label: str, i: int) -> LabeledExample:
    return example({"x": x, "y": y}, label, i)


def make_record(
    label: str,
    sentence: str,
    task: Task = Task.SENTIMENT,
    doc_id: str = "doc",
    section: str = "evaluation",
    keys: tuple[str, ...] = ("1",),
) -> CorpusRecord:
    return CorpusRecord(
        doc_id=doc_id,
        sentence=sentence,
        section=section,
        marker_keys=keys,
        label=label,
        task=task,
    )


def synthetic_corpus(counts: dict[str, int], task: Task = Task.SENTIMENT) -> AnnotatedCorpus:
    """A corpus with the requested per-class sizes and distinct sentences."""
    records = []
    for label, n in counts.items():
        for i in range(n):
            records.append(
                make_record(
                    label,
                    f"Sentence number {i} mentions the {label} system in [1].",
                    task=task,
                    doc_id=f"{label}-doc-{i % 7}",
                )
            )
    return AnnotatedCorpus(task=task, records=tuple(records), name="synthetic")


# Distinct cue word per class makes these trivially separable with token
# features, which pins expected scores in crossval tests at exactly 1.0.
SEPARABLE_CUES = {"positive": "stellar", "neutral": "routine", "negative": "dreadful"}


def separable_records(n_per_class: int = 12) -> list[CorpusRecord]:
    records = []
    for label, cue in SEPARABLE_CUES.items():
        for i in range(n_per_class):
            records.append(
                make_record(
                    label,
                    f"The {cue} tool from [2] processed batch {i} as scheduled.",
                    doc_id=f"sep-{label}-{i % 5}",
                )
            )
    return records


@pytest.fixture(scope="session")
def resource() -> LexicalResource:
    return LexicalResource.load()


@pytest.fixture(scope="session")
def tag_lexicon():
    return load_tag_lexicon()


@pytest.fixture(scope="session")
def mini_sentiment() -> AnnotatedCorpus:
    return load_corpus(data_path("mini_sentiment.jsonl"))


@pytest.fixture(scope="session")
def mini_nature() -> AnnotatedCorpus:
    return load_corpus(data_path("mini_nature.jsonl"))


@pytest.fixture(scope="session")
def citation_fixture() -> dict:
    return json.loads((DATA_DIR / "citation_fixture.json").read_text(encoding="utf-8"))
