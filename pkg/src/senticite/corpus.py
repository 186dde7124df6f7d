"""Annotated corpora: JSONL loading, manifests, and stratified splitting.

A corpus holds text-level records; featurization happens later against a
FeatureConfig so one corpus serves every feature preset.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .classifiers import LabeledExample, Provenance, Task, task_from_string
from .errors import ClassShortageError, CorpusFormatError, TaskMismatchError, ValidationError
from .features import FeatureConfig, vectorize_text
from .ingest import Section
from .lexicon import LexicalResource
from .postag import PosTag

_SECTION_VALUES = frozenset(s.value for s in Section)


@dataclass(frozen=True)
class CorpusRecord:
    doc_id: str
    sentence: str
    section: str
    marker_keys: tuple[str, ...]
    label: str
    task: Task


@dataclass(frozen=True)
class AnnotatedCorpus:
    task: Task
    records: tuple[CorpusRecord, ...]
    name: str = ""

    def class_counts(self) -> dict[str, int]:
        counts = {label: 0 for label in self.task.labels}
        for record in self.records:
            counts[record.label] += 1
        return counts


def _require(payload: dict, key: str, line: int, path: str):
    if key not in payload:
        raise CorpusFormatError(f"missing field {key!r}", line=line, path=path)
    return payload[key]


def load_corpus(path: str | Path, task: Task | None = None) -> AnnotatedCorpus:
    """Read a JSONL corpus; every format problem names its 1-based line."""
    path = Path(path)
    records: list[CorpusRecord] = []
    corpus_task: Task | None = None
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            payload = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusFormatError(f"invalid JSON: {exc.msg}", line=lineno, path=str(path)) from exc
        if not isinstance(payload, dict):
            raise CorpusFormatError("record is not a JSON object", line=lineno, path=str(path))
        doc_id = _require(payload, "doc_id", lineno, str(path))
        sentence = _require(payload, "sentence", lineno, str(path))
        section = _require(payload, "section", lineno, str(path))
        marker_keys = _require(payload, "marker_keys", lineno, str(path))
        label = _require(payload, "label", lineno, str(path))
        task_name = _require(payload, "task", lineno, str(path))
        if not isinstance(doc_id, str) or not doc_id:
            raise CorpusFormatError("doc_id must be a non-empty string", line=lineno, path=str(path))
        if not isinstance(sentence, str) or not sentence.strip():
            raise CorpusFormatError("sentence must be a non-empty string", line=lineno, path=str(path))
        if section not in _SECTION_VALUES:
            raise CorpusFormatError(
                f"unknown section {section!r}; expected one of {sorted(_SECTION_VALUES)}",
                line=lineno, path=str(path))
        if not isinstance(marker_keys, list) or not all(isinstance(k, str) for k in marker_keys):
            raise CorpusFormatError("marker_keys must be a list of strings", line=lineno, path=str(path))
        try:
            record_task = task_from_string(task_name)
        except ValidationError:
            raise CorpusFormatError(f"unknown task {task_name!r}", line=lineno, path=str(path)) from None
        if corpus_task is None:
            corpus_task = record_task
        elif record_task is not corpus_task:
            raise CorpusFormatError(
                f"mixed tasks in one corpus: {record_task.value} vs {corpus_task.value}",
                line=lineno, path=str(path))
        if label not in record_task.labels:
            raise CorpusFormatError(
                f"unknown label {label!r} for task {record_task.value}; "
                f"expected one of {list(record_task.labels)}",
                line=lineno, path=str(path))
        records.append(CorpusRecord(
            doc_id=doc_id, sentence=sentence, section=section,
            marker_keys=tuple(marker_keys), label=label, task=record_task))
    if not records:
        raise CorpusFormatError("corpus contains no records", path=str(path))
    assert corpus_task is not None
    if task is not None and corpus_task is not task:
        raise TaskMismatchError(
            f"corpus {path} is a {corpus_task.value} corpus, expected {task.value}")
    return AnnotatedCorpus(task=corpus_task, records=tuple(records), name=path.stem)


def load_manifest(path: str | Path) -> dict[str, int]:
    """Read a plain 'key count' manifest."""
    path = Path(path)
    counts: dict[str, int] = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise CorpusFormatError("expected 'key count'", line=lineno, path=str(path))
        key, raw = parts
        try:
            value = int(raw)
        except ValueError:
            raise CorpusFormatError(f"count {raw!r} is not an integer",
                                    line=lineno, path=str(path)) from None
        if value < 0:
            raise CorpusFormatError("counts must be >= 0", line=lineno, path=str(path))
        if key in counts:
            raise CorpusFormatError(f"duplicate key {key!r}", line=lineno, path=str(path))
        counts[key] = value
    if not counts:
        raise CorpusFormatError("manifest is empty", path=str(path))
    return counts


def verify_manifest(corpus: AnnotatedCorpus, manifest: Mapping[str, int]) -> list[str]:
    """Mismatches between a corpus and its manifest; empty means consistent.

    Checks per-label lines, the optional 'total' line, and any optional
    'label.section' breakdown lines.
    """
    problems: list[str] = []
    counts = corpus.class_counts()
    for label in corpus.task.labels:
        expected = manifest.get(label)
        if expected is None:
            problems.append(f"manifest lacks a count for label {label!r}")
        elif expected != counts[label]:
            problems.append(f"label {label!r}: manifest says {expected}, corpus has {counts[label]}")
    if "total" in manifest and manifest["total"] != len(corpus.records):
        problems.append(f"total: manifest says {manifest['total']}, corpus has {len(corpus.records)}")
    for key, expected in manifest.items():
        if "." not in key:
            continue
        label, section = key.split(".", 1)
        actual = sum(
            1 for r in corpus.records if r.label == label and r.section == section
        )
        if actual != expected:
            problems.append(f"{key}: manifest says {expected}, corpus has {actual}")
    return problems


def canonical_key(record: CorpusRecord) -> tuple:
    return (record.doc_id, record.sentence, record.section, record.label,
            ",".join(record.marker_keys))


@dataclass(frozen=True)
class DatasetSplit:
    train: tuple[CorpusRecord, ...]
    test: tuple[CorpusRecord, ...]
    train_counts: dict[str, int]
    n_per_class: int
    seed: int


def stratified_split(corpus: AnnotatedCorpus, n_per_class: int, seed: int) -> DatasetSplit:
    """Balanced train set (n per class, seeded, without replacement); the
    remainder becomes the test set and keeps the corpus's own distribution.

    Records are canonically sorted before the seeded shuffle, so the split
    depends only on the record multiset, not on input order.
    """
    if n_per_class < 0:
        raise ValidationError("n_per_class must be >= 0")
    ordered = sorted(corpus.records, key=canonical_key)
    rng = random.Random(seed)
    train: list[CorpusRecord] = []
    test: list[CorpusRecord] = []
    for label in corpus.task.labels:
        group = [record for record in ordered if record.label == label]
        if len(group) < n_per_class:
            raise ClassShortageError(label, len(group), n_per_class)
        rng.shuffle(group)
        train.extend(group[:n_per_class])
        test.extend(group[n_per_class:])
    train.sort(key=canonical_key)
    test.sort(key=canonical_key)
    return DatasetSplit(
        train=tuple(train),
        test=tuple(test),
        train_counts={label: n_per_class for label in corpus.task.labels},
        n_per_class=n_per_class,
        seed=seed,
    )


def featurize_records(
    records: Sequence[CorpusRecord],
    config: FeatureConfig,
    resource: LexicalResource,
    tag_lexicon: dict[str, PosTag] | None = None,
) -> list[LabeledExample]:
    examples: list[LabeledExample] = []
    for i, record in enumerate(records):
        vector = vectorize_text(record.sentence, config, resource, i, tag_lexicon)
        examples.append(LabeledExample(
            vector=vector,
            label=record.label,
            provenance=Provenance(record.doc_id, (0, len(record.sentence)), record.section),
        ))
    return examples
