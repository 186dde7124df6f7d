"""Experiment protocols: feature ablation and train/test size sweeps.

Every protocol consumes corpus records and returns a small result object
with a format_table() for terminal display and to_dict() for --json.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .classifiers import (
    LinearModel,
    Task,
    TrainConfig,
    predict,
    train_paum,
    train_svm,
)
from .corpus import AnnotatedCorpus, CorpusRecord, canonical_key, featurize_records, stratified_split
from .errors import InvalidTrainingSetError, ValidationError
from .evaluation import FitPredict, evaluate
from .features import FeatureConfig, preset
from .lexicon import LexicalResource
from .postag import PosTag, load_tag_lexicon

ALGORITHMS = ("svm", "paum")

_TRAINERS = {"svm": train_svm, "paum": train_paum}


def train_algorithm(
    algorithm: str,
    examples,
    config: TrainConfig,
    labels: tuple[str, ...] | None = None,
) -> LinearModel:
    try:
        trainer = _TRAINERS[algorithm]
    except KeyError:
        raise ValidationError(
            f"unknown algorithm {algorithm!r}; choose from {list(_TRAINERS)}"
        ) from None
    return trainer(examples, config, labels)


def make_fit_predict(
    algorithm: str,
    feature_config: FeatureConfig,
    resource: LexicalResource,
    train_config: TrainConfig,
    task: Task,
    tag_lexicon: dict[str, PosTag] | None = None,
) -> FitPredict:
    """Bundle featurize+train+predict for cross-validation and sweeps."""
    if tag_lexicon is None and feature_config.use_pos:
        tag_lexicon = load_tag_lexicon()

    def fit_predict(
        train_records: Sequence[CorpusRecord], test_records: Sequence[CorpusRecord]
    ) -> list[str]:
        train_examples = featurize_records(train_records, feature_config, resource, tag_lexicon)
        model = train_algorithm(algorithm, train_examples, train_config, task.labels)
        test_examples = featurize_records(test_records, feature_config, resource, tag_lexicon)
        return [predict(model, example.vector)[0] for example in test_examples]

    return fit_predict


@dataclass(frozen=True)
class AblationResult:
    presets: tuple[str, ...]
    algorithms: tuple[str, ...]
    micro_f1: dict[tuple[str, str], float]  # (preset, algorithm) -> score

    def format_table(self) -> str:
        width = max(len("features"), *(len(p) for p in self.presets))
        header = f"{'features':<{width}}"
        for algorithm in self.algorithms:
            header += f"  {algorithm:>8}"
        lines = [header]
        for name in self.presets:
            row = f"{name:<{width}}"
            for algorithm in self.algorithms:
                row += f"  {self.micro_f1[(name, algorithm)]:>8.4f}"
            lines.append(row)
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "presets": list(self.presets),
            "algorithms": list(self.algorithms),
            "micro_f1": {
                f"{p}/{a}": score for (p, a), score in self.micro_f1.items()
            },
        }


def feature_ablation(
    train_records: Sequence[CorpusRecord],
    test_records: Sequence[CorpusRecord],
    task: Task,
    resource: LexicalResource,
    train_config: TrainConfig,
    presets: tuple[str, ...] = ("only-pos", "combination"),
    algorithms: tuple[str, ...] = ALGORITHMS,
    tag_lexicon: dict[str, PosTag] | None = None,
) -> AblationResult:
    """One row per feature preset, one column per algorithm, micro-F1 cells."""
    if not test_records:
        raise ValidationError("ablation needs a non-empty test set")
    if tag_lexicon is None:
        tag_lexicon = load_tag_lexicon()
    gold = [record.label for record in test_records]
    scores: dict[tuple[str, str], float] = {}
    for preset_name in presets:
        config = preset(preset_name)
        train_examples = featurize_records(train_records, config, resource, tag_lexicon)
        test_examples = featurize_records(test_records, config, resource, tag_lexicon)
        for algorithm in algorithms:
            model = train_algorithm(algorithm, train_examples, train_config, task.labels)
            predictions = [predict(model, ex.vector)[0] for ex in test_examples]
            scores[(preset_name, algorithm)] = evaluate(predictions, gold, task.labels).micro_f1
    return AblationResult(tuple(presets), tuple(algorithms), scores)


@dataclass(frozen=True)
class SweepResult:
    axis: str  # "train" or "test"
    sizes: tuple[int, ...]
    effective_sizes: dict[int, int]
    micro_f1: dict[tuple[str, int], float | None]  # (algorithm, requested size)
    algorithms: tuple[str, ...]
    notes: tuple[str, ...] = field(default_factory=tuple)

    def format_table(self) -> str:
        width = max(len("algorithm"), *(len(a) for a in self.algorithms))
        header = f"{'algorithm':<{width}}"
        for size in self.sizes:
            header += f"  {size:>8}"
        lines = [f"{self.axis}-size sweep", header]
        for algorithm in self.algorithms:
            row = f"{algorithm:<{width}}"
            for size in self.sizes:
                score = self.micro_f1[(algorithm, size)]
                cell = "-" if score is None else f"{score:.4f}"
                row += f"  {cell:>8}"
            lines.append(row)
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "axis": self.axis,
            "sizes": list(self.sizes),
            "effective_sizes": {str(k): v for k, v in self.effective_sizes.items()},
            "algorithms": list(self.algorithms),
            "micro_f1": {
                f"{a}/{s}": score for (a, s), score in self.micro_f1.items()
            },
            "notes": list(self.notes),
        }


def _validate_sizes(sizes: Sequence[int]) -> tuple[int, ...]:
    if not sizes:
        raise ValidationError("sweep needs at least one size")
    for size in sizes:
        if size < 1:
            raise ValidationError("sweep sizes must be >= 1")
    return tuple(sizes)


def test_size_sweep(
    corpus: AnnotatedCorpus,
    sizes: Sequence[int],
    n_train_per_class: int,
    seed: int,
    resource: LexicalResource,
    train_config: TrainConfig,
    feature_config: FeatureConfig | None = None,
    algorithms: tuple[str, ...] = ALGORITHMS,
) -> SweepResult:
    """Fixed balanced training set; score on growing document-count prefixes
    of the held-out pool (sizes count distinct documents)."""
    sizes = _validate_sizes(sizes)
    feature_config = feature_config or preset("combination")
    tag_lexicon = load_tag_lexicon()
    split = stratified_split(corpus, n_train_per_class, seed)
    if not split.test:
        raise ValidationError("test pool is empty; lower --n-per-class")
    train_examples = featurize_records(split.train, feature_config, resource, tag_lexicon)
    models = {
        algorithm: train_algorithm(algorithm, train_examples, train_config, corpus.task.labels)
        for algorithm in algorithms
    }
    doc_ids = sorted({record.doc_id for record in split.test})
    notes: list[str] = []
    scores: dict[tuple[str, int], float | None] = {}
    effective: dict[int, int] = {}
    for size in sizes:
        chosen = set(doc_ids[: min(size, len(doc_ids))])
        effective[size] = len(chosen)
        if len(chosen) < size:
            notes.append(f"size {size}: only {len(chosen)} held-out documents exist")
        subset = [record for record in split.test if record.doc_id in chosen]
        gold = [record.label for record in subset]
        examples = featurize_records(subset, feature_config, resource, tag_lexicon)
        for algorithm in algorithms:
            predictions = [predict(models[algorithm], ex.vector)[0] for ex in examples]
            scores[(algorithm, size)] = evaluate(predictions, gold, corpus.task.labels).micro_f1
    return SweepResult("test", sizes, effective, scores, tuple(algorithms), tuple(notes))


def train_size_sweep(
    corpus: AnnotatedCorpus,
    sizes: Sequence[int],
    seed: int,
    resource: LexicalResource,
    train_config: TrainConfig,
    feature_config: FeatureConfig | None = None,
    algorithms: tuple[str, ...] = ALGORITHMS,
    test_fraction: float = 0.3,
) -> SweepResult:
    """Fixed held-out test set; train on growing prefixes of the remaining
    pool, which keeps the corpus's own class distribution (sizes count
    training records). Cells whose subset collapses to fewer than two
    classes are undefined and reported as '-'."""
    sizes = _validate_sizes(sizes)
    if not 0.0 < test_fraction < 1.0:
        raise ValidationError("test_fraction must be in (0, 1)")
    feature_config = feature_config or preset("combination")
    tag_lexicon = load_tag_lexicon()
    ordered = sorted(corpus.records, key=canonical_key)
    rng = random.Random(seed)
    rng.shuffle(ordered)
    n_test = max(1, round(len(ordered) * test_fraction))
    if n_test >= len(ordered):
        raise ValidationError("corpus too small for the requested test fraction")
    test = ordered[:n_test]
    pool = ordered[n_test:]
    gold = [record.label for record in test]
    test_examples = featurize_records(test, feature_config, resource, tag_lexicon)
    notes: list[str] = []
    scores: dict[tuple[str, int], float | None] = {}
    effective: dict[int, int] = {}
    for size in sizes:
        subset = pool[: min(size, len(pool))]
        effective[size] = len(subset)
        if len(subset) < size:
            notes.append(f"size {size}: training pool holds only {len(subset)} records")
        train_examples = featurize_records(subset, feature_config, resource, tag_lexicon)
        for algorithm in algorithms:
            try:
                model = train_algorithm(algorithm, train_examples, train_config, corpus.task.labels)
            except InvalidTrainingSetError as exc:
                notes.append(f"size {size}/{algorithm}: {exc}")
                scores[(algorithm, size)] = None
                continue
            predictions = [predict(model, ex.vector)[0] for ex in test_examples]
            scores[(algorithm, size)] = evaluate(predictions, gold, corpus.task.labels).micro_f1
    return SweepResult("train", sizes, effective, scores, tuple(algorithms), tuple(notes))
