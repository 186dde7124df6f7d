"""Linear one-vs-rest classifiers over sparse feature dicts, from scratch.

Two trainers share the same presentation order stream:

* train_svm: stochastic subgradient descent on the L2-regularized hinge
  loss (bias unregularized).
* train_paum: perceptron with uneven margins. The bias is realized through
  an internal constant input of value R (the largest training-vector norm),
  so rescaling the data by c while dividing the learning rate by c replays
  the identical update sequence when both margins are zero.

Models serialize to a versioned JSON container; loading is byte-exact.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import asdict, dataclass, field
from enum import Enum
from pathlib import Path
from typing import Mapping, Sequence

from .errors import (
    InvalidTrainingSetError,
    ModelFormatError,
    UnsupportedVersionError,
    ValidationError,
)
from .features import FeatureVector

MODEL_FORMAT = "senticite-linear-model"
MODEL_VERSION = 1

SENTIMENT_LABELS = ("positive", "neutral", "negative")
NATURE_LABELS = ("usage", "reading", "dataset", "reference", "rest")


class Task(Enum):
    SENTIMENT = "sentiment"
    NATURE = "nature"

    @property
    def labels(self) -> tuple[str, ...]:
        return SENTIMENT_LABELS if self is Task.SENTIMENT else NATURE_LABELS


def task_from_string(name: str) -> Task:
    try:
        return Task(name)
    except ValueError:
        raise ValidationError(
            f"unknown task {name!r}; choose from {[t.value for t in Task]}"
        ) from None


@dataclass(frozen=True)
class Provenance:
    doc_id: str
    span: tuple[int, int]
    section: str


@dataclass(frozen=True)
class LabeledExample:
    vector: FeatureVector
    label: str
    provenance: Provenance


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 20
    learning_rate: float = 0.1
    regularization: float = 1e-3
    positive_margin: float = 1.0
    negative_margin: float = 0.0
    shuffle_seed: int = 42
    record_updates: bool = False

    def __post_init__(self) -> None:
        if self.epochs < 1:
            raise ValidationError("epochs must be >= 1")
        if not (self.learning_rate > 0 and math.isfinite(self.learning_rate)):
            raise ValidationError("learning_rate must be positive and finite")
        if not (self.regularization >= 0 and math.isfinite(self.regularization)):
            raise ValidationError("regularization must be >= 0 and finite")
        if self.positive_margin < 0 or self.negative_margin < 0:
            raise ValidationError("margins must be >= 0")
        if self.learning_rate * self.regularization >= 1:
            raise ValidationError("learning_rate * regularization must be < 1")


@dataclass
class LinearModel:
    labels: tuple[str, ...]
    weights: dict[str, dict[str, float]]
    biases: dict[str, float]
    metadata: dict = field(default_factory=dict)

    def score(self, vector: FeatureVector) -> dict[str, float]:
        return {
            label: _dot(self.weights[label], vector.features) + self.biases[label]
            for label in self.labels
        }


def _dot(weights: Mapping[str, float], features: Mapping[str, float]) -> float:
    return sum(weights.get(name, 0.0) * value for name, value in features.items())


def _norm(features: Mapping[str, float]) -> float:
    return math.sqrt(sum(value * value for value in features.values()))


def epoch_orders(n: int, epochs: int, seed: int) -> list[list[int]]:
    """Presentation order for every epoch; one seeded stream for the run."""
    rng = random.Random(seed)
    orders = []
    for _ in range(epochs):
        order = list(range(n))
        rng.shuffle(order)
        orders.append(order)
    return orders


def infer_labels(examples: Sequence[LabeledExample]) -> tuple[str, ...]:
    distinct = {ex.label for ex in examples}
    if distinct <= set(SENTIMENT_LABELS):
        return SENTIMENT_LABELS
    if distinct <= set(NATURE_LABELS):
        return NATURE_LABELS
    return tuple(sorted(distinct))


def _validate_training_set(
    examples: Sequence[LabeledExample], labels: tuple[str, ...]
) -> None:
    if not examples:
        raise InvalidTrainingSetError("empty training set")
    seen: dict[str, int] = {}
    for ex in examples:
        if ex.label not in labels:
            raise InvalidTrainingSetError(
                f"label {ex.label!r} is outside the label set {labels}"
            )
        seen[ex.label] = seen.get(ex.label, 0) + 1
    if len(seen) < 2:
        raise InvalidTrainingSetError("training set contains a single class")
    missing = [label for label in labels if label not in seen]
    if missing:
        raise InvalidTrainingSetError(f"no training examples for labels {missing}")


def svm_objective(
    weights: Mapping[str, float],
    bias: float,
    examples: Sequence[LabeledExample],
    positive_label: str,
    regularization: float,
) -> float:
    """reg/2 * ||w||^2 + mean hinge loss, the quantity SGD descends."""
    hinge = 0.0
    for ex in examples:
        y = 1.0 if ex.label == positive_label else -1.0
        hinge += max(0.0, 1.0 - y * (_dot(weights, ex.vector.features) + bias))
    penalty = 0.5 * regularization * sum(w * w for w in weights.values())
    return penalty + hinge / len(examples)


def train_svm(
    examples: Sequence[LabeledExample],
    config: TrainConfig,
    labels: tuple[str, ...] | None = None,
) -> LinearModel:
    labels = infer_labels(examples) if labels is None else tuple(labels)
    _validate_training_set(examples, labels)
    orders = epoch_orders(len(examples), config.epochs, config.shuffle_seed)
    decay = 1.0 - config.learning_rate * config.regularization
    weights: dict[str, dict[str, float]] = {}
    biases: dict[str, float] = {}
    objectives: dict[str, float] = {}
    for label in labels:
        w: dict[str, float] = {}
        b = 0.0
        ys = [1.0 if ex.label == label else -1.0 for ex in examples]
        for order in orders:
            for idx in order:
                feats = examples[idx].vector.features
                y = ys[idx]
                violates = y * (_dot(w, feats) + b) < 1.0
                if decay != 1.0:
                    for name in w:
                        w[name] *= decay
                if violates:
                    step = config.learning_rate * y
                    for name, value in feats.items():
                        w[name] = w.get(name, 0.0) + step * value
                    b += step
        weights[label] = w
        biases[label] = b
        objectives[label] = svm_objective(w, b, examples, label, config.regularization)
    return LinearModel(
        labels=labels,
        weights=weights,
        biases=biases,
        metadata={
            "algorithm": "svm",
            "train_config": asdict(config),
            "n_examples": len(examples),
            "objective": objectives,
        },
    )


def train_paum(
    examples: Sequence[LabeledExample],
    config: TrainConfig,
    labels: tuple[str, ...] | None = None,
) -> LinearModel:
    labels = infer_labels(examples) if labels is None else tuple(labels)
    _validate_training_set(examples, labels)
    orders = epoch_orders(len(examples), config.epochs, config.shuffle_seed)
    radius = max(_norm(ex.vector.features) for ex in examples)
    if radius == 0.0:
        radius = 1.0
    weights: dict[str, dict[str, float]] = {}
    biases: dict[str, float] = {}
    update_counts: dict[str, int] = {}
    update_log: dict[str, list[list[int]]] = {}
    for label in labels:
        w: dict[str, float] = {}
        w_r = 0.0  # weight on the constant radius input
        updates = 0
        log: list[list[int]] = []
        ys = [1.0 if ex.label == label else -1.0 for ex in examples]
        for epoch, order in enumerate(orders):
            for idx in order:
                feats = examples[idx].vector.features
                y = ys[idx]
                score = _dot(w, feats) + w_r * radius
                margin = config.positive_margin if y > 0 else config.negative_margin
                if y * score <= margin:
                    step = config.learning_rate * y
                    for name, value in feats.items():
                        w[name] = w.get(name, 0.0) + step * value
                    w_r += step * radius
                    updates += 1
                    if config.record_updates:
                        log.append([epoch, idx])
        weights[label] = w
        biases[label] = w_r * radius
        update_counts[label] = updates
        if config.record_updates:
            update_log[label] = log
    metadata: dict = {
        "algorithm": "paum",
        "train_config": asdict(config),
        "n_examples": len(examples),
        "radius": radius,
        "updates": update_counts,
    }
    if config.record_updates:
        metadata["update_log"] = update_log
    return LinearModel(labels=labels, weights=weights, biases=biases, metadata=metadata)


def predict(model: LinearModel, vector: FeatureVector) -> tuple[str, dict[str, float]]:
    """Highest-scoring label; ties broken by the model's fixed label order."""
    scores = model.score(vector)
    best = model.labels[0]
    for label in model.labels[1:]:
        if scores[label] > scores[best]:
            best = label
    return best, scores


def save_model(model: LinearModel) -> bytes:
    payload = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "labels": list(model.labels),
        "weights": model.weights,
        "biases": model.biases,
        "metadata": model.metadata,
    }
    return json.dumps(payload, sort_keys=True, ensure_ascii=False).encode("utf-8")


def save_model_file(model: LinearModel, path: str | Path) -> None:
    Path(path).write_bytes(save_model(model))


def load_model(data: bytes) -> LinearModel:
    try:
        payload = json.loads(data.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise ModelFormatError("model file is not UTF-8", offset=exc.start) from exc
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"model file is not JSON: {exc.msg}", offset=exc.pos) from exc
    if not isinstance(payload, dict) or payload.get("format") != MODEL_FORMAT:
        raise ModelFormatError("not a senticite linear model container")
    version = payload.get("version")
    if version != MODEL_VERSION:
        raise UnsupportedVersionError(version)
    try:
        labels = tuple(str(x) for x in payload["labels"])
        weights = {
            str(label): {str(k): float(v) for k, v in w.items()}
            for label, w in payload["weights"].items()
        }
        biases = {str(label): float(v) for label, v in payload["biases"].items()}
        metadata = payload.get("metadata", {})
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        raise ModelFormatError(f"malformed model container: {exc}") from exc
    if set(weights) != set(labels) or set(biases) != set(labels):
        raise ModelFormatError("weights/biases do not cover the label set")
    for label in labels:
        if not math.isfinite(biases[label]):
            raise ModelFormatError(f"non-finite bias for label {label!r}")
        for name, value in weights[label].items():
            if not math.isfinite(value):
                raise ModelFormatError(f"non-finite weight {name!r} for label {label!r}")
    return LinearModel(labels=labels, weights=weights, biases=biases, metadata=metadata)


def load_model_file(path: str | Path) -> LinearModel:
    return load_model(Path(path).read_bytes())
