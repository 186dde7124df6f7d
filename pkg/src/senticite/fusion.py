"""Decision fusion of the two classifiers by per-class priority scores.

The policy assigns each (classifier, label) pair a priority in [0, 1],
normally that classifier's F-score for the label on held-out data. On
disagreement the prediction whose pair has strictly higher priority wins;
ties go to the first classifier (svm).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .errors import InvalidPolicyError
from .classifiers import NATURE_LABELS, SENTIMENT_LABELS

CLASSIFIER_NAMES = ("svm", "paum")


@dataclass(frozen=True)
class FusionPolicy:
    labels: tuple[str, ...]
    priority: Mapping[tuple[str, str], float]
    classifiers: tuple[str, str] = CLASSIFIER_NAMES


def build_policy(
    scores: Mapping[tuple[str, str], float],
    labels: tuple[str, ...] | None = None,
    classifiers: tuple[str, str] = CLASSIFIER_NAMES,
) -> FusionPolicy:
    """Validate and freeze a priority table covering classifiers x labels."""
    if labels is None:
        labels = _infer_policy_labels(scores)
    expected = {(c, l) for c in classifiers for l in labels}
    given = set(scores)
    missing = expected - given
    if missing:
        raise InvalidPolicyError(f"policy is missing entries: {sorted(missing)}")
    extra = given - expected
    if extra:
        raise InvalidPolicyError(f"policy has unexpected entries: {sorted(extra)}")
    for key, value in scores.items():
        if not (isinstance(value, (int, float)) and math.isfinite(value)):
            raise InvalidPolicyError(f"non-finite priority for {key}")
        if not 0.0 <= float(value) <= 1.0:
            raise InvalidPolicyError(f"priority for {key} outside [0, 1]: {value}")
    frozen = {key: float(value) for key, value in scores.items()}
    return FusionPolicy(labels=tuple(labels), priority=frozen, classifiers=classifiers)


def _infer_policy_labels(scores: Mapping[tuple[str, str], float]) -> tuple[str, ...]:
    distinct = {label for _, label in scores}
    if distinct == set(SENTIMENT_LABELS):
        return SENTIMENT_LABELS
    if distinct == set(NATURE_LABELS):
        return NATURE_LABELS
    return tuple(sorted(distinct))


def policy_from_f1(
    svm_f1: Mapping[str, float],
    paum_f1: Mapping[str, float],
    labels: tuple[str, ...],
) -> FusionPolicy:
    scores: dict[tuple[str, str], float] = {}
    for label in labels:
        scores[("svm", label)] = float(svm_f1[label])
        scores[("paum", label)] = float(paum_f1[label])
    return build_policy(scores, labels)


def _as_label(prediction: str | tuple[str, dict]) -> str:
    return prediction if isinstance(prediction, str) else prediction[0]


def fuse(
    svm_prediction: str | tuple[str, dict],
    paum_prediction: str | tuple[str, dict],
    policy: FusionPolicy,
) -> str:
    """Fused label for one example. Accepts labels or predict() results."""
    a = _as_label(svm_prediction)
    b = _as_label(paum_prediction)
    for label in (a, b):
        if label not in policy.labels:
            raise ValueError(f"label {label!r} is outside the policy label set")
    if a == b:
        return a
    svm_name, paum_name = policy.classifiers
    if policy.priority[(paum_name, b)] > policy.priority[(svm_name, a)]:
        return b
    return a


def save_policy(policy: FusionPolicy, path: str | Path) -> None:
    lines = ["# classifier\tlabel\tpriority"]
    for classifier in policy.classifiers:
        for label in policy.labels:
            lines.append(f"{classifier}\t{label}\t{policy.priority[(classifier, label)]}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_policy(path: str | Path) -> FusionPolicy:
    scores: dict[tuple[str, str], float] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise InvalidPolicyError(
                f"{path}:{lineno}: expected 'classifier label score'"
            )
        classifier, label, raw = parts
        if classifier not in CLASSIFIER_NAMES:
            raise InvalidPolicyError(f"{path}:{lineno}: unknown classifier {classifier!r}")
        try:
            score = float(raw)
        except ValueError:
            raise InvalidPolicyError(f"{path}:{lineno}: bad score {raw!r}") from None
        key = (classifier, label)
        if key in scores:
            raise InvalidPolicyError(f"{path}:{lineno}: duplicate entry for {key}")
        scores[key] = score
    return build_policy(scores)
