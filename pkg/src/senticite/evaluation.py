"""Evaluation metrics, repeated cross-validation, and section statistics.

Conventions: degenerate precision/recall/F default to 0; micro-F1 equals
accuracy because every example carries exactly one gold and one predicted
label; macro-F1 averages over the full label set, zero-support classes
included.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .classifiers import Task
from .corpus import AnnotatedCorpus, CorpusRecord, canonical_key
from .errors import ClassShortageError, CorpusFormatError, ValidationError
from .ingest import Section


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class EvalReport:
    labels: tuple[str, ...]
    confusion: dict[str, dict[str, int]]  # gold label -> predicted label -> count
    support: dict[str, int]
    precision: dict[str, float]
    recall: dict[str, float]
    f1: dict[str, float]
    micro_f1: float
    macro_f1: float
    total: int
    correct: int

    def format_table(self) -> str:
        width = max(len("label"), *(len(label) for label in self.labels))
        lines = [f"{'label':<{width}}  precision  recall  f1      support"]
        for label in self.labels:
            lines.append(
                f"{label:<{width}}  {self.precision[label]:>9.4f}  {self.recall[label]:>6.4f}"
                f"  {self.f1[label]:.4f}  {self.support[label]:>7d}"
            )
        lines.append(f"micro-F1 (accuracy): {self.micro_f1:.4f}")
        lines.append(f"macro-F1: {self.macro_f1:.4f}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "confusion": self.confusion,
            "support": self.support,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "micro_f1": self.micro_f1,
            "macro_f1": self.macro_f1,
            "total": self.total,
            "correct": self.correct,
        }


def _infer_eval_labels(gold: Sequence[str], predictions: Sequence[str]) -> tuple[str, ...]:
    distinct = set(gold) | set(predictions)
    for task in Task:
        if distinct <= set(task.labels):
            return task.labels
    return tuple(sorted(distinct))


def evaluate(
    predictions: Sequence[str],
    gold: Sequence[str],
    labels: tuple[str, ...] | None = None,
) -> EvalReport:
    if len(predictions) != len(gold):
        raise ValidationError(
            f"{len(predictions)} predictions for {len(gold)} gold labels"
        )
    if not gold:
        raise ValidationError("cannot evaluate an empty test set")
    labels = _infer_eval_labels(gold, predictions) if labels is None else tuple(labels)
    outside = (set(gold) | set(predictions)) - set(labels)
    if outside:
        raise ValidationError(f"labels outside the label set: {sorted(outside)}")
    confusion = {g: {p: 0 for p in labels} for g in labels}
    for pred, actual in zip(predictions, gold):
        confusion[actual][pred] += 1
    support = {label: sum(confusion[label].values()) for label in labels}
    precision: dict[str, float] = {}
    recall: dict[str, float] = {}
    f1: dict[str, float] = {}
    for label in labels:
        tp = confusion[label][label]
        predicted = sum(confusion[g][label] for g in labels)
        precision[label] = tp / predicted if predicted else 0.0
        recall[label] = tp / support[label] if support[label] else 0.0
        f1[label] = _f1(precision[label], recall[label])
    correct = sum(confusion[label][label] for label in labels)
    total = len(gold)
    # Single-label task: micro-averaged F1 collapses to plain accuracy.
    micro = correct / total
    macro = sum(f1.values()) / len(labels)
    return EvalReport(
        labels=labels, confusion=confusion, support=support,
        precision=precision, recall=recall, f1=f1,
        micro_f1=micro, macro_f1=macro, total=total, correct=correct,
    )


def comparison_table(reports: Mapping[str, EvalReport]) -> str:
    """Side-by-side per-class F1 plus overall scores, one row per system."""
    if not reports:
        raise ValidationError("no reports to compare")
    labels = next(iter(reports.values())).labels
    name_width = max(len("system"), *(len(name) for name in reports))
    header = f"{'system':<{name_width}}"
    for label in labels:
        header += f"  {label:>9}"
    header += f"  {'micro':>7}  {'macro':>7}"
    lines = [header]
    for name, report in reports.items():
        if report.labels != labels:
            raise ValidationError("reports cover different label sets")
        row = f"{name:<{name_width}}"
        for label in labels:
            row += f"  {report.f1[label]:>9.4f}"
        row += f"  {report.micro_f1:>7.4f}  {report.macro_f1:>7.4f}"
        lines.append(row)
    return "\n".join(lines)


@dataclass(frozen=True)
class CountsSummary:
    """What a per-class correct/support table determines: micro-F1 (accuracy)
    and per-class recall. Per-class precision needs the full confusion matrix,
    so comparisons against separately printed per-class F values may not be
    reproducible from counts alone; `derivable_micro_only` flags that."""

    micro_f1: float
    per_class_recall: dict[str, float]
    total_correct: int
    total: int
    derivable_micro_only: bool
    note: str

    def format_lines(self) -> str:
        lines = [f"correct {self.total_correct} / {self.total} -> micro-F1 {self.micro_f1:.4f}"]
        for label, value in self.per_class_recall.items():
            lines.append(f"recall[{label}] = {value:.4f}")
        lines.append(f"note: {self.note}")
        return "\n".join(lines)


def counts_summary(
    correct: Mapping[str, int], support: Mapping[str, int]
) -> CountsSummary:
    if set(correct) - set(support):
        raise ValidationError("correct counts for labels without support")
    total = sum(support.values())
    if total <= 0:
        raise ValidationError("empty support")
    for label, value in correct.items():
        if not 0 <= value <= support[label]:
            raise ValidationError(
                f"correct[{label}]={value} outside [0, {support[label]}]"
            )
    total_correct = sum(correct.values())
    recall = {
        label: (correct.get(label, 0) / count if count else 0.0)
        for label, count in support.items()
    }
    return CountsSummary(
        micro_f1=total_correct / total,
        per_class_recall=recall,
        total_correct=total_correct,
        total=total,
        derivable_micro_only=True,
        note=(
            "per-class correct/support counts determine micro-F1 (=accuracy) and "
            "per-class recall only; per-class precision and F need the full "
            "confusion matrix"
        ),
    )


@dataclass(frozen=True)
class CrossValResult:
    per_run: tuple[float, ...]
    mean: float

    def format_row(self, name: str = "") -> str:
        cells = [f"F{i + 1} {score:.4f}" for i, score in enumerate(self.per_run)]
        prefix = f"{name}: " if name else ""
        return f"{prefix}{'  '.join(cells)}  Overall {self.mean:.4f}"


FitPredict = Callable[
    [Sequence[CorpusRecord], Sequence[CorpusRecord]], Sequence[str]
]


def cross_validate(
    records: Sequence[CorpusRecord],
    task: Task,
    runs: int,
    seed: int,
    fit_predict: FitPredict,
) -> CrossValResult:
    """Repeated stratified 50/50 splits; micro-F1 on the held-out half.

    One seeded generator drives all runs, and records are canonically sorted
    first, so results are invariant to input order.
    """
    if runs < 1:
        raise ValidationError("runs must be >= 1")
    ordered = sorted(records, key=canonical_key)
    groups = {
        label: [r for r in ordered if r.label == label] for label in task.labels
    }
    for label, group in groups.items():
        if len(group) < 2:
            raise ClassShortageError(label, len(group), 2)
    rng = random.Random(seed)
    scores: list[float] = []
    for _ in range(runs):
        train: list[CorpusRecord] = []
        test: list[CorpusRecord] = []
        for label in task.labels:
            shuffled = list(groups[label])
            rng.shuffle(shuffled)
            half = len(shuffled) // 2
            train.extend(shuffled[:half])
            test.extend(shuffled[half:])
        train.sort(key=canonical_key)
        test.sort(key=canonical_key)
        predictions = list(fit_predict(train, test))
        if len(predictions) != len(test):
            raise ValidationError("fit_predict returned a wrong-length prediction list")
        report = evaluate(predictions, [r.label for r in test], task.labels)
        scores.append(report.micro_f1)
    return CrossValResult(per_run=tuple(scores), mean=sum(scores) / runs)


SECTION_BUCKETS = tuple(s.value for s in Section if s is not Section.OTHER)


def section_distribution(corpus: AnnotatedCorpus) -> dict[str, dict[str, float]]:
    """Per label: the share of its citing sentences in each named section
    bucket. Records labeled 'other' are excluded; a label with no records in
    named sections gets a zero row."""
    valid = frozenset(s.value for s in Section)
    rows: dict[str, dict[str, float]] = {}
    counts = {
        label: {bucket: 0 for bucket in SECTION_BUCKETS}
        for label in corpus.task.labels
    }
    for record in corpus.records:
        if record.section not in valid:
            raise CorpusFormatError(
                f"record carries invalid section {record.section!r}"
            )
        if record.section == Section.OTHER.value:
            continue
        counts[record.label][record.section] += 1
    for label in corpus.task.labels:
        total = sum(counts[label].values())
        if total == 0:
            rows[label] = {bucket: 0.0 for bucket in SECTION_BUCKETS}
        else:
            rows[label] = {
                bucket: counts[label][bucket] / total for bucket in SECTION_BUCKETS
            }
    return rows


def format_distribution(rows: Mapping[str, Mapping[str, float]]) -> str:
    labels = list(rows)
    width = max(len("label"), *(len(label) for label in labels))
    header = f"{'label':<{width}}"
    for bucket in SECTION_BUCKETS:
        header += f"  {bucket:>12}"
    lines = [header]
    for label in labels:
        row = f"{label:<{width}}"
        for bucket in SECTION_BUCKETS:
            row += f"  {rows[label][bucket]:>12.4f}"
        lines.append(row)
    return "\n".join(lines)
