"""Command-line interface: train, evaluate, crossval, analyze, sweep.

Conventions: human-readable logs go to stderr, results to stdout (--json
switches stdout to machine-readable JSON). Exit codes: 0 success, 1 runtime
failure, 2 usage or validation error. Option precedence: command-line flag,
then --config file entry, then built-in default.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .classifiers import (
    LinearModel,
    Task,
    TrainConfig,
    load_model_file,
    predict,
    save_model_file,
    task_from_string,
)
from .corpus import AnnotatedCorpus, featurize_records, load_corpus, stratified_split
from .errors import SentiCiteError, TaskMismatchError, ValidationError
from .evaluation import comparison_table, cross_validate, evaluate
from .experiments import make_fit_predict, test_size_sweep, train_size_sweep, train_algorithm
from .features import preset
from .fusion import fuse, load_policy, policy_from_f1, save_policy
from .ingest import RawDocument, load_heading_lexicon
from .lexicon import LexicalResource
from .postag import load_tag_lexicon
from .report import (
    AnalysisModels,
    analysis_to_json,
    analyze_document,
    model_feature_config,
    render_html,
)
from .respath import ENV_VAR, data_path

log = logging.getLogger("senticite")

_ALGORITHM_CHOICES = ("svm", "paum", "both")


def _load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ValidationError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config file {path}: invalid JSON: {exc.msg}") from None
    if not isinstance(payload, dict):
        raise ValidationError(f"config file {path} must hold a JSON object")
    return payload


def _setting(args: argparse.Namespace, config: dict, name: str, default):
    value = getattr(args, name, None)
    if value is not None:
        return value
    if name in config:
        return config[name]
    return default


def _parse_margins(raw) -> tuple[float, float]:
    if isinstance(raw, (list, tuple)) and len(raw) == 2:
        parts = list(raw)
    elif isinstance(raw, str):
        parts = raw.split(",")
    else:
        raise ValidationError("margins must be 'positive,negative'")
    if len(parts) != 2:
        raise ValidationError("margins must be 'positive,negative'")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise ValidationError(f"margins {raw!r} are not numbers") from None


def _train_config(args: argparse.Namespace, config: dict) -> TrainConfig:
    positive, negative = _parse_margins(_setting(args, config, "margins", "1.0,0.0"))
    return TrainConfig(
        epochs=int(_setting(args, config, "epochs", 20)),
        learning_rate=float(_setting(args, config, "lr", 0.1)),
        regularization=float(_setting(args, config, "reg", 1e-3)),
        positive_margin=positive,
        negative_margin=negative,
        shuffle_seed=int(_setting(args, config, "seed", 42)),
    )


def _apply_resources(args: argparse.Namespace, config: dict) -> None:
    """--resources DIR acts as an invocation-scoped SENTICITE_RESOURCES:
    files present in DIR override the bundled ones, the rest fall back."""
    directory = _setting(args, config, "resources", None)
    if directory is not None:
        if not Path(directory).is_dir():
            raise ValidationError(f"resource directory not found: {directory}")
        os.environ[ENV_VAR] = str(directory)


def _requested_task(args: argparse.Namespace, config: dict) -> Task | None:
    name = _setting(args, config, "task", None)
    return task_from_string(name) if name is not None else None


def _algorithms(args: argparse.Namespace, config: dict, default: str) -> tuple[str, ...]:
    choice = _setting(args, config, "algorithm", default)
    if choice not in _ALGORITHM_CHOICES:
        raise ValidationError(
            f"unknown algorithm {choice!r}; choose from {list(_ALGORITHM_CHOICES)}"
        )
    return ("svm", "paum") if choice == "both" else (choice,)


def _check_model_task(model: LinearModel, corpus: AnnotatedCorpus, origin: str) -> None:
    if set(model.labels) != set(corpus.task.labels):
        raise TaskMismatchError(
            f"model {origin} covers labels {sorted(model.labels)}, "
            f"but corpus {corpus.name} is a {corpus.task.value} task"
        )


def cmd_train(args: argparse.Namespace) -> int:
    config = _load_config_file(args.config)
    _apply_resources(args, config)
    corpus = load_corpus(args.corpus, _requested_task(args, config))
    train_config = _train_config(args, config)
    feature_name = _setting(args, config, "features", "combination")
    feature_config = preset(feature_name)
    n_per_class = _setting(args, config, "n_per_class", None)
    if n_per_class is not None:
        split = stratified_split(corpus, int(n_per_class), train_config.shuffle_seed)
        records = split.train
        log.info(
            "stratified training subset: %d per class, %d records",
            split.n_per_class, len(records),
        )
    else:
        records = corpus.records
    counts: dict[str, int] = {label: 0 for label in corpus.task.labels}
    for record in records:
        counts[record.label] += 1
    resource = LexicalResource.load()
    tag_lexicon = load_tag_lexicon()
    examples = featurize_records(records, feature_config, resource, tag_lexicon)
    out_dir = Path(_setting(args, config, "out", "."))
    out_dir.mkdir(parents=True, exist_ok=True)
    summary: dict = {"task": corpus.task.value, "train_counts": counts, "models": {}}
    for algorithm in _algorithms(args, config, "both"):
        model = train_algorithm(algorithm, examples, train_config, corpus.task.labels)
        model.metadata["feature_preset"] = feature_name
        path = out_dir / f"{corpus.task.value}-{algorithm}.model.json"
        save_model_file(model, path)
        entry: dict = {"path": str(path)}
        if algorithm == "svm":
            entry["objective"] = model.metadata["objective"]
        else:
            entry["updates"] = model.metadata["updates"]
        summary["models"][algorithm] = entry
        log.info("wrote %s", path)
    if args.json:
        print(json.dumps(summary, sort_keys=True))
    else:
        counts_text = ", ".join(f"{label} {counts[label]}" for label in corpus.task.labels)
        print(f"trained on {len(records)} records ({counts_text})")
        for algorithm, entry in summary["models"].items():
            if "objective" in entry:
                detail = ", ".join(
                    f"{label} {value:.6f}" for label, value in entry["objective"].items()
                )
                print(f"{algorithm}: {entry['path']} (final objective: {detail})")
            else:
                detail = ", ".join(
                    f"{label} {value}" for label, value in entry["updates"].items()
                )
                print(f"{algorithm}: {entry['path']} (updates: {detail})")
    return 0


def _model_row_name(model: LinearModel, index: int, taken: set[str]) -> str:
    base = model.metadata.get("algorithm", f"model{index + 1}")
    name = base
    suffix = 2
    while name in taken:
        name = f"{base}#{suffix}"
        suffix += 1
    taken.add(name)
    return name


def cmd_evaluate(args: argparse.Namespace) -> int:
    config = _load_config_file(args.config)
    _apply_resources(args, config)
    corpus = load_corpus(args.corpus, _requested_task(args, config))
    if not args.model:
        raise ValidationError("evaluate needs at least one --model")
    resource = LexicalResource.load()
    tag_lexicon = load_tag_lexicon()
    gold = [record.label for record in corpus.records]
    reports: dict = {}
    predictions: dict[str, list[str]] = {}
    by_algorithm: dict[str, str] = {}
    taken: set[str] = set()
    for index, path in enumerate(args.model):
        model = load_model_file(path)
        _check_model_task(model, corpus, str(path))
        name = _model_row_name(model, index, taken)
        examples = featurize_records(
            corpus.records, model_feature_config(model), resource, tag_lexicon
        )
        predictions[name] = [predict(model, ex.vector)[0] for ex in examples]
        reports[name] = evaluate(predictions[name], gold, corpus.task.labels)
        by_algorithm.setdefault(model.metadata.get("algorithm", ""), name)

    svm_name = by_algorithm.get("svm")
    paum_name = by_algorithm.get("paum")
    if svm_name and paum_name:
        if args.policy is not None:
            policy = load_policy(args.policy)
        else:
            policy = load_policy(data_path(f"default_{corpus.task.value}_policy.tsv"))
            log.info("no --policy given; using the bundled default %s policy",
                     corpus.task.value)
        if set(policy.labels) != set(corpus.task.labels):
            raise ValidationError(
                f"policy covers labels {sorted(policy.labels)}, "
                f"corpus task needs {sorted(corpus.task.labels)}"
            )
        fused = [
            fuse(a, b, policy)
            for a, b in zip(predictions[svm_name], predictions[paum_name])
        ]
        reports["fusion"] = evaluate(fused, gold, corpus.task.labels)
    elif args.policy is not None:
        log.warning("--policy ignored: fusion needs one svm and one paum model")

    if args.emit_policy is not None:
        if not (svm_name and paum_name):
            raise ValidationError("--emit-policy needs one svm and one paum model")
        emitted = policy_from_f1(
            reports[svm_name].f1, reports[paum_name].f1, corpus.task.labels
        )
        save_policy(emitted, args.emit_policy)
        log.info("wrote fusion policy %s", args.emit_policy)

    if args.json:
        print(json.dumps(
            {name: report.to_dict() for name, report in reports.items()},
            sort_keys=True,
        ))
    else:
        for name, report in reports.items():
            print(f"== {name} ==")
            print(report.format_table())
        if len(reports) > 1:
            print()
            print(comparison_table(reports))
    return 0


def cmd_crossval(args: argparse.Namespace) -> int:
    config = _load_config_file(args.config)
    _apply_resources(args, config)
    corpus = load_corpus(args.corpus, _requested_task(args, config))
    train_config = _train_config(args, config)
    seed = train_config.shuffle_seed
    runs = int(_setting(args, config, "runs", 10))
    feature_config = preset(_setting(args, config, "features", "combination"))
    (algorithm,) = _algorithms(args, config, "svm")

    records = corpus.records
    counts = corpus.class_counts()
    if len(set(counts.values())) > 1:
        floor = min(counts.values())
        log.warning(
            "corpus is not balanced (%s); subsampling every class to %d records",
            ", ".join(f"{label} {count}" for label, count in counts.items()),
            floor,
        )
        records = stratified_split(corpus, floor, seed).train

    resource = LexicalResource.load()
    tag_lexicon = load_tag_lexicon()
    fit_predict = make_fit_predict(
        algorithm, feature_config, resource, train_config, corpus.task, tag_lexicon
    )
    result = cross_validate(records, corpus.task, runs, seed, fit_predict)
    if args.json:
        print(json.dumps(
            {"algorithm": algorithm, "per_run": list(result.per_run), "mean": result.mean},
            sort_keys=True,
        ))
    else:
        print(result.format_row(algorithm))
    return 0


def _analyze_one(
    txt_path: str,
    svm_path: str,
    paum_path: str,
    nature_path: str,
    policy_path: str,
    heading_lexicon_path: str | None,
    out_dir: str | None,
) -> dict:
    """Worker for one document; module-level so process pools can pickle it."""
    raw = RawDocument.read(txt_path)
    models = AnalysisModels(
        sentiment_svm=load_model_file(svm_path),
        sentiment_paum=load_model_file(paum_path),
        nature=load_model_file(nature_path),
        policy=load_policy(policy_path),
        resource=LexicalResource.load(),
        tag_lexicon=load_tag_lexicon(),
        heading_lexicon=(
            load_heading_lexicon(heading_lexicon_path)
            if heading_lexicon_path is not None
            else None
        ),
    )
    analysis = analyze_document(raw, models)
    target = Path(out_dir) if out_dir is not None else Path(txt_path).parent
    stem = Path(txt_path).stem
    html_path = target / f"{stem}.report.html"
    json_path = target / f"{stem}.analysis.json"
    html_path.write_text(render_html(analysis), encoding="utf-8")
    json_path.write_text(analysis_to_json(analysis) + "\n", encoding="utf-8")
    return {
        "doc_id": analysis.doc_id,
        "html": str(html_path),
        "json": str(json_path),
        "n_references": len(analysis.references),
        "n_citation_sentences": analysis.n_citation_sentences,
        "n_diagnostics": len(analysis.diagnostics),
        "empty": not raw.text.strip(),
    }


def cmd_analyze(args: argparse.Namespace) -> int:
    config = _load_config_file(args.config)
    _apply_resources(args, config)
    input_path = Path(args.input)
    if input_path.is_dir():
        files = sorted(str(p) for p in input_path.glob("*.txt"))
        if not files:
            raise ValidationError(f"no .txt documents under {input_path}")
    elif input_path.exists():
        files = [str(input_path)]
    else:
        raise ValidationError(f"input not found: {input_path}")

    models_dir = Path(_setting(args, config, "models", "."))
    svm_path = Path(_setting(args, config, "svm_model", models_dir / "sentiment-svm.model.json"))
    paum_path = Path(_setting(args, config, "paum_model", models_dir / "sentiment-paum.model.json"))
    nature_path = Path(_setting(args, config, "nature_model", models_dir / "nature-paum.model.json"))
    for path in (svm_path, paum_path, nature_path):
        if not path.exists():
            raise ValidationError(f"model file not found: {path}")
    policy_path = _setting(args, config, "policy", None)
    if policy_path is None:
        policy_path = data_path("default_sentiment_policy.tsv")
        log.info("no --policy given; using the bundled default sentiment policy")
    heading_path = _setting(args, config, "heading_lexicon", None)
    out_dir = _setting(args, config, "out", None)
    if out_dir is not None:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
    jobs = int(_setting(args, config, "jobs", 1))
    if jobs < 1:
        raise ValidationError("--jobs must be >= 1")

    worker_args = [
        (name, str(svm_path), str(paum_path), str(nature_path), str(policy_path),
         heading_path, out_dir)
        for name in files
    ]
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            summaries = list(pool.map(_analyze_one, *zip(*worker_args)))
    else:
        summaries = [_analyze_one(*call) for call in worker_args]
    for summary in summaries:
        if summary["empty"]:
            log.warning("%s: document is empty; report rendered with no content",
                        summary["doc_id"])
    if args.json:
        print(json.dumps(summaries, sort_keys=True))
    else:
        for summary in summaries:
            print(
                f"{summary['doc_id']}: wrote {summary['html']} and {summary['json']} "
                f"({summary['n_references']} references, "
                f"{summary['n_citation_sentences']} citing sentences)"
            )
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    config = _load_config_file(args.config)
    _apply_resources(args, config)
    corpus = load_corpus(args.corpus, _requested_task(args, config))
    train_config = _train_config(args, config)
    feature_config = preset(_setting(args, config, "features", "combination"))
    axis = _setting(args, config, "axis", "train")
    raw_sizes = _setting(args, config, "sizes", None)
    if raw_sizes is None:
        raise ValidationError("--sizes is required, e.g. --sizes 10,20,40")
    if isinstance(raw_sizes, str):
        parts = [p for p in raw_sizes.split(",") if p.strip()]
    elif isinstance(raw_sizes, list):
        parts = raw_sizes
    else:
        raise ValidationError("sizes must be a comma-separated list of integers")
    try:
        sizes = [int(p) for p in parts]
    except (TypeError, ValueError):
        raise ValidationError(f"sizes {raw_sizes!r} are not integers") from None
    resource = LexicalResource.load()
    if axis == "train":
        result = train_size_sweep(
            corpus, sizes, train_config.shuffle_seed, resource, train_config, feature_config
        )
    elif axis == "test":
        n_per_class = _setting(args, config, "n_per_class", None)
        if n_per_class is None:
            raise ValidationError("--n-per-class is required for the test-size sweep")
        result = test_size_sweep(
            corpus, sizes, int(n_per_class), train_config.shuffle_seed,
            resource, train_config, feature_config,
        )
    else:
        raise ValidationError(f"unknown sweep axis {axis!r}; choose train or test")
    if args.json:
        print(json.dumps(result.to_dict(), sort_keys=True))
    else:
        print(result.format_table())
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON file supplying default flag values")
    parser.add_argument("--resources",
                        help="directory whose files override bundled resources")
    parser.add_argument("--json", action="store_true",
                        help="write machine-readable JSON to stdout")


def _add_training_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--task", choices=[t.value for t in Task],
                        help="expected corpus task (validated)")
    parser.add_argument("--features", choices=("only-pos", "combination"),
                        help="feature preset (default combination)")
    parser.add_argument("--seed", type=int, help="seed for all randomness (default 42)")
    parser.add_argument("--epochs", type=int, help="training epochs (default 20)")
    parser.add_argument("--lr", type=float, help="learning rate (default 0.1)")
    parser.add_argument("--reg", type=float,
                        help="SVM regularization strength (default 1e-3)")
    parser.add_argument("--margins",
                        help="perceptron margins as 'positive,negative' (default 1.0,0.0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="senticite",
        description="Citation sentiment and nature analysis for scientific text.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="train classifiers on a JSONL corpus")
    p_train.add_argument("corpus", help="JSONL corpus path")
    p_train.add_argument("--algorithm", choices=_ALGORITHM_CHOICES,
                         help="which classifier(s) to train (default both)")
    p_train.add_argument("--n-per-class", dest="n_per_class", type=int,
                         help="stratified per-class training size (default: all records)")
    p_train.add_argument("--out", help="directory for model files (default .)")
    _add_training_flags(p_train)
    _add_common(p_train)
    p_train.set_defaults(func=cmd_train)

    p_eval = sub.add_parser("evaluate", help="score trained models on a corpus")
    p_eval.add_argument("corpus", help="JSONL corpus path (used as the test set)")
    p_eval.add_argument("--model", action="append", default=None,
                        help="model file; repeat for several models")
    p_eval.add_argument("--policy",
                        help="fusion policy file (default: bundled policy when "
                             "both an svm and a paum model are given)")
    p_eval.add_argument("--emit-policy", dest="emit_policy",
                        help="write a fusion policy built from this evaluation's "
                             "per-class F1 scores")
    p_eval.add_argument("--task", choices=[t.value for t in Task],
                        help="expected corpus task (validated)")
    _add_common(p_eval)
    p_eval.set_defaults(func=cmd_evaluate)

    p_cv = sub.add_parser("crossval", help="repeated 50/50 cross-validation")
    p_cv.add_argument("corpus", help="JSONL corpus path")
    p_cv.add_argument("--runs", type=int, help="number of runs (default 10)")
    p_cv.add_argument("--algorithm", choices=("svm", "paum"),
                      help="classifier to cross-validate (default svm)")
    _add_training_flags(p_cv)
    _add_common(p_cv)
    p_cv.set_defaults(func=cmd_crossval)

    p_an = sub.add_parser("analyze", help="analyze a .txt document or a directory")
    p_an.add_argument("input", help="document file, or directory of .txt files")
    p_an.add_argument("--models",
                      help="directory holding sentiment-svm/sentiment-paum/"
                           "nature-paum model files (default .)")
    p_an.add_argument("--svm-model", dest="svm_model", help="sentiment svm model file")
    p_an.add_argument("--paum-model", dest="paum_model", help="sentiment paum model file")
    p_an.add_argument("--nature-model", dest="nature_model", help="nature model file")
    p_an.add_argument("--policy",
                      help="sentiment fusion policy file (default: bundled)")
    p_an.add_argument("--heading-lexicon", dest="heading_lexicon",
                      help="heading->section lexicon override file")
    p_an.add_argument("--out", help="output directory (default: next to each input)")
    p_an.add_argument("--jobs", type=int, help="parallel workers for directories (default 1)")
    _add_common(p_an)
    p_an.set_defaults(func=cmd_analyze)

    p_sw = sub.add_parser("sweep", help="training- or test-size sweep")
    p_sw.add_argument("corpus", help="JSONL corpus path")
    p_sw.add_argument("--axis", choices=("train", "test"),
                      help="which corpus size to vary (default train)")
    p_sw.add_argument("--sizes", help="comma-separated sizes, e.g. 10,20,40")
    p_sw.add_argument("--n-per-class", dest="n_per_class", type=int,
                      help="per-class training size for the test-axis sweep")
    _add_training_flags(p_sw)
    _add_common(p_sw)
    p_sw.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s"
    )
    try:
        return args.func(args)
    except ValidationError as exc:
        log.error("%s", exc)
        return 2
    except (SentiCiteError, OSError, ValueError) as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
