#!/usr/bin/env python3
"""Feature ablation on the bundled mini corpus.

Trains each preset (only-pos, combination) with both classifiers on a
stratified per-class subset and scores the remainder.
"""

import argparse

from senticite.classifiers import TrainConfig
from senticite.corpus import load_corpus, stratified_split
from senticite.experiments import feature_ablation
from senticite.lexicon import LexicalResource
from senticite.respath import data_path


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--corpus", default=str(data_path("mini_sentiment.jsonl")))
    parser.add_argument("--n-per-class", type=int, default=8)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--epochs", type=int, default=20)
    args = parser.parse_args()

    corpus = load_corpus(args.corpus)
    split = stratified_split(corpus, args.n_per_class, args.seed)
    config = TrainConfig(epochs=args.epochs, shuffle_seed=args.seed)
    result = feature_ablation(
        split.train, split.test, corpus.task, LexicalResource.load(), config
    )
    print(f"corpus: {corpus.name} ({len(corpus.records)} records, "
          f"{split.n_per_class} per class for training)")
    print(result.format_table())


if __name__ == "__main__":
    main()
