#!/usr/bin/env python3
"""Training- and test-size sweeps on the bundled mini corpus."""

import argparse

from senticite.classifiers import TrainConfig
from senticite.corpus import load_corpus
from senticite.experiments import test_size_sweep, train_size_sweep
from senticite.lexicon import LexicalResource
from senticite.respath import data_path


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--corpus", default=str(data_path("mini_sentiment.jsonl")))
    parser.add_argument("--train-sizes", default="10,20,30,42")
    parser.add_argument("--test-sizes", default="1,2,4,6")
    parser.add_argument("--n-per-class", type=int, default=6,
                        help="per-class training size for the test-size sweep")
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    corpus = load_corpus(args.corpus)
    resource = LexicalResource.load()
    config = TrainConfig(shuffle_seed=args.seed)

    train_sizes = [int(x) for x in args.train_sizes.split(",")]
    print(train_size_sweep(corpus, train_sizes, args.seed, resource, config).format_table())
    print()
    test_sizes = [int(x) for x in args.test_sizes.split(",")]
    print(test_size_sweep(
        corpus, test_sizes, args.n_per_class, args.seed, resource, config
    ).format_table())


if __name__ == "__main__":
    main()
