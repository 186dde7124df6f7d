#!/usr/bin/env python3
"""Train on the bundled mini corpora and render the bundled sample document.

Produces <out>/sample_document.report.html and .analysis.json plus the three
model files, exercising the whole pipeline in one go.
"""

import argparse
from pathlib import Path

from senticite.cli import main as cli_main
from senticite.respath import data_path


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="artifacts")
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    seed = str(args.seed)
    steps = [
        ["train", str(data_path("mini_sentiment.jsonl")),
         "--out", str(out), "--seed", seed],
        ["train", str(data_path("mini_nature.jsonl")),
         "--algorithm", "paum", "--out", str(out), "--seed", seed],
        ["analyze", str(data_path("sample_document.txt")),
         "--models", str(out), "--out", str(out)],
    ]
    for argv in steps:
        rc = cli_main(argv)
        if rc != 0:
            raise SystemExit(rc)
    print(f"report written under {out}/")


if __name__ == "__main__":
    main()
