"""Suffix stemmer behavior, pinned by a frozen word/stem table."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from senticite.respath import resource_path
from senticite.stemming import stem


def frozen_pairs() -> list[tuple[str, str]]:
    lines = resource_path("porter_pairs.tsv").read_text(encoding="utf-8").splitlines()
    pairs = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        word, expected = line.split("\t")
        pairs.append((word, expected))
    return pairs


PAIRS = frozen_pairs()


def test_frozen_table_is_large_enough():
    assert len(PAIRS) >= 100


@pytest.mark.parametrize("word,expected", PAIRS, ids=[w for w, _ in PAIRS])
def test_frozen_pair(word, expected):
    assert stem(word) == expected


def test_plural_strip():
    assert stem("caresses") == "caress"


def test_suffix_chain():
    assert stem("relational") == "relat"


def test_short_words_pass_through():
    assert stem("x") == "x"
    assert stem("as") == "as"
    assert stem("is") == "is"


def test_lowercases_first():
    assert stem("Caresses") == stem("caresses")


def test_empty_token_rejected():
    with pytest.raises(ValueError):
        stem("")


lowercase_words = st.text(
    alphabet=st.sampled_from("abcdefghijklmnopqrstuvwxyz"), min_size=1, max_size=20
)


@given(lowercase_words)
def test_never_returns_empty(word):
    result = stem(word)
    assert result
    assert result == result.lower()


@given(lowercase_words)
def test_deterministic(word):
    assert stem(word) == stem(word)
