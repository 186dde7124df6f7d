"""Feature extraction: families, presets, anonymization, negation scope."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from senticite.errors import ValidationError
from senticite.features import (
    CITATION_PLACEHOLDER,
    COMBINATION,
    ONLY_POS,
    FeatureConfig,
    FeatureVector,
    preset,
    vectorize_text,
)
from senticite.lexicon import LexicalResource, expand_surface, lexical_expand


class TestConfig:
    def test_presets_by_name(self):
        assert preset("only-pos") is ONLY_POS
        assert preset("combination") is COMBINATION

    def test_unknown_preset(self):
        with pytest.raises(ValidationError):
            preset("everything")

    def test_all_families_off_rejected(self):
        with pytest.raises(ValidationError):
            FeatureConfig(
                use_token_strings=False,
                use_pos=False,
                use_stems=False,
                use_lexical_clusters=False,
            )


class TestVector:
    def test_empty_feature_name_rejected(self):
        with pytest.raises(ValidationError):
            FeatureVector(features={"": 1.0})

    def test_non_finite_weight_rejected(self):
        with pytest.raises(ValidationError):
            FeatureVector(features={"tok=x": float("inf")})


class TestOnlyPos:
    def test_counts_per_tag(self, resource, tag_lexicon):
        fv = vectorize_text("We use [3].", ONLY_POS, resource, 0, tag_lexicon)
        assert fv.features == {
            "pos=pronoun": 1.0,
            "pos=verb": 1.0,
            "pos=number": 1.0,
            "pos=punctuation": 1.0,
        }

    def test_repeated_tags_accumulate(self, resource, tag_lexicon):
        fv = vectorize_text("lower lower lower", ONLY_POS, resource, 0, tag_lexicon)
        assert fv.features == {"pos=adjective": 3.0}


class TestCombination:
    def test_token_and_stem_families_present(self, resource, tag_lexicon):
        fv = vectorize_text("The datasets improved.", COMBINATION, resource, 0, tag_lexicon)
        names = set(fv.features)
        assert "tok=datasets" in names
        assert "stem=dataset" in names
        assert any(n.startswith("pos=") for n in names)
        assert "lex=cluster.data" in names

    def test_superset_of_only_pos(self, resource, tag_lexicon):
        text = "We use the best corpus from [3]."
        pos_only = vectorize_text(text, ONLY_POS, resource, 0, tag_lexicon)
        combined = vectorize_text(text, COMBINATION, resource, 0, tag_lexicon)
        assert set(pos_only.features) <= set(combined.features)
        for name, value in pos_only.features.items():
            assert combined.features[name] == value

    def test_token_counts_are_weights(self, resource, tag_lexicon):
        fv = vectorize_text("good good bad", COMBINATION, resource, 0, tag_lexicon)
        assert fv.features["tok=good"] == 2.0
        assert fv.features["tok=bad"] == 1.0

    def test_lowercases_token_strings(self, resource, tag_lexicon):
        fv = vectorize_text("Excellent", COMBINATION, resource, 0, tag_lexicon)
        assert "tok=excellent" in fv.features


class TestMarkerAnonymization:
    def test_marker_becomes_placeholder(self, resource, tag_lexicon):
        fv = vectorize_text("We follow [3].", COMBINATION, resource, 0, tag_lexicon)
        assert f"tok={CITATION_PLACEHOLDER}" in fv.features
        assert not any("[3]" in name or "Varga" in name for name in fv.features)

    def test_author_year_key_never_leaks(self, resource, tag_lexicon):
        fv = vectorize_text(
            "Shown by (Varga and Molnar, 2003).", COMBINATION, resource, 0, tag_lexicon
        )
        assert f"tok={CITATION_PLACEHOLDER}" in fv.features
        for name in fv.features:
            assert "varga" not in name.lower() or name == "pos=number"

    def test_adjacent_markers_count_twice(self, resource, tag_lexicon):
        fv = vectorize_text("Both [3], [4] agree.", COMBINATION, resource, 0, tag_lexicon)
        assert fv.features[f"tok={CITATION_PLACEHOLDER}"] == 2.0


class TestStopwords:
    def test_stopword_tokens_dropped(self, resource, tag_lexicon):
        config = FeatureConfig(use_pos=False, stopwords=frozenset({"the"}))
        fv = vectorize_text("the good result", config, resource, 0, tag_lexicon)
        assert "tok=the" not in fv.features
        assert "tok=good" in fv.features

    def test_marker_survives_stopword_filter(self, resource, tag_lexicon):
        config = FeatureConfig(use_pos=False, stopwords=frozenset({"the"}))
        fv = vectorize_text("the [4]", config, resource, 0, tag_lexicon)
        assert f"tok={CITATION_PLACEHOLDER}" in fv.features


class TestNegationScope:
    def config(self):
        return FeatureConfig(use_pos=False, use_negation_scope=True)

    def test_following_words_marked(self, resource, tag_lexicon):
        fv = vectorize_text("not useful at all", self.config(), resource, 0, tag_lexicon)
        assert fv.features["negated=useful"] == 1.0
        assert fv.features["negated=at"] == 1.0
        assert fv.features["negated=all"] == 1.0

    def test_window_is_bounded(self, resource, tag_lexicon):
        fv = vectorize_text(
            "not one two three four", self.config(), resource, 0, tag_lexicon
        )
        assert "negated=three" in fv.features
        assert "negated=four" not in fv.features

    def test_contraction_triggers_scope(self, resource, tag_lexicon):
        fv = vectorize_text("doesn't converge", self.config(), resource, 0, tag_lexicon)
        assert "negated=converge" in fv.features

    def test_disabled_by_default(self, resource, tag_lexicon):
        fv = vectorize_text("not useful", COMBINATION, resource, 0, tag_lexicon)
        assert not any(name.startswith("negated=") for name in fv.features)


class TestLexicalExpansion:
    def test_synonym_then_hypernyms(self, resource):
        assert lexical_expand("dataset", resource) == [
            "cluster.data",
            "cluster.resource",
            "cluster.entity",
        ]

    def test_unknown_lemma(self, resource):
        assert lexical_expand("qyzzlewick", resource) == []

    def test_surface_falls_back_to_stem(self, resource):
        assert expand_surface("datasets", resource) == expand_surface("dataset", resource)
        assert expand_surface("datasets", resource) != []

    def test_empty_resource(self):
        assert lexical_expand("dataset", LexicalResource.empty()) == []


word_lists = st.lists(
    st.text(alphabet=st.sampled_from("abcdefghij"), min_size=1, max_size=8),
    min_size=1,
    max_size=12,
)


class TestProperties:
    @given(words=word_lists)
    def test_only_pos_names_subset_of_combination(self, resource, tag_lexicon, words):
        text = " ".join(words)
        pos_only = vectorize_text(text, ONLY_POS, resource, 0, tag_lexicon)
        combined = vectorize_text(text, COMBINATION, resource, 0, tag_lexicon)
        assert set(pos_only.features) <= set(combined.features)

    @given(words=word_lists, key=st.integers(min_value=1, max_value=30))
    def test_no_feature_embeds_a_citation_key(self, resource, tag_lexicon, words, key):
        text = " ".join(words) + f" [{key}]"
        fv = vectorize_text(text, COMBINATION, resource, 0, tag_lexicon)
        assert not any(f"[{key}]" in name for name in fv.features)
        assert f"tok={CITATION_PLACEHOLDER}" in fv.features

    @given(words=word_lists)
    def test_deterministic(self, resource, tag_lexicon, words):
        text = " ".join(words)
        first = vectorize_text(text, COMBINATION, resource, 0, tag_lexicon)
        second = vectorize_text(text, COMBINATION, resource, 0, tag_lexicon)
        assert first == second

    @given(words=word_lists)
    def test_weights_are_positive_counts(self, resource, tag_lexicon, words):
        fv = vectorize_text(" ".join(words), COMBINATION, resource, 0, tag_lexicon)
        for value in fv.features.values():
            assert value >= 1.0
            assert value == int(value)
