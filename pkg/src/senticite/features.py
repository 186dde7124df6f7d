"""Sparse feature extraction for citing sentences.

Four feature families (token strings, part-of-speech counts, Porter stems,
lexical cluster ids) plus an optional negation-scope family. Citation
markers are anonymized to a placeholder so no feature ever embeds a key.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping

from .citations import CitationSentence
from .errors import ValidationError
from .ingest import CleanDocument, Token, TokenKind, tokenize
from .lexicon import LexicalResource, expand_surface
from .postag import PosTag, load_tag_lexicon, tag_token
from .stemming import stem

CITATION_PLACEHOLDER = "<CIT>"

NEGATION_WORDS = frozenset({"not", "no", "never", "neither", "nor", "cannot", "without"})
NEGATION_WINDOW = 3


@dataclass(frozen=True)
class FeatureConfig:
    use_token_strings: bool = True
    use_pos: bool = True
    use_stems: bool = True
    use_lexical_clusters: bool = True
    use_negation_scope: bool = False
    stopwords: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if not (
            self.use_token_strings
            or self.use_pos
            or self.use_stems
            or self.use_lexical_clusters
        ):
            raise ValidationError("at least one feature family must be enabled")


ONLY_POS = FeatureConfig(
    use_token_strings=False, use_pos=True, use_stems=False, use_lexical_clusters=False
)
COMBINATION = FeatureConfig()

PRESETS: dict[str, FeatureConfig] = {
    "only-pos": ONLY_POS,
    "combination": COMBINATION,
}


def preset(name: str) -> FeatureConfig:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValidationError(
            f"unknown feature preset {name!r}; choose from {sorted(PRESETS)}"
        ) from None


@dataclass(frozen=True)
class FeatureVector:
    features: Mapping[str, float]
    source_sentence_id: int = 0

    def __post_init__(self) -> None:
        for name, value in self.features.items():
            if not name:
                raise ValidationError("empty feature name")
            if not math.isfinite(value):
                raise ValidationError(f"non-finite weight for feature {name!r}")


def vectorize_tokens(
    tokens: tuple[Token, ...] | list[Token],
    config: FeatureConfig,
    resource: LexicalResource,
    sentence_id: int = 0,
    tag_lexicon: dict[str, PosTag] | None = None,
) -> FeatureVector:
    if tag_lexicon is None and config.use_pos:
        tag_lexicon = load_tag_lexicon()
    counts: Counter[str] = Counter()
    for token in tokens:
        if config.use_pos:
            counts[f"pos={tag_token(token, tag_lexicon or {}).value}"] += 1
        if token.kind is TokenKind.CITATION_CANDIDATE:
            # Markers contribute only the anonymous placeholder.
            if config.use_token_strings:
                counts[f"tok={CITATION_PLACEHOLDER}"] += 1
            continue
        low = token.surface.lower()
        if low in config.stopwords:
            continue
        if config.use_token_strings:
            counts[f"tok={low}"] += 1
        if token.kind is TokenKind.WORD:
            if config.use_stems:
                counts[f"stem={stem(low)}"] += 1
            if config.use_lexical_clusters:
                for cluster_id in expand_surface(low, resource):
                    counts[f"lex={cluster_id}"] += 1
    if config.use_negation_scope:
        for i, token in enumerate(tokens):
            low = token.surface.lower()
            if low in NEGATION_WORDS or low.endswith("n't"):
                for follower in tokens[i + 1 : i + 1 + NEGATION_WINDOW]:
                    if (
                        follower.kind is TokenKind.WORD
                        and follower.surface.lower() not in config.stopwords
                    ):
                        counts[f"negated={follower.surface.lower()}"] += 1
    return FeatureVector(
        features={name: float(value) for name, value in sorted(counts.items())},
        source_sentence_id=sentence_id,
    )


def vectorize(
    sentence: CitationSentence,
    config: FeatureConfig,
    resource: LexicalResource,
    tag_lexicon: dict[str, PosTag] | None = None,
) -> FeatureVector:
    return vectorize_tokens(
        sentence.tokens, config, resource, sentence.sentence_id, tag_lexicon
    )


def vectorize_text(
    text: str,
    config: FeatureConfig,
    resource: LexicalResource,
    sentence_id: int = 0,
    tag_lexicon: dict[str, PosTag] | None = None,
) -> FeatureVector:
    """Featurize a standalone sentence string (corpus records)."""
    doc = CleanDocument(doc_id="sentence", text=text)
    return vectorize_tokens(tokenize(doc), config, resource, sentence_id, tag_lexicon)
