"""Rule-based part-of-speech tagging over a bundled word -> tag lexicon.

Lookup order: literal surface, inflection-stripped re-lookup, suffix and
shape heuristics, then the catch-all tag. Deterministic by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from pathlib import Path

from .errors import ValidationError
from .ingest import Token, TokenKind
from .respath import resource_path

TAG_LEXICON_FILE = "tag_lexicon.tsv"


class PosTag(str, Enum):
    NOUN = "noun"
    VERB = "verb"
    ADJECTIVE = "adjective"
    ADVERB = "adverb"
    DETERMINER = "determiner"
    PREPOSITION = "preposition"
    PRONOUN = "pronoun"
    CONJUNCTION = "conjunction"
    NUMBER = "number"
    PUNCTUATION = "punctuation"
    OTHER = "other"


class Capitalization(str, Enum):
    LOWER = "lower"
    INITIAL_UPPER = "initial_upper"
    ALL_UPPER = "all_upper"
    MIXED = "mixed"


@dataclass(frozen=True)
class TaggedToken:
    token: Token
    pos: PosTag
    length: int
    capitalization: Capitalization


def load_tag_lexicon(path: str | Path | None = None) -> dict[str, PosTag]:
    """Read a 'word<TAB>tag' lexicon file (defaults to the bundled one)."""
    resolved = Path(path) if path is not None else resource_path(TAG_LEXICON_FILE)
    return _load_cached(str(resolved))


@lru_cache(maxsize=8)
def _load_cached(path: str) -> dict[str, PosTag]:
    lexicon: dict[str, PosTag] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValidationError(f"{path}:{lineno}: expected 'word<TAB>tag'")
        word, tag = parts[0].strip().lower(), parts[1].strip().lower()
        try:
            lexicon[word] = PosTag(tag)
        except ValueError as exc:
            raise ValidationError(f"{path}:{lineno}: unknown tag {tag!r}") from exc
    if not lexicon:
        raise ValidationError(f"{path}: tag lexicon is empty")
    return lexicon


# Inflection stripping: suffix -> candidate base restorations, tried in order.
_INFLECTIONS: tuple[tuple[str, tuple[str, ...]], ...] = (
    ("'s", ("",)),
    ("s'", ("",)),
    ("ies", ("y",)),
    ("ing", ("", "e")),
    ("ed", ("", "e")),
    ("es", ("", "e")),
    ("est", ("", "e")),
    ("er", ("", "e")),
    ("s", ("",)),
)

# Derivational suffix fallbacks, tried in order after lexicon lookups fail.
_SUFFIX_TAGS: tuple[tuple[str, PosTag], ...] = (
    ("ly", PosTag.ADVERB),
    ("tion", PosTag.NOUN),
    ("sion", PosTag.NOUN),
    ("ment", PosTag.NOUN),
    ("ness", PosTag.NOUN),
    ("ity", PosTag.NOUN),
    ("ance", PosTag.NOUN),
    ("ence", PosTag.NOUN),
    ("ship", PosTag.NOUN),
    ("ism", PosTag.NOUN),
    ("ous", PosTag.ADJECTIVE),
    ("ive", PosTag.ADJECTIVE),
    ("able", PosTag.ADJECTIVE),
    ("ible", PosTag.ADJECTIVE),
    ("ful", PosTag.ADJECTIVE),
    ("less", PosTag.ADJECTIVE),
    ("ish", PosTag.ADJECTIVE),
    ("ary", PosTag.ADJECTIVE),
    ("ic", PosTag.ADJECTIVE),
    ("al", PosTag.ADJECTIVE),
    ("ize", PosTag.VERB),
    ("ise", PosTag.VERB),
    ("ate", PosTag.VERB),
    ("ify", PosTag.VERB),
    ("ing", PosTag.VERB),
    ("ed", PosTag.VERB),
)


def capitalization_of(surface: str) -> Capitalization:
    letters = [ch for ch in surface if ch.isalpha()]
    if not letters:
        return Capitalization.LOWER
    if all(ch.isupper() for ch in letters):
        return Capitalization.ALL_UPPER if len(letters) > 1 else Capitalization.INITIAL_UPPER
    if letters[0].isupper() and all(ch.islower() for ch in letters[1:]):
        return Capitalization.INITIAL_UPPER
    if all(ch.islower() for ch in letters):
        return Capitalization.LOWER
    return Capitalization.MIXED


def _tag_word(surface: str, lexicon: dict[str, PosTag]) -> PosTag:
    low = surface.lower()
    tag = lexicon.get(low)
    if tag is not None:
        return tag
    for suffix, restorations in _INFLECTIONS:
        if low.endswith(suffix) and len(low) > len(suffix) + 1:
            for restoration in restorations:
                base = lexicon.get(low[: -len(suffix)] + restoration)
                if base is not None:
                    return base
    for suffix, tag in _SUFFIX_TAGS:
        if low.endswith(suffix) and len(low) > len(suffix) + 2:
            return tag
    if capitalization_of(surface) in (Capitalization.INITIAL_UPPER, Capitalization.ALL_UPPER):
        return PosTag.NOUN
    return PosTag.OTHER


def tag_token(token: Token, lexicon: dict[str, PosTag]) -> PosTag:
    if token.kind in (TokenKind.NUMBER, TokenKind.CITATION_CANDIDATE):
        return PosTag.NUMBER
    if token.kind is TokenKind.PUNCTUATION:
        return PosTag.PUNCTUATION
    return _tag_word(token.surface, lexicon)


def pos_tag(tokens: list[Token], lexicon: dict[str, PosTag] | None = None) -> list[TaggedToken]:
    lexicon = load_tag_lexicon() if lexicon is None else lexicon
    return [
        TaggedToken(
            token=token,
            pos=tag_token(token, lexicon),
            length=len(token.surface),
            capitalization=capitalization_of(token.surface),
        )
        for token in tokens
    ]
