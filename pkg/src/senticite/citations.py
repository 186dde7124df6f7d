"""Citation markers, bibliography extraction, and marker-entry linking.

Parsing is tolerant: anything that cannot be resolved produces a
DiagnosticRecord instead of an exception.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from enum import Enum

from .diagnostics import Diagnostics
from .ingest import (
    CleanDocument,
    Sentence,
    Token,
    TokenKind,
    find_reference_section,
    sentence_tokens,
)


class MarkerStyle(str, Enum):
    NUMERIC_BRACKET = "numeric_bracket"
    NUMERIC_BRACKET_LIST = "numeric_bracket_list"
    AUTHOR_YEAR = "author_year"


@dataclass(frozen=True)
class CitationMarker:
    style: MarkerStyle
    keys: tuple[str, ...]
    span: tuple[int, int]
    sentence_id: int


@dataclass(frozen=True)
class BibliographyEntry:
    key: str
    raw_text: str
    span: tuple[int, int]


@dataclass(frozen=True)
class CitationSentence:
    sentence: Sentence
    markers: tuple[CitationMarker, ...]
    text: str
    tokens: tuple[Token, ...]
    sentence_id: int


@dataclass(frozen=True)
class MarkerLink:
    marker: CitationMarker
    key: str
    entry: BibliographyEntry


def strip_diacritics(text: str) -> str:
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch))


_SURNAME_RE = re.compile(r"[A-Z][^\W\d_]+(?:[-'’][^\W\d_]+)*")
_YEAR_RE = re.compile(r"(?:19|20)\d\d[a-z]?")


def author_year_key(segment: str) -> str | None:
    """'Smith et al., 2004' -> 'Smith2004'; None when no name+year found."""
    name = _SURNAME_RE.search(segment)
    year = _YEAR_RE.search(segment)
    if name is None or year is None:
        return None
    return strip_diacritics(name.group()) + year.group()


def _marker_from_token(token: Token, sentence_id: int) -> CitationMarker | None:
    surface = token.surface
    if surface.startswith("["):
        keys = tuple(re.findall(r"\d+", surface))
        if not keys:
            return None
        style = (
            MarkerStyle.NUMERIC_BRACKET
            if len(keys) == 1
            else MarkerStyle.NUMERIC_BRACKET_LIST
        )
        return CitationMarker(style, keys, token.span, sentence_id)
    if surface.startswith("("):
        keys = []
        for segment in surface.strip("()").split(";"):
            key = author_year_key(segment)
            if key is not None:
                keys.append(key)
        if not keys:
            return None
        return CitationMarker(MarkerStyle.AUTHOR_YEAR, tuple(keys), token.span, sentence_id)
    return None


def locate_citation_tokens(
    doc: CleanDocument,
    tokens: list[Token],
    sentence: Sentence,
    sentence_id: int = 0,
    diagnostics: Diagnostics | None = None,
) -> list[CitationMarker]:
    """Markers inside one sentence; malformed brackets become diagnostics."""
    markers: list[CitationMarker] = []
    open_brackets: list[Token] = []
    for token in sentence_tokens(tokens, sentence):
        if token.kind is TokenKind.CITATION_CANDIDATE:
            marker = _marker_from_token(token, sentence_id)
            if marker is not None:
                markers.append(marker)
        elif token.kind is TokenKind.PUNCTUATION:
            if token.surface == "[":
                open_brackets.append(token)
            elif token.surface == "]" and open_brackets:
                open_brackets.pop()
    if diagnostics is not None:
        for token in open_brackets:
            diagnostics.emit(
                doc.doc_id,
                "unclosed-bracket",
                token.span,
                "bracket opened but never closed in this sentence",
            )
    return markers


def _overlaps(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[0] < b[1] and b[0] < a[1]


def find_citation_sentences(
    doc: CleanDocument,
    tokens: list[Token],
    sentences: list[Sentence],
    exclude_span: tuple[int, int] | None = None,
    diagnostics: Diagnostics | None = None,
) -> list[CitationSentence]:
    """Sentences carrying at least one citation marker, reference list excluded."""
    found: list[CitationSentence] = []
    for sentence_id, sentence in enumerate(sentences):
        if exclude_span is not None and _overlaps(sentence.span, exclude_span):
            continue
        markers = locate_citation_tokens(doc, tokens, sentence, sentence_id, diagnostics)
        if markers:
            found.append(
                CitationSentence(
                    sentence=sentence,
                    markers=tuple(markers),
                    text=doc.text[sentence.span[0] : sentence.span[1]],
                    tokens=tuple(sentence_tokens(tokens, sentence)),
                    sentence_id=sentence_id,
                )
            )
    return found


_BIB_KEY_LINE_RE = re.compile(r"^\s*\[(\d+)\]\s*")


def _lines_with_offsets(text: str, start: int, end: int) -> list[tuple[int, int, str]]:
    out = []
    pos = start
    while pos < end:
        nl = text.find("\n", pos, end)
        stop = end if nl == -1 else nl
        out.append((pos, stop, text[pos:stop]))
        pos = stop + 1
    return out


def _trailing_bracket_block(doc: CleanDocument) -> tuple[int, int] | None:
    """Fallback reference region: the trailing cluster of [N]-keyed lines."""
    lines = _lines_with_offsets(doc.text, 0, len(doc.text))
    keyed = [i for i, (_, _, body) in enumerate(lines) if _BIB_KEY_LINE_RE.match(body)]
    if not keyed:
        return None
    # Walk backwards from the last keyed line, allowing short continuation gaps.
    cluster_start = keyed[-1]
    for i in reversed(keyed[:-1]):
        if cluster_start - i <= 3:
            cluster_start = i
        else:
            break
    return (lines[cluster_start][0], len(doc.text))


def extract_bibliography(
    doc: CleanDocument,
    heading_lexicon: dict[str, str] | None = None,
    diagnostics: Diagnostics | None = None,
) -> list[BibliographyEntry]:
    """Parse the reference list into keyed entries.

    Prefers the region under a references heading; otherwise falls back to a
    trailing block of [N]-keyed lines (with a diagnostic). Numeric keys are
    the printed integers; author-year entries get Surname+Year keys.
    """
    span = find_reference_section(doc, heading_lexicon)
    if span is None:
        span = _trailing_bracket_block(doc)
        if span is None:
            if diagnostics is not None:
                diagnostics.emit(doc.doc_id, "no-reference-section", None,
                                 "no references heading and no trailing keyed block")
            return []
        if diagnostics is not None:
            diagnostics.emit(doc.doc_id, "references-heading-missing", span,
                             "using trailing bracketed block as the reference list")
    lines = _lines_with_offsets(doc.text, span[0], span[1])
    keyed = [(i, _BIB_KEY_LINE_RE.match(body)) for i, (_, _, body) in enumerate(lines)]
    keyed = [(i, m) for i, m in keyed if m is not None]
    if keyed:
        entries = _numeric_entries(doc, lines, [i for i, _ in keyed], diagnostics)
    else:
        entries = _author_year_entries(doc, lines, diagnostics)
    return entries


def _shrink(text: str, start: int, end: int) -> tuple[int, int]:
    while end > start and text[end - 1].isspace():
        end -= 1
    while start < end and text[start].isspace():
        start += 1
    return start, end


def _numeric_entries(
    doc: CleanDocument,
    lines: list[tuple[int, int, str]],
    key_line_indices: list[int],
    diagnostics: Diagnostics | None,
) -> list[BibliographyEntry]:
    entries: list[BibliographyEntry] = []
    seen: set[str] = set()
    for pos, i in enumerate(key_line_indices):
        start = lines[i][0]
        end = (
            lines[key_line_indices[pos + 1]][0]
            if pos + 1 < len(key_line_indices)
            else lines[-1][1]
        )
        start, end = _shrink(doc.text, start, end)
        match = _BIB_KEY_LINE_RE.match(lines[i][2])
        assert match is not None
        key = match.group(1)
        if key in seen:
            if diagnostics is not None:
                diagnostics.emit(doc.doc_id, "duplicate-bibliography-key",
                                 (start, end), f"key {key} seen before; keeping first")
            continue
        seen.add(key)
        entries.append(BibliographyEntry(key, doc.text[start:end], (start, end)))
    return entries


def _author_year_entries(
    doc: CleanDocument,
    lines: list[tuple[int, int, str]],
    diagnostics: Diagnostics | None,
) -> list[BibliographyEntry]:
    """Blank-line separated blocks, keyed Surname+Year."""
    entries: list[BibliographyEntry] = []
    seen: set[str] = set()
    block: list[tuple[int, int, str]] = []

    def flush() -> None:
        if not block:
            return
        start, end = _shrink(doc.text, block[0][0], block[-1][1])
        if start >= end:
            return
        text = doc.text[start:end]
        key = author_year_key(text)
        if key is None:
            if diagnostics is not None:
                diagnostics.emit(doc.doc_id, "unparseable-bibliography-entry",
                                 (start, end), "no surname+year found")
            return
        if key in seen:
            if diagnostics is not None:
                diagnostics.emit(doc.doc_id, "duplicate-bibliography-key",
                                 (start, end), f"key {key} seen before; keeping first")
            return
        seen.add(key)
        entries.append(BibliographyEntry(key, text, (start, end)))

    for line in lines:
        if line[2].strip():
            block.append(line)
        else:
            flush()
            block = []
    flush()
    return entries


def link_markers(
    markers: list[CitationMarker],
    entries: list[BibliographyEntry],
    diagnostics: Diagnostics | None = None,
    doc_id: str = "",
) -> list[MarkerLink]:
    """Resolve every marker key against the bibliography, in document order."""
    by_key = {}
    for entry in entries:
        by_key.setdefault(entry.key, entry)
    links: list[MarkerLink] = []
    for marker in markers:
        for key in marker.keys:
            entry = by_key.get(key)
            if entry is None:
                if diagnostics is not None:
                    diagnostics.emit(doc_id, "unresolved-citation-key", marker.span,
                                     f"no bibliography entry for key {key!r}")
                continue
            links.append(MarkerLink(marker, key, entry))
    return links
