"""Whole-document analysis and the static HTML/SVG report.

analyze_document runs the full pipeline (clean, tokenize, split, sections,
bibliography, citation sentences, classify, fuse, link) and render_html
turns the result into a self-contained, deterministic page: sentiment
classes on the left, bibliography entries in the middle, nature classes on
the right, with edge widths proportional to mention counts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from html import escape

from .citations import (
    BibliographyEntry,
    extract_bibliography,
    find_citation_sentences,
    link_markers,
)
from .classifiers import (
    NATURE_LABELS,
    SENTIMENT_LABELS,
    LinearModel,
    predict,
)
from .diagnostics import DiagnosticRecord, Diagnostics
from .errors import ValidationError
from .features import COMBINATION, FeatureConfig, preset, vectorize
from .fusion import FusionPolicy, fuse
from .ingest import (
    RawDocument,
    clean_text,
    detect_sections,
    find_reference_section,
    split_sentences,
    tokenize,
)
from .lexicon import LexicalResource
from .postag import PosTag, load_tag_lexicon


@dataclass(frozen=True)
class Mention:
    sentence_id: int
    sentence_text: str
    section: str
    sentiment: str
    nature: str
    entry_key: str


@dataclass(frozen=True)
class ReferenceAnalysis:
    entry: BibliographyEntry
    mentions: tuple[Mention, ...]

    def sentiment_counts(self) -> dict[str, int]:
        counts = {label: 0 for label in SENTIMENT_LABELS}
        for mention in self.mentions:
            counts[mention.sentiment] += 1
        return counts

    def nature_counts(self) -> dict[str, int]:
        counts = {label: 0 for label in NATURE_LABELS}
        for mention in self.mentions:
            counts[mention.nature] += 1
        return counts


@dataclass(frozen=True)
class UnresolvedMention:
    key: str
    sentence_text: str
    span: tuple[int, int]


@dataclass(frozen=True)
class DocumentAnalysis:
    doc_id: str
    references: tuple[ReferenceAnalysis, ...]
    sentiment_totals: dict[str, int]
    nature_totals: dict[str, int]
    unresolved: tuple[UnresolvedMention, ...]
    diagnostics: tuple[DiagnosticRecord, ...]
    n_citation_sentences: int


def model_feature_config(model: LinearModel) -> FeatureConfig:
    """The feature preset a model was trained with (default: combination)."""
    name = model.metadata.get("feature_preset")
    if name is None:
        return COMBINATION
    if not isinstance(name, str):
        raise ValidationError("model metadata feature_preset must be a string")
    return preset(name)


@dataclass
class AnalysisModels:
    """Everything analyze_document needs to score a publication."""

    sentiment_svm: LinearModel
    sentiment_paum: LinearModel
    nature: LinearModel
    policy: FusionPolicy
    resource: LexicalResource
    tag_lexicon: dict[str, PosTag] | None = None
    heading_lexicon: dict[str, str] | None = None


def analyze_document(raw: RawDocument, models: AnalysisModels) -> DocumentAnalysis:
    diagnostics = Diagnostics()
    clean = clean_text(raw)
    tokens = tokenize(clean)
    if not tokens:
        diagnostics.emit(raw.doc_id, "empty-document", None, "document has no tokens")
    sentences = detect_sections(clean, split_sentences(clean, tokens), models.heading_lexicon)
    reference_span = find_reference_section(clean, models.heading_lexicon)
    entries = extract_bibliography(clean, models.heading_lexicon, diagnostics)
    if reference_span is None and entries:
        # Heading-less bibliography: still keep its lines out of the citing text.
        reference_span = (entries[0].span[0], entries[-1].span[1])
    citation_sentences = find_citation_sentences(
        clean, tokens, sentences, reference_span, diagnostics
    )
    tag_lexicon = models.tag_lexicon if models.tag_lexicon is not None else load_tag_lexicon()

    configs = {
        "svm": model_feature_config(models.sentiment_svm),
        "paum": model_feature_config(models.sentiment_paum),
        "nature": model_feature_config(models.nature),
    }
    labels_by_sentence: dict[int, tuple[str, str]] = {}
    for cs in citation_sentences:
        vectors = {}
        for name, config in configs.items():
            key = id(config)
            if key not in vectors:
                vectors[key] = vectorize(cs, config, models.resource, tag_lexicon)
        svm_pred = predict(models.sentiment_svm, vectors[id(configs["svm"])])
        paum_pred = predict(models.sentiment_paum, vectors[id(configs["paum"])])
        sentiment = fuse(svm_pred, paum_pred, models.policy)
        nature = predict(models.nature, vectors[id(configs["nature"])])[0]
        labels_by_sentence[cs.sentence_id] = (sentiment, nature)

    by_sentence_id = {cs.sentence_id: cs for cs in citation_sentences}
    markers = [marker for cs in citation_sentences for marker in cs.markers]
    links = link_markers(markers, entries, diagnostics, raw.doc_id)
    entry_keys = {entry.key for entry in entries}

    mentions_by_key: dict[str, list[Mention]] = {entry.key: [] for entry in entries}
    for link in links:
        cs = by_sentence_id[link.marker.sentence_id]
        sentiment, nature = labels_by_sentence[cs.sentence_id]
        mentions_by_key[link.key].append(
            Mention(
                sentence_id=cs.sentence_id,
                sentence_text=cs.text,
                section=cs.sentence.section.value,
                sentiment=sentiment,
                nature=nature,
                entry_key=link.key,
            )
        )
    unresolved = tuple(
        UnresolvedMention(key, by_sentence_id[marker.sentence_id].text, marker.span)
        for marker in markers
        for key in marker.keys
        if key not in entry_keys
    )
    references = tuple(
        ReferenceAnalysis(entry, tuple(mentions_by_key[entry.key])) for entry in entries
    )
    sentiment_totals = {label: 0 for label in SENTIMENT_LABELS}
    nature_totals = {label: 0 for label in NATURE_LABELS}
    for reference in references:
        for mention in reference.mentions:
            sentiment_totals[mention.sentiment] += 1
            nature_totals[mention.nature] += 1
    return DocumentAnalysis(
        doc_id=raw.doc_id,
        references=references,
        sentiment_totals=sentiment_totals,
        nature_totals=nature_totals,
        unresolved=unresolved,
        diagnostics=tuple(diagnostics),
        n_citation_sentences=len(citation_sentences),
    )


def analysis_to_dict(analysis: DocumentAnalysis) -> dict:
    return {
        "doc_id": analysis.doc_id,
        "n_citation_sentences": analysis.n_citation_sentences,
        "references": [
            {
                "key": ref.entry.key,
                "entry_text": ref.entry.raw_text,
                # The bibliography line itself is a reference-natured unit.
                "entry_nature": "reference",
                "mentions": [
                    {
                        "sentence": m.sentence_text,
                        "section": m.section,
                        "sentiment": m.sentiment,
                        "nature": m.nature,
                    }
                    for m in ref.mentions
                ],
            }
            for ref in analysis.references
        ],
        "sentiment_totals": analysis.sentiment_totals,
        "nature_totals": analysis.nature_totals,
        "unresolved": [
            {"key": u.key, "sentence": u.sentence_text} for u in analysis.unresolved
        ],
        "diagnostics": [
            {
                "doc_id": d.doc_id,
                "kind": d.kind,
                "span": list(d.span) if d.span is not None else None,
                "message": d.message,
            }
            for d in analysis.diagnostics
        ],
    }


def analysis_to_json(analysis: DocumentAnalysis) -> str:
    return json.dumps(analysis_to_dict(analysis), indent=2, sort_keys=True, ensure_ascii=False)


# --- rendering ---

_SENTIMENT_COLORS = {"positive": "#2e7d32", "neutral": "#607d8b", "negative": "#c62828"}
_NATURE_COLORS = {
    "usage": "#1565c0",
    "reading": "#6a1b9a",
    "dataset": "#00838f",
    "reference": "#ef6c00",
    "rest": "#5d4037",
}

_EDGE_WIDTH_BASE = 2.0
_EDGE_WIDTH_CAP = 12.0

_ROW = 40
_NODE_H = 26
_NODE_W = 140
_TOP = 70
_LEFT_X = 30
_MID_X = 410
_RIGHT_X = 790
_SVG_W = 960


def edge_width(count: int) -> float:
    return min(_EDGE_WIDTH_BASE * count, _EDGE_WIDTH_CAP)


def _column_y(index: int, count: int, rows: int) -> float:
    offset = (rows - count) * _ROW / 2.0
    return _TOP + offset + index * _ROW


def _node(x: float, y: float, color: str, label: str, title: str) -> str:
    parts = [
        f'<g><rect x="{x:g}" y="{y:g}" width="{_NODE_W}" height="{_NODE_H}" '
        f'rx="4" fill="{color}"><title>{escape(title)}</title></rect>',
        f'<text x="{x + _NODE_W / 2:g}" y="{y + 17:g}" text-anchor="middle" '
        f'class="node-label">{escape(label)}</text></g>',
    ]
    return "".join(parts)


def _edge(x1: float, y1: float, x2: float, y2: float, color: str, width: float, title: str) -> str:
    return (
        f'<line x1="{x1:g}" y1="{y1:g}" x2="{x2:g}" y2="{y2:g}" '
        f'stroke="{color}" stroke-width="{width:g}" stroke-opacity="0.55">'
        f"<title>{escape(title)}</title></line>"
    )


def _mention_lines(mentions: tuple[Mention, ...]) -> str:
    return "\n".join(
        f"[{m.entry_key}] ({m.sentiment}/{m.nature}) {m.sentence_text}" for m in mentions
    )


def render_svg(analysis: DocumentAnalysis) -> str:
    n_refs = len(analysis.references)
    rows = max(len(SENTIMENT_LABELS), len(NATURE_LABELS), n_refs, 1)
    height = _TOP + rows * _ROW + 30
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" height="{height}" '
        f'viewBox="0 0 {_SVG_W} {height}" role="img">'
    ]
    for x, heading in (
        (_LEFT_X, "Sentiment"),
        (_MID_X, "References"),
        (_RIGHT_X, "Nature"),
    ):
        parts.append(
            f'<text x="{x + _NODE_W / 2:g}" y="40" text-anchor="middle" '
            f'class="column-heading">{heading}</text>'
        )
    mid_center_y = {}
    for i, reference in enumerate(analysis.references):
        y = _column_y(i, n_refs, rows)
        mid_center_y[reference.entry.key] = y + _NODE_H / 2.0
    left_center_y = {}
    for i, label in enumerate(SENTIMENT_LABELS):
        y = _column_y(i, len(SENTIMENT_LABELS), rows)
        left_center_y[label] = y + _NODE_H / 2.0
    right_center_y = {}
    for i, label in enumerate(NATURE_LABELS):
        y = _column_y(i, len(NATURE_LABELS), rows)
        right_center_y[label] = y + _NODE_H / 2.0

    # Edges first so nodes draw above them. Edge tooltips carry counts only;
    # the mention sentences live in exactly one tooltip each, on their entry.
    for reference in analysis.references:
        key = reference.entry.key
        for label, count in reference.sentiment_counts().items():
            if count == 0:
                continue
            parts.append(
                _edge(
                    _LEFT_X + _NODE_W,
                    left_center_y[label],
                    _MID_X,
                    mid_center_y[key],
                    _SENTIMENT_COLORS[label],
                    edge_width(count),
                    f"{label} x{count} for [{key}]",
                )
            )
        for label, count in reference.nature_counts().items():
            if count == 0:
                continue
            parts.append(
                _edge(
                    _MID_X + _NODE_W,
                    mid_center_y[key],
                    _RIGHT_X,
                    right_center_y[label],
                    _NATURE_COLORS[label],
                    edge_width(count),
                    f"{label} x{count} for [{key}]",
                )
            )

    for i, label in enumerate(SENTIMENT_LABELS):
        y = _column_y(i, len(SENTIMENT_LABELS), rows)
        total = analysis.sentiment_totals[label]
        parts.append(
            _node(_LEFT_X, y, _SENTIMENT_COLORS[label], f"{label} ({total})",
                  f"{total} mention(s) classified {label}")
        )
    for i, reference in enumerate(analysis.references):
        y = _column_y(i, n_refs, rows)
        title = _mention_lines(reference.mentions) or "no in-text mentions"
        parts.append(
            _node(_MID_X, y, "#37474f", f"[{reference.entry.key}] {len(reference.mentions)}",
                  f"{reference.entry.raw_text}\n{title}")
        )
    for i, label in enumerate(NATURE_LABELS):
        y = _column_y(i, len(NATURE_LABELS), rows)
        total = analysis.nature_totals[label]
        parts.append(
            _node(_RIGHT_X, y, _NATURE_COLORS[label], f"{label} ({total})",
                  f"{total} mention(s) classified {label}")
        )
    parts.append("</svg>")
    return "".join(parts)


_PAGE_CSS = """
body { font-family: Georgia, serif; margin: 2rem auto; max-width: 1000px;
       color: #222; background: #fffdf8; }
h1 { font-size: 1.4rem; }
svg { border: 1px solid #ddd; background: #fff; }
.node-label { font: 12px sans-serif; fill: #fff; }
.column-heading { font: bold 14px sans-serif; fill: #333; }
table { border-collapse: collapse; margin-top: 1rem; }
td, th { border: 1px solid #ccc; padding: 0.3rem 0.6rem; font-size: 0.85rem;
         text-align: left; vertical-align: top; }
.diagnostics { margin-top: 1.5rem; font-size: 0.8rem; color: #555; }
"""


def render_html(analysis: DocumentAnalysis) -> str:
    """Self-contained, well-formed page; byte-identical for equal analyses."""
    rows = []
    for reference in analysis.references:
        if reference.mentions:
            for mention in reference.mentions:
                rows.append(
                    "<tr><td>[{key}]</td><td>{sentence}</td><td>{section}</td>"
                    "<td>{sentiment}</td><td>{nature}</td></tr>".format(
                        key=escape(reference.entry.key),
                        sentence=escape(mention.sentence_text),
                        section=escape(mention.section),
                        sentiment=escape(mention.sentiment),
                        nature=escape(mention.nature),
                    )
                )
        else:
            rows.append(
                f'<tr><td>[{escape(reference.entry.key)}]</td>'
                f'<td colspan="4">no in-text mentions</td></tr>'
            )
    diag_items = [
        f"<li>{escape(d.kind)}: {escape(d.message)}</li>" for d in analysis.diagnostics
    ]
    unresolved_items = [
        f"<li>key {escape(u.key)} in: {escape(u.sentence_text)}</li>"
        for u in analysis.unresolved
    ]
    totals = ", ".join(
        f"{label} {analysis.sentiment_totals[label]}" for label in SENTIMENT_LABELS
    )
    return (
        '<html lang="en"><head><meta charset="utf-8"/>'
        f"<title>Citation analysis: {escape(analysis.doc_id)}</title>"
        f"<style>{_PAGE_CSS}</style></head><body>"
        f"<h1>Citation analysis: {escape(analysis.doc_id)}</h1>"
        f"<p>{len(analysis.references)} bibliography entries, "
        f"{analysis.n_citation_sentences} citing sentences, "
        f"mention sentiments: {escape(totals)}.</p>"
        + render_svg(analysis)
        + "<table><thead><tr><th>ref</th><th>sentence</th><th>section</th>"
        "<th>sentiment</th><th>nature</th></tr></thead>"
        f"<tbody>{''.join(rows)}</tbody></table>"
        '<div class="diagnostics">'
        + (
            f"<p>Unresolved citation keys:</p><ul>{''.join(unresolved_items)}</ul>"
            if unresolved_items
            else ""
        )
        + (
            f"<p>Parser diagnostics:</p><ul>{''.join(diag_items)}</ul>"
            if diag_items
            else "<p>No parser diagnostics.</p>"
        )
        + "</div></body></html>"
    )
