"""Document analysis and the static HTML/SVG report."""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET

import pytest

from senticite.citations import BibliographyEntry
from senticite.classifiers import TrainConfig, train_paum, train_svm
from senticite.corpus import featurize_records
from senticite.errors import ValidationError
from senticite.features import COMBINATION, ONLY_POS
from senticite.fusion import load_policy
from senticite.ingest import RawDocument
from senticite.report import (
    AnalysisModels,
    DocumentAnalysis,
    Mention,
    ReferenceAnalysis,
    analysis_to_dict,
    analysis_to_json,
    analyze_document,
    edge_width,
    model_feature_config,
    render_html,
    render_svg,
)
from senticite.respath import data_path


@pytest.fixture(scope="module")
def models(resource, tag_lexicon, mini_sentiment, mini_nature):
    config = TrainConfig(epochs=12, shuffle_seed=42)
    sent_examples = featurize_records(
        mini_sentiment.records, COMBINATION, resource, tag_lexicon
    )
    nat_examples = featurize_records(
        mini_nature.records, COMBINATION, resource, tag_lexicon
    )
    return AnalysisModels(
        sentiment_svm=train_svm(sent_examples, config),
        sentiment_paum=train_paum(sent_examples, config),
        nature=train_paum(nat_examples, config),
        policy=load_policy(data_path("default_sentiment_policy.tsv")),
        resource=resource,
        tag_lexicon=tag_lexicon,
    )


@pytest.fixture(scope="module")
def sample_analysis(models):
    raw = RawDocument.read(data_path("sample_document.txt"))
    return analyze_document(raw, models)


def doc(text: str, doc_id: str = "doc") -> RawDocument:
    return RawDocument(doc_id=doc_id, text=text)


SMALL_DOC = """A Tiny Study

1 Introduction

The tool in [1] works impressively well. We reuse the benchmark of [2].
Sadly the recognizer of [1] breaks down on cursive lines.

References

[1] Invented Author. A Tool for Lines. Venue, 2010.
[2] Other Author. A Benchmark Suite. Venue, 2012.
"""


class TestAnalyzeDocument:
    def test_references_in_bibliography_order(self, models):
        analysis = analyze_document(doc(SMALL_DOC), models)
        assert [r.entry.key for r in analysis.references] == ["1", "2"]

    def test_mention_counts(self, models):
        analysis = analyze_document(doc(SMALL_DOC), models)
        by_key = {r.entry.key: len(r.mentions) for r in analysis.references}
        assert by_key == {"1": 2, "2": 1}
        assert analysis.n_citation_sentences == 3

    def test_totals_add_up_to_mentions(self, models):
        analysis = analyze_document(doc(SMALL_DOC), models)
        n_mentions = sum(len(r.mentions) for r in analysis.references)
        assert sum(analysis.sentiment_totals.values()) == n_mentions
        assert sum(analysis.nature_totals.values()) == n_mentions

    def test_mentions_carry_sentence_text_and_section(self, models):
        analysis = analyze_document(doc(SMALL_DOC), models)
        first = analysis.references[0].mentions[0]
        assert "[1]" in first.sentence_text
        assert first.section == "introduction"
        assert first.sentiment in ("positive", "neutral", "negative")
        assert first.nature in ("usage", "reading", "dataset", "reference", "rest")

    def test_empty_document_is_reported_not_crashed(self, models):
        analysis = analyze_document(doc("   \n  "), models)
        assert analysis.references == ()
        assert analysis.n_citation_sentences == 0
        assert "empty-document" in [d.kind for d in analysis.diagnostics]

    def test_document_without_markers_keeps_bibliography(self, models):
        text = (
            "A prose paragraph without pointers.\n\nReferences\n\n"
            "[1] Someone. Something. Venue, 2001.\n"
        )
        analysis = analyze_document(doc(text), models)
        assert [r.entry.key for r in analysis.references] == ["1"]
        assert all(r.mentions == () for r in analysis.references)
        assert analysis.n_citation_sentences == 0

    def test_unresolved_marker_listed(self, models):
        text = (
            "We cite [9] here.\n\nReferences\n\n"
            "[1] Someone. Something. Venue, 2001.\n"
        )
        analysis = analyze_document(doc(text), models)
        assert [u.key for u in analysis.unresolved] == ["9"]
        assert "unresolved-citation-key" in [d.kind for d in analysis.diagnostics]

    def test_headingless_bibliography_not_mined_for_sentences(self, models):
        text = (
            "We build on [1].\n\n"
            "[1] Someone. Something That Cites Itself [1]. Venue, 2001.\n"
            "[2] Other. More Work. Venue, 2002.\n"
        )
        analysis = analyze_document(doc(text), models)
        assert analysis.n_citation_sentences == 1
        assert [len(r.mentions) for r in analysis.references] == [1, 0]

    def test_sample_document_reference_count(self, sample_analysis):
        assert len(sample_analysis.references) == 10
        assert [u.key for u in sample_analysis.unresolved] == ["Miller2015"]

    def test_sample_document_mention_distribution(self, sample_analysis):
        by_key = {r.entry.key: len(r.mentions) for r in sample_analysis.references}
        assert by_key == {
            "1": 1, "2": 2, "3": 3, "4": 1, "5": 1,
            "6": 2, "7": 2, "8": 1, "9": 2, "10": 1,
        }


class TestModelFeatureConfig:
    def test_default_is_combination(self, models):
        assert model_feature_config(models.sentiment_svm) is COMBINATION

    def test_named_preset_respected(self, models):
        models.sentiment_svm.metadata["feature_preset"] = "only-pos"
        try:
            assert model_feature_config(models.sentiment_svm) is ONLY_POS
        finally:
            del models.sentiment_svm.metadata["feature_preset"]

    def test_non_string_rejected(self, models):
        models.sentiment_svm.metadata["feature_preset"] = 7
        try:
            with pytest.raises(ValidationError):
                model_feature_config(models.sentiment_svm)
        finally:
            del models.sentiment_svm.metadata["feature_preset"]


class TestSerialization:
    def test_dict_schema(self, sample_analysis):
        data = analysis_to_dict(sample_analysis)
        assert data["doc_id"] == "sample_document"
        assert data["n_citation_sentences"] == 15
        assert len(data["references"]) == 10
        first = data["references"][0]
        assert first["entry_nature"] == "reference"
        assert set(first) == {"key", "entry_text", "entry_nature", "mentions"}
        assert set(first["mentions"][0]) == {"sentence", "section", "sentiment", "nature"}
        assert {u["key"] for u in data["unresolved"]} == {"Miller2015"}

    def test_totals_consistent_with_reference_counts(self, sample_analysis):
        data = analysis_to_dict(sample_analysis)
        for label, total in data["sentiment_totals"].items():
            summed = sum(
                1
                for ref in data["references"]
                for mention in ref["mentions"]
                if mention["sentiment"] == label
            )
            assert summed == total
        for label, total in data["nature_totals"].items():
            summed = sum(
                1
                for ref in data["references"]
                for mention in ref["mentions"]
                if mention["nature"] == label
            )
            assert summed == total

    def test_json_round_trips(self, sample_analysis):
        text = analysis_to_json(sample_analysis)
        assert json.loads(text) == analysis_to_dict(sample_analysis)

    def test_json_is_stable(self, sample_analysis):
        assert analysis_to_json(sample_analysis) == analysis_to_json(sample_analysis)


def hand_analysis(n_refs: int = 2, mentions_for_first: int = 2) -> DocumentAnalysis:
    """A fully deterministic analysis for rendering tests."""
    references = []
    sentiment_totals = {"positive": 0, "neutral": 0, "negative": 0}
    nature_totals = {"usage": 0, "reading": 0, "dataset": 0, "reference": 0, "rest": 0}
    for i in range(1, n_refs + 1):
        key = str(i)
        entry = BibliographyEntry(
            key=key,
            raw_text=f"[{i}] Invented Person. Work {i}. Venue, 200{i}.",
            span=(100 * i, 100 * i + 40),
        )
        mentions = []
        count = mentions_for_first if i == 1 else 1
        for m in range(count):
            sentiment = "positive" if i == 1 else "neutral"
            nature = "usage" if i == 1 else "reading"
            mentions.append(
                Mention(
                    sentence_id=10 * i + m,
                    sentence_text=f"Sentence {m} cites [{i}] with enthusiasm.",
                    section="evaluation",
                    sentiment=sentiment,
                    nature=nature,
                    entry_key=key,
                )
            )
            sentiment_totals[sentiment] += 1
            nature_totals[nature] += 1
        references.append(ReferenceAnalysis(entry=entry, mentions=tuple(mentions)))
    return DocumentAnalysis(
        doc_id="hand-made",
        references=tuple(references),
        sentiment_totals=sentiment_totals,
        nature_totals=nature_totals,
        unresolved=(),
        diagnostics=(),
        n_citation_sentences=mentions_for_first + n_refs - 1,
    )


class TestEdgeWidth:
    def test_doubles_per_mention(self):
        assert edge_width(1) == 2.0
        assert edge_width(2) == 4.0

    def test_capped(self):
        assert edge_width(6) == 12.0
        assert edge_width(100) == 12.0


class TestRenderSvg:
    def test_parses_as_xml(self):
        ET.fromstring(render_svg(hand_analysis()))

    def test_one_middle_node_per_reference(self):
        svg = render_svg(hand_analysis(n_refs=4))
        assert svg.count('fill="#37474f"') == 4

    def test_zero_count_edges_omitted(self):
        # Each hand-made reference has one sentiment and one nature, so each
        # middle node carries exactly one edge per side.
        svg = render_svg(hand_analysis(n_refs=2))
        root = ET.fromstring(svg)
        ns = {"svg": "http://www.w3.org/2000/svg"}
        lines = root.findall(".//svg:line", ns)
        assert len(lines) == 4

    def test_edge_width_scales_with_count(self):
        svg = render_svg(hand_analysis(n_refs=2, mentions_for_first=2))
        root = ET.fromstring(svg)
        ns = {"svg": "http://www.w3.org/2000/svg"}
        widths = sorted(
            float(line.get("stroke-width")) for line in root.findall(".//svg:line", ns)
        )
        assert widths == [2.0, 2.0, 4.0, 4.0]

    def test_each_mention_sentence_in_exactly_one_tooltip(self):
        analysis = hand_analysis(n_refs=3, mentions_for_first=2)
        svg = render_svg(analysis)
        for ref in analysis.references:
            for mention in ref.mentions:
                assert svg.count(mention.sentence_text) == 1

    def test_edge_tooltips_carry_counts_not_sentences(self):
        svg = render_svg(hand_analysis())
        root = ET.fromstring(svg)
        ns = {"svg": "http://www.w3.org/2000/svg"}
        for line in root.findall(".//svg:line", ns):
            title = line.find("svg:title", ns)
            assert title is not None
            assert " x" in title.text
            assert "cites" not in title.text

    def test_column_headings_present(self):
        svg = render_svg(hand_analysis())
        for heading in ("Sentiment", "References", "Nature"):
            assert f">{heading}<" in svg

    def test_deterministic(self):
        assert render_svg(hand_analysis()) == render_svg(hand_analysis())


class TestRenderHtml:
    def test_well_formed_and_parseable(self, sample_analysis):
        html = render_html(sample_analysis)
        assert html.startswith("<html")
        ET.fromstring(html)

    def test_empty_analysis_still_renders(self, models):
        analysis = analyze_document(doc("   "), models)
        html = render_html(analysis)
        ET.fromstring(html)
        for heading in ("Sentiment", "References", "Nature"):
            assert f">{heading}<" in html

    def test_title_carries_doc_id(self, sample_analysis):
        html = render_html(sample_analysis)
        assert "<title>Citation analysis: sample_document</title>" in html

    def test_mention_table_lists_every_mention(self, sample_analysis):
        html = render_html(sample_analysis)
        n_mentions = sum(len(r.mentions) for r in sample_analysis.references)
        # Every bundled sample reference has at least one mention, so every
        # table body row is a mention row.
        assert all(r.mentions for r in sample_analysis.references)
        assert html.count("<tr><td>[") == n_mentions

    def test_unresolved_and_diagnostics_sections(self, sample_analysis):
        html = render_html(sample_analysis)
        assert "Miller2015" in html
        assert "unresolved-citation-key" in html

    def test_escapes_markup_in_sentences(self):
        analysis = hand_analysis(n_refs=1, mentions_for_first=1)
        spiked = DocumentAnalysis(
            doc_id="esc<script>",
            references=(
                ReferenceAnalysis(
                    entry=analysis.references[0].entry,
                    mentions=(
                        Mention(
                            sentence_id=0,
                            sentence_text='<script>alert("x")</script> cites [1].',
                            section="method",
                            sentiment="neutral",
                            nature="rest",
                            entry_key="1",
                        ),
                    ),
                ),
            ),
            sentiment_totals={"positive": 0, "neutral": 1, "negative": 0},
            nature_totals={"usage": 0, "reading": 0, "dataset": 0, "reference": 0, "rest": 1},
            unresolved=(),
            diagnostics=(),
            n_citation_sentences=1,
        )
        html = render_html(spiked)
        assert "<script>" not in html
        ET.fromstring(html)

    def test_byte_identical_across_runs(self, models):
        raw = RawDocument.read(data_path("sample_document.txt"))
        first = render_html(analyze_document(raw, models))
        second = render_html(analyze_document(raw, models))
        assert first == second
