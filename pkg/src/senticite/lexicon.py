"""Lexical generalization resources: synonym clusters and hypernym chains.

Both files are flat TSV. synonyms.tsv maps lemma -> cluster id; hypernyms.tsv
maps lemma -> comma-separated ancestor cluster ids ordered nearest first.
Expansion order is synonym cluster first, then ancestors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Mapping

from .errors import ValidationError
from .respath import resource_path
from .stemming import stem

SYNONYMS_FILE = "synonyms.tsv"
HYPERNYMS_FILE = "hypernyms.tsv"


def _read_tsv(path: Path, n_fields: int) -> list[tuple[str, ...]]:
    rows: list[tuple[str, ...]] = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = tuple(part.strip() for part in line.split("\t"))
        if len(parts) != n_fields or not all(parts):
            raise ValidationError(f"{path}:{lineno}: expected {n_fields} tab-separated fields")
        rows.append(parts)
    return rows


@dataclass(frozen=True)
class LexicalResource:
    synonym_index: Mapping[str, str]
    hypernym_index: Mapping[str, tuple[str, ...]]
    # Porter-stem views of both indexes, for surface-form fallback lookups.
    stem_synonym_index: Mapping[str, str] = field(default_factory=dict)
    stem_hypernym_index: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    @classmethod
    def from_indexes(
        cls,
        synonym_index: Mapping[str, str],
        hypernym_index: Mapping[str, tuple[str, ...]],
    ) -> "LexicalResource":
        stem_syn: dict[str, str] = {}
        for lemma, cluster in synonym_index.items():
            stem_syn.setdefault(stem(lemma), cluster)
        stem_hyp: dict[str, tuple[str, ...]] = {}
        for lemma, ancestors in hypernym_index.items():
            stem_hyp.setdefault(stem(lemma), ancestors)
        return cls(
            MappingProxyType(dict(synonym_index)),
            MappingProxyType(dict(hypernym_index)),
            MappingProxyType(stem_syn),
            MappingProxyType(stem_hyp),
        )

    @classmethod
    def load(cls, directory: str | Path | None = None) -> "LexicalResource":
        syn_rows = _read_tsv(resource_path(SYNONYMS_FILE, directory), 2)
        hyp_rows = _read_tsv(resource_path(HYPERNYMS_FILE, directory), 2)
        synonym_index = {lemma.lower(): cluster for lemma, cluster in syn_rows}
        hypernym_index = {
            lemma.lower(): tuple(x.strip() for x in ancestors.split(",") if x.strip())
            for lemma, ancestors in hyp_rows
        }
        return cls.from_indexes(synonym_index, hypernym_index)

    @classmethod
    def empty(cls) -> "LexicalResource":
        return cls.from_indexes({}, {})


def lexical_expand(lemma: str, resource: LexicalResource) -> list[str]:
    """Cluster ids for a lemma: its synonym cluster, then hypernym ancestors.

    Unknown lemma -> empty list. Exact match only; see expand_surface for the
    stem-fallback variant used during featurization.
    """
    low = lemma.lower()
    out: list[str] = []
    cluster = resource.synonym_index.get(low)
    if cluster is not None:
        out.append(cluster)
    out.extend(resource.hypernym_index.get(low, ()))
    return out


def expand_surface(surface: str, resource: LexicalResource) -> list[str]:
    """Like lexical_expand, but falls back to the Porter stem of the surface
    so inflected forms reach their lemma's clusters."""
    exact = lexical_expand(surface, resource)
    if exact:
        return exact
    stemmed = stem(surface.lower())
    out: list[str] = []
    cluster = resource.stem_synonym_index.get(stemmed)
    if cluster is not None:
        out.append(cluster)
    out.extend(resource.stem_hypernym_index.get(stemmed, ()))
    return out
