"""Diagnostic records collected while parsing real-world documents.

Parsing never hard-fails on messy input: malformed markers, missing
reference sections and unresolved keys are recorded here and surfaced
in logs and in the report footer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True)
class DiagnosticRecord:
    doc_id: str
    kind: str
    span: tuple[int, int] | None
    message: str

    def as_line(self) -> str:
        where = f"{self.span[0]}..{self.span[1]}" if self.span is not None else "-"
        return f"{self.doc_id}\t{self.kind}\t{where}\t{self.message}"


class Diagnostics:
    """Ordered collector of DiagnosticRecords."""

    def __init__(self) -> None:
        self.records: list[DiagnosticRecord] = []

    def emit(self, doc_id: str, kind: str, span: tuple[int, int] | None, message: str) -> DiagnosticRecord:
        rec = DiagnosticRecord(doc_id, kind, span, message)
        self.records.append(rec)
        return rec

    def __iter__(self) -> Iterator[DiagnosticRecord]:
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __bool__(self) -> bool:
        return bool(self.records)

    def lines(self) -> list[str]:
        return [rec.as_line() for rec in self.records]
