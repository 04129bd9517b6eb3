"""Attention-weight cost calculators for five long-document architectures.

Each formula counts computed attention weights with unit constants, in
abstract units; no wall-clock claim is made. Symbols: t sentences per
document, l tokens per sentence, g global-attention tokens, w local window
size, c recurrence segment length.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, fields
from typing import Iterable, TextIO

CSV_COLUMNS = ("t", "l", "g", "w", "c", "roberta", "smith", "longformer", "xlnet", "aose")


@dataclass(frozen=True)
class CostQuery:
    t: int
    l: int
    g: int
    w: int
    c: int

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{f.name} must be a positive integer, got {value!r}")
        if self.g > self.t * self.l:
            raise ValueError(
                f"global tokens g={self.g} cannot exceed the sequence length t*l={self.t * self.l}"
            )


@dataclass(frozen=True)
class CostReport:
    roberta: int
    smith: int
    longformer: int
    xlnet: int
    aose: int

    def to_json_dict(self) -> dict:
        return {"roberta": self.roberta, "smith": self.smith, "longformer": self.longformer,
                "xlnet": self.xlnet, "aose": self.aose}


def costs(q: CostQuery) -> CostReport:
    """Exact integer evaluation of each architecture's attention-weight count.

    Full self-attention over t*l tokens costs (t*l)^2; the hierarchical model
    pays per-sentence attention plus sentence-pair attention; windowed-sparse
    attention pays g global rows plus a w-wide window for the rest; the
    recurrent model pays c locations per token; sentence pooling pays
    per-sentence attention plus one weight per sentence.
    """
    t, l, g, w, c = q.t, q.l, q.g, q.w, q.c
    return CostReport(
        roberta=t * t * l * l,
        smith=t * l * l + t * t,
        longformer=g * t * l + (t * l - g) * w,
        xlnet=t * l * c,
        aose=t * l * l + t,
    )


def sweep(queries: Iterable[CostQuery]) -> list[tuple[int, ...]]:
    """One row per query, in input order: (t, l, g, w, c, five costs)."""
    rows = []
    for q in queries:
        r = costs(q)
        rows.append((q.t, q.l, q.g, q.w, q.c, r.roberta, r.smith, r.longformer, r.xlnet, r.aose))
    return rows


def write_sweep_csv(queries: Iterable[CostQuery], out: TextIO) -> int:
    """Emit sweep rows as CSV with the standard header; returns the row count."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    rows = sweep(queries)
    writer.writerows(rows)
    return len(rows)
