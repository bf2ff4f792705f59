"""File formats: indeterminate-string text files, homology tables, result writers.

IST format (UTF-8 text):
  * ``>ID`` starts a new string
  * ``#`` alone on a line inserts a contig break
  * ``%`` begins a comment line
  * any other non-empty line is one position: whitespace-separated labels

Pairs output: tab-separated with header ``#awci-pairs v1``.
Sets output: one record per line after the ``#awci-sets v1`` header.
Homology input: tab-separated ``genomeA geneA genomeB geneB score`` plus
per-genome gene-order files (one gene id per line, ``#`` for contig breaks).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

from .model import (
    Alphabet,
    AnchoredInterval,
    Dataset,
    FormatError,
    IndeterminateString,
    ValidationError,
    build_string,
)
from .oracle import AwciPair, AwciSet

PAIRS_HEADER = "#awci-pairs v1"
SETS_HEADER = "#awci-sets v1"


def parse_ist(fh: IO[str], alphabet: Alphabet | None = None,
              filename: str = "<ist>") -> Dataset:
    """Parse an IST file into a dataset, with line-accurate errors."""
    if alphabet is None:
        alphabet = Alphabet()
    strings: list[IndeterminateString] = []
    seen: set[str] = set()
    cur_id: str | None = None
    cur_positions: list[list[str]] = []
    cur_breaks: list[int] = []

    def flush(lineno: int) -> None:
        nonlocal cur_id, cur_positions, cur_breaks
        if cur_id is None:
            return
        if not cur_positions:
            raise FormatError(f"{filename}:{lineno}: string {cur_id!r} has no positions")
        try:
            strings.append(build_string(alphabet, cur_id, cur_positions, cur_breaks))
        except ValidationError as exc:
            raise FormatError(f"{filename}:{lineno}: {exc}") from exc
        cur_id, cur_positions, cur_breaks = None, [], []

    lineno = 0
    for lineno, raw in enumerate(fh, start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if line.startswith(">"):
            flush(lineno)
            sid = line[1:].strip()
            if not sid:
                raise FormatError(f"{filename}:{lineno}: missing string id after '>'")
            if sid in seen:
                raise FormatError(f"{filename}:{lineno}: duplicate string id {sid!r}")
            seen.add(sid)
            cur_id = sid
            continue
        if cur_id is None:
            raise FormatError(f"{filename}:{lineno}: position line before any '>' header")
        if line == "#":
            if not cur_positions:
                raise FormatError(f"{filename}:{lineno}: contig break before first position")
            cur_breaks.append(len(cur_positions))
            continue
        labels = line.split()
        if not labels:
            raise FormatError(f"{filename}:{lineno}: position with no characters")
        cur_positions.append(labels)
    flush(lineno)
    if not strings:
        raise FormatError(f"{filename}: no strings found")
    try:
        return Dataset(strings, alphabet)
    except ValidationError as exc:
        raise FormatError(f"{filename}: {exc}") from exc


def write_ist(dataset: Dataset, fh: IO[str]) -> int:
    """Write a dataset in IST format; returns bytes written."""
    count = 0

    def emit(line: str) -> None:
        nonlocal count
        count += fh.write(line + "\n")

    for s in dataset:
        emit(f">{s.id}")
        for p, chars in enumerate(s.positions, start=1):
            labels = sorted(dataset.alphabet.label(c) for c in chars)
            if any(not l or l.split() != [l] for l in labels):
                raise FormatError(f"string {s.id!r}: label not IST-encodable at "
                                  f"position {p}")
            emit(" ".join(labels))
            if p in s.contig_breaks:
                emit("#")
    return count


@dataclass(frozen=True)
class HomologyRecord:
    genome_a: str
    gene_a: str
    genome_b: str
    gene_b: str
    score: float


@dataclass
class HomologyTable:
    """Pairwise similarity records over per-genome ordered gene lists."""
    records: list[HomologyRecord]
    gene_orders: dict[str, list[str]]          # genome -> ordered gene ids
    contig_breaks: dict[str, list[int]]        # genome -> break positions

    def validate(self) -> None:
        gene_pos = {g: set(order) for g, order in self.gene_orders.items()}
        for rec in self.records:
            if not math.isfinite(rec.score) or rec.score < 0:
                raise ValidationError(f"bad score {rec.score} for "
                                      f"{rec.gene_a}/{rec.gene_b}")
            for genome, gene in ((rec.genome_a, rec.gene_a), (rec.genome_b, rec.gene_b)):
                if genome not in gene_pos:
                    raise ValidationError(f"unknown genome {genome!r}")
                if gene not in gene_pos[genome]:
                    raise ValidationError(f"gene {gene!r} not in genome {genome!r}")


def parse_gene_order(fh: IO[str], filename: str = "<genes>") -> tuple[list[str], list[int]]:
    """One gene id per line; '#' marks a contig break."""
    genes: list[str] = []
    breaks: list[int] = []
    for lineno, raw in enumerate(fh, start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if line == "#":
            if not genes:
                raise FormatError(f"{filename}:{lineno}: break before first gene")
            breaks.append(len(genes))
            continue
        genes.append(line)
    return genes, breaks


def parse_homology(fh: IO[str], filename: str = "<homology>") -> list[HomologyRecord]:
    records: list[HomologyRecord] = []
    for lineno, raw in enumerate(fh, start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("%"):
            continue
        fields = line.split("\t")
        if len(fields) != 5:
            raise FormatError(f"{filename}:{lineno}: expected 5 tab-separated fields")
        try:
            score = float(fields[4])
        except ValueError as exc:
            raise FormatError(f"{filename}:{lineno}: bad score {fields[4]!r}") from exc
        records.append(HomologyRecord(fields[0], fields[1], fields[2], fields[3], score))
    return records


def homology_to_strings(table: HomologyTable, threshold: float) -> Dataset:
    """Transform a homology table into indeterminate strings.

    Every record at or above the threshold mints one fresh character shared by
    exactly the two gene positions it relates (homology stays non-transitive);
    every gene also carries a private character so no position set is empty.
    Character minting is order-independent because records are sorted first.
    """
    table.validate()
    alphabet = Alphabet()
    position_of: dict[tuple[str, str], int] = {}
    for genome, order in table.gene_orders.items():
        for idx, gene in enumerate(order, start=1):
            position_of[(genome, gene)] = idx

    sets: dict[str, list[set[str]]] = {
        genome: [{f"{genome}.{gene}"} for gene in order]
        for genome, order in table.gene_orders.items()
    }
    accepted = sorted(
        (r for r in table.records if r.score >= threshold),
        key=lambda r: (r.genome_a, r.gene_a, r.genome_b, r.gene_b, r.score))
    for n, rec in enumerate(accepted):
        char = f"h{n}"
        sets[rec.genome_a][position_of[(rec.genome_a, rec.gene_a)] - 1].add(char)
        sets[rec.genome_b][position_of[(rec.genome_b, rec.gene_b)] - 1].add(char)

    strings = [
        build_string(alphabet, genome, [sorted(s) for s in sets[genome]],
                     table.contig_breaks.get(genome, ()))
        for genome in sorted(table.gene_orders)
    ]
    return Dataset(strings, alphabet)


def write_pairs(pairs: Iterable[AwciPair], fh: IO[str]) -> int:
    """Tab-separated pair records; deterministic given the input order."""
    count = fh.write(PAIRS_HEADER + "\n")
    count += fh.write("stringA\tiA\tjA\tstringB\tkB\tlB\tindels\tsizeA\tsizeB"
                      "\tcommonSetSize\n")
    for p in pairs:
        count += fh.write(
            f"{p.left.string_id}\t{p.left.i}\t{p.left.j}"
            f"\t{p.right.string_id}\t{p.right.i}\t{p.right.j}"
            f"\t{p.indel_total}\t{p.size_left}\t{p.size_right}\t{len(p.common)}\n")
    return count


def write_sets(sets: Sequence[AwciSet], fh: IO[str], *, delta: int, quorum: int) -> int:
    """Structured set records: members, closed flag, search parameters."""
    count = fh.write(SETS_HEADER + "\n")
    for s in sets:
        members = " ".join(f"{m.string_id}:{m.i}-{m.j}" for m in s.members)
        closed = "1" if s.closed else "0"
        count += fh.write(f"{members}\tclosed={closed}\tdelta={delta}\tquorum={quorum}\n")
    return count


def parse_sets(fh: IO[str], filename: str = "<sets>") -> list[tuple[AwciSet, int, int]]:
    """Inverse of write_sets: (set, delta, quorum) per record."""
    header = fh.readline().strip()
    if header != SETS_HEADER:
        raise FormatError(f"{filename}: bad header {header!r}")
    out: list[tuple[AwciSet, int, int]] = []
    for lineno, raw in enumerate(fh, start=2):
        line = raw.rstrip("\n")
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise FormatError(f"{filename}:{lineno}: expected 4 tab-separated fields")
        members = []
        for token in fields[0].split(" "):
            try:
                sid, span = token.rsplit(":", 1)
                i, j = span.split("-")
                members.append(AnchoredInterval(sid, int(i), int(j)))
            except (ValueError, ValidationError) as exc:
                raise FormatError(f"{filename}:{lineno}: bad member {token!r}") from exc
        meta = {}
        for field in fields[1:]:
            key, _, value = field.partition("=")
            meta[key] = value
        try:
            closed = meta["closed"] == "1"
            delta = int(meta["delta"])
            quorum = int(meta["quorum"])
        except (KeyError, ValueError) as exc:
            raise FormatError(f"{filename}:{lineno}: bad metadata") from exc
        out.append((AwciSet(members=tuple(members), closed=closed), delta, quorum))
    return out
