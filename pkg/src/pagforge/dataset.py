"""Corpus ingestion, cation selection, property windowing, and labeling.

Input formats: SMILES-per-line text (optional tab-separated id) and CSV
with header ``smiles,id,lumo_ev``. Filtering emits a JSON-serializable
report of per-rule drop counts.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from pagforge.chem import Molecule, SmilesParseError, canonical_smiles, parse_smiles
from pagforge.descriptors import descriptor_vector


@dataclass(frozen=True)
class Record:
    smiles: str
    id: str
    lumo_ev: float | None = None

    def __post_init__(self):
        if self.lumo_ev is not None and not math.isfinite(self.lumo_ev):
            raise ValueError(f"record {self.id}: lumo_ev must be finite")


@dataclass(frozen=True)
class Bounds:
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"window min {self.lo} exceeds max {self.hi}")

    def contains(self, value: float) -> bool:
        return self.lo <= value <= self.hi


@dataclass(frozen=True)
class PropertyWindow:
    """Inclusive per-property bounds plus the allowed element set."""

    num_atoms: Bounds
    logp: Bounds
    sa: Bounds
    mw: Bounds
    ring_count: Bounds
    max_ring_size: Bounds
    elements: frozenset[str]

    @classmethod
    def from_dict(cls, payload: dict) -> "PropertyWindow":
        def bounds(name: str) -> Bounds:
            lo, hi = payload[name]
            return Bounds(float(lo), float(hi))

        return cls(
            num_atoms=bounds("num_atoms"),
            logp=bounds("logp"),
            sa=bounds("sa"),
            mw=bounds("mw"),
            ring_count=bounds("ring_count"),
            max_ring_size=bounds("max_ring_size"),
            elements=frozenset(payload["elements"]),
        )

    @classmethod
    def from_json(cls, path: str | Path) -> "PropertyWindow":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def admits(self, mol: Molecule) -> bool:
        if any(a.element not in self.elements for a in mol.atoms):
            return False
        d = descriptor_vector(mol)
        return (
            self.num_atoms.contains(d.num_atoms)
            and self.logp.contains(d.logp)
            and self.sa.contains(d.sa)
            and self.mw.contains(d.mw)
            and self.ring_count.contains(d.ring_count)
            and self.max_ring_size.contains(d.max_ring_size)
        )


@dataclass
class IngestReport:
    total_lines: int = 0
    parsed: int = 0
    parse_errors: list[tuple[int, str]] = field(default_factory=list)
    duplicate_ids: list[str] = field(default_factory=list)
    duplicate_canonical: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "total_lines": self.total_lines,
            "parsed": self.parsed,
            "parse_errors": [
                {"line": line, "error": err} for line, err in self.parse_errors
            ],
            "duplicate_ids": self.duplicate_ids,
            "duplicate_canonical": self.duplicate_canonical,
        }


def ingest(path: str | Path, strict: bool = False) -> tuple[list[Record], IngestReport]:
    """Read one record per non-blank line; CSV files must carry the
    ``smiles,id,lumo_ev`` header. Unparseable SMILES are reported with
    their line number and either skipped or, with ``strict``, fatal."""
    path = Path(path)
    report = IngestReport()
    records: list[Record] = []
    seen_ids: set[str] = set()
    seen_canonical: set[str] = set()

    rows: list[tuple[int, str, str, float | None]] = []
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        reader = csv.DictReader(text.splitlines())
        if reader.fieldnames is None or "smiles" not in reader.fieldnames:
            raise ValueError(f"{path}: CSV must have a 'smiles' column")
        for lineno, row in enumerate(reader, start=2):
            smiles = (row.get("smiles") or "").strip()
            if not smiles:
                continue
            rid = (row.get("id") or "").strip() or f"row{lineno}"
            raw_lumo = (row.get("lumo_ev") or "").strip()
            lumo = float(raw_lumo) if raw_lumo else None
            rows.append((lineno, smiles, rid, lumo))
    else:
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            smiles, _, rid = line.partition("\t")
            rows.append((lineno, smiles.strip(), rid.strip() or f"line{lineno}", None))

    for lineno, smiles, rid, lumo in rows:
        report.total_lines += 1
        try:
            mol = parse_smiles(smiles)
        except SmilesParseError as exc:
            report.parse_errors.append((lineno, str(exc)))
            if strict:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
            continue
        canonical = canonical_smiles(mol)
        if rid in seen_ids:
            report.duplicate_ids.append(rid)
        if canonical in seen_canonical:
            report.duplicate_canonical.append(canonical)
        seen_ids.add(rid)
        seen_canonical.add(canonical)
        report.parsed += 1
        records.append(Record(smiles=smiles, id=rid, lumo_ev=lumo))
    return records, report


def keep_cations(records: list[Record]) -> list[Record]:
    """Retain single-component molecules with net formal charge +1."""
    kept = []
    for rec in records:
        mol = parse_smiles(rec.smiles)
        if len(mol.components()) == 1 and mol.net_charge() == 1:
            kept.append(rec)
    return kept


def filter_window(
    records: list[Record], window: PropertyWindow
) -> tuple[list[Record], dict[str, int]]:
    """Keep records inside every inclusive bound with elements in the
    allowed set; also returns per-rule drop counts."""
    drops = {
        "elements": 0, "num_atoms": 0, "logp": 0, "sa": 0,
        "mw": 0, "ring_count": 0, "max_ring_size": 0,
    }
    kept = []
    for rec in records:
        mol = parse_smiles(rec.smiles)
        if any(a.element not in window.elements for a in mol.atoms):
            drops["elements"] += 1
            continue
        d = descriptor_vector(mol)
        checks = [
            ("num_atoms", window.num_atoms, d.num_atoms),
            ("logp", window.logp, d.logp),
            ("sa", window.sa, d.sa),
            ("mw", window.mw, d.mw),
            ("ring_count", window.ring_count, d.ring_count),
            ("max_ring_size", window.max_ring_size, d.max_ring_size),
        ]
        failed = None
        for name, bounds, value in checks:
            if not bounds.contains(value):
                failed = name
                break
        if failed is None:
            kept.append(rec)
        else:
            drops[failed] += 1
    return kept, drops


def label_lumo(records: list[Record], threshold_ev: float = -5.0) -> list[int]:
    """Binary labels: 1 when lumo_ev is at or below the threshold."""
    labels = []
    for rec in records:
        if rec.lumo_ev is None:
            raise ValueError(f"record {rec.id} has no lumo_ev")
        labels.append(1 if rec.lumo_ev <= threshold_ev else 0)
    return labels
