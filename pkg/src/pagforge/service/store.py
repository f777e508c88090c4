"""Candidate store and append-only label log.

Candidates and their derived scaffolds load from one JSON file; labels
live in a newline-delimited JSON log that is replayed at startup, so
every effective state is a pure function of (candidate file, label log).
Writes are serialized and fsynced.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

DECISIONS = ("accept", "uncertain", "reject")


class UnknownScaffoldError(KeyError):
    pass


class InvalidDecisionError(ValueError):
    pass


@dataclass(frozen=True)
class Candidate:
    id: str
    smiles: str  # canonical
    scaffold_ids: tuple[str, ...]
    descriptors: dict
    classifier_score: float
    max_ref_similarity: float

    def __post_init__(self):
        if not (0.0 < self.classifier_score < 1.0):
            raise ValueError(
                f"candidate {self.id}: classifier_score must lie in (0, 1)")
        if not (0.0 <= self.max_ref_similarity <= 1.0):
            raise ValueError(
                f"candidate {self.id}: max_ref_similarity out of [0, 1]")

    def to_dict(self) -> dict:
        return {
            "id": self.id, "smiles": self.smiles,
            "scaffold_ids": list(self.scaffold_ids),
            "descriptors": self.descriptors,
            "classifier_score": self.classifier_score,
            "max_ref_similarity": self.max_ref_similarity,
        }


@dataclass(frozen=True)
class Scaffold:
    id: str
    smiles: str
    parent_ids: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"id": self.id, "smiles": self.smiles,
                "parent_ids": list(self.parent_ids)}


@dataclass(frozen=True)
class LabelRecord:
    scaffold_id: str
    decision: str
    annotator: str
    timestamp: str
    note: str = ""

    def to_json(self) -> str:
        return json.dumps({
            "scaffold_id": self.scaffold_id, "decision": self.decision,
            "annotator": self.annotator, "timestamp": self.timestamp,
            "note": self.note,
        }, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "LabelRecord":
        payload = json.loads(line)
        return cls(
            scaffold_id=payload["scaffold_id"],
            decision=payload["decision"],
            annotator=payload.get("annotator", "default"),
            timestamp=payload["timestamp"],
            note=payload.get("note", ""),
        )


def write_candidate_file(path: str | Path, candidates: list[Candidate],
                         scaffolds: list[Scaffold]) -> None:
    payload = {
        "candidates": [c.to_dict() for c in sorted(candidates, key=lambda c: c.id)],
        "scaffolds": [s.to_dict() for s in sorted(scaffolds, key=lambda s: s.id)],
    }
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


class AdjudicationStore:
    """Loads candidates once; labels append to the log and replay on
    startup. Reads see consistent snapshots (the effective map is
    rebuilt under the writer lock)."""

    def __init__(self, candidates_path: str | Path, labels_path: str | Path):
        self.candidates_path = Path(candidates_path)
        self.labels_path = Path(labels_path)
        self._lock = threading.Lock()

        payload = json.loads(self.candidates_path.read_text())
        self.candidates: dict[str, Candidate] = {}
        for entry in payload["candidates"]:
            c = Candidate(
                id=entry["id"], smiles=entry["smiles"],
                scaffold_ids=tuple(entry["scaffold_ids"]),
                descriptors=entry["descriptors"],
                classifier_score=entry["classifier_score"],
                max_ref_similarity=entry["max_ref_similarity"],
            )
            self.candidates[c.id] = c
        self.scaffolds: dict[str, Scaffold] = {}
        for entry in payload["scaffolds"]:
            s = Scaffold(id=entry["id"], smiles=entry["smiles"],
                         parent_ids=tuple(entry["parent_ids"]))
            self.scaffolds[s.id] = s

        self._history: list[LabelRecord] = []
        if self.labels_path.exists():
            for line in self.labels_path.read_text().splitlines():
                line = line.strip()
                if line:
                    self._history.append(LabelRecord.from_json(line))

    # ------------------------------------------------------------- labels

    def submit_label(self, scaffold_id: str, decision: str,
                     annotator: str = "default", note: str = "",
                     timestamp: str | None = None) -> LabelRecord:
        if decision not in DECISIONS:
            raise InvalidDecisionError(
                f"decision must be one of {DECISIONS}, got {decision!r}")
        if scaffold_id not in self.scaffolds:
            raise UnknownScaffoldError(scaffold_id)
        record = LabelRecord(
            scaffold_id=scaffold_id,
            decision=decision,
            annotator=annotator,
            timestamp=timestamp or datetime.now(timezone.utc).isoformat(),
            note=note,
        )
        with self._lock:
            with open(self.labels_path, "a") as fh:
                fh.write(record.to_json() + "\n")
                fh.flush()
                os.fsync(fh.fileno())
            self._history.append(record)
        return record

    def label_history(self) -> list[LabelRecord]:
        return list(self._history)

    def effective_labels(self) -> dict[str, str]:
        """Latest decision per scaffold (append order breaks timestamp
        ties, so replaying the log reconstructs this map exactly)."""
        effective: dict[str, str] = {}
        for record in self._history:
            effective[record.scaffold_id] = record.decision
        return effective

    def decision_counts(self) -> dict[str, int]:
        counts = {d: 0 for d in DECISIONS}
        for decision in self.effective_labels().values():
            counts[decision] += 1
        counts["unlabeled"] = len(self.scaffolds) - sum(
            counts[d] for d in DECISIONS)
        return counts

    # ------------------------------------------------------------- export

    def scaffold_score(self, scaffold_id: str) -> float:
        """Mean classifier score over the scaffold's parent molecules."""
        scaffold = self.scaffolds[scaffold_id]
        scores = [self.candidates[p].classifier_score
                  for p in scaffold.parent_ids if p in self.candidates]
        return sum(scores) / len(scores) if scores else 0.5

    def export(self) -> dict:
        if not self._history:
            raise ValueError("no labels recorded yet")
        effective = self.effective_labels()
        groups: dict[str, list[dict]] = {d: [] for d in DECISIONS}
        for scaffold_id in sorted(effective):
            decision = effective[scaffold_id]
            scaffold = self.scaffolds[scaffold_id]
            parents = []
            for pid in scaffold.parent_ids:
                cand = self.candidates.get(pid)
                if cand is None:
                    continue
                parents.append({
                    "id": cand.id,
                    "smiles": cand.smiles,
                    # Explicitly a model probability, not a computed
                    # orbital energy.
                    "classifier_score": cand.classifier_score,
                    "descriptors": cand.descriptors,
                })
            groups[decision].append({
                "scaffold_id": scaffold_id,
                "smiles": scaffold.smiles,
                "mean_classifier_score": self.scaffold_score(scaffold_id),
                "parents": parents,
            })
        mean_scores = {}
        for decision, members in groups.items():
            if members:
                mean_scores[decision] = sum(
                    m["mean_classifier_score"] for m in members) / len(members)
        return {
            "score_semantics": "classifier probability of the low-orbital-energy class",
            "counts": {d: len(groups[d]) for d in DECISIONS},
            "mean_classifier_score_per_decision": mean_scores,
            "groups": groups,
        }

    def export_text(self) -> str:
        return json.dumps(self.export(), indent=2, sort_keys=True) + "\n"
