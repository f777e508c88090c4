"""Scaffold/molecule network for the review UI.

Scaffold nodes link to each other below a Dice-distance threshold;
molecule nodes link to the scaffolds derived from them. The edge rule is
threshold-exact: strictly less than the cutoff links, anything else does
not.
"""

from __future__ import annotations

from dataclasses import dataclass

from pagforge.chem import parse_smiles
from pagforge.descriptors import FingerprintBitset, dice_distance, morgan_fingerprint
from pagforge.service.store import AdjudicationStore, Candidate, Scaffold

DEFAULT_THRESHOLD = 0.65


@dataclass(frozen=True)
class NetworkGraph:
    nodes: tuple[dict, ...]
    edges: tuple[dict, ...]
    threshold: float

    def to_dict(self) -> dict:
        return {
            "threshold": self.threshold,
            "nodes": list(self.nodes),
            "edges": list(self.edges),
        }


def build_network(
    scaffolds: list[Scaffold],
    candidates: list[Candidate],
    threshold: float = DEFAULT_THRESHOLD,
    decisions: dict[str, str] | None = None,
    scores: dict[str, float] | None = None,
    fingerprints: dict[str, FingerprintBitset] | None = None,
) -> NetworkGraph:
    """Nodes carry depiction ids, decisions, and scores; ``fingerprints``
    lets callers inject precomputed bitsets keyed by scaffold id."""
    decisions = decisions or {}
    scores = scores or {}
    fps: dict[str, FingerprintBitset] = dict(fingerprints or {})
    for s in scaffolds:
        if s.id not in fps:
            fps[s.id] = morgan_fingerprint(parse_smiles(s.smiles))

    nodes: list[dict] = []
    for s in sorted(scaffolds, key=lambda x: x.id):
        nodes.append({
            "id": s.id,
            "kind": "scaffold",
            "smiles": s.smiles,
            "depiction": f"/api/v1/depict/{s.id}",
            "decision": decisions.get(s.id),
            "score": scores.get(s.id),
            "parent_ids": list(s.parent_ids),
        })
    scaffold_ids = {s.id for s in scaffolds}
    molecule_ids = set()
    for c in sorted(candidates, key=lambda x: x.id):
        derived = [sid for sid in c.scaffold_ids if sid in scaffold_ids]
        if not derived:
            continue
        molecule_ids.add(c.id)
        inherited = None
        for sid in derived:
            if decisions.get(sid):
                inherited = decisions[sid]
        nodes.append({
            "id": c.id,
            "kind": "molecule",
            "smiles": c.smiles,
            "depiction": f"/api/v1/depict/{c.id}",
            "decision": inherited,  # display state from its scaffolds
            "score": c.classifier_score,
            "descriptors": c.descriptors,
        })

    edges: list[dict] = []
    ordered = sorted(scaffolds, key=lambda x: x.id)
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            d = dice_distance(fps[a.id], fps[b.id])
            if d < threshold:
                edges.append({
                    "a": a.id, "b": b.id,
                    "kind": "similarity",
                    "dice_distance": round(d, 6),
                })
    for c in sorted(candidates, key=lambda x: x.id):
        if c.id not in molecule_ids:
            continue
        for sid in c.scaffold_ids:
            if sid in scaffold_ids:
                edges.append({"a": c.id, "b": sid, "kind": "derivation"})

    return NetworkGraph(nodes=tuple(nodes), edges=tuple(edges),
                        threshold=threshold)


def network_from_store(store: AdjudicationStore,
                       threshold: float = DEFAULT_THRESHOLD) -> NetworkGraph:
    decisions = store.effective_labels()
    scores = {sid: store.scaffold_score(sid) for sid in store.scaffolds}
    return build_network(
        list(store.scaffolds.values()),
        list(store.candidates.values()),
        threshold=threshold,
        decisions=decisions,
        scores=scores,
    )
