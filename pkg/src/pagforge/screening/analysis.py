"""Similarity binning, scaffold accounting, and pairwise-distance
histograms over generated candidate sets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from pagforge.chem import Molecule, canonical_smiles, parse_smiles
from pagforge.descriptors import morgan_fingerprint, similarity
from pagforge.screening.brics import brics_fragments
from pagforge.screening.filters import is_sulfonium
from pagforge.screening.murcko import murcko_scaffold


def similarity_binning(
    generated: list[tuple[str, str]],
    reference: list[str],
    bin_width: float = 0.1,
    cap: int = 100,
    seed: int = 0,
    kind: str = "dice",
) -> tuple[list[tuple[str, str]], dict[int, int]]:
    """Bucket generated molecules by their maximum fingerprint similarity
    to the reference set and keep at most ``cap`` per bucket, sampled
    uniformly with the seed. Exact matches (similarity 1.0) are excluded.

    Returns (selected (id, smiles) pairs in (bin, input-order) order,
    per-bin total counts before capping).
    """
    if not reference:
        raise ValueError("reference set is empty")
    ref_fps = [morgan_fingerprint(parse_smiles(s)) for s in reference]

    bins: dict[int, list[int]] = {}
    n_bins = int(round(1.0 / bin_width))
    for pos, (_, smiles) in enumerate(generated):
        fp = morgan_fingerprint(parse_smiles(smiles))
        best = max(similarity(fp, rf, kind) for rf in ref_fps)
        if best >= 1.0:
            continue
        k = min(int(best / bin_width), n_bins - 1)
        bins.setdefault(k, []).append(pos)

    rng = np.random.default_rng(np.random.Philox(key=seed))
    selected: list[tuple[str, str]] = []
    for k in sorted(bins):
        members = bins[k]
        if len(members) > cap:
            chosen = rng.choice(len(members), size=cap, replace=False)
            members = [members[i] for i in sorted(chosen)]
        selected.extend(generated[i] for i in members)
    counts = {k: len(v) for k, v in bins.items()}
    return selected, counts


@dataclass(frozen=True)
class ScaffoldRecord:
    scaffold: str  # canonical SMILES
    parents: tuple[str, ...]  # molecule ids, non-empty
    is_sulfonium: bool
    is_novel: bool

    def __post_init__(self):
        if not self.parents:
            raise ValueError("scaffold record needs at least one parent")


def molecule_scaffolds(mol: Molecule) -> list[str]:
    """Canonical scaffolds of the molecule's retrosynthetic fragments
    (empty scaffolds dropped, duplicates removed)."""
    out: list[str] = []
    seen: set[str] = set()
    for frag in brics_fragments(mol):
        scaffold = murcko_scaffold(frag)
        if scaffold is None or scaffold.num_atoms == 0:
            continue
        smiles = canonical_smiles(scaffold)
        if smiles not in seen:
            seen.add(smiles)
            out.append(smiles)
    return out


def extract_scaffold_records(
    molecules: list[tuple[str, str]],
    reference_scaffolds: set[str],
) -> list[ScaffoldRecord]:
    """One record per distinct scaffold over the molecule set, with the
    parent molecules that produced it."""
    parents: dict[str, list[str]] = {}
    for mol_id, smiles in molecules:
        for scaffold in molecule_scaffolds(parse_smiles(smiles)):
            parents.setdefault(scaffold, []).append(mol_id)
    records = []
    for scaffold in sorted(parents):
        sulfonium = is_sulfonium(parse_smiles(scaffold))
        records.append(ScaffoldRecord(
            scaffold=scaffold,
            parents=tuple(parents[scaffold]),
            is_sulfonium=sulfonium,
            is_novel=sulfonium and scaffold not in reference_scaffolds,
        ))
    return records


@dataclass(frozen=True)
class ScaffoldSummary:
    molecules: int
    all_scaffolds: int
    sulfonium_scaffolds: int
    novel_sulfonium_scaffolds: int

    def as_counts(self) -> tuple[int, int, int, int]:
        return (self.molecules, self.all_scaffolds,
                self.sulfonium_scaffolds, self.novel_sulfonium_scaffolds)


def reference_scaffold_set(reference: list[str]) -> set[str]:
    out: set[str] = set()
    for smiles in reference:
        out.update(molecule_scaffolds(parse_smiles(smiles)))
    return out


def scaffold_summary(
    generated: list[tuple[str, str]],
    reference: list[str],
) -> tuple[ScaffoldSummary, ScaffoldSummary, list[ScaffoldRecord]]:
    """Counts for both sets after identical fragmentation and scaffold
    extraction; novelty is judged against the reference scaffold set."""
    ref_scaffolds = reference_scaffold_set(reference)
    records = extract_scaffold_records(generated, ref_scaffolds)

    gen = ScaffoldSummary(
        molecules=len(generated),
        all_scaffolds=len(records),
        sulfonium_scaffolds=sum(1 for r in records if r.is_sulfonium),
        novel_sulfonium_scaffolds=sum(1 for r in records if r.is_novel),
    )
    ref_sulfonium = sum(
        1 for s in ref_scaffolds if is_sulfonium(parse_smiles(s))
    )
    ref = ScaffoldSummary(
        molecules=len(reference),
        all_scaffolds=len(ref_scaffolds),
        sulfonium_scaffolds=ref_sulfonium,
        novel_sulfonium_scaffolds=0,
    )
    return gen, ref, records


def summary_table(gen: ScaffoldSummary, ref: ScaffoldSummary) -> str:
    rows = [
        ("Sulfonium cations", ref.molecules, gen.molecules),
        ("All scaffolds", ref.all_scaffolds, gen.all_scaffolds),
        ("Sulfonium scaffolds", ref.sulfonium_scaffolds, gen.sulfonium_scaffolds),
        ("Novel sulfonium scaffolds", "--", gen.novel_sulfonium_scaffolds),
    ]
    width = max(len(r[0]) for r in rows)
    lines = [f"{'':{width}}  Reference  Generated"]
    for label, r, g in rows:
        lines.append(f"{label:{width}}  {r!s:>9}  {g!s:>9}")
    return "\n".join(lines)


@dataclass(frozen=True)
class DiceHistogram:
    bin_width: float
    counts: tuple[int, ...]
    mode_bin: int
    n_molecules: int

    @property
    def n_pairs(self) -> int:
        return self.n_molecules * (self.n_molecules - 1) // 2

    def to_csv(self) -> str:
        lines = ["bin_low,bin_high,count"]
        for k, count in enumerate(self.counts):
            lo = k * self.bin_width
            hi = min(1.0, (k + 1) * self.bin_width)
            lines.append(f"{lo:.4f},{hi:.4f},{count}")
        return "\n".join(lines) + "\n"


def dice_histogram(smiles_list: list[str],
                   bin_width: float = 0.05) -> DiceHistogram:
    """Histogram of all pairwise Dice distances; mode ties resolve to the
    lowest bin."""
    if len(smiles_list) < 2:
        raise ValueError("need at least two molecules for pairwise distances")
    fps = [morgan_fingerprint(parse_smiles(s)) for s in smiles_list]
    n_bins = int(round(1.0 / bin_width))
    counts = [0] * n_bins
    for i in range(len(fps)):
        for j in range(i + 1, len(fps)):
            d = 1.0 - similarity(fps[i], fps[j], "dice")
            k = min(int(d / bin_width), n_bins - 1)
            counts[k] += 1
    mode_bin = max(range(n_bins), key=lambda k: (counts[k], -k))
    return DiceHistogram(
        bin_width=bin_width,
        counts=tuple(counts),
        mode_bin=mode_bin,
        n_molecules=len(smiles_list),
    )
