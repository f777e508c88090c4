"""Synthetic-accessibility score in [1, 10] (1 = easy, 10 = hard).

The score combines a fragment-familiarity term (log relative frequency
of each atom's circular environment in the bundled reference corpus)
with complexity penalties for rings, macrocycles, and size, then
rescales onto [1, 10]. Atoms whose radius-2 environment is unseen fall
back to the radius-1 and radius-0 tables at a small penalty, so small
or unusual molecules are not scored as unknown outright. The frequency
table ships with the package and is regenerated by the corpus build
script.
"""

from __future__ import annotations

import math
from functools import lru_cache
from importlib import resources

from pagforge.chem.mol import Molecule
from pagforge.chem.rings import ring_stats
from pagforge.descriptors.fingerprints import atom_environments

_UNKNOWN_FRAGMENT_SCORE = -4.0
_FALLBACK_PENALTY = 0.5  # per radius level dropped
_RAW_MIN = -4.5
_RAW_MAX = 2.5


@lru_cache(maxsize=1)
def _load_fragment_scores() -> dict[int, float]:
    scores: dict[int, float] = {}
    path = resources.files("pagforge.descriptors") / "tables" / "sa_fragments.tsv"
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        env, value = line.split("\t")
        scores[int(env)] = float(value)
    return scores


def fragment_scores_from_counts(counts: dict[int, int]) -> dict[int, float]:
    """Turn raw environment counts into log-relative-frequency scores.

    The median-count environment scores 0; more common fragments score
    positive (familiar, easy), rare ones negative.
    """
    if not counts:
        return {}
    ordered = sorted(counts.values())
    median = ordered[len(ordered) // 2]
    return {
        env: math.log10(count / median)
        for env, count in counts.items()
    }


def molecule_environment_ids(mol: Molecule) -> list[list[int]]:
    """Per heavy atom, its environment ids at radii [0, 1, 2]."""
    envs = atom_environments(mol, radius=2)
    n = mol.num_atoms
    return [[envs[r * n + i] for r in (0, 1, 2)] for i in range(n)]


def _atom_fragment_score(levels: list[int], table: dict[int, float]) -> float:
    # Deepest known environment wins; shallower matches pay a penalty.
    for drop, env in enumerate(reversed(levels)):
        if env in table:
            return table[env] - _FALLBACK_PENALTY * drop
    return _UNKNOWN_FRAGMENT_SCORE


def sa_score(mol: Molecule) -> float:
    table = _load_fragment_scores()
    per_atom = molecule_environment_ids(mol)
    frag = math.fsum(_atom_fragment_score(lv, table) for lv in per_atom)
    frag /= max(1, len(per_atom))

    n = mol.num_atoms
    info = ring_stats(mol)
    size_penalty = n**1.005 - n
    ring_penalty = math.log10(info.ring_count + 1)
    macro_penalty = math.log10(2) if info.max_ring_size > 8 else 0.0

    raw = frag - size_penalty - ring_penalty - macro_penalty
    score = 11.0 - (raw - _RAW_MIN) / (_RAW_MAX - _RAW_MIN) * 9.0
    return min(10.0, max(1.0, score))
