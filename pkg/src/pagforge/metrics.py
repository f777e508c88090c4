"""Generation-quality and distribution-distance metrics.

Set metrics (uniqueness, novelty, internal diversity), reference
comparisons (nearest-neighbor similarity, fragment and scaffold
frequency cosines), 1-D Wasserstein distances over scalar descriptors,
and a descriptor-space Fréchet distance standing in for the usual
learned-embedding variant (labeled ``fcd_substitute`` everywhere; not
comparable to published numbers).
"""

from __future__ import annotations

import hashlib
import json
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from pagforge.chem import canonical_smiles, parse_smiles
from pagforge.descriptors import descriptor_vector, morgan_fingerprint, similarity
from pagforge.screening import brics_fragments, murcko_scaffold


def _canonical_set(smiles_list: list[str]) -> list[str]:
    return [canonical_smiles(parse_smiles(s)) for s in smiles_list]


def uniqueness(gen: list[str]) -> float:
    """Distinct canonical forms over set size."""
    if not gen:
        raise ValueError("empty set")
    canon = _canonical_set(gen)
    return len(set(canon)) / len(canon)


def novelty(gen: list[str], train: list[str]) -> float:
    """Fraction of unique generated molecules absent from the training
    set."""
    if not gen:
        raise ValueError("empty set")
    gen_unique = set(_canonical_set(gen))
    train_set = set(_canonical_set(train))
    return sum(1 for s in gen_unique if s not in train_set) / len(gen_unique)


def internal_diversity(gen: list[str]) -> float:
    """1 - mean pairwise Tanimoto over all ordered pairs (self included,
    so a singleton set scores 0)."""
    if not gen:
        raise ValueError("empty set")
    fps = [morgan_fingerprint(parse_smiles(s)) for s in gen]
    n = len(fps)
    total = 0.0
    for i in range(n):
        total += 1.0  # self pair
        for j in range(i + 1, n):
            total += 2.0 * similarity(fps[i], fps[j], "tanimoto")
    return 1.0 - total / (n * n)


def snn(gen: list[str], ref: list[str]) -> float:
    """Mean over generated molecules of max Tanimoto to the reference."""
    if not gen or not ref:
        raise ValueError("empty set")
    ref_fps = [morgan_fingerprint(parse_smiles(s)) for s in ref]
    scores = []
    for s in gen:
        fp = morgan_fingerprint(parse_smiles(s))
        scores.append(max(similarity(fp, rf, "tanimoto") for rf in ref_fps))
    return float(np.mean(scores))


def _fragment_counts(smiles_list: list[str]) -> Counter[str]:
    counts: Counter[str] = Counter()
    for s in smiles_list:
        for frag in brics_fragments(parse_smiles(s)):
            counts[canonical_smiles(frag)] += 1
    return counts


def _scaffold_counts(smiles_list: list[str]) -> Counter[str]:
    counts: Counter[str] = Counter()
    for s in smiles_list:
        scaffold = murcko_scaffold(parse_smiles(s))
        if scaffold is not None and scaffold.num_atoms:
            counts[canonical_smiles(scaffold)] += 1
    return counts


def cosine_of_counts(a: Counter[str], b: Counter[str]) -> float:
    if not a or not b:
        raise ValueError("cosine undefined for an all-zero frequency vector")
    if a == b:
        return 1.0
    keys = set(a) | set(b)
    dot = sum(a[k] * b[k] for k in keys)
    na = math.sqrt(sum(v * v for v in a.values()))
    nb = math.sqrt(sum(v * v for v in b.values()))
    return dot / (na * nb)


def frag_similarity(gen: list[str], ref: list[str]) -> float:
    """Cosine similarity of retrosynthetic-fragment frequency vectors."""
    if not gen or not ref:
        raise ValueError("empty set")
    return cosine_of_counts(_fragment_counts(gen), _fragment_counts(ref))


def scaf_similarity(gen: list[str], ref: list[str]) -> float:
    """Cosine similarity of scaffold frequency vectors. Raises when a
    side has no scaffolds at all."""
    if not gen or not ref:
        raise ValueError("empty set")
    a, b = _scaffold_counts(gen), _scaffold_counts(ref)
    if not a or not b:
        raise ValueError("scaffold similarity undefined: a side has no scaffolds")
    return cosine_of_counts(a, b)


def wasserstein1(samples_a, samples_b) -> float:
    """1-D earth mover's distance by the sorted-sample quantile integral."""
    a = np.sort(np.asarray(samples_a, dtype=np.float64))
    b = np.sort(np.asarray(samples_b, dtype=np.float64))
    if a.size == 0 or b.size == 0:
        raise ValueError("empty sample set")
    # Merge the quantile breakpoints of both empirical CDFs.
    qs = np.union1d(np.arange(1, a.size) / a.size,
                    np.arange(1, b.size) / b.size)
    edges = np.concatenate([[0.0], qs, [1.0]])
    widths = np.diff(edges)
    mids = (edges[:-1] + edges[1:]) / 2.0
    qa = a[np.minimum((mids * a.size).astype(int), a.size - 1)]
    qb = b[np.minimum((mids * b.size).astype(int), b.size - 1)]
    return float(np.sum(widths * np.abs(qa - qb)))


def gaussian_frechet(mu1: np.ndarray, cov1: np.ndarray,
                     mu2: np.ndarray, cov2: np.ndarray) -> float:
    """Fréchet distance between Gaussians via symmetric square roots:
    |mu1-mu2|^2 + tr(C1 + C2 - 2 (C1^1/2 C2 C1^1/2)^1/2)."""

    def sqrtm_sym(m: np.ndarray) -> np.ndarray:
        vals, vecs = np.linalg.eigh(m)
        vals = np.clip(vals, 0.0, None)
        return (vecs * np.sqrt(vals)) @ vecs.T

    mu1 = np.atleast_1d(mu1)
    mu2 = np.atleast_1d(mu2)
    cov1 = np.atleast_2d(cov1)
    cov2 = np.atleast_2d(cov2)
    s1 = sqrtm_sym(cov1)
    inner = sqrtm_sym(s1 @ cov2 @ s1)
    value = float(((mu1 - mu2) ** 2).sum() + np.trace(cov1 + cov2 - 2.0 * inner))
    return max(0.0, value)


def _descriptor_matrix(smiles_list: list[str]) -> np.ndarray:
    return np.array([
        descriptor_vector(parse_smiles(s)).as_tuple() for s in smiles_list
    ])


def frechet_descriptor_distance(gen: list[str], ref: list[str]) -> tuple[float, bool]:
    """Descriptor-space Fréchet distance, standardized by the reference
    set's statistics. Returns (distance, ridge_applied)."""
    if len(gen) < 2 or len(ref) < 2:
        raise ValueError("need at least two molecules per set")
    x_gen = _descriptor_matrix(gen)
    x_ref = _descriptor_matrix(ref)

    center = x_ref.mean(axis=0)
    scale = x_ref.std(axis=0)
    scale[scale == 0] = 1.0
    x_gen = (x_gen - center) / scale
    x_ref = (x_ref - center) / scale

    mu_g, mu_r = x_gen.mean(axis=0), x_ref.mean(axis=0)
    cov_g = np.cov(x_gen, rowvar=False)
    cov_r = np.cov(x_ref, rowvar=False)

    ridge = False
    for cov in (cov_g, cov_r):
        if np.linalg.matrix_rank(cov) < cov.shape[0]:
            ridge = True
    if ridge:
        eye = np.eye(cov_g.shape[0]) * 1e-6
        cov_g = cov_g + eye
        cov_r = cov_r + eye
    return gaussian_frechet(mu_g, cov_g, mu_r, cov_r), ridge


@dataclass(frozen=True)
class MetricReport:
    fcd_substitute: float
    snn: float
    frag: float
    scaf: float
    wasserstein_mw: float
    wasserstein_logp: float
    wasserstein_sa: float
    intdiv: float
    uniqueness: float
    novelty: float
    n_gen: int
    n_ref: int
    n_train: int
    config_hash: str
    ridge_applied: bool = False

    def to_dict(self) -> dict:
        return {
            "fcd_substitute": self.fcd_substitute,
            "snn": self.snn, "frag": self.frag, "scaf": self.scaf,
            "wasserstein_mw": self.wasserstein_mw,
            "wasserstein_logp": self.wasserstein_logp,
            "wasserstein_sa": self.wasserstein_sa,
            "intdiv": self.intdiv, "uniqueness": self.uniqueness,
            "novelty": self.novelty, "n_gen": self.n_gen,
            "n_ref": self.n_ref, "n_train": self.n_train,
            "config_hash": self.config_hash,
            "ridge_applied": self.ridge_applied,
        }

    def table(self) -> str:
        header = (f"{'FCD*':>8} {'SNN':>7} {'Frag.':>7} {'Scaf.':>7} "
                  f"{'MW':>9} {'logP':>7} {'SA':>7} "
                  f"{'IntDiv':>7} {'Uniq.':>7} {'Nov.':>7}")
        row = (f"{self.fcd_substitute:8.3f} {self.snn:7.3f} "
               f"{self.frag:7.3f} {self.scaf:7.3f} "
               f"{self.wasserstein_mw:9.3f} {self.wasserstein_logp:7.3f} "
               f"{self.wasserstein_sa:7.3f} {self.intdiv:7.3f} "
               f"{self.uniqueness:7.3f} {self.novelty:7.3f}")
        note = ("FCD*: descriptor-space substitute; not comparable to "
                "learned-embedding implementations")
        return "\n".join([header, row, note])


def metric_report(gen: list[str], ref: list[str],
                  train: list[str] | None = None) -> MetricReport:
    """Full report of the distance/similarity and quality columns."""
    train = train if train is not None else ref
    d_gen = _descriptor_matrix(gen)
    d_ref = _descriptor_matrix(ref)
    fcd, ridge = frechet_descriptor_distance(gen, ref)
    config = {
        "fingerprint": {"radius": 2, "width": 2048},
        "similarity": "tanimoto",
        "descriptors": ["mw", "logp", "sa", "num_atoms", "ring_count",
                        "max_ring_size", "fluorine_fraction"],
    }
    return MetricReport(
        fcd_substitute=fcd,
        snn=snn(gen, ref),
        frag=frag_similarity(gen, ref),
        scaf=scaf_similarity(gen, ref),
        wasserstein_mw=wasserstein1(d_gen[:, 0], d_ref[:, 0]),
        wasserstein_logp=wasserstein1(d_gen[:, 1], d_ref[:, 1]),
        wasserstein_sa=wasserstein1(d_gen[:, 2], d_ref[:, 2]),
        intdiv=internal_diversity(gen),
        uniqueness=uniqueness(gen),
        novelty=novelty(gen, train),
        n_gen=len(gen),
        n_ref=len(ref),
        n_train=len(train),
        config_hash=hashlib.sha256(
            json.dumps(config, sort_keys=True).encode()).hexdigest()[:16],
        ridge_applied=ridge,
    )
