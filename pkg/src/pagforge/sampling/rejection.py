"""Conditional generation by rejection sampling in latent space.

Proposals come from the explicit mixture density over latents; a draw is
accepted with probability equal to the product of the attribute scores
at that point (each score already lies in (0, 1], so the ratio needs no
explicit envelope constant). Accepted latents are decoded and the decode
recorded verbatim; validity is judged downstream.

Worker lanes each own a counter-based random stream derived from
(master seed, lane id); merged output is ordered by (lane, draw index)
so results do not depend on how many workers ran.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from pagforge.chem import parse_smiles
from pagforge.sampling.gmm import GaussianMixture

ScoreFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Attribute:
    """One conditioning attribute: a score function mapping latent rows
    to probabilities in (0, 1), and the target polarity (True keeps the
    score, False uses its complement)."""

    score: ScoreFn
    positive: bool = True
    name: str = "attribute"

    def probability(self, z: np.ndarray) -> np.ndarray:
        p = np.asarray(self.score(z), dtype=np.float64)
        return p if self.positive else 1.0 - p


@dataclass(frozen=True)
class AttributeSpec:
    attributes: tuple[Attribute, ...]

    def __post_init__(self):
        if not self.attributes:
            raise ValueError("at least one attribute is required")

    def acceptance_probability(self, z: np.ndarray) -> np.ndarray:
        p = np.ones(np.atleast_2d(z).shape[0])
        for attr in self.attributes:
            p = p * attr.probability(z)
        return p


@dataclass
class DrawRecord:
    lane: int
    draw_index: int
    acceptance_probability: float
    accepted: bool
    decoded: str | None = None
    smiles_valid: bool | None = None


@dataclass
class SampleTrace:
    seed: int
    n_lanes: int
    max_draws: int
    target_accepted: int
    records: list[DrawRecord] = field(default_factory=list)

    @property
    def n_draws(self) -> int:
        return len(self.records)

    @property
    def n_accepted(self) -> int:
        return sum(1 for r in self.records if r.accepted)

    @property
    def acceptance_rate(self) -> float:
        return self.n_accepted / self.n_draws if self.records else 0.0

    @property
    def validity_rate(self) -> float:
        decoded = [r for r in self.records if r.accepted and r.decoded is not None]
        if not decoded:
            return 0.0
        return sum(1 for r in decoded if r.smiles_valid) / len(decoded)

    def manifest(self) -> dict:
        return {
            "seed": self.seed,
            "n_lanes": self.n_lanes,
            "max_draws": self.max_draws,
            "target_accepted": self.target_accepted,
            "n_draws": self.n_draws,
            "n_accepted": self.n_accepted,
            "acceptance_rate": self.acceptance_rate,
            "validity_rate": self.validity_rate,
        }


class BudgetExhausted(RuntimeError):
    """The draw budget ran out with zero acceptances."""


def conditional_sample(
    gmm: GaussianMixture,
    spec: AttributeSpec,
    decoder: Callable[[np.ndarray], str] | None = None,
    target_accepted: int = 100,
    max_draws: int = 100_000,
    seed: int = 0,
    n_lanes: int = 1,
    chunk: int = 512,
) -> tuple[list[np.ndarray], SampleTrace]:
    """Draw latents from the mixture, accept each with probability equal
    to the attribute product, decode what survives.

    Returns (accepted latents in (lane, draw) order, full trace).
    """
    trace = SampleTrace(seed=seed, n_lanes=n_lanes,
                        max_draws=max_draws, target_accepted=target_accepted)
    lane_budget = max_draws // n_lanes
    lane_target = -(-target_accepted // n_lanes)  # ceil division
    accepted_z: list[np.ndarray] = []

    for lane in range(n_lanes):
        rng = np.random.default_rng(np.random.Philox(key=(seed, lane)))
        lane_accepted = 0
        draw_index = 0
        while draw_index < lane_budget and lane_accepted < lane_target:
            n = min(chunk, lane_budget - draw_index)
            zs = gmm.sample(n, seed=int(rng.integers(2**62)))
            probs = spec.acceptance_probability(zs)
            us = rng.random(n)
            for i in range(n):
                p = float(probs[i])
                accept = bool(us[i] < p)
                record = DrawRecord(
                    lane=lane,
                    draw_index=draw_index,
                    acceptance_probability=p,
                    accepted=accept,
                )
                if accept:
                    z = zs[i]
                    accepted_z.append(z)
                    lane_accepted += 1
                    if decoder is not None:
                        decoded = decoder(z)
                        record.decoded = decoded
                        try:
                            parse_smiles(decoded)
                            record.smiles_valid = True
                        except Exception:
                            record.smiles_valid = False
                trace.records.append(record)
                draw_index += 1
                if lane_accepted >= lane_target or draw_index >= lane_budget:
                    break

    if trace.n_accepted == 0:
        raise BudgetExhausted(
            f"no acceptances in {trace.n_draws} draws (budget {max_draws})"
        )
    return accepted_z, trace


def classifier_attribute(classifier, positive: bool = True,
                         name: str = "low_lumo") -> Attribute:
    """Adapt a LatentClassifier into a conditioning attribute."""
    return Attribute(score=classifier.predict_proba, positive=positive, name=name)
