"""Diagonal-covariance Gaussian mixture fit by expectation-maximization.

Initialization is k-means++ seeding on the data; EM runs to convergence
of the mean per-point log-likelihood. Components whose variance hits the
floor in every dimension are pruned with a warning. Multiple restarts
keep the best final likelihood.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np

log = logging.getLogger(__name__)

VARIANCE_FLOOR = 1e-6
CONVERGENCE_TOL = 1e-6
MAX_ITERS = 500


@dataclass
class GaussianMixture:
    """weights: (K,) simplex; means: (K, D); variances: (K, D) diagonal."""

    weights: np.ndarray
    means: np.ndarray
    variances: np.ndarray
    log_likelihoods: list[float] = field(default_factory=list)

    def __post_init__(self):
        if not np.isclose(self.weights.sum(), 1.0, atol=1e-9):
            raise ValueError("mixture weights must sum to 1")
        if (self.variances < VARIANCE_FLOOR - 1e-12).any():
            raise ValueError(f"variances must respect the {VARIANCE_FLOOR} floor")

    @property
    def n_components(self) -> int:
        return self.weights.shape[0]

    @property
    def dim(self) -> int:
        return self.means.shape[1]

    def component_logpdf(self, z: np.ndarray) -> np.ndarray:
        """Per-component log densities, shape (N, K)."""
        z = np.atleast_2d(z)
        diff = z[:, None, :] - self.means[None, :, :]  # (N, K, D)
        quad = (diff**2 / self.variances[None, :, :]).sum(axis=2)
        norm = (np.log(2 * np.pi * self.variances)).sum(axis=1)  # (K,)
        return -0.5 * (quad + norm[None, :])

    def logpdf(self, z: np.ndarray) -> np.ndarray:
        comp = self.component_logpdf(z) + np.log(self.weights)[None, :]
        m = comp.max(axis=1, keepdims=True)
        return (m + np.log(np.exp(comp - m).sum(axis=1, keepdims=True)))[:, 0]

    def sample(self, n: int, seed: int = 0) -> np.ndarray:
        rng = np.random.default_rng(np.random.Philox(key=seed))
        counts = rng.multinomial(n, self.weights)
        parts = []
        for k, count in enumerate(counts):
            if count == 0:
                continue
            eps = rng.standard_normal((count, self.dim))
            parts.append(self.means[k] + np.sqrt(self.variances[k]) * eps)
        out = np.concatenate(parts, axis=0)
        return out[rng.permutation(n)]

    def to_params(self) -> dict[str, np.ndarray]:
        return {
            "weights": self.weights,
            "means": self.means,
            "variances": self.variances,
        }

    @classmethod
    def from_params(cls, params: dict[str, np.ndarray]) -> "GaussianMixture":
        return cls(weights=params["weights"], means=params["means"],
                   variances=params["variances"])


def _kmeanspp_init(data: np.ndarray, k: int,
                   rng: np.random.Generator) -> np.ndarray:
    n = data.shape[0]
    centers = [data[rng.integers(n)]]
    for _ in range(1, k):
        d2 = np.min(
            [((data - c) ** 2).sum(axis=1) for c in centers], axis=0
        )
        total = d2.sum()
        if total <= 0:
            centers.append(data[rng.integers(n)])
            continue
        probs = d2 / total
        centers.append(data[rng.choice(n, p=probs)])
    return np.stack(centers)


def _em_run(data: np.ndarray, k: int,
            rng: np.random.Generator) -> GaussianMixture:
    n, d = data.shape
    means = _kmeanspp_init(data, k, rng)
    global_var = data.var(axis=0) + VARIANCE_FLOOR
    variances = np.tile(global_var, (k, 1))
    weights = np.full(k, 1.0 / k)

    trajectory: list[float] = []
    prev_ll = -np.inf
    for _ in range(MAX_ITERS):
        gmm = GaussianMixture(weights, means, variances)
        comp = gmm.component_logpdf(data) + np.log(weights)[None, :]
        m = comp.max(axis=1, keepdims=True)
        log_norm = m + np.log(np.exp(comp - m).sum(axis=1, keepdims=True))
        ll = float(log_norm.mean())
        trajectory.append(ll)

        resp = np.exp(comp - log_norm)  # (N, K)
        nk = resp.sum(axis=0)
        nk = np.maximum(nk, 1e-12)
        weights = nk / n
        means = (resp.T @ data) / nk[:, None]
        sq = resp.T @ (data**2) / nk[:, None]
        variances = np.maximum(sq - means**2, VARIANCE_FLOOR)

        if ll - prev_ll < CONVERGENCE_TOL and np.isfinite(prev_ll):
            break
        prev_ll = ll

    # Prune components stuck at the floor in every dimension.
    degenerate = (variances <= VARIANCE_FLOOR + 1e-12).all(axis=1)
    if degenerate.any() and (~degenerate).any():
        warnings.warn(
            f"pruning {int(degenerate.sum())} degenerate mixture component(s)",
            stacklevel=2,
        )
        keep = ~degenerate
        weights = weights[keep] / weights[keep].sum()
        means, variances = means[keep], variances[keep]

    out = GaussianMixture(weights, means, variances)
    out.log_likelihoods = trajectory
    return out


def fit_gmm(latents: np.ndarray, n_components: int, seed: int = 0,
            restarts: int = 10) -> GaussianMixture:
    """Best-of-``restarts`` EM fit. Requires at least as many points as
    components."""
    data = np.asarray(latents, dtype=np.float64)
    if data.ndim != 2:
        raise ValueError("latents must be a 2-D array (n, dim)")
    if data.shape[0] < n_components:
        raise ValueError(
            f"{data.shape[0]} points cannot support {n_components} components"
        )
    best: GaussianMixture | None = None
    for r in range(restarts):
        rng = np.random.default_rng(np.random.Philox(key=(seed, r)))
        candidate = _em_run(data, n_components, rng)
        if best is None or candidate.log_likelihoods[-1] > best.log_likelihoods[-1]:
            best = candidate
    assert best is not None
    log.info("gmm fit: K=%d final mean LL %.6f after %d restarts",
             best.n_components, best.log_likelihoods[-1], restarts)
    return best


def gmm_logpdf(gmm: GaussianMixture, z: np.ndarray) -> np.ndarray:
    return gmm.logpdf(z)


def gmm_sample(gmm: GaussianMixture, n: int, seed: int = 0) -> np.ndarray:
    return gmm.sample(n, seed=seed)
