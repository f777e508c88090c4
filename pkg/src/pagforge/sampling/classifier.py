"""Binary attribute classifier on latent vectors.

One hidden layer (width 100, ReLU) with a sigmoid output. Training uses
adaptive-moment gradient descent on weighted cross-entropy, with
inverse-frequency class weights to absorb label imbalance. Reporting is
stratified k-fold cross-validation with balanced accuracy and a 2x2
confusion matrix (raw and row-normalized).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_PROB_EPS = 1e-7


@dataclass
class LatentClassifier:
    """Parameters: W1 (H, D), b1 (H,), W2 (1, H), b2 (1,)."""

    params: dict[str, np.ndarray]

    @classmethod
    def init(cls, dim: int, hidden: int = 100, seed: int = 0) -> "LatentClassifier":
        rng = np.random.default_rng(np.random.Philox(key=seed))
        scale1 = np.sqrt(6.0 / (dim + hidden))
        scale2 = np.sqrt(6.0 / (hidden + 1))
        return cls(params={
            "W1": rng.uniform(-scale1, scale1, size=(hidden, dim)),
            "b1": rng.uniform(-0.05, 0.05, size=hidden),
            "W2": rng.uniform(-scale2, scale2, size=(1, hidden)),
            "b2": rng.uniform(-0.05, 0.05, size=1),
        })

    def logits(self, z: np.ndarray) -> np.ndarray:
        z = np.atleast_2d(z)
        h = np.maximum(z @ self.params["W1"].T + self.params["b1"], 0.0)
        return (h @ self.params["W2"].T + self.params["b2"])[:, 0]

    def predict_proba(self, z: np.ndarray) -> np.ndarray:
        """P(attribute | z), clipped inside (0, 1)."""
        logit = self.logits(z)
        p = np.where(
            logit >= 0,
            1.0 / (1.0 + np.exp(-logit)),
            np.exp(np.clip(logit, -500, 0)) / (1.0 + np.exp(np.clip(logit, -500, 0))),
        )
        return np.clip(p, _PROB_EPS, 1.0 - _PROB_EPS)

    def fit(self, z: np.ndarray, labels: np.ndarray, epochs: int = 200,
            lr: float = 1e-2, batch_size: int = 64, seed: int = 0) -> None:
        z = np.asarray(z, dtype=np.float64)
        y = np.asarray(labels, dtype=np.float64)
        n = len(y)
        pos = y.sum()
        if pos == 0 or pos == n:
            raise ValueError("training labels contain a single class")
        # Inverse-frequency weights, normalized to mean 1.
        w_pos, w_neg = n / (2.0 * pos), n / (2.0 * (n - pos))
        sample_w = np.where(y == 1, w_pos, w_neg)

        rng = np.random.default_rng(np.random.Philox(key=seed))
        p = self.params
        m = {k: np.zeros_like(v) for k, v in p.items()}
        v = {k: np.zeros_like(v) for k, v in p.items()}
        t = 0
        for _ in range(epochs):
            order = rng.permutation(n)
            for start in range(0, n, batch_size):
                idx = order[start : start + batch_size]
                zb, yb, wb = z[idx], y[idx], sample_w[idx]
                h_pre = zb @ p["W1"].T + p["b1"]
                h = np.maximum(h_pre, 0.0)
                logit = (h @ p["W2"].T + p["b2"])[:, 0]
                prob = 1.0 / (1.0 + np.exp(-np.clip(logit, -500, 500)))

                dlogit = wb * (prob - yb) / len(idx)
                grads = {
                    "W2": dlogit[None, :] @ h,
                    "b2": np.array([dlogit.sum()]),
                }
                dh = dlogit[:, None] * p["W2"][0][None, :]
                dh *= h_pre > 0
                grads["W1"] = dh.T @ zb
                grads["b1"] = dh.sum(axis=0)

                t += 1
                for key in p:
                    m[key] = 0.9 * m[key] + 0.1 * grads[key]
                    v[key] = 0.999 * v[key] + 0.001 * grads[key] ** 2
                    m_hat = m[key] / (1 - 0.9**t)
                    v_hat = v[key] / (1 - 0.999**t)
                    p[key] -= lr * m_hat / (np.sqrt(v_hat) + 1e-8)


@dataclass
class CvReport:
    folds: int
    fold_balanced_accuracy: list[float]
    mean_balanced_accuracy: float
    confusion_raw: np.ndarray        # rows: true [neg, pos]; cols predicted
    confusion_normalized: np.ndarray

    def layout(self) -> str:
        """Fixed text layout of the cross-validated confusion matrix."""
        raw, norm = self.confusion_raw, self.confusion_normalized
        lines = [
            "confusion matrix (rows: true, cols: predicted)",
            "              pred_high_lumo  pred_low_lumo",
            f"true_high_lumo {raw[0, 0]:14d} {raw[0, 1]:14d}",
            f"true_low_lumo  {raw[1, 0]:14d} {raw[1, 1]:14d}",
            "row-normalized",
            f"true_high_lumo {norm[0, 0]:14.3f} {norm[0, 1]:14.3f}",
            f"true_low_lumo  {norm[1, 0]:14.3f} {norm[1, 1]:14.3f}",
            f"balanced accuracy (mean of {self.folds} folds): "
            f"{self.mean_balanced_accuracy:.3f}",
        ]
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "folds": self.folds,
            "fold_balanced_accuracy": self.fold_balanced_accuracy,
            "mean_balanced_accuracy": self.mean_balanced_accuracy,
            "confusion_raw": self.confusion_raw.tolist(),
            "confusion_normalized": self.confusion_normalized.tolist(),
        }


def balanced_accuracy(y_true: np.ndarray, y_pred: np.ndarray) -> float:
    recalls = []
    for cls in (0, 1):
        mask = y_true == cls
        if mask.any():
            recalls.append(float((y_pred[mask] == cls).mean()))
    return float(np.mean(recalls))


def _stratified_folds(labels: np.ndarray, folds: int,
                      rng: np.random.Generator) -> list[np.ndarray]:
    by_class = [np.flatnonzero(labels == c) for c in (0, 1)]
    buckets: list[list[int]] = [[] for _ in range(folds)]
    for idx in by_class:
        shuffled = rng.permutation(idx)
        for pos, sample in enumerate(shuffled):
            buckets[pos % folds].append(int(sample))
    return [np.array(sorted(b)) for b in buckets]


def train_classifier(latents: np.ndarray, labels, folds: int = 5,
                     seed: int = 0, hidden: int = 100,
                     epochs: int = 200) -> tuple[LatentClassifier, CvReport]:
    """Stratified k-fold CV report plus a final model trained on all data."""
    z = np.asarray(latents, dtype=np.float64)
    y = np.asarray(labels, dtype=np.int64)
    if set(np.unique(y)) - {0, 1}:
        raise ValueError("labels must be binary 0/1")
    if len(np.unique(y)) < 2:
        raise ValueError("training labels contain a single class")

    rng = np.random.default_rng(np.random.Philox(key=(seed, 999)))
    fold_indices = _stratified_folds(y, folds, rng)
    fold_scores: list[float] = []
    confusion = np.zeros((2, 2), dtype=np.int64)
    for f, test_idx in enumerate(fold_indices):
        train_mask = np.ones(len(y), dtype=bool)
        train_mask[test_idx] = False
        clf = LatentClassifier.init(z.shape[1], hidden=hidden, seed=seed + f)
        clf.fit(z[train_mask], y[train_mask], epochs=epochs, seed=seed + f)
        pred = (clf.predict_proba(z[test_idx]) >= 0.5).astype(np.int64)
        fold_scores.append(balanced_accuracy(y[test_idx], pred))
        for truth, guess in zip(y[test_idx], pred):
            confusion[truth, guess] += 1

    normalized = confusion / np.maximum(confusion.sum(axis=1, keepdims=True), 1)
    report = CvReport(
        folds=folds,
        fold_balanced_accuracy=fold_scores,
        mean_balanced_accuracy=float(np.mean(fold_scores)),
        confusion_raw=confusion,
        confusion_normalized=normalized,
    )
    final = LatentClassifier.init(z.shape[1], hidden=hidden, seed=seed)
    final.fit(z, y, epochs=epochs, seed=seed)
    return final, report
