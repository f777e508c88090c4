"""VAE training: adaptive-moment optimizer, KL annealing, checkpoints."""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from pagforge.chem import parse_smiles
from pagforge.container import load_container, quantize, save_container
from pagforge.descriptors import crippen_logp, morgan_fingerprint, sa_score
from pagforge.genmodel.vae import Batch, SequenceVae, VaeConfig
from pagforge.tokenizer import Vocabulary


@dataclass(frozen=True)
class TrainingConfig:
    epochs: int = 40
    batch_size: int = 32
    learning_rate: float = 1e-3
    grad_clip: float = 5.0
    kl_weight_max: float = 1.0
    kl_anneal_fraction: float = 0.3  # fraction of steps to ramp beta 0 -> max
    aux_weight: float = 1.0
    seed: int = 0
    accuracy_target: float | None = None  # optional early stop
    time_limit_s: float | None = None

    def to_dict(self) -> dict:
        return {
            "epochs": self.epochs, "batch_size": self.batch_size,
            "learning_rate": self.learning_rate, "grad_clip": self.grad_clip,
            "kl_weight_max": self.kl_weight_max,
            "kl_anneal_fraction": self.kl_anneal_fraction,
            "aux_weight": self.aux_weight, "seed": self.seed,
            "accuracy_target": self.accuracy_target,
            "time_limit_s": self.time_limit_s,
        }


class Adam:
    def __init__(self, params: dict[str, np.ndarray], lr: float,
                 beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.lr, self.beta1, self.beta2, self.eps = lr, beta1, beta2, eps
        self.m = {k: np.zeros_like(v) for k, v in params.items()}
        self.v = {k: np.zeros_like(v) for k, v in params.items()}
        self.t = 0

    def step(self, params: dict[str, np.ndarray],
             grads: dict[str, np.ndarray]) -> None:
        self.t += 1
        b1, b2 = self.beta1, self.beta2
        correction1 = 1.0 - b1**self.t
        correction2 = 1.0 - b2**self.t
        for key, g in grads.items():
            self.m[key] = b1 * self.m[key] + (1 - b1) * g
            self.v[key] = b2 * self.v[key] + (1 - b2) * g * g
            m_hat = self.m[key] / correction1
            v_hat = self.v[key] / correction2
            params[key] -= self.lr * m_hat / (np.sqrt(v_hat) + self.eps)


def clip_gradients(grads: dict[str, np.ndarray], max_norm: float) -> float:
    total = float(np.sqrt(sum(float((g * g).sum()) for g in grads.values())))
    if max_norm > 0 and total > max_norm:
        scale = max_norm / total
        for g in grads.values():
            g *= scale
    return total


def prepare_batches(smiles_list: list[str], vocab: Vocabulary,
                    fp_bits: int) -> tuple[list[list[int]], np.ndarray,
                                           np.ndarray, np.ndarray]:
    """Tokenize and compute property targets for a training corpus."""
    sequences = [vocab.encode(s) for s in smiles_list]
    logp = np.empty(len(smiles_list))
    sa = np.empty(len(smiles_list))
    fp = np.zeros((len(smiles_list), fp_bits))
    for i, smiles in enumerate(smiles_list):
        mol = parse_smiles(smiles)
        logp[i] = crippen_logp(mol)
        sa[i] = sa_score(mol)
        bits = morgan_fingerprint(mol, radius=2, width=fp_bits)
        for b in bits.on_bits():
            fp[i, b] = 1.0
    return sequences, logp, sa, fp


def make_batch(sequences: list[list[int]], logp, sa, fp,
               idx: np.ndarray, pad_id: int) -> Batch:
    chosen = [sequences[i] for i in idx]
    T = max(len(s) for s in chosen)
    tokens = np.full((T, len(chosen)), pad_id, dtype=np.int64)
    lengths = np.empty(len(chosen), dtype=np.int64)
    for col, seq in enumerate(chosen):
        tokens[: len(seq), col] = seq
        lengths[col] = len(seq)
    return Batch(tokens=tokens, lengths=lengths,
                 logp=logp[idx], sa=sa[idx], fp=fp[idx])


@dataclass
class TrainResult:
    model: SequenceVae
    history: list[dict] = field(default_factory=list)
    final_accuracy: float = 0.0
    steps: int = 0

    @property
    def loss_trajectory(self) -> list[float]:
        return [h["total"] for h in self.history]


def config_hash(payload: dict) -> str:
    return hashlib.sha256(
        json.dumps(payload, sort_keys=True).encode()
    ).hexdigest()[:16]


def train(smiles_list: list[str], vocab: Vocabulary,
          model_config: VaeConfig, train_config: TrainingConfig) -> TrainResult:
    """Train on a SMILES corpus; fully reproducible from the seed."""
    if not smiles_list:
        raise ValueError("empty training corpus")
    model = SequenceVae(model_config, vocab, seed=train_config.seed)
    sequences, logp, sa, fp = prepare_batches(
        smiles_list, vocab, model_config.fp_bits)

    n = len(sequences)
    batch_size = min(train_config.batch_size, n)
    steps_per_epoch = (n + batch_size - 1) // batch_size
    total_steps = steps_per_epoch * train_config.epochs
    anneal_steps = max(1, int(total_steps * train_config.kl_anneal_fraction))

    optimizer = Adam(model.params, lr=train_config.learning_rate)
    shuffle_rng = np.random.default_rng(
        np.random.Philox(key=train_config.seed + 1))
    result = TrainResult(model=model)
    started = time.monotonic()
    step = 0

    for epoch in range(train_config.epochs):
        order = shuffle_rng.permutation(n)
        accuracies = []
        for start in range(0, n, batch_size):
            idx = order[start : start + batch_size]
            batch = make_batch(sequences, logp, sa, fp, idx, vocab.pad_id)
            beta = train_config.kl_weight_max * min(1.0, step / anneal_steps)
            parts, grads = model.loss_and_grads(batch, beta=beta, seed=step)
            clip_gradients(grads, train_config.grad_clip)
            optimizer.step(model.params, grads)
            step += 1
            accuracies.append(parts.token_accuracy)
            result.history.append(parts.to_dict())
        result.final_accuracy = float(np.mean(accuracies))
        result.steps = step
        if (train_config.accuracy_target is not None
                and result.final_accuracy >= train_config.accuracy_target):
            break
        if (train_config.time_limit_s is not None
                and time.monotonic() - started > train_config.time_limit_s):
            break

    # Snap onto the float32 grid so a saved checkpoint reproduces this
    # exact model (and its losses) bit for bit after reload.
    model.params = quantize(model.params)
    return result


def save_checkpoint(path: str | Path, result: TrainResult,
                    train_config: TrainingConfig) -> None:
    model = result.model
    config = {
        "model": model.config.to_dict(),
        "train": train_config.to_dict(),
        "config_hash": config_hash(
            {"model": model.config.to_dict(), "train": train_config.to_dict()}),
        "final_accuracy": result.final_accuracy,
        "steps": result.steps,
        "max_len": model.vocab.max_len,
    }
    save_container(path, "vae", config, model.params,
                   vocab=list(model.vocab.tokens))


def load_checkpoint(path: str | Path) -> SequenceVae:
    kind, config, vocab_tokens, params = load_container(path)
    if kind != "vae":
        raise ValueError(f"{path}: expected a vae container, found {kind}")
    vocab = Vocabulary(tokens=tuple(vocab_tokens), max_len=config["max_len"])
    model_config = VaeConfig.from_dict(config["model"])
    return SequenceVae(model_config, vocab, params=params)
