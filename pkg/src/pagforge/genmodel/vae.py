"""Sequence variational autoencoder over SMILES tokens.

Bidirectional GRU encoder to a diagonal Gaussian posterior; autoregressive
GRU decoder conditioned on the latent (concatenated to every input step);
three feed-forward property heads (logP, SA, fingerprint) regularize the
latent space. Everything runs in float64 numpy with hand-derived
gradients; ``loss_and_grads`` is a deterministic function of
(parameters, batch, seed), which makes finite-difference checks exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from pagforge.genmodel import layers as L
from pagforge.tokenizer import Vocabulary


@dataclass(frozen=True)
class VaeConfig:
    vocab_size: int
    embed_dim: int = 32
    hidden_dim: int = 64
    latent_dim: int = 128
    aux_hidden: int = 50
    fp_bits: int = 512
    dropout: float = 0.2
    aux_weight: float = 1.0
    logp_weight_factor: float = 0.1

    def to_dict(self) -> dict:
        return {
            "vocab_size": self.vocab_size,
            "embed_dim": self.embed_dim,
            "hidden_dim": self.hidden_dim,
            "latent_dim": self.latent_dim,
            "aux_hidden": self.aux_hidden,
            "fp_bits": self.fp_bits,
            "dropout": self.dropout,
            "aux_weight": self.aux_weight,
            "logp_weight_factor": self.logp_weight_factor,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "VaeConfig":
        return cls(**payload)


@dataclass
class Batch:
    """Padded token batch with per-molecule property targets.

    tokens: (T, B) int64 including start/end; lengths: true lengths
    (including start and end); logp/sa: (B,); fp: (B, fp_bits) in {0,1}.
    """

    tokens: np.ndarray
    lengths: np.ndarray
    logp: np.ndarray
    sa: np.ndarray
    fp: np.ndarray


@dataclass
class LossParts:
    recon: float
    kl: float
    logp: float
    sa: float
    fp: float
    beta: float
    aux_weight: float
    token_accuracy: float

    @property
    def total(self) -> float:
        return (
            self.recon
            + self.beta * self.kl
            + self.aux_weight * (0.1 * self.logp + self.sa + self.fp)
        )

    def to_dict(self) -> dict:
        return {
            "total": self.total, "recon": self.recon, "kl": self.kl,
            "logp": self.logp, "sa": self.sa, "fp": self.fp,
            "beta": self.beta, "token_accuracy": self.token_accuracy,
        }


def init_params(config: VaeConfig, seed: int) -> dict[str, np.ndarray]:
    rng = np.random.default_rng(np.random.Philox(key=seed))
    V, E, H, D = (config.vocab_size, config.embed_dim,
                  config.hidden_dim, config.latent_dim)
    A = config.aux_hidden

    def glorot(rows, cols):
        scale = np.sqrt(6.0 / (rows + cols))
        return rng.uniform(-scale, scale, size=(rows, cols))

    def bias(size):
        # Small noise rather than zeros: keeps ReLU/gate pre-activations
        # off their kinks, where finite differences are one-sided.
        return rng.uniform(-0.05, 0.05, size=size)

    params: dict[str, np.ndarray] = {"embed": rng.normal(0.0, 0.1, size=(V, E))}
    for side in ("enc_fwd", "enc_bwd"):
        params[f"{side}_W"] = glorot(3 * H, E)
        params[f"{side}_U"] = glorot(3 * H, H)
        params[f"{side}_b"] = bias(3 * H)
    params["mu_W"] = glorot(D, 2 * H)
    params["mu_b"] = bias(D)
    params["logvar_W"] = glorot(D, 2 * H)
    params["logvar_b"] = bias(D)
    params["dec_init_W"] = glorot(H, D)
    params["dec_init_b"] = bias(H)
    params["dec_W"] = glorot(3 * H, E + D)
    params["dec_U"] = glorot(3 * H, H)
    params["dec_b"] = bias(3 * H)
    params["out_W"] = glorot(V, H)
    params["out_b"] = bias(V)
    for head, out_dim in (("logp", 1), ("sa", 1), ("fp", config.fp_bits)):
        dims = [D, A, A, A, out_dim]
        for layer in range(4):
            params[f"aux_{head}_W{layer}"] = glorot(dims[layer + 1], dims[layer])
            params[f"aux_{head}_b{layer}"] = bias(dims[layer + 1])
    return params


def zero_grads(params: dict[str, np.ndarray]) -> dict[str, np.ndarray]:
    return {k: np.zeros_like(v) for k, v in params.items()}


def _masks(tokens: np.ndarray, lengths: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(encoder step mask over all positions, target mask over positions
    1..T-1). Both are (T, B)-shaped slices of validity."""
    T, B = tokens.shape
    steps = np.arange(T)[:, None]
    valid = (steps < lengths[None, :]).astype(np.float64)
    target_mask = (steps[1:] < lengths[None, :]).astype(np.float64)
    return valid, target_mask


class SequenceVae:
    def __init__(self, config: VaeConfig, vocab: Vocabulary,
                 params: dict[str, np.ndarray] | None = None, seed: int = 0):
        if config.vocab_size != len(vocab):
            raise ValueError("config.vocab_size disagrees with vocabulary")
        self.config = config
        self.vocab = vocab
        self.params = params if params is not None else init_params(config, seed)

    # ------------------------------------------------------------- forward

    def _encode_states(self, params, tokens, valid_mask):
        E = params["embed"]
        emb = E[tokens]  # (T, B, E)
        B = tokens.shape[1]
        H = self.config.hidden_dim
        h0 = np.zeros((B, H))
        _, h_fwd, cache_fwd = L.gru_forward(
            emb, valid_mask, h0, params["enc_fwd_W"],
            params["enc_fwd_U"], params["enc_fwd_b"])
        _, h_bwd, cache_bwd = L.gru_forward(
            emb[::-1], valid_mask[::-1], h0, params["enc_bwd_W"],
            params["enc_bwd_U"], params["enc_bwd_b"])
        state = np.concatenate([h_fwd, h_bwd], axis=1)  # (B, 2H)
        return emb, state, cache_fwd, cache_bwd

    def _loss_impl(self, params, batch: Batch, beta: float,
                   seed: int, want_grads: bool):
        cfg = self.config
        tokens, lengths = batch.tokens, batch.lengths
        T, B = tokens.shape
        H, D = cfg.hidden_dim, cfg.latent_dim
        rng = np.random.default_rng(np.random.Philox(key=seed))
        drop_rng = rng if cfg.dropout > 0 else None

        valid_mask, target_mask = _masks(tokens, lengths)
        emb, enc_state, cache_fwd, cache_bwd = self._encode_states(
            params, tokens, valid_mask)

        mu, _ = L.dense_forward(enc_state, params["mu_W"], params["mu_b"])
        logvar, _ = L.dense_forward(enc_state, params["logvar_W"], params["logvar_b"])
        sigma = np.exp(0.5 * logvar)
        eta = rng.standard_normal(mu.shape)
        z = mu + sigma * eta

        # Decoder: teacher forcing; inputs are tokens[:-1], targets tokens[1:].
        dec_in_tokens = tokens[:-1]
        dec_emb = params["embed"][dec_in_tokens]  # (T-1, B, E)
        z_tiled = np.broadcast_to(z, (T - 1, B, D))
        dec_x = np.concatenate([dec_emb, z_tiled], axis=2)
        h0_pre, _ = L.dense_forward(z, params["dec_init_W"], params["dec_init_b"])
        h0 = np.tanh(h0_pre)
        dec_mask = target_mask  # step t predicts target t, valid when target valid
        hs, _, dec_cache = L.gru_forward(
            dec_x, dec_mask, h0, params["dec_W"], params["dec_U"], params["dec_b"])

        logits = hs @ params["out_W"].T + params["out_b"]  # (T-1, B, V)
        targets = tokens[1:]

        shifted = logits - logits.max(axis=2, keepdims=True)
        exp = np.exp(shifted)
        probs = exp / exp.sum(axis=2, keepdims=True)
        tgt_idx = np.indices(targets.shape)
        log_p_target = shifted[tgt_idx[0], tgt_idx[1], targets] - np.log(
            exp.sum(axis=2))
        recon = -(log_p_target * target_mask).sum() / B

        n_valid = target_mask.sum()
        accuracy = float(
            ((probs.argmax(axis=2) == targets) * target_mask).sum() / n_valid
        )

        kl_per_mol = -0.5 * (1.0 + logvar - mu**2 - np.exp(logvar)).sum(axis=1)
        kl = kl_per_mol.mean()

        # Property heads read the sampled latent.
        logp_pred, logp_cache = L.mlp_head_forward(
            z, params, "aux_logp", drop_rng, cfg.dropout)
        sa_pred, sa_cache = L.mlp_head_forward(
            z, params, "aux_sa", drop_rng, cfg.dropout)
        fp_logits, fp_cache = L.mlp_head_forward(
            z, params, "aux_fp", drop_rng, cfg.dropout)

        logp_loss = np.abs(logp_pred[:, 0] - batch.logp).mean()
        sa_loss = np.abs(sa_pred[:, 0] - batch.sa).mean()
        fp_probs = L.sigmoid(fp_logits)
        eps = 1e-12
        fp_loss = -(
            batch.fp * np.log(fp_probs + eps)
            + (1.0 - batch.fp) * np.log(1.0 - fp_probs + eps)
        ).mean()

        parts = LossParts(
            recon=float(recon), kl=float(kl), logp=float(logp_loss),
            sa=float(sa_loss), fp=float(fp_loss), beta=float(beta),
            aux_weight=cfg.aux_weight, token_accuracy=accuracy,
        )
        if not want_grads:
            return parts, None

        grads = zero_grads(params)
        w = cfg.aux_weight

        # Reconstruction gradient.
        dlogits = probs.copy()
        dlogits[tgt_idx[0], tgt_idx[1], targets] -= 1.0
        dlogits *= target_mask[:, :, None] / B
        dhs = dlogits @ params["out_W"]
        grads["out_W"] += np.einsum("tbv,tbh->vh", dlogits, hs)
        grads["out_b"] += dlogits.sum(axis=(0, 1))

        dxs, dh0, dWd, dUd, dbd = L.gru_backward(
            dhs, np.zeros_like(h0), dec_cache, params["dec_W"], params["dec_U"])
        grads["dec_W"] += dWd
        grads["dec_U"] += dUd
        grads["dec_b"] += dbd

        dh0_pre = dh0 * (1.0 - h0**2)
        dz = L.dense_backward(dh0_pre, z, params["dec_init_W"],
                              grads["dec_init_W"], grads["dec_init_b"])
        dz = dz + dxs[:, :, self.config.embed_dim:].sum(axis=0)
        demb_dec = dxs[:, :, : self.config.embed_dim]
        np.add.at(grads["embed"], dec_in_tokens, demb_dec)

        # KL gradient.
        dmu = beta * mu / B
        dlogvar = beta * 0.5 * (np.exp(logvar) - 1.0) / B

        # Property heads.
        dlogp_pred = np.zeros_like(logp_pred)
        dlogp_pred[:, 0] = w * 0.1 * np.sign(logp_pred[:, 0] - batch.logp) / B
        dz += L.mlp_head_backward(dlogp_pred, logp_cache, params, "aux_logp", grads)

        dsa_pred = np.zeros_like(sa_pred)
        dsa_pred[:, 0] = w * np.sign(sa_pred[:, 0] - batch.sa) / B
        dz += L.mlp_head_backward(dsa_pred, sa_cache, params, "aux_sa", grads)

        dfp_logits = w * (fp_probs - batch.fp) / batch.fp.size
        dz += L.mlp_head_backward(dfp_logits, fp_cache, params, "aux_fp", grads)

        # Through the reparameterization into the encoder.
        dmu = dmu + dz
        dlogvar = dlogvar + dz * eta * 0.5 * sigma

        denc = L.dense_backward(dmu, enc_state, params["mu_W"],
                                grads["mu_W"], grads["mu_b"])
        denc += L.dense_backward(dlogvar, enc_state, params["logvar_W"],
                                 grads["logvar_W"], grads["logvar_b"])

        dh_fwd, dh_bwd = denc[:, :H], denc[:, H:]
        demb_f, _, dWf, dUf, dbf = L.gru_backward(
            None, dh_fwd, cache_fwd, params["enc_fwd_W"], params["enc_fwd_U"])
        grads["enc_fwd_W"] += dWf
        grads["enc_fwd_U"] += dUf
        grads["enc_fwd_b"] += dbf
        demb_b, _, dWb, dUb, dbb = L.gru_backward(
            None, dh_bwd, cache_bwd, params["enc_bwd_W"], params["enc_bwd_U"])
        grads["enc_bwd_W"] += dWb
        grads["enc_bwd_U"] += dUb
        grads["enc_bwd_b"] += dbb

        demb = demb_f + demb_b[::-1]
        np.add.at(grads["embed"], tokens, demb)
        return parts, grads

    # -------------------------------------------------------------- public

    def loss(self, batch: Batch, beta: float = 1.0, seed: int = 0) -> LossParts:
        parts, _ = self._loss_impl(self.params, batch, beta, seed, False)
        if not np.isfinite(parts.total):
            raise FloatingPointError(f"non-finite loss: {parts.to_dict()}")
        return parts

    def loss_and_grads(self, batch: Batch, beta: float = 1.0, seed: int = 0):
        parts, grads = self._loss_impl(self.params, batch, beta, seed, True)
        if not np.isfinite(parts.total):
            raise FloatingPointError(f"non-finite loss: {parts.to_dict()}")
        return parts, grads

    def encode(self, token_ids: list[int], seed: int = 0,
               deterministic: bool = False):
        """Posterior (mu, sigma, z) for one sequence. ``deterministic``
        returns z = mu."""
        tokens = np.asarray(token_ids, dtype=np.int64)[:, None]
        lengths = np.asarray([len(token_ids)])
        valid, _ = _masks(tokens, lengths)
        _, state, _, _ = self._encode_states(self.params, tokens, valid)
        mu = state @ self.params["mu_W"].T + self.params["mu_b"]
        logvar = state @ self.params["logvar_W"].T + self.params["logvar_b"]
        sigma = np.exp(0.5 * logvar)
        if deterministic:
            z = mu.copy()
        else:
            rng = np.random.default_rng(np.random.Philox(key=seed))
            z = mu + sigma * rng.standard_normal(mu.shape)
        return mu[0], sigma[0], z[0]

    def encode_batch(self, sequences: list[list[int]],
                     deterministic: bool = True, seed: int = 0) -> np.ndarray:
        """Posterior means (or samples) for many sequences, row per input."""
        out = np.empty((len(sequences), self.config.latent_dim))
        for i, seq in enumerate(sequences):
            mu, _, z = self.encode(seq, seed=seed + i,
                                   deterministic=deterministic)
            out[i] = mu if deterministic else z
        return out

    def decode(self, z: np.ndarray, mode: str = "greedy",
               temperature: float = 1.0, max_len: int | None = None,
               seed: int = 0) -> list[int]:
        """Autoregressive decode of one latent vector to token ids
        (without start/end). ``temperature`` 0 equals greedy."""
        cfg = self.config
        if z.shape != (cfg.latent_dim,):
            raise ValueError(f"latent must have shape ({cfg.latent_dim},)")
        if max_len is None:
            max_len = self.vocab.max_len
        params = self.params
        greedy = mode == "greedy" or temperature == 0.0
        rng = np.random.default_rng(np.random.Philox(key=seed))

        h = np.tanh(z[None, :] @ params["dec_init_W"].T + params["dec_init_b"])
        token = self.vocab.start_id
        out: list[int] = []
        z_row = z[None, :]
        for _ in range(max_len):
            x = np.concatenate([params["embed"][[token]], z_row], axis=1)
            h, _ = L.gru_step_forward(x, h, params["dec_W"],
                                      params["dec_U"], params["dec_b"])
            logits = (h @ params["out_W"].T + params["out_b"])[0]
            if greedy:
                token = int(logits.argmax())
            else:
                scaled = logits / temperature
                scaled -= scaled.max()
                p = np.exp(scaled)
                p /= p.sum()
                token = int(rng.choice(len(p), p=p))
            if token == self.vocab.end_id:
                break
            out.append(token)
        return out

    def decode_smiles(self, z: np.ndarray, **kwargs) -> str:
        return self.vocab.decode(self.decode(z, **kwargs))
