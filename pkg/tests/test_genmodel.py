"""VAE loss components, gradients, training behavior, checkpoints."""

import numpy as np
import pytest

from pagforge.container import quantize
from pagforge.genmodel import (
    SequenceVae,
    TrainingConfig,
    VaeConfig,
    load_checkpoint,
    save_checkpoint,
    train,
)
from pagforge.genmodel.train import make_batch, prepare_batches
from pagforge.tokenizer import TokenizeError, Vocabulary

TINY_CORPUS = ["C[S+](C)C", "CCO", "c1ccccc1", "CC(C)[S+]1CCCC1"]


@pytest.fixture(scope="module")
def tiny_setup():
    vocab = Vocabulary.build(TINY_CORPUS, max_len=40)
    cfg = VaeConfig(vocab_size=len(vocab), embed_dim=8, hidden_dim=10,
                    latent_dim=6, aux_hidden=7, fp_bits=16, dropout=0.2)
    model = SequenceVae(cfg, vocab, seed=3)
    seqs, logp, sa, fp = prepare_batches(TINY_CORPUS, vocab, cfg.fp_bits)
    batch = make_batch(seqs, logp, sa, fp, np.arange(4), vocab.pad_id)
    return model, batch, vocab


class TestLossComponents:
    def test_kl_zero_at_standard_normal_posterior(self, tiny_setup):
        model, batch, _ = tiny_setup
        # Force the posterior onto the prior: zero projection weights.
        saved = {k: model.params[k].copy() for k in
                 ("mu_W", "mu_b", "logvar_W", "logvar_b")}
        model.params["mu_W"][:] = 0.0
        model.params["mu_b"][:] = 0.0
        model.params["logvar_W"][:] = 0.0
        model.params["logvar_b"][:] = 0.0
        parts = model.loss(batch, beta=1.0, seed=5)
        for k, v in saved.items():
            model.params[k][:] = v
        assert parts.kl == pytest.approx(0.0, abs=1e-12)

    def test_perfect_next_token_gives_zero_recon(self, tiny_setup):
        # Direct check of the documented identity on the loss math:
        # when the logits put all mass on the target, CE is exactly 0.
        model, batch, _ = tiny_setup
        T, B = batch.tokens.shape
        V = model.config.vocab_size
        logits = np.full((T - 1, B, V), -1e9)
        targets = batch.tokens[1:]
        idx = np.indices(targets.shape)
        logits[idx[0], idx[1], targets] = 0.0
        shifted = logits - logits.max(axis=2, keepdims=True)
        exp = np.exp(shifted)
        log_p = shifted[idx[0], idx[1], targets] - np.log(exp.sum(axis=2))
        steps = np.arange(T)[:, None]
        mask = (steps[1:] < batch.lengths[None, :])
        recon = -(log_p * mask).sum() / B
        assert recon == pytest.approx(0.0, abs=1e-12)

    def test_nonfinite_loss_raises(self, tiny_setup):
        model, batch, _ = tiny_setup
        saved = model.params["out_W"].copy()
        model.params["out_W"][:] = np.nan
        with pytest.raises(FloatingPointError):
            model.loss(batch, beta=1.0, seed=0)
        model.params["out_W"][:] = saved


class TestGradients:
    def test_finite_difference_every_group(self, tiny_setup):
        model, batch, _ = tiny_setup
        _, grads = model.loss_and_grads(batch, beta=0.7, seed=11)

        def total():
            return model.loss(batch, beta=0.7, seed=11).total

        rng = np.random.default_rng(0)
        worst = 0.0
        for key in sorted(model.params):
            flat = model.params[key].reshape(-1)
            gflat = grads[key].reshape(-1)
            for _ in range(3):
                i = rng.integers(flat.size)
                h = 1e-6 * max(1.0, abs(flat[i]))
                orig = flat[i]
                flat[i] = orig + h
                lp = total()
                flat[i] = orig - h
                lm = total()
                flat[i] = orig
                fd = (lp - lm) / (2 * h)
                worst = max(worst, abs(fd - gflat[i]) /
                            max(abs(fd), abs(gflat[i]), 1.0))
        assert worst < 1e-4


class TestTraining:
    def test_same_seed_bitwise_identical_trajectory(self):
        vocab = Vocabulary.build(TINY_CORPUS, max_len=40)
        cfg = VaeConfig(vocab_size=len(vocab), embed_dim=8, hidden_dim=10,
                        latent_dim=6, aux_hidden=7, fp_bits=16)
        tc = TrainingConfig(epochs=3, batch_size=2, seed=9)
        r1 = train(TINY_CORPUS, vocab, cfg, tc)
        r2 = train(TINY_CORPUS, vocab, cfg, tc)
        assert r1.loss_trajectory == r2.loss_trajectory

    def test_zero_epochs_equals_initialization(self):
        vocab = Vocabulary.build(TINY_CORPUS, max_len=40)
        cfg = VaeConfig(vocab_size=len(vocab), embed_dim=8, hidden_dim=10,
                        latent_dim=6, aux_hidden=7, fp_bits=16)
        tc = TrainingConfig(epochs=0, seed=9)
        result = train(TINY_CORPUS, vocab, cfg, tc)
        fresh = SequenceVae(cfg, vocab, seed=tc.seed)
        expected = quantize(fresh.params)
        for key, value in result.model.params.items():
            assert np.array_equal(value, expected[key]), key

    def test_empty_corpus_rejected(self):
        vocab = Vocabulary.build(TINY_CORPUS)
        cfg = VaeConfig(vocab_size=len(vocab))
        with pytest.raises(ValueError, match="empty"):
            train([], vocab, cfg, TrainingConfig(epochs=1))

    def test_loss_trend_non_increasing_smoothed(self):
        lines = TINY_CORPUS * 8
        vocab = Vocabulary.build(lines, max_len=40)
        cfg = VaeConfig(vocab_size=len(vocab), embed_dim=12, hidden_dim=16,
                        latent_dim=8, aux_hidden=10, fp_bits=32)
        tc = TrainingConfig(epochs=24, batch_size=8, kl_weight_max=0.05,
                            learning_rate=3e-3, seed=4)
        result = train(lines, vocab, cfg, tc)
        losses = result.loss_trajectory
        window = 10
        smoothed = [float(np.mean(losses[i:i + window]))
                    for i in range(0, len(losses) - window, window)]
        assert smoothed[-1] < smoothed[0]


class TestEncodeDecode:
    def test_posterior_centering_after_training(self):
        # With the standard KL weight the aggregate posterior centers on
        # the prior: the corpus mean of mu is far smaller than typical
        # per-molecule norms.
        from pagforge.data import bundled

        lines = [line.split("\t")[0] for line in
                 bundled("mini_zinc.smi").read_text().splitlines()[:200]]
        vocab = Vocabulary.build(lines, max_len=128)
        cfg = VaeConfig(vocab_size=len(vocab), embed_dim=32, hidden_dim=64,
                        latent_dim=32, dropout=0.2, fp_bits=512)
        tc = TrainingConfig(epochs=50, batch_size=32, learning_rate=3e-3,
                            kl_weight_max=1.0, seed=7)
        model = train(lines, vocab, cfg, tc).model
        mus = np.stack([
            model.encode(vocab.encode(s), deterministic=True)[0]
            for s in lines
        ])
        center_norm = float(np.linalg.norm(mus.mean(axis=0)))
        typical_norm = float(np.mean(np.linalg.norm(mus, axis=1)))
        assert typical_norm > 3.0 * center_norm

    def test_same_molecule_same_seed_same_z(self, tiny_setup):
        model, _, vocab = tiny_setup
        seq = vocab.encode("CCO")
        _, _, z1 = model.encode(seq, seed=4)
        _, _, z2 = model.encode(seq, seed=4)
        assert np.array_equal(z1, z2)

    def test_deterministic_mode_returns_mu(self, tiny_setup):
        model, _, vocab = tiny_setup
        seq = vocab.encode("CCO")
        mu, _, z = model.encode(seq, seed=4, deterministic=True)
        assert np.array_equal(mu, z)

    def test_out_of_vocabulary_raises(self, tiny_setup):
        model, _, vocab = tiny_setup
        with pytest.raises(TokenizeError):
            model.encode(vocab.encode("N#N"))

    def test_greedy_deterministic(self, tiny_setup):
        model, _, _ = tiny_setup
        z = np.linspace(-1, 1, model.config.latent_dim)
        assert model.decode(z) == model.decode(z)

    def test_temperature_zero_equals_greedy(self, tiny_setup):
        model, _, _ = tiny_setup
        z = np.linspace(-1, 1, model.config.latent_dim)
        greedy = model.decode(z, mode="greedy")
        tau0 = model.decode(z, mode="temperature", temperature=0.0, seed=7)
        assert greedy == tau0

    def test_wrong_latent_shape_raises(self, tiny_setup):
        model, _, _ = tiny_setup
        with pytest.raises(ValueError, match="latent"):
            model.decode(np.zeros(3))

    def test_aux_heads_never_influence_decoding(self, tiny_setup):
        model, _, _ = tiny_setup
        z = np.linspace(-0.5, 0.5, model.config.latent_dim)
        before = model.decode(z)
        saved = {}
        for key in list(model.params):
            if key.startswith("aux_"):
                saved[key] = model.params[key].copy()
                model.params[key][:] = 0.0
        after = model.decode(z)
        for key, value in saved.items():
            model.params[key][:] = value
        assert before == after


class TestCheckpoint:
    def test_round_trip_bitwise_loss(self, tmp_path):
        vocab = Vocabulary.build(TINY_CORPUS, max_len=40)
        cfg = VaeConfig(vocab_size=len(vocab), embed_dim=8, hidden_dim=10,
                        latent_dim=6, aux_hidden=7, fp_bits=16)
        tc = TrainingConfig(epochs=2, batch_size=2, seed=5)
        result = train(TINY_CORPUS, vocab, cfg, tc)
        seqs, logp, sa, fp = prepare_batches(TINY_CORPUS, vocab, cfg.fp_bits)
        batch = make_batch(seqs, logp, sa, fp, np.arange(4), vocab.pad_id)
        loss_before = result.model.loss(batch, beta=0.5, seed=3).total

        path = tmp_path / "model.ckpt"
        save_checkpoint(path, result, tc)
        loaded = load_checkpoint(path)
        loss_after = loaded.loss(batch, beta=0.5, seed=3).total
        assert loss_before == loss_after  # bitwise: params snap to f32 grid
        for key, value in result.model.params.items():
            assert np.array_equal(value, loaded.params[key]), key

    def test_container_rejects_wrong_kind(self, tmp_path):
        from pagforge.container import save_container

        save_container(tmp_path / "x.ckpt", "gmm", {}, {"w": np.zeros(2)})
        with pytest.raises(ValueError, match="vae"):
            load_checkpoint(tmp_path / "x.ckpt")
