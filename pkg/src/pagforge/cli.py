"""Command-line pipeline: one subcommand per stage.

Stages read and write plain files; a JSON manifest accumulates
input/output hashes, seeds, and effective configs. All randomness
derives from one master seed. Exit codes: 0 success, 1 stage failure,
2 missing input, 3 configuration error.
"""

from __future__ import annotations

import csv
import functools
import json
import sys
from pathlib import Path

import click
import numpy as np

from pagforge import metrics as evalmetrics
from pagforge.chem import canonical_smiles, parse_smiles
from pagforge.container import load_container, save_container
from pagforge.data import bundled
from pagforge.dataset import PropertyWindow, filter_window, ingest, keep_cations, label_lumo
from pagforge.descriptors import descriptor_vector, morgan_fingerprint, similarity
from pagforge.genmodel import (
    TrainingConfig,
    VaeConfig,
    load_checkpoint,
    save_checkpoint,
    train,
)
from pagforge.manifest import PipelineManifest, derive_seed, utcnow
from pagforge.sampling import (
    AttributeSpec,
    GaussianMixture,
    LatentClassifier,
    classifier_attribute,
    conditional_sample,
    fit_gmm,
    train_classifier,
)
from pagforge.screening import (
    chem_filters,
    dice_histogram,
    scaffold_summary,
    similarity_binning,
    summary_table,
)
from pagforge.service import (
    AdjudicationStore,
    Candidate,
    Scaffold,
    create_app,
    write_candidate_file,
)
from pagforge.tokenizer import Vocabulary

EXIT_STAGE_FAILURE = 1
EXIT_MISSING_INPUT = 2
EXIT_CONFIG_ERROR = 3


def stage_command(fn):
    """Map errors onto the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except FileNotFoundError as exc:
            click.echo(f"missing input: {exc}", err=True)
            sys.exit(EXIT_MISSING_INPUT)
        except (json.JSONDecodeError, KeyError, click.BadParameter) as exc:
            click.echo(f"configuration error: {exc}", err=True)
            sys.exit(EXIT_CONFIG_ERROR)
        except Exception as exc:
            click.echo(f"stage failed: {exc}", err=True)
            sys.exit(EXIT_STAGE_FAILURE)

    return wrapper


@click.group()
def main():
    """Cation discovery pipeline."""


def _manifest(path: str | None) -> PipelineManifest | None:
    return PipelineManifest(path) if path else None


def _record(manifest, stage, inputs, outputs, seed, config, started):
    if manifest is not None:
        manifest.record(stage, inputs, outputs, seed, config,
                        started, utcnow())


def _write_records_csv(path: Path, records) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["smiles", "id", "lumo_ev"])
        for rec in records:
            writer.writerow([
                rec.smiles, rec.id,
                "" if rec.lumo_ev is None else rec.lumo_ev,
            ])


def _read_smiles_file(path: Path) -> list[tuple[str, str]]:
    records, _ = ingest(path)
    return [(r.id, r.smiles) for r in records]


@main.command("ingest")
@click.option("--input", "input_path", required=True, type=click.Path())
@click.option("--output", "output_path", required=True, type=click.Path())
@click.option("--strict", is_flag=True, help="fail on the first bad SMILES")
@click.option("--manifest", "manifest_path", type=click.Path(), default=None)
@stage_command
def ingest_cmd(input_path, output_path, strict, manifest_path):
    """Read a corpus file into the normalized CSV format."""
    started = utcnow()
    if not Path(input_path).exists():
        raise FileNotFoundError(input_path)
    records, report = ingest(input_path, strict=strict)
    _write_records_csv(Path(output_path), records)
    report_path = Path(output_path).with_suffix(".report.json")
    report_path.write_text(json.dumps(report.to_dict(), indent=2) + "\n")
    _record(_manifest(manifest_path), "ingest", [input_path],
            [output_path, report_path], None, {"strict": strict}, started)
    click.echo(f"ingested {report.parsed}/{report.total_lines} records")


@main.command("filter")
@click.option("--input", "input_path", required=True, type=click.Path())
@click.option("--window", "window_path", type=click.Path(), default=None,
              help="property window JSON (bundled default when omitted)")
@click.option("--output", "output_path", required=True, type=click.Path())
@click.option("--keep-neutral", is_flag=True,
              help="skip the cation requirement")
@click.option("--manifest", "manifest_path", type=click.Path(), default=None)
@stage_command
def filter_cmd(input_path, window_path, output_path, keep_neutral,
               manifest_path):
    """Apply cation selection and the property window."""
    started = utcnow()
    if not Path(input_path).exists():
        raise FileNotFoundError(input_path)
    window_file = Path(window_path) if window_path else bundled("default_window.json")
    if not window_file.exists():
        raise FileNotFoundError(window_file)
    window = PropertyWindow.from_json(window_file)
    records, _ = ingest(input_path)
    n_input = len(records)
    if not keep_neutral:
        records = keep_cations(records)
    n_cations = len(records)
    kept, drops = filter_window(records, window)
    _write_records_csv(Path(output_path), kept)
    report = {
        "input": n_input,
        "dropped_not_cation": n_input - n_cations,
        "dropped_by_window": drops,
        "kept": len(kept),
    }
    report_path = Path(output_path).with_suffix(".report.json")
    report_path.write_text(json.dumps(report, indent=2) + "\n")
    _record(_manifest(manifest_path), "filter", [input_path, window_file],
            [output_path, report_path], None, report, started)
    click.echo(json.dumps(report, indent=2))


@main.command("train-vae")
@click.option("--input", "input_path", required=True, type=click.Path())
@click.option("--output", "output_path", required=True, type=click.Path())
@click.option("--epochs", default=40, show_default=True)
@click.option("--batch-size", default=32, show_default=True)
@click.option("--learning-rate", default=1e-3, show_default=True)
@click.option("--latent-dim", default=128, show_default=True)
@click.option("--hidden-dim", default=64, show_default=True)
@click.option("--embed-dim", default=32, show_default=True)
@click.option("--kl-max", default=1.0, show_default=True)
@click.option("--accuracy-target", default=None, type=float)
@click.option("--time-limit", default=None, type=float, help="seconds")
@click.option("--seed", default=0, show_default=True)
@click.option("--manifest", "manifest_path", type=click.Path(), default=None)
@stage_command
def train_vae_cmd(input_path, output_path, epochs, batch_size, learning_rate,
                  latent_dim, hidden_dim, embed_dim, kl_max, accuracy_target,
                  time_limit, seed, manifest_path):
    """Train the sequence autoencoder on a filtered corpus."""
    started = utcnow()
    if not Path(input_path).exists():
        raise FileNotFoundError(input_path)
    records, _ = ingest(input_path)
    smiles = [r.smiles for r in records]
    stage_seed = derive_seed(seed, "train-vae")
    vocab = Vocabulary.build(smiles, max_len=128)
    model_config = VaeConfig(
        vocab_size=len(vocab), embed_dim=embed_dim, hidden_dim=hidden_dim,
        latent_dim=latent_dim,
    )
    train_config = TrainingConfig(
        epochs=epochs, batch_size=batch_size, learning_rate=learning_rate,
        kl_weight_max=kl_max, seed=stage_seed,
        accuracy_target=accuracy_target, time_limit_s=time_limit,
    )
    result = train(smiles, vocab, model_config, train_config)
    save_checkpoint(output_path, result, train_config)
    _record(_manifest(manifest_path), "train-vae", [input_path],
            [output_path], stage_seed,
            {"model": model_config.to_dict(), "train": train_config.to_dict()},
            started)
    click.echo(
        f"trained {result.steps} steps, "
        f"teacher-forced accuracy {result.final_accuracy:.3f}")


@main.command("encode")
@click.option("--checkpoint", "ckpt_path", required=True, type=click.Path())
@click.option("--input", "input_path", required=True, type=click.Path())
@click.option("--output", "output_path", required=True, type=click.Path())
@click.option("--sampled", is_flag=True,
              help="store sampled z instead of posterior means")
@click.option("--seed", default=0, show_default=True)
@click.option("--manifest", "manifest_path", type=click.Path(), default=None)
@stage_command
def encode_cmd(ckpt_path, input_path, output_path, sampled, seed,
               manifest_path):
    """Embed a corpus into latent space."""
    started = utcnow()
    for p in (ckpt_path, input_path):
        if not Path(p).exists():
            raise FileNotFoundError(p)
    model = load_checkpoint(ckpt_path)
    records, _ = ingest(input_path)
    stage_seed = derive_seed(seed, "encode")
    ids, rows = [], []
    for rec in records:
        seq = model.vocab.encode(rec.smiles)
        mu, _, z = model.encode(seq, seed=stage_seed + len(ids),
                                deterministic=not sampled)
        ids.append(rec.id)
        rows.append(z if sampled else mu)
    np.savez(output_path, ids=np.array(ids), latents=np.stack(rows))
    _record(_manifest(manifest_path), "encode", [ckpt_path, input_path],
            [output_path], stage_seed, {"sampled": sampled}, started)
    click.echo(f"encoded {len(ids)} molecules")


@main.command("fit-gmm")
@click.option("--latents", "latents_path", required=True, type=click.Path())
@click.option("--components", default=100, show_default=True)
@click.option("--restarts", default=10, show_default=True)
@click.option("--output", "output_path", required=True, type=click.Path())
@click.option("--seed", default=0, show_default=True)
@click.option("--manifest", "manifest_path", type=click.Path(), default=None)
@stage_command
def fit_gmm_cmd(latents_path, components, restarts, output_path, seed,
                manifest_path):
    """Fit the latent-space mixture density."""
    started = utcnow()
    if not Path(latents_path).exists():
        raise FileNotFoundError(latents_path)
    data = np.load(latents_path)["latents"]
    stage_seed = derive_seed(seed, "fit-gmm")
    gmm = fit_gmm(data, components, seed=stage_seed, restarts=restarts)
    config = {
        "components": gmm.n_components,
        "requested_components": components,
        "restarts": restarts,
        "final_mean_loglik": gmm.log_likelihoods[-1],
        "em_iterations": len(gmm.log_likelihoods),
    }
    save_container(output_path, "gmm", config, gmm.to_params())
    _record(_manifest(manifest_path), "fit-gmm", [latents_path],
            [output_path], stage_seed, config, started)
    click.echo(json.dumps(config, indent=2))


@main.command("train-clf")
@click.option("--latents", "latents_path", required=True, type=click.Path())
@click.option("--labels", "labels_path", required=True, type=click.Path(),
              help="CSV with smiles,id,lumo_ev")
@click.option("--threshold", default=-5.0, show_default=True)
@click.option("--folds", default=5, show_default=True)
@click.option("--output", "output_path", required=True, type=click.Path())
@click.option("--seed", default=0, show_default=True)
@click.option("--manifest", "manifest_path", type=click.Path(), default=None)
@stage_command
def train_clf_cmd(latents_path, labels_path, threshold, folds, output_path,
                  seed, manifest_path):
    """Train the latent attribute classifier with cross-validation."""
    started = utcnow()
    for p in (latents_path, labels_path):
        if not Path(p).exists():
            raise FileNotFoundError(p)
    payload = np.load(latents_path)
    latents = payload["latents"]
    ids = list(payload["ids"])
    records, _ = ingest(labels_path)
    by_id = {r.id: r for r in records}
    ordered = [by_id[i] for i in ids]
    labels = label_lumo(ordered, threshold_ev=threshold)
    stage_seed = derive_seed(seed, "train-clf")
    clf, report = train_classifier(latents, labels, folds=folds,
                                   seed=stage_seed)
    config = {"threshold_ev": threshold, "folds": folds,
              "cv": report.to_dict()}
    save_container(output_path, "classifier", config, clf.params)
    report_path = Path(output_path).with_suffix(".cv.json")
    report_path.write_text(json.dumps(report.to_dict(), indent=2) + "\n")
    layout_path = Path(output_path).with_suffix(".cv.txt")
    layout_path.write_text(report.layout() + "\n")
    _record(_manifest(manifest_path), "train-clf",
            [latents_path, labels_path],
            [output_path, report_path, layout_path],
            stage_seed, config, started)
    click.echo(report.layout())


@main.command("sample")
@click.option("--gmm", "gmm_path", required=True, type=click.Path())
@click.option("--classifier", "clf_path", required=True, type=click.Path())
@click.option("--vae", "vae_path", required=True, type=click.Path())
@click.option("--count", default=200, show_default=True,
              help="target accepted samples")
@click.option("--max-draws", default=50000, show_default=True)
@click.option("--lanes", default=1, show_default=True)
@click.option("--output", "output_path", required=True, type=click.Path())
@click.option("--seed", default=0, show_default=True)
@click.option("--manifest", "manifest_path", type=click.Path(), default=None)
@stage_command
def sample_cmd(gmm_path, clf_path, vae_path, count, max_draws, lanes,
               output_path, seed, manifest_path):
    """Conditionally sample latents and decode them."""
    started = utcnow()
    for p in (gmm_path, clf_path, vae_path):
        if not Path(p).exists():
            raise FileNotFoundError(p)
    kind, _, _, gmm_params = load_container(gmm_path)
    gmm = GaussianMixture.from_params(gmm_params)
    _, _, _, clf_params = load_container(clf_path)
    clf = LatentClassifier(params=clf_params)
    model = load_checkpoint(vae_path)

    stage_seed = derive_seed(seed, "sample")
    spec = AttributeSpec(attributes=(classifier_attribute(clf),))
    decoder = lambda z: model.decode_smiles(z, mode="greedy")
    accepted, trace = conditional_sample(
        gmm, spec, decoder=decoder, target_accepted=count,
        max_draws=max_draws, seed=stage_seed, n_lanes=lanes)

    decoded = [r for r in trace.records if r.accepted]
    with open(output_path, "w") as fh:
        for i, rec in enumerate(decoded):
            fh.write(f"{rec.decoded}\tsample-{i:05d}\n")
    run_manifest = trace.manifest()
    run_path = Path(output_path).with_suffix(".run.json")
    run_path.write_text(json.dumps(run_manifest, indent=2) + "\n")
    _record(_manifest(manifest_path), "sample",
            [gmm_path, clf_path, vae_path], [output_path, run_path],
            stage_seed, run_manifest, started)
    click.echo(json.dumps(run_manifest, indent=2))


@main.command("screen")
@click.option("--input", "input_path", required=True, type=click.Path())
@click.option("--training", "training_path", required=True, type=click.Path(),
              help="corpus whose exact matches are discarded")
@click.option("--fluorine-threshold", default=0.2, show_default=True)
@click.option("--output", "output_path", required=True, type=click.Path())
@click.option("--manifest", "manifest_path", type=click.Path(), default=None)
@stage_command
def screen_cmd(input_path, training_path, fluorine_threshold, output_path,
               manifest_path):
    """Run the chemistry filters over decoded samples."""
    started = utcnow()
    for p in (input_path, training_path):
        if not Path(p).exists():
            raise FileNotFoundError(p)
    candidates = []
    for line in Path(input_path).read_text().splitlines():
        if not line.strip():
            continue
        smiles, _, mol_id = line.partition("\t")
        candidates.append((mol_id.strip() or smiles, smiles.strip()))
    training_records, _ = ingest(training_path)
    training_canonical = {
        canonical_smiles(parse_smiles(r.smiles)) for r in training_records
    }
    verdicts = chem_filters(candidates, training_canonical,
                            fluorine_threshold=fluorine_threshold)
    passed = [c for c, v in zip(candidates, verdicts) if v.passed]
    with open(output_path, "w") as fh:
        for mol_id, smiles in passed:
            fh.write(f"{smiles}\t{mol_id}\n")
    rule_counts: dict[str, int] = {}
    for v in verdicts:
        for rule in v.failed_rules:
            rule_counts[rule] = rule_counts.get(rule, 0) + 1
    report = {
        "input": len(candidates),
        "passed": len(passed),
        "failed_by_rule": rule_counts,
        "verdicts": [
            {"id": v.molecule_id, "passed": v.passed,
             "failed_rules": list(v.failed_rules)} for v in verdicts
        ],
    }
    report_path = Path(output_path).with_suffix(".verdicts.json")
    report_path.write_text(json.dumps(report, indent=2) + "\n")
    _record(_manifest(manifest_path), "screen",
            [input_path, training_path], [output_path, report_path], None,
            {"fluorine_threshold": fluorine_threshold}, started)
    click.echo(f"passed {len(passed)}/{len(candidates)}")


@main.command("metrics")
@click.option("--gen", "gen_path", required=True, type=click.Path())
@click.option("--ref", "ref_path", required=True, type=click.Path())
@click.option("--train", "train_path", type=click.Path(), default=None)
@click.option("--output", "output_path", required=True, type=click.Path())
@click.option("--manifest", "manifest_path", type=click.Path(), default=None)
@stage_command
def metrics_cmd(gen_path, ref_path, train_path, output_path, manifest_path):
    """Generation-quality metrics against a reference set."""
    started = utcnow()
    inputs = [gen_path, ref_path] + ([train_path] if train_path else [])
    for p in inputs:
        if not Path(p).exists():
            raise FileNotFoundError(p)
    gen = [s for _, s in _read_smiles_file(Path(gen_path))]
    ref = [s for _, s in _read_smiles_file(Path(ref_path))]
    train_set = (
        [s for _, s in _read_smiles_file(Path(train_path))]
        if train_path else None
    )
    report = evalmetrics.metric_report(gen, ref, train_set)
    Path(output_path).write_text(
        json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
    table_path = Path(output_path).with_suffix(".txt")
    table_path.write_text(report.table() + "\n")
    _record(_manifest(manifest_path), "metrics", inputs,
            [output_path, table_path], None,
            {"config_hash": report.config_hash}, started)
    click.echo(report.table())


@main.command("scaffolds")
@click.option("--gen", "gen_path", required=True, type=click.Path())
@click.option("--ref", "ref_path", required=True, type=click.Path())
@click.option("--output", "output_path", required=True, type=click.Path())
@click.option("--bin-cap", default=100, show_default=True)
@click.option("--bin-width", default=0.1, show_default=True)
@click.option("--service-out", "service_path", type=click.Path(), default=None,
              help="also write the adjudication candidate file")
@click.option("--vae", "vae_path", type=click.Path(), default=None)
@click.option("--classifier", "clf_path", type=click.Path(), default=None)
@click.option("--seed", default=0, show_default=True)
@click.option("--manifest", "manifest_path", type=click.Path(), default=None)
@stage_command
def scaffolds_cmd(gen_path, ref_path, output_path, bin_cap, bin_width,
                  service_path, vae_path, clf_path, seed, manifest_path):
    """Similarity binning, fragmentation, and scaffold accounting."""
    started = utcnow()
    for p in (gen_path, ref_path):
        if not Path(p).exists():
            raise FileNotFoundError(p)
    generated = _read_smiles_file(Path(gen_path))
    ref = [s for _, s in _read_smiles_file(Path(ref_path))]
    stage_seed = derive_seed(seed, "scaffolds")
    selected, bin_counts = similarity_binning(
        generated, ref, bin_width=bin_width, cap=bin_cap, seed=stage_seed)
    gen_summary, ref_summary, records = scaffold_summary(
        [(i, s) for i, s in selected], ref)
    payload = {
        "bin_counts": {str(k): v for k, v in sorted(bin_counts.items())},
        "selected": len(selected),
        "generated_summary": gen_summary.as_counts(),
        "reference_summary": ref_summary.as_counts(),
        "records": [
            {"scaffold": r.scaffold, "parents": list(r.parents),
             "is_sulfonium": r.is_sulfonium, "is_novel": r.is_novel}
            for r in records
        ],
    }
    Path(output_path).write_text(json.dumps(payload, indent=2) + "\n")
    table_path = Path(output_path).with_suffix(".txt")
    table_path.write_text(summary_table(gen_summary, ref_summary) + "\n")
    outputs = [output_path, table_path]

    if service_path:
        if not (vae_path and clf_path):
            raise click.BadParameter(
                "--service-out needs --vae and --classifier")
        for p in (vae_path, clf_path):
            if not Path(p).exists():
                raise FileNotFoundError(p)
        model = load_checkpoint(vae_path)
        _, _, _, clf_params = load_container(clf_path)
        clf = LatentClassifier(params=clf_params)
        ref_fps = [morgan_fingerprint(parse_smiles(s)) for s in ref]

        scaffold_ids = {
            r.scaffold: f"scaf-{k:04d}"
            for k, r in enumerate(sorted(records, key=lambda r: r.scaffold))
        }
        selected_by_id = dict(selected)
        parent_map: dict[str, list[str]] = {}
        cand_scaffolds: dict[str, list[str]] = {}
        for r in records:
            sid = scaffold_ids[r.scaffold]
            for parent in r.parents:
                parent_map.setdefault(sid, []).append(parent)
                cand_scaffolds.setdefault(parent, []).append(sid)

        candidates = []
        for mol_id, smiles in selected:
            if mol_id not in cand_scaffolds:
                continue
            mol = parse_smiles(smiles)
            canonical = canonical_smiles(mol)
            mu, _, _ = model.encode(model.vocab.encode(smiles),
                                    deterministic=True)
            score = float(np.clip(clf.predict_proba(mu[None, :])[0],
                                  1e-6, 1 - 1e-6))
            fp = morgan_fingerprint(mol)
            max_sim = max(similarity(fp, rf, "dice") for rf in ref_fps)
            d = descriptor_vector(mol)
            candidates.append(Candidate(
                id=mol_id, smiles=canonical,
                scaffold_ids=tuple(sorted(set(cand_scaffolds[mol_id]))),
                descriptors={
                    "mw": round(d.mw, 3), "logp": round(d.logp, 3),
                    "sa": round(d.sa, 3), "num_atoms": d.num_atoms,
                    "ring_count": d.ring_count,
                },
                classifier_score=score,
                max_ref_similarity=float(max_sim),
            ))
        scaffolds = [
            Scaffold(id=scaffold_ids[r.scaffold], smiles=r.scaffold,
                     parent_ids=tuple(sorted(set(r.parents))))
            for r in sorted(records, key=lambda r: r.scaffold)
        ]
        write_candidate_file(service_path, candidates, scaffolds)
        outputs.append(service_path)

    _record(_manifest(manifest_path), "scaffolds", [gen_path, ref_path],
            outputs, stage_seed,
            {"bin_cap": bin_cap, "bin_width": bin_width}, started)
    click.echo(summary_table(gen_summary, ref_summary))


@main.command("dice-hist")
@click.option("--input", "input_path", required=True, type=click.Path())
@click.option("--bin-width", default=0.05, show_default=True)
@click.option("--output", "output_path", required=True, type=click.Path())
@click.option("--manifest", "manifest_path", type=click.Path(), default=None)
@stage_command
def dice_hist_cmd(input_path, bin_width, output_path, manifest_path):
    """Pairwise Dice-distance histogram of a molecule set."""
    started = utcnow()
    if not Path(input_path).exists():
        raise FileNotFoundError(input_path)
    smiles = [s for _, s in _read_smiles_file(Path(input_path))]
    hist = dice_histogram(smiles, bin_width=bin_width)
    Path(output_path).write_text(hist.to_csv())
    _record(_manifest(manifest_path), "dice-hist", [input_path],
            [output_path], None,
            {"bin_width": bin_width, "mode_bin": hist.mode_bin}, started)
    click.echo(
        f"pairs {hist.n_pairs}, mode bin "
        f"[{hist.mode_bin * bin_width:.2f}, "
        f"{(hist.mode_bin + 1) * bin_width:.2f})")


@main.command("serve")
@click.option("--port", default=8660, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data-dir", type=click.Path(), default=None,
              help="directory holding candidates.json and labels.ndjson")
@click.option("--candidates", "candidates_path", type=click.Path(), default=None)
@click.option("--labels", "labels_path", type=click.Path(), default=None)
@click.option("--frontend", "frontend_dir", type=click.Path(), default=None)
@stage_command
def serve_cmd(port, host, data_dir, candidates_path, labels_path, frontend_dir):
    """Serve the adjudication API (and the UI when built)."""
    import uvicorn

    root = Path(data_dir) if data_dir else Path.cwd()
    cand = Path(candidates_path) if candidates_path else root / "candidates.json"
    labels = Path(labels_path) if labels_path else root / "labels.ndjson"
    if not cand.exists():
        raise FileNotFoundError(cand)
    store = AdjudicationStore(cand, labels)
    default_frontend = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    front = Path(frontend_dir) if frontend_dir else default_frontend
    app = create_app(store, frontend_dir=front if front.is_dir() else None)
    click.echo(f"serving on http://{host}:{port} "
               f"({len(store.candidates)} candidates, "
               f"{len(store.scaffolds)} scaffolds)")
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
