"""Pipeline manifest: per-stage provenance (inputs, outputs, config
hashes, seeds, timestamps) appended as stages run."""

from __future__ import annotations

import hashlib
import json
from datetime import datetime, timezone
from pathlib import Path


def file_sha256(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def config_hash(payload: dict) -> str:
    return hashlib.sha256(
        json.dumps(payload, sort_keys=True).encode()).hexdigest()[:16]


def derive_seed(master_seed: int, stage: str) -> int:
    """Per-stage seed: low 63 bits of blake2b(master:stage)."""
    digest = hashlib.blake2b(
        f"{master_seed}:{stage}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little") & (2**63 - 1)


class PipelineManifest:
    def __init__(self, path: str | Path):
        self.path = Path(path)
        if self.path.exists():
            self.stages = json.loads(self.path.read_text())["stages"]
        else:
            self.stages = []

    def record(self, stage: str, inputs: list[str | Path],
               outputs: list[str | Path], seed: int | None,
               config: dict, started: str, finished: str) -> None:
        for p in inputs:
            if not Path(p).exists():
                raise FileNotFoundError(f"stage {stage}: missing input {p}")
        entry = {
            "stage": stage,
            "inputs": [
                {"path": str(p), "sha256": file_sha256(p)} for p in inputs
            ],
            "outputs": [
                {"path": str(p), "sha256": file_sha256(p)} for p in outputs
            ],
            "seed": seed,
            "config_hash": config_hash(config),
            "config": config,
            "started": started,
            "finished": finished,
        }
        self.stages.append(entry)
        self.path.write_text(
            json.dumps({"stages": self.stages}, indent=2) + "\n")


def utcnow() -> str:
    return datetime.now(timezone.utc).isoformat()
