"""Self-describing checkpoint container.

Layout: a magic line, the header byte length, a JSON header (kind,
config, vocabulary, parameter names and shapes), then flat little-endian
float32 arrays concatenated in header order. One format serves every
model in the package.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

MAGIC = "PAGFORGE-CONTAINER v1"


def quantize(params: dict[str, np.ndarray]) -> dict[str, np.ndarray]:
    """Snap float64 parameters onto the float32 grid (still float64 in
    memory) so that saving and reloading reproduces them bit for bit."""
    return {k: v.astype(np.float32).astype(np.float64) for k, v in params.items()}


def save_container(
    path: str | Path,
    kind: str,
    config: dict,
    params: dict[str, np.ndarray],
    vocab: list[str] | None = None,
) -> None:
    names = sorted(params)
    header = {
        "kind": kind,
        "config": config,
        "vocab": vocab,
        "params": [{"name": n, "shape": list(params[n].shape)} for n in names],
    }
    header_bytes = (json.dumps(header, indent=1, sort_keys=True) + "\n").encode()
    with open(path, "wb") as fh:
        fh.write(f"{MAGIC}\n{len(header_bytes)}\n".encode())
        fh.write(header_bytes)
        for n in names:
            arr = np.ascontiguousarray(params[n], dtype="<f4")
            fh.write(arr.tobytes())


def load_container(
    path: str | Path,
) -> tuple[str, dict, list[str] | None, dict[str, np.ndarray]]:
    """Returns (kind, config, vocab, params). Parameters come back as
    float64 (exact image of the stored float32 values)."""
    with open(path, "rb") as fh:
        magic = fh.readline().decode().rstrip("\n")
        if magic != MAGIC:
            raise ValueError(f"{path}: not a pagforge container")
        header_len = int(fh.readline().decode().strip())
        header = json.loads(fh.read(header_len).decode())
        params: dict[str, np.ndarray] = {}
        for entry in header["params"]:
            shape = tuple(entry["shape"])
            count = int(np.prod(shape)) if shape else 1
            raw = fh.read(count * 4)
            arr = np.frombuffer(raw, dtype="<f4").reshape(shape)
            params[entry["name"]] = arr.astype(np.float64)
    return header["kind"], header["config"], header.get("vocab"), params
