"""SMILES tokenization and the sequence vocabulary.

Tokens are bracket expressions, two-letter elements, two-digit ring
closures, or single characters. The vocabulary reserves start/end/pad
ids and round-trips any in-vocabulary string.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

_TOKEN_RE = re.compile(r"(\[[^\]]*\]|Br|Cl|Si|%\d\d|.)")

START, END, PAD = "<start>", "<end>", "<pad>"


class TokenizeError(ValueError):
    pass


def split_tokens(smiles: str) -> list[str]:
    tokens = _TOKEN_RE.findall(smiles)
    if "".join(tokens) != smiles:
        raise TokenizeError(f"cannot tokenize {smiles!r}")
    return tokens


@dataclass(frozen=True)
class Vocabulary:
    """Ordered token set with reserved control tokens at the front."""

    tokens: tuple[str, ...]
    max_len: int = 128
    _index: dict[str, int] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_index", {tok: i for i, tok in enumerate(self.tokens)}
        )

    @classmethod
    def build(cls, corpus: list[str], max_len: int = 128) -> "Vocabulary":
        seen: set[str] = set()
        for smiles in corpus:
            seen.update(split_tokens(smiles))
        tokens = (PAD, START, END, *sorted(seen))
        return cls(tokens=tokens, max_len=max_len)

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def pad_id(self) -> int:
        return self._index[PAD]

    @property
    def start_id(self) -> int:
        return self._index[START]

    @property
    def end_id(self) -> int:
        return self._index[END]

    def encode(self, smiles: str) -> list[int]:
        """Token ids with start/end markers. Raises on out-of-vocabulary
        tokens or overlength sequences."""
        parts = split_tokens(smiles)
        ids = [self.start_id]
        for tok in parts:
            if tok not in self._index:
                raise TokenizeError(f"out-of-vocabulary token {tok!r} in {smiles!r}")
            ids.append(self._index[tok])
        ids.append(self.end_id)
        if len(ids) > self.max_len:
            raise TokenizeError(
                f"sequence length {len(ids)} exceeds limit {self.max_len}"
            )
        return ids

    def decode(self, ids: list[int]) -> str:
        out = []
        for i in ids:
            tok = self.tokens[i]
            if tok == END:
                break
            if tok in (START, PAD):
                continue
            out.append(tok)
        return "".join(out)


def tokenize(smiles: str, vocab: Vocabulary) -> list[int]:
    return vocab.encode(smiles)


def detokenize(ids: list[int], vocab: Vocabulary) -> str:
    return vocab.decode(ids)
