"""Morgan (circular) fingerprints and bitset similarity.

Atom environments are hashed by iterated neighborhood refinement with a
platform-independent FNV-1a mix, then folded into a fixed-width bitset.
"""

from __future__ import annotations

from dataclasses import dataclass

from pagforge.chem.elements import ATOMIC_NUMBER
from pagforge.chem.mol import Molecule
from pagforge.chem.rings import ring_membership

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF


def _fnv_mix(values: tuple[int, ...]) -> int:
    h = _FNV_OFFSET
    for value in values:
        v = value & _MASK64
        for _ in range(8):
            h ^= v & 0xFF
            h = (h * _FNV_PRIME) & _MASK64
            v >>= 8
    return h


@dataclass(frozen=True)
class FingerprintBitset:
    """Fixed-width fingerprint; ``bits`` is a Python int bitmask."""

    bits: int
    width: int = 2048
    radius: int = 2

    def __post_init__(self):
        if self.width <= 0 or self.width & (self.width - 1):
            raise ValueError("fingerprint width must be a power of two")

    @property
    def popcount(self) -> int:
        return self.bits.bit_count()

    def on_bits(self) -> list[int]:
        out, bits, pos = [], self.bits, 0
        while bits:
            if bits & 1:
                out.append(pos)
            bits >>= 1
            pos += 1
        return out


def atom_environments(mol: Molecule, radius: int) -> list[int]:
    """All environment hashes for radii 0..radius, one per (atom, radius)."""
    ring_atoms, _ = ring_membership(mol)
    inv = []
    for i, atom in enumerate(mol.atoms):
        inv.append(_fnv_mix((
            ATOMIC_NUMBER[atom.element],
            mol.degree(i),
            atom.formal_charge & _MASK64,
            atom.total_h,
            int(atom.aromatic),
            int(i in ring_atoms),
        )))
    envs = list(inv)
    for it in range(1, radius + 1):
        nxt = []
        for i in range(mol.num_atoms):
            neighborhood: list[int] = []
            for bi in mol.bonds_of(i):
                bond = mol.bonds[bi]
                neighborhood.append((bond.order.value << 60) ^ inv[bond.other(i)])
            parts = (it, inv[i], *sorted(neighborhood))
            nxt.append(_fnv_mix(parts))
        inv = nxt
        envs.extend(inv)
    return envs


def environment_hash(mol: Molecule, atom_idx: int, radius: int) -> int:
    """Environment id of one atom at exactly the given radius."""
    envs = atom_environments(mol, radius)
    return envs[radius * mol.num_atoms + atom_idx]


def morgan_fingerprint(mol: Molecule, radius: int = 2,
                       width: int = 2048) -> FingerprintBitset:
    bits = 0
    for env in atom_environments(mol, radius):
        bits |= 1 << (env % width)
    return FingerprintBitset(bits=bits, width=width, radius=radius)


def similarity(a: FingerprintBitset, b: FingerprintBitset,
               kind: str = "tanimoto") -> float:
    """Tanimoto or Dice similarity of two equal-width bitsets."""
    if a.width != b.width:
        raise ValueError(f"fingerprint width mismatch: {a.width} vs {b.width}")
    inter = (a.bits & b.bits).bit_count()
    pa, pb = a.popcount, b.popcount
    if pa + pb == 0:
        return 1.0
    if kind == "tanimoto":
        union = (a.bits | b.bits).bit_count()
        return inter / union
    if kind == "dice":
        return 2.0 * inter / (pa + pb)
    raise ValueError(f"unknown similarity kind: {kind!r}")


def dice_distance(a: FingerprintBitset, b: FingerprintBitset) -> float:
    return 1.0 - similarity(a, b, kind="dice")
