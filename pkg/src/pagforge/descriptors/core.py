"""Scalar molecular descriptors and the combined descriptor vector."""

from __future__ import annotations

from dataclasses import dataclass

from pagforge.chem.mol import Molecule
from pagforge.chem.rings import ring_stats
from pagforge.descriptors.crippen import crippen_logp
from pagforge.descriptors.sascore import sa_score


def molecular_weight(mol: Molecule) -> float:
    """Sum of standard atomic weights, implicit hydrogens included."""
    return mol.molecular_weight()


def fluorine_fraction(mol: Molecule) -> float:
    heavy = mol.num_atoms
    if heavy == 0:
        return 0.0
    return sum(1 for a in mol.atoms if a.element == "F") / heavy


@dataclass(frozen=True)
class DescriptorVector:
    mw: float
    logp: float
    sa: float
    num_atoms: int
    ring_count: int
    max_ring_size: int
    fluorine_fraction: float

    def as_tuple(self) -> tuple[float, ...]:
        return (
            self.mw,
            self.logp,
            self.sa,
            float(self.num_atoms),
            float(self.ring_count),
            float(self.max_ring_size),
            self.fluorine_fraction,
        )

    FIELDS = ("mw", "logp", "sa", "num_atoms", "ring_count",
              "max_ring_size", "fluorine_fraction")


def descriptor_vector(mol: Molecule) -> DescriptorVector:
    info = ring_stats(mol)
    return DescriptorVector(
        mw=molecular_weight(mol),
        logp=crippen_logp(mol),
        sa=sa_score(mol),
        num_atoms=mol.num_atoms,
        ring_count=info.ring_count,
        max_ring_size=info.max_ring_size,
        fluorine_fraction=fluorine_fraction(mol),
    )
