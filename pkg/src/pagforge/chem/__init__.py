"""Molecular graphs: SMILES parsing, canonicalization, rings, charges."""

from pagforge.chem.aromatic import KekulizationError, kekulize, perceive_aromaticity
from pagforge.chem.canon import canonical_smiles
from pagforge.chem.mol import Atom, Bond, BondOrder, Molecule, RingInfo
from pagforge.chem.parser import SmilesParseError, parse_smiles
from pagforge.chem.rings import find_sssr, ring_stats


def net_charge(mol: Molecule) -> int:
    """Sum of formal charges over all atoms."""
    return mol.net_charge()


def canonicalize(smiles: str) -> str:
    """Parse then canonicalize in one step."""
    return canonical_smiles(parse_smiles(smiles))


__all__ = [
    "Atom",
    "Bond",
    "BondOrder",
    "KekulizationError",
    "Molecule",
    "RingInfo",
    "SmilesParseError",
    "canonical_smiles",
    "canonicalize",
    "find_sssr",
    "kekulize",
    "net_charge",
    "parse_smiles",
    "perceive_aromaticity",
    "ring_stats",
]
