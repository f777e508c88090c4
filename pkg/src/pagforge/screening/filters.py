"""Post-generation chemistry filters.

A candidate passes when it is a sulfonium cation, contains no basic
amine, is not fluorine-rich, is not an exact training-set match, and
parsed in the first place. Verdicts carry every failed rule rather than
stopping at the first.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from pagforge.chem import Molecule, canonical_smiles, parse_smiles
from pagforge.chem.mol import BondOrder
from pagforge.descriptors import fluorine_fraction

FLUORINE_RICH_THRESHOLD = 0.2

RULES = (
    "invalid_smiles",
    "not_sulfonium",
    "contains_amine",
    "fluorine_rich",
    "exact_match_training",
)


@dataclass(frozen=True)
class FilterVerdict:
    molecule_id: str
    passed: bool
    failed_rules: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.passed != (len(self.failed_rules) == 0):
            raise ValueError("passed flag inconsistent with failed rules")


def is_sulfonium(mol: Molecule) -> bool:
    """A trivalent positively charged sulfur with only single bonds
    (hydrogens count toward the three substituents)."""
    for atom in mol.atoms:
        if atom.element != "S" or atom.formal_charge != 1:
            continue
        orders = [mol.bonds[bi].order for bi in mol.bonds_of(atom.index)]
        if any(o is not BondOrder.SINGLE for o in orders):
            continue
        if mol.degree(atom.index) + atom.total_h == 3:
            return True
    return False


def contains_basic_amine(mol: Molecule) -> bool:
    """Neutral trivalent non-aromatic nitrogen with all single bonds and
    no carbonyl carbon neighbor (amides are not basic)."""
    for atom in mol.atoms:
        if atom.element != "N" or atom.formal_charge != 0 or atom.aromatic:
            continue
        orders = [mol.bonds[bi].order for bi in mol.bonds_of(atom.index)]
        if any(o is not BondOrder.SINGLE for o in orders):
            continue
        if mol.degree(atom.index) + atom.total_h != 3:
            continue
        adjacent_carbonyl = False
        for nb in mol.neighbors(atom.index):
            if mol.atoms[nb].element != "C":
                continue
            for bj in mol.bonds_of(nb):
                bond = mol.bonds[bj]
                if (bond.order is BondOrder.DOUBLE
                        and mol.atoms[bond.other(nb)].element == "O"):
                    adjacent_carbonyl = True
        if not adjacent_carbonyl:
            return True
    return False


def is_fluorine_rich(mol: Molecule,
                     threshold: float = FLUORINE_RICH_THRESHOLD) -> bool:
    return fluorine_fraction(mol) >= threshold


def chem_filters(
    candidates: list[tuple[str, str]],
    training_canonical: set[str],
    fluorine_threshold: float = FLUORINE_RICH_THRESHOLD,
) -> list[FilterVerdict]:
    """Verdicts for (id, smiles) pairs; never raises on bad molecules."""
    verdicts = []
    for mol_id, smiles in candidates:
        failed: list[str] = []
        try:
            mol = parse_smiles(smiles)
        except Exception:
            verdicts.append(FilterVerdict(mol_id, False, ("invalid_smiles",)))
            continue
        if not is_sulfonium(mol):
            failed.append("not_sulfonium")
        if contains_basic_amine(mol):
            failed.append("contains_amine")
        if is_fluorine_rich(mol, fluorine_threshold):
            failed.append("fluorine_rich")
        if canonical_smiles(mol) in training_canonical:
            failed.append("exact_match_training")
        verdicts.append(
            FilterVerdict(mol_id, not failed, tuple(failed))
        )
    return verdicts
