"""Atom-contribution logP estimate.

Each heavy atom is assigned to one of ~30 coarse classes and contributes
a fixed value from the bundled parameter table; hydrogens contribute per
attachment type. Atoms outside the classification fall back to the
wildcard class. Values are tuned for consistent, monotone behavior, not
for agreement with any external toolkit.
"""

from __future__ import annotations

import math
from functools import lru_cache
from importlib import resources

from pagforge.chem.mol import BondOrder, Molecule

_HETERO = {"N", "O", "S", "P", "F", "Cl", "Br", "I", "Si", "B"}


@lru_cache(maxsize=1)
def _load_table() -> dict[str, float]:
    table: dict[str, float] = {}
    path = resources.files("pagforge.descriptors") / "tables" / "crippen.tsv"
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, value = line.split("\t")
        table[name] = float(value)
    return table


def _classify(mol: Molecule, idx: int) -> str:
    atom = mol.atoms[idx]
    elem = atom.element
    neighbors = mol.neighbors(idx)
    nbr_elems = [mol.atoms[n].element for n in neighbors]
    has_hetero_nbr = any(e in _HETERO for e in nbr_elems)
    orders = [mol.bonds[bi].order for bi in mol.bonds_of(idx)]
    double_to_o = any(
        mol.bonds[bi].order is BondOrder.DOUBLE
        and mol.atoms[mol.bonds[bi].other(idx)].element == "O"
        for bi in mol.bonds_of(idx)
    )

    if elem == "C":
        if atom.aromatic:
            if atom.total_h > 0:
                return "C.ar.H"
            if has_hetero_nbr:
                return "C.ar.hetero"
            return "C.ar.sub"
        if double_to_o:
            return "C.carbonyl"
        if BondOrder.TRIPLE in orders:
            return "C.sp"
        if BondOrder.DOUBLE in orders:
            return "C.sp2"
        if has_hetero_nbr:
            return "C.sp3.hetero"
        return "C.sp3"
    if elem == "N":
        if atom.formal_charge > 0:
            return "N.pos"
        if atom.aromatic:
            return "N.ar"
        if any(
            mol.atoms[n].element == "C" and any(
                mol.bonds[bj].order is BondOrder.DOUBLE
                and mol.atoms[mol.bonds[bj].other(n)].element == "O"
                for bj in mol.bonds_of(n)
            )
            for n in neighbors
        ):
            return "N.amide"
        if BondOrder.TRIPLE in orders:
            return "N.nitrile"
        if atom.total_h >= 2:
            return "N.amine.primary"
        if atom.total_h == 1:
            return "N.amine.secondary"
        return "N.amine.tertiary"
    if elem == "O":
        if atom.formal_charge < 0:
            return "O.neg"
        if atom.aromatic:
            return "O.ar"
        if any(o is BondOrder.DOUBLE for o in orders):
            return "O.carbonyl"
        if atom.total_h > 0:
            return "O.hydroxyl"
        return "O.ether"
    if elem == "S":
        if atom.formal_charge > 0:
            return "S.pos"
        if atom.aromatic:
            return "S.ar"
        if mol.bond_order_sum(idx) > 2:
            return "S.hyperval"
        return "S.thioether"
    if elem in ("F", "Cl", "Br", "I", "P", "Si", "B"):
        return elem
    return "wildcard"


def crippen_logp(mol: Molecule) -> float:
    """Sum of per-atom contributions plus per-hydrogen contributions."""
    table = _load_table()
    parts = []
    for i, atom in enumerate(mol.atoms):
        cls = _classify(mol, i)
        parts.append(table.get(cls, table["wildcard"]))
        h_class = "H.on.C" if atom.element == "C" else "H.on.hetero"
        parts.append(atom.total_h * table[h_class])
    # fsum keeps the value independent of atom input order.
    return math.fsum(parts)


def atom_class(mol: Molecule, idx: int) -> str:
    """Expose the classification for table-arithmetic checks."""
    return _classify(mol, idx)


def class_contribution(name: str) -> float:
    table = _load_table()
    return table.get(name, table["wildcard"])
