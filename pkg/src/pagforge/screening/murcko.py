"""Ring-and-linker scaffolds.

The scaffold keeps ring systems and the linker atoms on paths between
rings; terminal atoms that belong to neither are deleted iteratively.
Charged atoms inside rings or linkers survive (a ring sulfonium stays a
sulfonium). Acyclic molecules have an empty scaffold.
"""

from __future__ import annotations

from pagforge.chem import Molecule
from pagforge.chem.mol import Atom, Bond
from pagforge.chem.rings import ring_membership


def cap_with_hydrogens(original: Molecule, kept_atoms: list[int],
                       kept_bonds: list[Bond]) -> Molecule:
    """Rebuild a reduced graph with hydrogens standing in for severed
    bonds: every kept atom keeps its original total valence.

    ``kept_bonds`` reference original atom indices.
    """
    kept_sorted = sorted(kept_atoms)
    remap = {old: new for new, old in enumerate(kept_sorted)}
    bonds = [Bond(remap[b.a], remap[b.b], b.order) for b in kept_bonds]

    used = {
        old: original.bond_order_sum(old) + original.atoms[old].total_h
        for old in kept_sorted
    }
    new_sigma = [0] * len(kept_sorted)
    for bond in bonds:
        new_sigma[bond.a] += bond.order.valence
        new_sigma[bond.b] += bond.order.valence

    atoms = []
    for new, old in enumerate(kept_sorted):
        a = original.atoms[old]
        h = max(0, used[old] - new_sigma[new])
        atoms.append(Atom(a.element, a.formal_charge, a.aromatic, 0, h, new))
    return Molecule(atoms, bonds, id=original.id)


def murcko_scaffold(mol: Molecule) -> Molecule | None:
    """Scaffold molecule, or None when the input is acyclic."""
    ring_atoms, _ = ring_membership(mol)
    if not ring_atoms:
        return None

    keep = set(range(mol.num_atoms))
    degree = {i: mol.degree(i) for i in keep}
    changed = True
    while changed:
        changed = False
        for i in sorted(keep):
            if i in ring_atoms:
                continue
            if degree[i] <= 1:
                keep.discard(i)
                for nb in mol.neighbors(i):
                    if nb in keep:
                        degree[nb] -= 1
                changed = True

    kept_bonds = [b for b in mol.bonds if b.a in keep and b.b in keep]
    return cap_with_hydrogens(mol, sorted(keep), kept_bonds)
