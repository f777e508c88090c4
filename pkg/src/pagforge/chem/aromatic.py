"""Aromaticity perception and kekulization.

Perception is a Hückel-style rule restricted to 5- and 6-membered SSSR
rings of sp2-capable C/N/O/S atoms. Each ring atom contributes pi
electrons by a local rule (1 from an endocyclic double bond, 2 from a
heteroatom lone pair, 0 from a vacant site); a ring is aromatic when all
atoms participate and the total is 6.

Kekulization assigns an alternating single/double pattern to aromatic
systems via backtracking matching; failure means the aromatic input was
inconsistent.
"""

from __future__ import annotations

from pagforge.chem.elements import allowed_valences
from pagforge.chem.mol import Atom, Bond, BondOrder, Molecule
from pagforge.chem.rings import find_sssr


class KekulizationError(ValueError):
    """Aromatic system admits no alternating bond assignment."""


_AROMATIC_CANDIDATE_ELEMENTS = {"C", "N", "O", "S"}


def _pi_contribution(mol: Molecule, idx: int, ring_atoms_all: set[int]) -> int | None:
    """Pi electrons atom ``idx`` donates to a candidate ring, or None if
    the atom cannot take part in an aromatic system. A double bond to any
    ring atom counts as endocyclic so fused systems perceive correctly."""
    atom = mol.atoms[idx]
    if atom.element not in _AROMATIC_CANDIDATE_ELEMENTS:
        return None
    if mol.degree(idx) + atom.total_h > 3:
        return None

    has_triple = any(
        mol.bonds[bi].order is BondOrder.TRIPLE for bi in mol.bonds_of(idx)
    )
    if has_triple:
        return None

    endo_double = exo_double = False
    for bi in mol.bonds_of(idx):
        bond = mol.bonds[bi]
        if bond.order is BondOrder.DOUBLE:
            if bond.other(idx) in ring_atoms_all:
                endo_double = True
            else:
                exo_double = True

    elem, charge = atom.element, atom.formal_charge
    if elem == "C":
        if endo_double:
            return 1
        if exo_double:
            return 0
        if charge == 1:
            return 0
        if charge == -1:
            return 2
        return None
    if elem == "N":
        if endo_double:
            return 1
        if exo_double:
            return None
        # Pyrrole-type nitrogen: lone pair in the pi system.
        if mol.degree(idx) + atom.total_h == 3:
            return 2
        return None
    if elem in ("O", "S"):
        if charge != 0 or endo_double or exo_double:
            return None
        return 2
    return None


def perceive_aromaticity(mol: Molecule) -> Molecule:
    """Return a molecule with aromatic flags set on every 5/6-ring that
    passes the Hückel rule; bonds inside those rings become aromatic.

    Molecules already flagged aromatic pass through untouched except for
    additional Kekulé rings being perceived.
    """
    rings = find_sssr(mol)
    if not rings:
        return mol

    ring_atoms_all: set[int] = set()
    for ring in rings:
        ring_atoms_all.update(ring)

    aromatic_atoms: set[int] = {i for i, a in enumerate(mol.atoms) if a.aromatic}
    aromatic_bonds: set[int] = {
        bi for bi, b in enumerate(mol.bonds) if b.order is BondOrder.AROMATIC
    }
    before = (len(aromatic_atoms), len(aromatic_bonds))

    for ring in rings:
        if len(ring) not in (5, 6):
            continue
        ring_set = set(ring)
        if ring_set <= aromatic_atoms:
            continue
        contribs = [_pi_contribution(mol, i, ring_atoms_all) for i in ring]
        if any(c is None for c in contribs):
            continue
        if sum(c for c in contribs if c is not None) != 6:
            continue
        aromatic_atoms.update(ring)
        for i, a in enumerate(ring):
            b = ring[(i + 1) % len(ring)]
            bi = mol.bond_index_between(a, b)
            if bi is not None:
                aromatic_bonds.add(bi)

    if not aromatic_atoms or (len(aromatic_atoms), len(aromatic_bonds)) == before:
        return mol

    atoms = [
        Atom(a.element, a.formal_charge, i in aromatic_atoms, a.explicit_h,
             a.implicit_h, i)
        for i, a in enumerate(mol.atoms)
    ]
    bonds = [
        Bond(b.a, b.b, BondOrder.AROMATIC if bi in aromatic_bonds else b.order)
        for bi, b in enumerate(mol.bonds)
    ]
    return Molecule(atoms, bonds, id=mol.id)


def _needs_double_bond(mol: Molecule, idx: int) -> bool:
    """True when an aromatic atom must receive one double bond in the
    kekulized form to reach its target valence."""
    atom = mol.atoms[idx]
    used = mol.bond_order_sum(idx) + atom.total_h
    targets = allowed_valences(atom.element, atom.formal_charge)
    target = min((v for v in targets if v >= used), default=None)
    if target is None:
        raise KekulizationError(
            f"atom {idx} ({atom.element}) exceeds every allowed valence"
        )
    return used < target


def kekulize(mol: Molecule) -> Molecule:
    """Replace aromatic bonds with an alternating single/double pattern.

    Raises KekulizationError when no perfect matching exists among the
    atoms that need a double bond.
    """
    arom_bond_idx = [
        bi for bi, b in enumerate(mol.bonds) if b.order is BondOrder.AROMATIC
    ]
    if not arom_bond_idx:
        return mol

    arom_atoms = sorted(
        {mol.bonds[bi].a for bi in arom_bond_idx}
        | {mol.bonds[bi].b for bi in arom_bond_idx}
    )
    needs = {i: _needs_double_bond(mol, i) for i in arom_atoms}

    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in arom_atoms}
    for bi in arom_bond_idx:
        b = mol.bonds[bi]
        adj[b.a].append((b.b, bi))
        adj[b.b].append((b.a, bi))

    needy = sorted(
        (i for i in arom_atoms if needs[i]),
        key=lambda i: len(adj[i]),
    )
    matched: dict[int, int] = {}
    double_bonds: set[int] = set()

    def backtrack(remaining: list[int]) -> bool:
        if not remaining:
            return True
        cur = remaining[0]
        if cur in matched:
            return backtrack(remaining[1:])
        for nb, bi in adj[cur]:
            if nb in matched or not needs.get(nb, False):
                continue
            matched[cur] = nb
            matched[nb] = cur
            double_bonds.add(bi)
            if backtrack([r for r in remaining[1:] if r not in matched]):
                return True
            del matched[cur]
            del matched[nb]
            double_bonds.discard(bi)
        return False

    if not backtrack(needy):
        raise KekulizationError("no alternating bond assignment exists")

    atoms = [
        Atom(a.element, a.formal_charge, False, a.explicit_h, a.implicit_h, i)
        for i, a in enumerate(mol.atoms)
    ]
    bonds = []
    for bi, b in enumerate(mol.bonds):
        if b.order is BondOrder.AROMATIC:
            order = BondOrder.DOUBLE if bi in double_bonds else BondOrder.SINGLE
        else:
            order = b.order
        bonds.append(Bond(b.a, b.b, order))
    return Molecule(atoms, bonds, id=mol.id)


def check_kekulizable(mol: Molecule) -> None:
    """Raise KekulizationError when the aromatic system is inconsistent."""
    kekulize(mol)
