"""Retrosynthetic fragmentation over a 16-environment cleavage table.

Bonds are cleaved when their endpoints match one of the published
environment pairs; all matching acyclic bonds are cut simultaneously and
the open ends are capped with hydrogen. Environments needing atom types
outside this package's typing are inert. One deliberate extension: the
thioether sulfur environment also admits trivalent S+, so aryl/alkyl
bonds to sulfonium centers cleave (the compound family this pipeline
screens is built around them).
"""

from __future__ import annotations

from pagforge.chem import Molecule, canonical_smiles
from pagforge.chem.mol import Bond, BondOrder
from pagforge.chem.rings import ring_membership
from pagforge.screening.murcko import cap_with_hydrogens


class _Env:
    """Per-molecule context for environment predicates."""

    def __init__(self, mol: Molecule):
        self.mol = mol
        self.ring_atoms, self.ring_bonds = ring_membership(mol)

    def degree(self, i: int) -> int:
        return self.mol.degree(i)

    def orders(self, i: int) -> list[BondOrder]:
        return [self.mol.bonds[bi].order for bi in self.mol.bonds_of(i)]

    def has_double_to(self, i: int, element: str) -> bool:
        for bi in self.mol.bonds_of(i):
            bond = self.mol.bonds[bi]
            if (bond.order is BondOrder.DOUBLE
                    and self.mol.atoms[bond.other(i)].element == element):
                return True
        return False

    def single_bonds_only(self, i: int) -> bool:
        return all(o is BondOrder.SINGLE for o in self.orders(i))

    def acyclic_single_c_neighbor(self, i: int) -> bool:
        for bi in self.mol.bonds_of(i):
            bond = self.mol.bonds[bi]
            if (bond.order is BondOrder.SINGLE and bi not in self.ring_bonds
                    and self.mol.atoms[bond.other(i)].element == "C"):
                return True
        return False

    def ring_neighbors(self, i: int) -> list[str]:
        out = []
        for bi in self.mol.bonds_of(i):
            if bi in self.ring_bonds:
                out.append(self.mol.atoms[self.mol.bonds[bi].other(i)].element)
        return out


def _l1(e: _Env, i: int) -> bool:  # acyl carbon
    a = e.mol.atoms[i]
    return (a.element == "C" and not a.aromatic and e.degree(i) == 3
            and e.has_double_to(i, "O"))


def _l3(e: _Env, i: int) -> bool:  # ether/ester oxygen, acyclic
    a = e.mol.atoms[i]
    return (a.element == "O" and a.formal_charge == 0 and not a.aromatic
            and e.degree(i) == 2 and i not in e.ring_atoms
            and e.single_bonds_only(i))


def _l4(e: _Env, i: int) -> bool:  # sp3 carbon with a carbon attachment
    a = e.mol.atoms[i]
    return (a.element == "C" and not a.aromatic and e.degree(i) > 1
            and e.single_bonds_only(i) and e.acyclic_single_c_neighbor(i))


def _l5(e: _Env, i: int) -> bool:  # amine nitrogen (not amide-like)
    a = e.mol.atoms[i]
    if (a.element != "N" or a.formal_charge != 0 or a.aromatic
            or e.degree(i) <= 1 or not e.single_bonds_only(i)):
        return False
    for nb in e.mol.neighbors(i):
        elem = e.mol.atoms[nb].element
        if elem not in ("C", "S"):
            return False
        if elem == "C" and e.has_double_to(nb, "O") and i in e.ring_atoms:
            return False
    return True


def _l6(e: _Env, i: int) -> bool:  # carbonyl carbon outside rings
    a = e.mol.atoms[i]
    return (a.element == "C" and not a.aromatic and i not in e.ring_atoms
            and e.degree(i) == 3 and e.has_double_to(i, "O"))


def _l7(e: _Env, i: int) -> bool:  # olefin carbon
    a = e.mol.atoms[i]
    return (a.element == "C" and not a.aromatic and e.degree(i) in (2, 3)
            and e.has_double_to(i, "C") and i not in e.ring_atoms)


def _l8(e: _Env, i: int) -> bool:  # acyclic sp3 carbon
    a = e.mol.atoms[i]
    return (a.element == "C" and not a.aromatic and i not in e.ring_atoms
            and e.degree(i) > 1 and e.single_bonds_only(i))


def _l9(e: _Env, i: int) -> bool:  # aromatic ring nitrogen
    a = e.mol.atoms[i]
    return a.element == "N" and a.aromatic and a.formal_charge == 0


def _l10(e: _Env, i: int) -> bool:  # lactam nitrogen
    a = e.mol.atoms[i]
    if a.element != "N" or a.aromatic or i not in e.ring_atoms:
        return False
    for bi in e.mol.bonds_of(i):
        if bi not in e.ring_bonds:
            continue
        nb = e.mol.bonds[bi].other(i)
        if e.mol.atoms[nb].element == "C" and e.has_double_to(nb, "O"):
            return True
    return False


def _l11(e: _Env, i: int) -> bool:  # thioether sulfur, extended to S+
    a = e.mol.atoms[i]
    if a.element != "S" or a.aromatic or not e.single_bonds_only(i):
        return False
    if a.formal_charge == 0:
        return e.degree(i) == 2
    return a.formal_charge == 1 and e.degree(i) in (2, 3)


def _l12(e: _Env, i: int) -> bool:  # sulfonyl sulfur
    a = e.mol.atoms[i]
    if a.element != "S" or a.aromatic:
        return False
    doubles_to_o = sum(
        1 for bi in e.mol.bonds_of(i)
        if e.mol.bonds[bi].order is BondOrder.DOUBLE
        and e.mol.atoms[e.mol.bonds[bi].other(i)].element == "O"
    )
    return doubles_to_o == 2 and e.degree(i) == 4


def _l13(e: _Env, i: int) -> bool:  # ring carbon flanked by a ring heteroatom
    a = e.mol.atoms[i]
    if a.element != "C" or a.aromatic or i not in e.ring_atoms:
        return False
    ring_nbs = e.ring_neighbors(i)
    return any(x in ("N", "O", "S") for x in ring_nbs) and len(ring_nbs) >= 2


def _l14(e: _Env, i: int) -> bool:  # aromatic carbon beside a heteroatom
    a = e.mol.atoms[i]
    if a.element != "C" or not a.aromatic:
        return False
    return any(x in ("N", "O", "S") for x in e.ring_neighbors(i))


def _l15(e: _Env, i: int) -> bool:  # aliphatic ring carbon among carbons
    a = e.mol.atoms[i]
    if a.element != "C" or a.aromatic or i not in e.ring_atoms:
        return False
    return e.ring_neighbors(i).count("C") >= 2


def _l16(e: _Env, i: int) -> bool:  # benzene-like aromatic carbon
    a = e.mol.atoms[i]
    if a.element != "C" or not a.aromatic:
        return False
    return e.ring_neighbors(i).count("C") >= 2


_ENV_FNS = {
    1: _l1, 3: _l3, 4: _l4, 5: _l5, 6: _l6, 7: _l7, 8: _l8, 9: _l9,
    10: _l10, 11: _l11, 12: _l12, 13: _l13, 14: _l14, 15: _l15, 16: _l16,
}

# (env, env, bond order) cleavage pairs.
_RULES: list[tuple[int, int, BondOrder]] = [
    (1, 3, BondOrder.SINGLE), (1, 5, BondOrder.SINGLE), (1, 10, BondOrder.SINGLE),
    (3, 4, BondOrder.SINGLE), (3, 13, BondOrder.SINGLE), (3, 14, BondOrder.SINGLE),
    (3, 15, BondOrder.SINGLE), (3, 16, BondOrder.SINGLE),
    (4, 5, BondOrder.SINGLE), (4, 11, BondOrder.SINGLE),
    (5, 12, BondOrder.SINGLE), (5, 13, BondOrder.SINGLE), (5, 14, BondOrder.SINGLE),
    (5, 15, BondOrder.SINGLE), (5, 16, BondOrder.SINGLE),
    (6, 13, BondOrder.SINGLE), (6, 14, BondOrder.SINGLE), (6, 15, BondOrder.SINGLE),
    (6, 16, BondOrder.SINGLE),
    (7, 7, BondOrder.DOUBLE),
    (8, 9, BondOrder.SINGLE), (8, 10, BondOrder.SINGLE), (8, 13, BondOrder.SINGLE),
    (8, 14, BondOrder.SINGLE), (8, 15, BondOrder.SINGLE), (8, 16, BondOrder.SINGLE),
    (9, 13, BondOrder.SINGLE), (9, 14, BondOrder.SINGLE), (9, 15, BondOrder.SINGLE),
    (9, 16, BondOrder.SINGLE),
    (10, 13, BondOrder.SINGLE), (10, 14, BondOrder.SINGLE),
    (10, 15, BondOrder.SINGLE), (10, 16, BondOrder.SINGLE),
    (11, 13, BondOrder.SINGLE), (11, 14, BondOrder.SINGLE),
    (11, 15, BondOrder.SINGLE), (11, 16, BondOrder.SINGLE),
    (13, 14, BondOrder.SINGLE), (13, 15, BondOrder.SINGLE),
    (13, 16, BondOrder.SINGLE),
    (14, 14, BondOrder.SINGLE), (14, 15, BondOrder.SINGLE),
    (14, 16, BondOrder.SINGLE),
    (15, 16, BondOrder.SINGLE),
    (16, 16, BondOrder.SINGLE),
]


def cleavable_bonds(mol: Molecule) -> list[int]:
    """Indices of bonds matched by any cleavage rule (never ring bonds)."""
    env = _Env(mol)
    matches: dict[int, set[int]] = {}

    def envs_of(i: int) -> set[int]:
        if i not in matches:
            matches[i] = {label for label, fn in _ENV_FNS.items() if fn(env, i)}
        return matches[i]

    out = []
    for bi, bond in enumerate(mol.bonds):
        if bi in env.ring_bonds:
            continue
        for a_env, b_env, order in _RULES:
            if bond.order is not order:
                continue
            ea, eb = envs_of(bond.a), envs_of(bond.b)
            if (a_env in ea and b_env in eb) or (b_env in ea and a_env in eb):
                out.append(bi)
                break
    return out


def brics_fragments(mol: Molecule) -> list[Molecule]:
    """Fragments after cleaving every rule-matching bond, attachment
    points capped with hydrogen, deduplicated by canonical form. A
    molecule with nothing to cleave returns itself."""
    cuts = set(cleavable_bonds(mol))
    if not cuts:
        return [mol]
    kept_bonds = [Bond(b.a, b.b, b.order)
                  for bi, b in enumerate(mol.bonds) if bi not in cuts]
    skeleton = Molecule(list(mol.atoms), kept_bonds, id=mol.id)

    fragments = []
    seen: set[str] = set()
    for comp in skeleton.components():
        comp_set = set(comp)
        comp_bonds = [b for b in kept_bonds
                      if b.a in comp_set and b.b in comp_set]
        frag = cap_with_hydrogens(mol, comp, comp_bonds)
        key = canonical_smiles(frag)
        if key not in seen:
            seen.add(key)
            fragments.append(frag)
    return fragments
