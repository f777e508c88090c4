"""Deterministic canonical SMILES.

Atoms are ranked by iterative invariant refinement over (element, charge,
hydrogen count, degree, aromaticity, ring membership) and neighbor rank
multisets. Remaining ties are resolved by individualizing each member of
the first tied cell in turn and keeping the lexicographically smallest
emitted string, so the output never depends on input atom order.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from pagforge.chem.aromatic import perceive_aromaticity
from pagforge.chem.elements import (
    AROMATIC_ELEMENTS,
    ORGANIC_SUBSET,
    allowed_valences,
)
from pagforge.chem.mol import BondOrder, Molecule
from pagforge.chem.rings import ring_membership


def _atom_token(mol: Molecule, idx: int) -> str:
    atom = mol.atoms[idx]
    symbol = atom.element.lower() if atom.aromatic else atom.element
    bare_ok = False
    if atom.formal_charge == 0 and atom.element in ORGANIC_SUBSET:
        if atom.aromatic:
            if atom.element in AROMATIC_ELEMENTS:
                sigma = mol.bond_order_sum(idx)
                implied = max(0, 3 - sigma) if atom.element == "C" else 0
                bare_ok = atom.total_h == implied
        else:
            sigma = mol.bond_order_sum(idx)
            allowed = allowed_valences(atom.element, 0)
            target = min((v for v in allowed if v >= sigma), default=None)
            bare_ok = target is not None and atom.total_h == target - sigma
    if bare_ok:
        return symbol

    h = atom.total_h
    h_part = "" if h == 0 else ("H" if h == 1 else f"H{h}")
    charge = atom.formal_charge
    if charge == 0:
        c_part = ""
    elif charge == 1:
        c_part = "+"
    elif charge == -1:
        c_part = "-"
    else:
        c_part = f"{'+' if charge > 0 else '-'}{abs(charge)}"
    return f"[{symbol}{h_part}{c_part}]"


def _bond_token(mol: Molecule, bi: int) -> str:
    bond = mol.bonds[bi]
    if bond.order is BondOrder.SINGLE:
        if mol.atoms[bond.a].aromatic and mol.atoms[bond.b].aromatic:
            return "-"
        return ""
    if bond.order is BondOrder.DOUBLE:
        return "="
    if bond.order is BondOrder.TRIPLE:
        return "#"
    return ""


@dataclass
class _Ctx:
    """Per-call immutable lookups shared by every tie-break branch."""

    adj: list[list[tuple[int, int, int]]]  # per atom: (order_val, nb, bond_idx)
    atom_tokens: list[str]
    bond_tokens: list[str]

    @classmethod
    def build(cls, mol: Molecule) -> "_Ctx":
        n = mol.num_atoms
        adj: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
        for bi, bond in enumerate(mol.bonds):
            ov = int(bond.order)
            adj[bond.a].append((ov, bond.b, bi))
            adj[bond.b].append((ov, bond.a, bi))
        return cls(
            adj=adj,
            atom_tokens=[_atom_token(mol, i) for i in range(n)],
            bond_tokens=[_bond_token(mol, bi) for bi in range(len(mol.bonds))],
        )


def _initial_invariants(mol: Molecule, ring_atoms: set[int]) -> list[tuple]:
    inv = []
    for i, atom in enumerate(mol.atoms):
        inv.append((
            atom.element,
            atom.aromatic,
            atom.formal_charge,
            atom.total_h,
            mol.degree(i),
            mol.bond_order_sum(i),
            i in ring_atoms,
        ))
    return inv


def _rank(keys: list) -> list[int]:
    order = {key: r for r, key in enumerate(sorted(set(keys)))}
    return [order[key] for key in keys]


def _refine(ctx: _Ctx, ranks: list[int], active: list[int]) -> list[int]:
    """Iterate neighbor-aware re-ranking until the partition stabilizes.

    Each round keys every active atom by (own rank, sorted neighbor
    (bond order, rank) pairs); the partition can only get finer, so an
    unchanged class count means a fixed point.
    """
    current = list(ranks)
    n_active = len(active)
    n_classes = len({current[i] for i in active})
    if n_classes == n_active:
        return current
    adj = ctx.adj
    while True:
        # Neighbor entries packed as single ints (order in the high bits)
        # so the sort compares ints, not tuples.
        keys = [
            (current[i],
             tuple(sorted((ov << 40) | current[nb] for ov, nb, _ in adj[i])))
            for i in active
        ]
        sub = _rank(keys)
        new_classes = len(set(sub))
        for pos, i in enumerate(active):
            current[i] = sub[pos]
        # A discrete partition cannot refine further; an unchanged class
        # count means a fixed point.
        if new_classes == n_classes or new_classes == n_active:
            return current
        n_classes = new_classes


def _emit_component(ctx: _Ctx, atoms: list[int], ranks: list[int]) -> str:
    """Write one connected component; ``ranks`` must be discrete on it."""
    root = min(atoms, key=lambda i: ranks[i])

    limit = sys.getrecursionlimit()
    if len(atoms) + 200 > limit:
        sys.setrecursionlimit(len(atoms) + 400)

    # Pass 1: depth-first spanning tree with children in rank order;
    # back edges become ring closures.
    discovery: dict[int, int] = {}
    tree_children: dict[int, list[tuple[int, int]]] = {i: [] for i in atoms}
    closures: list[int] = []
    used_bonds: set[int] = set()

    def dfs(u: int) -> None:
        discovery[u] = len(discovery)
        for _, v, bi in sorted((ranks[v], v, bi) for _, v, bi in ctx.adj[u]):
            if bi in used_bonds:
                continue
            used_bonds.add(bi)
            if v in discovery:
                closures.append(bi)
            else:
                tree_children[u].append((v, bi))
                dfs(v)

    dfs(root)

    atom_closures: dict[int, list[tuple[int, int]]] = {i: [] for i in atoms}
    if closures:
        endpoints: dict[int, tuple[int, int]] = {}
        for i in atoms:
            for _, v, bi in ctx.adj[i]:
                if bi not in endpoints:
                    endpoints[bi] = (i, v)
        for bi in closures:
            a, b = endpoints[bi]
            atom_closures[a].append((discovery[b], bi))
            atom_closures[b].append((discovery[a], bi))
        for i in atom_closures:
            atom_closures[i].sort()

    # Pass 2: emission. The first endpoint reached opens a digit and
    # carries the bond symbol; the second closes and frees the digit.
    digit_of: dict[int, int] = {}
    free_digits = list(range(99, 0, -1))
    out: list[str] = []

    def emit(u: int) -> None:
        out.append(ctx.atom_tokens[u])
        for _, bi in atom_closures[u]:
            if bi in digit_of:
                digit = digit_of.pop(bi)
                free_digits.append(digit)
                free_digits.sort(reverse=True)
                out.append(f"%{digit:02d}" if digit > 9 else str(digit))
            else:
                if not free_digits:
                    raise ValueError("more than 99 concurrently open rings")
                digit = free_digits.pop()
                digit_of[bi] = digit
                tok = ctx.bond_tokens[bi]
                out.append(f"{tok}%{digit:02d}" if digit > 9 else f"{tok}{digit}")
        kids = tree_children[u]
        last = len(kids) - 1
        for pos, (child, bi) in enumerate(kids):
            if pos != last:
                out.append("(")
            out.append(ctx.bond_tokens[bi])
            emit(child)
            if pos != last:
                out.append(")")

    emit(root)
    return "".join(out)


def _automorphic_relabeling(ctx: _Ctx, atoms: list[int], ranks_a: list[int],
                            ranks_b: list[int]) -> dict[int, int] | None:
    """The mapping of equal ranks across two discrete labelings, when it
    is a structure- and attribute-preserving automorphism (then both
    labelings emit the identical string); None otherwise."""
    by_rank_b = {ranks_b[i]: i for i in atoms}
    pi = {}
    for i in atoms:
        j = by_rank_b.get(ranks_a[i])
        if j is None or ctx.atom_tokens[i] != ctx.atom_tokens[j]:
            return None
        pi[i] = j
    bonds = set()
    for i in atoms:
        for ov, v, _ in ctx.adj[i]:
            bonds.add((i, v, ov))
    for i, v, ov in bonds:
        if (pi[i], pi[v], ov) not in bonds:
            return None
    return pi


class _Search:
    """Component-level search state: emitted discrete labelings and the
    automorphisms discovered by comparing them."""

    def __init__(self) -> None:
        self.emitted: list[list[int]] = []
        self.automorphisms: list[dict[int, int]] = []


def _canonical_component(ctx: _Ctx, atoms: list[int], ranks: list[int],
                         depth: int = 0,
                         search: _Search | None = None) -> str | None:
    """Resolve ties by individualize-and-branch; return the smallest
    emitted string of the subtree, or None when every leaf duplicates a
    labeling already emitted elsewhere in this component (duplicates have
    equal strings, so dropping them never changes the minimum)."""
    if search is None:
        search = _Search()
    ranks = _refine(ctx, ranks, atoms)
    cells: dict[int, list[int]] = {}
    for i in atoms:
        cells.setdefault(ranks[i], []).append(i)
    tied = sorted(r for r, members in cells.items() if len(members) > 1)
    if not tied:
        for previous in search.emitted:
            pi = _automorphic_relabeling(ctx, atoms, ranks, previous)
            if pi is not None:
                search.automorphisms.append(pi)
                return None
        search.emitted.append(ranks)
        return _emit_component(ctx, atoms, ranks)

    cell = cells[tied[0]]
    if depth > 16 or len(cell) > 24:
        # Pathological symmetry guard; deterministic for a fixed numbering.
        flat = [r * 1000 for r in ranks]
        for r in tied:
            for j, member in enumerate(sorted(cells[r])):
                flat[member] += j
        return _emit_component(ctx, atoms, flat)

    best: str | None = None
    processed: list[int] = []
    for candidate in cell:
        # Orbit pruning: an automorphism that stabilizes this node's
        # partition and carries an explored sibling onto this candidate
        # makes the two subtrees isomorphic, with identical string sets.
        in_orbit = False
        for pi in search.automorphisms:
            if not any(pi.get(prev) == candidate or pi.get(candidate) == prev
                       for prev in processed):
                continue
            if all(ranks[pi[i]] == ranks[i] for i in atoms):
                in_orbit = True
                break
        processed.append(candidate)
        if in_orbit:
            continue
        branched = [r * 2 for r in ranks]
        branched[candidate] -= 1  # unique, strictly smaller than its cell
        s = _canonical_component(ctx, atoms, branched, depth + 1, search)
        if s is not None and (best is None or s < best):
            best = s
    return best


def canonical_smiles(mol: Molecule) -> str:
    """Canonical SMILES: deterministic, independent of atom input order,
    and stable under reparse."""
    mol = perceive_aromaticity(mol)
    ring_atoms, _ = ring_membership(mol)
    ctx = _Ctx.build(mol)
    initial = _rank(_initial_invariants(mol, ring_atoms))
    parts = []
    for comp in mol.components():
        s = _canonical_component(ctx, comp, list(initial))
        assert s is not None  # the first leaf of a component always emits
        parts.append(s)
    return ".".join(sorted(parts))
