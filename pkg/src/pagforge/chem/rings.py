"""Ring perception: smallest set of smallest rings (SSSR).

The cycle-space dimension of a graph is E - V + C. Candidate rings are
the shortest cycles through each bond, found by breadth-first search with
that bond removed. Candidates are taken smallest-first (ties broken by
their sorted atom tuple) while they remain linearly independent over
GF(2) in bond space, until the cycle space is spanned.
"""

from __future__ import annotations

from collections import deque

from pagforge.chem.mol import Molecule, RingInfo


def _shortest_cycle_through(mol: Molecule, bond_idx: int) -> tuple[int, ...] | None:
    """Shortest cycle containing ``bond_idx``: BFS from one endpoint to
    the other with the bond itself removed. Returns atoms in cycle order."""
    bond = mol.bonds[bond_idx]
    start, goal = bond.a, bond.b
    prev: dict[int, int] = {start: -1}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == goal:
            break
        for bi in mol.bonds_of(cur):
            if bi == bond_idx:
                continue
            nb = mol.bonds[bi].other(cur)
            if nb not in prev:
                prev[nb] = cur
                queue.append(nb)
    if goal not in prev:
        return None
    path = [goal]
    while path[-1] != start:
        path.append(prev[path[-1]])
    return tuple(path)


def _ring_bond_mask(mol: Molecule, ring: tuple[int, ...]) -> int:
    mask = 0
    for i, a in enumerate(ring):
        b = ring[(i + 1) % len(ring)]
        bi = mol.bond_index_between(a, b)
        if bi is None:
            raise ValueError("ring atoms are not consecutively bonded")
        mask |= 1 << bi
    return mask


def find_sssr(mol: Molecule) -> list[tuple[int, ...]]:
    """Return the SSSR as atom-index cycles, sorted by (size, atoms).

    Cached on the molecule: the graph is immutable after construction.
    """
    if mol._sssr_cache is not None:
        return mol._sssr_cache
    n_cycles = len(mol.bonds) - mol.num_atoms + len(mol.components())
    if n_cycles <= 0:
        mol._sssr_cache = []
        return []

    candidates: dict[frozenset[int], tuple[int, ...]] = {}
    for bi in range(len(mol.bonds)):
        cycle = _shortest_cycle_through(mol, bi)
        if cycle is not None:
            key = frozenset(cycle)
            if key not in candidates:
                candidates[key] = cycle

    ordered = sorted(candidates.values(), key=lambda r: (len(r), tuple(sorted(r))))

    # Greedy GF(2) independence test on bond incidence vectors,
    # basis keyed by lowest set bit (pivot).
    basis: dict[int, int] = {}
    chosen: list[tuple[int, ...]] = []
    for ring in ordered:
        vec = _ring_bond_mask(mol, ring)
        while vec:
            pivot = vec & -vec
            if pivot in basis:
                vec ^= basis[pivot]
            else:
                break
        if vec:
            basis[vec & -vec] = vec
            chosen.append(ring)
            if len(chosen) == n_cycles:
                break
    chosen.sort(key=lambda r: (len(r), tuple(sorted(r))))
    mol._sssr_cache = chosen
    return chosen


def ring_stats(mol: Molecule) -> RingInfo:
    """SSSR-based ring summary: the ring list, count, and max size."""
    return RingInfo.from_rings(find_sssr(mol))


def ring_membership(mol: Molecule) -> tuple[set[int], set[int]]:
    """(atoms in any SSSR ring, bond indices in any SSSR ring)."""
    ring_atoms: set[int] = set()
    ring_bonds: set[int] = set()
    for ring in find_sssr(mol):
        ring_atoms.update(ring)
        for i, a in enumerate(ring):
            b = ring[(i + 1) % len(ring)]
            bi = mol.bond_index_between(a, b)
            assert bi is not None
            ring_bonds.add(bi)
    return ring_atoms, ring_bonds
