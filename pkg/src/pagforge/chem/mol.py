"""Molecular graph types: atoms, bonds, molecules, and ring summaries.

Molecules are treated as immutable once constructed; every operation in
this package returns new values instead of mutating shared state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

from pagforge.chem.elements import ATOMIC_WEIGHT


class BondOrder(IntEnum):
    SINGLE = 1
    DOUBLE = 2
    TRIPLE = 3
    AROMATIC = 4

    @property
    def valence(self) -> int:
        """Contribution to an atom's bond order sum (aromatic counts 1;
        the delocalized electron is accounted for separately)."""
        return 1 if self is BondOrder.AROMATIC else int(self)


@dataclass(frozen=True)
class Atom:
    """One atom of a molecular graph.

    ``explicit_h`` is the hydrogen count written in a bracket expression;
    ``implicit_h`` is filled in from standard valences during parsing.
    """

    element: str
    formal_charge: int = 0
    aromatic: bool = False
    explicit_h: int = 0
    implicit_h: int = 0
    index: int = -1

    @property
    def total_h(self) -> int:
        return self.explicit_h + self.implicit_h


@dataclass(frozen=True)
class Bond:
    a: int
    b: int
    order: BondOrder = BondOrder.SINGLE

    def other(self, idx: int) -> int:
        return self.b if idx == self.a else self.a

    def key(self) -> tuple[int, int]:
        return (self.a, self.b) if self.a < self.b else (self.b, self.a)


@dataclass(frozen=True)
class RingInfo:
    """Smallest set of smallest rings, as atom-index cycles."""

    rings: tuple[tuple[int, ...], ...]
    ring_count: int
    max_ring_size: int

    @classmethod
    def from_rings(cls, rings: list[tuple[int, ...]]) -> "RingInfo":
        return cls(
            rings=tuple(rings),
            ring_count=len(rings),
            max_ring_size=max((len(r) for r in rings), default=0),
        )


class Molecule:
    """An attributed molecular graph.

    Atom indices are dense ordinals 0..n-1; bonds reference them. The
    adjacency structure is built once at construction.
    """

    __slots__ = ("atoms", "bonds", "id", "_adj", "_bond_lookup", "_sssr_cache")

    def __init__(self, atoms: list[Atom], bonds: list[Bond], id: str | None = None):
        self.atoms: tuple[Atom, ...] = tuple(
            a if a.index == i
            else Atom(a.element, a.formal_charge, a.aromatic,
                      a.explicit_h, a.implicit_h, i)
            for i, a in enumerate(atoms)
        )
        self.bonds: tuple[Bond, ...] = tuple(bonds)
        self.id = id
        adj: list[list[int]] = [[] for _ in atoms]
        lookup: dict[tuple[int, int], int] = {}
        for bi, bond in enumerate(self.bonds):
            adj[bond.a].append(bi)
            adj[bond.b].append(bi)
            lookup[bond.key()] = bi
        self._adj: tuple[tuple[int, ...], ...] = tuple(tuple(x) for x in adj)
        self._bond_lookup = lookup
        self._sssr_cache: list[tuple[int, ...]] | None = None

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def num_atoms(self) -> int:
        return len(self.atoms)

    def bonds_of(self, idx: int) -> tuple[int, ...]:
        """Indices of bonds incident to atom ``idx``."""
        return self._adj[idx]

    def neighbors(self, idx: int) -> list[int]:
        return [self.bonds[bi].other(idx) for bi in self._adj[idx]]

    def bond_between(self, a: int, b: int) -> Bond | None:
        bi = self._bond_lookup.get((a, b) if a < b else (b, a))
        return self.bonds[bi] if bi is not None else None

    def bond_index_between(self, a: int, b: int) -> int | None:
        return self._bond_lookup.get((a, b) if a < b else (b, a))

    def degree(self, idx: int) -> int:
        """Heavy-atom degree (explicit connections only)."""
        return len(self._adj[idx])

    def bond_order_sum(self, idx: int) -> int:
        return sum(self.bonds[bi].order.valence for bi in self._adj[idx])

    def net_charge(self) -> int:
        return sum(a.formal_charge for a in self.atoms)

    def molecular_weight(self) -> float:
        # fsum: correctly rounded, so the value is independent of atom order.
        return math.fsum(
            ATOMIC_WEIGHT[a.element] + a.total_h * ATOMIC_WEIGHT["H"]
            for a in self.atoms
        )

    def components(self) -> list[list[int]]:
        """Connected components as sorted atom index lists."""
        seen = [False] * len(self.atoms)
        out: list[list[int]] = []
        for start in range(len(self.atoms)):
            if seen[start]:
                continue
            stack, comp = [start], []
            seen[start] = True
            while stack:
                cur = stack.pop()
                comp.append(cur)
                for nb in self.neighbors(cur):
                    if not seen[nb]:
                        seen[nb] = True
                        stack.append(nb)
            out.append(sorted(comp))
        return out

    def permuted(self, order: list[int]) -> "Molecule":
        """Relabel atoms so new atom i is old atom ``order[i]``."""
        if sorted(order) != list(range(len(self.atoms))):
            raise ValueError("order must be a permutation of atom indices")
        inverse = [0] * len(order)
        for new_idx, old_idx in enumerate(order):
            inverse[old_idx] = new_idx
        atoms = [self.atoms[old] for old in order]
        bonds = [
            Bond(inverse[b.a], inverse[b.b], b.order) for b in self.bonds
        ]
        out = Molecule(atoms, bonds, id=self.id)
        if self._sssr_cache is not None:
            # Rings are graph-intrinsic; relabel instead of recomputing.
            remapped = [tuple(inverse[a] for a in ring) for ring in self._sssr_cache]
            remapped.sort(key=lambda r: (len(r), tuple(sorted(r))))
            out._sssr_cache = remapped
        return out

    def subgraph(self, keep: list[int]) -> "Molecule":
        """Induced subgraph on ``keep`` (hydrogen counts are preserved,
        not recomputed; callers adjust them when bonds are severed)."""
        keep_sorted = sorted(keep)
        remap = {old: new for new, old in enumerate(keep_sorted)}
        atoms = [self.atoms[i] for i in keep_sorted]
        bonds = [
            Bond(remap[b.a], remap[b.b], b.order)
            for b in self.bonds
            if b.a in remap and b.b in remap
        ]
        return Molecule(atoms, bonds, id=self.id)
