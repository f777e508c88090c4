"""Periodic-table data for the supported element set.

The element set covers the organic subset plus silicon, which is enough
for the cation corpora handled by this package. Atomic weights are IUPAC
2021 conventional values.
"""

from __future__ import annotations

ATOMIC_NUMBER: dict[str, int] = {
    "H": 1,
    "B": 5,
    "C": 6,
    "N": 7,
    "O": 8,
    "F": 9,
    "Si": 14,
    "P": 15,
    "S": 16,
    "Cl": 17,
    "Br": 35,
    "I": 53,
}

ATOMIC_WEIGHT: dict[str, float] = {
    "H": 1.008,
    "B": 10.81,
    "C": 12.011,
    "N": 14.007,
    "O": 15.999,
    "F": 18.998403163,
    "Si": 28.085,
    "P": 30.973761998,
    "S": 32.06,
    "Cl": 35.45,
    "Br": 79.904,
    "I": 126.90447,
}

# Standard valences for neutral atoms, smallest first. Multi-valent
# elements (S, P) list every accepted state.
DEFAULT_VALENCES: dict[str, tuple[int, ...]] = {
    "H": (1,),
    "B": (3,),
    "C": (4,),
    "N": (3,),
    "O": (2,),
    "F": (1,),
    "Si": (4,),
    "P": (3, 5),
    "S": (2, 4, 6),
    "Cl": (1,),
    "Br": (1,),
    "I": (1,),
}

# Elements that may be written without brackets in SMILES.
ORGANIC_SUBSET = frozenset({"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"})

# Elements that may carry the aromatic (lowercase) flag.
AROMATIC_ELEMENTS = frozenset({"B", "C", "N", "O", "P", "S"})

# Lone-pair-bearing elements: a positive charge adds a bonding site,
# a negative charge removes one (e.g. N+ binds 4, O- binds 1).
_LONE_PAIR_DONORS = frozenset({"N", "O", "P", "S", "F", "Cl", "Br", "I"})


def allowed_valences(element: str, charge: int) -> tuple[int, ...]:
    """Accepted total valences (bond order sum + hydrogens) for an atom.

    For lone-pair donors the charge shifts each standard valence by the
    charge itself; for the carbon group a charge removes a bonding
    electron either way (carbocation and carbanion are both trivalent).
    """
    base = DEFAULT_VALENCES[element]
    if charge == 0:
        return base
    if element in _LONE_PAIR_DONORS:
        return tuple(max(0, v + charge) for v in base)
    return tuple(max(0, v - abs(charge)) for v in base)


def is_supported(element: str) -> bool:
    return element in ATOMIC_NUMBER
