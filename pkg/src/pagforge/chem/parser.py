"""SMILES parser.

Supported dialect: bare organic-subset atoms, bracket atoms with hydrogen
count and formal charge, aromatic lowercase atoms, bond symbols - = # :,
branches, ring closures (digits and %nn), and dot-separated components.
Stereochemistry and isotopes are out of dialect and rejected.

Parsing normalizes the molecule: implicit hydrogens are filled in from
standard valences, Kekulé rings satisfying the aromaticity rule are
converted to the aromatic representation, and every aromatic system is
checked for a valid alternating-bond assignment.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from pagforge.chem.aromatic import (
    KekulizationError,
    check_kekulizable,
    perceive_aromaticity,
)
from pagforge.chem.elements import (
    AROMATIC_ELEMENTS,
    ORGANIC_SUBSET,
    allowed_valences,
    is_supported,
)
from pagforge.chem.mol import Atom, Bond, BondOrder, Molecule
from pagforge.chem.rings import ring_membership


class SmilesParseError(ValueError):
    """Input string is not a valid SMILES in the supported dialect."""

    def __init__(self, message: str, text: str = "", pos: int | None = None):
        if pos is not None:
            message = f"{message} (position {pos} in {text!r})"
        super().__init__(message)


_BOND_SYMBOLS = {
    "-": BondOrder.SINGLE,
    "=": BondOrder.DOUBLE,
    "#": BondOrder.TRIPLE,
    ":": BondOrder.AROMATIC,
}


@dataclass
class _RawAtom:
    element: str
    aromatic: bool = False
    charge: int = 0
    explicit_h: int = 0
    bracket: bool = False


@dataclass
class _RawBond:
    a: int
    b: int
    order: BondOrder | None  # None = unannotated, resolved later


@dataclass
class _Parser:
    text: str
    pos: int = 0
    atoms: list[_RawAtom] = field(default_factory=list)
    bonds: list[_RawBond] = field(default_factory=list)
    open_rings: dict[int, tuple[int, BondOrder | None]] = field(default_factory=dict)

    def error(self, message: str) -> SmilesParseError:
        return SmilesParseError(message, self.text, self.pos)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def run(self) -> tuple[list[_RawAtom], list[_RawBond]]:
        prev: int | None = None
        pending: BondOrder | None = None
        branch_stack: list[int | None] = []

        while self.pos < len(self.text):
            ch = self.peek()
            if ch == "(":
                if prev is None:
                    raise self.error("branch start before any atom")
                branch_stack.append(prev)
                self.pos += 1
            elif ch == ")":
                if not branch_stack:
                    raise self.error("unmatched ')'")
                prev = branch_stack.pop()
                self.pos += 1
            elif ch in _BOND_SYMBOLS:
                if pending is not None:
                    raise self.error("two consecutive bond symbols")
                pending = _BOND_SYMBOLS[ch]
                self.pos += 1
            elif ch == ".":
                if pending is not None:
                    raise self.error("bond symbol before '.'")
                prev = None
                self.pos += 1
            elif ch.isdigit() or ch == "%":
                if prev is None:
                    raise self.error("ring closure before any atom")
                num = self._read_ring_number()
                pending = self._handle_ring(num, prev, pending)
            elif ch == "[":
                idx = self._read_bracket_atom()
                pending = self._connect(prev, idx, pending)
                prev = idx
            else:
                idx = self._read_bare_atom()
                pending = self._connect(prev, idx, pending)
                prev = idx

        if branch_stack:
            raise self.error("unmatched '('")
        if pending is not None:
            raise self.error("dangling bond symbol")
        if self.open_rings:
            nums = ", ".join(str(n) for n in sorted(self.open_rings))
            raise self.error(f"unclosed ring bond: {nums}")
        if not self.atoms:
            raise self.error("no atoms in input")
        return self.atoms, self.bonds

    def _connect(
        self, prev: int | None, idx: int, pending: BondOrder | None
    ) -> None:
        if prev is not None:
            self._add_bond(prev, idx, pending)
        elif pending is not None:
            raise self.error("bond symbol before first atom of a component")
        return None

    def _add_bond(self, a: int, b: int, order: BondOrder | None) -> None:
        if a == b:
            raise self.error("atom bonded to itself")
        for bond in self.bonds:
            if {bond.a, bond.b} == {a, b}:
                raise self.error("duplicate bond between one atom pair")
        self.bonds.append(_RawBond(a, b, order))

    def _read_ring_number(self) -> int:
        ch = self.peek()
        if ch == "%":
            digits = self.text[self.pos + 1 : self.pos + 3]
            if len(digits) != 2 or not digits.isdigit():
                raise self.error("'%' ring closure needs two digits")
            self.pos += 3
            return int(digits)
        self.pos += 1
        return int(ch)

    def _handle_ring(
        self, num: int, prev: int, pending: BondOrder | None
    ) -> BondOrder | None:
        if num in self.open_rings:
            other, other_order = self.open_rings.pop(num)
            if pending is not None and other_order is not None and pending != other_order:
                raise self.error(f"conflicting bond orders on ring closure {num}")
            order = pending if pending is not None else other_order
            self._add_bond(other, prev, order)
        else:
            self.open_rings[num] = (prev, pending)
        return None

    def _read_bare_atom(self) -> int:
        two = self.text[self.pos : self.pos + 2]
        if two in ("Cl", "Br"):
            self.pos += 2
            return self._push(_RawAtom(two))
        ch = self.peek()
        if ch.isupper():
            if not is_supported(ch) or ch not in ORGANIC_SUBSET:
                raise self.error(f"unknown element or bracket required: {ch!r}")
            self.pos += 1
            return self._push(_RawAtom(ch))
        if ch.islower():
            elem = ch.upper()
            if elem not in AROMATIC_ELEMENTS or elem not in ORGANIC_SUBSET:
                raise self.error(f"unknown aromatic atom: {ch!r}")
            self.pos += 1
            return self._push(_RawAtom(elem, aromatic=True))
        raise self.error(f"unexpected character {ch!r}")

    def _read_bracket_atom(self) -> int:
        start = self.pos
        end = self.text.find("]", start)
        if end == -1:
            raise self.error("unmatched bracket: missing ']'")
        body = self.text[start + 1 : end]
        self.pos = end + 1
        if not body:
            raise SmilesParseError("empty bracket atom", self.text, start)

        i = 0
        if body[0].isdigit():
            raise SmilesParseError("isotopes are unsupported", self.text, start)

        aromatic = False
        if body[i].isupper():
            elem = body[i]
            if i + 1 < len(body) and body[i + 1].islower() and is_supported(elem + body[i + 1]):
                elem += body[i + 1]
                i += 2
            else:
                i += 1
        elif body[i].islower():
            elem = body[i].upper()
            aromatic = True
            if elem not in AROMATIC_ELEMENTS:
                raise SmilesParseError(
                    f"element cannot be aromatic: {body[i]!r}", self.text, start
                )
            i += 1
        else:
            raise SmilesParseError(
                f"unsupported bracket content: {body!r}", self.text, start
            )
        if not is_supported(elem):
            raise SmilesParseError(f"unknown element: {elem!r}", self.text, start)

        explicit_h = 0
        if i < len(body) and body[i] == "H":
            i += 1
            digits = ""
            while i < len(body) and body[i].isdigit():
                digits += body[i]
                i += 1
            explicit_h = int(digits) if digits else 1

        charge = 0
        if i < len(body) and body[i] in "+-":
            sign = 1 if body[i] == "+" else -1
            symbol = body[i]
            i += 1
            digits = ""
            while i < len(body) and body[i].isdigit():
                digits += body[i]
                i += 1
            if digits:
                charge = sign * int(digits)
            else:
                charge = sign
                while i < len(body) and body[i] == symbol:
                    charge += sign
                    i += 1

        if i != len(body):
            raise SmilesParseError(
                f"unsupported bracket content: {body!r}", self.text, start
            )
        return self._push(
            _RawAtom(elem, aromatic=aromatic, charge=charge,
                     explicit_h=explicit_h, bracket=True)
        )

    def _push(self, atom: _RawAtom) -> int:
        self.atoms.append(atom)
        return len(self.atoms) - 1


def _aromatic_implicit_h(elem: str, sigma: int) -> int:
    # Aromatic carbon fills to three sigma connections; aromatic
    # heteroatoms carry no implicit hydrogens (pyrrole-type must be [nH]).
    if elem == "C":
        return max(0, 3 - sigma)
    return 0


def _resolve(raw_atoms: list[_RawAtom], raw_bonds: list[_RawBond],
             text: str, id: str | None) -> Molecule:
    # First pass: provisional molecule with unannotated bonds treated as
    # single so ring perception can run.
    provisional_orders: list[BondOrder] = []
    for rb in raw_bonds:
        if rb.order is not None:
            provisional_orders.append(rb.order)
        elif raw_atoms[rb.a].aromatic and raw_atoms[rb.b].aromatic:
            provisional_orders.append(BondOrder.AROMATIC)
        else:
            provisional_orders.append(BondOrder.SINGLE)

    atoms0 = [
        Atom(ra.element, ra.charge, ra.aromatic, ra.explicit_h, 0, i)
        for i, ra in enumerate(raw_atoms)
    ]
    bonds0 = [Bond(rb.a, rb.b, provisional_orders[bi])
              for bi, rb in enumerate(raw_bonds)]
    provisional = Molecule(atoms0, bonds0)
    _, ring_bonds = ring_membership(provisional)

    # Unannotated aromatic-aromatic bonds outside any ring are single
    # (e.g. the biphenyl linker); explicit ':' stays aromatic.
    orders: list[BondOrder] = []
    for bi, rb in enumerate(raw_bonds):
        order = provisional_orders[bi]
        if (rb.order is None and order is BondOrder.AROMATIC
                and bi not in ring_bonds):
            order = BondOrder.SINGLE
        orders.append(order)

    bonds1 = [Bond(rb.a, rb.b, orders[bi]) for bi, rb in enumerate(raw_bonds)]
    base = Molecule(atoms0, bonds1)

    # Implicit hydrogen assignment and valence validation.
    final_atoms: list[Atom] = []
    for i, ra in enumerate(raw_atoms):
        sigma = base.bond_order_sum(i)
        if ra.bracket:
            implicit = 0
            used = sigma + ra.explicit_h
            allowed = allowed_valences(ra.element, ra.charge)
            if ra.aromatic:
                if used not in allowed and used + 1 not in allowed:
                    raise SmilesParseError(
                        f"valence violation on aromatic atom {i} "
                        f"({ra.element}{ra.charge:+d}): {used}", text)
            elif used not in allowed:
                raise SmilesParseError(
                    f"valence violation on atom {i} "
                    f"({ra.element}, charge {ra.charge}): "
                    f"valence {used} not in {allowed}", text)
        elif ra.aromatic:
            implicit = _aromatic_implicit_h(ra.element, sigma)
        else:
            allowed = allowed_valences(ra.element, ra.charge)
            target = min((v for v in allowed if v >= sigma), default=None)
            if target is None:
                raise SmilesParseError(
                    f"valence violation on atom {i} ({ra.element}): "
                    f"bond order sum {sigma} exceeds {allowed}", text)
            implicit = target - sigma
        final_atoms.append(
            Atom(ra.element, ra.charge, ra.aromatic, ra.explicit_h, implicit, i)
        )

    mol = Molecule(final_atoms, bonds1, id=id)
    mol = perceive_aromaticity(mol)
    try:
        check_kekulizable(mol)
    except KekulizationError as exc:
        raise SmilesParseError(
            f"non-kekulizable aromatic system: {exc}", text) from exc
    return mol


def parse_smiles(text: str, id: str | None = None) -> Molecule:
    """Parse a SMILES string into a normalized molecular graph.

    Raises SmilesParseError for malformed input: unclosed ring bonds,
    unmatched brackets, unknown elements, valence violations, and
    non-kekulizable aromatic systems.
    """
    stripped = text.strip()
    if not stripped:
        raise SmilesParseError("empty SMILES string")
    parser = _Parser(stripped)
    raw_atoms, raw_bonds = parser.run()
    return _resolve(raw_atoms, raw_bonds, stripped, id)
