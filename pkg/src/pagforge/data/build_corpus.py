"""Deterministic builder for the bundled corpora and the SA table.

Run as ``python -m pagforge.data.build_corpus`` to regenerate:

  mini_zinc.smi       ~5000 synthetic cations (plus windowing edge cases)
  sulfonium_ref.csv   ~300 sulfonium cations with surrogate orbital labels
  roundtrip_1k.smi    1000 structurally varied parser-facing strings
  default_window.json property window used by the filtering stage
  sa_fragments.tsv    radius-2 environment frequency scores

Every output is a pure function of the seed constants below.
"""

from __future__ import annotations

import csv
import json
import random
from collections import Counter
from pathlib import Path

from pagforge.chem import (
    Atom,
    Bond,
    BondOrder,
    Molecule,
    canonical_smiles,
    parse_smiles,
    ring_stats,
)
from pagforge.descriptors import fluorine_fraction
from pagforge.descriptors.sascore import (
    fragment_scores_from_counts,
    molecule_environment_ids,
)
from pagforge.tokenizer import split_tokens

DATA_DIR = Path(__file__).resolve().parent
TABLE_DIR = DATA_DIR.parent / "descriptors" / "tables"

MASTER_SEED = 20240801

TABLE1_WINDOW = {
    "num_atoms": [4, 79],
    "logp": [-5.68, 23.73],
    "sa": [1.82, 7.91],
    "mw": [58.10, 984.18],
    "ring_count": [0, 12],
    "max_ring_size": [0, 6],
    "elements": ["Br", "C", "Cl", "F", "I", "N", "O", "S", "Si"],
}


# ---------------------------------------------------------------- fragments

_HALIDES = ["F", "Cl", "Br", "I"]


def _alkyl(rng: random.Random, max_c: int) -> str:
    n = rng.randint(1, max(1, max_c))
    out = ["C"]
    for _ in range(n - 1):
        if rng.random() < 0.2:
            out.append("(C)")
        out.append("C")
    return "".join(out)


def _aryl(rng: random.Random, depth: int) -> str:
    d = depth
    choice = rng.random()
    if choice < 0.45:
        sub = ""
        if rng.random() < 0.5:
            inner = _substituent(rng, depth + 1, allow_aryl=False)
            sub = f"({inner})"
        return f"c{d}ccc{sub}cc{d}"
    if choice < 0.6:
        return f"c{d}ccncc{d}"
    if choice < 0.72:
        return f"c{d}cccs{d}"
    if choice < 0.82:
        return f"c{d}ccco{d}"
    if choice < 0.92:
        sub = rng.choice(_HALIDES)
        return f"c{d}ccc({sub})cc{d}"
    return f"c{d}ccc{d+1}ccccc{d+1}c{d}"


def _sat_ring(rng: random.Random, depth: int) -> str:
    d = depth
    return rng.choice([
        f"C{d}CCCCC{d}",
        f"C{d}CCCC{d}",
        f"C{d}CCOCC{d}",
        f"C{d}CCSCC{d}",
        f"C{d}COCC{d}",
    ])


def _substituent(rng: random.Random, depth: int, allow_aryl: bool = True) -> str:
    roll = rng.random()
    if depth >= 4:
        return _alkyl(rng, 3)
    if allow_aryl and roll < 0.35:
        return _aryl(rng, depth)
    if roll < 0.5:
        return _sat_ring(rng, depth)
    if roll < 0.62:
        return "O" + _alkyl(rng, 3)
    if roll < 0.68:
        return rng.choice(_HALIDES)
    if roll < 0.74:
        return "C(F)(F)F"
    if roll < 0.79:
        return "[Si](C)(C)C"
    return _alkyl(rng, 6)


def _sulfonium(rng: random.Random) -> str:
    kind = rng.random()
    if kind < 0.35:
        # Triaryl and mixed aryl/alkyl sulfoniums.
        subs = [_aryl(rng, 1), _aryl(rng, 2)]
        third = _aryl(rng, 3) if rng.random() < 0.6 else _alkyl(rng, 4)
        return f"[S+]({subs[0]})({subs[1]}){third}"
    if kind < 0.6:
        a = _substituent(rng, 2)
        b = _alkyl(rng, 4)
        c = _alkyl(rng, 3)
        return f"[S+]({a})({b}){c}"
    if kind < 0.85:
        # Cyclic sulfonium with one exocyclic substituent.
        ring = rng.choice(["CCCC", "CCCCC", "CCOCC"])
        sub = _substituent(rng, 2)
        return f"[S+]9({sub}){ring}9"
    a = _aryl(rng, 1)
    b = _alkyl(rng, 5)
    return f"[S+]({a})({b}){_alkyl(rng, 2)}"


def _ammonium(rng: random.Random) -> str:
    kind = rng.random()
    if kind < 0.4:
        subs = [_alkyl(rng, 4) for _ in range(4)]
        return f"[N+]({subs[0]})({subs[1]})({subs[2]}){subs[3]}"
    if kind < 0.6:
        return f"[NH3+]{_substituent(rng, 2)}"
    if kind < 0.8:
        return f"[NH2+]({_alkyl(rng, 3)}){_substituent(rng, 2)}"
    return f"[NH+]({_alkyl(rng, 2)})({_alkyl(rng, 3)}){_substituent(rng, 2)}"


def _pyridinium(rng: random.Random) -> str:
    sub = _alkyl(rng, 5)
    tail = ""
    if rng.random() < 0.4:
        tail = f"({_substituent(rng, 2, allow_aryl=False)})"
    return f"c9cc{tail}c[n+]({sub})c9"


def _iodonium(rng: random.Random) -> str:
    return f"[I+]({_aryl(rng, 1)}){_aryl(rng, 2)}"


def _neutral(rng: random.Random) -> str:
    roll = rng.random()
    if roll < 0.3:
        return _aryl(rng, 1)
    if roll < 0.5:
        return f"{_alkyl(rng, 5)}C(=O)O{_alkyl(rng, 3)}"
    if roll < 0.65:
        return f"{_alkyl(rng, 4)}C(=O)N{_alkyl(rng, 2)}"
    if roll < 0.8:
        return f"{_alkyl(rng, 4)}O{_alkyl(rng, 4)}"
    if roll < 0.9:
        return f"N#C{_substituent(rng, 1)}"
    return f"{_aryl(rng, 1)}{_alkyl(rng, 4)}"


# ----------------------------------------------------- graph-built extremes

def _acene(n_rings: int) -> Molecule:
    """Linear fused hexagon ladder, all-aromatic."""
    top = list(range(0, 2 * n_rings + 1))
    bot = list(range(2 * n_rings + 1, 2 * (2 * n_rings + 1)))
    atoms = [Atom("C", aromatic=True) for _ in range(len(top) + len(bot))]
    bonds = []
    for i in range(len(top) - 1):
        bonds.append(Bond(top[i], top[i + 1], BondOrder.AROMATIC))
        bonds.append(Bond(bot[i], bot[i + 1], BondOrder.AROMATIC))
    for i in range(0, 2 * n_rings + 1, 2):
        bonds.append(Bond(top[i], bot[i], BondOrder.AROMATIC))
    mol = Molecule(atoms, bonds)
    # Fill perimeter hydrogens: degree-2 aromatic carbons carry one H.
    fixed = [
        Atom("C", 0, True, 0, 1 if mol.degree(i) == 2 else 0, i)
        for i in range(mol.num_atoms)
    ]
    return Molecule(fixed, bonds)


def _attach_polyyne(mol: Molecule, at: int, n_carbons: int) -> Molecule:
    """Graft an alternating single/triple carbon chain onto atom ``at``."""
    atoms = list(mol.atoms)
    bonds = list(mol.bonds)
    host = atoms[at]
    atoms[at] = Atom(host.element, host.formal_charge, host.aromatic,
                     host.explicit_h, 0, at)
    prev = at
    for k in range(n_carbons):
        idx = len(atoms)
        pair_pos = k % 2  # 0: single bond in, starts a triple pair
        atoms.append(Atom("C", 0, False, 0, 0, idx))
        order = BondOrder.SINGLE if pair_pos == 0 else BondOrder.TRIPLE
        bonds.append(Bond(prev, idx, order))
        prev = idx
    # Terminal carbon hydrogens from valence.
    built = Molecule(atoms, bonds)
    fixed = []
    for i, a in enumerate(built.atoms):
        if a.element == "C" and not a.aromatic:
            h = 4 - built.bond_order_sum(i)
            fixed.append(Atom("C", 0, False, 0, max(0, h), i))
        else:
            fixed.append(a)
    return Molecule(fixed, bonds)


def windowing_edge_cases() -> list[tuple[str, str]]:
    """Boundary molecules for the property window: a 79-atom passer, an
    80-atom reject, a phosphonium (element reject), and the molecular
    weight boundary pair."""
    flake = _acene(12)                    # 50 aromatic C, 12 rings
    flake = _attach_polyyne(flake, 1, 14)
    seventy_nine = _attach_polyyne(flake, 2 * 12 + 1 + 1, 15)
    assert seventy_nine.num_atoms == 79, seventy_nine.num_atoms
    eighty = _attach_polyyne(_attach_polyyne(_acene(12), 1, 14),
                             2 * 12 + 1 + 1, 16)
    assert eighty.num_atoms == 80
    return [
        (canonical_smiles(seventy_nine), "edge-atoms-79"),
        (canonical_smiles(eighty), "edge-atoms-80"),
        ("C[P+](C)(C)C", "edge-phosphonium"),
        ("CC(C)[NH3+]", "edge-mw-just-above"),
        ("C[NH3+]", "edge-mw-below"),
    ]


# ------------------------------------------------------------------- build

def _emit_unique(generator, rng: random.Random, count: int, prefix: str,
                 exclude: set[str] | None = None) -> list[tuple[str, str]]:
    out: list[tuple[str, str]] = []
    seen: set[str] = set(exclude or ())
    attempts = 0
    while len(out) < count and attempts < count * 200:
        attempts += 1
        smiles = generator(rng)
        try:
            mol = parse_smiles(smiles)
            canonical = canonical_smiles(mol)
        except Exception:
            continue
        if canonical in seen:
            continue
        seen.add(canonical)
        out.append((smiles, f"{prefix}{len(out):05d}"))
    if len(out) < count:
        raise RuntimeError(f"generator exhausted at {len(out)}/{count}")
    return out


def _surrogate_lumo(rng: random.Random, smiles: str) -> float:
    """Deterministic structural stand-in for an orbital energy label.

    Lower (more negative) for aromatic-rich, fluorinated, heavy cations;
    the spread straddles -5 eV so both label classes are populated.
    """
    mol = parse_smiles(smiles)
    info = ring_stats(mol)
    aromatic_atoms = sum(1 for a in mol.atoms if a.aromatic)
    value = (
        -3.4
        - 1.1 * (aromatic_atoms / max(1, mol.num_atoms)) * 3.0
        - 3.0 * fluorine_fraction(mol)
        - 0.0022 * mol.molecular_weight()
        + 0.08 * info.ring_count
        + rng.gauss(0.0, 0.35)
    )
    return round(value, 3)


def build(outdir: Path = DATA_DIR, tabledir: Path = TABLE_DIR) -> dict:
    rng = random.Random(MASTER_SEED)

    mini: list[tuple[str, str]] = []
    mini += _emit_unique(_sulfonium, rng, 2000, "mz-s")
    mini += _emit_unique(_ammonium, rng, 1700, "mz-n")
    mini += _emit_unique(_pyridinium, rng, 800, "mz-p")
    mini += _emit_unique(_iodonium, rng, 400, "mz-i")
    mini += windowing_edge_cases()

    mini_canonical = {canonical_smiles(parse_smiles(s)) for s, _ in mini}
    ref_rng = random.Random(MASTER_SEED + 1)
    ref = _emit_unique(_sulfonium, ref_rng, 300, "ref-s", exclude=mini_canonical)

    label_rng = random.Random(MASTER_SEED + 2)
    ref_rows = [
        (smiles, rid, _surrogate_lumo(label_rng, smiles)) for smiles, rid in ref
    ]

    rt_rng = random.Random(MASTER_SEED + 3)
    roundtrip: list[tuple[str, str]] = []
    roundtrip += _emit_unique(_sulfonium, rt_rng, 300, "rt-s")
    roundtrip += _emit_unique(_ammonium, rt_rng, 250, "rt-n")
    roundtrip += _emit_unique(_neutral, rt_rng, 300, "rt-x")
    roundtrip += _emit_unique(_pyridinium, rt_rng, 80, "rt-p")
    roundtrip += _emit_unique(_iodonium, rt_rng, 60, "rt-i")
    salts = [
        ("[NH4+].[Cl-]", "rt-salt0"),
        ("C[S+](C)C.[Br-]", "rt-salt1"),
        ("c1ccc([S+](c2ccccc2)c2ccccc2)cc1.FC(F)(F)S(=O)(=O)[O-]", "rt-salt2"),
        ("C[N+](C)(C)C.[I-]", "rt-salt3"),
        (canonical_smiles(_acene(6)), "rt-acene6"),
        (canonical_smiles(_acene(9)), "rt-acene9"),
        ("C1CC2CCC1CC2", "rt-bicyclo"),
        ("C%10CCCC%10", "rt-pctclosure"),
        ("C1(CC1)C1CC1", "rt-reuse-digit"),
        ("[SiH3]C[SiH3]", "rt-silane"),
    ]
    roundtrip += salts
    assert len(roundtrip) == 1000, len(roundtrip)

    # Token-coverage guard: downstream encoders build their vocabulary
    # from the mini corpus and must be able to read the reference set.
    mini_tokens = {t for s, _ in mini for t in split_tokens(s)}
    ref_tokens = {t for s, _, _ in ref_rows for t in split_tokens(s)}
    missing = ref_tokens - mini_tokens
    assert not missing, f"reference tokens missing from mini corpus: {missing}"

    outdir.mkdir(parents=True, exist_ok=True)
    with open(outdir / "mini_zinc.smi", "w") as fh:
        for smiles, rid in mini:
            fh.write(f"{smiles}\t{rid}\n")
    with open(outdir / "sulfonium_ref.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["smiles", "id", "lumo_ev"])
        writer.writerows(ref_rows)
    with open(outdir / "roundtrip_1k.smi", "w") as fh:
        for smiles, rid in roundtrip:
            fh.write(f"{smiles}\t{rid}\n")
    with open(outdir / "default_window.json", "w") as fh:
        json.dump(TABLE1_WINDOW, fh, indent=2)
        fh.write("\n")

    # Fragment frequency table over the mini corpus, all radii 0..2.
    counts: Counter[int] = Counter()
    for smiles, _ in mini:
        for levels in molecule_environment_ids(parse_smiles(smiles)):
            counts.update(levels)
    scores = fragment_scores_from_counts(dict(counts))
    tabledir.mkdir(parents=True, exist_ok=True)
    with open(tabledir / "sa_fragments.tsv", "w") as fh:
        fh.write("# radius-2 environment scores, v1\n")
        for env in sorted(scores):
            fh.write(f"{env}\t{scores[env]:.6f}\n")

    labels = [1 if lumo <= -5.0 else 0 for _, _, lumo in ref_rows]
    return {
        "mini": len(mini),
        "ref": len(ref_rows),
        "ref_positive_fraction": sum(labels) / len(labels),
        "roundtrip": len(roundtrip),
        "sa_fragments": len(scores),
    }


if __name__ == "__main__":
    summary = build()
    print(json.dumps(summary, indent=2))
