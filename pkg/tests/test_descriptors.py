"""Descriptor values, fingerprints, and similarity coefficients."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pagforge.chem import parse_smiles
from pagforge.descriptors import (
    FingerprintBitset,
    crippen_logp,
    descriptor_vector,
    dice_distance,
    fluorine_fraction,
    molecular_weight,
    morgan_fingerprint,
    sa_score,
    similarity,
)
from pagforge.descriptors.crippen import atom_class, class_contribution

# Hand-summed from the atomic weight table: element sums + n_H * 1.008.
MW_ORACLE = {
    "C": 16.043,                      # CH4
    "C[S+](C)C": 77.165,              # C3H9S+
    "CC": 30.07,                      # C2H6
    "CCO": 46.069,                    # C2H6O
    "c1ccccc1": 78.114,               # C6H6
    "O": 18.015,                      # H2O
    "N": 17.031,                      # NH3
    "C(F)(F)F": 70.014,               # CHF3
    "ClCCl": 84.933,                  # CH2Cl2
    "BrBr": 159.808,
    "II": 253.80894,
    "[Si](C)(C)(C)C": 88.225,         # SiC4H12
    "S": 34.076,                      # H2S
    "O=C=O": 44.009,
    "N#N": 28.014,
    "C[N+](C)(C)C": 74.145,           # C4H12N+
    "OCC": 46.069,
    "C1CCCCC1": 84.162,               # C6H12
    "c1ccncc1": 79.102,               # C5H5N
    "CC(=O)O": 60.052,                # acetic acid
}


class TestMolecularWeight:
    @pytest.mark.parametrize("smiles,expected", sorted(MW_ORACLE.items()))
    def test_hand_summed(self, smiles, expected):
        assert molecular_weight(parse_smiles(smiles)) == pytest.approx(
            expected, abs=0.01
        )

    def test_respelling_invariance(self):
        assert molecular_weight(parse_smiles("OCC")) == pytest.approx(
            molecular_weight(parse_smiles("CCO")), abs=1e-9
        )


class TestCrippenLogp:
    def test_respelling_invariance(self):
        assert crippen_logp(parse_smiles("OCC")) == crippen_logp(
            parse_smiles("CCO")
        )

    def test_hexane_above_ethanol(self):
        assert crippen_logp(parse_smiles("CCCCCC")) > crippen_logp(
            parse_smiles("CCO")
        )

    def test_ch2_increment_matches_table(self):
        # Growing an unbranched alkane adds one aliphatic carbon plus
        # two carbon-attached hydrogens.
        expected = class_contribution("C.sp3") + 2 * class_contribution("H.on.C")
        values = [crippen_logp(parse_smiles("C" * n)) for n in range(3, 8)]
        deltas = [b - a for a, b in zip(values, values[1:])]
        for delta in deltas:
            assert delta == pytest.approx(expected, abs=1e-9)

    def test_alkane_atoms_classified_aliphatic(self):
        mol = parse_smiles("CCCC")
        assert {atom_class(mol, i) for i in range(4)} == {"C.sp3"}


class TestSaScore:
    def test_range_contract(self):
        for smiles in ["CC", "c1ccccc1", "C[S+](C)C", "C1CC2CCC1CC2",
                       "FC(F)(F)c1ccc(cc1)[S+](C)C"]:
            assert 1.0 <= sa_score(parse_smiles(smiles)) <= 10.0

    def test_ethane_easier_than_fused_cage(self):
        cage = "C1CC2CC3CC1CC(C2)C3"  # adamantane-like fused tetracyclic
        assert sa_score(parse_smiles("CC")) < sa_score(parse_smiles(cage))

    def test_deterministic(self):
        mol = parse_smiles("CC(C)[S+]1CCCC1")
        assert sa_score(mol) == sa_score(parse_smiles("CC(C)[S+]1CCCC1"))


class TestMorganFingerprint:
    def test_single_atom_radius0_one_bit(self):
        fp = morgan_fingerprint(parse_smiles("C"), radius=0)
        assert fp.popcount == 1

    def test_identical_molecules_identical_bits(self):
        a = morgan_fingerprint(parse_smiles("CC(C)c1ccccc1"))
        b = morgan_fingerprint(parse_smiles("c1ccccc1C(C)C"))
        assert a == b

    def test_benzene_vs_pyridine_differ(self):
        a = morgan_fingerprint(parse_smiles("c1ccccc1"), radius=1)
        b = morgan_fingerprint(parse_smiles("c1ccncc1"), radius=1)
        assert a != b

    def test_width_power_of_two_enforced(self):
        with pytest.raises(ValueError):
            FingerprintBitset(bits=0, width=1000)


def _bitset(positions: list[int], width: int = 2048) -> FingerprintBitset:
    bits = 0
    for p in positions:
        bits |= 1 << p
    return FingerprintBitset(bits=bits, width=width)


class TestSimilarity:
    def test_identical_nonempty(self):
        fp = _bitset([1, 5, 9])
        assert similarity(fp, fp, "tanimoto") == 1.0
        assert similarity(fp, fp, "dice") == 1.0

    def test_disjoint(self):
        a, b = _bitset([0, 1]), _bitset([5, 6])
        assert similarity(a, b, "tanimoto") == 0.0
        assert similarity(a, b, "dice") == 0.0

    def test_hand_arithmetic(self):
        a, b = _bitset([0, 1]), _bitset([1, 2])
        assert similarity(a, b, "dice") == pytest.approx(0.5)
        assert similarity(a, b, "tanimoto") == pytest.approx(1 / 3)

    def test_width_mismatch(self):
        with pytest.raises(ValueError, match="width"):
            similarity(_bitset([0]), _bitset([0], width=1024))

    def test_dice_distance(self):
        a, b = _bitset([0, 1]), _bitset([1, 2])
        assert dice_distance(a, b) == pytest.approx(0.5)

    @settings(max_examples=100, deadline=None)
    @given(
        st.sets(st.integers(0, 255), max_size=40),
        st.sets(st.integers(0, 255), max_size=40),
    )
    def test_symmetry_and_dice_dominates_tanimoto(self, xs, ys):
        a, b = _bitset(sorted(xs), 256), _bitset(sorted(ys), 256)
        for kind in ("tanimoto", "dice"):
            assert similarity(a, b, kind) == similarity(b, a, kind)
            assert 0.0 <= similarity(a, b, kind) <= 1.0
        assert similarity(a, b, "dice") >= similarity(a, b, "tanimoto") - 1e-12


class TestDescriptorVector:
    def test_fluorine_fraction(self):
        # 5 fluorines over 10 heavy atoms (5 F, 4 C, 1 S).
        mol = parse_smiles("FC(F)(F)C(F)(F)[S+](C)C")
        assert fluorine_fraction(mol) == pytest.approx(0.5)
        assert fluorine_fraction(parse_smiles("CCO")) == 0.0

    def test_fields(self):
        d = descriptor_vector(parse_smiles("c1ccccc1"))
        assert d.num_atoms == 6
        assert d.ring_count == 1
        assert d.max_ring_size == 6
        assert d.mw == pytest.approx(78.114, abs=0.01)
        assert 0.0 <= d.fluorine_fraction <= 1.0
        assert 1.0 <= d.sa <= 10.0

    def test_respelling_invariance(self):
        a = descriptor_vector(parse_smiles("C(C)(C)c1ccccc1"))
        b = descriptor_vector(parse_smiles("c1ccccc1C(C)C"))
        assert a == b
