"""Ingestion, cation selection, windowing, labels, and tokenization."""

import pytest

from pagforge.chem import parse_smiles
from pagforge.data import bundled
from pagforge.dataset import (
    PropertyWindow,
    Record,
    filter_window,
    ingest,
    keep_cations,
    label_lumo,
)
from pagforge.descriptors import descriptor_vector
from pagforge.tokenizer import TokenizeError, Vocabulary, detokenize, tokenize


@pytest.fixture(scope="module")
def window() -> PropertyWindow:
    return PropertyWindow.from_json(bundled("default_window.json"))


@pytest.fixture(scope="module")
def mini_records():
    records, report = ingest(bundled("mini_zinc.smi"))
    return records, report


class TestIngest:
    def test_three_line_file(self, tmp_path):
        p = tmp_path / "three.smi"
        p.write_text("CCO\ta\nc1ccccc1\tb\nC[S+](C)C\tc\n")
        records, report = ingest(p)
        assert len(records) == 3
        assert report.parsed == 3
        assert not report.parse_errors

    def test_strict_raises_with_line_number(self, tmp_path):
        p = tmp_path / "bad.smi"
        p.write_text("CCO\nC1CC\nCC\n")
        with pytest.raises(ValueError, match="2"):
            ingest(p, strict=True)

    def test_lenient_reports_line(self, tmp_path):
        p = tmp_path / "bad.smi"
        p.write_text("CCO\nC1CC\nCC\n")
        records, report = ingest(p)
        assert len(records) == 2
        assert report.parse_errors[0][0] == 2

    def test_duplicates_flagged(self, tmp_path):
        p = tmp_path / "dup.smi"
        p.write_text("CCO\tx\nOCC\ty\n")
        _, report = ingest(p)
        assert len(report.duplicate_canonical) == 1

    def test_csv_with_lumo(self, tmp_path):
        p = tmp_path / "labels.csv"
        p.write_text("smiles,id,lumo_ev\nC[S+](C)C,s1,-5.4\nCCO,e1,\n")
        records, _ = ingest(p)
        assert records[0].lumo_ev == -5.4
        assert records[1].lumo_ev is None


class TestKeepCations:
    def test_sulfonium_kept(self):
        recs = [Record("C[S+](C)C", "a")]
        assert len(keep_cations(recs)) == 1

    def test_benzene_dropped(self):
        assert keep_cations([Record("c1ccccc1", "b")]) == []

    def test_salt_dropped_two_components(self):
        mol = parse_smiles("[NH4+].[Cl-]")
        assert len(mol.components()) == 2
        assert keep_cations([Record("[NH4+].[Cl-]", "s")]) == []

    def test_dication_dropped(self):
        assert keep_cations([Record("C[S+](C)CC[S+](C)C", "d")]) == []


def _brute_force_window(records, window):
    """Independent second implementation: re-derive every bound check
    from raw descriptor values with no shared filtering code."""
    kept = []
    for rec in records:
        mol = parse_smiles(rec.smiles)
        elements = {a.element for a in mol.atoms}
        if not elements.issubset(window.elements):
            continue
        d = descriptor_vector(mol)
        ok = (
            window.num_atoms.lo <= d.num_atoms <= window.num_atoms.hi
            and window.logp.lo <= d.logp <= window.logp.hi
            and window.sa.lo <= d.sa <= window.sa.hi
            and window.mw.lo <= d.mw <= window.mw.hi
            and window.ring_count.lo <= d.ring_count <= window.ring_count.hi
            and window.max_ring_size.lo <= d.max_ring_size <= window.max_ring_size.hi
        )
        if ok:
            kept.append(rec)
    return kept


class TestFilterWindow:
    def test_against_brute_force(self, mini_records, window):
        records, _ = mini_records
        fast, _ = filter_window(records, window)
        slow = _brute_force_window(records, window)
        assert [r.id for r in fast] == [r.id for r in slow]

    def test_boundary_cases_present(self, mini_records, window):
        records, _ = mini_records
        by_id = {r.id: r for r in records}
        kept, _ = filter_window(
            [by_id["edge-atoms-79"], by_id["edge-atoms-80"],
             by_id["edge-phosphonium"]], window)
        assert [r.id for r in kept] == ["edge-atoms-79"]

    def test_idempotent(self, mini_records, window):
        records, _ = mini_records
        once, _ = filter_window(records[:500], window)
        twice, _ = filter_window(once, window)
        assert once == twice

    def test_commutes_with_keep_cations(self, mini_records, window):
        records, _ = mini_records
        sample = records[:400]
        a, _ = filter_window(keep_cations(sample), window)
        b = keep_cations(filter_window(sample, window)[0])
        assert a == b

    def test_order_preserved(self, mini_records, window):
        records, _ = mini_records
        kept, _ = filter_window(records[:300], window)
        ids = [r.id for r in kept]
        assert ids == sorted(ids, key=lambda i: [r.id for r in records].index(i))


class TestLabelLumo:
    def test_below_threshold_positive(self):
        assert label_lumo([Record("C", "a", -5.2)]) == [1]

    def test_above_threshold_negative(self):
        assert label_lumo([Record("C", "a", -4.9)]) == [0]

    def test_exactly_at_threshold_positive(self):
        # Inclusive boundary: the threshold itself counts as low.
        assert label_lumo([Record("C", "a", -5.0)]) == [1]

    def test_missing_label_raises(self):
        with pytest.raises(ValueError, match="lumo"):
            label_lumo([Record("C", "a", None)])


class TestTokenizer:
    def test_round_trip(self):
        vocab = Vocabulary.build(["C[S+](C)C", "CCO", "c1ccccc1Br"])
        for s in ["C[S+](C)C", "CCO"]:
            assert detokenize(tokenize(s, vocab), vocab) == s

    def test_multichar_tokens_single_entries(self):
        vocab = Vocabulary.build(["BrCCl", "C[S+](C)C", "C%12CCCCCCCCCCC%12"])
        assert "Br" in vocab.tokens
        assert "Cl" in vocab.tokens
        assert "[S+]" in vocab.tokens
        assert "%12" in vocab.tokens

    def test_out_of_vocabulary(self):
        vocab = Vocabulary.build(["CC"])
        with pytest.raises(TokenizeError, match="out-of-vocabulary"):
            tokenize("CO", vocab)

    def test_overlength(self):
        vocab = Vocabulary.build(["C" * 300], max_len=16)
        with pytest.raises(TokenizeError, match="length"):
            tokenize("C" * 300, vocab)

    def test_reserved_tokens_first(self):
        vocab = Vocabulary.build(["CC"])
        assert vocab.pad_id == 0
        assert vocab.start_id == 1
        assert vocab.end_id == 2
