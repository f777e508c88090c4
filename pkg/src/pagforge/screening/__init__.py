"""Chemistry screening: filters, fragmentation, scaffolds, histograms."""

from pagforge.screening.analysis import (
    DiceHistogram,
    ScaffoldRecord,
    ScaffoldSummary,
    dice_histogram,
    extract_scaffold_records,
    molecule_scaffolds,
    reference_scaffold_set,
    scaffold_summary,
    similarity_binning,
    summary_table,
)
from pagforge.screening.brics import brics_fragments, cleavable_bonds
from pagforge.screening.filters import (
    FilterVerdict,
    chem_filters,
    contains_basic_amine,
    is_fluorine_rich,
    is_sulfonium,
)
from pagforge.screening.murcko import murcko_scaffold

__all__ = [
    "DiceHistogram",
    "FilterVerdict",
    "ScaffoldRecord",
    "ScaffoldSummary",
    "brics_fragments",
    "chem_filters",
    "cleavable_bonds",
    "contains_basic_amine",
    "dice_histogram",
    "extract_scaffold_records",
    "is_fluorine_rich",
    "is_sulfonium",
    "molecule_scaffolds",
    "murcko_scaffold",
    "reference_scaffold_set",
    "scaffold_summary",
    "similarity_binning",
    "summary_table",
]
