"""Molecular descriptors, fingerprints, and similarity."""

from pagforge.descriptors.core import (
    DescriptorVector,
    descriptor_vector,
    fluorine_fraction,
    molecular_weight,
)
from pagforge.descriptors.crippen import crippen_logp
from pagforge.descriptors.fingerprints import (
    FingerprintBitset,
    dice_distance,
    morgan_fingerprint,
    similarity,
)
from pagforge.descriptors.sascore import sa_score

__all__ = [
    "DescriptorVector",
    "FingerprintBitset",
    "crippen_logp",
    "descriptor_vector",
    "dice_distance",
    "fluorine_fraction",
    "molecular_weight",
    "morgan_fingerprint",
    "sa_score",
    "similarity",
]
