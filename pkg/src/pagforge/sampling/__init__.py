"""Latent density model, attribute classifier, and conditional sampler."""

from pagforge.sampling.classifier import (
    CvReport,
    LatentClassifier,
    balanced_accuracy,
    train_classifier,
)
from pagforge.sampling.gmm import (
    GaussianMixture,
    fit_gmm,
    gmm_logpdf,
    gmm_sample,
)
from pagforge.sampling.rejection import (
    Attribute,
    AttributeSpec,
    BudgetExhausted,
    SampleTrace,
    classifier_attribute,
    conditional_sample,
)

__all__ = [
    "Attribute",
    "AttributeSpec",
    "BudgetExhausted",
    "CvReport",
    "GaussianMixture",
    "LatentClassifier",
    "SampleTrace",
    "balanced_accuracy",
    "classifier_attribute",
    "conditional_sample",
    "fit_gmm",
    "gmm_logpdf",
    "gmm_sample",
    "train_classifier",
]
