"""Verification and search toolkit for s-almost cross-t-intersecting families."""

from .core import (
    CapExceeded,
    CrossfamError,
    FamilyFormatError,
    HypothesisError,
    Params,
    SetFamily,
    Subset,
    binomial,
    enumerate_k_subsets,
    intersection_size,
)
from .predicates import FamilyPair, Verdict

__all__ = [
    "CapExceeded",
    "CrossfamError",
    "FamilyFormatError",
    "FamilyPair",
    "HypothesisError",
    "Params",
    "SetFamily",
    "Subset",
    "Verdict",
    "binomial",
    "enumerate_k_subsets",
    "intersection_size",
]

__version__ = "0.1.0"
