"""Garside normal forms, ultra summit sets and conjugacy for braid groups."""

from .artin import ArtinPresentation
from .bkl import BKLPresentation
from .conjugacy import ConjugacyWitness, conjugacy_search, is_conjugate
from .garside import (
    CanonicalForm,
    ContractError,
    GarsideError,
    GarsidePresentation,
    NotSimpleError,
    ParseError,
    PresentationMismatch,
    conjugate,
    invert,
    multiply,
    normalize,
)
from .summit import (
    Trajectory,
    TransportContext,
    UltraSummitSet,
    cycling,
    decycling,
    min_ss_conjugator,
    min_uss_conjugator,
    minimal_conjugator_set,
    pullback,
    sss_representative,
    transport,
    ultra_summit_set,
    uss_representative,
)
from .wordfmt import format_element, parse, presentation

__version__ = "0.1.0"

__all__ = [
    "ArtinPresentation", "BKLPresentation", "CanonicalForm", "ConjugacyWitness", "ContractError",
    "GarsideError", "GarsidePresentation", "NotSimpleError", "ParseError", "PresentationMismatch",
    "Trajectory", "TransportContext", "UltraSummitSet", "conjugacy_search", "conjugate", "cycling",
    "decycling", "format_element", "invert", "is_conjugate", "min_ss_conjugator", "min_uss_conjugator",
    "minimal_conjugator_set", "multiply", "normalize", "parse", "presentation", "pullback",
    "sss_representative", "transport", "ultra_summit_set", "uss_representative",
]
