"""Syntagma Lexical Database: record codecs, lexicon store and dictionary scanner."""

from .kernels import BACKEND
from .lexmodel import (
    CodeTable,
    Form,
    Lemma,
    Meaning,
    MeaningId,
    MorphFeatures,
    ValencyArgument,
    ValencyFrame,
    Violation,
    default_codes,
    parse_mng,
)
from .lexstore import LexStore, build_store

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CodeTable",
    "Form",
    "Lemma",
    "LexStore",
    "Meaning",
    "MeaningId",
    "MorphFeatures",
    "ValencyArgument",
    "ValencyFrame",
    "Violation",
    "build_store",
    "default_codes",
    "parse_mng",
]
