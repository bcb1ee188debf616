"""Trait-similarity and rarity-proximity recommendations for NFT collections."""

import json

from ._core import (
    DomainError,
    Error,
    Index,
    IoError,
    NotFoundError,
    ParseError,
    canonical_ref,
    normalize_trait,
    trait_rarity,
)

__all__ = [
    "DomainError",
    "Error",
    "Index",
    "IoError",
    "NotFoundError",
    "ParseError",
    "canonical_ref",
    "evaluate",
    "normalize_trait",
    "recommend",
    "trait_rarity",
]


def recommend(index, ref, model="both", k=10):
    """Top-k recommendations as the dict the CLI prints."""
    return json.loads(index._recommend_json(ref, model, k))


def evaluate(index, ref, k=10):
    """Evaluation frame for `ref` as a dict with a "rows" list."""
    return json.loads(index._evaluate_json(ref, k))
