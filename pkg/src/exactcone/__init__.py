"""Facets of the cone of exact games via min-semi-balanced set systems."""

from .catalogue import Catalogue, CatalogueEntry, enumerate_facets, enumerate_min_balanced, has_decomposition
from .games import Game, anti_dual, exactness, is_balanced_game, is_totally_balanced
from .semibal import analyze, coefficient_vector, integer_form
from .setcore import PlayerSet, SetSystem

__all__ = [
    "Catalogue",
    "CatalogueEntry",
    "Game",
    "PlayerSet",
    "SetSystem",
    "analyze",
    "anti_dual",
    "coefficient_vector",
    "enumerate_facets",
    "enumerate_min_balanced",
    "exactness",
    "has_decomposition",
    "integer_form",
    "is_balanced_game",
    "is_totally_balanced",
]

__version__ = "0.1.0"
