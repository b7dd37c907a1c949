import os

import pytest
from hypothesis import HealthCheck, settings

from exactcone.catalogue import brute_force_min_semi_balanced, enumerate_facets, min_semi_balanced_catalogue
from exactcone.games import anti_dual, exactness, is_balanced_game, is_exact_via_facets, is_totally_balanced, random_corpus
from exactcone.semibal import minimal_report
from exactcone.setcore import PlayerSet

CORPUS_SIZE = 500
CORPUS_SEED = 2024

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def facet_catalogues():
    return {n: enumerate_facets(PlayerSet(n)) for n in (2, 3, 4, 5)}


@pytest.fixture(scope="session")
def msb_catalogues():
    """Generator-built min-semi-balanced catalogues for n <= 4."""
    return {n: min_semi_balanced_catalogue(PlayerSet(n)) for n in (2, 3, 4)}


@pytest.fixture(scope="session")
def brute_catalogues():
    return {n: brute_force_min_semi_balanced(PlayerSet(n)) for n in (2, 3, 4)}


@pytest.fixture(scope="session")
def msb_reports(msb_catalogues):
    return {n: [minimal_report(s) for s in systems] for n, systems in msb_catalogues.items()}


@pytest.fixture(scope="session")
def corpus_results(facet_catalogues):
    """Seeded random games at n = 3, 4 with every certification computed once.

    Rows are ``(game, certificate, anti-dual certificate, totally balanced, balanced, exact via facets)``.
    """
    out = {}
    for n in (3, 4):
        rows = []
        for m in random_corpus(PlayerSet(n), CORPUS_SIZE, seed=CORPUS_SEED):
            rows.append((m, exactness(m), exactness(anti_dual(m)), is_totally_balanced(m), is_balanced_game(m),
                         is_exact_via_facets(m, facet_catalogues[n])))
        out[n] = rows
    return out
