import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from exactcone.catalogue import (
    PreconditionViolated,
    brute_force_min_balanced,
    count_types,
    enumerate_facets,
    enumerate_min_balanced,
    has_decomposition,
    is_irreducible,
    purely_from_balanced,
    purely_min_semi_balanced,
)
from exactcone.semibal import SystemClass, conjugate, is_exceptional, minimal_report
from exactcone.setcore import GroundTooLarge, PlayerSet, SetSystem, complement_system

G3, G4 = PlayerSet(3), PlayerSet(4)

FACETS = {2: (1, 1), 3: (6, 2), 4: (44, 6), 5: (280, 16)}


@pytest.mark.parametrize("n", sorted(FACETS))
def test_facet_and_type_counts(n, facet_catalogues):
    cat = facet_catalogues[n]
    assert (cat.facet_count, cat.type_count) == FACETS[n]


def test_min_balanced_matches_brute_force():
    for n in (2, 3, 4):
        g = PlayerSet(n)
        assert {s.sets for s in enumerate_min_balanced(g)} == {s.sets for s in brute_force_min_balanced(g)}


def test_min_balanced_small_cases():
    assert [str(s) for s in enumerate_min_balanced(PlayerSet(2))] == ["{a,b}"]
    three = {str(s) for s in enumerate_min_balanced(G3)}
    assert three == {"{a,bc}", "{b,ac}", "{c,ab}", "{a,b,c}", "{ab,ac,bc}"}
    assert SetSystem.parse(G4, "{ab,ac,bc,d}") in enumerate_min_balanced(G4)


def test_purely_from_balanced_examples():
    b = SetSystem.parse(G4, "{ab,ac,bc,d}")
    s = purely_from_balanced(b, G4.parse("d"))
    assert s == SetSystem.parse(G4, "{ab,ac,bc,abc}")
    s3 = purely_from_balanced(SetSystem.parse(G3, "{a,b,c}"), G3.parse("c"))
    assert s3 == SetSystem.parse(G3, "{a,b,ab}")
    assert minimal_report(s3).exceptional == G3.parse("ab")


def test_purely_from_balanced_round_trip():
    for b in enumerate_min_balanced(G4):
        if len(b) < 3:
            continue
        for z in b.sets:
            s = purely_from_balanced(b, z)
            y = minimal_report(s).exceptional
            assert y == G4.full ^ z
            assert purely_from_balanced_inverse(s, y) == b


def purely_from_balanced_inverse(s, y):
    return SetSystem(s.ground, tuple(t for t in s.sets if t != y) + (s.ground.full ^ y,))


def test_purely_from_balanced_preconditions():
    with pytest.raises(PreconditionViolated):
        purely_from_balanced(SetSystem.parse(G3, "{a,bc}"), 1)
    with pytest.raises(PreconditionViolated):
        purely_from_balanced(SetSystem.parse(G3, "{a,b,c}"), G3.parse("ab"))


def test_has_decomposition_examples():
    assert has_decomposition(SetSystem.parse(G4, "{a,b,c,abc}")) == G4.parse("ab")
    assert has_decomposition(SetSystem.parse(G3, "{a,b,ab}")) is None
    assert has_decomposition(SetSystem.parse(G4, "{ab,ac,bc,abc}")) is None
    with pytest.raises(PreconditionViolated):
        has_decomposition(SetSystem.parse(G3, "{a,b,c}"))
    with pytest.raises(ValueError):
        has_decomposition(SetSystem.parse(G3, "{a,b,ab}"), method="bogus")


@pytest.mark.parametrize("n", [3, 4])
def test_kernel_and_lp_decomposition_agree(n):
    for s, _ in purely_min_semi_balanced(PlayerSet(n)):
        assert has_decomposition(s, "kernel") == has_decomposition(s, "lp")


def test_is_irreducible_examples():
    assert not is_irreducible(SetSystem.parse(G3, "{a,b,c}"))
    assert is_irreducible(SetSystem.parse(G3, "{ab,ac,bc}"))
    assert is_irreducible(SetSystem.parse(PlayerSet(2), "{a,b}"))


def _lift(b, sub, n):
    """Map a system on the players of ``sub`` (an ordered list) into the ground of size n."""
    def up(mask):
        return sum(1 << sub[i] for i in range(len(sub)) if mask >> i & 1)

    return [up(s) for s in b.sets]


@pytest.mark.parametrize("n", [3, 4])
def test_irreducible_iff_indecomposable(n):
    g = PlayerSet(n)
    checked = 0
    for k in range(2, n):
        for sub in itertools.combinations(range(n), k):
            m = sum(1 << i for i in sub)
            for b in enumerate_min_balanced(PlayerSet(k)):
                lifted = SetSystem(g, tuple(_lift(b, sub, n)))
                s = lifted.with_set(m)
                assert is_irreducible(lifted, m) == is_irreducible(b)
                assert is_irreducible(b) == (has_decomposition(s) is None)
                checked += 1
    assert checked > 0


@pytest.mark.parametrize("n", [3, 4])
def test_decomposition_matches_subsystem_search(n, brute_catalogues):
    """Decomposable iff some min-semi-balanced D has D - S = {E}, E exceptional in D, T not in D."""
    reports = {d.sets: minimal_report(d) for d in brute_catalogues[n]}
    for s, t in purely_min_semi_balanced(PlayerSet(n)):
        members = set(s.sets)
        found = False
        for d in brute_catalogues[n]:
            extra = [x for x in d.sets if x not in members]
            if len(extra) != 1 or t in d.sets:
                continue
            if reports[d.sets].exceptional == extra[0]:
                found = True
                break
        assert found == (has_decomposition(s) is not None), str(s)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_facets_closed_under_complement(n, facet_catalogues):
    cat = facet_catalogues[n]
    by_sets = {e.system.sets: e for e in cat.entries}
    for e in cat.entries:
        twin = by_sets[complement_system(e.system).sets]
        assert twin.report.theta == conjugate(e.report.theta)


def test_exceptional_of_complement_is_complement():
    for e in enumerate_facets(G4).entries:
        twin = minimal_report(complement_system(e.system))
        assert twin.exceptional == G4.full ^ e.report.exceptional


@pytest.mark.parametrize("n", [3, 4, 5])
def test_balanced_system_decomposes_through_purely_one(n):
    g = PlayerSet(n)
    for b in enumerate_min_balanced(g):
        if len(b) < 3:
            continue
        rep = minimal_report(b)
        for z in b.sets:
            lam_z = rep.combination[z]
            d = SetSystem(g, (z, g.full ^ z))
            s = purely_from_balanced(b, z)
            assert 0 < 1 - 2 * lam_z
            mix = minimal_report(d).theta.scaled(2 * lam_z) + minimal_report(s).theta.scaled(1 - 2 * lam_z)
            assert mix == rep.theta


@pytest.mark.parametrize("n", [3, 4, 5])
def test_two_set_system_is_midpoint_of_purely_ones(n):
    g = PlayerSet(n)
    for z in g.nontrivial():
        y = g.full ^ z
        d = minimal_report(SetSystem(g, (y, z))).theta
        r = (y - 1) & y
        while r:
            s = SetSystem(g, (z, r, z | r))
            t = SetSystem(g, (z | r, y, r))
            rs, rt = minimal_report(s), minimal_report(t)
            assert not rs.is_balanced and not rt.is_balanced
            assert rs.theta.scaled(Fraction(1, 2)) + rt.theta.scaled(Fraction(1, 2)) == d
            r = (r - 1) & y


@pytest.mark.parametrize("n", [3, 4, 5])
def test_no_min_balanced_facet(n, facet_catalogues):
    for e in facet_catalogues[n].entries:
        assert not e.report.is_balanced
        assert e.report.klass is not SystemClass.MIN_BALANCED
        assert e.indecomposable and e.report.is_minimal


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cardinality_bounds(n, msb_reports):
    for rep in msb_reports[n]:
        assert len(rep.system) <= n
        if not rep.is_balanced:
            assert len(rep.system) >= 3


def test_count_types_examples(facet_catalogues):
    assert count_types(facet_catalogues[3].entries) == 2
    assert count_types(facet_catalogues[5].entries) == 16


@given(st.sets(st.integers(1, 14), min_size=1, max_size=5))
def test_count_types_of_orbit_is_one(masks):
    s = SetSystem(G4, tuple(masks))
    orbit = {s.permuted(p).sets: s.permuted(p) for p in itertools.permutations(range(4))}
    assert count_types(orbit.values()) == 1


def test_size_caps():
    with pytest.raises(GroundTooLarge):
        enumerate_facets(PlayerSet(6))
    with pytest.raises(GroundTooLarge):
        enumerate_facets(PlayerSet(7), allow_n6=True)
    with pytest.raises(GroundTooLarge):
        brute_force_min_balanced(PlayerSet(5))


def test_facet_entries_sorted_and_unique(facet_catalogues):
    for cat in facet_catalogues.values():
        keys = [(e.canonical.representative.sets, e.system.sets) for e in cat.entries]
        assert keys == sorted(keys)
        assert len({e.system.sets for e in cat.entries}) == len(keys)


def test_generator_equals_brute_force(msb_catalogues, brute_catalogues):
    for n in (2, 3, 4):
        assert {s.sets for s in msb_catalogues[n]} == {s.sets for s in brute_catalogues[n]}


def test_brute_force_contains_listed_systems(brute_catalogues):
    assert [str(s) for s in brute_catalogues[2]] == ["{a,b}"]
    three = {s.sets for s in brute_catalogues[3]}
    assert SetSystem.parse(G3, "{a,b,ab}").sets in three
    assert SetSystem.parse(G3, "{bc,ac,c}").sets in three
    assert SetSystem.parse(G4, "{a,ab,bc,abd}").sets in {s.sets for s in brute_catalogues[4]}


def test_decomposition_witness_is_exceptional_in_enlarged_system():
    for s, _ in purely_min_semi_balanced(G4):
        w = has_decomposition(s)
        if w is not None:
            assert is_exceptional(s.with_set(w), w)
