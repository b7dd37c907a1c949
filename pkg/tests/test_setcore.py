import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from exactcone.setcore import (
    GroundTooLarge,
    ParseError,
    PlayerSet,
    SetSystem,
    canonical_key,
    canonicalize,
    complement_system,
    permute_mask,
)

G4 = PlayerSet(4)


def systems(n):
    full = (1 << n) - 1
    return st.sets(st.integers(1, full - 1), min_size=1, max_size=min(full - 1, 6)).map(
        lambda s: SetSystem(PlayerSet(n), tuple(s))
    )


def test_parse_and_format_roundtrip():
    s = SetSystem.parse(G4, "{abd, a, bc, ab}")
    assert str(s) == "{a,ab,bc,abd}"
    assert SetSystem.parse(G4, str(s)) == s
    assert SetSystem.parse(G4, "a,b") == SetSystem(G4, (1, 2))


def test_format_special_coalitions():
    assert G4.format(0) == "0"
    assert G4.format(G4.full) == "N"
    assert G4.parse("N") == G4.full
    assert G4.parse("dcb") == 0b1110


@pytest.mark.parametrize(
    "text, position",
    [("{a,x}", 3), ("{a,,b}", 3), ("{a,aa}", 4), ("{a,a}", 3), ("{a,b", 4), ("{abcd}", 1)],
)
def test_parse_errors_carry_position(text, position):
    with pytest.raises(ParseError) as exc:
        SetSystem.parse(G4, text)
    assert exc.value.position == position


def test_multichar_labels():
    g = PlayerSet(3, ("x1", "x2", "y"))
    s = SetSystem.parse(g, "{x1x2, y}")
    assert s.sets == (4, 3)
    assert str(s) == "{y,x1x2}"


def test_system_rejects_trivial_and_duplicates():
    with pytest.raises(ValueError):
        SetSystem(G4, (0, 1))
    with pytest.raises(ValueError):
        SetSystem(G4, (G4.full,))
    with pytest.raises(ValueError):
        SetSystem(G4, (1, 1))
    with pytest.raises(ValueError):
        SetSystem(G4, ())


def test_canonical_order_is_size_then_mask():
    s = SetSystem(G4, (0b0111, 0b0011, 0b1000, 0b0101))
    assert s.sets == (0b1000, 0b0011, 0b0101, 0b0111)


def test_nontrivial_count():
    assert len(G4.nontrivial()) == 14


def test_complement_is_involution():
    s = SetSystem.parse(G4, "{a,b,ab}")
    assert str(complement_system(s)) == "{cd,acd,bcd}"
    assert complement_system(complement_system(s)) == s


@given(systems(4), st.permutations(range(4)))
def test_canonical_form_is_orbit_invariant(sys, perm):
    assert canonical_key(sys) == canonical_key(sys.permuted(perm))


@given(systems(4))
def test_canonicalize_returns_reaching_permutation(sys):
    ctype, perm = canonicalize(sys)
    assert sys.permuted(perm) == ctype.representative


@given(systems(3))
def test_orbit_size_matches_brute_force(sys):
    images = {sys.permuted(p).sets for p in itertools.permutations(range(3))}
    assert canonicalize(sys)[0].orbit_size == len(images)


def test_permute_mask():
    assert permute_mask(0b011, (2, 0, 1)) == 0b101


def test_canonicalize_cap():
    with pytest.raises(GroundTooLarge):
        canonicalize(SetSystem(PlayerSet(9), (1,)))
