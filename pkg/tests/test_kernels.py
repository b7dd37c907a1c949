"""Integer kernels against Fraction arithmetic, and numba against the numpy fallback."""

import json
import os
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from exactcone import _kernels
from exactcone.catalogue import purely_min_semi_balanced
from exactcone.ratlin import SolveStatus, solve_exact
from exactcone.setcore import PlayerSet

augmented = st.integers(1, 6).flatmap(
    lambda k: st.integers(k, 7).flatmap(
        lambda rows: st.lists(
            st.lists(st.integers(0, 1), min_size=k + 1, max_size=k + 1), min_size=rows, max_size=rows
        ).map(lambda m: (m, k))
    )
)


def _check_against_fractions(m, k, status, num, den):
    a = [row[:k] for row in m]
    b = [row[k] for row in m]
    res = solve_exact(a, b)
    if status == _kernels.OK:
        assert res.status is SolveStatus.UNIQUE
        assert tuple(Fraction(int(p), int(q)) for p, q in zip(num, den)) == res.x
    elif status == _kernels.INCONSISTENT:
        assert res.status is SolveStatus.NO_SOLUTION
    else:
        # rank-deficient coefficient matrix: never a unique solution
        assert res.status is not SolveStatus.UNIQUE


@given(augmented)
def test_montante_batch_matches_fractions(case):
    m, k = case
    status, num, den = _kernels.montante_batch(np.array([m], dtype=np.int64))
    _check_against_fractions(m, k, status[0], num[0], den[0])


@given(augmented)
def test_dispatched_solver_matches_fractions(case):
    m, k = case
    status, num, den = _kernels.solve_batch(np.array([m], dtype=np.int64))
    _check_against_fractions(m, k, status[0], num[0], den[0])


def test_sorted_nontrivial_order():
    assert list(_kernels.sorted_nontrivial(3)) == [1, 2, 4, 3, 5, 6]


@pytest.mark.parametrize("n, count", [(2, 1), (3, 5), (4, 41), (5, 1291)])
def test_min_balanced_counts(n, count):
    assert len(_kernels.min_balanced_masks(n)) == count


def test_first_decompositions_rejects_non_purely_input():
    # {a,b,c,ab} with T = c: chi_a + chi_b - chi_ab = 0 makes the columns dependent
    with pytest.raises(ArithmeticError):
        _kernels.first_decompositions([(1, 2, 4, 3)], [4], 3)


_WORKER = """
import json, sys
from exactcone import _kernels
from exactcone.catalogue import purely_min_semi_balanced
from exactcone.setcore import PlayerSet
n = int(sys.argv[1])
purely = purely_min_semi_balanced(PlayerSet(n))
print(json.dumps({
    "backend": _kernels.backend(),
    "mb": sorted(_kernels.min_balanced_masks(n)),
    "dec": _kernels.first_decompositions([s.sets for s, _ in purely], [t for _, t in purely], n),
}))
"""


@pytest.mark.parametrize("n", [3, 4, 5])
def test_numpy_fallback_agrees_with_default_backend(n):
    env = dict(os.environ, EXACTCONE_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", _WORKER, str(n)], env=env, capture_output=True, text=True, check=True)
    fallback = json.loads(out.stdout)
    assert fallback["backend"] == "numpy"
    purely = purely_min_semi_balanced(PlayerSet(n))
    here = _kernels.first_decompositions([s.sets for s, _ in purely], [t for _, t in purely], n)
    assert [list(s) for s in sorted(_kernels.min_balanced_masks(n))] == fallback["mb"]
    assert here == fallback["dec"]
