"""Exact integer kernels for the enumeration hot loops.

Both kernels reduce to solving small 0/1 linear systems ``A x = b`` with
fraction-free Gauss-Jordan elimination (Montante/Bareiss).  Every
intermediate entry is a minor of a 0/1 matrix with at most ``n + 1 <= 8``
rows, so int64 never overflows and no rounding can occur.

Two interchangeable backends exist:

* numba ``@njit`` loops (default when numba imports), and
* batched pure-numpy elimination, selected with ``EXACTCONE_NO_NUMBA=1``.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("EXACTCONE_NO_NUMBA", "").lower() not in ("1", "true", "yes")

# solve status codes
OK, RANK_DEFICIENT, INCONSISTENT = 0, 1, 2


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


def sorted_nontrivial(n: int) -> np.ndarray:
    """Non-trivial masks in canonical (popcount, mask) order."""
    masks = np.arange(1, (1 << n) - 1, dtype=np.int64)
    pc = np.zeros_like(masks)
    for i in range(n):
        pc += (masks >> i) & 1
    return masks[np.lexsort((masks, pc))]


# ---------------------------------------------------------------------------
# numpy backend


def montante_batch(m: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Solve a batch of augmented systems ``[A | b]`` of shape (B, rows, k + 1).

    Returns ``(status, num, den)`` with ``x[:, c] = num[:, c] / den[:, c]`` where
    ``status == OK``.
    """
    m = np.array(m, dtype=np.int64, copy=True)
    nb, rows, width = m.shape
    k = width - 1
    status = np.zeros(nb, dtype=np.int8)
    piv_rows = np.zeros((nb, k), dtype=np.int64)
    used = np.zeros((nb, rows), dtype=bool)
    prev = np.ones(nb, dtype=np.int64)
    act = np.arange(nb)
    for c in range(k):
        ma = m[act]
        cand = (ma[:, :, c] != 0) & ~used[act]
        has = cand.any(axis=1)
        status[act[~has]] = RANK_DEFICIENT
        act, ma, cand = act[has], ma[has], cand[has]
        if not len(act):
            break
        p = cand.argmax(axis=1)
        ar = np.arange(len(act))
        prow = ma[ar, p]
        piv = prow[:, c]
        colc = ma[:, :, c]
        new = (piv[:, None, None] * ma - colc[:, :, None] * prow[:, None, :]) // prev[act][:, None, None]
        new[ar, p] = prow
        m[act] = new
        used[act, p] = True
        piv_rows[act, c] = p
        prev[act] = piv
    leftover = np.where(used, 0, m[:, :, k])
    status[(status == OK) & (leftover != 0).any(axis=1)] = INCONSISTENT
    bi = np.arange(nb)[:, None]
    num = m[bi, piv_rows, k]
    den = m[bi, piv_rows, np.arange(k)[None, :]]
    return status, num, den


def _incidence_batch(masks: np.ndarray, n: int) -> np.ndarray:
    """(B, k) masks -> (B, n, k) 0/1 incidence columns."""
    bits = np.arange(n, dtype=np.int64)
    return ((masks[:, None, :] >> bits[None, :, None]) & 1).astype(np.int64)


def _screen_np(combos: np.ndarray, n: int) -> np.ndarray:
    """Boolean flags: columns linearly independent and ``1 = sum x_c col_c`` with all ``x_c > 0``."""
    full = (1 << n) - 1
    union = np.bitwise_or.reduce(combos, axis=1)
    inter = np.bitwise_and.reduce(combos, axis=1)
    flags = np.zeros(len(combos), dtype=bool)
    pre = np.nonzero((union == full) & (inter == 0))[0]
    if not len(pre):
        return flags
    a = _incidence_batch(combos[pre], n)
    aug = np.concatenate([a, np.ones((len(pre), n, 1), dtype=np.int64)], axis=2)
    status, num, den = montante_batch(aug)
    positive = ((num > 0) == (den > 0)) & (num != 0)
    flags[pre] = (status == OK) & positive.all(axis=1)
    return flags


def _min_balanced_np(n: int, chunk: int = 200_000) -> list[tuple[int, ...]]:
    masks = sorted_nontrivial(n)
    found: list[tuple[int, ...]] = []
    for k in range(2, n + 1):
        it = itertools.combinations(range(len(masks)), k)
        while True:
            block = np.fromiter(itertools.chain.from_iterable(itertools.islice(it, chunk)), dtype=np.int64)
            if not len(block):
                break
            idx = block.reshape(-1, k)
            flags = _screen_np(masks[idx], n)
            found.extend(tuple(int(v) for v in row) for row in masks[idx[flags]])
    return found


def _first_decomposition_np(others: np.ndarray, n: int, candidates: np.ndarray) -> tuple[int, int]:
    """First candidate ``E`` with ``sum y_S chi_S - r chi_N = chi_E``, ``y_S >= 0``.

    Returns ``(index, status)``; index is -1 when there is none.
    """
    if not len(candidates):
        return -1, OK
    full = (1 << n) - 1
    cols = np.concatenate([others, [full]]).astype(np.int64)
    k = len(cols)
    a = _incidence_batch(cols[None, :], n)[0]
    a[:, k - 1] *= -1
    b = _incidence_batch(candidates[:, None], n)[:, :, 0]
    aug = np.concatenate([np.broadcast_to(a, (len(candidates), n, k)), b[:, :, None]], axis=2)
    status, num, den = montante_batch(aug)
    if (status == RANK_DEFICIENT).any():
        return -1, RANK_DEFICIENT
    nonneg = ((num[:, : k - 1] >= 0) == (den[:, : k - 1] > 0)) | (num[:, : k - 1] == 0)
    hit = (status == OK) & nonneg.all(axis=1)
    idx = np.nonzero(hit)[0]
    return (int(idx[0]) if len(idx) else -1), OK


# ---------------------------------------------------------------------------
# numba backend


def _solve_one(m, rows, k, used, piv_rows):
    """In-place Montante elimination of ``m[:rows, :k+1]``; returns a status code."""
    for i in range(rows):
        used[i] = False
    prev = 1
    for c in range(k):
        p = -1
        for i in range(rows):
            if not used[i] and m[i, c] != 0:
                p = i
                break
        if p < 0:
            return RANK_DEFICIENT
        piv = m[p, c]
        for i in range(rows):
            if i != p:
                f = m[i, c]
                for j in range(k + 1):
                    m[i, j] = (piv * m[i, j] - f * m[p, j]) // prev
        used[p] = True
        piv_rows[c] = p
        prev = piv
    for i in range(rows):
        if not used[i] and m[i, k] != 0:
            return INCONSISTENT
    return OK


def _balanced_check(sel, k, n, m, used, piv_rows):
    for i in range(n):
        for c in range(k):
            m[i, c] = (sel[c] >> i) & 1
        m[i, k] = 1
    if _solve_one(m, n, k, used, piv_rows) != OK:
        return False
    for c in range(k):
        num = m[piv_rows[c], k]
        den = m[piv_rows[c], c]
        if num == 0 or (num > 0) != (den > 0):
            return False
    return True


def _min_balanced_first_nb(masks, first, k, n, out):
    """Min-balanced systems of size ``k`` whose smallest member is ``masks[first]``.

    Writes hits (as index rows) into ``out``; returns the count, or -1 if ``out`` overflowed.
    """
    total = masks.shape[0]
    full = (1 << n) - 1
    m = np.zeros((n, k + 1), dtype=np.int64)
    used = np.zeros(n, dtype=np.bool_)
    piv_rows = np.zeros(k, dtype=np.int64)
    idx = np.zeros(k, dtype=np.int64)
    sel = np.zeros(k, dtype=np.int64)
    idx[0] = first
    for j in range(1, k):
        idx[j] = first + j
    if k > 1 and idx[k - 1] >= total:
        return 0
    count = 0
    while True:
        union = 0
        inter = full
        for c in range(k):
            sel[c] = masks[idx[c]]
            union |= sel[c]
            inter &= sel[c]
        if union == full and inter == 0:
            if _balanced_check(sel, k, n, m, used, piv_rows):
                if count >= out.shape[0]:
                    return -1
                for c in range(k):
                    out[count, c] = idx[c]
                count += 1
        # next combination of positions 1..k-1
        j = k - 1
        while j >= 1 and idx[j] == total - k + j:
            j -= 1
        if j < 1:
            break
        idx[j] += 1
        for t in range(j + 1, k):
            idx[t] = idx[t - 1] + 1
    return count


def _first_decompositions_nb(systems, lengths, exceptional, n, candidates, out):
    """For each system row, the first candidate index that yields a decomposition (or -1).

    ``systems[p, :lengths[p]]`` are the member masks and ``exceptional[p]`` the
    position of the exceptional set.  Returns 0, or 1 if a rank defect was met.
    """
    full = (1 << n) - 1
    kmax = systems.shape[1]
    m = np.zeros((n, kmax + 1), dtype=np.int64)
    used = np.zeros(n, dtype=np.bool_)
    piv_rows = np.zeros(kmax, dtype=np.int64)
    cols = np.zeros(kmax, dtype=np.int64)
    flag = 0
    for p in range(systems.shape[0]):
        ln = lengths[p]
        # columns: members except the exceptional one, then -chi_N
        k = 0
        for c in range(ln):
            if c != exceptional[p]:
                cols[k] = systems[p, c]
                k += 1
        k += 1
        out[p] = -1
        for e in range(candidates.shape[0]):
            cand = candidates[e]
            member = False
            for c in range(ln):
                if systems[p, c] == cand:
                    member = True
                    break
            if member:
                continue
            for i in range(n):
                for c in range(k - 1):
                    m[i, c] = (cols[c] >> i) & 1
                m[i, k - 1] = -((full >> i) & 1)
                m[i, k] = (cand >> i) & 1
            st = _solve_one(m, n, k, used, piv_rows)
            if st == RANK_DEFICIENT:
                flag = 1
                break
            if st != OK:
                continue
            good = True
            for c in range(k - 1):
                num = m[piv_rows[c], k]
                den = m[piv_rows[c], c]
                if num != 0 and (num > 0) != (den > 0):
                    good = False
                    break
            if good:
                out[p] = e
                break
    return flag


if USE_NUMBA:
    _solve_one = numba.njit(cache=True)(_solve_one)
    _balanced_check = numba.njit(cache=True)(_balanced_check)
    _min_balanced_first_nb = numba.njit(cache=True)(_min_balanced_first_nb)
    _first_decompositions_nb = numba.njit(cache=True)(_first_decompositions_nb)


def _min_balanced_nb(n: int) -> list[tuple[int, ...]]:
    masks = sorted_nontrivial(n)
    found: list[tuple[int, ...]] = []
    cap = 1 << 16
    for k in range(2, n + 1):
        for first in range(len(masks) - k + 1):
            while True:
                out = np.zeros((cap, k), dtype=np.int64)
                cnt = _min_balanced_first_nb(masks, first, k, n, out)
                if cnt >= 0:
                    break
                cap *= 4
            found.extend(tuple(int(v) for v in masks[row]) for row in out[:cnt])
    return found


# ---------------------------------------------------------------------------
# public entry points


def min_balanced_masks(n: int) -> list[tuple[int, ...]]:
    """All min-balanced systems on ``n`` players as tuples of masks (canonical member order).

    Candidates are systems of 2..n coalitions with union N and empty
    intersection; a candidate is kept iff its incidence vectors are linearly
    independent and ``chi_N`` is their combination with positive weights.
    """
    if USE_NUMBA:
        return _min_balanced_nb(n)
    return _min_balanced_np(n)


def first_decompositions(systems: list[tuple[int, ...]], exceptional: list[int], n: int) -> list[int]:
    """Per purely min-semi-balanced system, the canonically first decomposing set (mask) or -1.

    ``exceptional[p]`` is the exceptional set (a mask) of ``systems[p]``.
    """
    candidates = sorted_nontrivial(n)
    if not systems:
        return []
    if USE_NUMBA:
        kmax = max(len(s) for s in systems)
        arr = np.zeros((len(systems), kmax), dtype=np.int64)
        lengths = np.zeros(len(systems), dtype=np.int64)
        exc = np.zeros(len(systems), dtype=np.int64)
        for p, s in enumerate(systems):
            arr[p, : len(s)] = s
            lengths[p] = len(s)
            exc[p] = s.index(exceptional[p])
        out = np.zeros(len(systems), dtype=np.int64)
        if _first_decompositions_nb(arr, lengths, exc, n, candidates, out):
            raise ArithmeticError("rank defect: input is not purely min-semi-balanced")
        return [int(candidates[i]) if i >= 0 else -1 for i in out]
    result = []
    for s, t in zip(systems, exceptional):
        others = np.array([x for x in s if x != t], dtype=np.int64)
        cands = np.array([c for c in candidates if c not in s], dtype=np.int64)
        i, st = _first_decomposition_np(others, n, cands)
        if st == RANK_DEFICIENT:
            raise ArithmeticError("rank defect: input is not purely min-semi-balanced")
        result.append(int(cands[i]) if i >= 0 else -1)
    return result


def solve_batch(m: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Backend-dispatched batch solve of augmented integer systems (used by tests and benchmarks)."""
    m = np.asarray(m, dtype=np.int64)
    if not USE_NUMBA:
        return montante_batch(m)
    nb, rows, width = m.shape
    k = width - 1
    status = np.zeros(nb, dtype=np.int8)
    num = np.zeros((nb, k), dtype=np.int64)
    den = np.zeros((nb, k), dtype=np.int64)
    used = np.zeros(rows, dtype=np.bool_)
    piv_rows = np.zeros(max(k, 1), dtype=np.int64)
    for b in range(nb):
        work = m[b].copy()
        st = _solve_one(work, rows, k, used, piv_rows)
        status[b] = st
        if st == OK:
            for c in range(k):
                num[b, c] = work[piv_rows[c], k]
                den[b, c] = work[piv_rows[c], c]
    return status, num, den
