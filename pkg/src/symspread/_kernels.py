"""Compiled inner loops for divisibility filtering."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _divisible_any(cands, divs):
    n, d = cands.shape
    m = divs.shape[0]
    out = np.zeros(n, dtype=np.bool_)
    for r in range(n):
        for k in range(m):
            ok = True
            for j in range(d):
                if divs[k, j] > cands[r, j]:
                    ok = False
                    break
            if ok:
                out[r] = True
                break
    return out


@njit(cache=True)
def _minimal_mask_sorted(arr, deg):
    # rows sorted by degree, no duplicates; keep rows with no strict divisor
    n, d = arr.shape
    keep = np.zeros(n, dtype=np.bool_)
    kept = np.empty(n, dtype=np.int64)
    n_kept = 0
    for r in range(n):
        divisible = False
        for t in range(n_kept):
            k = kept[t]
            if deg[k] >= deg[r]:
                break
            ok = True
            for j in range(d):
                if arr[k, j] > arr[r, j]:
                    ok = False
                    break
            if ok:
                divisible = True
                break
        if not divisible:
            keep[r] = True
            kept[n_kept] = r
            n_kept += 1
    return keep


def divisible_any(cands: np.ndarray, divs: np.ndarray) -> np.ndarray:
    return _divisible_any(np.ascontiguousarray(cands), np.ascontiguousarray(divs))


def unique_rows(arr: np.ndarray) -> np.ndarray:
    """Distinct rows; packs each row into one integer when it fits."""
    n, d = arr.shape
    if n <= 1:
        return arr
    base = int(arr.max()) + 1
    if base ** d < 2**62:
        weights = base ** np.arange(d, dtype=np.int64)
        keys = arr @ weights
        _, idx = np.unique(keys, return_index=True)
        return arr[idx]
    return np.unique(arr, axis=0)


def minimal_mask_sorted(arr: np.ndarray, deg: np.ndarray) -> np.ndarray:
    return _minimal_mask_sorted(np.ascontiguousarray(arr), np.ascontiguousarray(deg))


@njit(cache=True)
def _extend_tight(arr, new_support, supports, n):
    # rows of arr are the minimal generators of ⋂_{old} p^n; extend each row
    # with deficit δ > 0 by every degree-δ monomial in the new prime and keep
    # results whose used variables all lie in a tight prime (new one included)
    rows, d = arr.shape
    k = supports.shape[0]
    h = new_support.shape[0]
    cap = max(16, 2 * rows)
    out = np.empty((cap, d), dtype=np.int64)
    m = 0
    x = np.empty(d, dtype=np.int64)
    f = np.empty(h, dtype=np.int64)
    tight = np.empty(k, dtype=np.bool_)
    for r in range(rows):
        delta = n
        for t in range(h):
            delta -= arr[r, new_support[t]]
        if delta <= 0:
            if m == cap:
                cap *= 2
                bigger = np.empty((cap, d), dtype=np.int64)
                bigger[:m] = out[:m]
                out = bigger
            out[m] = arr[r]
            m += 1
            continue
        f[:] = 0
        f[0] = delta
        while True:
            for j in range(d):
                x[j] = arr[r, j]
            for t in range(h):
                x[new_support[t]] += f[t]
            for s in range(k):
                tot = 0
                for j in range(d):
                    if supports[s, j]:
                        tot += x[j]
                tight[s] = tot == n
            ok = True
            for j in range(d):
                if x[j] > 0:
                    hit = False
                    for s in range(k):
                        if tight[s] and supports[s, j]:
                            hit = True
                            break
                    if not hit:
                        ok = False
                        break
            if ok:
                if m == cap:
                    cap *= 2
                    bigger = np.empty((cap, d), dtype=np.int64)
                    bigger[:m] = out[:m]
                    out = bigger
                out[m] = x
                m += 1
            # next weak composition of delta into h parts
            j = h - 2
            while j >= 0 and f[j] == 0:
                j -= 1
            if j < 0:
                break
            f[j] -= 1
            last = f[h - 1]
            f[h - 1] = 0
            f[j + 1] = last + 1
    return out[:m]


def extend_tight(arr: np.ndarray, new_support, supports: np.ndarray, n: int) -> np.ndarray:
    """Minimal generators of (⋂_old p^n) ∩ p_new^n from those of ⋂_old p^n.

    ``supports`` holds 0/1 rows for all primes, the new one included.
    """
    out = _extend_tight(
        np.ascontiguousarray(arr, dtype=np.int64),
        np.asarray(new_support, dtype=np.int64),
        np.ascontiguousarray(supports, dtype=np.int64),
        int(n),
    )
    return unique_rows(out)
