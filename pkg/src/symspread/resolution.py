"""Multigraded Betti numbers of R/I from upper Koszul simplicial complexes.

For a monomial b the upper Koszul complex is
``K^b(I) = {S ⊆ supp b : x^{b - e_S} ∈ I}`` and

    β_{i,b}(R/I) = dim H̃_{i-2}(K^b(I); k)   for i ≥ 1,

with β_{0,1} = 1. Only multidegrees in the lcm lattice of the generators can
carry nonzero Betti numbers, so those are the only ones visited.

Reduced homology conventions, fixed here and nowhere else:

* the void complex (no faces at all) has zero reduced homology;
* the complex {∅} has H̃_{-1} of rank one and nothing else.

The empty face sits in degree -1 and the augmentation C_0 → C_{-1} is the
boundary ∂_0, which is exactly what makes {∅} carry H̃_{-1}.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from symspread._kernels import divisible_any, unique_rows
from symspread.errors import CapExceeded, ConfigurationError
from symspread.monomial import MonomialIdeal, format_monomial

LCM_LATTICE_CAP = 200_000


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % q for q in range(3, math.isqrt(p) + 1, 2))


def check_field(field_char: int) -> int:
    field_char = int(field_char)
    if field_char != 0 and not is_prime(field_char):
        raise ConfigurationError(f"field characteristic must be 0 or a prime, got {field_char}")
    return field_char


@dataclass(frozen=True)
class SimplicialComplexSnapshot:
    vertices: tuple[int, ...]  # 0-based variable indices (supp b)
    faces: tuple[tuple[int, ...], ...]  # sorted by size, then lexicographically
    in_lcm_lattice: bool = True

    def __post_init__(self):
        fs = set(self.faces)
        for f in self.faces:
            for k in range(len(f)):
                if f[:k] + f[k + 1:] not in fs:
                    raise ValueError(f"face set not closed under subsets at {f}")

    @property
    def is_void(self) -> bool:
        return not self.faces

    def f_vector(self) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for f in self.faces:
            out[len(f) - 1] += 1
        return dict(out)


def lcm_lattice(ideal: MonomialIdeal, cap: int = LCM_LATTICE_CAP) -> np.ndarray:
    """All lcms of nonempty subsets of the generators, closed by repeated
    lcm with single generators."""
    gens = ideal.array
    seen = unique_rows(gens)
    keys = {row.tobytes() for row in seen}
    frontier = seen
    while frontier.shape[0]:
        cand = np.maximum(frontier[:, None, :], gens[None, :, :]).reshape(-1, gens.shape[1])
        cand = unique_rows(cand)
        fresh = [row for row in cand if row.tobytes() not in keys]
        if not fresh:
            break
        frontier = np.array(fresh, dtype=np.int64)
        keys.update(row.tobytes() for row in frontier)
        seen = np.concatenate([seen, frontier])
        if seen.shape[0] > cap:
            raise CapExceeded(f"lcm lattice exceeds {cap} elements")
    return seen


def _faces_at(ideal: MonomialIdeal, b: np.ndarray) -> list[tuple[int, ...]]:
    supp = tuple(int(i) for i in np.flatnonzero(b))
    subsets = [s for k in range(len(supp) + 1) for s in itertools.combinations(supp, k)]
    pts = np.repeat(b[None, :], len(subsets), axis=0)
    for row, s in enumerate(subsets):
        if s:
            pts[row, list(s)] -= 1
    mask = divisible_any(pts, ideal.array)
    return [s for s, ok in zip(subsets, mask) if ok]


def koszul_complex_at(ideal: MonomialIdeal, b) -> SimplicialComplexSnapshot:
    """The upper Koszul complex of I at multidegree b.

    Multidegrees outside the lcm lattice are allowed; the snapshot flags them
    (their complexes are acyclic cones or void).
    """
    b = np.asarray(b, dtype=np.int64)
    if b.shape != (ideal.dim,) or (b < 0).any():
        raise ValueError("b must be a non-negative exponent vector of length d")
    faces = _faces_at(ideal, b)
    gens = ideal.array[(ideal.array <= b).all(axis=1)]
    in_lattice = bool(gens.shape[0]) and bool((gens.max(axis=0) == b).all())
    supp = tuple(int(i) for i in np.flatnonzero(b))
    return SimplicialComplexSnapshot(supp, tuple(faces), in_lattice)


# --------------------------------------------------------------------------
# exact ranks


def _rank_mod_p(mat: np.ndarray, p: int) -> int:
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if a[r, c]), None)
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        inv = pow(int(a[rank, c]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        nz = np.flatnonzero(a[:, c])
        nz = nz[nz != rank]
        if nz.size:
            a[nz] = (a[nz] - np.outer(a[nz, c], a[rank])) % p
        rank += 1
        if rank == rows:
            break
    return rank


def _rank_rational(mat: np.ndarray) -> int:
    """Fraction-free (Bareiss) elimination on Python integers."""
    a = [[int(v) for v in row] for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank, prev = 0, 1
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if a[r][c]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        piv = a[rank][c]
        for r in range(rank + 1, rows):
            arc = a[r][c]
            row_r, row_k = a[r], a[rank]
            for j in range(c, cols):
                row_r[j] = (piv * row_r[j] - arc * row_k[j]) // prev
        prev = piv
        rank += 1
        if rank == rows:
            break
    return rank


def matrix_rank(mat: np.ndarray, field_char: int) -> int:
    if mat.size == 0:
        return 0
    return _rank_rational(mat) if field_char == 0 else _rank_mod_p(mat, field_char)


def _is_cone(faces: set, vertices: tuple[int, ...]) -> bool:
    for v in vertices:
        if all(tuple(sorted(f + (v,))) in faces for f in faces if v not in f):
            return True
    return False


def reduced_homology(snapshot: SimplicialComplexSnapshot, field_char: int = 0) -> dict[int, int]:
    """Nonzero ranks of H̃_k over the field, keyed by k ≥ -1."""
    if snapshot.is_void:
        return {}
    faces = set(snapshot.faces)
    if len(faces) > 1 and _is_cone(faces, snapshot.vertices):
        return {}
    by_dim: dict[int, list[tuple[int, ...]]] = defaultdict(list)
    for f in snapshot.faces:
        by_dim[len(f) - 1].append(f)
    top = max(by_dim)
    index = {k: {f: j for j, f in enumerate(sorted(by_dim[k]))} for k in by_dim}
    ranks = {}
    for k in range(0, top + 1):
        # ∂_k : C_k → C_{k-1}
        src, dst = index.get(k, {}), index.get(k - 1, {})
        if not src or not dst:
            ranks[k] = 0
            continue
        mat = np.zeros((len(dst), len(src)), dtype=np.int64)
        for f, col in src.items():
            for pos in range(len(f)):
                mat[dst[f[:pos] + f[pos + 1:]], col] = (-1) ** pos
        ranks[k] = matrix_rank(mat, field_char)
    out = {}
    for k in range(-1, top + 1):
        dim_k = len(index.get(k, {}))
        h = dim_k - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if h:
            out[k] = h
    return out


# --------------------------------------------------------------------------
# Betti tables


@dataclass(frozen=True)
class BettiTable:
    field_char: int
    dim: int
    multigraded: dict[tuple[int, tuple[int, ...]], int] = field(repr=False)

    @property
    def totals(self) -> tuple[int, ...]:
        if not self.multigraded:
            return (1,)
        top = max(i for i, _ in self.multigraded)
        out = [0] * (top + 1)
        for (i, _), v in self.multigraded.items():
            out[i] += v
        return tuple(out)

    @property
    def graded(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = defaultdict(int)
        for (i, b), v in self.multigraded.items():
            out[(i, sum(b))] += v
        return dict(sorted(out.items()))

    @property
    def pd(self) -> int:
        return len(self.totals) - 1

    @property
    def depth(self) -> int:
        return self.dim - self.pd

    def to_json(self, ring=None) -> dict:
        def mono(b):
            return format_monomial(b, ring) if ring is not None else list(b)

        return {
            "field_char": self.field_char,
            "betti": list(self.totals),
            "graded": [{"i": i, "degree": j, "rank": v} for (i, j), v in self.graded.items()],
            "multigraded": [
                {"i": i, "multidegree": mono(b), "rank": v}
                for (i, b), v in sorted(self.multigraded.items(), key=lambda kv: (kv[0][0], sum(kv[0][1]), kv[0][1]))
            ],
            "pd": self.pd,
            "depth": self.depth,
        }


def _check_table(table: BettiTable, ideal: MonomialIdeal) -> None:
    totals = table.totals
    if totals[0] != 1 or totals[1] != ideal.mu:
        raise AssertionError(f"Betti table {totals} disagrees with μ(I) = {ideal.mu}")
    if table.pd > min(ideal.dim, ideal.mu):
        raise AssertionError(f"pd {table.pd} exceeds min(d, μ)")
    if sum((-1) ** i * v for i, v in enumerate(totals)) != 0:
        raise AssertionError(f"Euler characteristic of {totals} is nonzero")


_BETTI_CACHE: dict[tuple[MonomialIdeal, int], BettiTable] = {}


def betti_numbers(ideal: MonomialIdeal, field_char: int = 0) -> BettiTable:
    field_char = check_field(field_char)
    if ideal.is_zero or ideal.is_unit:
        raise ValueError("expected a proper nonzero ideal")
    key = (ideal, field_char)
    hit = _BETTI_CACHE.get(key)
    if hit is not None:
        return hit
    d = ideal.dim
    multigraded: dict[tuple[int, tuple[int, ...]], int] = {(0, (0,) * d): 1}
    for b in lcm_lattice(ideal):
        snap = koszul_complex_at(ideal, b)
        for k, h in reduced_homology(snap, field_char).items():
            multigraded[(k + 2, tuple(int(v) for v in b))] = h
    table = BettiTable(field_char, d, multigraded)
    _check_table(table, ideal)
    if len(_BETTI_CACHE) > 4096:
        _BETTI_CACHE.clear()
    _BETTI_CACHE[key] = table
    return table


def projective_dimension(ideal: MonomialIdeal, field_char: int = 0) -> int:
    return betti_numbers(ideal, field_char).pd


def depth_quotient(ideal: MonomialIdeal, field_char: int = 0) -> int:
    """depth R/I = d - pd R/I (Auslander–Buchsbaum)."""
    return ideal.dim - projective_dimension(ideal, field_char)
