"""Monomials and monomial ideals in a polynomial ring k[x_1, ..., x_d].

A monomial is a tuple of ``d`` non-negative exponents. A :class:`MonomialIdeal`
always stores its unique minimal generating set, sorted in graded
lexicographic order, so two ideals are equal exactly when their generator
tuples are equal.

The heavy lifting (minimalization, lcm intersections, colons) runs on
``int64`` numpy arrays of shape ``(n_gens, d)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from symspread import _kernels
from symspread.errors import CapExceeded, DimensionMismatch, ExponentOverflow, ParseError

Monomial = tuple[int, ...]

# Sums of two admissible exponents must still fit in int64.
EXPONENT_LIMIT = 2**61
# Upper bound on any intermediate candidate set handed to the kernels.
CANDIDATE_CAP = 20_000_000


@dataclass(frozen=True)
class Ring:
    """Ambient polynomial ring, identified by its ordered variable names."""

    var_names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.var_names)
        object.__setattr__(self, "var_names", names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not _NAME_RE.fullmatch(name):
                raise ValueError(f"invalid variable name {name!r}")

    @classmethod
    def of_dim(cls, d: int, prefix: str = "x") -> "Ring":
        if d < 1:
            raise ValueError("dimension must be positive")
        return cls(tuple(f"{prefix}{i}" for i in range(1, d + 1)))

    @classmethod
    def from_names(cls, text: str) -> "Ring":
        return cls(tuple(part.strip() for part in text.split(",") if part.strip()))

    @property
    def dim(self) -> int:
        return len(self.var_names)

    def variable(self, i: int) -> Monomial:
        return tuple(int(j == i) for j in range(self.dim))

    def unit(self) -> Monomial:
        return (0,) * self.dim

    def __str__(self):
        return ",".join(self.var_names)


# --------------------------------------------------------------------------
# array kernels


def _as_array(gens, d: int) -> np.ndarray:
    if isinstance(gens, np.ndarray):
        arr = gens.astype(np.int64, copy=False).reshape(-1, d)
    else:
        gens = list(gens)
        if not gens:
            return np.zeros((0, d), dtype=np.int64)
        for g in gens:
            if len(g) != d:
                raise DimensionMismatch(f"monomial {tuple(g)} does not have {d} exponents")
        arr = np.array(gens, dtype=np.int64).reshape(-1, d)
    if arr.size:
        if arr.min() < 0:
            raise ValueError("exponents must be non-negative")
        if arr.max() >= EXPONENT_LIMIT:
            raise ExponentOverflow(f"exponent exceeds {EXPONENT_LIMIT}")
    return arr


def _check_candidates(n: int) -> None:
    if n > CANDIDATE_CAP:
        raise CapExceeded(f"{n} candidate monomials exceed the cap of {CANDIDATE_CAP}")


def divisible_mask(cands: np.ndarray, divisors: np.ndarray) -> np.ndarray:
    """Row mask: ``cands[k]`` is divisible by at least one row of ``divisors``."""
    if cands.shape[0] == 0 or divisors.shape[0] == 0:
        return np.zeros(cands.shape[0], dtype=bool)
    return _kernels.divisible_any(cands, divisors)


def _grlex_order(arr: np.ndarray) -> np.ndarray:
    # degree ascending, then lex with x_1 > x_2 > ... (larger leading exponent first)
    keys = [-arr[:, j] for j in range(arr.shape[1] - 1, -1, -1)]
    keys.append(arr.sum(axis=1))
    return np.lexsort(keys)


def minimal_rows(arr: np.ndarray) -> np.ndarray:
    """Minimal elements of a set of exponent vectors, in canonical order."""
    if arr.shape[0] <= 1:
        return arr.copy()
    _check_candidates(arr.shape[0])
    arr = _kernels.unique_rows(arr)
    order = _grlex_order(arr)
    arr = arr[order]
    deg = arr.sum(axis=1)
    # strict divisors have strictly smaller degree; the grlex sort keeps
    # degrees ascending, so one forward sweep suffices
    if deg[0] != deg[-1]:
        arr = arr[_kernels.minimal_mask_sorted(arr, deg)]
    return arr


# --------------------------------------------------------------------------
# ideals


class MonomialIdeal:
    """A monomial ideal held as its canonical minimal generating set.

    Instances are immutable and hashable. ``gens`` is a tuple of exponent
    tuples sorted in graded lexicographic order. The empty tuple is the zero
    ideal; ``(unit,)`` is the unit ideal.
    """

    def __init__(self, ring: Ring, gens: Iterable[Sequence[int]] | np.ndarray = (), *, _canonical: bool = False):
        self.ring = ring
        if _canonical:
            arr = gens if isinstance(gens, np.ndarray) else _as_array(gens, ring.dim)
        else:
            arr = minimal_rows(_as_array(gens, ring.dim))
        self.__dict__["array"] = arr
        self.gens: tuple[Monomial, ...] = tuple(map(tuple, arr.tolist()))

    @classmethod
    def _from_array(cls, ring: Ring, arr: np.ndarray) -> "MonomialIdeal":
        return cls(ring, minimal_rows(arr), _canonical=True)

    @classmethod
    def zero(cls, ring: Ring) -> "MonomialIdeal":
        return cls(ring, ())

    @classmethod
    def unit_ideal(cls, ring: Ring) -> "MonomialIdeal":
        return cls(ring, [ring.unit()], _canonical=True)

    @classmethod
    def maximal(cls, ring: Ring) -> "MonomialIdeal":
        return cls(ring, [ring.variable(i) for i in range(ring.dim)])

    @classmethod
    def prime(cls, ring: Ring, support: Iterable[int]) -> "MonomialIdeal":
        return cls(ring, [ring.variable(i) for i in sorted(support)])

    @property
    def array(self) -> np.ndarray:
        return self.__dict__["array"]

    @property
    def dim(self) -> int:
        return self.ring.dim

    @property
    def mu(self) -> int:
        return len(self.gens)

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and not any(self.gens[0])

    @property
    def is_proper(self) -> bool:
        return not self.is_unit

    @cached_property
    def is_squarefree(self) -> bool:
        return bool(self.array.size == 0 or self.array.max() <= 1)

    @cached_property
    def max_exponents(self) -> tuple[int, ...]:
        if self.is_zero:
            return (0,) * self.dim
        return tuple(int(v) for v in self.array.max(axis=0))

    @cached_property
    def support(self) -> frozenset[int]:
        """Variables that occur in some minimal generator."""
        if self.is_zero:
            return frozenset()
        return frozenset(int(i) for i in np.flatnonzero(self.array.max(axis=0)))

    def __contains__(self, m) -> bool:
        return membership(m, self)

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.ring == other.ring and self.gens == other.gens

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = self.__dict__["_hash"] = hash((self.ring, self.gens))
        return h

    def __le__(self, other: "MonomialIdeal") -> bool:
        """Containment ``self ⊆ other``."""
        _same_ring(self, other)
        if self.is_zero:
            return True
        return bool(divisible_mask(self.array, other.array).all())

    def __ge__(self, other: "MonomialIdeal") -> bool:
        return other <= self

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return product(self, other)

    def __pow__(self, n: int):
        return power(self, n)

    def __and__(self, other):
        return intersect(self, other)

    def __getstate__(self):
        return {"ring": self.ring, "gens": self.gens}

    def __setstate__(self, state):
        self.ring = state["ring"]
        arr = _as_array(state["gens"], self.ring.dim)
        self.__dict__["array"] = arr
        self.gens = tuple(map(tuple, arr.tolist()))

    def __str__(self):
        return format_ideal(self)

    def __repr__(self):
        return f"MonomialIdeal({format_ideal(self)!r}, ring={str(self.ring)!r})"


def _same_ring(*ideals: MonomialIdeal) -> Ring:
    ring = ideals[0].ring
    for other in ideals[1:]:
        if other.ring != ring:
            raise DimensionMismatch(f"ideals live in different rings: {ring} vs {other.ring}")
    return ring


def minimalize(gens: Iterable[Sequence[int]], ring: Ring | None = None) -> MonomialIdeal:
    """Canonical ideal generated by ``gens``.

    Without an explicit ``ring`` the dimension is read off the first monomial
    and the default names ``x1..xd`` are used.
    """
    gens = [tuple(g) for g in gens]
    if ring is None:
        if not gens:
            raise ValueError("cannot infer the ring of an empty generator set")
        ring = Ring.of_dim(len(gens[0]))
    return MonomialIdeal(ring, gens)


def membership(m: Sequence[int], ideal: MonomialIdeal) -> bool:
    if len(m) != ideal.dim:
        raise DimensionMismatch(f"monomial {tuple(m)} does not live in {ideal.ring}")
    if ideal.is_zero:
        return False
    return bool((ideal.array <= np.asarray(m, dtype=np.int64)).all(axis=1).any())


def members_mask(points: np.ndarray, ideal: MonomialIdeal) -> np.ndarray:
    """Vectorised membership for an ``(n, d)`` array of exponent vectors."""
    return divisible_mask(points, ideal.array)


def ideal_sum(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    ring = _same_ring(i, j)
    return MonomialIdeal._from_array(ring, np.concatenate([i.array, j.array]))


def product(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    ring = _same_ring(i, j)
    if i.is_zero or j.is_zero:
        return MonomialIdeal.zero(ring)
    _check_candidates(i.mu * j.mu)
    cands = (i.array[:, None, :] + j.array[None, :, :]).reshape(-1, ring.dim)
    return MonomialIdeal._from_array(ring, _checked(cands))


def _checked(arr: np.ndarray) -> np.ndarray:
    if arr.size and arr.max() >= EXPONENT_LIMIT:
        raise ExponentOverflow(f"exponent exceeds {EXPONENT_LIMIT}")
    return arr


def powers(ideal: MonomialIdeal, n: int):
    """Yield ``ideal**1, ..., ideal**n`` by repeated multiplication."""
    current = ideal
    for k in range(1, n + 1):
        if k > 1:
            current = product(current, ideal)
        yield current


def power(ideal: MonomialIdeal, n: int) -> MonomialIdeal:
    """``ideal**n``; ``n = 0`` gives the unit ideal."""
    if n < 0:
        raise ValueError("power must be non-negative")
    if n == 0:
        return MonomialIdeal.unit_ideal(ideal.ring)
    result = ideal
    for result in powers(ideal, n):
        pass
    return result


def intersect(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    """Intersection via minimal pairwise lcms.

    Generators of one ideal that already lie in the other are kept as they
    are; only the remaining pairs need an lcm.
    """
    ring = _same_ring(i, j)
    if i.is_zero or j.is_zero:
        return MonomialIdeal.zero(ring)
    a, b = i.array, j.array
    a_in = divisible_mask(a, b)
    b_in = divisible_mask(b, a)
    a_out, b_out = a[~a_in], b[~b_in]
    parts = [a[a_in], b[b_in]]
    if a_out.shape[0] and b_out.shape[0]:
        _check_candidates(a_out.shape[0] * b_out.shape[0])
        parts.append(np.maximum(a_out[:, None, :], b_out[None, :, :]).reshape(-1, ring.dim))
    return MonomialIdeal._from_array(ring, np.concatenate(parts))


def intersect_all(ideals: Sequence[MonomialIdeal]) -> MonomialIdeal:
    if not ideals:
        raise ValueError("need at least one ideal")
    result = ideals[0]
    for other in ideals[1:]:
        result = intersect(result, other)
    return result


def colon_monomial(ideal: MonomialIdeal, g: Sequence[int]) -> MonomialIdeal:
    """``(ideal : g)`` for a single monomial ``g``."""
    g_arr = np.asarray(g, dtype=np.int64)
    if ideal.is_zero:
        return ideal
    return MonomialIdeal._from_array(ideal.ring, np.maximum(ideal.array - g_arr, 0))


def colon(ideal: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    """``(ideal : j) = ⋂_{g ∈ gens(j)} (ideal : g)``."""
    _same_ring(ideal, j)
    if j.is_zero:
        raise ValueError("colon by the zero ideal is undefined")
    return intersect_all([colon_monomial(ideal, g) for g in j.gens])


def saturate(ideal: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    """``(ideal : j^∞)``, iterating the colon until it stabilises."""
    _same_ring(ideal, j)
    if j.is_zero:
        raise ValueError("saturation by the zero ideal is undefined")
    if j.mu == 1:
        return saturate_monomial(ideal, j.gens[0])
    current = ideal
    while True:
        nxt = colon(current, j)
        if nxt == current:
            return current
        current = nxt


def saturate_monomial(ideal: MonomialIdeal, g: Sequence[int]) -> MonomialIdeal:
    """``(ideal : g^∞)``: the variables dividing ``g`` are set to 1."""
    if ideal.is_zero:
        return ideal
    arr = ideal.array.copy()
    arr[:, [k for k, e in enumerate(g) if e > 0]] = 0
    return MonomialIdeal._from_array(ideal.ring, arr)


def radical(ideal: MonomialIdeal) -> MonomialIdeal:
    if ideal.is_zero:
        return ideal
    return MonomialIdeal._from_array(ideal.ring, np.minimum(ideal.array, 1))


def variables_product(ring: Ring, indices: Iterable[int]) -> Monomial:
    idx = set(indices)
    return tuple(int(k in idx) for k in range(ring.dim))


# --------------------------------------------------------------------------
# text format:  term := var ('^' int)? ;  monomial := term ('*' term)* ;
#               ideal := monomial (',' monomial)*
# "1" denotes the unit monomial and a lone "0" the zero ideal.

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>\d+)|(?P<op>[*^,]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_monomial(text: str, ring: Ring) -> Monomial:
    ideal_gens = _parse(text, ring)
    if len(ideal_gens) != 1:
        raise ParseError("expected a single monomial", 0)
    return ideal_gens[0]


def parse_ideal(text: str, ring: Ring) -> MonomialIdeal:
    """Parse ``"x^2*y, x*z"`` into a canonical ideal over ``ring``."""
    if text.strip() == "0":
        return MonomialIdeal.zero(ring)
    return MonomialIdeal(ring, _parse(text, ring))


def _parse(text: str, ring: Ring) -> list[Monomial]:
    index = {name: k for k, name in enumerate(ring.var_names)}
    tokens = _tokenize(text)
    pos = 0
    gens = []

    def peek():
        return tokens[pos]

    while True:
        exps = [0] * ring.dim
        expect_term = True
        while expect_term:
            kind, value, at = peek()
            if kind == "int" and value == "1":
                pos += 1
            elif kind == "name":
                if value not in index:
                    raise ParseError(f"unknown variable {value!r}", at)
                pos += 1
                e = 1
                if peek()[0] == "op" and peek()[1] == "^":
                    pos += 1
                    kind2, value2, at2 = peek()
                    if kind2 != "int":
                        raise ParseError("malformed exponent", at2)
                    e = int(value2)
                    pos += 1
                exps[index[value]] += e
            elif kind == "end" or (kind == "op" and value == ","):
                raise ParseError("empty generator", at)
            else:
                raise ParseError(f"unexpected token {value!r}", at)
            if peek()[0] == "op" and peek()[1] == "*":
                pos += 1
            else:
                expect_term = False
        if max(exps, default=0) >= EXPONENT_LIMIT:
            raise ExponentOverflow(f"exponent exceeds {EXPONENT_LIMIT}")
        gens.append(tuple(exps))
        kind, value, at = peek()
        if kind == "end":
            return gens
        if kind == "op" and value == ",":
            pos += 1
            continue
        raise ParseError(f"unexpected token {value!r}", at)


def format_monomial(m: Sequence[int], ring: Ring) -> str:
    parts = []
    for name, e in zip(ring.var_names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def format_ideal(ideal: MonomialIdeal) -> str:
    if ideal.is_zero:
        return "0"
    return ", ".join(format_monomial(g, ideal.ring) for g in ideal.gens)
