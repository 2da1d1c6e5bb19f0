"""Ordinary, J-symbolic and saturated powers of monomial ideals.

For a monomial prime p, localizing at p and contracting back is the same as
saturating by the product of the variables outside p, so

    I^(n) = ⋂_{p ∈ Min(I)} (I^n : u_p^∞),   u_p = ∏_{i ∉ supp p} x_i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from symspread.decomposition import PrimeSupport, minimal_primary_components, minimal_primes
from symspread._kernels import extend_tight, unique_rows
from symspread.errors import ConfigurationError
from symspread.monomial import (
    MonomialIdeal,
    _check_candidates,
    _grlex_order,
    intersect,
    minimal_rows,
    power,
    saturate,
    saturate_monomial,
    variables_product,
)

FLAVORS = ("ordinary", "symbolic", "saturated", "wrt-J")


@dataclass(frozen=True)
class PowerFlavor:
    kind: str = "symbolic"
    J: MonomialIdeal | None = None

    def __post_init__(self):
        if self.kind not in FLAVORS:
            raise ConfigurationError(f"unknown flavor {self.kind!r}; expected one of {FLAVORS}")
        if self.kind == "wrt-J":
            if self.J is None:
                raise ConfigurationError("flavor wrt-J needs an ideal J")
            _check_saturator(self.J)
        elif self.J is not None:
            raise ConfigurationError(f"flavor {self.kind} takes no J")

    def label(self) -> str:
        return self.kind if self.J is None else f"wrt-J({self.J})"


ORDINARY = PowerFlavor("ordinary")
SYMBOLIC = PowerFlavor("symbolic")
SATURATED = PowerFlavor("saturated")


def _check_saturator(j: MonomialIdeal) -> None:
    if j.is_zero or j.is_unit:
        raise ConfigurationError("J must be a proper nonzero ideal")


def _require(ideal: MonomialIdeal) -> None:
    if ideal.is_zero or ideal.is_unit:
        raise ValueError("expected a proper nonzero ideal")


@lru_cache(maxsize=256)
def _prime_power_rows(d: int, support: tuple[int, ...], n: int) -> np.ndarray:
    """Exponent vectors of all degree-n monomials in the given variables."""
    rows = []
    for combo in itertools.combinations_with_replacement(support, n):
        row = [0] * d
        for i in combo:
            row[i] += 1
        rows.append(row)
    arr = np.array(rows, dtype=np.int64).reshape(-1, d)
    arr.setflags(write=False)
    return arr


def _extend_into_prime_power(arr: np.ndarray, support: tuple[int, ...], n: int) -> np.ndarray:
    """Rows of ``arr`` generate J; return a generating set (not necessarily
    minimal) of J ∩ p^n with p = (x_i : i ∈ support).

    A generator a outside p^n only needs its deficit n - Σ_{i∈p} a_i made up
    by a monomial in the variables of p, so J ∩ p^n = Σ_a a·p^{deficit(a)}.
    """
    d = arr.shape[1]
    deficit = n - arr[:, list(support)].sum(axis=1)
    parts = [arr[deficit <= 0]]
    for delta in np.unique(deficit[deficit > 0]):
        block = arr[deficit == delta]
        fill = _prime_power_rows(d, support, int(delta))
        _check_candidates(block.shape[0] * fill.shape[0])
        parts.append((block[:, None, :] + fill[None, :, :]).reshape(-1, d))
    return unique_rows(np.concatenate(parts))


def _prime_powers_intersection(d: int, primes: list[PrimeSupport], n: int) -> np.ndarray:
    """Minimal generators of ⋂_j p_j^n, folding in one prime at a time.

    a is minimal iff every variable it uses lies in some p_j with
    Σ_{i∈p_j} a_i = n exactly, since lowering that variable leaves p_j^n.
    """
    supports = np.zeros((len(primes), d), dtype=np.int64)
    for j, p in enumerate(primes):
        supports[j, list(p.support)] = 1
    arr = _prime_power_rows(d, primes[0].support, n)
    for k in range(1, len(primes)):
        arr = extend_tight(arr, primes[k].support, supports[: k + 1], n)
        _check_candidates(arr.shape[0])
    return arr[_grlex_order(arr)]


def _localized_component(ideal: MonomialIdeal, prime: PrimeSupport) -> MonomialIdeal:
    """``I R_p ∩ R``, the p-primary component of I for a minimal prime p."""
    u = variables_product(ideal.ring, prime.complement(ideal.dim))
    return saturate_monomial(ideal, u)


@lru_cache(maxsize=2048)
def symbolic_power(ideal: MonomialIdeal, n: int, method: str = "localized") -> MonomialIdeal:
    """The n-th symbolic power ``⋂_{p ∈ Min(I)} (I^n R_p ∩ R)``.

    ``method="direct"`` saturates ``I^n`` by each out-of-support product
    exactly as written. The default ``"localized"`` saturates ``I`` first
    (giving the p-primary component Q_p, whose powers stay p-primary) and
    intersects the ``Q_p^n``; when Q_p is the prime itself the intersection
    never materialises ``p^n`` in full.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return MonomialIdeal.unit_ideal(ideal.ring)
    _require(ideal)
    primes = minimal_primes(ideal)
    ring = ideal.ring
    if method == "direct":
        big = power(ideal, n)
        parts = [
            saturate_monomial(big, variables_product(ring, p.complement(ideal.dim)))
            for p in primes
        ]
        result = parts[0]
        for part in parts[1:]:
            result = intersect(result, part)
        return result
    if method != "localized":
        raise ValueError(f"unknown method {method!r}")

    prime_parts, other_parts = [], []
    for p in primes:
        q = _localized_component(ideal, p)
        if q == p.ideal(ring):
            prime_parts.append(p)
        else:
            u = variables_product(ring, p.complement(ideal.dim))
            other_parts.append(saturate_monomial(power(q, n), u))
    if not other_parts:
        return MonomialIdeal(ring, _prime_powers_intersection(ideal.dim, prime_parts, n), _canonical=True)
    result = other_parts[0]
    for part in other_parts[1:]:
        result = intersect(result, part)
    arr = result.array
    for p in prime_parts:
        arr = minimal_rows(_extend_into_prime_power(arr, p.support, n))
    return MonomialIdeal(ring, arr, _canonical=True)


def symbolic_power_from_components(ideal: MonomialIdeal, n: int) -> MonomialIdeal:
    """Same ideal as :func:`symbolic_power`, via the minimal primary components
    of an irreducible decomposition: ``⋂_j (Q_j^n : u_j^∞)``."""
    if n == 0:
        return MonomialIdeal.unit_ideal(ideal.ring)
    _require(ideal)
    parts = []
    for p, q in minimal_primary_components(ideal):
        u = variables_product(ideal.ring, p.complement(ideal.dim))
        parts.append(saturate(power(q, n), MonomialIdeal(ideal.ring, [u])))
    result = parts[0]
    for part in parts[1:]:
        result = intersect(result, part)
    return result


@lru_cache(maxsize=1024)
def symbolic_power_wrt(ideal: MonomialIdeal, n: int, j: MonomialIdeal) -> MonomialIdeal:
    """``(I^n : J^∞)``."""
    _check_saturator(j)
    if n == 0:
        return MonomialIdeal.unit_ideal(ideal.ring)
    _require(ideal)
    return saturate(power(ideal, n), j)


def saturated_power(ideal: MonomialIdeal, n: int) -> MonomialIdeal:
    """``(I^n)^sat = (I^n : m^∞)``."""
    return symbolic_power_wrt(ideal, n, MonomialIdeal.maximal(ideal.ring))


def system(ideal: MonomialIdeal, flavor: PowerFlavor, n: int) -> MonomialIdeal:
    """n-th member of the chosen system of ideals."""
    if flavor.kind == "ordinary":
        return power(ideal, n)
    if flavor.kind == "symbolic":
        return symbolic_power(ideal, n)
    if flavor.kind == "saturated":
        return saturated_power(ideal, n)
    if flavor.J is None:
        raise ConfigurationError("flavor wrt-J needs an ideal J")
    return symbolic_power_wrt(ideal, n, flavor.J)
