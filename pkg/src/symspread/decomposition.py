"""Minimal primes, irreducible and primary decompositions, big height."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from symspread.monomial import (
    MonomialIdeal,
    Ring,
    format_ideal,
    intersect_all,
    power,
    radical,
)


@dataclass(frozen=True, order=True)
class PrimeSupport:
    """A monomial prime, given by the (0-based) indices of its variables."""

    support: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(sorted(set(self.support))))

    @property
    def height(self) -> int:
        return len(self.support)

    def ideal(self, ring: Ring) -> MonomialIdeal:
        return MonomialIdeal.prime(ring, self.support)

    def complement(self, d: int) -> tuple[int, ...]:
        return tuple(i for i in range(d) if i not in self.support)

    def names(self, ring: Ring) -> list[str]:
        return [ring.var_names[i] for i in self.support]

    def sort_key(self):
        return (self.height, self.support)


def _sorted_primes(primes) -> tuple[PrimeSupport, ...]:
    return tuple(sorted(set(primes), key=PrimeSupport.sort_key))


@dataclass(frozen=True)
class IrreducibleComponent:
    """The ideal (x_i^{e_i} : i in keys), stored as sorted (index, exponent) pairs."""

    pure_powers: tuple[tuple[int, int], ...]

    @property
    def radical(self) -> PrimeSupport:
        return PrimeSupport(tuple(i for i, _ in self.pure_powers))

    def ideal(self, ring: Ring) -> MonomialIdeal:
        gens = []
        for i, e in self.pure_powers:
            g = [0] * ring.dim
            g[i] = e
            gens.append(tuple(g))
        return MonomialIdeal(ring, gens)

    def __contains__(self, m) -> bool:
        return any(m[i] >= e for i, e in self.pure_powers)


@dataclass(frozen=True)
class PrimaryDecomposition:
    ring: Ring
    components: tuple[tuple[PrimeSupport, MonomialIdeal], ...]

    def to_json(self) -> list[dict]:
        return [
            {"radical": p.names(self.ring), "generators": format_ideal(q).split(", ")}
            for p, q in self.components
        ]


def _require_proper_nonzero(ideal: MonomialIdeal) -> None:
    if ideal.is_zero or ideal.is_unit:
        raise ValueError("expected a proper nonzero ideal")


# --------------------------------------------------------------------------
# minimal primes


def minimal_vertex_covers(edges: list[frozenset[int]]) -> list[frozenset[int]]:
    """All minimal sets meeting every edge, by branch and bound."""
    edges = sorted(set(edges), key=lambda e: (len(e), sorted(e)))
    found: list[frozenset[int]] = []

    def branch(chosen: frozenset[int]):
        if any(c <= chosen for c in found):
            return
        for e in edges:
            if not (e & chosen):
                for v in sorted(e):
                    branch(chosen | {v})
                return
        found[:] = [c for c in found if not chosen <= c]
        found.append(chosen)

    branch(frozenset())
    return found


@lru_cache(maxsize=4096)
def minimal_primes(ideal: MonomialIdeal) -> tuple[PrimeSupport, ...]:
    _require_proper_nonzero(ideal)
    rad = radical(ideal)
    edges = [frozenset(int(i) for i in np.flatnonzero(row)) for row in rad.array]
    return _sorted_primes(PrimeSupport(tuple(c)) for c in minimal_vertex_covers(edges))


def bght(ideal: MonomialIdeal) -> int:
    return max(p.height for p in minimal_primes(ideal))


def height(ideal: MonomialIdeal) -> int:
    return min(p.height for p in minimal_primes(ideal))


def dim_quotient(ideal: MonomialIdeal) -> int:
    """Krull dimension of R/I."""
    if ideal.is_unit:
        raise ValueError("R/I is the zero ring for the unit ideal")
    if ideal.is_zero:
        return ideal.dim
    return ideal.dim - height(ideal)


# --------------------------------------------------------------------------
# irreducible decomposition


def _split(gens: frozenset, d: int, memo: dict) -> frozenset:
    hit = memo.get(gens)
    if hit is not None:
        return hit
    ordered = sorted(gens, key=lambda g: (sum(g), tuple(-e for e in g)))
    target = next((g for g in ordered if sum(1 for e in g if e) >= 2), None)
    if target is None:
        comp = tuple(sorted((i, e) for g in ordered for i, e in enumerate(g) if e))
        result = frozenset([comp])
    else:
        i = next(k for k, e in enumerate(target) if e)
        u = tuple(target[i] if k == i else 0 for k in range(d))
        v = tuple(0 if k == i else target[k] for k in range(d))
        result = _split(_add_generator(gens, u), d, memo) | _split(_add_generator(gens, v), d, memo)
    memo[gens] = result
    return result


def _add_generator(gens: frozenset, m: tuple) -> frozenset:
    return frozenset([g for g in gens if not all(a <= b for a, b in zip(m, g))] + [m])


def _irredundant(components: list[IrreducibleComponent], d: int) -> list[IrreducibleComponent]:
    """Drop components implied by the others.

    ``C`` is needed iff its corner (exponent e_i - 1 on its variables and a
    large value elsewhere) lies in every other component.
    """
    big = 1 + max((e for c in components for _, e in c.pure_powers), default=0)
    kept = list(components)
    changed = True
    while changed:
        changed = False
        for c in list(kept):
            corner = [big] * d
            for i, e in c.pure_powers:
                corner[i] = e - 1
            others = [o for o in kept if o is not c]
            if others and not all(corner in o for o in others):
                kept.remove(c)
                changed = True
                break
    return kept


@lru_cache(maxsize=1024)
def irreducible_decomposition(ideal: MonomialIdeal) -> tuple[IrreducibleComponent, ...]:
    """Irredundant irreducible components, each generated by pure powers.

    Splits ``(J, u*v) = (J, u) ∩ (J, v)`` on the first generator (in
    canonical order) with two or more variables, separating its lowest-index
    variable. The intersection of the result is re-checked against the input.
    """
    _require_proper_nonzero(ideal)
    leaves = _split(frozenset(ideal.gens), ideal.dim, {})
    comps = [IrreducibleComponent(leaf) for leaf in leaves]
    comps = sorted(_irredundant(comps, ideal.dim), key=_component_key)
    check = intersect_all([c.ideal(ideal.ring) for c in comps])
    if check != ideal:
        raise AssertionError(f"irreducible decomposition of {ideal} does not intersect back")
    return tuple(comps)


def _component_key(c: IrreducibleComponent):
    return (c.radical.sort_key(), c.pure_powers)


def primary_decomposition(ideal: MonomialIdeal) -> PrimaryDecomposition:
    """Group irreducible components by radical; one primary ideal per prime."""
    groups: dict[PrimeSupport, list[IrreducibleComponent]] = {}
    for comp in irreducible_decomposition(ideal):
        groups.setdefault(comp.radical, []).append(comp)
    components = tuple(
        (p, intersect_all([c.ideal(ideal.ring) for c in groups[p]]))
        for p in _sorted_primes(groups)
    )
    return PrimaryDecomposition(ideal.ring, components)


def minimal_primary_components(ideal: MonomialIdeal) -> tuple[tuple[PrimeSupport, MonomialIdeal], ...]:
    mins = set(minimal_primes(ideal))
    return tuple((p, q) for p, q in primary_decomposition(ideal).components if p in mins)


def associated_primes(ideal: MonomialIdeal) -> tuple[PrimeSupport, ...]:
    return _sorted_primes(c.radical for c in irreducible_decomposition(ideal))


@dataclass(frozen=True)
class AssInfinity:
    primes: tuple[PrimeSupport, ...]
    stable: bool
    n_stab: int
    history: tuple[tuple[PrimeSupport, ...], ...]


def ass_infinity(ideal: MonomialIdeal, n_stab: int) -> AssInfinity:
    """``Ass(I^{n_stab})`` plus a flag: was ``Ass(I^n)`` constant over the
    last ``ceil(n_stab/2)`` exponents? ``stable=False`` only means the window
    was too short to tell."""
    if n_stab < 1:
        raise ValueError("n_stab must be positive")
    _require_proper_nonzero(ideal)
    history = tuple(associated_primes(power(ideal, n)) for n in range(1, n_stab + 1))
    tail = history[-math.ceil(n_stab / 2):]
    return AssInfinity(history[-1], all(h == tail[0] for h in tail), n_stab, history)
