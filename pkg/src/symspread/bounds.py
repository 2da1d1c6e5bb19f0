"""Inequalities on symbolic analytic spread and depth, checked per instance.

Every check returns a :class:`Verdict`. Proved statements can come out as
``holds``, ``violated`` or ``inconclusive``; a ``violated`` verdict needs exact
inputs (certified spreads, exact depths, hypotheses that are not merely
observed on a finite window). Open questions never produce ``violated``:
counterexample candidates are ``finding`` verdicts instead.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from symspread.decomposition import (
    PrimeSupport,
    bght,
    dim_quotient,
    height,
    minimal_primary_components,
)
from symspread.errors import CapExceeded, ExponentOverflow
from symspread.growth import (
    DEFAULT_C_MAX,
    DEFAULT_N,
    DEFAULT_N_CHECK,
    SpreadResult,
    analytic_spread,
    symbolic_spread,
)
from symspread.monomial import MonomialIdeal, format_ideal, members_mask, power
from symspread.resolution import check_field, depth_quotient
from symspread.symbolic import symbolic_power

HOLDS, VIOLATED, INCONCLUSIVE, FINDING = "holds", "violated", "inconclusive", "finding"
THEOREM, OPEN = "theorem", "open-question"
PHI_CAP = 10**6

BOUND_NAMES = ("thm41", "prop23", "cor43", "thm35", "cor311", "q53", "conj51", "q52")


@dataclass(frozen=True)
class Verdict:
    status: str
    kind: str = THEOREM
    reason: str = ""
    lhs: int | None = None
    rhs: int | None = None
    equality: bool | None = None
    windowed: bool = False

    def __post_init__(self):
        if self.status not in (HOLDS, VIOLATED, INCONCLUSIVE, FINDING):
            raise ValueError(f"bad verdict status {self.status!r}")
        if self.kind == OPEN and self.status == VIOLATED:
            raise ValueError("open questions report findings, not violations")

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "kind": self.kind,
            "reason": self.reason,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "equality": self.equality,
            "windowed": self.windowed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Verdict":
        return cls(**data)


def _compare(lhs: int, rhs: int, *, exact: bool, kind: str = THEOREM, windowed: bool = False,
             reason: str = "") -> Verdict:
    ok = lhs <= rhs
    if ok:
        return Verdict(HOLDS, kind, reason, lhs, rhs, lhs == rhs, windowed)
    if not exact:
        return Verdict(INCONCLUSIVE, kind, reason or "inputs not exact", lhs, rhs, False, windowed)
    return Verdict(FINDING if kind == OPEN else VIOLATED, kind, reason, lhs, rhs, False, windowed)


@dataclass(frozen=True)
class BoundParams:
    N: int = DEFAULT_N
    c_max: int = DEFAULT_C_MAX
    n_check: int = DEFAULT_N_CHECK
    n_max: int = 3
    field_char: int = 0

    def __post_init__(self):
        check_field(self.field_char)
        if self.n_max < 1:
            raise ValueError("n_max must be positive")

    def to_dict(self) -> dict:
        return {"N": self.N, "c_max": self.c_max, "n_check": self.n_check,
                "n_max": self.n_max, "field_char": self.field_char}


class Evidence:
    """Lazily computed invariants shared by the checks on one ideal.

    Any of ``ell``, ``sell`` or ``depths`` may be injected, which is how
    tests feed heuristic inputs into the verdict logic.
    """

    def __init__(self, ideal: MonomialIdeal, params: BoundParams | None = None, *,
                 ell: SpreadResult | None = None, sell: SpreadResult | None = None,
                 depths: dict[int, int] | None = None):
        if ideal.is_zero or ideal.is_unit:
            raise ValueError("expected a proper nonzero ideal")
        self.ideal = ideal
        self.params = params or BoundParams()
        self._ell, self._sell = ell, sell
        self._depths = dict(depths) if depths is not None else None

    @property
    def d(self) -> int:
        return self.ideal.dim

    @property
    def bght(self) -> int:
        return bght(self.ideal)

    @property
    def height(self) -> int:
        return height(self.ideal)

    @property
    def dim_quotient(self) -> int:
        return dim_quotient(self.ideal)

    @property
    def ell(self) -> SpreadResult:
        if self._ell is None:
            self._ell = analytic_spread(self.ideal, self.params.N)
        return self._ell

    @property
    def sell(self) -> SpreadResult:
        if self._sell is None:
            p = self.params
            self._sell = symbolic_spread(self.ideal, p.c_max, p.n_check, p.N)
        return self._sell

    @property
    def depths(self) -> dict[int, int]:
        if self._depths is None:
            self._depths = {
                n: depth_quotient(symbolic_power(self.ideal, n), self.params.field_char)
                for n in range(1, self.params.n_max + 1)
            }
        return self._depths


def _evidence(ideal, params, evidence) -> Evidence:
    return evidence if evidence is not None else Evidence(ideal, params)


def _sell_value(ev: Evidence) -> tuple[int | None, bool]:
    s = ev.sell
    return s.value, s.is_exact and s.method == "veronese-exact"


def _unknown(kind: str, reason: str) -> Verdict:
    return Verdict(INCONCLUSIVE, kind, reason)


# --------------------------------------------------------------------------
# proved statements


def thm41_bound(ideal: MonomialIdeal) -> int:
    """d - floor((d - 1) / bght I)."""
    if ideal.is_zero or ideal.is_unit:
        raise ValueError("expected a proper nonzero ideal")
    return ideal.dim - (ideal.dim - 1) // bght(ideal)


def ara_upper_bound(ideal: MonomialIdeal) -> int:
    """Bound on the arithmetic rank of a monomial ideal; same expression."""
    return thm41_bound(ideal)


def check_thm41(ideal: MonomialIdeal, params: BoundParams | None = None, evidence: Evidence | None = None) -> Verdict:
    ev = _evidence(ideal, params, evidence)
    value, exact = _sell_value(ev)
    if value is None:
        return _unknown(THEOREM, "symbolic spread unstable")
    return _compare(value, thm41_bound(ev.ideal), exact=exact,
                    reason="" if exact else "symbolic spread heuristic")


def check_prop23(ideal: MonomialIdeal, params: BoundParams | None = None, evidence: Evidence | None = None) -> Verdict:
    ev = _evidence(ideal, params, evidence)
    value, exact = _sell_value(ev)
    if value is None:
        return _unknown(THEOREM, "symbolic spread unstable")
    rhs = max(ev.d - ev.dim_quotient, ev.d - 1)
    return _compare(value, rhs, exact=exact, reason="" if exact else "symbolic spread heuristic")


def check_cor43(ideal: MonomialIdeal, params: BoundParams | None = None, evidence: Evidence | None = None) -> Verdict:
    """depth R/I^(n) ≥ floor((d-1)/bght) for n ≤ n_max (squarefree I)."""
    ev = _evidence(ideal, params, evidence)
    if not ev.ideal.is_squarefree:
        return _unknown(THEOREM, "integral closedness of symbolic powers not decided")
    need = (ev.d - 1) // ev.bght
    worst = min(ev.depths.values())
    if worst >= need:
        return Verdict(HOLDS, THEOREM, "", need, worst, worst == need)
    return Verdict(VIOLATED, THEOREM, f"depth {worst} below {need}", need, worst, False)


def check_thm35(ideal: MonomialIdeal, params: BoundParams | None = None, evidence: Evidence | None = None) -> Verdict:
    """sℓ ≤ ℓ + 1 under depth R/I^(n) ≥ dim R/I - 2 for large n."""
    ev = _evidence(ideal, params, evidence)
    dq = ev.dim_quotient
    automatic = dq <= 3
    if not automatic and not all(v >= dq - 2 for v in ev.depths.values()):
        return _unknown(THEOREM, "hypothesis-fails on the window")
    sell, exact_s = _sell_value(ev)
    ell = ev.ell
    if sell is None or ell.value is None:
        return _unknown(THEOREM, "spread unstable")
    exact = exact_s and ell.is_exact and automatic
    reason = "" if automatic else "hypothesis observed on window only"
    return _compare(sell, ell.value + 1, exact=exact, windowed=not automatic, reason=reason)


def check_cor311(ideal: MonomialIdeal, params: BoundParams | None = None, evidence: Evidence | None = None) -> Verdict:
    """sℓ ≤ d - r when R/I^(n) is Cohen–Macaulay, r = dim R/I."""
    ev = _evidence(ideal, params, evidence)
    dq = ev.dim_quotient
    if not all(v == dq for v in ev.depths.values()):
        return _unknown(THEOREM, "hypothesis-fails: not Cohen-Macaulay on the window")
    sell, exact = _sell_value(ev)
    if sell is None:
        return _unknown(THEOREM, "symbolic spread unstable")
    # the Cohen-Macaulay hypothesis is only seen on a window
    return _compare(sell, ev.d - dq, exact=False, windowed=True,
                    reason="" if exact else "symbolic spread heuristic")


def check_cor37(ideal: MonomialIdeal, j: MonomialIdeal, params: BoundParams | None = None,
                evidence: Evidence | None = None) -> Verdict:
    """Spread of {(I^n : J^∞)} ≤ ℓ + 1 when dim R/J ≤ 2; growth-fit only."""
    from symspread.growth import _spread_from_series, mu_sequence
    from symspread.symbolic import PowerFlavor

    ev = _evidence(ideal, params, evidence)
    if dim_quotient(j) > 2:
        return _unknown(THEOREM, "hypothesis-fails: dim R/J > 2")
    spread = _spread_from_series(mu_sequence(ev.ideal, PowerFlavor("wrt-J", j), ev.params.N))
    ell = ev.ell
    if spread.value is None or ell.value is None:
        return _unknown(THEOREM, "spread unstable")
    return _compare(spread.value, ell.value + 1, exact=False, reason="growth-fit spread")


# --------------------------------------------------------------------------
# open questions


def check_q53(ideal: MonomialIdeal, params: BoundParams | None = None, evidence: Evidence | None = None) -> Verdict:
    """sℓ + liminf depth R/I^(n) ≤ d, with the liminf read off the window."""
    ev = _evidence(ideal, params, evidence)
    sell, exact = _sell_value(ev)
    if sell is None:
        return _unknown(OPEN, "symbolic spread unstable")
    total = sell + min(ev.depths.values())
    if total <= ev.d:
        return Verdict(HOLDS, OPEN, "", total, ev.d, total == ev.d, True)
    if ev.ideal.is_squarefree or not exact:
        # known for squarefree ideals; the window minimum may overshoot the liminf
        return Verdict(INCONCLUSIVE, OPEN, "window depth may exceed the liminf", total, ev.d, False, True)
    return Verdict(FINDING, OPEN, "sum exceeds d on the window", total, ev.d, False, True)


def check_conj51(ideal: MonomialIdeal, params: BoundParams | None = None, evidence: Evidence | None = None) -> Verdict:
    """Arithmetic rank bounded by sℓ: only the proxy sℓ ≤ d is checkable."""
    ev = _evidence(ideal, params, evidence)
    sell, exact = _sell_value(ev)
    if sell is None:
        return _unknown(OPEN, "symbolic spread unstable")
    return _compare(sell, ev.d, exact=exact, kind=OPEN)


def check_q52(ideal: MonomialIdeal, params: BoundParams | None = None, evidence: Evidence | None = None) -> Verdict:
    ev = _evidence(ideal, params, evidence)
    sell, exact = _sell_value(ev)
    ell = ev.ell
    if sell is None or ell.value is None:
        return _unknown(OPEN, "spread unstable")
    return _compare(sell, ell.value, exact=exact and ell.is_exact, kind=OPEN)


CHECKS = {
    "thm41": check_thm41,
    "prop23": check_prop23,
    "cor43": check_cor43,
    "thm35": check_thm35,
    "cor311": check_cor311,
    "q53": check_q53,
    "conj51": check_conj51,
    "q52": check_q52,
}


# --------------------------------------------------------------------------
# S_φ covers


@dataclass(frozen=True)
class PhiFunction:
    """φ : {0..d-1} → component indices, with i in the support of p_φ(i)."""

    values: tuple[int, ...]
    primes: tuple[PrimeSupport, ...]

    def __post_init__(self):
        for i, j in enumerate(self.values):
            if i not in self.primes[j].support:
                raise ValueError(f"variable {i} not in the support of component {j}")

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.values)

    def fibre(self, j: int) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.values) if v == j)


@dataclass
class CoverReport:
    n: int
    components: int
    d: int
    generators: int
    covered: int
    uncovered: list[tuple[int, ...]]
    status: str  # holds | violated | inconclusive
    reason: str = ""
    phi_enumerated: int = 0
    phi_sizes: dict[tuple[int, ...], int] = field(default_factory=dict)
    image_bound_ok: bool = True
    factorization_ok: bool = True
    factor_claim_failures: int = 0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "components": self.components,
            "d": self.d,
            "generators": self.generators,
            "covered": self.covered,
            "uncovered": [list(a) for a in self.uncovered],
            "status": self.status,
            "reason": self.reason,
            "phi_enumerated": self.phi_enumerated,
            "phi_sizes": [{"phi": [v + 1 for v in k], "size": s} for k, s in sorted(self.phi_sizes.items())],
            "image_bound_ok": self.image_bound_ok,
            "factorization_ok": self.factorization_ok,
            "factor_claim_failures": self.factor_claim_failures,
        }


def _project(arr: np.ndarray, keep: tuple[int, ...]) -> np.ndarray:
    out = np.zeros_like(arr)
    out[..., list(keep)] = arr[..., list(keep)]
    return out


def _admissible(gens: np.ndarray, primes, comp_powers) -> np.ndarray:
    """adm[a, i, j]: x^a / x_i is outside Q_j^n localized at p_j, with i ∈ p_j."""
    A, d = gens.shape
    adm = np.zeros((A, d, len(primes)), dtype=bool)
    for j, (p, qn) in enumerate(zip(primes, comp_powers)):
        for i in p.support:
            shifted = gens.copy()
            shifted[:, i] -= 1
            negative = shifted[:, i] < 0
            local = _project(np.maximum(shifted, 0), p.support)
            adm[:, i, j] = negative | ~members_mask(local, qn)
    return adm


def s_phi_cover(ideal: MonomialIdeal, n: int, cap: int = PHI_CAP) -> CoverReport:
    """Covers of the minimal generators of I^(n) by the sets S_φ(n)."""
    if n < 1:
        raise ValueError("n must be positive")
    comps = minimal_primary_components(ideal)
    primes = tuple(p for p, _ in comps)
    d, c = ideal.dim, len(primes)
    gens = symbolic_power(ideal, n).array
    if set().union(*(p.support for p in primes)) != set(range(d)):
        return CoverReport(n, c, d, gens.shape[0], 0, [], INCONCLUSIVE,
                           "minimal primes do not cover every variable")
    comp_powers = [power(q, n) for _, q in comps]
    adm = _admissible(gens, primes, comp_powers)
    has_choice = adm.any(axis=2).all(axis=1)
    uncovered = [tuple(int(v) for v in gens[k]) for k in np.flatnonzero(~has_choice)]
    covered = int(has_choice.sum())
    report = CoverReport(n, c, d, gens.shape[0], covered, uncovered,
                         HOLDS if not uncovered else VIOLATED)

    choices = [[j for j, p in enumerate(primes) if i in p.support] for i in range(d)]
    total = math.prod(len(ch) for ch in choices)
    if total > cap:
        report.reason = f"{total} support-respecting φ exceed the cap; sizes not enumerated"
        if report.status == HOLDS:
            report.status = INCONCLUSIVE
        return report
    b = bght(ideal)
    idx = np.arange(d)
    for values in itertools.product(*choices):
        report.phi_enumerated += 1
        members = adm[:, idx, list(values)].all(axis=1)
        size = int(members.sum())
        if not size:
            continue
        phi = PhiFunction(tuple(values), primes)
        report.phi_sizes[phi.values] = size
        if len(phi.image) * b < d:
            report.image_bound_ok = False
        for a in gens[members]:
            report.factor_claim_failures += _factor_failures(a, phi, comp_powers, report)
    if not report.image_bound_ok or not report.factorization_ok:
        report.status = VIOLATED
    return report


def _factor_failures(a: np.ndarray, phi: PhiFunction, comp_powers, report: CoverReport) -> int:
    """Check x^a = ∏_j π_{F_j}(x^a) and count factors that are not minimal
    generators of π_{F_j}(Q_j)^n (π_F sets the variables in F to 1)."""
    product = np.zeros_like(a)
    failures = 0
    for j in sorted(phi.image):
        keep = phi.fibre(j)
        factor = _project(a, keep)
        product += factor
        target = _project(comp_powers[j].array, keep)
        minimal = MonomialIdeal(comp_powers[j].ring, target)
        if tuple(int(v) for v in factor) not in set(minimal.gens):
            failures += 1
    if not np.array_equal(product, a):
        report.factorization_ok = False
    return failures


# --------------------------------------------------------------------------
# reports


@dataclass
class BoundsReport:
    ideal: str
    d: int
    field_char: int
    bght: int | None = None
    height: int | None = None
    dim_quotient: int | None = None
    ell: SpreadResult | None = None
    sell: SpreadResult | None = None
    depths: dict[int, int] = field(default_factory=dict)
    verdicts: dict[str, Verdict] = field(default_factory=dict)
    thm41_bound: int | None = None
    ara_bound: int | None = None
    mu_symbolic: list[int] = field(default_factory=list)
    error: str | None = None

    @property
    def violated(self) -> bool:
        return any(v.status == VIOLATED for v in self.verdicts.values())

    @property
    def findings(self) -> bool:
        return any(v.status == FINDING for v in self.verdicts.values())

    def to_dict(self) -> dict:
        return {
            "ideal": self.ideal,
            "d": self.d,
            "field_char": self.field_char,
            "bght": self.bght,
            "height": self.height,
            "dim_quotient": self.dim_quotient,
            "ell": self.ell.to_dict() if self.ell else None,
            "sell": self.sell.to_dict() if self.sell else None,
            "depths": {str(n): v for n, v in sorted(self.depths.items())},
            "verdicts": {k: v.to_dict() for k, v in self.verdicts.items()},
            "thm41_bound": self.thm41_bound,
            "ara_bound": self.ara_bound,
            "mu_symbolic": list(self.mu_symbolic),
            "error": self.error,
        }


def build_report(ideal: MonomialIdeal, params: BoundParams | None = None,
                 checks=BOUND_NAMES, evidence: Evidence | None = None) -> BoundsReport:
    """All verdicts for one ideal. Caps and overflows end up in ``error``."""
    params = params or BoundParams()
    report = BoundsReport(format_ideal(ideal), ideal.dim, params.field_char)
    try:
        ev = evidence or Evidence(ideal, params)
        report.bght, report.height, report.dim_quotient = ev.bght, ev.height, ev.dim_quotient
        report.thm41_bound = report.ara_bound = thm41_bound(ideal)
        for name in checks:
            report.verdicts[name] = CHECKS[name](ideal, params, ev)
        report.ell, report.sell = ev.ell, ev.sell
        report.depths = dict(ev.depths)
        series = ev.sell.series
        if ev.sell.method != "veronese-exact" and series is not None:
            report.mu_symbolic = list(series.values)
        else:
            report.mu_symbolic = [symbolic_power(ideal, n).mu for n in range(1, params.N + 1)]
    except (CapExceeded, ExponentOverflow) as exc:
        report.error = f"{type(exc).__name__}: {exc}"
        for name in checks:
            report.verdicts.setdefault(name, Verdict(INCONCLUSIVE, OPEN if name in ("q53", "conj51", "q52") else THEOREM, "cap exceeded"))
    return report
