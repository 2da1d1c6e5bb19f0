"""Generator-count growth of systems of ideals and the spreads derived from it.

The analytic spread of a system {I_n} is one plus the degree of the
(quasi-)polynomial that eventually agrees with n ↦ μ(I_n). Degrees are read
off from iterated finite differences on the tail of the sequence; when the
symbolic Rees algebra is standard graded in some Veronese degree c, the
symbolic spread is instead obtained as the ordinary spread of I^(c).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from symspread import _kernels
from symspread.errors import CapExceeded
from symspread.monomial import MonomialIdeal, power, powers
from symspread.symbolic import ORDINARY, SYMBOLIC, PowerFlavor, saturated_power, symbolic_power, system

DEFAULT_N = 8
DEFAULT_C_MAX = 6
DEFAULT_N_CHECK = 3
MAX_PERIOD = 4
EXACT_CONFIRMATIONS = 3
DEFECT_BOX_CAP = 20_000_000


def mu(ideal: MonomialIdeal) -> int:
    return ideal.mu


@dataclass(frozen=True)
class GrowthFit:
    degree: int | None
    period: int | None
    window: tuple[int, int] | None  # 1-based (first n, last n) used by the fit
    confirmations: int = 0

    @property
    def stable(self) -> bool:
        return self.degree is not None


def _classes_constant(window: list[int], period: int, k: int, min_len: int) -> int | None:
    """Minimum per-class confirmation count when every residue class of the
    window has constant k-th differences, else None."""
    worst = None
    for r in range(period):
        cls = np.asarray(window[r::period], dtype=object)
        if len(cls) < min_len:
            return None
        diffs = cls
        for _ in range(k):
            diffs = diffs[1:] - diffs[:-1]
        if any(v != diffs[0] for v in diffs[1:]):
            return None
        extra = len(cls) - (k + 1)
        worst = extra if worst is None else min(worst, extra)
    return worst


def estimate_growth_degree(
    values, max_period: int = MAX_PERIOD, min_confirm: int = 1
) -> GrowthFit:
    """Smallest (degree, period) whose per-class k-th differences are constant
    on the trailing window.

    Degrees are tried in increasing order and periods ``1..max_period`` within
    each degree. The window is the trailing ``ceil(N/2)`` terms, widened when
    a class would otherwise hold fewer than ``k + 1 + min_confirm`` values.
    Once a fit is found the window is stretched backwards as far as the fit
    keeps holding, and ``confirmations`` counts the terms beyond the ``k + 1``
    per class needed to pin the fit down.
    """
    values = [int(v) for v in values]
    n = len(values)
    if n < 3:
        raise ValueError("need at least three terms")
    base = math.ceil(n / 2)
    for k in range(0, n - 1):
        for p in range(1, max_period + 1):
            need = k + 1 + min_confirm
            w = min(n, max(base, p * need))
            if _classes_constant(values[n - w:], p, k, need) is None:
                continue
            best_w = w
            for wider in range(w + 1, n + 1):
                if _classes_constant(values[n - wider:], p, k, need) is None:
                    break
                best_w = wider
            conf = _classes_constant(values[n - best_w:], p, k, need)
            return GrowthFit(k, p, (n - best_w + 1, n), conf)
    return GrowthFit(None, None, None, 0)


@dataclass(frozen=True)
class GrowthSeries:
    flavor: str
    values: tuple[int, ...]
    fit: GrowthFit

    @property
    def fitted_degree(self) -> int | str:
        return self.fit.degree if self.fit.degree is not None else "unstable"

    @property
    def period(self) -> int | None:
        return self.fit.period

    @property
    def window(self) -> tuple[int, int] | None:
        return self.fit.window

    def to_dict(self) -> dict:
        return {
            "flavor": self.flavor,
            "values": list(self.values),
            "fitted_degree": self.fitted_degree,
            "period": self.period,
            "window": list(self.window) if self.window else None,
            "confirmations": self.fit.confirmations,
        }


def mu_sequence(ideal: MonomialIdeal, flavor: PowerFlavor = SYMBOLIC, N: int = DEFAULT_N) -> GrowthSeries:
    """μ(I_n) for n = 1..N together with its fitted growth degree."""
    if N < 3:
        raise ValueError("N must be at least 3")
    if flavor.kind == "ordinary":
        values = tuple(p.mu for p in powers(ideal, N))
    else:
        values = tuple(system(ideal, flavor, n).mu for n in range(1, N + 1))
    return GrowthSeries(flavor.label(), values, estimate_growth_degree(values))


@dataclass(frozen=True)
class VeroneseCertificate:
    c: int
    n_check: int
    mu_checked: tuple[int, ...]  # μ(I^(cn)) for n = 1..n_check
    forward: bool  # (I^(c))^n ⊆ I^(cn) on the window, by membership
    reverse: bool  # I^(cn) ⊆ (I^(c))^n on the window, by membership

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SpreadResult:
    value: int | None
    method: str  # "veronese-exact" | "growth-fit"
    confidence: str  # "exact" | "heuristic"
    series: GrowthSeries | None = None
    certificate: VeroneseCertificate | None = None
    note: str = ""

    def __post_init__(self):
        if self.method == "veronese-exact" and self.certificate is None:
            raise ValueError("a veronese-exact spread needs a certificate")

    @property
    def is_exact(self) -> bool:
        return self.confidence == "exact" and self.value is not None

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "method": self.method,
            "confidence": self.confidence,
            "series": self.series.to_dict() if self.series else None,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "note": self.note,
        }


def _spread_from_series(series: GrowthSeries, method: str = "growth-fit") -> SpreadResult:
    fit = series.fit
    if fit.degree is None:
        return SpreadResult(None, method, "heuristic", series, note="growth degree unstable on the window")
    exact = fit.confirmations >= EXACT_CONFIRMATIONS
    return SpreadResult(fit.degree + 1, method, "exact" if exact else "heuristic", series)


def analytic_spread(ideal: MonomialIdeal, N: int = DEFAULT_N) -> SpreadResult:
    """ℓ(I) from the growth of μ(I^n)."""
    if ideal.is_zero or ideal.is_unit:
        raise ValueError("expected a proper nonzero ideal")
    return _spread_from_series(mu_sequence(ideal, ORDINARY, N))


def in_power(m, ideal: MonomialIdeal, n: int) -> bool:
    """Is the monomial ``m`` in ``ideal**n``? Searches factorizations."""
    m = np.asarray(m, dtype=np.int64)
    gens = ideal.array
    if n == 0:
        return True
    divs = gens[(gens <= m).all(axis=1)]
    if divs.shape[0] == 0:
        return False
    if n == 1:
        return True
    rests = m - divs
    if n == 2:
        return bool(_kernels.divisible_any(rests, gens).any())
    return any(in_power(r, ideal, n - 1) for r in _kernels.unique_rows(rests))


def _quick_refutation(target: MonomialIdeal, base: MonomialIdeal, n: int, probes: int = 48) -> bool:
    """True when some sampled generator of ``target`` is provably outside base^n."""
    gens = target.gens
    if len(gens) <= probes:
        sample = gens
    else:
        idx = np.unique(np.linspace(0, len(gens) - 1, probes).astype(int))
        sample = [gens[i] for i in idx]
    return any(not in_power(g, base, n) for g in sample)


def veronese_exponent(
    ideal: MonomialIdeal, c_max: int = DEFAULT_C_MAX, n_check: int = DEFAULT_N_CHECK
) -> VeroneseCertificate | None:
    """Smallest c ≤ c_max with (I^(c))^n = I^(cn) for every n ≤ n_check.

    Returns None when no such c exists within the bounds.
    """
    if c_max < 1 or n_check < 2:
        raise ValueError("need c_max >= 1 and n_check >= 2")
    for c in range(1, c_max + 1):
        base = symbolic_power(ideal, c)
        targets = {n: symbolic_power(ideal, c * n) for n in range(2, n_check + 1)}
        if any(_quick_refutation(targets[n], base, n) for n in targets):
            continue
        pw = {n: p for n, p in zip(range(1, n_check + 1), powers(base, n_check))}
        if all(pw[n] == targets[n] for n in targets):
            forward = all(
                bool(_kernels.divisible_any(pw[n].array, targets[n].array).all()) for n in targets
            )
            reverse = all(
                bool(_kernels.divisible_any(targets[n].array, pw[n].array).all()) for n in targets
            )
            mus = (base.mu,) + tuple(targets[n].mu for n in sorted(targets))
            return VeroneseCertificate(c, n_check, mus, forward, reverse)
    return None


def _factors_through(target: np.ndarray, prev: np.ndarray, base: np.ndarray) -> bool:
    """Is every row of ``target`` a row of ``prev`` plus a row of ``base``?"""
    d = target.shape[1]
    B = int(max(target.max(), prev.max())) + 1
    if B**d >= 2**62:
        prev_set = {tuple(r) for r in prev.tolist()}
        return all(
            any(tuple(t - b) in prev_set for b in base if (b <= t).all()) for t in target
        )
    w = B ** np.arange(d, dtype=np.int64)
    prev_keys = np.sort(prev @ w)
    found = np.zeros(target.shape[0], dtype=bool)
    for b in base:
        idx = np.flatnonzero(~found)
        diff = target[idx] - b
        ok = (diff >= 0).all(axis=1)
        idx, keys = idx[ok], diff[ok] @ w
        pos = np.minimum(np.searchsorted(prev_keys, keys), prev_keys.size - 1)
        found[idx[prev_keys[pos] == keys]] = True
        if found.all():
            return True
    return bool(found.all())


def veronese_power_mus(ideal: MonomialIdeal, c: int, N: int) -> tuple[tuple[int, ...], int]:
    """μ((I^(c))^n) for n = 1..N and how many terms were obtained by lifting.

    (I^(c))^n ⊆ I^(cn) always; when every minimal generator of I^(cn) is a
    generator of I^(c) times a generator of (I^(c))^(n-1) = I^(c(n-1)), the two
    ideals coincide and μ is read off I^(cn) without forming the product.
    Otherwise the power is multiplied out.
    """
    base = symbolic_power(ideal, c)
    values, lifted = [base.mu], 0
    current, exact_chain = base, True
    for n in range(2, N + 1):
        if exact_chain:
            target = symbolic_power(ideal, c * n)
            if _factors_through(target.array, current.array, base.array):
                current = target
                values.append(current.mu)
                lifted += 1
                continue
            exact_chain = False
        current = current * base
        values.append(current.mu)
    return tuple(values), lifted


def symbolic_spread(
    ideal: MonomialIdeal,
    c_max: int = DEFAULT_C_MAX,
    n_check: int = DEFAULT_N_CHECK,
    N: int = DEFAULT_N,
) -> SpreadResult:
    """sℓ(I): ℓ(I^(c)) when a Veronese exponent c is certified, otherwise a
    heuristic fit of μ(I^(n))."""
    if ideal.is_zero or ideal.is_unit:
        raise ValueError("expected a proper nonzero ideal")
    cert = veronese_exponent(ideal, c_max, n_check)
    if cert is not None and cert.forward and cert.reverse:
        values, lifted = veronese_power_mus(ideal, cert.c, N)
        series = GrowthSeries("ordinary", values, estimate_growth_degree(values))
        inner = _spread_from_series(series)
        return SpreadResult(
            inner.value, "veronese-exact", inner.confidence, series, cert,
            note=f"spread of I^({cert.c}); {lifted} of {N - 1} powers lifted",
        )
    series = mu_sequence(ideal, SYMBOLIC, N)
    fit = series.fit
    value = fit.degree + 1 if fit.degree is not None else None
    return SpreadResult(value, "growth-fit", "heuristic", series,
                        note=f"no Veronese exponent up to c={c_max}")


def _count_members_in_box(ideal: MonomialIdeal, box: tuple[int, ...]) -> int:
    total = 0
    grids = np.array(np.meshgrid(*[np.arange(b + 1) for b in box[1:]], indexing="ij"))
    rest = grids.reshape(len(box) - 1, -1).T if len(box) > 1 else np.zeros((1, 0), dtype=np.int64)
    for first in range(box[0] + 1):
        pts = np.hstack([np.full((rest.shape[0], 1), first, dtype=np.int64), rest.astype(np.int64)])
        total += int(_kernels.divisible_any(pts, ideal.array).sum())
    return total


def saturation_defect(ideal: MonomialIdeal, n: int) -> int:
    """Length of (I^n)^sat / I^n: monomials of the saturation missing from I^n."""
    if ideal.is_zero or ideal.is_unit:
        raise ValueError("expected a proper nonzero ideal")
    big = power(ideal, n)
    sat = saturated_power(ideal, n)
    # every monomial of sat \ I^n lies below the exponent maxima of I^n
    box = big.max_exponents
    if math.prod(b + 1 for b in box) > DEFECT_BOX_CAP:
        raise CapExceeded(f"enumeration box {box} too large")
    return _count_members_in_box(sat, box) - _count_members_in_box(big, box)


@dataclass(frozen=True)
class LTilde:
    ell: int | None
    value: int | None
    dim: int


def ltilde(ideal: MonomialIdeal, N: int = DEFAULT_N) -> LTilde:
    """ℓ(I) when it is below dim R, and dim R + 1 when ℓ(I) = dim R."""
    ell = analytic_spread(ideal, N).value
    d = ideal.dim
    if ell is None:
        return LTilde(None, None, d)
    return LTilde(ell, ell if ell < d else d + 1, d)


@dataclass(frozen=True)
class DefectGrowth:
    values: tuple[int, ...]
    fit: GrowthFit
    ltilde: LTilde
    ratios: tuple[float, ...] = field(default=())

    @property
    def within_bound(self) -> bool | None:
        """Fitted defect growth degree ≤ ℓ̃ - 1 (None when undecided)."""
        if self.fit.degree is None or self.ltilde.value is None:
            return None
        return self.fit.degree <= self.ltilde.value - 1


def saturation_defect_growth(ideal: MonomialIdeal, N: int = 6) -> DefectGrowth:
    """Defects λ((I^n)^sat / I^n) for n ≤ N against the n^{ℓ̃-1} envelope."""
    values = tuple(saturation_defect(ideal, n) for n in range(1, N + 1))
    lt = ltilde(ideal, max(N, DEFAULT_N))
    exponent = (lt.value - 1) if lt.value is not None else 0
    ratios = tuple(v / n**exponent for n, v in enumerate(values, start=1))
    return DefectGrowth(values, estimate_growth_degree(values), lt, ratios)
