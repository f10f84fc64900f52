"""Single-mode (von Neumann) stability analysis of generated schemes.

A periodic mode e^{i p x} passes through one explicit step with gain
g(theta; nu) = sum_k c_k(nu) e^{i k theta}, theta = p dx.  A scheme is stable
at Courant number nu when max_theta |g|^2 <= 1 (up to a small roundoff
allowance).  The maximum is located on a dense theta grid and polished with a
derivative-free golden-section refinement, and the stability boundary in nu
is then bracketed by doubling and resolved by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from .exact import OffsetSet
from .schemes import Scheme, SchemeSpec, first_order_scheme, master_scheme

# |g|^2 <= 1 + GROWTH_TOL counts as stable: absorbs float roundoff in the
# gain evaluation without masking genuine growth.
GROWTH_TOL = 1e-10
# schemes whose critical Courant number is below this are classified unstable
STABLE_NU_THRESHOLD = 1e-3
# default resolution of the theta grid scan
THETA_SAMPLES = 4096
# bisection stops once the bracket is narrower than this
NU_TOL = 1e-4
# doubling search gives up beyond this Courant number
NU_MAX = 64.0

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _weight_arrays(scheme: Scheme, nu: float) -> tuple[np.ndarray, np.ndarray]:
    items = scheme.float_items(nu)
    ks = np.array([k for k, _ in items], dtype=float)
    ws = np.array([w for _, w in items], dtype=float)
    return ks, ws


def _growth_of(ks: np.ndarray, ws: np.ndarray) -> Callable[[np.ndarray], np.ndarray]:
    def growth(thetas):
        thetas = np.asarray(thetas, dtype=float)
        g = np.exp(1j * np.multiply.outer(thetas, ks)) @ ws
        return np.real(g * np.conj(g))

    return growth


def amplification(scheme: Scheme, nu: float, theta) -> np.ndarray | float:
    """Squared gain |g(theta; nu)|^2 of a single Fourier mode; vectorized in theta."""
    ks, ws = _weight_arrays(scheme, nu)
    out = _growth_of(ks, ws)(theta)
    return float(out) if np.ndim(theta) == 0 else out


def _golden_max(
    f: Callable[[float], float], a: float, b: float, tol: float = 1e-10
) -> tuple[float, float]:
    """Golden-section search for a maximum of f on [a, b]."""
    c = b - _INV_GOLDEN * (b - a)
    d = a + _INV_GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while d - c > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_GOLDEN * (b - a)
            fd = f(d)
    mid = 0.5 * (a + b)
    return mid, f(mid)


def max_growth(
    scheme: Scheme, nu: float, samples: int = THETA_SAMPLES, refine: int = 3
) -> tuple[float, float]:
    """(worst theta, max |g|^2) over theta in [0, 2*pi).

    The grid scan is refined around the `refine` largest local maxima with a
    golden-section search, so sharp peaks between grid points are not missed.
    """
    ks, ws = _weight_arrays(scheme, nu)
    growth = _growth_of(ks, ws)
    thetas = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    g2 = growth(thetas)

    best_idx = int(np.argmax(g2))
    best_theta, best_val = float(thetas[best_idx]), float(g2[best_idx])

    # local maxima in the circular sense
    is_peak = (g2 >= np.roll(g2, 1)) & (g2 >= np.roll(g2, -1))
    peak_idx = np.flatnonzero(is_peak)
    if peak_idx.size:
        top = peak_idx[np.argsort(g2[peak_idx])[::-1][:refine]]
        step = 2.0 * math.pi / samples
        for idx in top:
            theta0 = float(thetas[idx])
            t, v = _golden_max(
                lambda t: float(growth(t)), theta0 - step, theta0 + step
            )
            if v > best_val:
                best_theta, best_val = t % (2.0 * math.pi), v
    return best_theta, best_val


def critical_courant(
    scheme: Scheme,
    nu_sign: int,
    tol: float = NU_TOL,
    growth_tol: float = GROWTH_TOL,
    nu_max: float = NU_MAX,
) -> float:
    """Largest |nu| (to within tol) at which the scheme passes the mode test.

    nu_sign picks the sign of the Courant number being probed.  Returns 0.0
    when the scheme is already unstable at |nu| = tol, and nu_max when no
    instability is found below the search ceiling.  Bisection assumes the
    stable set is a single interval [0, nu_c]; after converging, the verdict
    is re-probed on both sides of the boundary, and if a pocket shows up
    (stable above, or unstable below), a fine linear sweep re-locates the
    first unstable point from below.

    Note the guard watches the stability *verdict*, not the raw gain: the
    gain legitimately dips back to 1 at whole-number Courant values (exact
    shifts) without re-entering the stable range.
    """
    sign = 1 if nu_sign >= 0 else -1

    def growth(nu_abs: float) -> float:
        return max_growth(scheme, sign * nu_abs)[1]

    def stable(nu_abs: float) -> bool:
        return growth(nu_abs) <= 1.0 + growth_tol

    hi = tol
    while hi <= nu_max and stable(hi):
        hi *= 2.0
    if hi > nu_max:
        return nu_max
    lo = 0.0 if hi == tol else hi / 2.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if stable(mid):
            lo = mid
        else:
            hi = mid

    if lo > 0.0:
        above = np.linspace(lo + tol, min(nu_max, 2.0 * lo + 16.0 * tol), 8)
        below = np.linspace(0.125 * lo, lo, 8)
        pocket_above = any(stable(float(p)) for p in above)
        pocket_below = not all(stable(float(p)) for p in below)
        if pocket_above or pocket_below:
            return _sweep_critical(stable, tol, hi)
    return lo


def _sweep_critical(
    stable: Callable[[float], bool], tol: float, ceiling: float
) -> float:
    """Linear sweep from below in steps of tol; first unstable point wins."""
    nu = tol
    last_stable = 0.0
    while nu <= ceiling + tol:
        if not stable(nu):
            return last_stable
        last_stable = nu
        nu += tol
    return last_stable


@dataclass(frozen=True)
class StabilityReport:
    """Summary of a single-sign stability probe of one scheme."""

    m: int
    n: int
    offsets: OffsetSet
    nu_sign: int
    nu_critical: float
    worst_theta: float
    growth_samples: tuple[tuple[float, float], ...]

    @property
    def is_stable(self) -> bool:
        """Usable-in-practice verdict: some workable Courant range exists."""
        return self.nu_critical > STABLE_NU_THRESHOLD


def stability_report(
    scheme: Scheme, nu_sign: int, tol: float = NU_TOL
) -> StabilityReport:
    nu_c = critical_courant(scheme, nu_sign, tol=tol)
    sign = 1 if nu_sign >= 0 else -1
    # probe just beyond the boundary so worst_theta names the first mode to break
    probe = nu_c + 10.0 * tol
    worst_theta, _ = max_growth(scheme, sign * probe)
    top = max(1.25 * nu_c, 20.0 * tol)
    nus = np.linspace(0.0, top, 11)
    samples = tuple(
        (float(nu), float(max_growth(scheme, sign * float(nu))[1])) for nu in nus
    )
    return StabilityReport(
        m=scheme.m,
        n=scheme.n,
        offsets=scheme.offsets,
        nu_sign=sign,
        nu_critical=float(nu_c),
        worst_theta=float(worst_theta),
        growth_samples=samples,
    )


def truncated_first_layer_critical(n: int, tol: float = NU_TOL) -> float:
    """Critical Courant number of the centered m=2 scheme truncated to its linear layer.

    Keeping only the j<=1 layers of the order-n centered second-derivative
    scheme leaves a first-order-in-time update whose stability range shrinks
    with n instead of growing.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    scheme = master_scheme(SchemeSpec(2, n, OffsetSet.contiguous(n, 2 * n)))
    return critical_courant(scheme.truncated(1), +1, tol=tol)


@dataclass(frozen=True)
class BoundAuditRow:
    """Measured critical Courant number of one binomial scheme vs. the geometric ceiling."""

    m: int
    r: int
    sign: int
    nu_critical: float
    bound: float
    within: bool


def stability_bound_audit(
    m_max: int, tol: float = NU_TOL, slack: float = 1e-3
) -> tuple[BoundAuditRow, ...]:
    """Check nu_critical <= 1/2^(m-1) for every first-order window, m <= m_max.

    For each (m, r) the favorable coefficient sign (the one with the larger
    measured range) is reported.
    """
    rows = []
    for m in range(1, m_max + 1):
        bound = 0.5 ** (m - 1)
        for r in range(m + 1):
            scheme = first_order_scheme(m, r)
            by_sign = {
                sign: critical_courant(scheme, sign, tol=tol) for sign in (+1, -1)
            }
            sign = max(by_sign, key=lambda s: by_sign[s])
            nu_c = by_sign[sign]
            rows.append(
                BoundAuditRow(m, r, sign, nu_c, bound, nu_c <= bound + slack)
            )
    return tuple(rows)


def first_order_stable_r(m: int, sign: int) -> Optional[int]:
    """Window shift r giving a stable first-order scheme for sign(a_m), if any.

    The pattern is parity-driven: for even m = 2l only the centered window
    r = l works and only when sign = (-1)^(l-1); for odd m = 2l-1 one of the
    two near-centered windows works for each sign.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    sign = 1 if sign >= 0 else -1
    if m % 2 == 0:
        half = m // 2
        return half if sign == (-1) ** (half - 1) else None
    half = (m + 1) // 2
    if sign == (-1) ** half:
        return half
    return half - 1


@dataclass(frozen=True)
class Classification:
    """Measured stability landscape of all first-order windows for one m."""

    m: int
    stable_r: dict[int, Optional[int]]
    nu_critical: dict[tuple[int, int], float]


def classify_first_order(m: int, tol: float = NU_TOL) -> Classification:
    """Probe every window r = 0..m under both coefficient signs.

    A window counts as stable when its measured critical Courant number
    exceeds STABLE_NU_THRESHOLD; at most one window per sign survives.
    """
    nu_critical: dict[tuple[int, int], float] = {}
    stable_r: dict[int, Optional[int]] = {}
    for sign in (+1, -1):
        best_r, best = None, 0.0
        for r in range(m + 1):
            nu_c = critical_courant(first_order_scheme(m, r), sign, tol=tol)
            nu_critical[(sign, r)] = nu_c
            if nu_c > STABLE_NU_THRESHOLD and nu_c > best:
                best_r, best = r, nu_c
        stable_r[sign] = best_r
    return Classification(m=m, stable_r=stable_r, nu_critical=nu_critical)


# -- named advection ladders -------------------------------------------------

FAMILIES = ("uw", "lw", "bw")


def advection_family_spec(kind: str, s: int) -> tuple[int, int]:
    """(order n, left width r) of the s-th member of a named m=1 ladder.

    uw: odd orders n = 2s+1 with one extra upwind point (r = s+1);
    lw: even orders n = 2s, centered (r = s), s >= 1;
    bw: even orders n = 2s+2 with two extra upwind points (r = s+2).
    All ladders use the a < 0 (rightward wave) convention.
    """
    if s < 0:
        raise ValueError("family index s must be >= 0")
    if kind == "uw":
        return 2 * s + 1, s + 1
    if kind == "lw":
        if s < 1:
            raise ValueError("the centered even ladder starts at s = 1")
        return 2 * s, s
    if kind == "bw":
        return 2 * s + 2, s + 2
    raise ValueError(f"unknown family {kind!r}; expected one of {FAMILIES}")


def advection_family_scheme(kind: str, s: int) -> Scheme:
    n, r = advection_family_spec(kind, s)
    return master_scheme(SchemeSpec(1, n, OffsetSet.contiguous(r, n)))


def advection_family_stability(s: int, kind: str, tol: float = NU_TOL) -> float:
    """Measured |nu| stability endpoint of a ladder member (probed at nu < 0)."""
    return critical_courant(advection_family_scheme(kind, s), -1, tol=tol)
