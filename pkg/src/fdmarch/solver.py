"""Periodic 1-D time marching with generated schemes.

Fields live on a uniform grid with periodic wrap-around; one explicit step is
a weighted sum of rolled copies of the value array, so the only floating-point
work per step is a handful of numpy axpy operations.  Weights are produced by
the exact generator and converted to float once, up front.
"""

from __future__ import annotations

import math
import cmath
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

import numpy as np

from .exact import OffsetSet
from .schemes import (
    LayerTable,
    Scheme,
    SchemeSpec,
    default_offsets,
    master_scheme,
    preferred_sign,
)
from .stability import GROWTH_TOL, max_growth


class ConfigurationError(ValueError):
    """A run request is inconsistent (stencil wider than the grid, etc.)."""


@dataclass(frozen=True, eq=False)
class GridField:
    """Samples of u on a uniform periodic grid: values[j] = u(origin + j*dx)."""

    values: np.ndarray
    dx: float
    origin: float

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size == 0:
            raise ConfigurationError("field values must be a non-empty 1-D array")
        object.__setattr__(self, "values", vals)

    @classmethod
    def sample(
        cls,
        profile: Callable[[np.ndarray], np.ndarray],
        box: tuple[float, float],
        n_cells: int,
    ) -> "GridField":
        """Sample a profile at the n_cells left cell edges of [box[0], box[1])."""
        lo, hi = box
        if not hi > lo:
            raise ConfigurationError(f"empty box {box}")
        if n_cells < 1:
            raise ConfigurationError("need at least one grid cell")
        dx = (hi - lo) / n_cells
        x = lo + dx * np.arange(n_cells)
        return cls(np.asarray(profile(x), dtype=float), dx, lo)

    @property
    def n_cells(self) -> int:
        return int(self.values.size)

    @property
    def length(self) -> float:
        return self.dx * self.n_cells

    def x(self) -> np.ndarray:
        return self.origin + self.dx * np.arange(self.n_cells)

    def mass(self) -> float:
        return float(self.values.sum())


# -- initial profiles ---------------------------------------------------------

def triangle(x: np.ndarray) -> np.ndarray:
    """Unit triangle: peak 1 at x=0, linear to 0 at |x|=1, zero outside."""
    return np.maximum(0.0, 1.0 - np.abs(x))


def rectangle(x: np.ndarray) -> np.ndarray:
    """Unit box: 1 on |x| <= 1, 0 outside."""
    return np.where(np.abs(x) <= 1.0, 1.0, 0.0)


def gaussian(x: np.ndarray) -> np.ndarray:
    return np.exp(-x * x)


def burgers_ramp(x: np.ndarray) -> np.ndarray:
    """Plateau-ramp data: 1 for x < 0, falling linearly to 0 across [0, 1]."""
    return np.clip(1.0 - x, 0.0, 1.0)


def sine_profile(box: tuple[float, float]) -> Callable[[np.ndarray], np.ndarray]:
    """One full sine period across the box (periodic for any box length)."""
    lo, hi = box
    p = 2.0 * math.pi / (hi - lo)
    return lambda x: np.sin(p * (x - lo))


PROFILE_NAMES = ("triangle", "rectangle", "gaussian", "sine", "burgers")


def make_profile(name: str, box: tuple[float, float]) -> Callable[[np.ndarray], np.ndarray]:
    if name == "triangle":
        return triangle
    if name == "rectangle":
        return rectangle
    if name == "gaussian":
        return gaussian
    if name == "burgers":
        return burgers_ramp
    if name == "sine":
        return sine_profile(box)
    raise ConfigurationError(f"unknown profile {name!r}; expected one of {PROFILE_NAMES}")


# -- linear problems ----------------------------------------------------------

@dataclass(frozen=True)
class LinearTerm:
    """One right-hand-side term a * d^m u / dx^m."""

    m: int
    a: float
    offsets: Optional[OffsetSet] = None


@dataclass(frozen=True)
class LinearProblem:
    """du/dt = sum of terms, marched with order-n schemes and time step dt."""

    terms: tuple[LinearTerm, ...]
    dt: float
    n: int

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ConfigurationError("a linear problem needs at least one term")
        if self.dt <= 0:
            raise ConfigurationError("time step must be positive")

    def term_offsets(self, term: LinearTerm) -> OffsetSet:
        if term.offsets is not None:
            return OffsetSet(term.offsets)
        sign = 1 if term.a > 0 else -1
        return default_offsets(term.m, self.n, sign)

    def schemes(self) -> tuple[Scheme, ...]:
        return tuple(
            master_scheme(SchemeSpec(t.m, self.n, self.term_offsets(t)))
            for t in self.terms
        )

    def courant_numbers(self, dx: float) -> tuple[float, ...]:
        return tuple(self.dt * t.a / dx**t.m for t in self.terms)


def _check_fit(n_cells: int, offsets: OffsetSet) -> None:
    reach = max(abs(offsets[0]), abs(offsets[-1]))
    if n_cells <= 2 * reach:
        raise ConfigurationError(
            f"stencil reach {reach} needs more than {2 * reach} cells, grid has {n_cells}"
        )


def _apply_stencil(values: np.ndarray, items: Sequence[tuple[int, float]]) -> np.ndarray:
    out = np.zeros_like(values)
    for k, w in items:
        if w:
            # roll by -k so position j reads values[j + k] with periodic wrap
            out += w * np.roll(values, -k)
    return out


def step_linear(field: GridField, scheme: Scheme, nu: float) -> GridField:
    """One explicit step u_j <- sum_i c_i(nu) u_{j+k_i} with periodic boundaries."""
    _check_fit(field.n_cells, scheme.offsets)
    items = scheme.float_items(nu)
    return GridField(_apply_stencil(field.values, items), field.dx, field.origin)


def run_linear(
    problem: LinearProblem,
    field: GridField,
    steps: int,
    callback: Optional[Callable[[int, GridField], None]] = None,
) -> GridField:
    """March `steps` steps, applying each term's scheme in sequence per step.

    Emits a RuntimeWarning (but still runs) when a term is outside its stable
    Courant range — periodic single-mode growth is diagnosable but sometimes
    deliberately provoked.
    """
    if steps < 0:
        raise ConfigurationError("step count must be >= 0")
    schemes = problem.schemes()
    nus = problem.courant_numbers(field.dx)
    all_items = []
    for scheme, nu in zip(schemes, nus):
        _check_fit(field.n_cells, scheme.offsets)
        theta, g2 = max_growth(scheme, nu)
        if g2 > 1.0 + GROWTH_TOL:
            warnings.warn(
                f"term m={scheme.m} is unstable at nu={nu:.6g}: "
                f"max |g|^2 = {g2:.6g} at theta={theta:.4f}",
                RuntimeWarning,
                stacklevel=2,
            )
        all_items.append(scheme.float_items(nu))
    u = field.values.copy()
    for s in range(steps):
        for items in all_items:
            u = _apply_stencil(u, items)
        if callback is not None:
            callback(s + 1, GridField(u.copy(), field.dx, field.origin))
    return GridField(u, field.dx, field.origin)


# -- nonlinear advection -------------------------------------------------------

@dataclass(frozen=True)
class DensityFamily:
    """Conserved densities u_0, u_1, ... fed to the layered update.

    funcs[j] evaluates the j-th density pointwise; funcs[0] must be the
    identity for the update to reduce to the linear scheme on linear data.
    """

    name: str
    funcs: tuple[Callable[[np.ndarray], np.ndarray], ...]

    def __len__(self) -> int:
        return len(self.funcs)


def burgers_densities(n: int) -> DensityFamily:
    """Densities for u_t = -u u_x: u_j(u) = (-1)^j u^(j+1) / (j+1).

    These are the successive antiderivatives of the powers of the local speed
    f(u) = -u, which is exactly what the layered update consumes.
    """

    def make(j: int) -> Callable[[np.ndarray], np.ndarray]:
        sign, p = (-1.0) ** j, j + 1
        return lambda u: sign * u**p / p

    return DensityFamily("burgers", tuple(make(j) for j in range(n + 1)))


def identity_densities(n: int) -> DensityFamily:
    """All densities equal to u itself; turns the layered update into linear advection."""
    return DensityFamily("identity", tuple(lambda u: u for _ in range(n + 1)))


def step_nonlinear(
    field: GridField, layers: LayerTable, densities: DensityFamily, nu: float
) -> GridField:
    """One conserved-density step: row j of the table hits density j, scaled by nu^j."""
    if len(densities) < len(layers):
        raise ConfigurationError(
            f"density family {densities.name!r} provides {len(densities)} densities, "
            f"the layer table needs {len(layers)}"
        )
    _check_fit(field.n_cells, layers.offsets)
    nu = float(nu)
    out = np.zeros_like(field.values)
    for j, row in enumerate(layers):
        items = [(k, float(w)) for k, w in zip(layers.offsets, row)]
        dens = np.asarray(densities.funcs[j](field.values), dtype=float)
        out += nu**j * _apply_stencil(dens, items)
    return GridField(out, field.dx, field.origin)


def run_nonlinear(
    field: GridField,
    layers: LayerTable,
    densities: DensityFamily,
    nu: float,
    steps: int,
    callback: Optional[Callable[[int, GridField], None]] = None,
) -> GridField:
    if steps < 0:
        raise ConfigurationError("step count must be >= 0")
    out = field
    for s in range(steps):
        out = step_nonlinear(out, layers, densities, nu)
        if callback is not None:
            callback(s + 1, out)
    return out


def shock_front(field: GridField, level: float = 0.5) -> Optional[float]:
    """Leftmost downward crossing of `level`, linearly interpolated.

    Scans adjacent cell pairs left to right and returns the interpolated x
    where the profile first falls through the level (upward crossings, e.g. a
    periodic re-entry ramp, are ignored).  None if the profile never does.
    """
    v = field.values
    x = field.x()
    for j in range(field.n_cells - 1):
        if v[j] >= level > v[j + 1]:
            frac = (v[j] - level) / (v[j] - v[j + 1])
            return float(x[j] + frac * field.dx)
    return None


# -- convergence ---------------------------------------------------------------

@dataclass(frozen=True)
class ConvergenceResult:
    """Refinement-ladder errors with fitted orders (None when exact to roundoff)."""

    m: int
    n: int
    nu: float
    grid_sizes: tuple[int, ...]
    dxs: tuple[float, ...]
    dts: tuple[float, ...]
    steps: tuple[int, ...]
    errors: tuple[float, ...]
    order_dx: Optional[float]
    order_dt: Optional[float]
    exact: bool


def convergence_study(
    m: int,
    n: int,
    nu: float,
    grids: Sequence[int] = (32, 64, 128, 256),
    box: tuple[float, float] = (0.0, 1.0),
    final_time: Optional[float] = None,
    a: Optional[float] = None,
    offsets: Optional[Iterable[int]] = None,
    profile: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> ConvergenceResult:
    """Max-norm error at a fixed physical time across a grid-refinement ladder.

    `nu` is a magnitude; the Courant number's sign comes from the coefficient
    `a` (default: the conventional sign for this m).  The time step scales as
    dx^m so nu is constant down the ladder; the fitted slope versus dt is the
    headline order (it equals the dx slope divided by m).

    The reference solution is exact: a single Fourier mode is evolved by its
    exact amplification factor, or, for m=1 with a custom profile, the initial
    data is translated.  Unstable configurations are refused.
    """
    if a is None:
        a = float(preferred_sign(m))
    if a == 0:
        raise ConfigurationError("coefficient a must be nonzero")
    nu = abs(float(nu))
    if nu == 0:
        raise ConfigurationError("Courant magnitude must be positive")
    if profile is not None and m != 1:
        raise ConfigurationError(
            "custom profiles have an exact reference only for m=1; "
            "use the default single-mode profile for m >= 2"
        )
    sign = 1 if a > 0 else -1
    offs = OffsetSet(offsets) if offsets is not None else default_offsets(m, n, sign)
    scheme = master_scheme(SchemeSpec(m, n, offs))
    signed_nu = sign * nu
    theta, g2 = max_growth(scheme, signed_nu)
    if g2 > 1.0 + GROWTH_TOL:
        raise ConfigurationError(
            f"scheme m={m} n={n} offsets={tuple(offs)} is unstable at nu={signed_nu:.6g} "
            f"(max |g|^2 = {g2:.6g} at theta={theta:.4f}); reduce |nu|"
        )

    lo, hi = box
    length = hi - lo
    p = 2.0 * math.pi / length
    if final_time is None:
        if m == 1:
            final_time = 0.5 * length / abs(a)
        else:
            final_time = 2.0 / (abs(a) * p**m)

    dxs, dts, step_counts, errors = [], [], [], []
    for g in grids:
        dx = length / g
        dt = nu * dx**m / abs(a)
        steps = max(1, round(final_time / dt))
        t_end = steps * dt
        field0 = GridField.sample(profile if profile is not None else sine_profile(box), box, g)
        problem = LinearProblem(terms=(LinearTerm(m, a, offs),), dt=dt, n=n)
        out = run_linear(problem, field0, steps)
        if profile is not None:
            # m=1: exact evolution is translation by -a * t
            ref_fn = lambda x: profile(_wrap(x + a * t_end, lo, length))
            ref = np.asarray(ref_fn(field0.x()), dtype=float)
        else:
            factor = cmath.exp(a * (1j * p) ** m * t_end)
            mode = np.exp(1j * p * (field0.x() - lo))
            ref = np.imag(factor * mode)
        err = float(np.max(np.abs(out.values - ref)))
        dxs.append(dx)
        dts.append(dt)
        step_counts.append(steps)
        errors.append(err)

    exact = max(errors) < 1e-12
    if exact:
        order_dx = order_dt = None
    else:
        slope = np.polyfit(np.log(dxs), np.log(np.maximum(errors, 1e-300)), 1)[0]
        order_dx = float(slope)
        order_dt = float(slope / m)
    return ConvergenceResult(
        m=m,
        n=n,
        nu=signed_nu,
        grid_sizes=tuple(int(g) for g in grids),
        dxs=tuple(dxs),
        dts=tuple(dts),
        steps=tuple(step_counts),
        errors=tuple(errors),
        order_dx=order_dx,
        order_dt=order_dt,
        exact=exact,
    )


def _wrap(x: np.ndarray, lo: float, length: float) -> np.ndarray:
    return lo + np.mod(x - lo, length)
