"""Sampled signals on a uniform periodic grid and the basic operators on them.

A :class:`Grid1D` with half-width ``T`` and ``N`` samples carries the points
``t_k = -T + k h`` with ``h = 2T / N``.  Its dual grid has step ``1 / (2T)`` and
the same number of points, so ``grid.dual().dual()`` is ``grid`` again.  All
shifts and convolutions are circular on ``[-T, T)``; for rapidly decaying test
functions the wraparound is far below any tolerance used in this package.

The Fourier transform is ``F f(xi) = int exp(-2 pi i x xi) f(x) dx``, realised
as a phase-corrected, ``h``-scaled DFT.  :func:`fourier` and
:func:`inverse_fourier` are exact inverses of each other.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import GridMismatch, KindMismatch, OffGridShift
from .weights import Exponential, Polynomial, Product, Table, Weight, unit_weight

_SHIFT_TOL = 1e-9


def _is_pow2(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


@dataclass(frozen=True)
class Grid1D:
    T: float
    N: int

    def __post_init__(self):
        if not _is_pow2(int(self.N)) or self.N < 8:
            raise ValueError(f"N must be a power of two >= 8, got {self.N}")
        if not self.T > 0:
            raise ValueError("T must be positive")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "T", float(self.T))

    @property
    def h(self) -> float:
        return 2.0 * self.T / self.N

    @property
    def points(self) -> np.ndarray:
        return -self.T + self.h * np.arange(self.N)

    @property
    def bins(self) -> np.ndarray:
        """Integer offsets ``-N/2 .. N/2-1`` of the points from the origin."""
        return np.arange(self.N) - self.N // 2

    def dual(self) -> "Grid1D":
        return Grid1D(self.N / (4.0 * self.T), self.N)

    def same_as(self, other: "Grid1D") -> bool:
        return self.N == other.N and math.isclose(self.T, other.T, rel_tol=1e-12)


def default_grid() -> Grid1D:
    return Grid1D(8.0, 256)


@dataclass(frozen=True, eq=False)
class SampledSignal:
    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=complex)
        if vals.shape != (self.grid.N,):
            raise ValueError(f"expected {self.grid.N} samples, got shape {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise ValueError("signal samples must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, grid: Grid1D, fn: Callable[[np.ndarray], np.ndarray]):
        return cls(grid, fn(grid.points))

    @classmethod
    def zeros(cls, grid: Grid1D) -> "SampledSignal":
        return cls(grid, np.zeros(grid.N))

    def __add__(self, other: "SampledSignal") -> "SampledSignal":
        _same_grid(self, other)
        return SampledSignal(self.grid, self.values + other.values)

    def __sub__(self, other: "SampledSignal") -> "SampledSignal":
        _same_grid(self, other)
        return SampledSignal(self.grid, self.values - other.values)

    def __mul__(self, c) -> "SampledSignal":
        return SampledSignal(self.grid, self.values * c)

    __rmul__ = __mul__

    def conj(self) -> "SampledSignal":
        return SampledSignal(self.grid, self.values.conj())

    def reflect(self) -> "SampledSignal":
        """``t -> f(-t)`` on the periodic grid."""
        idx = (-np.arange(self.grid.N)) % self.grid.N
        return SampledSignal(self.grid, self.values[idx])


@dataclass(frozen=True, eq=False)
class SampledField:
    """Samples ``G[m, n]`` of a function on ``xgrid x xigrid``."""

    xgrid: Grid1D
    xigrid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=complex)
        if vals.shape != (self.xgrid.N, self.xigrid.N):
            raise ValueError(
                f"field shape {vals.shape} does not match grids "
                f"({self.xgrid.N}, {self.xigrid.N})"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("field samples must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def cell(self) -> float:
        return self.xgrid.h * self.xigrid.h

    def __add__(self, other: "SampledField") -> "SampledField":
        return SampledField(self.xgrid, self.xigrid, self.values + other.values)

    def __mul__(self, c) -> "SampledField":
        return SampledField(self.xgrid, self.xigrid, self.values * c)

    __rmul__ = __mul__


def _same_grid(*signals: SampledSignal) -> Grid1D:
    grid = signals[0].grid
    for s in signals[1:]:
        if not s.grid.same_as(grid):
            raise GridMismatch(f"grids differ: {grid} vs {s.grid}")
    return grid


def _parity(grid: Grid1D) -> np.ndarray:
    return np.where(grid.bins % 2 == 0, 1.0, -1.0)


def fourier(f: SampledSignal) -> SampledSignal:
    """Riemann-sum Fourier transform onto the dual grid."""
    grid = f.grid
    vals = grid.h * _parity(grid) * np.fft.fftshift(np.fft.fft(f.values))
    return SampledSignal(grid.dual(), vals)


def inverse_fourier(F: SampledSignal) -> SampledSignal:
    """``F^{-1} u(t) = int u(xi) exp(2 pi i t xi) dxi`` onto the dual of ``F.grid``.

    Works in either direction: a frequency-side signal comes back to time, and
    a time-side signal ``h`` is sent to samples of ``F^{-1} h`` on the
    frequency grid.
    """
    grid = F.grid
    vals = grid.h * grid.N * np.fft.ifft(np.fft.ifftshift(_parity(grid) * F.values))
    return SampledSignal(grid.dual(), vals)


def _lattice_index(value: float, step: float, what: str) -> int:
    ratio = value / step
    k = round(ratio)
    if abs(ratio - k) > _SHIFT_TOL:
        raise OffGridShift(f"{what} {value!r} is not a multiple of {step!r}")
    return int(k)


def translate(f: SampledSignal, x0: float) -> SampledSignal:
    """``T_x0 f = f(. - x0)`` as a circular shift; ``x0`` must be a multiple of ``h``."""
    m = _lattice_index(x0, f.grid.h, "translation")
    return SampledSignal(f.grid, np.roll(f.values, m))


def modulate(f: SampledSignal, xi0: float) -> SampledSignal:
    """``M_xi0 f = exp(2 pi i xi0 t) f``; ``xi0`` must be a multiple of ``1/(2T)``."""
    _lattice_index(xi0, 1.0 / (2.0 * f.grid.T), "modulation")
    return SampledSignal(f.grid, f.values * np.exp(2j * np.pi * xi0 * f.grid.points))


def convolve(f: SampledSignal, g: SampledSignal) -> SampledSignal:
    """``(f * g)(t_k) ~ h sum_j f(t_j) g(t_k - t_j)``, circularly."""
    grid = _same_grid(f, g)
    raw = np.fft.ifft(np.fft.fft(f.values) * np.fft.fft(g.values))
    # t_k - t_j sits at index k - j + N/2, hence the half-length roll
    return SampledSignal(grid, grid.h * np.roll(raw, grid.N // 2))


def multiply(f: SampledSignal, g: SampledSignal) -> SampledSignal:
    grid = _same_grid(f, g)
    return SampledSignal(grid, f.values * g.values)


def inner(f: SampledSignal, g: SampledSignal) -> complex:
    """``(f, g) = int f conj(g)``."""
    grid = _same_grid(f, g)
    return complex(grid.h * np.vdot(g.values, f.values))


def _weighted_norm(absvals: np.ndarray, p: float, cell: float, axis=None) -> np.ndarray:
    if math.isinf(p):
        return np.max(absvals, axis=axis)
    if p == 1:
        return cell * np.sum(absvals, axis=axis)
    if p == 2:
        return np.sqrt(cell * np.sum(absvals * absvals, axis=axis))
    # scale by the max to keep large weights from overflowing in the power
    top = np.max(absvals, axis=axis, keepdims=True)
    safe = np.where(top > 0, top, 1.0)
    s = cell * np.sum((absvals / safe) ** p, axis=axis, keepdims=True)
    out = (safe * s ** (1.0 / p))
    return np.squeeze(out, axis=axis) if axis is not None else out.item()


def _check_p(p: float) -> float:
    p = float(p)
    if not p >= 1:
        raise ValueError(f"exponent must lie in [1, inf], got {p}")
    return p


def lp_norm(f: SampledSignal, p: float, eta: Optional[Weight] = None) -> float:
    """``||eta f||_p`` with the Riemann measure ``h`` (none for ``p = inf``)."""
    p = _check_p(p)
    w = 1.0 if eta is None else eta(f.grid.points)
    return float(_weighted_norm(np.abs(w * f.values), p, f.grid.h))


def dual_exponent(p: float) -> float:
    p = _check_p(p)
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


@dataclass(frozen=True, eq=False)
class MixedNormSpec:
    """Norm on time-frequency fields.

    ``kind`` is ``"mixed"`` for ``L^{p,q}`` weighted by ``eta1 (x) eta2``, or
    ``"nuclear"`` / ``"spectral"`` for the projective / injective tensor norms
    on ``L^2 (x) L^2``.  ``omega`` and ``nu`` are the translation and
    modulation weights of the space on ``R^2``; left unset they are derived.
    """

    kind: str = "mixed"
    p: float = 2.0
    q: float = 2.0
    eta1: Weight = field(default_factory=unit_weight)
    eta2: Weight = field(default_factory=unit_weight)
    omega: Optional[Weight] = None
    nu: Optional[Weight] = None

    def __post_init__(self):
        if self.kind not in ("mixed", "nuclear", "spectral"):
            raise KindMismatch(f"unknown field-norm kind {self.kind!r}")
        object.__setattr__(self, "p", _check_p(self.p))
        object.__setattr__(self, "q", _check_p(self.q))
        if self.omega is None:
            if self.kind == "mixed":
                omega = Product((lp_translation_weight(self.eta1),
                                 lp_translation_weight(self.eta2)))
            else:
                omega = unit_weight(2)
            object.__setattr__(self, "omega", omega)
        if self.nu is None:
            object.__setattr__(self, "nu", unit_weight(2))

    @classmethod
    def mixed(cls, p, q, eta1=None, eta2=None, **kw) -> "MixedNormSpec":
        return cls("mixed", p, q, eta1 or unit_weight(), eta2 or unit_weight(), **kw)

    @classmethod
    def nuclear(cls) -> "MixedNormSpec":
        return cls("nuclear")

    @classmethod
    def spectral(cls) -> "MixedNormSpec":
        return cls("spectral")

    def label(self) -> str:
        if self.kind != "mixed":
            return self.kind
        return f"L^{{{_fmt_p(self.p)},{_fmt_p(self.q)}}}"


def _fmt_p(p: float) -> str:
    return "inf" if math.isinf(p) else f"{p:g}"


def lp_translation_weight(eta: Weight) -> Weight:
    """Translation weight of ``L^p_eta`` as a weight object of closed form when possible."""
    if isinstance(eta, (Exponential, Polynomial)):
        return eta
    if isinstance(eta, Product):
        return Product(tuple(lp_translation_weight(f) for f in eta.factors))
    if isinstance(eta, Table):
        pts = eta.points
        return Table(pts, eta.translation_weight(pts))
    # raises Unsupported with the right message
    eta.translation_weight(0.0)
    raise AssertionError("unreachable")


def mixed_norm(G: SampledField, spec: MixedNormSpec) -> float:
    """Inner weighted ``L^p`` over ``x`` for each ``xi``, then weighted ``L^q`` over ``xi``."""
    if spec.kind != "mixed":
        raise KindMismatch(f"mixed_norm needs a mixed spec, got {spec.kind!r}")
    w1 = spec.eta1(G.xgrid.points)
    w2 = spec.eta2(G.xigrid.points)
    inner_norms = _weighted_norm(np.abs(G.values) * np.asarray(w1)[:, None], spec.p,
                                 G.xgrid.h, axis=0)
    return float(_weighted_norm(np.asarray(w2) * inner_norms, spec.q, G.xigrid.h))


def weighted_l1(G: SampledField, weight: Weight) -> float:
    """``int |G| weight`` over the lattice for a weight on ``R^2``."""
    return float(G.cell * np.sum(np.abs(G.values) * lattice(weight, G.xgrid, G.xigrid)))


def lattice(weight: Weight, xgrid: Grid1D, xigrid: Grid1D) -> np.ndarray:
    """Evaluate a weight on ``R^2`` at every ``(x_m, xi_n)``."""
    if isinstance(weight, Product) and all(f.dim == 1 for f in weight.factors):
        return weight.on_lattice(xgrid.points, xigrid.points)
    X, XI = np.meshgrid(xgrid.points, xigrid.points, indexing="ij")
    return np.asarray(weight(np.stack([X, XI], axis=-1)))


def hausdorff_young(f: SampledSignal, p: float) -> tuple[float, float]:
    """``(||F f||_{p'}, ||f||_p)`` for ``1 <= p <= 2``."""
    if not 1 <= p <= 2:
        raise ValueError("Hausdorff-Young needs 1 <= p <= 2")
    return lp_norm(fourier(f), dual_exponent(p)), lp_norm(f, p)


def young(f: SampledSignal, g: SampledSignal, p: float, q: float) -> tuple[float, float]:
    """``(||f * g||_r, ||f||_p ||g||_q)`` with ``1 + 1/r = 1/p + 1/q``."""
    inv_r = 1.0 / p + 1.0 / q - 1.0
    if inv_r < 0:
        raise ValueError("Young exponents need 1/p + 1/q >= 1")
    r = math.inf if inv_r == 0 else 1.0 / inv_r
    return lp_norm(convolve(f, g), r), lp_norm(f, p) * lp_norm(g, q)


def gaussian(grid: Grid1D, width: float = 1.0, center: float = 0.0) -> SampledSignal:
    """``exp(-pi ((t - center)/width)^2)``, not normalised."""
    return SampledSignal(grid, np.exp(-np.pi * ((grid.points - center) / width) ** 2))


def regularize(
    f: SampledSignal,
    n: float,
    cutoff: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    kernel_hat: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> SampledSignal:
    """``chi_n * (phi_n f)`` with ``phi_n(t) = phi(t/n)`` and ``chi_n(t) = n chi(n t)``.

    ``cutoff`` is ``phi`` (with ``phi(0) = 1``) and ``kernel_hat`` is the
    Fourier transform of ``chi`` (so ``kernel_hat(0) = int chi = 1``); both
    default to ``exp(-pi s^2)``.  The convolution is applied as the Fourier
    multiplier ``kernel_hat(xi/n)``: for large ``n`` the kernel ``chi_n`` is
    narrower than the grid step and its samples no longer integrate to one.
    """
    gauss = lambda s: np.exp(-np.pi * s * s)  # noqa: E731
    cutoff = cutoff or gauss
    kernel_hat = kernel_hat or gauss
    damped = SampledSignal(f.grid, cutoff(f.grid.points / n) * f.values)
    spec = fourier(damped)
    spec = SampledSignal(spec.grid, spec.values * kernel_hat(spec.grid.points / n))
    return inverse_fourier(spec)


def approximation_error(
    f: SampledSignal, n: float, p: float = 2.0, eta: Optional[Weight] = None, **kw
) -> float:
    """``||f - chi_n * (phi_n f)||`` in ``L^p_eta``."""
    return lp_norm(f - regularize(f, n, **kw), p, eta)
