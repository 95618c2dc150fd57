"""Discrete short-time Fourier transform, its adjoint, and window constants.

The time lattice is the full signal grid and the frequency lattice is the dual
grid, so ``synthesize(analyze(f, g), g) == ||g||_2^2 f`` holds up to rounding
rather than up to a frame correction.
"""
from __future__ import annotations

import numpy as np

from .errors import GridMismatch, ZeroWindow
from .signal import (
    Grid1D,
    MixedNormSpec,
    SampledField,
    SampledSignal,
    _parity,
    _same_grid,
    _weighted_norm,
    dual_exponent,
    lattice,
    lp_norm,
    lp_translation_weight,
    weighted_l1,
)
from .weights import Product, Weight, unit_weight

# A time-frequency matrix is a field on (signal grid) x (dual grid).
TimeFrequencyMatrix = SampledField


def gaussian_window(grid: Grid1D, width: float = 1.0) -> SampledSignal:
    """``2^{1/4} width^{-1/2} exp(-pi (t/width)^2)``, unit ``L^2`` norm."""
    t = grid.points / width
    return SampledSignal(grid, 2 ** 0.25 / np.sqrt(width) * np.exp(-np.pi * t * t))


def _window_stack(g: SampledSignal) -> np.ndarray:
    """Row ``m`` holds ``g(t_k - x_m)`` for all ``k``."""
    N = g.grid.N
    k = np.arange(N)
    idx = (k[None, :] - k[:, None] + N // 2) % N
    return g.values[idx]


def _check_window(g: SampledSignal) -> None:
    if not np.any(g.values):
        raise ZeroWindow("window is identically zero")


def analyze(f: SampledSignal, g: SampledSignal) -> TimeFrequencyMatrix:
    """``V_g f(x_m, xi_n) ~ h sum_k f(t_k) conj(g(t_k - x_m)) exp(-2 pi i t_k xi_n)``."""
    grid = _same_grid(f, g)
    _check_window(g)
    prod = f.values[None, :] * np.conj(_window_stack(g))
    spec = grid.h * _parity(grid)[None, :] * np.fft.fftshift(np.fft.fft(prod, axis=1), axes=1)
    return SampledField(grid, grid.dual(), spec)


def synthesize(G: TimeFrequencyMatrix, g: SampledSignal) -> SampledSignal:
    """``V_g^* G(t) = int (T_x g)(t) (F_2^{-1} G)(x, t) dx``.

    Inverse transform along ``xi`` for every row, then a weighted sum over the
    time shifts.
    """
    grid = g.grid
    if not (G.xgrid.same_as(grid) and G.xigrid.same_as(grid.dual())):
        raise GridMismatch("field lattice does not match the window grid and its dual")
    xig = G.xigrid
    rows = xig.h * xig.N * np.fft.ifft(
        np.fft.ifftshift(_parity(xig)[None, :] * G.values, axes=1), axis=1
    )
    out = grid.h * np.sum(_window_stack(g) * rows, axis=0)
    return SampledSignal(grid, out)


def equivalence_constant(g1: SampledSignal, g2: SampledSignal, F: MixedNormSpec) -> float:
    """``int |V_{g1} g2(x, xi)| omega_F(x, xi) nu_F(xi, 0) dx dxi``.

    Bounds the operator norm of ``V_{g1} V_{g2}^*`` on the field space ``F``.
    """
    _check_window(g1)
    _check_window(g2)
    V = analyze(g2, g1)
    w = lattice(F.omega, V.xgrid, V.xigrid)
    nu = F.nu(np.stack([V.xigrid.points, np.zeros(V.xigrid.N)], axis=-1))
    return float(V.cell * np.sum(np.abs(V.values) * w * np.asarray(nu)[None, :]))


def row_bounds(f: SampledSignal, g: SampledSignal, p: float, eta=None):
    """Per-frequency row norms of ``V_g f`` in ``L^p_eta`` and their common bound.

    Returns ``(rows, bound)`` with ``bound = ||f||_{L^p_eta} ||g||_{L^1}``
    weighted by the reflected translation weight; the modulation weight of a
    weighted ``L^p`` space is identically one.
    """
    eta = eta or unit_weight()
    omega = lp_translation_weight(eta)
    V = analyze(f, g)
    w = np.asarray(eta(V.xgrid.points))
    absV = np.abs(V.values) * w[:, None]
    rows = _weighted_norm(absV, float(p), V.xgrid.h, axis=0)
    g_norm = V.xgrid.h * np.sum(np.abs(g.values) * omega(-g.grid.points))
    return rows, lp_norm(f, p, eta) * g_norm


def synthesis_bound(G: TimeFrequencyMatrix, g: SampledSignal, p: float, eta=None):
    """``(||V_g^* G||_{L^p_eta}, ||g||_{L^p_eta} int |G| omega(x) nu(-xi))``."""
    eta = eta or unit_weight()
    omega = lp_translation_weight(eta)
    lhs = lp_norm(synthesize(G, g), p, eta)
    weight = Product((omega, unit_weight()))
    return lhs, lp_norm(g, p, eta) * weighted_l1(G, weight)


def pointwise_bound(f: SampledSignal, g: SampledSignal, p: float, eta=None):
    """``|V_g f(x, xi)|`` against ``omega(-x) ||f||_{L^p_eta} ||g||_{L^{p'}_{1/eta}}``.

    Returns ``(|V|, bound)`` as arrays on the lattice.
    """
    eta = eta or unit_weight()
    omega = lp_translation_weight(eta)
    V = analyze(f, g)
    inv = _Reciprocal(eta)
    scale = lp_norm(f, p, eta) * lp_norm(g, dual_exponent(p), inv)
    bound = omega(-V.xgrid.points)[:, None] * scale * np.ones((1, V.xigrid.N))
    return np.abs(V.values), bound


class _Reciprocal(Weight):
    def __init__(self, base: Weight):
        self.base = base
        self.dim = base.dim

    def log(self, x):
        return -self.base.log(x)
