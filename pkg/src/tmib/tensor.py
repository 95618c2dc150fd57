"""Tensor norms of sampled kernels and the ``L^{p1} (x)_pi L^{p2}`` estimates.

Singular values of a sample matrix are scaled by ``sqrt(h_row h_col)`` so that
the Frobenius norm equals the ``L^2`` quadrature norm of the kernel; the sum
and the maximum of the scaled singular values then discretise the projective
and injective norms on ``L^2 (x) L^2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import ExponentRange, GridMismatch, SvdFailure
from .signal import (
    Grid1D,
    SampledField,
    SampledSignal,
    convolve,
    inverse_fourier,
    lp_norm,
    multiply,
)
from .stft import analyze, gaussian_window


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    values: np.ndarray
    h_row: float = 1.0
    h_col: float = 1.0

    def __post_init__(self):
        vals = np.array(self.values, dtype=complex)
        if vals.ndim != 2 or not np.all(np.isfinite(vals)):
            raise ValueError("kernel must be a finite 2D array")
        if self.h_row <= 0 or self.h_col <= 0:
            raise ValueError("grid steps must be positive")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_field(cls, G: SampledField) -> "KernelMatrix":
        return cls(G.values, G.xgrid.h, G.xigrid.h)


def singular_values(K: KernelMatrix) -> np.ndarray:
    try:
        s = np.linalg.svd(K.values, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise SvdFailure(str(exc)) from exc
    return s * math.sqrt(K.h_row * K.h_col)


def nuclear_norm(K: KernelMatrix) -> float:
    return float(np.sum(singular_values(K)))


def spectral_norm(K: KernelMatrix) -> float:
    s = singular_values(K)
    return float(s[0]) if s.size else 0.0


def frobenius_norm(K: KernelMatrix) -> float:
    s = singular_values(K)
    return float(np.sqrt(np.sum(s * s)))


@dataclass(frozen=True, eq=False)
class Decomposition:
    """``sum_j lam_j phi_j (x) psi_j`` with ``phi_j`` in time, ``psi_j`` in frequency."""

    terms: tuple

    def __post_init__(self):
        terms = tuple((complex(lam), phi, psi) for lam, phi, psi in self.terms)
        if not terms:
            raise ValueError("decomposition needs at least one term")
        object.__setattr__(self, "terms", terms)

    def assemble(self) -> KernelMatrix:
        _, phi0, psi0 = self.terms[0]
        for _, phi, psi in self.terms:
            if not (phi.grid.same_as(phi0.grid) and psi.grid.same_as(psi0.grid)):
                raise GridMismatch("decomposition terms live on different grids")
        mat = sum(lam * np.outer(phi.values, psi.values) for lam, phi, psi in self.terms)
        return KernelMatrix(mat, phi0.grid.h, psi0.grid.h)


def pi_upper_bound(D: Decomposition, p1: float, p2: float) -> float:
    """``sum_j |lam_j| ||phi_j||_{p1} ||psi_j||_{p2}``."""
    _, phi0, psi0 = D.terms[0]
    total = 0.0
    for lam, phi, psi in D.terms:
        if not (phi.grid.same_as(phi0.grid) and psi.grid.same_as(psi0.grid)):
            raise GridMismatch("decomposition terms live on different grids")
        total += abs(lam) * lp_norm(phi, p1) * lp_norm(psi, p2)
    return total


def young_exponent(p1: float, p2: float) -> float:
    """``r`` with ``1 + 1/p1 = 1/r + 1/p2``, for ``1 <= p2 <= p1 <= 2``."""
    if not (1 <= p2 <= p1 <= 2):
        raise ExponentRange(f"need 1 <= p2 <= p1 <= 2, got p1={p1}, p2={p2}")
    return p1 * p2 / (p1 * p2 + p2 - p1)


def synthesize_elementary(phi: SampledSignal, psi: SampledSignal, g: SampledSignal) -> SampledSignal:
    """``V_g^*(phi (x) psi) = (F^{-1} psi) (phi * g)``."""
    if not psi.grid.same_as(phi.grid.dual()):
        raise GridMismatch("psi must live on the dual grid of phi")
    return multiply(inverse_fourier(psi), convolve(phi, g))


def verify_elementary_synthesis(
    phi: SampledSignal, psi: SampledSignal, g: SampledSignal, p1: float, p2: float
) -> tuple[float, float]:
    """``(||V_g^*(phi (x) psi)||_1, ||psi||_{p1} ||phi||_{p2} ||g||_r)``."""
    r = young_exponent(p1, p2)
    lhs = lp_norm(synthesize_elementary(phi, psi, g), 1)
    rhs = lp_norm(psi, p1) * lp_norm(phi, p2) * lp_norm(g, r)
    return lhs, rhs


@dataclass(frozen=True)
class SeparationRow:
    T: float
    N: int
    nuclear: float
    frobenius: float
    spectral: float
    ratio: Optional[float]


def slow_decay(grid: Grid1D) -> SampledSignal:
    """``1 / (1 + |t|)``: square integrable and bounded, not integrable."""
    return SampledSignal(grid, 1.0 / (1.0 + np.abs(grid.points)))


def separation_demo(
    family=slow_decay,
    ladder: Sequence[tuple[float, int]] = ((4.0, 128), (8.0, 256), (16.0, 512)),
    window=gaussian_window,
) -> list[SeparationRow]:
    """Nuclear-to-Frobenius ratios of ``V_g f`` as the domain grows.

    ``family`` and ``window`` map a grid to a signal.  A zero signal yields a
    row with ``ratio=None``.
    """
    rows = []
    for T, N in ladder:
        grid = Grid1D(T, N)
        K = KernelMatrix.from_field(analyze(family(grid), window(grid)))
        s = singular_values(K)
        nuc, fro = float(s.sum()), float(np.sqrt(np.sum(s * s)))
        ratio = nuc / fro if fro > 0 else None
        rows.append(SeparationRow(T, N, nuc, fro, float(s[0]), ratio))
    return rows


def strictly_increasing(values: Iterable[Optional[float]]) -> bool:
    vals = list(values)
    if any(v is None for v in vals):
        return False
    return all(b > a for a, b in zip(vals, vals[1:]))
