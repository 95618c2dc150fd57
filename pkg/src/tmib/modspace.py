"""Modulation-space norms ``||f||_{M^F} = ||V_g f||_F`` and their embedding checks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import KindMismatch, ZeroSignal, ZeroWindow
from .signal import (
    Grid1D,
    MixedNormSpec,
    SampledField,
    SampledSignal,
    default_grid,
    dual_exponent,
    lp_norm,
    lp_translation_weight,
    mixed_norm,
    modulate,
    translate,
    weighted_l1,
)
from .stft import _Reciprocal, analyze, equivalence_constant, gaussian_window
from .tensor import KernelMatrix, nuclear_norm, spectral_norm
from .weights import Exponential, Polynomial, Product, Table, Weight, unit_weight


def field_norm(G: SampledField, F: MixedNormSpec) -> float:
    """Norm of a time-frequency field in ``F``, dispatching on the kind."""
    if F.kind == "mixed":
        return mixed_norm(G, F)
    K = KernelMatrix.from_field(G)
    if F.kind == "nuclear":
        return nuclear_norm(K)
    if F.kind == "spectral":
        return spectral_norm(K)
    raise KindMismatch(F.kind)


@dataclass(frozen=True, eq=False)
class ModulationSpaceSpec:
    F: MixedNormSpec
    window: SampledSignal
    window_norm_sq: float = field(init=False)

    def __post_init__(self):
        if not np.any(self.window.values):
            raise ZeroWindow("modulation space needs a nonzero window")
        object.__setattr__(self, "window_norm_sq", lp_norm(self.window, 2) ** 2)

    @classmethod
    def default(cls, F: Optional[MixedNormSpec] = None, grid: Optional[Grid1D] = None):
        return cls(F or MixedNormSpec.mixed(2, 2), gaussian_window(grid or default_grid()))


def modulation_norm(f: SampledSignal, spec: ModulationSpaceSpec) -> float:
    return field_norm(analyze(f, spec.window), spec.F)


def _restrict(weight: Weight, axis: int, grid: Grid1D) -> Weight:
    """1D weight ``t -> weight(t e_axis)``."""
    if isinstance(weight, Product) and all(f.dim == 1 for f in weight.factors) \
            and len(weight.factors) == 2:
        other = weight.factors[1 - axis]
        const = float(other(0.0))
        base = weight.factors[axis]
        if math.isclose(const, 1.0, rel_tol=1e-15):
            return base
        return Table(grid.points, const * base(grid.points))
    if isinstance(weight, (Exponential, Polynomial)) and weight.dim == 2:
        return type(weight)(weight.rate if isinstance(weight, Exponential) else weight.degree)
    pts = np.zeros((grid.N, 2))
    pts[:, axis] = grid.points
    return Table(grid.points, np.asarray(weight(pts)))


def _reflect(weight: Weight) -> Weight:
    if isinstance(weight, Table):
        return weight.reflected()
    if weight.is_even:
        return weight
    raise ValueError("cannot reflect this weight")


def _is_unit(w: Weight) -> bool:
    return (isinstance(w, Exponential) and w.rate == 0) or (isinstance(w, Polynomial) and w.degree == 0)


def _times(a: Weight, b: Weight, grid: Grid1D) -> Weight:
    if _is_unit(a):
        return b
    if _is_unit(b):
        return a
    if isinstance(a, Exponential) and isinstance(b, Exponential):
        return Exponential(a.rate + b.rate)
    if isinstance(a, Polynomial) and isinstance(b, Polynomial):
        return Polynomial(a.degree + b.degree)
    pts = grid.points
    return Table(pts, np.asarray(a(pts)) * np.asarray(b(pts)))


def reduced_weights(F: MixedNormSpec, grid: Optional[Grid1D] = None) -> tuple[Weight, Weight]:
    """``(omega_F(x, 0) nu_F(0, x), omega_F(0, -x))`` as 1D weights.

    Closed forms are kept when the pieces combine within one kind; otherwise
    the result is tabulated on ``grid``.
    """
    grid = grid or default_grid()
    omega_red = _times(_restrict(F.omega, 0, grid), _restrict(F.nu, 1, grid), grid)
    nu_red = _reflect(_restrict(F.omega, 1, grid))
    return omega_red, nu_red


def translation_bound(f: SampledSignal, x0: float, spec: ModulationSpaceSpec):
    """``(||T_x0 f||_{M^F}, omega_reduced(x0) ||f||_{M^F})``."""
    omega_red, _ = reduced_weights(spec.F, f.grid)
    lhs = modulation_norm(translate(f, x0), spec)
    return lhs, float(omega_red(x0)) * modulation_norm(f, spec)


def modulation_bound(f: SampledSignal, xi0: float, spec: ModulationSpaceSpec):
    """``(||M_xi0 f||_{M^F}, omega_F(0, xi0) ||f||_{M^F})``.

    ``M_xi0 = M_{-(-xi0)}`` so the modulation weight is read at ``-xi0``,
    where the reduced weight equals ``omega_F(0, xi0)``.
    """
    _, nu_red = reduced_weights(spec.F, f.grid.dual())
    lhs = modulation_norm(modulate(f, xi0), spec)
    return lhs, float(nu_red(-xi0)) * modulation_norm(f, spec)


def _lp_weights(p: float, eta: Optional[Weight]) -> tuple[Weight, Weight]:
    eta = eta or unit_weight()
    return eta, lp_translation_weight(eta)


def verify_embedding_min(
    f: SampledSignal, spec: ModulationSpaceSpec, p: float, eta: Optional[Weight] = None
) -> tuple[float, float]:
    """``||f||_{L^p_eta}`` against its bound through ``M^{L^1_{omega (x) nu}}``.

    ``rhs = ||g||_{L^p_eta} ||V_g f||_{L^1_{omega (x) nu}} / ||g||_2^2``.
    """
    eta, omega = _lp_weights(p, eta)
    g = spec.window
    lhs = lp_norm(f, p, eta)
    l1 = weighted_l1(analyze(f, g), Product((omega, unit_weight())))
    return lhs, lp_norm(g, p, eta) * l1 / spec.window_norm_sq


def verify_embedding_max(
    f: SampledSignal, g: SampledSignal, p: float, eta: Optional[Weight] = None
) -> tuple[float, float]:
    """``(max |V_g f| / (omega(x) nu(xi)), ||f||_{L^{p'}_{1/eta}} ||g||_{L^p_eta})``."""
    eta, omega = _lp_weights(p, eta)
    V = analyze(f, g)
    scaled = np.abs(V.values) / np.asarray(omega(V.xgrid.points))[:, None]
    bound = lp_norm(f, dual_exponent(p), _Reciprocal(eta)) * lp_norm(g, p, eta)
    return float(scaled.max()), bound


def window_equivalence_check(
    f: SampledSignal, g1: SampledSignal, g2: SampledSignal, F: MixedNormSpec
) -> tuple[float, float]:
    """``(||V_{g1} f||_F / ||V_{g2} f||_F, C(g1, g2) / ||g2||_2^2)``.

    Raises :class:`ZeroSignal` when the ratio is undefined.
    """
    den = field_norm(analyze(f, g2), F)
    if den == 0:
        raise ZeroSignal("window ratio undefined for a zero signal")
    num = field_norm(analyze(f, g1), F)
    return num / den, equivalence_constant(g1, g2, F) / lp_norm(g2, 2) ** 2
