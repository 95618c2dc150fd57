"""Seeded Gaussian-mixture test signals."""
from __future__ import annotations

import numpy as np

from .signal import Grid1D, SampledSignal


def gaussian_mixture(
    grid: Grid1D,
    rng: np.random.Generator,
    max_terms: int = 4,
    dilation=(0.5, 2.0),
    shift_range: float = 3.0,
) -> SampledSignal:
    """``sum_i c_i M_{xi_i} T_{x_i} exp(-pi (t/a_i)^2)`` with on-grid shifts.

    Time shifts are multiples of ``h`` and frequency shifts multiples of
    ``1/(2T)``, both within ``+-shift_range``.
    """
    t = grid.points
    dual_step = 1.0 / (2.0 * grid.T)
    out = np.zeros(grid.N, dtype=complex)
    for _ in range(int(rng.integers(1, max_terms + 1))):
        c = complex(rng.normal(), rng.normal())
        a = rng.uniform(*dilation)
        x = grid.h * rng.integers(-int(shift_range / grid.h), int(shift_range / grid.h) + 1)
        xi = dual_step * rng.integers(-int(shift_range / dual_step),
                                      int(shift_range / dual_step) + 1)
        out += c * np.exp(2j * np.pi * xi * t) * np.exp(-np.pi * ((t - x) / a) ** 2)
    return SampledSignal(grid, out)


def corpus(grid: Grid1D, seed: int, count: int, **kw) -> list[SampledSignal]:
    rng = np.random.default_rng(seed)
    return [gaussian_mixture(grid, rng, **kw) for _ in range(count)]
