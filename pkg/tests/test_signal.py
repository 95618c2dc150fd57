import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tmib.corpus import corpus
from tmib.errors import GridMismatch, KindMismatch, OffGridShift
from tmib.signal import (
    Grid1D,
    MixedNormSpec,
    SampledField,
    SampledSignal,
    approximation_error,
    convolve,
    dual_exponent,
    fourier,
    gaussian,
    hausdorff_young,
    inner,
    inverse_fourier,
    lp_norm,
    lp_translation_weight,
    mixed_norm,
    modulate,
    multiply,
    translate,
    young,
)
from tmib.weights import Exponential, Polynomial, unit_weight

from oracles import mixed_norm_loops

ETA = Exponential(0.5)


def test_grid_validation():
    for N in (4, 12, 0):
        with pytest.raises(ValueError):
            Grid1D(8, N)
    with pytest.raises(ValueError):
        Grid1D(-1, 16)
    g = Grid1D(8, 256)
    assert g.h == 1 / 16
    assert g.points[0] == -8 and g.points[-1] == 8 - g.h
    assert g.dual().h == pytest.approx(1 / 16)
    assert g.dual().same_as(g)
    assert list(Grid1D(2, 8).bins) == list(range(-4, 4))


def test_signal_validation(grid):
    with pytest.raises(ValueError):
        SampledSignal(grid, np.ones(grid.N - 1))
    with pytest.raises(ValueError):
        SampledSignal(grid, np.full(grid.N, np.nan))
    s = SampledSignal(grid, np.ones(grid.N))
    with pytest.raises(ValueError):
        s.values[0] = 2


def test_fourier_of_gaussian(grid):
    F = fourier(gaussian(grid))
    assert F.grid.same_as(grid.dual())
    assert np.max(np.abs(F.values - np.exp(-np.pi * F.grid.points ** 2))) <= 1e-12


def test_fourier_of_impulse(grid):
    vals = np.zeros(grid.N)
    vals[grid.N // 2] = 1 / grid.h
    np.testing.assert_allclose(fourier(SampledSignal(grid, vals)).values, 1.0, atol=1e-13)


def test_fourier_intertwines_modulation(grid):
    g = gaussian(grid)
    xi0 = 1.5
    lhs = fourier(modulate(g, xi0))
    rhs = translate(fourier(g), xi0)
    assert np.max(np.abs(lhs.values - rhs.values)) <= 1e-12


def test_inverse_fourier_exact(signals):
    for f in signals:
        back = inverse_fourier(fourier(f))
        assert back.grid.same_as(f.grid)
        assert np.max(np.abs(back.values - f.values)) <= 1e-12
        assert np.max(np.abs(fourier(inverse_fourier(f)).values - f.values)) <= 1e-12


def test_fourier_on_non_selfdual_grid():
    grid = Grid1D(4, 64)
    F = fourier(gaussian(grid))
    assert F.grid.T == pytest.approx(4.0)
    assert F.grid.h == pytest.approx(1 / 8)
    assert np.max(np.abs(F.values - np.exp(-np.pi * F.grid.points ** 2))) <= 1e-12
    assert np.max(np.abs(inverse_fourier(F).values - gaussian(grid).values)) <= 1e-13


def test_parseval(signals):
    for f in signals:
        assert lp_norm(fourier(f), 2) == pytest.approx(lp_norm(f, 2), rel=1e-10)


def test_translate_modulate_examples(grid, signals):
    f = signals[0]
    assert np.array_equal(translate(f, 0).values, f.values)
    a = 17 * grid.h
    assert np.array_equal(translate(translate(f, a), -a).values, f.values)
    x0, xi0 = 0.75, 1.25
    tm = translate(modulate(f, xi0), x0)
    mt = modulate(translate(f, x0), xi0)
    np.testing.assert_allclose(tm.values, np.exp(-2j * np.pi * x0 * xi0) * mt.values, atol=1e-13)


def test_translate_is_sample_shift(grid):
    f = gaussian(grid)
    shifted = translate(f, 1.0)
    np.testing.assert_allclose(shifted.values, np.exp(-np.pi * (grid.points - 1) ** 2), atol=1e-15)


def test_off_grid_shifts_rejected(grid):
    f = gaussian(grid)
    with pytest.raises(OffGridShift):
        translate(f, grid.h / 3)
    with pytest.raises(OffGridShift):
        modulate(f, 0.01)
    translate(f, 5 * grid.h + 1e-12)


def test_convolution_examples(grid):
    g = gaussian(grid)
    delta = np.zeros(grid.N)
    delta[grid.N // 2] = 1 / grid.h
    out = convolve(g, SampledSignal(grid, delta))
    np.testing.assert_allclose(out.values, g.values, atol=1e-14)
    gg = convolve(g, g)
    target = 2 ** -0.5 * np.exp(-np.pi * grid.points ** 2 / 2)
    assert np.max(np.abs(gg.values - target)) <= 1e-8
    # quadrature oracle values of the closed form
    for t, v in [(0.0, 0.70710678), (0.5, 0.47746106), (1.25, 0.06075275)]:
        k = int(round((t + grid.T) / grid.h))
        assert abs(gg.values[k] - v) < 1e-8


def test_convolution_grid_mismatch(grid):
    with pytest.raises(GridMismatch):
        convolve(gaussian(grid), gaussian(Grid1D(4, 256)))
    with pytest.raises(GridMismatch):
        multiply(gaussian(grid), gaussian(Grid1D(8, 128)))


def test_convolution_as_sum_of_translates(grid, signals):
    f, g = signals[1], signals[2]
    acc = np.zeros(grid.N, dtype=complex)
    for j in range(grid.N):
        acc += g.values[j] * np.roll(f.values, j - grid.N // 2)
    np.testing.assert_allclose(convolve(g, f).values, grid.h * acc, atol=1e-12)


def test_multiplication_as_superposition_of_modulations(grid, signals):
    f, u = signals[3], signals[4]
    spectrum = fourier(u)
    acc = np.zeros(grid.N, dtype=complex)
    for n, xi in enumerate(spectrum.grid.points):
        acc += spectrum.values[n] * modulate(f, xi).values
    np.testing.assert_allclose(multiply(u, f).values, spectrum.grid.h * acc, atol=1e-12)


def test_young_l1(grid):
    for f, g in zip(corpus(grid, 7, 50), corpus(grid, 8, 50)):
        lhs, rhs = young(f, g, 1, 1)
        assert lhs <= rhs * (1 + 1e-12)


@pytest.mark.parametrize("p,q", [(1, 2), (2, 1), (1.5, 1.5), (1.25, 4 / 3), (2, 2)])
def test_young_general(signals, p, q):
    for f, g in zip(signals, signals[1:]):
        lhs, rhs = young(f, g, p, q)
        assert lhs <= rhs * (1 + 1e-6)


@pytest.mark.parametrize("p", [1, 1.2, 1.5, 2])
def test_hausdorff_young(signals, p):
    for f in signals:
        lhs, rhs = hausdorff_young(f, p)
        assert lhs <= rhs * (1 + 1e-6)


def test_lp_norm_examples(grid):
    one = SampledSignal(grid, np.ones(grid.N))
    assert lp_norm(one, 1) == pytest.approx(2 * grid.T, rel=1e-15)
    g = gaussian(grid)
    assert lp_norm(g, 2) == pytest.approx(0.8408964152537146, abs=1e-10)
    assert lp_norm(g, math.inf) == 1.0
    assert lp_norm(g, 1, unit_weight()) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        lp_norm(g, 0.5)


def test_lp_norm_weighted_large_p(grid):
    # the max-scaled branch agrees with the naive formula when nothing overflows
    f = gaussian(grid, 2.0)
    w = Polynomial(1.0)
    naive = (grid.h * np.sum(np.abs(w(grid.points) * f.values) ** 3.5)) ** (1 / 3.5)
    assert lp_norm(f, 3.5, w) == pytest.approx(naive, rel=1e-13)


def test_dual_exponent():
    assert dual_exponent(1) == math.inf
    assert dual_exponent(math.inf) == 1
    assert dual_exponent(2) == 2
    assert dual_exponent(3) == pytest.approx(1.5)


def _field(rng, xgrid, xigrid):
    vals = rng.normal(size=(xgrid.N, xigrid.N)) + 1j * rng.normal(size=(xgrid.N, xigrid.N))
    return SampledField(xgrid, xigrid, vals)


def test_mixed_norm_separable(rng):
    xg, xig = Grid1D(4, 32), Grid1D(2, 16)
    a = rng.normal(size=32) + 1j * rng.normal(size=32)
    b = rng.normal(size=16)
    G = SampledField(xg, xig, np.outer(a, b))
    spec = MixedNormSpec.mixed(1.5, 3, Exponential(0.2), Polynomial(1))
    expected = lp_norm(SampledSignal(xg, a), 1.5, Exponential(0.2)) * \
        lp_norm(SampledSignal(xig, b), 3, Polynomial(1))
    assert mixed_norm(G, spec) == pytest.approx(expected, rel=1e-12)


def test_mixed_norm_l22_is_scaled_frobenius(rng):
    xg, xig = Grid1D(4, 32), Grid1D(2, 16)
    G = _field(rng, xg, xig)
    expected = np.linalg.norm(G.values) * math.sqrt(xg.h * xig.h)
    assert mixed_norm(G, MixedNormSpec.mixed(2, 2)) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("p,q", [(1, math.inf), (math.inf, 1), (2, 1), (3, 1.5)])
def test_mixed_norm_matches_loops(rng, p, q):
    xg, xig = Grid1D(4, 16), Grid1D(2, 8)
    G = _field(rng, xg, xig)
    e1, e2 = Exponential(0.3), Polynomial(2)
    spec = MixedNormSpec.mixed(p, q, e1, e2)
    oracle = mixed_norm_loops(G.values, xg.h, xig.h, e1(xg.points), e2(xig.points), p, q)
    assert mixed_norm(G, spec) == pytest.approx(oracle, rel=1e-12)


def test_mixed_norm_rejects_tensor_kinds(rng):
    G = _field(rng, Grid1D(2, 8), Grid1D(2, 8))
    for spec in (MixedNormSpec.nuclear(), MixedNormSpec.spectral()):
        with pytest.raises(KindMismatch):
            mixed_norm(G, spec)
    with pytest.raises(KindMismatch):
        MixedNormSpec("trace")


def test_mixed_spec_derived_weights():
    spec = MixedNormSpec.mixed(2, 1, Exponential(0.5), Polynomial(2))
    pt = np.array([2.0, 1.0])
    assert float(spec.omega(pt)) == pytest.approx(math.e * 4)
    assert float(spec.nu(pt)) == 1.0
    assert spec.label() == "L^{2,1}"
    assert MixedNormSpec.mixed(1, math.inf).label() == "L^{1,inf}"


def test_inner_product(grid):
    g1 = gaussian(grid)
    assert inner(g1, g1) == pytest.approx(2 ** -0.5, abs=1e-14)


@pytest.mark.parametrize("p", [1, 2, math.inf])
@pytest.mark.parametrize("eta", [ETA, Polynomial(2), unit_weight()], ids=["exp", "poly", "unit"])
def test_convolution_module_inequality(grid, p, eta):
    omega = lp_translation_weight(eta)
    fs, gs = corpus(grid, 31, 20), corpus(grid, 32, 20)
    for f, g in zip(fs, gs):
        lhs = lp_norm(convolve(g, f), p, eta)
        rhs = lp_norm(g, 1, omega) * lp_norm(f, p, eta)
        assert lhs <= rhs * (1 + 1e-9)


@pytest.mark.parametrize("p", [1, 2, math.inf])
def test_multiplier_inequality(grid, p):
    # the modulation weight of L^p_eta is identically one
    for f, u in zip(corpus(grid, 41, 15), corpus(grid, 42, 15)):
        lhs = lp_norm(multiply(u, f), p, ETA)
        rhs = lp_norm(inverse_fourier(u), 1) * lp_norm(f, p, ETA)
        assert lhs <= rhs * (1 + 1e-9)


def test_approximation_identity(grid):
    f = gaussian(grid)
    errs = [approximation_error(f, 2 ** k, 2, ETA) for k in range(2, 7)]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert errs[-1] <= 1e-3


def test_approximation_identity_mixture(signals):
    for f in signals[:3]:
        errs = [approximation_error(f, 2 ** k, 1) for k in range(2, 7)]
        assert all(b < a for a, b in zip(errs, errs[1:]))


@settings(max_examples=40, deadline=None)
@given(st.integers(-100, 100), st.integers(-100, 100))
def test_translation_group_law(a, b):
    grid = Grid1D(4, 64)
    f = gaussian(grid, 0.7, 0.5)
    lhs = translate(translate(f, a * grid.h), b * grid.h)
    assert np.array_equal(lhs.values, translate(f, (a + b) * grid.h).values)
