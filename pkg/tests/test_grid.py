"""Transform contract: DC/tone exactness, quadrature oracle, Parseval, I/O."""

import numpy as np
import pytest

from herzfm.grid import (
    BoxSpec,
    EmptyRegionWarning,
    SampledFunction,
    SpectralFunction,
    forward_transform,
    inverse_transform,
    lebesgue_norm,
    load_binary,
    load_csv,
    save_binary,
    save_csv,
)

BOX1 = BoxSpec(1, 32.0, 2048)
BOX2 = BoxSpec(2, 16.0, 64)


def test_boxspec_validation():
    with pytest.raises(ValueError):
        BoxSpec(3, 32.0, 64)
    with pytest.raises(ValueError):
        BoxSpec(1, 48.0, 64)  # not a power of two
    with pytest.raises(ValueError):
        BoxSpec(1, 2.0, 64)  # too small to hold B_0
    with pytest.raises(ValueError):
        BoxSpec(1, 32.0, 100)


def test_constant_transforms_to_dc():
    f = SampledFunction.from_callable(BOX1, lambda x: np.ones_like(x))
    F = forward_transform(f)
    dc = BOX1.freq_index(0.0)
    assert abs(F.coefficients[dc] - BOX1.side) < 1e-10
    rest = F.coefficients.copy()
    rest[dc] = 0.0
    assert np.abs(rest).max() < 1e-10


@pytest.mark.parametrize("m0", [1, 5, -17, 100])
def test_pure_tone_is_lattice_delta(m0):
    xi0 = m0 / BOX1.side
    f = SampledFunction.from_callable(BOX1, lambda x: np.exp(2j * np.pi * xi0 * x))
    F = forward_transform(f)
    idx = BOX1.freq_index(xi0)
    assert abs(F.coefficients[idx] - BOX1.side) < 1e-9
    rest = F.coefficients.copy()
    rest[idx] = 0.0
    assert np.abs(rest).max() < 1e-9


def test_gaussian_matches_quadrature_oracle():
    # Oracle: direct rectangle quadrature of the Fourier integral on a
    # larger, finer grid, independent of the FFT path.
    f = SampledFunction.from_callable(BOX1, lambda x: np.exp(-np.pi * x**2))
    F = forward_transform(f)
    xq = np.linspace(-64.0, 64.0, 2**17, endpoint=False)
    for xi in [0.0, 0.25, 1.0, 3.5]:
        oracle = np.sum(np.exp(-np.pi * xq**2) * np.exp(-2j * np.pi * xq * xi)) * (
            xq[1] - xq[0]
        )
        got = F.coefficients[BOX1.freq_index(xi)]
        assert abs(got - oracle) < 1e-8
        # analytic check: the Gaussian is its own transform
        assert abs(got - np.exp(-np.pi * xi**2)) < 1e-8


@pytest.mark.parametrize("box", [BOX1, BOX2])
def test_round_trip_identity(box):
    rng = np.random.default_rng(7)
    for _ in range(10):
        v = rng.standard_normal(box.shape) + 1j * rng.standard_normal(box.shape)
        f = SampledFunction(box, v)
        g = inverse_transform(forward_transform(f))
        err = np.linalg.norm(g.values - v) / np.linalg.norm(v)
        assert err < 1e-12


def test_round_trip_many_seeds():
    rng = np.random.default_rng(2024)
    box = BoxSpec(1, 8.0, 256)
    for _ in range(100):
        v = rng.standard_normal(box.shape) + 1j * rng.standard_normal(box.shape)
        f = SampledFunction(box, v)
        g = inverse_transform(forward_transform(f))
        assert np.linalg.norm(g.values - v) / np.linalg.norm(v) < 1e-12


def test_dc_spectrum_gives_constant():
    F = SpectralFunction.zeros(BOX1)
    F.coefficients[BOX1.freq_index(0.0)] = BOX1.side
    f = inverse_transform(F)
    assert np.abs(f.values - 1.0).max() < 1e-12


@pytest.mark.parametrize("box", [BOX1, BOX2])
def test_parseval(box):
    rng = np.random.default_rng(11)
    v = rng.standard_normal(box.shape) + 1j * rng.standard_normal(box.shape)
    f = SampledFunction(box, v)
    F = forward_transform(f)
    space = lebesgue_norm(f, 2.0)
    freq = float(
        np.sqrt((np.abs(F.coefficients) ** 2).sum() / box.side**box.dimension)
    )
    assert abs(space - freq) / space < 1e-10


def test_lebesgue_norm_trivial_values():
    box = BoxSpec(1, 8.0, 512)
    f = SampledFunction.from_callable(box, lambda x: 2.0 * np.ones_like(x))
    assert abs(lebesgue_norm(f, 1.0) - 16.0) < 1e-12
    assert abs(lebesgue_norm(f, np.inf) - 2.0) < 1e-12


def test_lebesgue_quasi_norm_indicator():
    box = BoxSpec(1, 8.0, 512)
    f = SampledFunction.from_callable(
        box, lambda x: ((x >= 0.0) & (x < 1.0)).astype(float)
    )
    # (integral of 1^(1/2) over [0,1))^2 = 1, exact on the half-open grid
    assert abs(lebesgue_norm(f, 0.5) - 1.0) < 1e-12


def test_lebesgue_region_and_empty_region():
    box = BoxSpec(1, 8.0, 512)
    f = SampledFunction.from_callable(box, lambda x: np.ones_like(x))
    val = lebesgue_norm(f, 1.0, region=lambda x: np.abs(x) <= 1.0)
    assert abs(val - (2.0 + box.spacing)) < 1e-12  # 2/h + 1 points inside
    with pytest.warns(EmptyRegionWarning):
        out = lebesgue_norm(f, 1.0, region=lambda x: x > 100.0)
    assert out == 0.0


@pytest.mark.parametrize("p", [0.25, 0.5, 1.0, 2.0, np.inf])
def test_lebesgue_homogeneity_and_monotonicity(p):
    box = BoxSpec(1, 8.0, 256)
    rng = np.random.default_rng(3)
    v = rng.standard_normal(box.shape) + 1j * rng.standard_normal(box.shape)
    f = SampledFunction(box, v)
    c = -2.5 + 0.3j
    assert np.isclose(lebesgue_norm(c * f, p), abs(c) * lebesgue_norm(f, p), rtol=1e-12)
    g = SampledFunction(box, v * (1.0 + rng.random(box.shape)))  # |g| >= |f|
    assert lebesgue_norm(f, p) <= lebesgue_norm(g, p) * (1 + 1e-12)


def test_mismatched_box_rejected():
    f = SampledFunction.zeros(BOX1)
    g = SampledFunction.zeros(BoxSpec(1, 32.0, 1024))
    with pytest.raises(ValueError):
        _ = f + g
    with pytest.raises(ValueError):
        SampledFunction(BOX1, np.zeros(17))


def test_nan_rejected():
    v = np.zeros(BOX1.shape, dtype=complex)
    v[3] = np.nan
    with pytest.raises(ValueError):
        SampledFunction(BOX1, v)


def test_binary_round_trip_bit_exact(tmp_path):
    rng = np.random.default_rng(5)
    box = BoxSpec(1, 8.0, 128)
    f = SampledFunction(box, rng.standard_normal(box.shape) * (1 + 1j))
    p = tmp_path / "f.hzfm"
    save_binary(f, p)
    g = load_binary(p)
    assert g.box == box
    assert np.array_equal(g.values, f.values)


def test_csv_round_trip(tmp_path):
    rng = np.random.default_rng(6)
    box = BoxSpec(2, 4.0, 8)
    f = SampledFunction(box, rng.standard_normal(box.shape) + 1j * rng.random(box.shape))
    p = tmp_path / "f.csv"
    save_csv(f, p)
    g = load_csv(p)
    assert g.box == box
    np.testing.assert_allclose(g.values, f.values, rtol=0, atol=0)
