"""Branch-free trigonometric kernels used by the transfer-matrix layer."""

import numpy as np

from bilayer1d.kernels import (
    SERIES_CUTOFF,
    cos_sqrt,
    sinc_sqrt,
    tanc_sqrt,
    tanhc,
)

WIDE = np.concatenate(
    (
        -np.logspace(-10, 2.2, 120),
        np.logspace(-10, 2.2, 120),
        np.array([0.0]),
    )
)


def _z(w):
    # complex square root keeps one reference formula valid on both signs of w
    return np.lib.scimath.sqrt(np.asarray(w, dtype=complex))


def test_cos_sqrt_matches_reference():
    got = cos_sqrt(WIDE)
    want = np.cos(_z(WIDE))
    assert np.max(np.abs(got - want.real)) < 1e-12
    assert np.max(np.abs(want.imag)) < 1e-12


def test_sinc_sqrt_matches_reference():
    w = WIDE[np.abs(WIDE) > 1e-9]
    z = _z(w)
    got = sinc_sqrt(w)
    want = np.sin(z) / z
    assert np.max(np.abs(got - want.real) / np.abs(want.real)) < 1e-12


def test_values_at_zero():
    assert cos_sqrt(0.0) == 1.0
    assert sinc_sqrt(0.0) == 1.0
    assert tanc_sqrt(0.0) == 1.0
    assert tanhc(0.0) == 1.0


def test_series_joins_direct_branch_smoothly():
    # sample a dense band straddling the series/direct switchover
    for sign in (-1.0, 1.0):
        w = sign * np.linspace(0.2 * SERIES_CUTOFF, 5.0 * SERIES_CUTOFF, 4001)
        z = _z(w)
        assert np.max(np.abs(cos_sqrt(w) - np.cos(z).real)) < 1e-14
        assert np.max(np.abs(sinc_sqrt(w) - (np.sin(z) / z).real)) < 1e-14
        assert np.max(np.abs(tanc_sqrt(w) - (np.tan(z) / z).real)) < 1e-13


def test_pythagorean_identity():
    # cos_sqrt(w)^2 + w * sinc_sqrt(w)^2 == 1 holds on both signs of w;
    # normalize by the term size since cosh^2 - sinh^2 cancels catastrophically
    c2 = cos_sqrt(WIDE) ** 2
    vals = c2 + WIDE * sinc_sqrt(WIDE) ** 2
    assert np.max(np.abs(vals - 1.0) / np.maximum(1.0, np.abs(c2))) < 1e-13


def test_tanc_is_sinc_over_cos():
    w = WIDE[np.abs(cos_sqrt(WIDE)) > 0.1]
    assert np.max(np.abs(tanc_sqrt(w) - sinc_sqrt(w) / cos_sqrt(w))) < 1e-9


def test_tanhc_matches_reference_and_is_even():
    z = np.linspace(-30.0, 30.0, 1201)
    z = z[np.abs(z) > 1e-9]
    assert np.max(np.abs(tanhc(z) - np.tanh(z) / z)) < 1e-13
    assert np.max(np.abs(tanhc(z) - tanhc(-z))) == 0.0


def test_derivative_of_cos_sqrt():
    # d/dw cos(sqrt(w)) = -sinc(sqrt(w)) / 2
    rng = np.random.default_rng(7)
    w = np.concatenate((rng.uniform(-20, 20, 50), rng.uniform(-1e-4, 1e-4, 50)))
    h = 1e-6
    numeric = (cos_sqrt(w + h) - cos_sqrt(w - h)) / (2 * h)
    assert np.max(np.abs(numeric + 0.5 * sinc_sqrt(w))) < 1e-7


def test_vectorization_preserves_shape_and_scalars():
    arr = np.array([[0.0, 1.0], [-1.0, 4.0]])
    assert cos_sqrt(arr).shape == (2, 2)
    assert np.isscalar(float(cos_sqrt(2.0)))
    assert sinc_sqrt(np.array([])).shape == (0,)
