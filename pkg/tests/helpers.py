"""Shared draw helpers and an independent single-well reference solver."""

import numpy as np
from scipy.optimize import brentq

from bilayer1d import DoubleLayerSpec, cancellation_gap


def random_spec(rng, v_lo=-3.0, v_hi=3.0, l_lo=0.0, l_hi=2.0, r_lo=0.0, r_hi=2.0):
    """A random two-layer structure; widths may be zero."""
    v1, v2 = rng.uniform(v_lo, v_hi, 2)
    l1, l2 = rng.uniform(l_lo, l_hi, 2)
    r = rng.uniform(r_lo, r_hi)
    return DoubleLayerSpec.make(v1, l1, v2, l2, r)


def random_wavenumbers(rng, n):
    return rng.uniform(0.15, 3.0, n)


def single_well_kappas(depth, width):
    """Bound decay constants of one square well, from the textbook
    even/odd half-well conditions, written in product form so the
    residuals stay continuous through the tangent poles.

    depth > 0 is the well depth (potential -depth), width its length.
    """
    vmax = np.sqrt(depth)

    def even_res(kappa):
        q = np.sqrt(max(depth - kappa * kappa, 0.0))
        half = q * width / 2.0
        return q * np.sin(half) - kappa * np.cos(half)

    def odd_res(kappa):
        q = np.sqrt(max(depth - kappa * kappa, 0.0))
        half = q * width / 2.0
        return q * np.cos(half) + kappa * np.sin(half)

    kappas = []
    grid = np.linspace(vmax * (1.0 - 1e-12), 1e-12, 4096)
    for res in (even_res, odd_res):
        vals = np.array([res(k) for k in grid])
        sign = vals[:-1] * vals[1:] < 0.0
        for i in np.flatnonzero(sign):
            kappas.append(brentq(res, grid[i + 1], grid[i], xtol=1e-13))
    return np.sort(np.array(kappas))


def draw_cancelling_spec(rng):
    """Two wells plus the gap width that cancels the leading divergence
    at a random probe wavenumber; returns (spec, k).

    Draws are filtered so the internal cosines stay away from zero and
    the computed gap width is a usable positive length.
    """
    while True:
        v1 = -rng.uniform(0.2, 3.0)
        v2 = -rng.uniform(0.2, 3.0)
        l1 = rng.uniform(0.2, 2.0)
        l2 = rng.uniform(0.2, 2.0)
        k = rng.uniform(0.15, 3.0)
        k1 = np.sqrt(k * k - v1)
        k2 = np.sqrt(k * k - v2)
        if min(abs(np.cos(k1 * l1)), abs(np.cos(k2 * l2))) < 0.15:
            continue
        if min(abs(np.sin(k1 * l1)), abs(np.sin(k2 * l2))) < 0.15:
            continue
        trial = DoubleLayerSpec.make(v1, l1, v2, l2, 1.0)
        r_star = cancellation_gap(trial, k)
        if not np.isfinite(r_star) or not 0.05 < r_star < 5.0:
            continue
        return DoubleLayerSpec.make(v1, l1, v2, l2, r_star), k
