"""Smooth test functions for distributional pairings.

A Probe bundles a scalar function, its derivative and a compact support
interval.  Pairings only ever evaluate f inside the support and df at
isolated points, so plain Python scalars are enough.
"""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Probe:
    f: object
    df: object
    support: tuple
    note: str = ""


def bump(width=1.0, center=0.0):
    """The classic compactly supported mollifier exp(-1/(1-u^2))."""
    w = float(width)
    c = float(center)

    def f(x):
        u = (x - c) / w
        if abs(u) >= 1.0 - 1e-12:
            return 0.0
        return math.exp(-1.0 / (1.0 - u * u))

    def df(x):
        u = (x - c) / w
        if abs(u) >= 1.0 - 1e-12:
            return 0.0
        den = 1.0 - u * u
        return math.exp(-1.0 / den) * (-2.0 * u / (w * den * den))

    return Probe(f, df, (c - w, c + w))


def gaussian_bump(sigma, width, center=0.0):
    """Gaussian modulated by a bump window, so the support is compact."""
    window = bump(width, center)
    s2 = float(sigma) ** 2
    c = float(center)

    def f(x):
        return math.exp(-((x - c) ** 2) / (2.0 * s2)) * window.f(x)

    def df(x):
        g = math.exp(-((x - c) ** 2) / (2.0 * s2))
        return g * (window.df(x) - (x - c) / s2 * window.f(x))

    return Probe(f, df, window.support)


def gaussian(sigma, center=0.0):
    """Plain Gaussian, truncated at 8 sigma; the mass outside the nominal
    support is below 1.3e-15 of the total and is reported in the note."""
    s = float(sigma)
    c = float(center)

    def f(x):
        return math.exp(-((x - c) ** 2) / (2.0 * s * s))

    def df(x):
        return -(x - c) / (s * s) * f(x)

    return Probe(
        f,
        df,
        (c - 8.0 * s, c + 8.0 * s),
        note="truncated gaussian; relative truncation error < 1.3e-15",
    )


def tabulated(xs, ys):
    """Cubic-spline probe through sample points; zero outside the table."""
    from scipy.interpolate import CubicSpline

    spline = CubicSpline(xs, ys)
    deriv = spline.derivative()
    lo, hi = float(xs[0]), float(xs[-1])

    def f(x):
        if x < lo or x > hi:
            return 0.0
        return float(spline(x))

    def df(x):
        if x < lo or x > hi:
            return 0.0
        return float(deriv(x))

    return Probe(f, df, (lo, hi), note="cubic spline through tabulated points")
