"""Branch-free trigonometric kernels.

Even combinations of trig functions written as functions of the squared
argument w.  For w > 0 they are the ordinary circular functions of sqrt(w),
for w < 0 they turn into the hyperbolic ones of sqrt(-w), with a short
Taylor series bridging w = 0.  Evaluating propagators through these kernels
keeps every matrix entry real when the local momentum squared changes sign,
with no complex square roots and no branch cuts.
"""

import numpy as np

# below this the direct formulas lose digits to cancellation; the 4-term
# series is exact to ~1e-26 there
SERIES_CUTOFF = 1e-6


def _dispatch(w, circular, hyperbolic, series):
    w = np.asarray(w, dtype=float)
    sp = np.sqrt(np.maximum(w, 0.0))
    sn = np.sqrt(np.maximum(-w, 0.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(
            w >= SERIES_CUTOFF,
            circular(sp),
            np.where(w <= -SERIES_CUTOFF, hyperbolic(sn), series(w)),
        )
    return out if out.ndim else float(out)


def cos_sqrt(w):
    """cos(sqrt(w)), continued to cosh(sqrt(-w)) for negative w."""
    return _dispatch(
        w,
        np.cos,
        np.cosh,
        lambda w: 1.0 - w / 2.0 + w * w / 24.0 - w * w * w / 720.0,
    )


def sinc_sqrt(w):
    """sin(sqrt(w))/sqrt(w), continued to sinh(sqrt(-w))/sqrt(-w)."""
    return _dispatch(
        w,
        lambda s: np.sin(s) / s,
        lambda s: np.sinh(s) / s,
        lambda w: 1.0 - w / 6.0 + w * w / 120.0 - w * w * w / 5040.0,
    )


def tanc_sqrt(w):
    """tan(sqrt(w))/sqrt(w), continued to tanh(sqrt(-w))/sqrt(-w).

    Has poles where cos(sqrt(w)) = 0 (w > 0 only); callers that scan
    through such points must treat them as interval boundaries.
    """
    return _dispatch(
        w,
        lambda s: np.tan(s) / s,
        lambda s: np.tanh(s) / s,
        lambda w: 1.0 + w / 3.0 + 2.0 * w * w / 15.0 + 17.0 * w * w * w / 315.0,
    )


def tanhc(z):
    """tanh(z)/z for real z, finite and equal to 1 at z = 0."""
    z = np.asarray(z, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        z2 = z * z
        out = np.where(
            np.abs(z) >= 1e-4,
            np.tanh(z) / np.where(z == 0.0, 1.0, z),
            1.0 - z2 / 3.0 + 2.0 * z2 * z2 / 15.0,
        )
    return out if out.ndim else float(out)
