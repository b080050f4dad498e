"""Propagation matrices, scattering amplitudes and piecewise wavefunctions.

The two-layer structure is handled with real 2x2 interval propagators
acting on (psi, psi').  Each propagator entry is built from the kernels
module, so entries stay real both for travelling waves (local momentum
squared positive) and under barriers or on the bound half line (negative).

Two independent evaluation routes are kept on purpose:

* a product of the three interval propagators,
* the fully expanded entry formulas of that product,

and likewise for the amplitudes a, b (monodromy-based route versus the
directly expanded closed form).  Tests hold the routes against each other.
"""

import cmath
from dataclasses import dataclass

import numpy as np

from .core import LayerSpec, as_wavenumber, validate_spec
from .kernels import cos_sqrt, sinc_sqrt


class ScatteringPoleError(ArithmeticError):
    """Raised when a = 0, i.e. 1/a and b/a are not defined.

    For real k this cannot happen (|a| >= 1); hitting it signals a
    bound-state condition probed through the scattering formulas.
    """


class NotAnEigenvalueError(ValueError):
    """Raised when a bound-mode wavefunction is requested off eigenvalue."""


@dataclass(frozen=True)
class TransferMatrix:
    """Real propagator for (psi, psi') across an interval; det = 1."""

    l11: float
    l12: float
    l21: float
    l22: float

    @property
    def mat(self):
        return np.array([[self.l11, self.l12], [self.l21, self.l22]])

    @property
    def det(self):
        return self.l11 * self.l22 - self.l12 * self.l21

    def det_defect(self):
        scale = max(1.0, abs(self.l11 * self.l22), abs(self.l12 * self.l21))
        return abs(self.det - 1.0) / scale

    def __matmul__(self, other):
        return TransferMatrix(
            self.l11 * other.l11 + self.l12 * other.l21,
            self.l11 * other.l12 + self.l12 * other.l22,
            self.l21 * other.l11 + self.l22 * other.l21,
            self.l21 * other.l12 + self.l22 * other.l22,
        )


def _layer_parts(v, l, k2):
    """cos, sin/k_loc and k_loc*sin for one slab, all real.

    k_loc^2 = k2 - v may have either sign; the kernels absorb the switch
    between oscillating and evanescent behaviour.
    """
    q = k2 - v
    w = q * l * l
    c = cos_sqrt(w)
    sl = l * sinc_sqrt(w)  # sin(k_loc*l)/k_loc
    ks = q * sl  # k_loc*sin(k_loc*l)
    return c, sl, ks


def layer_matrix(layer, k):
    """Propagator across a single constant slab."""
    wn = as_wavenumber(k)
    c, sl, ks = _layer_parts(layer.v, layer.l, wn.k2)
    return TransferMatrix(c, sl, -ks, c)


def matrix_entries(spec, k2):
    """Expanded entries of the total propagator as functions of k^2.

    Vectorized over k2 (an array of energies is fine); used both by the
    scalar total_matrix and by root scans on the bound half line.
    """
    c1, sl1, ks1 = _layer_parts(spec.v1, spec.l1, k2)
    c2, sl2, ks2 = _layer_parts(spec.v2, spec.l2, k2)
    c0, sl0, ks0 = _layer_parts(0.0, spec.r, k2)

    l11 = (c1 * c2 - ks1 * sl2) * c0 - ks1 * c2 * sl0 - ks0 * c1 * sl2
    l12 = (sl1 * c2 + c1 * sl2) * c0 + c1 * c2 * sl0 - ks0 * sl1 * sl2
    l21 = -(ks1 * c2 + c1 * ks2) * c0 - ks0 * c1 * c2 + ks1 * ks2 * sl0
    l22 = (c1 * c2 - sl1 * ks2) * c0 - ks0 * sl1 * c2 - ks2 * c1 * sl0
    return l11, l12, l21, l22


def total_matrix(spec, k, method="explicit"):
    """Propagator across the whole structure, layer 1 -> gap -> layer 2.

    method="explicit" evaluates the expanded entry formulas directly;
    method="product" multiplies the three interval propagators.  Both
    agree to roundoff and are kept as mutual checks.
    """
    validate_spec(spec)
    wn = as_wavenumber(k)
    if method == "product":
        m1 = layer_matrix(spec.layer1, wn)
        m0 = layer_matrix(LayerSpec(0.0, spec.r), wn)
        m2 = layer_matrix(spec.layer2, wn)
        return m2 @ (m0 @ m1)
    if method != "explicit":
        raise ValueError(f"unknown method {method!r}")
    return TransferMatrix(*matrix_entries(spec, wn.k2))


@dataclass(frozen=True)
class ScatteringData:
    """Right-incidence amplitudes: transmitted 1/a, reflected b/a."""

    a: complex
    b: complex

    def unitarity_defect(self):
        """| |a|^2 - |b|^2 - 1 |, zero for real k by flux conservation."""
        return abs(abs(self.a) ** 2 - abs(self.b) ** 2 - 1.0)

    def monodromy(self):
        """The complex 2x2 [[a, b], [b*, a*]] in the plane-wave basis."""
        return np.array(
            [[self.a, self.b], [np.conj(self.b), np.conj(self.a)]]
        )


def _amplitudes_from_matrix(m, kc, extent):
    d = m.l11 + m.l22 - 1j * (kc * m.l12 - m.l21 / kc)
    p = m.l11 - m.l22
    q = kc * m.l12 + m.l21 / kc
    a = 0.5 * d * cmath.exp(1j * kc * extent)
    b = 0.5 * (p - 1j * q) * cmath.exp(-1j * kc * extent)
    return ScatteringData(a, b)


def scattering_data(spec, k, method="closed"):
    """Amplitudes a(k), b(k) of the structure.

    method="closed" uses the expanded amplitude formulas in which every
    1/cos factor has been multiplied out, so they hold at all k where
    the amplitudes themselves are finite.  method="matrix" derives the
    amplitudes from the total propagator.  Agreement of the two routes
    is a library invariant (tested to 1e-10 relative).
    """
    validate_spec(spec)
    wn = as_wavenumber(k)
    if method == "matrix":
        return _amplitudes_from_matrix(
            total_matrix(spec, wn), wn.k, spec.extent
        )
    if method != "closed":
        raise ValueError(f"unknown method {method!r}")

    kc = wn.k
    k2 = wn.k2
    c1, sl1, ks1 = _layer_parts(spec.v1, spec.l1, k2)
    c2, sl2, ks2 = _layer_parts(spec.v2, spec.l2, k2)
    r = spec.r
    eikr = cmath.exp(1j * kc * r)
    emikr = 1.0 / eikr
    sin_kr = cmath.sin(kc * r)
    cos_kr = cmath.cos(kc * r)
    kk = kc * kc

    a = (
        c1 * c2 * emikr
        - 0.5j
        * ((kc * sl1 + ks1 / kc) * c2 + (kc * sl2 + ks2 / kc) * c1)
        * emikr
        + 0.5
        * (
            1j * (kk * sl1 * sl2 + ks1 * ks2 / kk) * sin_kr
            - (ks1 * sl2 + sl1 * ks2) * cos_kr
        )
    ) * cmath.exp(1j * kc * spec.extent)

    b = (
        0.5j
        * (
            (ks1 / kc - kc * sl1) * c2 * eikr
            + (ks2 / kc - kc * sl2) * c1 * emikr
            + (
                (kk * sl1 * sl2 - ks1 * ks2 / kk) * sin_kr
                + 1j * (ks1 * sl2 - sl1 * ks2) * cos_kr
            )
        )
        * cmath.exp(-1j * kc * spec.extent)
    )
    return ScatteringData(a, b)


def amplitude_grid(spec, ks, method="closed"):
    """Amplitudes over an array of real wavenumbers, as (a, b) arrays.

    Vectorized counterpart of scattering_data for whole k-grids, keeping
    the same two routes: method="closed" evaluates the expanded amplitude
    formulas elementwise, method="matrix" assembles the three interval
    propagators and multiplies them before reading the amplitudes off the
    product.  Both match the pointwise routes to roundoff (a module
    invariant, tested at 1e-12 relative).
    """
    validate_spec(spec)
    kc = np.asarray(ks, dtype=float)
    if kc.size and not np.all(kc > 0.0):
        raise ValueError("amplitude_grid expects positive real wavenumbers")
    k2 = kc * kc
    c1, sl1, ks1 = _layer_parts(spec.v1, spec.l1, k2)
    c2, sl2, ks2 = _layer_parts(spec.v2, spec.l2, k2)
    extent_phase = np.exp(1j * kc * spec.extent)

    if method == "matrix":
        c0, sl0, ks0 = _layer_parts(0.0, spec.r, k2)
        i11 = c0 * c1 - sl0 * ks1
        i12 = c0 * sl1 + sl0 * c1
        i21 = -ks0 * c1 - c0 * ks1
        i22 = -ks0 * sl1 + c0 * c1
        l11 = c2 * i11 + sl2 * i21
        l12 = c2 * i12 + sl2 * i22
        l21 = -ks2 * i11 + c2 * i21
        l22 = -ks2 * i12 + c2 * i22
        d = l11 + l22 - 1j * (kc * l12 - l21 / kc)
        p = l11 - l22
        q = kc * l12 + l21 / kc
        return 0.5 * d * extent_phase, 0.5 * (p - 1j * q) / extent_phase
    if method != "closed":
        raise ValueError(f"unknown method {method!r}")

    r = spec.r
    eikr = np.exp(1j * kc * r)
    emikr = 1.0 / eikr
    sin_kr = np.sin(kc * r)
    cos_kr = np.cos(kc * r)
    kk = k2
    a = (
        c1 * c2 * emikr
        - 0.5j
        * ((kc * sl1 + ks1 / kc) * c2 + (kc * sl2 + ks2 / kc) * c1)
        * emikr
        + 0.5
        * (
            1j * (kk * sl1 * sl2 + ks1 * ks2 / kk) * sin_kr
            - (ks1 * sl2 + sl1 * ks2) * cos_kr
        )
    ) * extent_phase
    b = (
        0.5j
        * (
            (ks1 / kc - kc * sl1) * c2 * eikr
            + (ks2 / kc - kc * sl2) * c1 * emikr
            + (
                (kk * sl1 * sl2 - ks1 * ks2 / kk) * sin_kr
                + 1j * (ks1 * sl2 - sl1 * ks2) * cos_kr
            )
        )
        / extent_phase
    )
    return a, b


@dataclass(frozen=True)
class RTCoefficients:
    """Reflection/transmission amplitudes for both incidence sides."""

    r_right: complex
    t: complex
    r_left: complex

    @property
    def transmission(self):
        return abs(self.t) ** 2

    @property
    def reflection(self):
        return abs(self.r_right) ** 2


def reflection_transmission(spec, k):
    """R and T amplitudes at real k; transmission is |t|^2 = 1/|a|^2."""
    wn = as_wavenumber(k)
    if not wn.is_real:
        raise ValueError("reflection/transmission requires real k")
    sd = scattering_data(spec, wn)
    if abs(sd.a) < 1e-12 * (1.0 + abs(sd.b)):
        raise ScatteringPoleError(
            "a(k) vanished at real k; amplitudes 1/a, b/a undefined"
        )
    return RTCoefficients(
        r_right=sd.b / sd.a,
        t=1.0 / sd.a,
        r_left=-np.conj(sd.b) / sd.a,
    )


def bound_state_residual(spec, kappa):
    """Real function of kappa > 0 whose zeros are the bound levels.

    Equals l11 + l22 + kappa*l12 + l21/kappa of the total propagator
    evaluated on the bound half line; identical in zero set to
    a(i*kappa) = 0 and free of poles on kappa > 0.
    """
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    m = total_matrix(spec, as_wavenumber(1j * kappa))
    return m.l11 + m.l22 + kappa * m.l12 + m.l21 / kappa


# ---------------------------------------------------------------------------
# piecewise wavefunction


class PiecewiseWave:
    """Wavefunction of the structure, evaluable on all five regions.

    Scattering mode describes a unit wave incident from the right
    (exp(-ikx) on the left half line); bound mode describes the decaying
    eigenfunction, normalised to psi(0) = 1.
    """

    def __init__(self, spec, k, mode="scatter"):
        validate_spec(spec)
        wn = as_wavenumber(k)
        if mode == "scatter" and not wn.is_real:
            raise ValueError("scatter mode requires real k")
        if mode == "bound" and wn.is_real:
            raise ValueError("bound mode requires k = i*kappa")
        self.spec = spec
        self.wavenumber = wn
        self.mode = mode
        self.data = scattering_data(spec, wn)
        k2 = wn.k2
        self.breaks = [0.0, spec.l1, spec.l1 + spec.r, spec.extent]
        # per interior region: (left edge, local momentum squared,
        # boundary value, boundary slope)
        psi = 1.0 + 0.0j
        dpsi = -1j * wn.k
        self._regions = []
        for x0, x1, v in (
            (0.0, spec.l1, spec.v1),
            (spec.l1, spec.l1 + spec.r, 0.0),
            (spec.l1 + spec.r, spec.extent, spec.v2),
        ):
            q = k2 - v
            self._regions.append((x0, q, psi, dpsi))
            dx = x1 - x0
            w = q * dx * dx
            c = cos_sqrt(w)
            s = dx * sinc_sqrt(w)
            psi, dpsi = psi * c + dpsi * s, -q * s * psi + c * dpsi

    def _eval(self, x, want_derivative):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        kc = self.wavenumber.k
        left = x < 0.0
        right = x >= self.breaks[3]
        if want_derivative:
            out[left] = -1j * kc * np.exp(-1j * kc * x[left])
        else:
            out[left] = np.exp(-1j * kc * x[left])
        a, b = self.data.a, self.data.b
        if self.mode == "bound":
            # only the decaying piece survives; a(i*kappa) ~ 0
            if want_derivative:
                out[right] = 1j * kc * b * np.exp(1j * kc * x[right])
            else:
                out[right] = b * np.exp(1j * kc * x[right])
        else:
            if want_derivative:
                out[right] = -1j * kc * a * np.exp(
                    -1j * kc * x[right]
                ) + 1j * kc * b * np.exp(1j * kc * x[right])
            else:
                out[right] = a * np.exp(-1j * kc * x[right]) + b * np.exp(
                    1j * kc * x[right]
                )
        for i, (x0, q, psi0, dpsi0) in enumerate(self._regions):
            x1 = self.breaks[i + 1]
            if i == 2:
                mask = (x >= x0) & (x < x1) & ~right
            else:
                mask = (x >= x0) & (x < x1)
            if not np.any(mask):
                continue
            dx = x[mask] - x0
            w = q * dx * dx
            c = cos_sqrt(w)
            s = dx * sinc_sqrt(w)
            if want_derivative:
                out[mask] = -q * s * psi0 + c * dpsi0
            else:
                out[mask] = psi0 * c + dpsi0 * s
        return out if out.ndim else complex(out)

    def __call__(self, x):
        return self._eval(x, want_derivative=False)

    def derivative(self, x):
        return self._eval(x, want_derivative=True)

    def continuity_defect(self):
        """Largest relative mismatch of one-sided limits at the seams.

        Interior seams vanish by construction; the seam at the right edge
        measures the consistency of a, b with the propagated interior
        solution (in bound mode it is the eigenvalue residual |a|).
        """
        kc = self.wavenumber.k
        scale = max(1.0, abs(self.data.a), abs(self.data.b))
        dscale = scale * max(1.0, abs(kc))
        ends = []
        for i, (x0, q, psi0, dpsi0) in enumerate(self._regions):
            dx = self.breaks[i + 1] - x0
            w = q * dx * dx
            c = cos_sqrt(w)
            s = dx * sinc_sqrt(w)
            ends.append((psi0 * c + dpsi0 * s, -q * s * psi0 + c * dpsi0))
        worst = max(
            abs(self._regions[0][2] - 1.0) / scale,
            abs(self._regions[0][3] + 1j * kc) / dscale,
        )
        for i in (0, 1):
            nxt = self._regions[i + 1]
            worst = max(
                worst,
                abs(ends[i][0] - nxt[2]) / scale,
                abs(ends[i][1] - nxt[3]) / dscale,
            )
        ex = self.breaks[3]
        a, b = self.data.a, self.data.b
        if self.mode == "bound":
            pr = b * np.exp(1j * kc * ex)
            dpr = 1j * kc * pr
        else:
            pr = a * np.exp(-1j * kc * ex) + b * np.exp(1j * kc * ex)
            dpr = -1j * kc * a * np.exp(-1j * kc * ex) + 1j * kc * b * np.exp(
                1j * kc * ex
            )
        return max(
            worst,
            abs(ends[2][0] - pr) / scale,
            abs(ends[2][1] - dpr) / dscale,
        )


def scattering_wavefunction(spec, k, mode="scatter", eigen_tol=1e-6):
    """Build the piecewise wavefunction; bound mode checks the eigenvalue.

    In bound mode |a(i*kappa)| must be below eigen_tol (relative to the
    connection coefficient b), otherwise there is no decaying solution at
    this kappa and NotAnEigenvalueError is raised.
    """
    wave = PiecewiseWave(spec, k, mode=mode)
    if mode == "bound":
        a, b = wave.data.a, wave.data.b
        if abs(a) > eigen_tol * max(1.0, abs(b)):
            raise NotAnEigenvalueError(
                f"kappa={as_wavenumber(k).kappa!r} is not a bound level: "
                f"|a| = {abs(a):.3e}"
            )
    return wave


# ---------------------------------------------------------------------------
# finite-structure resonance helpers


def divergence_residual(spec, k):
    """k1 tan(k1 l1) + k2 tan(k2 l2) - k1 tan(k1 l1) k2 tan(k2 l2) r.

    This combination controls which terms of the amplitudes survive when
    the structure is squeezed; its zeros define the gap width at which
    the leading divergence cancels.  Finite only away from cos zeros.
    """
    wn = as_wavenumber(k)
    c1, _, ks1 = _layer_parts(spec.v1, spec.l1, wn.k2)
    c2, _, ks2 = _layer_parts(spec.v2, spec.l2, wn.k2)
    kt1 = ks1 / c1
    kt2 = ks2 / c2
    return kt1 + kt2 - kt1 * kt2 * spec.r


def cancellation_gap(spec, k):
    """Gap width r* at which divergence_residual vanishes for this k."""
    wn = as_wavenumber(k)
    c1, _, ks1 = _layer_parts(spec.v1, spec.l1, wn.k2)
    c2, _, ks2 = _layer_parts(spec.v2, spec.l2, wn.k2)
    kt1 = ks1 / c1
    kt2 = ks2 / c2
    return (kt1 + kt2) / (kt1 * kt2)


def amplitude_ratio_expressions(spec, k):
    """Equivalent forms of the boundary amplitude ratio, plus its inverse.

    When divergence_residual(spec, k) = 0 the four returned expressions
    coincide, and the fifth value equals their reciprocal.  Used as an
    algebraic cross-check of the cancellation identities.
    """
    wn = as_wavenumber(k)
    c1, sl1, ks1 = _layer_parts(spec.v1, spec.l1, wn.k2)
    c2, sl2, ks2 = _layer_parts(spec.v2, spec.l2, wn.k2)
    r = spec.r
    e1 = c1 * c2 - ks1 * r * c2 - ks1 * sl2
    e2 = -ks1 / ks2
    e3 = (c1 - ks1 * r) / c2
    e4 = c1 / (c2 - ks2 * r)
    inverse = c1 * c2 - ks2 * r * c1 - ks2 * sl1
    return np.array([e1, e2, e3, e4]), inverse
