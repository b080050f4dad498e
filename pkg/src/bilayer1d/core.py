"""Units and validated descriptions of the two-layer structure.

Lengths are nanometres, inverse-length-squared energies throughout.  The
stationary wave equation is -psi'' + V psi = k^2 psi, so potentials and
k^2 both carry nm^-2.  Electron-volt inputs are converted once at the
boundary with the fixed factor below (effective mass 0.1 m_e).
"""

from dataclasses import dataclass
import math

EV_TO_INV_NM2 = 2.62464


@dataclass(frozen=True)
class UnitSystem:
    """Conversion bundle; ev_to_inv_nm2 is overridable for other masses."""

    ev_to_inv_nm2: float = EV_TO_INV_NM2


def convert_energy(value_ev, units=None):
    """eV -> nm^-2 using the unit system (default effective mass)."""
    factor = (units or UnitSystem()).ev_to_inv_nm2
    return value_ev * factor


@dataclass(frozen=True)
class LayerSpec:
    """One constant-potential slab: height v (nm^-2), width l (nm >= 0)."""

    v: float
    l: float


@dataclass(frozen=True)
class DoubleLayerSpec:
    """Two slabs separated by a zero-potential gap of width r.

    The structure occupies [0, l1 + r + l2]; outside it the potential
    vanishes.  Widths may be zero (degenerate single-layer cases).
    """

    layer1: LayerSpec
    layer2: LayerSpec
    r: float

    @classmethod
    def make(cls, v1, l1, v2, l2, r):
        return cls(LayerSpec(v1, l1), LayerSpec(v2, l2), r)

    @classmethod
    def from_ev(cls, v1_ev, l1, v2_ev, l2, r, units=None):
        return cls.make(
            convert_energy(v1_ev, units), l1, convert_energy(v2_ev, units), l2, r
        )

    @property
    def v1(self):
        return self.layer1.v

    @property
    def l1(self):
        return self.layer1.l

    @property
    def v2(self):
        return self.layer2.v

    @property
    def l2(self):
        return self.layer2.l

    @property
    def extent(self):
        """Total width l1 + r + l2."""
        return self.l1 + self.r + self.l2


def validate_spec(spec):
    """Check finiteness and sign constraints; returns the spec unchanged.

    Raises ValueError naming the offending field.  Validation is
    idempotent, so calling it on an already validated spec is free of
    side effects.
    """
    for name, value in (
        ("v1", spec.v1),
        ("l1", spec.l1),
        ("v2", spec.v2),
        ("l2", spec.l2),
        ("r", spec.r),
    ):
        if not math.isfinite(value):
            raise ValueError(f"spec field {name} is not finite: {value!r}")
    for name, value in (("l1", spec.l1), ("l2", spec.l2), ("r", spec.r)):
        if value < 0:
            raise ValueError(f"spec field {name} must be >= 0, got {value!r}")
    return spec


@dataclass(frozen=True)
class Wavenumber:
    """Spectral parameter: either real k > 0 or purely imaginary i*kappa.

    Real k describes scattering at energy k^2, imaginary k = i*kappa with
    kappa > 0 probes the bound-state half line at energy -kappa^2.
    """

    k: complex

    def __post_init__(self):
        k = complex(self.k)
        real_ok = k.imag == 0.0 and k.real > 0.0
        imag_ok = k.real == 0.0 and k.imag > 0.0
        if not (real_ok or imag_ok):
            raise ValueError(
                "wavenumber must be real positive or i*kappa with kappa > 0, "
                f"got {k!r}"
            )
        object.__setattr__(self, "k", k)

    @classmethod
    def real(cls, k):
        return cls(complex(k))

    @classmethod
    def bound(cls, kappa):
        return cls(complex(0.0, kappa))

    @property
    def is_real(self):
        return self.k.imag == 0.0

    @property
    def k2(self):
        """k^2 as a real number (negative on the bound half line)."""
        return (self.k * self.k).real

    @property
    def kappa(self):
        if self.is_real:
            raise ValueError("kappa is defined only for imaginary wavenumbers")
        return self.k.imag


def as_wavenumber(k):
    """Coerce a float, complex or Wavenumber into a Wavenumber."""
    if isinstance(k, Wavenumber):
        return k
    return Wavenumber(complex(k))
