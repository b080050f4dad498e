#!/usr/bin/env python3
"""Tour of the scattering side: amplitudes, probabilities and resonances.

A pair of rectangular layers on the line acts as a simple resonator:
transmission through the structure oscillates with energy, reaching
unity at discrete wavenumbers where the internal reflections interfere
away.  This script scans a barrier--well pair, prints the transmission
profile and brackets the perfect-transmission points.
"""

import numpy as np

from bilayer1d import (
    DoubleLayerSpec,
    reflection_transmission,
    scattering_data,
)


def main():
    # 0.7 eV barrier (1 nm), 0.5 eV well (1.4 nm), 2 nm apart
    spec = DoubleLayerSpec.from_ev(0.7, 1.0, -0.5, 1.4, 2.0)
    print("structure:", spec)
    print(f"total extent: {spec.extent:.2f} nm")
    print()

    ks = np.linspace(0.15, 3.0, 572)
    transmission = np.empty_like(ks)
    for i, k in enumerate(ks):
        rt = reflection_transmission(spec, float(k))
        transmission[i] = abs(rt.t) ** 2

    print("k [1/nm]   T(k)")
    for k in np.linspace(0.2, 3.0, 15):
        idx = np.argmin(np.abs(ks - k))
        bar = "#" * int(round(40 * transmission[idx]))
        print(f"  {ks[idx]:5.2f}    {transmission[idx]:6.4f}  {bar}")

    # local maxima of T(k) that get within 1% of perfect transmission
    peaks = [
        i
        for i in range(1, len(ks) - 1)
        if transmission[i] >= transmission[i - 1]
        and transmission[i] >= transmission[i + 1]
        and transmission[i] > 0.99
    ]
    print()
    print("near-perfect transmission points:")
    for i in peaks:
        data = scattering_data(spec, float(ks[i]))
        print(
            f"  k = {ks[i]:.3f} 1/nm  (energy {ks[i] ** 2 / 2.62464:.3f} eV), "
            f"T = {1.0 / abs(data.a) ** 2:.5f}, "
            f"unitarity defect {data.unitarity_defect():.1e}"
        )


if __name__ == "__main__":
    main()
