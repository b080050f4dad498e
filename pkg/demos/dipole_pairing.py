#!/usr/bin/env python3
"""Tour of the distributional limit: when does the family act like a
derivative-of-delta potential?

Pairing the squeezed potential against smooth test functions measures
its distributional limit.  When the two layer strengths balance
(h1*d1 + h2*d2 = 0) the pairing converges to -gamma * f'(0) with a
finite strength gamma; without the balance it diverges like a negative
power of eps.  This script prints both behaviours side by side.
"""

import numpy as np

from bilayer1d import SqueezeFamily, delta_prime_pairing, gamma_strength, probes
from bilayer1d.core import EV_TO_INV_NM2 as EV


def main():
    h = 0.5 * EV
    balanced = SqueezeFamily(1.5, 1.0, 1.0, h, -h, 12.0, 12.0, 20.0)
    lopsided = SqueezeFamily(1.5, 1.0, 1.0, h, -h, 8.0, 12.0, 20.0)
    probe = probes.gaussian(3.0, center=-3.0)

    gamma = gamma_strength(balanced)
    target = -gamma * probe.df(0.0)
    print(f"balanced family: gamma = {gamma:.5f} nm, "
          f"-gamma * f'(0) = {target:.6f}")
    print("  eps        <V_eps, f>      gap to -gamma f'(0)")
    for eps in np.logspace(-1, -5, 9):
        res = delta_prime_pairing(balanced, float(eps), probe)
        print(f"  {eps:8.1e}  {res.value:13.6f}   {abs(res.value - target):.3e}")

    print("\nlopsided family (net strength does not cancel):")
    print("  eps        <V_eps, f>")
    for eps in np.logspace(-1, -5, 9):
        res = delta_prime_pairing(lopsided, float(eps), probe)
        marker = "" if res.companion is not None else "   (no finite companion)"
        print(f"  {eps:8.1e}  {res.value:13.6f}{marker}")
    res = delta_prime_pairing(lopsided, 1e-5, probe)
    print(f"divergence power: eps^{res.divergence_power:g} "
          f"-- the pairing grows without bound")


if __name__ == "__main__":
    main()
