#!/usr/bin/env python3
"""Korn constant of the thin cylindrical shell: the h^(3/2) law.

Computes K(V_h) = min over Fourier modes of ||e(u)||^2 / ||grad u||^2 on a
sweep of thicknesses, fits the power law, and prints the compensated values
K / h^(3/2), which should approach a constant.  Also reports the four
gradient-component bounds sup (component^2) / ||e||^2 and their rates.
"""

import math

from cylshell import korn
from cylshell.material import ShellGeometry
from cylshell.scaling import fit_exponent


def main():
    L = math.pi
    h_list = [1e-2, 10**-2.5, 1e-3, 10**-3.5, 1e-4]

    print("Korn constant sweep:")
    print(f"{'h':>10} {'K':>14} {'m*':>5} {'n*':>5} {'K / h^1.5':>12}")
    points = []
    for h in h_list:
        geo = ShellGeometry(h=h, L=L)
        res = korn.korn_constant(geo)
        points.append((h, res.value))
        print(f"{h:10.1e} {res.value:14.6e} {res.m:5d} {res.n:5d} "
              f"{res.value / h**1.5:12.5f}")
    fit = fit_exponent(points)
    print(f"fitted exponent: {fit.exponent:.4f}  (expected 3/2)")
    print()

    print("gradient-component bounds sup (component^2)/||e||^2:")
    for group in korn.COMPONENT_GROUPS:
        pts = []
        for h in h_list:
            geo = ShellGeometry(h=h, L=L)
            pts.append((h, korn.component_bound(geo, group).value))
        fit = fit_exponent(pts)
        target = korn.COMPONENT_EXPONENTS[group]
        print(f"  {group:8s}: exponent {fit.exponent:8.4f}  (expected {target:+.2f})")


if __name__ == "__main__":
    main()
