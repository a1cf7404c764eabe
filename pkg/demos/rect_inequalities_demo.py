#!/usr/bin/env python3
"""Planar Korn-type inequalities on a thin rectangle, checked by quadrature.

Runs seeded randomized scans of the clamped-horizontal-edge bounds

    ||G_a||^2 <= 100 ||e_a|| (||u||/h + ||e_a||)
    ||G_a||^2 <= 99 ||e_a||^2 + (57/h) ||u|| ||e_a||,

verifies sharpness of the harmonic-function lemma on its extremal
w = cosh(pi (x - h/2)/L) sin(pi y/L), checks the Helmholtz projection
estimate ||grad u - grad w|| <= (sqrt(2) + 1/pi) ||e_a||, and scans the
periodic-in-y variants.
"""

import numpy as np

from cylshell import rect


def main():
    h, L = 0.1, 1.0

    violations, margin = rect.basic_inequality_trials(h, L, trials=200, seed=1234)
    print(f"clamped-edge bounds, 200 random fields: "
          f"{violations} violations, min margin {margin:.3e}")

    lemma = rect.harmonic_lemma_check(h, L, trials=20, seed=1234)
    print(f"harmonic lemma: extremal equality error {lemma.equality_error:.3e}, "
          f"{lemma.hi_violations} violations, min margin {lemma.hi_min_margin:.3e}")

    rng = np.random.default_rng(1234)
    worst = 0.0
    for _ in range(5):
        field = rect.random_zero_horizontal(rng, h, L)
        rep = rect.projection_estimates(field, alpha=1.0, h=h, L=L)
        worst = max(worst, rep.grad_diff / rep.grad_bound)
        assert rep.holds
    print(f"projection estimate: worst lhs/bound ratio {worst:.3f} (must be <= 1)")

    pviol, pmargin = rect.periodic_inequality_trials(h, trials=200, seed=1234)
    print(f"periodic variants (C0 = {rect.PERIODIC_C0}): "
          f"{pviol} violations, min margin {pmargin:.3e}")


if __name__ == "__main__":
    main()
