"""Fixed-bottom buckling-mode family.

With the bottom edge clamped (u = 0 at z = 0) the problem no longer
diagonalizes in the axial Fourier index, but a two-mode superposition of
axial wavenumbers (m, m+2) satisfies the clamped boundary conditions exactly
while staying asymptotically optimal.  The radial profile

    phi_r = (sin(m_hat z)/m_hat - sin((m+2)_hat z)/(m+2)_hat) cos(n theta)

vanishes together with its z-derivative at z = 0; the tangential profiles
carry the membrane-optimal coefficients, with a single axial coefficient
T(m, n) shared by the two modes so that the clamped-edge Fourier constraints
hold exactly.  On this family

    K0 / (2 mu h sqrt((Lambda+1)/3))  ->  (2 + a + 1/a)/4,
    a = ((m+2)/m)^2,

so any m(h) -> infinity with m(h) sqrt(h) -> 0 attains the classical load in
the limit.  The module provides the mode constructor, its K0 by full
quadrature, the per-mode Fourier-algebra oracle, and the h-sweep driver.
"""

from dataclasses import dataclass
import math

import numpy as np

from cylshell.errors import ParameterError
from cylshell.fields import (SumSurface, TrigSurface, from_midsurface,
                             functional_family, volume_grid)
from cylshell.koiter import classical_load, max_circle_m, reduced_forms
from cylshell.material import ShellGeometry, perfect_stress
from cylshell.scaling import fit_exponent


def circle_wavenumber(m, geometry, Lambda):
    """Nearest integer to the circle wavenumber n for axial mode m.

    The two-mode family straddles (m, m+2), so the nearest circle point
    balances the pair better than rounding down; the rounded-down variant
    systematically overweights the membrane energy of the m+2 mode.
    """
    m_hat = math.pi * m / geometry.L
    radicand = 2.0 * m_hat * (3.0 * (Lambda + 1.0)) ** 0.25 \
        / math.sqrt(geometry.h * (Lambda + 2.0)) - m_hat**2
    if radicand < 0:
        raise ParameterError(
            f"m={m} lies outside the circle of classical modes "
            f"(m > M(h) = {max_circle_m(geometry, Lambda)})")
    return int(round(math.sqrt(radicand)))


def gamma(m, n, geometry, Lambda):
    """Leading-order tangential coefficient 1/m_hat + Lambda m_hat / ((Lambda+2) n^2)."""
    if m < 1 or n < 1:
        raise ParameterError(f"gamma requires m >= 1 and n >= 1, got ({m}, {n})")
    m_hat = math.pi * m / geometry.L
    return 1.0 / m_hat + Lambda * m_hat / ((Lambda + 2.0) * n**2)


def t_coefficient(m, n, geometry, Lambda):
    """Axial-profile coefficient shared by the two modes.

    T(m, n) = ((Lambda+2) n^2 - Lambda m_hat^2) / ((Lambda+2)(n^2 + m_hat^2)^2);
    in the regime n >> m_hat this agrees with the leading-order 1/n^2 to
    relative O(m_hat^2 / n^2).
    """
    if n < 1:
        raise ParameterError("t_coefficient requires n >= 1")
    m_hat = math.pi * m / geometry.L
    Lp2 = Lambda + 2.0
    return (Lp2 * n**2 - Lambda * m_hat**2) / (Lp2 * (n**2 + m_hat**2) ** 2)


def mode_amplitudes(m, n, geometry, Lambda):
    """Complex Fourier amplitudes (f_r, f_theta, f_z) of the two active z-modes.

    Returns {m: (...), m+2: (...)} in the convention u = Re(f e^{i n theta}).
    The radial amplitudes +-1/k_hat satisfy the clamped-edge constraint
    sum k f_r(k) = 0; the common axial coefficient T(m, n) enforces
    sum f_z(k) = 0; f_theta is the membrane minimizer at those amplitudes.
    """
    T = t_coefficient(m, n, geometry, Lambda)
    Lp2 = Lambda + 2.0
    out = {}
    for k, sign in ((m, 1.0), (m + 2, -1.0)):
        k_hat = math.pi * k / geometry.L
        f_r = sign / k_hat
        f_z = -sign * T
        f_t = 1j * n * (Lp2 * f_r - (Lambda + 1.0) * k_hat * f_z) / (Lp2 * n**2 + k_hat**2)
        out[k] = (f_r, f_t, f_z)
    return out


def simplified_amplitudes(m, n, geometry, Lambda):
    """Leading-order amplitudes with gamma(k, n) and 1/n^2 coefficients.

    Consistency oracle for mode_amplitudes: agrees to relative
    O(m_hat^2 / n^2), but the membrane excess it carries decays only like
    h^{1/4}, so the full coefficients are used to build the modes.
    """
    out = {}
    for k, sign in ((m, 1.0), (m + 2, -1.0)):
        k_hat = math.pi * k / geometry.L
        out[k] = (sign / k_hat,
                  sign * 1j * gamma(k, n, geometry, Lambda) / n,
                  -sign / n**2)
    return out


def mode_profiles(m, n, geometry, Lambda):
    """Real mid-surface profiles (f_r, f_theta, f_z) of the two-mode family."""
    amps = mode_amplitudes(m, n, geometry, Lambda)
    parts_r, parts_t, parts_z = [], [], []
    for k, (f_r, f_t, f_z) in amps.items():
        k_hat = math.pi * k / geometry.L
        # u = Re(f e^{i n theta}): real parts pair with cos, Im(f_t) with -sin
        parts_r.append(TrigSurface("cos", n, "sin", k_hat, amp=f_r.real if isinstance(f_r, complex) else f_r))
        parts_t.append(TrigSurface("sin", n, "sin", k_hat, amp=-f_t.imag))
        parts_z.append(TrigSurface("cos", n, "cos", k_hat, amp=f_z.real if isinstance(f_z, complex) else f_z))
    return (SumSurface(tuple(parts_r)), SumSurface(tuple(parts_t)),
            SumSurface(tuple(parts_z)))


def fixedbc_mode(m, geometry, material, n=None):
    """Clamped-bottom displacement field for base axial wavenumber m.

    The field is of the U(f) form; u_z = 0 at z = 0 for every r because
    phi_z(0) = 0 and phi_r'(0) = 0.
    """
    if m < 1:
        raise ParameterError("fixedbc mode requires m >= 1")
    M = max_circle_m(geometry, material.Lambda)
    if m + 2 > M:
        raise ParameterError(
            f"m + 2 = {m + 2} exceeds the largest circle mode M(h) = {M}")
    if n is None:
        n = circle_wavenumber(m, geometry, material.Lambda)
    if n < 1:
        raise ParameterError(f"family requires n >= 1, got n = {n}")
    f_r, f_t, f_z = mode_profiles(m, n, geometry, material.Lambda)
    return from_midsurface(f_r, f_t, f_z, bc_tag="fixed_bottom")


def constraint_sums(m, n, geometry, Lambda):
    """The two Fourier constraint sums of the clamped bottom edge.

    Sum of k_hat * f_r(k) and sum of f_z(k) over the active modes; both
    vanish identically for this family.
    """
    amps = mode_amplitudes(m, n, geometry, Lambda)
    s_r = sum(k * amps[k][0] for k in amps) * math.pi / geometry.L
    s_z = sum(amps[k][2] for k in amps)
    return s_r, s_z


def mode_k0_algebraic(m, geometry, material, n=None):
    """K0 of the two-mode family by pure per-mode Fourier algebra.

    The z-modes are orthogonal on [0, L], so the quadratic forms are the sums
    of the per-mode forms at the complex amplitudes.
    """
    if n is None:
        n = circle_wavenumber(m, geometry, material.Lambda)
    Lam = material.Lambda
    amps = mode_amplitudes(m, n, geometry, Lam)
    Q0 = Q1 = B = 0.0
    for k, (f_r, f_t, f_z) in amps.items():
        k_hat = math.pi * k / geometry.L
        forms = reduced_forms(k_hat, n, Lam, f_r, f_t, f_z)
        Q0 += forms.Q0
        Q1 += forms.Q1
        B += forms.B
    return material.mu * (Q0 + geometry.h**2 / 12.0 * Q1) / B


def mode_grid(m, n, geometry, n_r=4):
    """Quadrature grid sized to integrate the (m+2)-mode products exactly.

    theta products have frequency <= 2n (uniform rule exact below the node
    count); z products reach frequency 2 pi (m+2)/L, handled by an oversized
    Gauss rule.
    """
    n_th = 2 * n + 5
    n_z = 3 * (m + 2) + 12
    return volume_grid(geometry, n_r=n_r, n_th=n_th, n_z=n_z)


def mode_functionals(m, geometry, material, n=None, stress=None, n_r=4):
    """Full functional family {K, K1, K0, K*} of the mode by quadrature."""
    if n is None:
        n = circle_wavenumber(m, geometry, material.Lambda)
    field = fixedbc_mode(m, geometry, material, n=n)
    grid = mode_grid(m, n, geometry, n_r=n_r)
    stress = stress or perfect_stress()
    return functional_family(field, material, geometry, grid, stress=stress)


def classical_ratio(m, geometry, material, n=None, method="quadrature"):
    """K0(mode) / (2 mu h sqrt((Lambda+1)/3))."""
    if method == "algebra":
        k0 = mode_k0_algebraic(m, geometry, material, n=n)
    elif method == "quadrature":
        k0 = mode_functionals(m, geometry, material, n=n)["K0"]
    else:
        raise ParameterError(f"unknown method {method!r}")
    return k0 / classical_load(geometry, material)


def limit_expression(m):
    """Finite-m value of the h -> 0 ratio: (2 + a + 1/a)/4 with a = ((m+2)/m)^2."""
    a = ((m + 2.0) / m) ** 2
    return (2.0 + a + 1.0 / a) / 4.0


@dataclass(frozen=True)
class LimitRow:
    h: float
    m: int
    n: int
    ratio: float


@dataclass(frozen=True)
class LimitReport:
    """h-sweep of the classical-load ratio for m(h) = round(c h^{-alpha})."""

    alpha: float
    c: float
    rows: tuple

    @property
    def points(self):
        return tuple((row.h, row.ratio) for row in self.rows)

    def excess_fit(self):
        """Fitted h-exponent of ratio - 1 (decays like m(h)^{-2} ~ h^{2 alpha})."""
        pts = [(row.h, row.ratio - 1.0) for row in self.rows if row.ratio > 1.0]
        return fit_exponent(pts, min_points=min(4, len(pts)))


def wavenumber(h, alpha, c=1.0):
    """m(h) = round(c h^{-alpha}), clipped to m >= 1."""
    if not 0.0 < alpha < 0.5:
        raise ParameterError(
            f"alpha = {alpha} outside (0, 1/2): m(h) must diverge with m sqrt(h) -> 0")
    return max(1, int(round(c * h**-alpha)))


def fixedbc_limit(h_list, alpha, geometry, material, c=1.0, method="quadrature"):
    """Ratio table K0 / (2 mu h sqrt((Lambda+1)/3)) along an h-sweep.

    The table converges to 1 from above as h -> 0 for any alpha in (0, 1/2).
    """
    rows = []
    for h in sorted(h_list, reverse=True):
        geo = ShellGeometry(h=h, L=geometry.L)
        m = wavenumber(h, alpha, c)
        n = circle_wavenumber(m, geo, material.Lambda)
        ratio = classical_ratio(m, geo, material, n=n, method=method)
        rows.append(LimitRow(h=h, m=m, n=n, ratio=ratio))
    return LimitReport(alpha=alpha, c=c, rows=tuple(rows))
