"""Per-Fourier-mode buckling algebra.

For a single mode (m, n) with m_hat = pi m / L the reduced quadratic forms
Q0, Q1, Q1*, B act on the complex radial amplitudes (f_r, f_theta, f_z).
Minimizing Q0 over the tangential amplitudes in closed form yields the
two-term load surface

    lambda*(h; m, n) = mu [ 4 m_hat^2 (Lambda+1) / ((Lambda+2)(n^2+m_hat^2)^2)
                          + h^2 (Lambda+2)(m_hat^2+n^2)^2 / (12 m_hat^2) ],

whose minimum over real wavenumbers is 2 mu h sqrt((Lambda+1)/3), attained on
the circle h(Lambda+2)(n^2+m_hat^2)^2 = 4 m_hat^2 sqrt(3(Lambda+1)).  The
integer minimization, the circle wavenumber map n(m), and the explicit
buckling-mode construction live here.
"""

from dataclasses import dataclass
import math

import numpy as np

from cylshell.errors import ParameterError
from cylshell.fields import TrigSurface, from_midsurface


@dataclass(frozen=True)
class WaveNumbers:
    m: int
    n: int
    L: float

    @property
    def m_hat(self):
        return math.pi * self.m / self.L


@dataclass(frozen=True)
class ReducedForms:
    Q0: float
    Q1: float
    Q1star: float
    B: float


def reduced_forms(m_hat, n, Lambda, f_r, f_t=0.0, f_z=0.0):
    """Reduced quadratic forms at complex mode amplitudes.

    The common Fourier normalization (pi L / 2 per mode) is dropped; it
    cancels in every ratio formed from these.
    """
    i = 1j
    Q0 = (Lambda * abs(i * n * f_t - m_hat * f_z + f_r) ** 2
          + 2.0 * abs(i * n * f_t + f_r) ** 2
          + 2.0 * m_hat**2 * abs(f_z) ** 2
          + abs(i * n * f_z + m_hat * f_t) ** 2)
    Q1 = (Lambda * abs((m_hat**2 + n**2) * f_r + i * n * f_t) ** 2
          + 2.0 * abs(n**2 * f_r + i * n * f_t) ** 2
          + 2.0 * m_hat**4 * abs(f_r) ** 2
          + m_hat**2 * abs(f_t - 2.0 * i * n * f_r) ** 2)
    Q1star = (Lambda + 2.0) * (m_hat**2 + n**2) ** 2 * abs(f_r) ** 2
    B = m_hat**2 * abs(f_r) ** 2
    return ReducedForms(Q0=float(Q0), Q1=float(Q1), Q1star=float(Q1star), B=float(B))


def optimal_tangential(f_r, m_hat, n, Lambda):
    """Minimizer (f_theta*, f_z*) of Q0 over the tangential amplitudes.

    At the optimum Q0 = 4 |f_r|^2 m_hat^4 (Lambda+1) / ((Lambda+2)(n^2+m_hat^2)^2).
    """
    if m_hat == 0 and n == 0:
        raise ParameterError("optimal tangential amplitudes undefined at m_hat = n = 0")
    den = (Lambda + 2.0) * (n**2 + m_hat**2) ** 2
    f_t = 1j * n * f_r * ((3.0 * Lambda + 4.0) * m_hat**2 + (Lambda + 2.0) * n**2) / den
    f_z = m_hat * f_r * (Lambda * m_hat**2 - (Lambda + 2.0) * n**2) / den
    return f_t, f_z


def q0_at_optimum(f_r, m_hat, n, Lambda):
    return 4.0 * abs(f_r) ** 2 * m_hat**4 * (Lambda + 1.0) / (
        (Lambda + 2.0) * (n**2 + m_hat**2) ** 2)


def lambda_star(geometry, material, m, n):
    """The two-term load surface lambda*(h; m, n) (with the mu prefactor)."""
    if m < 1:
        raise ParameterError("lambda* requires m >= 1 (B vanishes at m = 0)")
    h, Lam = geometry.h, material.Lambda
    m_hat = math.pi * m / geometry.L
    membrane = 4.0 * m_hat**2 * (Lam + 1.0) / ((Lam + 2.0) * (n**2 + m_hat**2) ** 2)
    bending = h**2 * (Lam + 2.0) * (m_hat**2 + n**2) ** 2 / (12.0 * m_hat**2)
    return material.mu * (membrane + bending)


def classical_load(geometry, material):
    """Continuum minimum of the load surface: 2 mu h sqrt((Lambda+1)/3)."""
    return 2.0 * material.mu * geometry.h * math.sqrt((material.Lambda + 1.0) / 3.0)


def circle_residual(geometry, Lambda, m, n):
    """Relative defect of (m, n) from the Koiter circle."""
    m_hat = math.pi * m / geometry.L
    target = 4.0 * m_hat**2 * math.sqrt(3.0 * (Lambda + 1.0))
    return abs(geometry.h * (Lambda + 2.0) * (n**2 + m_hat**2) ** 2 - target) / target


def max_circle_m(geometry, Lambda):
    """M(h): largest m on the Koiter circle."""
    val = (2.0 * geometry.L / math.pi) * (3.0 * (Lambda + 1.0)) ** 0.25 \
        / math.sqrt(geometry.h * (Lambda + 2.0))
    return int(math.floor(val))


def koiter_circle_n(m, geometry, Lambda):
    """n(m): circumferential wavenumber on the Koiter circle for axial mode m."""
    m_hat = math.pi * m / geometry.L
    radicand = 2.0 * m_hat * (3.0 * (Lambda + 1.0)) ** 0.25 \
        / math.sqrt(geometry.h * (Lambda + 2.0)) - m_hat**2
    if radicand < 0:
        raise ParameterError(
            f"m={m} lies outside the Koiter circle (m > M(h) = "
            f"{max_circle_m(geometry, Lambda)})")
    return int(math.floor(math.sqrt(radicand)))


@dataclass(frozen=True)
class KoiterResult:
    lambda_hat: float
    m_star: int
    n_star: int
    circle_residual: float
    closed_form: float
    mode: object = None


def minimize_load(geometry, material, m_max=None, n_max=None, with_mode=True):
    """Integer minimization of lambda*(h; m, n) over 1 <= m <= m_max, 0 <= n <= n_max.

    Ties break toward the smallest m, then the smallest n.  The result always
    sits above the continuum lower bound 2 mu h sqrt((Lambda+1)/3).
    """
    h, L, Lam = geometry.h, geometry.L, material.Lambda
    M = max_circle_m(geometry, Lam)
    if M < 1:
        raise ParameterError(f"h={h} too large: M(h) = {M} < 1, no circle modes")
    if m_max is None:
        m_max = 2 * M
    if n_max is None:
        n_max = int(math.ceil(
            2.0 * (4.0 * math.sqrt(3.0 * (Lam + 1.0)) / (h * (Lam + 2.0))) ** 0.25
            * math.sqrt(m_max)))
    if m_max < 1 or n_max < 0:
        raise ParameterError(f"empty search window: m_max={m_max}, n_max={n_max}")

    ms = np.arange(1, m_max + 1, dtype=float)[:, None]
    ns = np.arange(0, n_max + 1, dtype=float)[None, :]
    m_hat = np.pi * ms / L
    membrane = 4.0 * m_hat**2 * (Lam + 1.0) / ((Lam + 2.0) * (ns**2 + m_hat**2) ** 2)
    bending = h**2 * (Lam + 2.0) * (m_hat**2 + ns**2) ** 2 / (12.0 * m_hat**2)
    lam = material.mu * (membrane + bending)
    flat = int(np.argmin(lam))          # first minimum: smallest m, then n
    m_star = flat // (n_max + 1) + 1
    n_star = flat % (n_max + 1)
    lam_hat = float(lam.flat[flat])
    mode = buckling_mode(m_star, geometry, material, n=n_star) if with_mode else None
    return KoiterResult(
        lambda_hat=lam_hat, m_star=int(m_star), n_star=int(n_star),
        circle_residual=circle_residual(geometry, Lam, m_star, n_star),
        closed_form=classical_load(geometry, material), mode=mode)


def mode_amplitudes(m, n, geometry, material):
    """Complex amplitudes (f_r, f_theta, f_z) of the explicit buckling mode.

    The tangential amplitudes are the exact membrane minimizers at the
    integer wavenumbers, so K* of the mode equals lambda*(h; m, n) exactly.
    """
    f_t, f_z = optimal_tangential(1.0 + 0.0j, math.pi * m / geometry.L, n,
                                  material.Lambda)
    return 1.0 + 0.0j, f_t, f_z


def display_amplitudes(m, n, geometry, material):
    """Circle-substituted mode amplitudes.

    Same as mode_amplitudes except the denominator (Lambda+2)(n^2+m_hat^2)^2
    is replaced through the circle identity by 4 m_hat^2 sqrt(3(Lambda+1))/h.
    Exact on the circle of classical modes; at the floored integer n the
    substitution is off by O(circle residual), which the membrane form
    amplifies, so these serve only as a near-circle consistency oracle.
    """
    h, Lam = geometry.h, material.Lambda
    m_hat = math.pi * m / geometry.L
    root = 4.0 * m_hat**2 * math.sqrt(3.0 * (Lam + 1.0))
    f_t = 1j * h * n * ((3.0 * Lam + 4.0) * m_hat**2 + (Lam + 2.0) * n**2) / root
    f_z = h * m_hat * (Lam * m_hat**2 - (Lam + 2.0) * n**2) / root
    return 1.0 + 0.0j, f_t, f_z


def buckling_mode(m, geometry, material, n=None):
    """Explicit buckling-mode displacement field for axial wavenumber m.

    Real form of the mode amplitudes: f_r = sin(m_hat z) cos(n theta) with the
    closed-form tangential coefficients; returned as the U(f) field.
    """
    Lam = material.Lambda
    if n is None:
        n = koiter_circle_n(m, geometry, Lam)
    if m < 1:
        raise ParameterError("buckling mode requires m >= 1")
    m_hat = math.pi * m / geometry.L
    _, f_t_c, f_z_c = mode_amplitudes(m, n, geometry, material)
    # Re(f e^{i n theta}): real part -> cos(n theta), imaginary part -> -sin
    c_t = -float(f_t_c.imag)
    c_z = float(f_z_c.real)
    f_r = TrigSurface("cos", n, "sin", m_hat)
    f_t = TrigSurface("sin", n, "sin", m_hat, amp=c_t)
    f_z = TrigSurface("cos", n, "cos", m_hat, amp=c_z)
    return from_midsurface(f_r, f_t, f_z, bc_tag="average_top")


def mode_kstar_algebraic(m, n, geometry, material):
    """K* of the explicit mode by pure per-mode algebra (quadrature oracle)."""
    m_hat = math.pi * m / geometry.L
    f_r, f_t, f_z = mode_amplitudes(m, n, geometry, material)
    forms = reduced_forms(m_hat, n, material.Lambda, f_r, f_t, f_z)
    return material.mu * (forms.Q0 + geometry.h**2 / 12.0 * forms.Q1star) / forms.B
