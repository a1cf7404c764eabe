"""Optimal bending ansatz and its scaling laws.

A compactly supported bump phi(eta, z) is compressed circumferentially by
n_h = floor(h^(-1/4)) and turned into the mid-surface profile family

    f_r = -phi^h_,theta theta,   f_theta = phi^h_,theta,   f_z = -phi^h_,z,

whose U(f) field U^h realizes the h^(3/2) Korn-constant scaling:

    lim h^(1/4) ||grad U^h||^2 = 2 ||phi_,eta eta eta||^2,
    lim h^(-5/4) ||e(U^h)||^2  = ||phi_,zz||^2 + (1/12) ||phi_,eta eta eta eta||^2.

(The off-diagonal (r, theta) block of grad U^h is exactly antisymmetric, so
both entries carry the leading term; hence the factor 2.)  The remaining
gradient components split into groups scaling as h^(-1/4), h^(1/4), h^(3/4)
and h^(5/4), with ||U_r||^2 = O(h^(1/4)).  The stability/compressiveness
ratio of U^h scales as h for perfect axial compression, as h^(5/4) for a
shear-imperfection weight paired with a circumferentially skewed bump, and
as h^(3/2) for a hoop-imperfection weight.
"""

from dataclasses import dataclass, field as dc_field
import math

import numpy as np
from numpy.polynomial import Polynomial

from cylshell.errors import ParameterError
from cylshell.material import ShellGeometry
from cylshell.fields import (Scaled, Shifted, SumSurface, SurfaceFunction,
                             from_midsurface, functionals, gradient,
                             symmetrize, volume_grid, GRAD_KEYS)
from cylshell.scaling import ScalingFit, fit_exponent


def _poly_pow(p, k):
    out = Polynomial([1.0])
    for _ in range(k):
        out = out * p
    return out


@dataclass(frozen=True)
class BumpProfile:
    """Compactly supported C^4 bump phi(eta, z) on (-eta0, eta0) x (0, L).

    The base shape is (1 - (eta/eta0)^2)^5 (z(L-z)/L^2)^5; a nonzero ``skew``
    adds the non-separable tilt factor (1 + skew (eta/eta0)(z/L)), which
    leaves the support and the C^4 regularity untouched.  Internally the bump
    is a sum of separable polynomial terms, so every squared-derivative
    integral is an exact polynomial integral.
    """

    eta0: float
    L: float
    skew: float = 0.0
    terms: tuple = dc_field(default=None)

    def __post_init__(self):
        if not 0.0 < self.eta0 < math.pi:
            raise ParameterError(f"eta0 must lie in (0, pi), got {self.eta0}")
        if not self.L > 0:
            raise ParameterError(f"L must be positive, got {self.L}")
        P = _poly_pow(Polynomial([1.0, 0.0, -1.0 / self.eta0**2]), 5)
        Z = _poly_pow(Polynomial([0.0, 1.0 / self.L, -1.0 / self.L**2]), 5)
        terms = [(P, Z)]
        if self.skew != 0.0:
            eta_p = Polynomial([0.0, 1.0 / self.eta0])
            z_p = Polynomial([0.0, 1.0 / self.L])
            terms.append((self.skew * (P * eta_p), Z * z_p))
        object.__setattr__(self, "terms", tuple(terms))

    def __call__(self, eta, z, d_eta=0, d_z=0):
        eta = np.asarray(eta, dtype=float)
        z = np.asarray(z, dtype=float)
        inside = (np.abs(eta) < self.eta0) & (z > 0.0) & (z < self.L)
        out = np.zeros(np.broadcast(eta, z).shape)
        for P, Z in self.terms:
            Pd = P.deriv(d_eta) if d_eta else P
            Zd = Z.deriv(d_z) if d_z else Z
            out = out + Pd(eta) * Zd(z)
        return np.where(inside, out, 0.0)

    def norm_sq(self, d_eta=0, d_z=0):
        """Exact integral of (d^a_eta d^b_z phi)^2 over the support."""
        total = 0.0
        for Pi, Zi in self.terms:
            for Pj, Zj in self.terms:
                pe = (Pi.deriv(d_eta) if d_eta else Pi) * (Pj.deriv(d_eta) if d_eta else Pj)
                pz = (Zi.deriv(d_z) if d_z else Zi) * (Zj.deriv(d_z) if d_z else Zj)
                qe = pe.integ()
                qz = pz.integ()
                total += (float(qe(self.eta0) - qe(-self.eta0))
                          * float(qz(self.L) - qz(0.0)))
        return total

    def gradient_limit(self):
        """Limit of h^(1/4) ||grad U^h||^2: both off-diagonal (r, theta)
        entries carry phi_,eta eta eta, hence the factor 2."""
        return 2.0 * self.norm_sq(3, 0)

    def strain_limit(self):
        """Limit of h^(-5/4) ||e(U^h)||^2."""
        return self.norm_sq(0, 2) + self.norm_sq(4, 0) / 12.0


@dataclass(frozen=True)
class CompressedBump(SurfaceFunction):
    """phi^h(theta, z) = phi(n_h theta, z), 2 pi-periodic in theta."""

    bump: BumpProfile
    n_h: int

    def __call__(self, theta, z, dth=0, dz=0):
        theta = np.asarray(theta, dtype=float)
        wrapped = np.mod(theta + math.pi, 2.0 * math.pi) - math.pi
        return self.n_h**dth * self.bump(self.n_h * wrapped, z, dth, dz)


def wavenumber(h):
    """n_h = floor(h^(-1/4)), with a guard against floating-point floor slip
    for h of the exact form n^(-4)."""
    if not 0.0 < h < 1.0:
        raise ParameterError(f"h must lie in (0, 1), got {h}")
    return int(math.floor(h**-0.25 + 1e-9))


@dataclass(frozen=True)
class AnsatzField:
    """The bending ansatz at thickness h: field, compressed bump, support."""

    h: float
    n_h: int
    bump: BumpProfile
    phi: CompressedBump
    field: object

    @property
    def support(self):
        """Theta interval carrying the compressed bump."""
        half = self.bump.eta0 / self.n_h
        return (-half, half)


def build_ansatz(h, bump, geometry):
    """Bending ansatz U^h from the compressed bump at thickness h."""
    if abs(geometry.L - bump.L) > 1e-12 * bump.L:
        raise ParameterError(
            f"bump axial length {bump.L} does not match shell length {geometry.L}")
    n_h = wavenumber(h)
    phi = CompressedBump(bump=bump, n_h=n_h)
    f_r = Scaled(Shifted(phi, 2, 0), -1.0)
    f_t = Shifted(phi, 1, 0)
    f_z = Scaled(Shifted(phi, 0, 1), -1.0)
    field = from_midsurface(f_r, f_t, f_z, bc_tag="fixed_bottom")
    return AnsatzField(h=h, n_h=n_h, bump=bump, phi=phi, field=field)


def ansatz_grid(ansatz, geometry, n_r=8, n_th=64, n_z=64):
    """Volume quadrature restricted to the bump's theta support.

    Gauss nodes on the support interval integrate the (piecewise-polynomial)
    ansatz integrands exactly; 64 nodes on the compressed support exceed the
    resolution of 64 n_h uniform nodes on the full circle.
    """
    return volume_grid(geometry, n_r=n_r, n_th=n_th, n_z=n_z,
                       theta_interval=ansatz.support)


def _norms(ansatz, geometry, grid=None):
    grid = grid or ansatz_grid(ansatz, geometry)
    g = gradient(ansatz.field, grid.R, grid.TH, grid.Z)
    e = symmetrize(g)
    grad_sq = sum(grid.norm_sq(g[k]) for k in GRAD_KEYS)
    strain_sq = sum(w * grid.norm_sq(e[k]) for k, w in
                    (("rr", 1.0), ("tt", 1.0), ("zz", 1.0),
                     ("rt", 2.0), ("rz", 2.0), ("tz", 2.0)))
    return g, grad_sq, strain_sq, grid


@dataclass(frozen=True)
class QuantityTable:
    """One scaling quantity: (h, value) rows, normalized values, fit, target."""

    name: str
    points: tuple
    normalized: tuple = ()
    fit: ScalingFit = None
    target: float = None


@dataclass(frozen=True)
class ScalingReport:
    tables: dict

    def __getitem__(self, name):
        return self.tables[name]


def verify_limits(bump, h_list, geometry):
    """Gradient and strain norms of U^h against their exact bump limits.

    Reports h^(1/4) ||grad U^h||^2 normalized by 2 ||phi_,eta eta eta||^2 and
    h^(-5/4) ||e(U^h)||^2 normalized by ||phi_,zz||^2 + ||phi_,eeee||^2 / 12.
    """
    if len(h_list) == 0:
        raise ParameterError("h_list must be non-empty")
    grad_target = bump.gradient_limit()
    strain_target = bump.strain_limit()
    grad_pts, grad_norm, strain_pts, strain_norm = [], [], [], []
    for h in sorted(h_list, reverse=True):
        geo = ShellGeometry(h=h, L=geometry.L)
        ans = build_ansatz(h, bump, geo)
        _, grad_sq, strain_sq, _ = _norms(ans, geo)
        grad_pts.append((h, grad_sq))
        grad_norm.append(h**0.25 * grad_sq / grad_target)
        strain_pts.append((h, strain_sq))
        strain_norm.append(h**-1.25 * strain_sq / strain_target)
    tables = {
        "gradient": QuantityTable("gradient", tuple(grad_pts), tuple(grad_norm),
                                  target=grad_target),
        "strain": QuantityTable("strain", tuple(strain_pts), tuple(strain_norm),
                                target=strain_target),
    }
    return ScalingReport(tables=tables)


# gradient-component groups and their absolute h-powers; the off-diagonal
# (r, theta) pair carries the full gradient (h^(-1/4)), the diagonal pair
# matches the strain scaling (h^(5/4)), and ||U_r||^2 = O(h^(1/4))
COMPONENT_GROUPS = {
    "rtheta_pair": ("rt", "tr"),
    "rz_pair": ("rz", "zr"),
    "thetaz_pair": ("tz", "zt"),
    "diag_pair": ("tt", "zz"),
}

COMPONENT_EXPONENTS = {
    "rtheta_pair": -0.25,
    "rz_pair": 0.25,
    "thetaz_pair": 0.75,
    "diag_pair": 1.25,
    "u_r": 0.25,
}


def component_scalings(bump, h_list, geometry):
    """Fitted h-exponents of the squared gradient-component group norms."""
    if len(h_list) == 0:
        raise ParameterError("h_list must be non-empty")
    values = {name: [] for name in COMPONENT_EXPONENTS}
    for h in sorted(h_list, reverse=True):
        geo = ShellGeometry(h=h, L=geometry.L)
        ans = build_ansatz(h, bump, geo)
        grid = ansatz_grid(ans, geo)
        g = gradient(ans.field, grid.R, grid.TH, grid.Z)
        for name, keys in COMPONENT_GROUPS.items():
            values[name].append((h, sum(grid.norm_sq(g[k]) for k in keys)))
        u_r = ans.field.u_r(grid.R, grid.TH, grid.Z)
        values["u_r"].append((h, grid.norm_sq(u_r)))
    tables = {}
    for name, pts in values.items():
        fit = fit_exponent(pts, min_points=min(3, len(pts)))
        tables[name] = QuantityTable(name, tuple(pts), fit=fit,
                                     target=COMPONENT_EXPONENTS[name])
    return ScalingReport(tables=tables)


def compressiveness_scaling(bump, h_list, geometry, material, stress):
    """Fitted exponent of the stability/compressiveness ratio of U^h.

    Points with non-positive compressiveness are reported in the ``excluded``
    table instead of entering the fit.
    """
    if len(h_list) == 0:
        raise ParameterError("h_list must be non-empty")
    pts, excluded = [], []
    for h in sorted(h_list, reverse=True):
        geo = ShellGeometry(h=h, L=geometry.L)
        ans = build_ansatz(h, bump, geo)
        grid = ansatz_grid(ans, geo)
        val = functionals(ans.field, stress, material, grid)
        if val.C <= 0.0:
            excluded.append((h, val.C))
        else:
            pts.append((h, val.S / val.C))
    fit = fit_exponent(pts, min_points=min(3, len(pts))) if len(pts) >= 3 else None
    tables = {
        "ratio": QuantityTable("ratio", tuple(pts), fit=fit),
        "excluded": QuantityTable("excluded", tuple(excluded)),
    }
    return ScalingReport(tables=tables)
