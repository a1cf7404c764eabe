"""Cylindrical-coordinate field calculus.

Displacement fields are sums of separable terms p(r)*s(theta, z) where p is a
polynomial in r and s carries closed-form partial derivatives.  This covers
every field family used here (trig modes, the compressed bending bump, the
trivial branch) and makes gradients, strains, the simplified tensors G/E and
A, and all L2 norms exactly computable by quadrature.

The mid-surface map U(f) builds the affine-in-(r-1) fields

    u_r = f_r,   u_theta = r f_theta - (r-1) f_r,theta,   u_z = f_z - (r-1) f_r,z

from surface profiles f; such fields form the linearized space on which the
reduced forms Q0, Q1, Q1* and B live.
"""

from dataclasses import dataclass, field as dc_field
import math

import numpy as np
from numpy.polynomial import Polynomial

from cylshell.errors import NotDestabilizingError, ParameterError, ShapeError
from cylshell.material import perfect_stress


# ---------------------------------------------------------------------------
# surface functions of (theta, z) with derivative access


class SurfaceFunction:
    """Base: callable (theta, z, dth=0, dz=0) -> broadcastable array."""

    def __call__(self, theta, z, dth=0, dz=0):
        raise NotImplementedError


def _trig(kind, freq, x, d):
    """d-th derivative of cos/sin(freq*x), or the constant 1 for kind 'one'."""
    x = np.asarray(x, dtype=float)
    if kind == "one":
        return np.ones_like(x) if d == 0 else np.zeros_like(x)
    shift = d * (np.pi / 2.0)
    if kind == "cos":
        return freq**d * np.cos(freq * x + shift)
    if kind == "sin":
        return freq**d * np.sin(freq * x + shift)
    raise ParameterError(f"unknown trig kind {kind!r}")


@dataclass(frozen=True)
class TrigSurface(SurfaceFunction):
    """amp * trig(n*theta) * trig(k*z)."""

    theta_kind: str = "one"
    n: float = 0.0
    z_kind: str = "one"
    k: float = 0.0
    amp: float = 1.0

    def __call__(self, theta, z, dth=0, dz=0):
        return (self.amp * _trig(self.theta_kind, self.n, theta, dth)
                * _trig(self.z_kind, self.k, z, dz))


@dataclass(frozen=True)
class PolyZSurface(SurfaceFunction):
    """amp * trig(n*theta) * q(z) for a polynomial q."""

    q: Polynomial
    theta_kind: str = "one"
    n: float = 0.0
    amp: float = 1.0

    def __call__(self, theta, z, dth=0, dz=0):
        qd = self.q.deriv(dz) if dz else self.q
        return self.amp * _trig(self.theta_kind, self.n, theta, dth) * qd(np.asarray(z, dtype=float))


@dataclass(frozen=True)
class Shifted(SurfaceFunction):
    """A surface function pre-differentiated by (dth, dz)."""

    base: SurfaceFunction
    dth: int = 0
    dz: int = 0

    def __call__(self, theta, z, dth=0, dz=0):
        return self.base(theta, z, dth + self.dth, dz + self.dz)


@dataclass(frozen=True)
class Scaled(SurfaceFunction):
    base: SurfaceFunction
    c: float

    def __call__(self, theta, z, dth=0, dz=0):
        return self.c * self.base(theta, z, dth, dz)


@dataclass(frozen=True)
class SumSurface(SurfaceFunction):
    parts: tuple

    def __call__(self, theta, z, dth=0, dz=0):
        return sum(p(theta, z, dth, dz) for p in self.parts)


# ---------------------------------------------------------------------------
# displacement fields


def _poly_deriv(p, d):
    return p.deriv(d) if d else p


@dataclass(frozen=True)
class Component:
    """Sum of separable terms (polynomial in r) * (surface function)."""

    terms: tuple = ()

    def __call__(self, r, theta, z, dr=0, dth=0, dz=0):
        r = np.asarray(r, dtype=float)
        shape = np.broadcast(r, np.asarray(theta, dtype=float),
                             np.asarray(z, dtype=float)).shape
        out = np.zeros(shape)
        for p, s in self.terms:
            out = out + _poly_deriv(p, dr)(r) * s(theta, z, dth, dz)
        return out

    def at_midsurface(self):
        """Collapse to a surface function u(1, theta, z)."""
        parts = []
        for p, s in self.terms:
            c = float(p(1.0))
            if c != 0.0:
                parts.append(Scaled(s, c))
        return SumSurface(tuple(parts))

    def radial_average(self, geometry):
        """Surface function: mean of u over I_h at fixed (theta, z)."""
        a, b = geometry.I_h
        parts = []
        for p, s in self.terms:
            q = p.integ()
            c = float(q(b) - q(a)) / geometry.h
            if c != 0.0:
                parts.append(Scaled(s, c))
        return SumSurface(tuple(parts))


ZERO_COMPONENT = Component(())

P_ONE = Polynomial([1.0])
P_R = Polynomial([0.0, 1.0])
P_RM1 = Polynomial([-1.0, 1.0])       # r - 1
P_NEG_RM1 = Polynomial([1.0, -1.0])   # -(r - 1)


@dataclass(frozen=True)
class DisplacementField:
    """Cylindrical displacement with closed-form partial derivatives.

    bc_tag is one of 'average_top' (u_r = u_theta = 0 at z in {0, L}, zero-mean
    u_z on the bottom annulus), 'fixed_bottom' (additionally u_z = 0 at z = 0),
    or None.
    """

    u_r: Component = ZERO_COMPONENT
    u_t: Component = ZERO_COMPONENT
    u_z: Component = ZERO_COMPONENT
    bc_tag: str = None


def from_midsurface(f_r, f_t=None, f_z=None, bc_tag=None):
    """Build the U(f) field from mid-surface profiles."""
    u_r = Component(((P_ONE, f_r),))
    t_terms = []
    if f_t is not None:
        t_terms.append((P_R, f_t))
    t_terms.append((P_NEG_RM1, Shifted(f_r, 1, 0)))
    z_terms = []
    if f_z is not None:
        z_terms.append((P_ONE, f_z))
    z_terms.append((P_NEG_RM1, Shifted(f_r, 0, 1)))
    return DisplacementField(u_r=u_r, u_t=Component(tuple(t_terms)),
                             u_z=Component(tuple(z_terms)), bc_tag=bc_tag)


GRAD_KEYS = ("rr", "rt", "rz", "tr", "tt", "tz", "zr", "zt", "zz")


def gradient(field, r, theta, z):
    """The nine cylindrical gradient components at (r, theta, z) arrays."""
    r = np.asarray(r, dtype=float)
    ur, ut, uz = field.u_r, field.u_t, field.u_z
    return {
        "rr": ur(r, theta, z, dr=1),
        "rt": (ur(r, theta, z, dth=1) - ut(r, theta, z)) / r,
        "rz": ur(r, theta, z, dz=1),
        "tr": ut(r, theta, z, dr=1),
        "tt": (ut(r, theta, z, dth=1) + ur(r, theta, z)) / r,
        "tz": ut(r, theta, z, dz=1),
        "zr": uz(r, theta, z, dr=1),
        "zt": uz(r, theta, z, dth=1) / r,
        "zz": uz(r, theta, z, dz=1),
    }


def simplified_G(field, r, theta, z):
    """The simplified gradient G(u): no 1/r weight on the (tt) and (zt) entries."""
    g = gradient(field, r, theta, z)
    r = np.asarray(r, dtype=float)
    g = dict(g)
    g["tt"] = g["tt"] * r
    g["zt"] = g["zt"] * r
    return g


def appendix_A(field, r, theta, z):
    """The appendix matrix A(u): no 1/r weights at all."""
    g = gradient(field, r, theta, z)
    r = np.asarray(r, dtype=float)
    g = dict(g)
    g["rt"] = g["rt"] * r
    g["tt"] = g["tt"] * r
    g["zt"] = g["zt"] * r
    return g


STRAIN_KEYS = ("rr", "tt", "zz", "rt", "rz", "tz")
# multiplicity of each strain component in |e|^2
STRAIN_WEIGHT = {"rr": 1.0, "tt": 1.0, "zz": 1.0, "rt": 2.0, "rz": 2.0, "tz": 2.0}


def symmetrize(g):
    """Strain-type tensor from a gradient-type dict."""
    return {
        "rr": g["rr"],
        "tt": g["tt"],
        "zz": g["zz"],
        "rt": 0.5 * (g["rt"] + g["tr"]),
        "rz": 0.5 * (g["rz"] + g["zr"]),
        "tz": 0.5 * (g["tz"] + g["zt"]),
    }


def strain(field, r, theta, z):
    return symmetrize(gradient(field, r, theta, z))


# ---------------------------------------------------------------------------
# quadrature


def _gauss(a, b, n):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w


@dataclass(frozen=True)
class Grid:
    """Tensor-product quadrature grid on I_h x [0, 2pi) x [0, L].

    measure: 'volume' (r dr dtheta dz), 'flat' (dr dtheta dz) or
    'surface' (dtheta dz on the mid-surface; the r direction is a single
    node at r = 1 with unit weight).
    """

    r_nodes: np.ndarray
    r_weights: np.ndarray
    th_nodes: np.ndarray
    th_weights: np.ndarray
    z_nodes: np.ndarray
    z_weights: np.ndarray
    measure: str = "volume"

    @property
    def R(self):
        return self.r_nodes[:, None, None]

    @property
    def TH(self):
        return self.th_nodes[None, :, None]

    @property
    def Z(self):
        return self.z_nodes[None, None, :]

    def with_measure(self, measure):
        return Grid(self.r_nodes, self.r_weights, self.th_nodes, self.th_weights,
                    self.z_nodes, self.z_weights, measure)

    def refined(self, factor=2):
        """Same domain with factor-times the nodes in theta and z (and r if Gauss)."""
        raise NotImplementedError("use the grid builders to refine")

    def integrate(self, values):
        w_r = self.r_weights * self.r_nodes if self.measure == "volume" else self.r_weights
        w = w_r[:, None, None] * self.th_weights[None, :, None] * self.z_weights[None, None, :]
        vals = np.broadcast_to(values, w.shape)
        return float(np.sum(w * vals))

    def norm_sq(self, values):
        return self.integrate(np.asarray(values) ** 2)


def volume_grid(geometry, n_r=6, n_th=16, n_z=16, theta_interval=None, measure="volume"):
    """Quadrature grid over C_h.

    theta is a uniform periodic-trapezoid rule on [0, 2pi) unless
    theta_interval=(a, b) is given, in which case Gauss-Legendre nodes on
    (a, b) are used (for compactly supported integrands).
    """
    a, b = geometry.I_h
    rn, rw = _gauss(a, b, n_r)
    if theta_interval is None:
        tn = np.arange(n_th) * (2.0 * np.pi / n_th)
        tw = np.full(n_th, 2.0 * np.pi / n_th)
    else:
        tn, tw = _gauss(theta_interval[0], theta_interval[1], n_th)
    zn, zw = _gauss(0.0, geometry.L, n_z)
    return Grid(rn, rw, tn, tw, zn, zw, measure)


def surface_grid(geometry, n_th=16, n_z=16, theta_interval=None):
    """Mid-surface grid (r = 1), measure dtheta dz."""
    if theta_interval is None:
        tn = np.arange(n_th) * (2.0 * np.pi / n_th)
        tw = np.full(n_th, 2.0 * np.pi / n_th)
    else:
        tn, tw = _gauss(theta_interval[0], theta_interval[1], n_th)
    zn, zw = _gauss(0.0, geometry.L, n_z)
    return Grid(np.array([1.0]), np.array([1.0]), tn, tw, zn, zw, "surface")


# ---------------------------------------------------------------------------
# boundary-condition verification


def verify_bc(field, geometry, tag=None, n_samples=64, tol=1e-10):
    """Check the field's boundary tag by sampling; returns True or raises."""
    tag = tag or field.bc_tag
    if tag is None:
        return True
    a, b = geometry.I_h
    L = geometry.L
    k = int(math.ceil(math.sqrt(n_samples)))
    rs = np.linspace(a, b, k)
    ths = np.linspace(0.0, 2.0 * np.pi, k, endpoint=False)
    R, TH = np.meshgrid(rs, ths, indexing="ij")
    # field scale for a relative tolerance
    zs = np.linspace(0.0, L, 9)
    scale = 0.0
    for comp in (field.u_r, field.u_t, field.u_z):
        for z0 in zs:
            scale = max(scale, float(np.max(np.abs(comp(R, TH, z0)))))
    scale = max(scale, 1e-300)
    for z0 in (0.0, L):
        for comp, name in ((field.u_r, "u_r"), (field.u_t, "u_theta")):
            err = float(np.max(np.abs(comp(R, TH, z0))))
            if err > tol * scale:
                raise ShapeError(f"{name} != 0 at z={z0}: max |{name}| = {err:.3e}")
    # zero mean of u_z over the bottom annulus
    rq, rwq = _gauss(a, b, 6)
    tq = np.arange(64) * (2.0 * np.pi / 64)
    vals = field.u_z(rq[:, None], tq[None, :], 0.0)
    mean = float(np.sum((rwq * rq)[:, None] * vals) * (2.0 * np.pi / 64))
    if abs(mean) > tol * scale * (2.0 * np.pi * geometry.h):
        raise ShapeError(f"u_z has nonzero bottom average {mean:.3e}")
    if tag == "fixed_bottom":
        err = float(np.max(np.abs(field.u_z(R, TH, 0.0))))
        if err > tol * scale:
            raise ShapeError(f"u_z != 0 at z=0: max = {err:.3e}")
    elif tag != "average_top":
        raise ParameterError(f"unknown bc tag {tag!r}")
    return True


# ---------------------------------------------------------------------------
# functionals


@dataclass(frozen=True)
class FunctionalValue:
    """Stability S, compressiveness C, and their ratio."""

    S: float
    C: float

    @property
    def ratio(self):
        if self.C <= 0.0:
            raise NotDestabilizingError(
                f"C = {self.C:.6g} <= 0: not a destabilizing variation")
        return self.S / self.C


def stability_integrand(material, e):
    tr = e["rr"] + e["tt"] + e["zz"]
    nsq = sum(STRAIN_WEIGHT[k] * e[k] ** 2 for k in STRAIN_KEYS)
    return material.lambda_lame * tr**2 + 2.0 * material.mu * nsq


def compressiveness_integrand(stress, g, theta, z):
    """(sigma, grad(u)^T grad(u)) pointwise."""
    sig = stress.tensor(theta, z)
    cols = {i: [g[a + i] for a in "rtz"] for i in "rtz"}
    out = 0.0
    pairs = (("r", "r", "rr", 1.0), ("t", "t", "tt", 1.0), ("z", "z", "zz", 1.0),
             ("r", "t", "rt", 2.0), ("r", "z", "rz", 2.0), ("t", "z", "tz", 2.0))
    for i, j, key, mult in pairs:
        s = sig[key]
        if np.any(s != 0.0):
            m = sum(ci * cj for ci, cj in zip(cols[i], cols[j]))
            out = out + mult * s * m
    return out


def functionals(field, stress, material, grid):
    """Stability and compressiveness of a variation under a stress weight."""
    if grid.measure != "volume":
        raise ParameterError("functionals require a volume-measure grid")
    g = gradient(field, grid.R, grid.TH, grid.Z)
    e = symmetrize(g)
    S = grid.integrate(stability_integrand(material, e))
    C = grid.integrate(compressiveness_integrand(stress, g, grid.TH, grid.Z))
    return FunctionalValue(S=S, C=C)


def linearize_radial(field, geometry):
    """Project onto the affine-in-(r-1) space generated by U(f).

    v_r is the radial average of u_r; the tangential and axial components are
    rebuilt from their mid-surface traces and v_r's surface derivatives.
    """
    v_r = field.u_r.radial_average(geometry)
    f_t = field.u_t.at_midsurface()
    f_z = field.u_z.at_midsurface()
    return DisplacementField(
        u_r=Component(((P_ONE, v_r),)),
        u_t=Component(((P_R, f_t), (P_NEG_RM1, Shifted(v_r, 1, 0)))),
        u_z=Component(((P_ONE, f_z), (P_NEG_RM1, Shifted(v_r, 0, 1)))),
        bc_tag=field.bc_tag,
    )


def _is_xlin(field, geometry, tol=1e-9):
    """Sampled check that linearize_radial fixes the field."""
    lin = linearize_radial(field, geometry)
    a, b = geometry.I_h
    rs = np.linspace(a, b, 5)[:, None, None]
    ths = np.linspace(0.0, 2.0 * np.pi, 7, endpoint=False)[None, :, None]
    zs = np.linspace(0.05 * geometry.L, 0.95 * geometry.L, 5)[None, None, :]
    for c1, c2 in ((field.u_r, lin.u_r), (field.u_t, lin.u_t), (field.u_z, lin.u_z)):
        v1 = c1(rs, ths, zs)
        v2 = c2(rs, ths, zs)
        scale = max(float(np.max(np.abs(v1))), 1e-300)
        if float(np.max(np.abs(v1 - v2))) > tol * scale:
            return False
    return True


def reduced_surface_forms(field, geometry, grid):
    """Q0, Q1, Q1*, B of a U(f)-form field by mid-surface quadrature.

    The grid must have measure 'surface'.  Derivative inputs are read off the
    field's mid-surface traces.
    """
    if grid.measure != "surface":
        raise ParameterError("reduced forms require a surface-measure grid")
    th, z = grid.TH, grid.Z
    f_r = field.u_r.at_midsurface()
    f_t = field.u_t.at_midsurface()
    f_z = field.u_z.at_midsurface()

    fr = f_r(th, z)
    fr_z = f_r(th, z, 0, 1)
    fr_zz = f_r(th, z, 0, 2)
    fr_tt = f_r(th, z, 2, 0)
    fr_tz = f_r(th, z, 1, 1)
    ft_t = f_t(th, z, 1, 0)
    ft_z = f_t(th, z, 0, 1)
    fz_t = f_z(th, z, 1, 0)
    fz_z = f_z(th, z, 0, 1)

    q0_parts = {
        "trace": grid.integrate((ft_t + fz_z + fr) ** 2),
        "hoop": grid.integrate((ft_t + fr) ** 2),
        "axial": grid.integrate(fz_z**2),
        "shear": grid.integrate((ft_z + fz_t) ** 2),
    }
    q1_parts = {
        "trace": grid.integrate((fr_zz + fr_tt - ft_t) ** 2),
        "hoop": grid.integrate((fr_tt - ft_t) ** 2),
        "axial": grid.integrate(fr_zz**2),
        "shear": grid.integrate((ft_z - 2.0 * fr_tz) ** 2),
    }
    q1star_core = grid.integrate((fr_tt + fr_zz) ** 2)
    B = grid.integrate(fr_z**2)
    return q0_parts, q1_parts, q1star_core, B


def _combine_q(parts, Lambda):
    return (Lambda * parts["trace"] + 2.0 * parts["hoop"]
            + 2.0 * parts["axial"] + parts["shear"])


def functional_family(field, material, geometry, grid, stress=None,
                      surface_grid_=None, want_kstar=True):
    """The buckling-equivalent functional family {K, K1, K0, K*} on one field.

    K  = S / C for the given stress (default perfect axial compression);
    K1 = S / ||u_r,z||^2;
    K0 = (flat-measure integral of (L0 E(u), E(u))) / ||u_r,z||^2, where E is
         the symmetrized simplified gradient;
    K* = mu (Q0 + h^2/12 Q1*) / B, defined only for U(f)-form fields.
    """
    stress = stress or perfect_stress()
    g = gradient(field, grid.R, grid.TH, grid.Z)
    e = symmetrize(g)
    S = grid.integrate(stability_integrand(material, e))
    C = grid.integrate(compressiveness_integrand(stress, g, grid.TH, grid.Z))
    urz_sq = grid.norm_sq(g["rz"])
    if urz_sq <= 0.0:
        raise NotDestabilizingError("||u_r,z||^2 = 0: K1/K0 undefined")

    G = simplified_G(field, grid.R, grid.TH, grid.Z)
    E = symmetrize(G)
    flat = grid.with_measure("flat")
    K0_num = flat.integrate(stability_integrand(material, E))

    out = {
        "K": S / C if C > 0 else np.inf,
        "K1": S / urz_sq,
        "K0": K0_num / urz_sq,
        "S": S,
        "C": C,
    }
    if want_kstar:
        if not _is_xlin(field, geometry):
            raise ShapeError("K* requested for a field not of the U(f) form")
        sgrid = surface_grid_ or surface_grid(geometry, n_th=grid.th_nodes.size,
                                              n_z=grid.z_nodes.size)
        q0p, q1p, q1s_core, B = reduced_surface_forms(field, geometry, sgrid)
        Q0 = _combine_q(q0p, material.Lambda)
        Q1star = (material.Lambda + 2.0) * q1s_core
        out["Kstar"] = material.mu * (Q0 + geometry.h**2 / 12.0 * Q1star) / B
        out["Q0"] = Q0
        out["Q1"] = _combine_q(q1p, material.Lambda)
        out["Q1star"] = Q1star
        out["B"] = B
    return out
