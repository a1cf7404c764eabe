"""Isotropic material data, the trivial equilibrium branch, and stress weights.

The shell is loaded along the axis; the homogeneous (trivial) equilibrium
branch is parametrized by the load lambda through the coefficients a(lambda)
(radial expansion) and b(lambda) (axial contraction).  Stress weights are the
unit-normalized linearized stress tensors that enter the compressiveness
functional: perfect axial compression e_z (x) e_z, or the shear/hoop
imperfection variants.
"""

from dataclasses import dataclass, field
import math

import numpy as np
from scipy.optimize import brentq

from cylshell.errors import NoTrivialBranchError, ParameterError


@dataclass(frozen=True)
class Material:
    """Isotropic elastic constants with the derived combinations used here.

    mu = E/(2(1+nu)), Lambda = 2 nu/(1-2 nu), lambda_lame = mu*Lambda.
    The quadratic energy density is (L0 e, e) = lambda_lame (Tr e)^2
    + 2 mu |e|^2, coercive with constant alpha_L0 = 2 mu.
    """

    E: float
    nu: float
    mu: float
    lambda_lame: float
    Lambda: float

    @property
    def alpha_L0(self):
        return 2.0 * self.mu

    def energy_density(self, trace_e, norm_e_sq):
        """(L0 e, e) from Tr e and |e|^2."""
        return self.lambda_lame * trace_e**2 + 2.0 * self.mu * norm_e_sq


def derive_material(E, nu):
    """Build a Material from Young's modulus and Poisson's ratio."""
    if not E > 0:
        raise ParameterError(f"Young modulus E must be positive, got E={E}")
    if not 0 < nu < 0.5:
        raise ParameterError(f"Poisson ratio nu must lie in (0, 1/2), got nu={nu}")
    mu = E / (2.0 * (1.0 + nu))
    Lambda = 2.0 * nu / (1.0 - 2.0 * nu)
    return Material(E=E, nu=nu, mu=mu, lambda_lame=mu * Lambda, Lambda=Lambda)


@dataclass(frozen=True)
class ShellGeometry:
    """Cylindrical shell C_h = I_h x T x [0, L] with I_h = [1-h/2, 1+h/2]."""

    h: float
    L: float

    def __post_init__(self):
        if not 0 < self.h < 1:
            raise ParameterError(f"thickness h must lie in (0, 1), got h={self.h}")
        if not self.L > 0:
            raise ParameterError(f"length L must be positive, got L={self.L}")

    @property
    def r_inner(self):
        return 1.0 - self.h / 2.0

    @property
    def r_outer(self):
        return 1.0 + self.h / 2.0

    @property
    def I_h(self):
        return (self.r_inner, self.r_outer)


# Largest admissible b on the trivial branch: b < 1 - 1/sqrt(3).
B_MAX = 1.0 - 1.0 / math.sqrt(3.0)


@dataclass(frozen=True)
class TrivialBranch:
    """Coefficients of the homogeneous axisymmetric equilibrium at load lambda."""

    load: float
    a: float
    b: float
    residual: float


def trivial_branch_cubic(b, E, load):
    """Residual of E b (1-b)(2-b) = 2 lambda."""
    return E * b * (1.0 - b) * (2.0 - b) - 2.0 * load


def solve_trivial_branch(material, load):
    """Solve for the trivial branch (a, b) at the given load.

    b is the unique root of E b(1-b)(2-b) = 2 lambda in [0, 1 - 1/sqrt(3));
    a = sqrt(1 + nu(2b - b^2)) - 1.  Admissible loads: 0 <= lambda < E/(3 sqrt 3).
    """
    E, nu = material.E, material.nu
    load_max = E / (3.0 * math.sqrt(3.0))
    if load < 0 or load >= load_max:
        raise NoTrivialBranchError(
            f"no trivial branch at lambda={load}: admissible range is "
            f"0 <= lambda < E/(3*sqrt(3)) = {load_max:.6g}"
        )
    if load == 0.0:
        b = 0.0
    else:
        b = brentq(trivial_branch_cubic, 0.0, B_MAX, args=(E, load), xtol=1e-14)
    a = math.sqrt(1.0 + nu * (2.0 * b - b * b)) - 1.0
    residual = abs(trivial_branch_cubic(b, E, load))
    if residual > 1e-12 * E:
        raise NoTrivialBranchError(
            f"trivial-branch cubic residual {residual:.3e} exceeds 1e-12*E"
        )
    return TrivialBranch(load=load, a=a, b=b, residual=residual)


_COMPONENTS = ("rr", "rt", "rz", "tt", "tz", "zz")


def _check_periodic(f, name):
    vals = np.array([f(0.0), f(2 * np.pi)], dtype=float)
    scale = max(1.0, float(np.max(np.abs([f(t) for t in np.linspace(0, 2 * np.pi, 17)]))))
    if abs(vals[0] - vals[1]) > 1e-10 * scale:
        raise ParameterError(f"{name} is not 2*pi-periodic: "
                             f"f(0)={vals[0]:.6g} vs f(2*pi)={vals[1]:.6g}")


@dataclass(frozen=True)
class StressWeight:
    """Unit-normalized linearized stress sigma^0(theta, z).

    Component functions are keyed by 'rr', 'rt', 'rz', 'tt', 'tz', 'zz' and
    take broadcastable (theta, z) arrays.  Off-diagonal components enter the
    contraction twice.
    """

    kind: str
    components: dict = field(default_factory=dict)

    def tensor(self, theta, z):
        """Evaluate all six independent components at (theta, z) arrays."""
        theta = np.asarray(theta, dtype=float)
        z = np.asarray(z, dtype=float)
        out = {}
        for key in _COMPONENTS:
            f = self.components.get(key)
            if f is None:
                out[key] = np.zeros(np.broadcast(theta, z).shape)
            else:
                out[key] = np.broadcast_to(
                    np.asarray(f(theta, z), dtype=float), np.broadcast(theta, z).shape
                )
        return out


def perfect_stress():
    """Perfect axial compression: sigma = e_z (x) e_z."""
    return StressWeight(kind="perfect",
                        components={"zz": lambda theta, z: np.ones_like(theta + z)})


def shear_imperfection(s, t=None, ds=None):
    """Shear-imperfection stress: sigma_tz = s(theta), sigma_zz = t(theta) - z s'(theta).

    s and t are 2*pi-periodic; s' may be supplied as ``ds`` or is computed by
    a high-order central difference.
    """
    _check_periodic(s, "s")
    if t is not None:
        _check_periodic(t, "t")
    if ds is None:
        def ds(theta, _s=s, _eps=1e-6):
            th = np.asarray(theta, dtype=float)
            return (8 * (_s(th + _eps) - _s(th - _eps))
                    - (_s(th + 2 * _eps) - _s(th - 2 * _eps))) / (12 * _eps)

    def sigma_tz(theta, z):
        return np.asarray(s(theta)) + np.zeros_like(np.asarray(z, dtype=float))

    def sigma_zz(theta, z):
        tv = 0.0 if t is None else np.asarray(t(theta))
        return tv - np.asarray(z, dtype=float) * np.asarray(ds(theta))

    return StressWeight(kind="shear", components={"tz": sigma_tz, "zz": sigma_zz})


def hoop_imperfection(sigma_tt=None):
    """Hoop-imperfection stress: only sigma_tt nonzero (default 1)."""
    if sigma_tt is None:
        f = lambda theta, z: np.ones_like(theta + z)
    else:
        _check_periodic(sigma_tt, "sigma_tt")
        f = lambda theta, z: np.asarray(sigma_tt(theta)) + np.zeros_like(np.asarray(z, dtype=float))
    return StressWeight(kind="hoop", components={"tt": f})
