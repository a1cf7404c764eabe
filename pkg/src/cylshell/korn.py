"""Korn-constant and gradient-component scaling verification.

Fourier reduction: on the cylinder every quadratic form appearing in the Korn
quotient ||e(u)||^2 / ||grad u||^2 decouples over modes

    u_r = f_r(r) sin(m_hat z) cos(n theta),
    u_t = f_t(r) sin(m_hat z) sin(n theta),
    u_z = f_z(r) cos(m_hat z) cos(n theta),

so the infimum is a minimum over (m, n) of small radial generalized
eigenproblems.  The radial profiles are discretized by Chebyshev-Gauss-Lobatto
collocation (spectral differentiation + Clenshaw-Curtis weights); a uniform
first-order nodal scheme is kept as a cross-check.
"""

from dataclasses import dataclass
import math

import numpy as np
import scipy.linalg

from cylshell.errors import ParameterError, SolverError

COMPONENT_GROUPS = {
    "ththzz": ("tt", "zz"),
    "rthr": ("rt", "tr"),
    "urrzzr": ("ur", "rz", "zr"),
    "thzzth": ("tz", "zt"),
}

# predicted absolute growth exponents of sup component^2 / ||e||^2
COMPONENT_EXPONENTS = {"ththzz": 0.0, "rthr": -1.5, "urrzzr": -1.0, "thzzth": -0.5}


def _cheb_lobatto(N):
    """Nodes, differentiation matrix, Clenshaw-Curtis weights on [-1, 1]."""
    if N < 2:
        raise ParameterError("need at least 2 radial nodes")
    j = np.arange(N + 1)
    x = np.cos(np.pi * j / N)
    c = np.ones(N + 1)
    c[0] = c[-1] = 2.0
    c = c * (-1.0) ** j
    X = np.tile(x, (N + 1, 1)).T
    dX = X - X.T
    D = np.outer(c, 1.0 / c) / (dX + np.eye(N + 1))
    D = D - np.diag(D.sum(axis=1))
    # Clenshaw-Curtis weights
    w = np.zeros(N + 1)
    theta = np.pi * j / N
    v = np.ones(N - 1)
    if N % 2 == 0:
        w[0] = w[N] = 1.0 / (N**2 - 1)
        for k in range(1, N // 2):
            v = v - 2.0 * np.cos(2.0 * k * theta[1:-1]) / (4.0 * k**2 - 1)
        v = v - np.cos(N * theta[1:-1]) / (N**2 - 1)
    else:
        w[0] = w[N] = 1.0 / N**2
        for k in range(1, (N - 1) // 2 + 1):
            v = v - 2.0 * np.cos(2.0 * k * theta[1:-1]) / (4.0 * k**2 - 1)
    w[1:-1] = 2.0 * v / N
    # reverse so nodes ascend; the reversal is a symmetric permutation of D
    return x[::-1], D[::-1, ::-1], w[::-1]


@dataclass(frozen=True)
class RadialGrid:
    """Collocation grid on I_h: nodes, first-derivative matrix, weights."""

    nodes: np.ndarray
    D: np.ndarray
    weights: np.ndarray
    kind: str = "cheb"

    @property
    def N(self):
        return self.nodes.size


def radial_grid(geometry, N=32, kind="cheb"):
    a, b = geometry.I_h
    if kind == "cheb":
        x, D, w = _cheb_lobatto(N - 1)
        scale = (b - a) / 2.0
        nodes = a + (x + 1.0) * scale
        return RadialGrid(nodes=nodes, D=D / scale, weights=w * scale, kind=kind)
    if kind == "fd":
        nodes = np.linspace(a, b, N)
        dr = nodes[1] - nodes[0]
        D = np.zeros((N, N))
        for i in range(1, N - 1):
            D[i, i - 1], D[i, i + 1] = -0.5 / dr, 0.5 / dr
        D[0, 0:3] = np.array([-1.5, 2.0, -0.5]) / dr
        D[-1, -3:] = np.array([0.5, -2.0, 1.5]) / dr
        w = np.full(N, dr)
        w[0] = w[-1] = dr / 2.0
        return RadialGrid(nodes=nodes, D=D, weights=w, kind=kind)
    raise ParameterError(f"unknown radial grid kind {kind!r}")


@dataclass(frozen=True)
class QuadraticFormPair:
    """Numerator/denominator forms, assembled and in factored (rows, weights) form.

    The factored representation evaluates v -> sum_k W_k (A v)_k^2 directly;
    for strongly graded operators this avoids the roundoff floor eps*||A' W A||
    that the assembled matrices carry, which matters when the quotient itself
    is many orders of magnitude below the matrix norms.
    """

    S: np.ndarray
    M: np.ndarray
    dof_map: tuple
    S_factors: tuple = ()
    M_factors: tuple = ()
    W: np.ndarray = None

    def eval_S(self, v):
        return _eval_factored(self.S_factors, self.W, v)

    def eval_M(self, v):
        return _eval_factored(self.M_factors, self.W, v)

    def quotient(self, v):
        return self.eval_S(v) / self.eval_M(v)


def _eval_factored(factors, W, v):
    total = 0.0
    for A, mult in factors:
        y = A @ v
        total += mult * float(W @ (y * y))
    return total


def _component_operators(m, n, geometry, grid):
    """Profile operators A_c with (component values) = A_c @ dofs.

    Returns (ops, weight matrix diag, angular-z factor, dof_map).
    """
    N = grid.N
    r = grid.nodes
    D = grid.D
    m_hat = math.pi * m / geometry.L
    ang = math.pi if n >= 1 else 2.0 * math.pi
    if m >= 1:
        Z = np.zeros((N, N))
        I = np.eye(N)
        Fr = np.hstack([I, Z, Z])
        Ft = np.hstack([Z, I, Z])
        Fz = np.hstack([Z, Z, I])
        DFr = np.hstack([D, Z, Z])
        DFt = np.hstack([Z, D, Z])
        DFz = np.hstack([Z, Z, D])
        Rinv = 1.0 / r
        ops = {
            "rr": DFr,
            "rt": Rinv[:, None] * (-n * Fr - Ft),
            "rz": m_hat * Fr,
            "tr": DFt,
            "tt": Rinv[:, None] * (n * Ft + Fr),
            "tz": m_hat * Ft,
            "zr": DFz,
            "zt": -n * Rinv[:, None] * Fz,
            "zz": -m_hat * Fz,
            "ur": Fr,
        }
        zfac = geometry.L / 2.0
        dof_map = ("f_r", "f_t", "f_z")
    else:
        I = np.eye(N)
        Zop = np.zeros((N, N))
        Rinv = 1.0 / r
        ops = {
            "rr": Zop, "rt": Zop, "rz": Zop, "tr": Zop, "tt": Zop, "tz": Zop,
            "zr": D.copy(),
            "zt": -n * Rinv[:, None] * I,
            "zz": Zop,
            "ur": Zop,
        }
        zfac = geometry.L
        dof_map = ("f_z",)
    return ops, grid.weights * r, ang * zfac, dof_map


def _strain_ops(ops):
    return {
        "rr": (ops["rr"], 1.0),
        "tt": (ops["tt"], 1.0),
        "zz": (ops["zz"], 1.0),
        "rt": (0.5 * (ops["rt"] + ops["tr"]), 2.0),
        "rz": (0.5 * (ops["rz"] + ops["zr"]), 2.0),
        "tz": (0.5 * (ops["tz"] + ops["zt"]), 2.0),
    }


def form_factors(kind, m, n, geometry, grid):
    """Row operators and weights of one norm on mode (m, n).

    kind: 'strain', 'grad', 'ur', 'urz', 'utz', or 'component:<group>' with
    group in COMPONENT_GROUPS.  Returns (factors, W, dof_map) with
    factors = ((A, mult), ...) such that the form is sum mult * W-weighted
    ||A v||^2.
    """
    ops, wr, angz, dof_map = _component_operators(m, n, geometry, grid)
    W = wr * angz
    if kind == "strain":
        factors = tuple(_strain_ops(ops).values())
    elif kind == "grad":
        factors = tuple((ops[c], 1.0) for c in
                        ("rr", "rt", "rz", "tr", "tt", "tz", "zr", "zt", "zz"))
    elif kind == "ur":
        factors = ((ops["ur"], 1.0),)
    elif kind == "urz":
        factors = ((ops["rz"], 1.0),)
    elif kind == "utz":
        factors = ((ops["tz"], 1.0),)
    elif kind.startswith("component:"):
        group = kind.split(":", 1)[1]
        if group not in COMPONENT_GROUPS:
            raise ParameterError(f"unknown component group {group!r}")
        factors = tuple((ops[c], 1.0) for c in COMPONENT_GROUPS[group])
    else:
        raise ParameterError(f"unknown form kind {kind!r}")
    return factors, W, dof_map


def _assemble(factors, W):
    ndof = factors[0][0].shape[1]
    out = np.zeros((ndof, ndof))
    for A, mult in factors:
        out += mult * (A.T * W) @ A
    return 0.5 * (out + out.T)


def form_matrix(kind, m, n, geometry, grid):
    """Assemble the quadratic-form matrix of one norm on mode (m, n)."""
    factors, W, dof_map = form_factors(kind, m, n, geometry, grid)
    return _assemble(factors, W), dof_map


def _constraint_basis(m, n, geometry, grid):
    """Basis of the admissible DOF space; removes the m=n=0 constant u_z."""
    if m == 0 and n == 0:
        # zero bottom-average: the annulus integral of f_z vanishes; keep the
        # orthogonal complement of the constraint vector
        c = grid.weights * grid.nodes
        c = c / np.linalg.norm(c)
        proj = np.eye(grid.N) - np.outer(c, c)
        u, s, _ = np.linalg.svd(proj)
        return u[:, s > 1e-10]
    return None


def assemble_mode_forms(m, n, geometry, grid, numerator="strain", denominator="grad"):
    """Quadratic-form pair for the Rayleigh quotient numerator/denominator."""
    S_factors, W, dof_map = form_factors(numerator, m, n, geometry, grid)
    M_factors, _, _ = form_factors(denominator, m, n, geometry, grid)
    B = _constraint_basis(m, n, geometry, grid)
    if B is not None:
        S_factors = tuple((A @ B, mult) for A, mult in S_factors)
        M_factors = tuple((A @ B, mult) for A, mult in M_factors)
    return QuadraticFormPair(S=_assemble(S_factors, W), M=_assemble(M_factors, W),
                             dof_map=dof_map, S_factors=S_factors,
                             M_factors=M_factors, W=W)


def _solve_pencil(pair, index, check_residual=True):
    """One extreme eigenpair of the quotient via a one-sided QR/SVD reduction.

    The numerator and denominator forms are kept as weighted row stacks
    C_num, C_den (never squared into matrices), the denominator is reduced by
    a QR factorization C_den = Q R, and the extreme quotients are the squared
    extreme singular values of B = C_num R^{-1}.  This is backward stable:
    the tiny Korn quotients at small thickness come out with relative
    accuracy ~ eps * cond(B), where cond(B)^2 is the quotient spread itself,
    whereas any formulation squaring the operators hits an absolute noise
    floor eps * ||C||^2 that can exceed the answer by orders of magnitude.

    The residual ||S y - lam M y|| <= 1e-8 ||M y|| is enforced in the
    R-transformed coordinates (S, M) = (B^T B, I) where the problem is
    actually solved.
    """
    Cs = _stack_factors(pair.S_factors, pair.W)
    Cm = _stack_factors(pair.M_factors, pair.W)
    R = np.linalg.qr(Cm, mode="r")
    dR = np.abs(np.diag(R))
    if not np.all(dR > 1e-14 * dR.max()):
        raise SolverError("denominator form numerically rank-deficient")
    try:
        B = scipy.linalg.solve_triangular(R, Cs.T, lower=False, trans="T").T
    except scipy.linalg.LinAlgError as exc:
        raise SolverError(f"denominator reduction failed: {exc}") from exc
    _, s, Vt = np.linalg.svd(B, full_matrices=False)
    y = Vt[-1 if index == 0 else 0]          # singular values sort descending
    lam = float(s[-1 if index == 0 else 0] ** 2)
    if check_residual:
        res = np.linalg.norm(B.T @ (B @ y) - lam * y)
        if res > 1e-8 * max(1.0, lam):
            raise SolverError(f"eigen residual {res:.3e} exceeds 1e-8")
    v = scipy.linalg.solve_triangular(R, y, lower=False)
    return float(pair.quotient(v)), v


def _stack_factors(factors, W):
    """Stack weighted operator rows so the form is ||stack @ v||^2."""
    sqw = np.sqrt(W)
    return np.vstack([math.sqrt(mult) * (sqw[:, None] * A) for A, mult in factors])


def min_rayleigh(pair, check_residual=True):
    """Smallest generalized eigenvalue of (S, M) with its eigenvector."""
    return _solve_pencil(pair, 0, check_residual)


def max_rayleigh(pair, check_residual=True):
    """Largest generalized eigenvalue of (S, M)."""
    return _solve_pencil(pair, -1, check_residual)


def _geometric_ladder(lo, hi, ratio=1.35):
    vals = []
    x = float(max(lo, 1))
    while x <= hi:
        vals.append(int(round(x)))
        x = max(x * ratio, x + 1.0)
    vals.append(int(hi))
    return sorted(set(v for v in vals if lo <= v <= hi))


@dataclass(frozen=True)
class ScanResult:
    value: float
    m: int
    n: int
    on_boundary: bool
    evaluations: int


def _scan_extremize(eval_fn, m_range, n_range, maximize=False):
    """Coarse geometric scan then local refinement around the extremum."""
    m_lo, m_hi = m_range
    n_lo, n_hi = n_range
    cache = {}

    def get(m, n):
        key = (m, n)
        if key not in cache:
            cache[key] = eval_fn(m, n)
        return cache[key]

    sign = -1.0 if maximize else 1.0
    ms = _geometric_ladder(max(m_lo, 1), m_hi) + ([0] if m_lo == 0 else [])
    ns = _geometric_ladder(max(n_lo, 1), n_hi) + ([0] if n_lo == 0 else [])
    candidates = [(m, n) for m in ms for n in ns]
    best = min(candidates, key=lambda mn: sign * get(*mn))
    # local refinement: walk until the extremum is interior to its neighborhood
    for _ in range(200):
        m0, n0 = best
        neigh = [(m0 + dm, n0 + dn) for dm in (-2, -1, 0, 1, 2) for dn in (-2, -1, 0, 1, 2)
                 if m_lo <= m0 + dm <= m_hi and n_lo <= n0 + dn <= n_hi]
        new_best = min(neigh, key=lambda mn: sign * get(*mn))
        if new_best == best:
            break
        best = new_best
    m0, n0 = best
    on_boundary = (m0 in (m_hi,)) or (n0 in (n_hi,))
    return ScanResult(value=get(m0, n0), m=m0, n=n0, on_boundary=on_boundary,
                      evaluations=len(cache))


def default_scan_caps(geometry):
    cap = int(math.ceil(3.0 / math.sqrt(geometry.h)))
    return min(cap, 512), min(cap, 512)


def korn_constant(geometry, grid=None, m_max=None, n_max=None, N=32):
    """K(V_h) = min over modes of ||e||^2 / ||grad u||^2, with argmin.

    Returns a ScanResult; ``on_boundary`` warns that the scan caps were
    probably too small.
    """
    grid = grid or radial_grid(geometry, N=N)
    m_cap, n_cap = default_scan_caps(geometry)
    m_max = m_max or m_cap
    n_max = n_max or n_cap

    def quotient(m, n):
        pair = assemble_mode_forms(m, n, geometry, grid, "strain", "grad")
        return min_rayleigh(pair)[0]

    return _scan_extremize(quotient, (1, m_max), (0, n_max), maximize=False)


def component_bound(geometry, group, grid=None, m_max=None, n_max=None, N=32):
    """sup over modes of (component-group norm^2) / ||e||^2."""
    if group not in COMPONENT_GROUPS:
        raise ParameterError(f"unknown component group {group!r}; "
                             f"choose from {sorted(COMPONENT_GROUPS)}")
    grid = grid or radial_grid(geometry, N=N)
    m_cap, n_cap = default_scan_caps(geometry)
    m_max = m_max or m_cap
    n_max = n_max or n_cap

    def quotient(m, n):
        pair = assemble_mode_forms(m, n, geometry, grid,
                                   f"component:{group}", "strain")
        return max_rayleigh(pair)[0]

    return _scan_extremize(quotient, (1, m_max), (0, n_max), maximize=True)
