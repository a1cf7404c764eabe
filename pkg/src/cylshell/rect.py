"""Planar Korn-type inequalities on a thin rectangle.

Everything here lives on Omega = [0, h] x [0, L] with a vector field
U = (u, v).  The modified gradients

    G_alpha = [[u_x, u_y], [v_x, v_y + alpha u]],      e_alpha = sym(G_alpha),
    G_*     = [[u_x, u_y - v], [v_x, v_y + u]],        e_*     = sym(G_*),

obey Korn-type bounds with explicit constants: with u = 0 on the horizontal
edges,

    ||G_a||^2 <= 100 ||e_a|| (||u||/h + ||e_a||)
    ||G_a||^2 <= 99 ||e_a||^2 + (57/h) ||u|| ||e_a||,

and periodic-in-y variants with an absolute constant C0.  The key analytic
ingredient is a bound for harmonic functions vanishing on the horizontal
edges,

    ||w_y||^2 - ||w_x||^2 <= (2 sqrt(Phi(pi h/L)) / h) ||w|| ||w_x||,

sharp on w = cosh(pi(x - h/2)/L) sin(pi y/L), together with the Laplace
(Helmholtz) projection estimate ||grad u - grad w|| <= (sqrt(2) + 1/pi) ||e_a||.
The module checks all of these by quadrature on seeded random fields and
solves the projection problem by a 5-point finite-difference scheme.
"""

from dataclasses import dataclass
import math

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

from cylshell.errors import ParameterError, ShapeError, SolverError
from cylshell.fields import _gauss, _trig

# Frozen regression constants for the periodic-in-y variants: the theorems
# only assert existence of C0 and sigma, so these are pinned from the first
# randomized scan (seed 1234, 200 trials) rather than taken from a display.
PERIODIC_C0 = 2.0
PERIODIC_SIGMA = 0.2


# ---------------------------------------------------------------------------
# planar fields


@dataclass(frozen=True)
class PolyTrigTerm:
    """amp * p(x) * trig(freq * y); x-polynomial times a trig factor."""

    px: np.polynomial.Polynomial
    y_kind: str = "one"
    y_freq: float = 0.0
    amp: float = 1.0

    def __call__(self, x, y, dx=0, dy=0):
        p = self.px.deriv(dx) if dx else self.px
        return self.amp * p(np.asarray(x, dtype=float)) * _trig(self.y_kind, self.y_freq, y, dy)


@dataclass(frozen=True)
class ExpTrigTerm:
    """amp * e^{a x} * trig(freq * y); building block for harmonic fields."""

    a: float
    y_kind: str = "sin"
    y_freq: float = 0.0
    amp: float = 1.0

    def __call__(self, x, y, dx=0, dy=0):
        val = self.amp * self.a**dx * np.exp(self.a * np.asarray(x, dtype=float))
        return val * _trig(self.y_kind, self.y_freq, y, dy)


@dataclass(frozen=True)
class PlanarSum:
    parts: tuple

    def __call__(self, x, y, dx=0, dy=0):
        return sum(p(x, y, dx, dy) for p in self.parts)


ZERO = PolyTrigTerm(np.polynomial.Polynomial([0.0]))


@dataclass(frozen=True)
class PlanarField:
    """Vector field (u, v) on [0, h] x [0, L].

    bc_tag: 'zero_horizontal' (u = 0 at y in {0, L}), 'zero_both'
    (u = v = 0 there), or 'periodic_y' (period 2 pi in y).
    """

    u: object
    v: object
    bc_tag: str = None


def verify_planar_bc(field, h, L, n_samples=33, tol=1e-9):
    """Sampled check of the field's boundary tag; returns True or raises."""
    if field.bc_tag is None:
        return True
    xs = np.linspace(0.0, h, n_samples)
    ys = np.linspace(0.0, L, n_samples)
    scale = max(float(np.max(np.abs(field.u(xs[:, None], ys[None, :])))),
                float(np.max(np.abs(field.v(xs[:, None], ys[None, :])))), 1e-300)
    if field.bc_tag in ("zero_horizontal", "zero_both"):
        comps = (field.u,) if field.bc_tag == "zero_horizontal" else (field.u, field.v)
        for comp in comps:
            for y0 in (0.0, L):
                err = float(np.max(np.abs(comp(xs, y0))))
                if err > tol * scale:
                    raise ShapeError(f"horizontal-edge value {err:.3e} at y={y0}")
    elif field.bc_tag == "periodic_y":
        for comp in (field.u, field.v):
            err = float(np.max(np.abs(comp(xs, 0.0) - comp(xs, 2.0 * np.pi))))
            if err > tol * scale:
                raise ShapeError(f"period-2pi defect {err:.3e}")
    else:
        raise ParameterError(f"unknown planar bc tag {field.bc_tag!r}")
    return True


# ---------------------------------------------------------------------------
# quadrature


@dataclass(frozen=True)
class PlanarGrid:
    x_nodes: np.ndarray
    x_weights: np.ndarray
    y_nodes: np.ndarray
    y_weights: np.ndarray

    @property
    def X(self):
        return self.x_nodes[:, None]

    @property
    def Y(self):
        return self.y_nodes[None, :]

    def integrate(self, values):
        w = self.x_weights[:, None] * self.y_weights[None, :]
        return float(np.sum(w * np.broadcast_to(values, w.shape)))

    def norm_sq(self, values):
        return self.integrate(np.asarray(values) ** 2)


def planar_grid(h, L, n_x=24, n_y=64):
    xn, xw = _gauss(0.0, h, n_x)
    yn, yw = _gauss(0.0, L, n_y)
    return PlanarGrid(xn, xw, yn, yw)


# ---------------------------------------------------------------------------
# modified gradients


def modified_gradient(field, alpha, x, y):
    """G_alpha entries {xx, xy, yx, yy} = [[u_x, u_y], [v_x, v_y + alpha u]]."""
    return {
        "xx": field.u(x, y, 1, 0),
        "xy": field.u(x, y, 0, 1),
        "yx": field.v(x, y, 1, 0),
        "yy": field.v(x, y, 0, 1) + alpha * field.u(x, y),
    }


def starred_gradient(field, x, y):
    """G_* entries: [[u_x, u_y - v], [v_x, v_y + u]]."""
    return {
        "xx": field.u(x, y, 1, 0),
        "xy": field.u(x, y, 0, 1) - field.v(x, y),
        "yx": field.v(x, y, 1, 0),
        "yy": field.v(x, y, 0, 1) + field.u(x, y),
    }


def gradient_norms(g, grid):
    """(||G||^2, ||sym G||^2) from the entry dict by quadrature."""
    g_sq = grid.integrate(g["xx"] ** 2 + g["xy"] ** 2 + g["yx"] ** 2 + g["yy"] ** 2)
    off = 0.5 * (g["xy"] + g["yx"])
    e_sq = grid.integrate(g["xx"] ** 2 + 2.0 * off**2 + g["yy"] ** 2)
    return g_sq, e_sq


# ---------------------------------------------------------------------------
# the zero-horizontal-edge inequality


@dataclass(frozen=True)
class InequalityReport:
    lhs: float
    rhs: float
    rhs_rounded: float = None

    @property
    def margin(self):
        return self.rhs - self.lhs

    @property
    def margin_rounded(self):
        return None if self.rhs_rounded is None else self.rhs_rounded - self.lhs

    @property
    def holds(self):
        ok = self.lhs <= self.rhs * (1.0 + 1e-12) + 1e-300
        if self.rhs_rounded is not None:
            ok = ok and self.lhs <= self.rhs_rounded * (1.0 + 1e-12) + 1e-300
        return ok


def check_basic_inequality(field, alpha, h, L, grid=None):
    """Both forms of the clamped-horizontal-edge bound on ||G_alpha||^2.

    rhs is the product form 100 ||e|| (||u||/h + ||e||); rhs_rounded is the
    rounded-up split form 99 ||e||^2 + (57/h) ||u|| ||e||.
    """
    if not -1.0 <= alpha <= 1.0:
        raise ParameterError(f"alpha = {alpha} outside [-1, 1]")
    if not 0.0 < h < 1.0:
        raise ParameterError(f"h = {h} outside (0, 1)")
    if field.bc_tag not in ("zero_horizontal", "zero_both"):
        raise ParameterError("basic inequality requires u = 0 on the horizontal edges")
    verify_planar_bc(field, h, L)
    grid = grid or planar_grid(h, L)
    g = modified_gradient(field, alpha, grid.X, grid.Y)
    g_sq, e_sq = gradient_norms(g, grid)
    e = math.sqrt(e_sq)
    u_norm = math.sqrt(grid.norm_sq(field.u(grid.X, grid.Y)))
    return InequalityReport(
        lhs=g_sq,
        rhs=100.0 * e * (u_norm / h + e),
        rhs_rounded=99.0 * e_sq + 57.0 / h * u_norm * e,
    )


def random_zero_horizontal(rng, h, L, n_terms=6, max_xdeg=3, max_freq=8):
    """Seeded random field vanishing on the horizontal edges.

    u is a sine series in y with random x-polynomial coefficients; v is an
    unconstrained trig series of the same type.
    """
    u_parts, v_parts = [], []
    for _ in range(n_terms):
        pu = np.polynomial.Polynomial(rng.uniform(-1.0, 1.0, max_xdeg + 1))
        pv = np.polynomial.Polynomial(rng.uniform(-1.0, 1.0, max_xdeg + 1))
        k_u = int(rng.integers(1, max_freq + 1))
        k_v = int(rng.integers(0, max_freq + 1))
        u_parts.append(PolyTrigTerm(pu, "sin", math.pi * k_u / L))
        v_parts.append(PolyTrigTerm(
            pv, "cos" if rng.random() < 0.5 else "sin", math.pi * k_v / L))
    return PlanarField(PlanarSum(tuple(u_parts)), PlanarSum(tuple(v_parts)),
                       bc_tag="zero_horizontal")


def basic_inequality_trials(h, L, trials=200, seed=1234, alphas=(-1.0, -0.5, 0.0, 0.5, 1.0)):
    """Randomized scan of check_basic_inequality; returns (violations, min margin)."""
    rng = np.random.default_rng(seed)
    grid = planar_grid(h, L, n_x=16, n_y=48)
    violations = 0
    min_margin = math.inf
    for t in range(trials):
        field = random_zero_horizontal(rng, h, L)
        alpha = alphas[t % len(alphas)]
        rep = check_basic_inequality(field, alpha, h, L, grid=grid)
        if not rep.holds:
            violations += 1
        min_margin = min(min_margin, rep.margin, rep.margin_rounded)
    return violations, min_margin


# ---------------------------------------------------------------------------
# the harmonic-function lemma


def psi(x):
    """sinh(x)/x with a series branch at the removable singularity."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-4
    xs = np.where(small, 1.0, x)
    out = np.where(small, 1.0 + x**2 / 6.0 + x**4 / 120.0, np.sinh(xs) / xs)
    return out if out.ndim else float(out)


def phi_factor(tau):
    """Phi(tau) = tau^4 / (sinh^2 tau - tau^2); Phi(0) = 3, decreasing."""
    tau = float(tau)
    if abs(tau) < 1e-2:
        t2 = tau * tau
        # sinh^2 - tau^2 = (tau^4/3)(1 + 2 t2/15 + t2^2/105 + ...)
        return 3.0 / (1.0 + 2.0 * t2 / 15.0 + t2**2 / 105.0)
    return tau**4 / (math.sinh(tau) ** 2 - tau**2)


def extremal_harmonic(h, L):
    """The sharpness witness w = cosh(pi (x - h/2)/L) sin(pi y/L)."""
    a = math.pi / L
    return PlanarSum((
        ExpTrigTerm(a, "sin", a, amp=0.5 * math.exp(-a * h / 2.0)),
        ExpTrigTerm(-a, "sin", a, amp=0.5 * math.exp(a * h / 2.0)),
    ))


def random_harmonic(rng, h, L, max_freq=8):
    """Random harmonic function vanishing on the horizontal edges."""
    parts = []
    for n_ in range(1, max_freq + 1):
        a = math.pi * n_ / L
        A, B = rng.uniform(-1.0, 1.0, 2)
        # keep the growing exponential O(1) on [0, h]
        parts.append(ExpTrigTerm(a, "sin", a, amp=A * math.exp(-a * h)))
        parts.append(ExpTrigTerm(-a, "sin", a, amp=B))
    return PlanarSum(tuple(parts))


@dataclass(frozen=True)
class HarmonicLemmaReport:
    equality_error: float
    hi_violations: int
    hi_min_margin: float


def harmonic_lemma_check(h, L, trials=20, seed=1234, n_x=24, n_y=64):
    """Sharp-inequality check on the extremal plus randomized spot checks.

    The extremal achieves ||w_y||^2 - ||w_x||^2 = (2 sqrt(Phi(pi h/L))/h)
    ||w|| ||w_x|| to relative 1e-8; random harmonic sine series must respect
    ||w_y||^2 <= (2 sqrt(3)/h) ||w|| ||w_x|| + ||w_x||^2.
    """
    if not 0.0 < h < 1.0:
        raise ParameterError(f"h = {h} outside (0, 1)")
    grid = planar_grid(h, L, n_x=n_x, n_y=n_y)

    def norms(w):
        n0 = math.sqrt(grid.norm_sq(w(grid.X, grid.Y)))
        nx = math.sqrt(grid.norm_sq(w(grid.X, grid.Y, 1, 0)))
        ny = math.sqrt(grid.norm_sq(w(grid.X, grid.Y, 0, 1)))
        return n0, nx, ny

    w = extremal_harmonic(h, L)
    n0, nx, ny = norms(w)
    lhs = ny**2 - nx**2
    rhs = 2.0 * math.sqrt(phi_factor(math.pi * h / L)) / h * n0 * nx
    equality_error = abs(lhs - rhs) / rhs

    rng = np.random.default_rng(seed)
    violations = 0
    min_margin = math.inf
    for _ in range(trials):
        n0, nx, ny = norms(random_harmonic(rng, h, L))
        margin = 2.0 * math.sqrt(3.0) / h * n0 * nx + nx**2 - ny**2
        if margin < -1e-12 * ny**2:
            violations += 1
        min_margin = min(min_margin, margin)
    return HarmonicLemmaReport(equality_error=equality_error,
                               hi_violations=violations, hi_min_margin=min_margin)


# ---------------------------------------------------------------------------
# the Laplace projection


@dataclass(frozen=True)
class HarmonicSolution:
    """Discrete solution of the Dirichlet Laplace problem with data u."""

    w: np.ndarray
    x: np.ndarray
    y: np.ndarray
    residual: float

    @property
    def shape(self):
        return self.w.shape


def harmonic_projection(field, h, L, n_x=48, n_y=96, rtol=1e-13, maxiter=20000):
    """Solve Delta w = 0 on [0,h]x[0,L] with w = u on the boundary.

    Second-order 5-point stencil, conjugate-gradient solve; the interior
    Laplacian residual must come out below 1e-10 ||w||_inf.
    """
    x = np.linspace(0.0, h, n_x + 1)
    y = np.linspace(0.0, L, n_y + 1)
    hx, hy = x[1] - x[0], y[1] - y[0]
    w = np.asarray(field.u(x[:, None], y[None, :]), dtype=float)
    w = np.array(np.broadcast_to(w, (n_x + 1, n_y + 1)))

    nx_i, ny_i = n_x - 1, n_y - 1
    cx, cy = 1.0 / hx**2, 1.0 / hy**2
    main = 2.0 * (cx + cy) * np.ones(nx_i * ny_i)
    A = scipy.sparse.diags(
        [main, -cy * np.ones(nx_i * ny_i - 1), -cy * np.ones(nx_i * ny_i - 1),
         -cx * np.ones((nx_i - 1) * ny_i), -cx * np.ones((nx_i - 1) * ny_i)],
        [0, 1, -1, ny_i, -ny_i], format="csr")
    # zero the wrap-around couplings across interior-row boundaries
    kill = np.arange(1, nx_i) * ny_i
    A = A.tolil()
    for k in kill:
        A[k, k - 1] = 0.0
        A[k - 1, k] = 0.0
    A = A.tocsr()

    b = np.zeros((nx_i, ny_i))
    b[0, :] += cx * w[0, 1:-1]
    b[-1, :] += cx * w[-1, 1:-1]
    b[:, 0] += cy * w[1:-1, 0]
    b[:, -1] += cy * w[1:-1, -1]

    sol, info = scipy.sparse.linalg.cg(A, b.ravel(), rtol=rtol, maxiter=maxiter)
    if info != 0:
        res = float(np.linalg.norm(A @ sol - b.ravel()))
        raise SolverError(f"conjugate gradient stalled (info={info}, residual {res:.3e})")
    w[1:-1, 1:-1] = sol.reshape(nx_i, ny_i)

    lap = ((w[2:, 1:-1] - 2.0 * w[1:-1, 1:-1] + w[:-2, 1:-1]) / hx**2
           + (w[1:-1, 2:] - 2.0 * w[1:-1, 1:-1] + w[1:-1, :-2]) / hy**2)
    residual = float(np.max(np.abs(lap)))
    scale = float(np.max(np.abs(w)))
    if residual > 1e-10 * max(scale, 1e-300) * max(1.0 / hx**2, 1.0 / hy**2) * 4.0:
        raise SolverError(f"discrete Laplacian residual {residual:.3e} too large")
    return HarmonicSolution(w=w, x=x, y=y, residual=residual)


@dataclass(frozen=True)
class ProjectionReport:
    grad_diff: float
    grad_bound: float
    value_diff: float
    value_bound: float

    @property
    def holds(self):
        return self.grad_diff <= self.grad_bound and self.value_diff <= self.value_bound


def projection_estimates(field, alpha, h, L, n_x=48, n_y=96, allowance=0.05):
    """Both Helmholtz-projection bounds with a grid-error allowance.

    ||grad u - grad w|| <= (sqrt(2) + 1/pi) ||e_alpha|| and
    ||u - w|| <= (h/pi)(sqrt(2) + 1/pi) ||e_alpha||.
    """
    if field.bc_tag not in ("zero_horizontal", "zero_both"):
        raise ParameterError("projection estimates require u = 0 on the horizontal edges")
    sol = harmonic_projection(field, h, L, n_x=n_x, n_y=n_y)
    x, y, w = sol.x, sol.y, sol.w
    hx, hy = x[1] - x[0], y[1] - y[0]
    X, Y = x[:, None], y[None, :]

    # trapezoid weights for the node grid
    wx = np.full(x.size, hx)
    wx[0] = wx[-1] = hx / 2.0
    wy = np.full(y.size, hy)
    wy[0] = wy[-1] = hy / 2.0
    W2 = wx[:, None] * wy[None, :]

    u = np.broadcast_to(np.asarray(field.u(X, Y), dtype=float), w.shape)
    value_diff = math.sqrt(float(np.sum(W2 * (u - w) ** 2)))

    # gradients at cell centers (second-order for both u and w)
    wc_x = 0.5 * ((w[1:, 1:] - w[:-1, 1:]) + (w[1:, :-1] - w[:-1, :-1])) / hx
    wc_y = 0.5 * ((w[1:, 1:] - w[1:, :-1]) + (w[:-1, 1:] - w[:-1, :-1])) / hy
    Xc, Yc = (x[:-1] + x[1:])[:, None] / 2.0, (y[:-1] + y[1:])[None, :] / 2.0
    ux = np.broadcast_to(field.u(Xc, Yc, 1, 0), wc_x.shape)
    uy = np.broadcast_to(field.u(Xc, Yc, 0, 1), wc_y.shape)
    grad_diff = math.sqrt(float(np.sum(hx * hy * ((ux - wc_x) ** 2 + (uy - wc_y) ** 2))))

    grid = planar_grid(h, L)
    g = modified_gradient(field, alpha, grid.X, grid.Y)
    _, e_sq = gradient_norms(g, grid)
    factor = math.sqrt(2.0) + 1.0 / math.pi
    bound = factor * math.sqrt(e_sq) * (1.0 + allowance)
    return ProjectionReport(grad_diff=grad_diff, grad_bound=bound,
                            value_diff=value_diff, value_bound=h / math.pi * bound)


# ---------------------------------------------------------------------------
# periodic variants


def random_periodic(rng, h, n_terms=6, max_xdeg=3, max_freq=8):
    """Seeded random field with period 2 pi in y (both components)."""
    comps = []
    for _ in range(2):
        parts = []
        for _ in range(n_terms):
            p = np.polynomial.Polynomial(rng.uniform(-1.0, 1.0, max_xdeg + 1))
            k = int(rng.integers(0, max_freq + 1))
            parts.append(PolyTrigTerm(p, "cos" if rng.random() < 0.5 else "sin", float(k)))
        comps.append(PlanarSum(tuple(parts)))
    return PlanarField(comps[0], comps[1], bc_tag="periodic_y")


def check_periodic_inequalities(field, h, alpha=1.0, C0=PERIODIC_C0,
                                sigma=PERIODIC_SIGMA, grid=None):
    """Both periodic-in-y bounds with the frozen constant C0.

    Returns (alpha-form report, starred-form report); the starred form is
    ||G_*||^2 <= C0 (||e_*||^2 + ||e_*|| ||u||/h + ||v||^2).
    """
    if not 0.0 < h < sigma:
        raise ParameterError(f"h = {h} outside (0, sigma = {sigma})")
    if field.bc_tag != "periodic_y":
        raise ParameterError("periodic inequalities require a periodic-in-y field")
    verify_planar_bc(field, h, 2.0 * np.pi)
    grid = grid or planar_grid(h, 2.0 * np.pi, n_x=16, n_y=48)
    u_norm = math.sqrt(grid.norm_sq(field.u(grid.X, grid.Y)))
    v_norm_sq = grid.norm_sq(field.v(grid.X, grid.Y))

    g = modified_gradient(field, alpha, grid.X, grid.Y)
    g_sq, e_sq = gradient_norms(g, grid)
    e = math.sqrt(e_sq)
    rep_alpha = InequalityReport(lhs=g_sq, rhs=C0 * e * (u_norm / h + e))

    gs = starred_gradient(field, grid.X, grid.Y)
    gs_sq, es_sq = gradient_norms(gs, grid)
    es = math.sqrt(es_sq)
    rep_star = InequalityReport(
        lhs=gs_sq, rhs=C0 * (es_sq + es * u_norm / h + v_norm_sq))
    return rep_alpha, rep_star


def periodic_inequality_trials(h, trials=200, seed=1234,
                               alphas=(-1.0, -0.5, 0.0, 0.5, 1.0),
                               C0=PERIODIC_C0):
    """Randomized scan of both periodic bounds; returns (violations, min margin)."""
    rng = np.random.default_rng(seed)
    grid = planar_grid(h, 2.0 * np.pi, n_x=16, n_y=48)
    violations = 0
    min_margin = math.inf
    for t in range(trials):
        field = random_periodic(rng, h)
        rep_a, rep_s = check_periodic_inequalities(
            field, h, alpha=alphas[t % len(alphas)], C0=C0, grid=grid)
        for rep in (rep_a, rep_s):
            if not rep.holds:
                violations += 1
            min_margin = min(min_margin, rep.margin)
    return violations, min_margin
