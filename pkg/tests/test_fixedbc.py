"""Clamped-bottom two-mode family and its classical-load limit."""

import math

import pytest

from cylshell import fixedbc
from cylshell.errors import ParameterError
from cylshell.fields import verify_bc
from cylshell.material import ShellGeometry

L = math.pi


def test_wavenumber_map():
    assert fixedbc.wavenumber(1e-4, 0.25) == 10
    assert fixedbc.wavenumber(1e-6, 0.25) == 32
    assert fixedbc.wavenumber(0.5, 0.25) == 1  # clipped to m >= 1
    for alpha in (0.0, 0.5, 0.7, -0.1):
        with pytest.raises(ParameterError):
            fixedbc.wavenumber(1e-4, alpha)


def test_circle_wavenumber_rounds_to_nearest(mat, geo_thin):
    assert fixedbc.circle_wavenumber(10, geo_thin, mat.Lambda) == 41
    with pytest.raises(ParameterError):
        fixedbc.circle_wavenumber(500, geo_thin, mat.Lambda)


def test_constraint_sums_vanish(mat, geo_thin):
    s_r, s_z = fixedbc.constraint_sums(10, 41, geo_thin, mat.Lambda)
    assert s_r == 0.0
    assert s_z == 0.0


def test_mode_satisfies_clamped_bc(mat):
    geo = ShellGeometry(h=1e-3, L=L)
    field = fixedbc.fixedbc_mode(3, geo, mat)
    assert field.bc_tag == "fixed_bottom"
    assert verify_bc(field, geo)


def test_mode_rejects_out_of_circle(mat):
    geo = ShellGeometry(h=1e-2, L=L)  # M(h) = 17 here
    with pytest.raises(ParameterError):
        fixedbc.fixedbc_mode(17, geo, mat)


def test_simplified_amplitudes_are_leading_order(mat, geo_thin):
    # relative deviation of the leading-order coefficients is O(m_hat^2/n^2)
    m, n = 10, 41
    full = fixedbc.mode_amplitudes(m, n, geo_thin, mat.Lambda)
    simp = fixedbc.simplified_amplitudes(m, n, geo_thin, mat.Lambda)
    for k in (m, m + 2):
        bound = 3.0 * (math.pi * k / L) ** 2 / n**2
        for a, b in zip(full[k], simp[k]):
            assert abs(a - b) <= bound * abs(a) + 1e-300, (k, a, b)


def test_t_coefficient_limit(mat, geo_thin):
    T = fixedbc.t_coefficient(10, 41, geo_thin, mat.Lambda)
    assert T == pytest.approx(1.0 / 41**2, rel=0.15)


def test_quadrature_matches_fourier_algebra(mat, geo_thin):
    rq = fixedbc.classical_ratio(10, geo_thin, mat, n=41, method="quadrature")
    ra = fixedbc.classical_ratio(10, geo_thin, mat, n=41, method="algebra")
    assert rq == pytest.approx(ra, rel=1e-10)
    with pytest.raises(ParameterError):
        fixedbc.classical_ratio(10, geo_thin, mat, n=41, method="montecarlo")


def test_limit_expression():
    assert fixedbc.limit_expression(10) == pytest.approx((2.0 + 1.44 + 1.0 / 1.44) / 4.0)
    # large m: the two modes merge and the ratio tends to 1
    assert fixedbc.limit_expression(10**6) == pytest.approx(1.0, abs=1e-5)


def test_ratio_reference_values(mat, geo_thin):
    report = fixedbc.fixedbc_limit([1e-4, 1e-5, 1e-6], 0.25, geo_thin, mat)
    ratios = {row.h: row.ratio for row in report.rows}
    assert ratios[1e-4] == pytest.approx(1.027444058235132, rel=1e-9)
    assert ratios[1e-5] == pytest.approx(1.009350755035927, rel=1e-9)
    assert ratios[1e-6] == pytest.approx(1.0033203423546768, rel=1e-9)


def test_ratio_near_finite_m_limit(mat, geo_thin):
    # at h = 1e-4 the m = 10 ratio sits close to its finite-m limit value
    ratio = fixedbc.classical_ratio(10, geo_thin, mat, method="algebra")
    assert ratio == pytest.approx(fixedbc.limit_expression(10), abs=0.01)


def test_excess_decays_like_h_to_two_alpha(mat, geo_thin):
    report = fixedbc.fixedbc_limit([1e-4, 1e-5, 1e-6], 0.25, geo_thin, mat,
                                   method="algebra")
    fit = report.excess_fit()
    assert fit.exponent == pytest.approx(0.5, abs=0.1)
