"""Bending-ansatz asymptotics: exact limits and component scaling laws."""

import math

import numpy as np
import pytest

from cylshell import ansatz
from cylshell.errors import ParameterError
from cylshell.fields import _gauss
from cylshell.material import (ShellGeometry, derive_material, hoop_imperfection,
                               perfect_stress, shear_imperfection)

L = math.pi
H_SWEEP = [1e-2, 10**-2.5, 1e-3, 10**-3.5, 1e-4]


def test_wavenumber():
    assert ansatz.wavenumber(1e-4) == 10
    assert ansatz.wavenumber(5.0**-4) == 5
    assert ansatz.wavenumber(0.9) == 1
    with pytest.raises(ParameterError):
        ansatz.wavenumber(0.0)
    with pytest.raises(ParameterError):
        ansatz.wavenumber(1.5)


def test_bump_validation():
    with pytest.raises(ParameterError):
        ansatz.BumpProfile(eta0=4.0, L=L)
    with pytest.raises(ParameterError):
        ansatz.BumpProfile(eta0=1.0, L=-1.0)


def test_bump_compact_support():
    bump = ansatz.BumpProfile(eta0=1.0, L=L)
    assert bump(1.2, 0.5 * L) == 0.0
    assert bump(0.0, -0.1) == 0.0
    assert bump(0.0, 0.5 * L) > 0.0


def test_bump_norm_sq_against_quadrature():
    bump = ansatz.BumpProfile(eta0=1.0, L=L, skew=-1.0)
    en, ew = _gauss(-1.0, 1.0, 40)
    zn, zw = _gauss(0.0, L, 40)
    for d_eta, d_z in ((0, 0), (3, 0), (0, 2), (4, 0), (2, 1)):
        vals = bump(en[:, None], zn[None, :], d_eta, d_z)
        quad = float(np.sum(ew[:, None] * zw[None, :] * vals**2))
        # the closed form evaluates a degree-20+ antiderivative in the
        # monomial basis at z = L, which loses ~8 digits to cancellation
        assert bump.norm_sq(d_eta, d_z) == pytest.approx(quad, rel=1e-6)


def test_bump_limits_positive():
    bump = ansatz.BumpProfile(eta0=1.0, L=L)
    assert bump.gradient_limit() == pytest.approx(2.0 * bump.norm_sq(3, 0))
    assert bump.strain_limit() == pytest.approx(
        bump.norm_sq(0, 2) + bump.norm_sq(4, 0) / 12.0)


def test_build_ansatz_length_mismatch():
    bump = ansatz.BumpProfile(eta0=1.0, L=1.0)
    with pytest.raises(ParameterError):
        ansatz.build_ansatz(1e-2, bump, ShellGeometry(h=1e-2, L=2.0))


def test_ansatz_field_satisfies_fixed_bottom_bc():
    from cylshell.fields import verify_bc

    geo = ShellGeometry(h=1e-2, L=L)
    bump = ansatz.BumpProfile(eta0=1.0, L=L)
    ans = ansatz.build_ansatz(1e-2, bump, geo)
    assert verify_bc(ans.field, geo)


def test_verify_limits_converges_monotonically():
    geo = ShellGeometry(h=1e-4, L=L)
    bump = ansatz.BumpProfile(eta0=1.0, L=L)
    report = ansatz.verify_limits(bump, [3.0**-4, 5.0**-4, 1e-4], geo)
    for name in ("gradient", "strain"):
        normalized = report[name].normalized
        # normalized values decrease toward 1 from above along the sweep
        assert all(a > b for a, b in zip(normalized, normalized[1:]))
        assert all(v > 1.0 for v in normalized)
        assert abs(normalized[-1] - 1.0) <= 0.05


def test_verify_limits_reference_values():
    geo = ShellGeometry(h=1e-4, L=L)
    bump = ansatz.BumpProfile(eta0=1.0, L=L)
    report = ansatz.verify_limits(bump, [1e-4], geo)
    assert report["gradient"].normalized[0] == pytest.approx(1.0001450867927526, rel=1e-9)
    assert report["strain"].normalized[0] == pytest.approx(1.0007786116654414, rel=1e-9)


def test_component_scalings_match_targets():
    geo = ShellGeometry(h=1e-4, L=L)
    bump = ansatz.BumpProfile(eta0=1.0, L=L)
    report = ansatz.component_scalings(bump, H_SWEEP, geo)
    for name, target in ansatz.COMPONENT_EXPONENTS.items():
        assert report[name].fit.exponent == pytest.approx(target, abs=0.15), name


def test_thetaz_pair_rate_on_deep_sweep():
    # the h^(3/4) group approaches its rate slowly; a deeper sweep tightens it
    geo = ShellGeometry(h=20.0**-4, L=L)
    bump = ansatz.BumpProfile(eta0=1.0, L=L)
    deep = [4.0**-4, 5.0**-4, 7.0**-4, 10.0**-4, 14.0**-4, 20.0**-4]
    report = ansatz.component_scalings(bump, deep, geo)
    assert report["thetaz_pair"].fit.exponent == pytest.approx(0.75, abs=0.05)


def test_compressiveness_exponents():
    mat = derive_material(1.0, 0.3)
    geo = ShellGeometry(h=1e-4, L=L)
    bump = ansatz.BumpProfile(eta0=1.0, L=L)
    rep = ansatz.compressiveness_scaling(bump, H_SWEEP, geo, mat, perfect_stress())
    assert rep["ratio"].fit.exponent == pytest.approx(1.0, abs=0.1)
    rep = ansatz.compressiveness_scaling(bump, H_SWEEP, geo, mat, hoop_imperfection())
    assert rep["ratio"].fit.exponent == pytest.approx(1.5, abs=0.15)
    skewed = ansatz.BumpProfile(eta0=1.0, L=L, skew=-1.0)
    rep = ansatz.compressiveness_scaling(skewed, H_SWEEP, geo, mat,
                                         shear_imperfection(np.cos))
    assert rep["ratio"].fit.exponent == pytest.approx(1.25, abs=0.15)


def test_shear_needs_opposing_skew():
    # with the skew aligned to s = cos the shear weight is stabilizing:
    # every point lands in the excluded table and no fit is produced
    mat = derive_material(1.0, 0.3)
    geo = ShellGeometry(h=1e-3, L=L)
    skewed = ansatz.BumpProfile(eta0=1.0, L=L, skew=1.0)
    rep = ansatz.compressiveness_scaling(skewed, [1e-2, 1e-3], geo, mat,
                                         shear_imperfection(np.cos))
    assert len(rep["excluded"].points) == 2
    assert rep["ratio"].fit is None
    assert all(c < 0 for _, c in rep["excluded"].points)
