"""Radial weights by chained multiplicative convolution.

The level-1 weight is exp(-x); each further level is the multiplicative
self-convolution of the previous one.  Level 2 has the closed form
2*K0(2*sqrt(x)), which anchors the whole chain to an external special
function.  Everything here runs against module-level cached tables, so the
chain is built once per session.
"""

import math

import numpy as np
import pytest
import scipy.special as sp

from genfock.radialkernel import (
    DEFAULT_TABLE_CONFIG,
    KernelTable,
    QuadConfig,
    QuadratureConvergenceError,
    TableConfig,
    bessel_k0_quadrature,
    bessel_reference_log,
    build_table,
    geometric_inner_product,
    log_mellin_convolve,
    log_radial_weight,
    log_radial_weight_centered,
    log_radial_weight_conv,
    log_radial_weight_product,
    mellin_step,
    moment,
    radial_weight,
    radial_weight_point,
    small_x_mass_bound,
)
from genfock.coeffspace import TaylorCoeffs, inner_product

# frozen closed-form anchors: 2*K0(2*sqrt(x)) at x = 1 and x = 4,
# double-precision values of the scipy Bessel routine
TWO_K0_2 = 0.2277877454990668
TWO_K0_4 = 0.022319352171706046


# ----------------------------------------------------------------- level 1


def test_level1_is_exact_exponential():
    for x in (1e-12, 0.5, 1.0, 37.2, 500.0):
        assert log_radial_weight(1, x) == -x
        assert radial_weight(1, x) == math.exp(-x)


# ----------------------------------------------------------------- level 2


def test_level2_matches_bessel_closed_form():
    # spline interpolation between table nodes carries a few 1e-9 in log,
    # well inside the closed-form identification tolerance
    assert radial_weight(2, 1.0) == pytest.approx(TWO_K0_2, rel=1e-8)
    assert radial_weight(2, 4.0) == pytest.approx(TWO_K0_4, rel=1e-8)


def test_level2_closed_form_across_decades():
    for x in (1e-6, 1e-3, 0.1, 1.0, 10.0, 1e3, 1e5):
        got = log_radial_weight(2, x)
        want = bessel_reference_log(x)
        assert got == pytest.approx(want, abs=5e-9)


def test_level2_relative_error_at_moderate_points():
    # the linear-scale comparison against an independently quadratured
    # Bessel value, on points where neither side under- or overflows
    for x in (0.1, 0.5, 1.0, 2.0, 4.0, 10.0):
        want = 2.0 * bessel_k0_quadrature(2.0 * math.sqrt(x))
        assert radial_weight(2, x) == pytest.approx(want, rel=1e-8)


def test_direct_convolution_point_matches_bessel():
    # single fresh convolution of the analytic level-1 factors, no tables
    for x in (0.25, 1.0, 9.0):
        got = log_radial_weight_conv(2, x)
        assert got == pytest.approx(bessel_reference_log(x), abs=1e-11)


def test_k0_quadrature_against_scipy():
    for z in (0.5, 1.0, 2.0, 4.0, 7.5):
        assert bessel_k0_quadrature(z) == pytest.approx(
            float(sp.k0(z)), rel=1e-10
        )


# ------------------------------------------------------------------ moments


@pytest.mark.parametrize("m", [1, 2, 3])
def test_moments_are_factorial_powers(m):
    for n in range(0, 5):
        want = float(math.factorial(n) ** m)
        assert moment(m, n) == pytest.approx(want, rel=1e-7)


def test_moment_rejects_negative_order():
    with pytest.raises(ValueError):
        moment(2, -1)


def test_geometric_inner_product_matches_coefficient_form():
    f = TaylorCoeffs([1.0, 0.5 - 0.25j, 0.125])
    g = TaylorCoeffs([2.0, 1j, -0.5])
    for m in (1, 2):
        got = geometric_inner_product(f, g, m)
        want = inner_product(f, g, m)
        assert got == pytest.approx(want, rel=1e-6)


# -------------------------------------------------------------- the tables


def test_table_is_monotone_decreasing():
    for m in (2, 3, 4):
        t = build_table(m)
        assert np.all(np.diff(t.logk) < 0.0)


def test_table_chain_reuses_cache():
    a = build_table(3)
    b = build_table(3)
    assert a is b


def test_eval_outside_domain_raises():
    t = build_table(2)
    with pytest.raises(ValueError):
        t.eval(0.0)
    with pytest.raises(ValueError):
        t.log_eval(-1.0)


def test_small_argument_model_is_continuous():
    # below the grid the poly-log model takes over; the splice is pinned at
    # the bottom node so the convolution integrand stays continuous
    for m in (2, 3):
        t = build_table(m)
        s0 = float(t.s[0])
        inside = float(t.log_eval_log_arg(np.array([s0 + 1e-9]))[0])
        below = float(t.log_eval_log_arg(np.array([s0 - 1e-9]))[0])
        assert below == pytest.approx(inside, abs=1e-6)


def test_small_x_mass_is_negligible_at_grid_bottom():
    # the weight mass lost below the default grid is irrelevant next to
    # every tolerance used in the moment checks
    assert small_x_mass_bound(2, 1e-30) < 1e-20


def test_mellin_step_reproduces_level2():
    t1 = build_table(1)
    for x in (0.5, 2.0):
        got = mellin_step(t1, x)
        assert got == pytest.approx(math.exp(bessel_reference_log(x)), rel=1e-9)


def test_radial_weight_point_agrees_with_table():
    for m, x in [(2, 0.7), (3, 1.3)]:
        a = radial_weight_point(m, x)
        b = math.exp(log_radial_weight(m, x))
        assert a == pytest.approx(b, rel=5e-9)


# --------------------------------------------------- alternate repr routes


@pytest.mark.parametrize("m,x", [(2, 0.5), (3, 1.0), (3, 4.0), (4, 2.0)])
def test_tensor_representations_agree(m, x):
    tab = log_radial_weight(m, x)
    cen = log_radial_weight_centered(m, x)
    pro = log_radial_weight_product(m, x)
    assert cen == pytest.approx(pro, abs=1e-10)
    assert tab == pytest.approx(cen, abs=5e-9)


# ------------------------------------------------------- failure behaviour


def test_refinement_exhaustion_raises_with_diagnostics():
    t1 = build_table(1)
    with pytest.raises(QuadratureConvergenceError) as info:
        mellin_step(t1, 1.0, QuadConfig(rel_tol=1e-14, max_refinements=0))
    err = info.value
    assert err.achieved > 1e-14
    assert "stalled" in str(err)


def test_quadconfig_tail_cut():
    q = QuadConfig(abs_tol=1e-20)
    assert q.tail_cut == pytest.approx(-math.log(1e-20))


def test_custom_table_config_narrow_domain():
    cfg = TableConfig(x_min=1e-8, x_max=1e4, points_per_decade=48)
    t = build_table(2, cfg)
    assert isinstance(t, KernelTable)
    x = 1.0
    assert t.log_eval(x) == pytest.approx(bessel_reference_log(x), abs=1e-7)


def test_log_mellin_convolve_exponential_pair():
    # fresh engine run on the analytic level-1 pair at one point
    val = log_mellin_convolve(lambda s: -np.exp(s), lambda s: -np.exp(s), 0.0)
    assert val == pytest.approx(bessel_reference_log(1.0), abs=1e-11)
