"""Acceptance gate: the eleven identity checks the package must pass.

Each test prints one PASS/FAIL line (straight to the real stdout, so the
lines survive pytest's capture) and enforces the stated tolerance and time
budget.  Random content is seeded; every run checks the same instances.
"""

import math
import time

import numpy as np
import pytest
import scipy.special as sp

from genfock.bargmann import forward, transform_via_quadrature, unitarity_gap
from genfock.coeffspace import (
    TaylorCoeffs,
    aggregate_kernels_exponential,
    aggregate_kernels_geometric,
    eval_point,
    inner_product,
    kernel_section,
    log_weight,
)
from genfock.dualalgebra import (
    DualSequence,
    cauchy_product,
    refinement_order,
    vage_check,
    vage_constant,
)
from genfock.operators import (
    commutator_raising,
    commutator_via_expansion,
    norm_identity_report,
    number_power_direct,
    number_power_normal_ordered,
    raising,
    raising_adjoint,
)
from genfock.radialkernel import moment, radial_weight

SEED = 20260815


@pytest.fixture
def report(capfd):
    """One-line scoreboard entry, emitted outside pytest's fd capture."""

    def emit(num, name, ok, detail, elapsed):
        status = "PASS" if ok else "FAIL"
        with capfd.disabled():
            print(f"criterion {num:02d} {status} {name}: {detail} "
                  f"[{elapsed:.2f}s]", flush=True)

    return emit


def complex_normal(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


# 1 -------------------------------------------------------------------------


def test_criterion_01_radial_moments(report):
    t0 = time.perf_counter()
    worst = 0.0
    for m in range(1, 5):
        for n in range(0, 9):
            got = moment(m, n)
            want = float(math.factorial(n) ** m)
            worst = max(worst, abs(got - want) / want)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-6 and elapsed < 60.0
    report(1, "radial moments equal factorial powers", ok,
           f"worst rel {worst:.2e} (tol 1e-06), m<=4 n<=8", elapsed)
    assert worst <= 1e-6
    assert elapsed < 60.0


# 2 -------------------------------------------------------------------------


def k0_oracle(z: float) -> float:
    """Modified Bessel K0 by trapezoid on its even cosh integral.

    Written here so the check does not depend on any package quadrature
    path; the integrand is smooth and even in u, so the trapezoid rule
    converges fast.  Accuracy ~1e-12 relative at these arguments.
    """
    h = 0.002
    u_max = math.acosh(60.0 / z + 1.0)
    k = int(math.ceil(u_max / h)) + 1
    u = np.linspace(0.0, k * h, k + 1)
    vals = np.exp(-z * (np.cosh(u) - 1.0))
    return (float(vals.sum()) - 0.5 * (float(vals[0]) + float(vals[-1]))) \
        * h * math.exp(-z)


def test_criterion_02_bessel_identification(report):
    t0 = time.perf_counter()
    # the oracle itself must agree with an unrelated library implementation
    for z in (1.0, 2.0, 4.0):
        assert k0_oracle(z) == pytest.approx(float(sp.k0(z)), rel=1e-11)
    xs = (0.25, 0.5, 1.0, 2.0, 4.0, 6.25)
    worst = 0.0
    for x in xs:
        got = radial_weight(2, x)
        want = 2.0 * k0_oracle(2.0 * math.sqrt(x))
        worst = max(worst, abs(got - want) / want)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and elapsed < 5.0
    report(2, "level-2 weight is a modified Bessel function", ok,
           f"worst rel {worst:.2e} (tol 1e-08) at 6 points", elapsed)
    assert worst <= 1e-8
    assert elapsed < 5.0


# 3 -------------------------------------------------------------------------


def test_criterion_03_normal_ordering_exact(report):
    t0 = time.perf_counter()
    bad = 0
    for k in range(1, 9):
        for d in range(0, 13):
            f = TaylorCoeffs.monomial(d)
            if number_power_direct(k, f) != number_power_normal_ordered(k, f):
                bad += 1
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 1.0
    report(3, "normal ordering is exact on monomials", ok,
           f"{bad} mismatches over k<=8, deg<=12", elapsed)
    assert bad == 0
    assert elapsed < 1.0


# 4 -------------------------------------------------------------------------


def test_criterion_04_adjointness(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng([SEED, 4])
    worst = 0.0
    for trial in range(1000):
        m = int(rng.integers(1, 6))
        deg = int(rng.integers(0, 41))
        z, y = complex_normal(rng, deg + 1), complex_normal(rng, deg + 1)
        if trial % 2:
            # scale half the draws to unit-ball size so the high indices
            # matter instead of the top weight dominating every sum
            s = np.exp([-0.5 * log_weight(n, m) for n in range(deg + 1)])
            z, y = z * s, y * s
        f, g = TaylorCoeffs(list(z)), TaylorCoeffs(list(y))
        lhs = inner_product(raising(f), g, m)
        rhs = inner_product(f, raising_adjoint(g, m), m)
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 5.0
    report(4, "raising and its adjoint pair up", ok,
           f"worst rel {worst:.2e} (tol 1e-12), 1000 pairs m<=5 deg<=40",
           elapsed)
    assert worst <= 1e-12
    assert elapsed < 5.0


# 5 -------------------------------------------------------------------------


def test_criterion_05_commutator_exact(report):
    t0 = time.perf_counter()
    bad = 0
    for m in range(1, 7):
        for d in range(0, 21):
            f = TaylorCoeffs.monomial(d)
            if commutator_raising(f, m) != commutator_via_expansion(f, m):
                bad += 1
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 1.0
    report(5, "commutator routes agree exactly", ok,
           f"{bad} mismatches over m<=6, deg<=20", elapsed)
    assert bad == 0
    assert elapsed < 1.0


# 6 -------------------------------------------------------------------------


def test_criterion_06_shift_norm_identity(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng([SEED, 6])
    worst = 0.0
    for _ in range(200):
        m = int(rng.integers(1, 6))
        deg = int(rng.integers(0, 33))
        f = TaylorCoeffs(list(complex_normal(rng, deg + 1)))
        lhs, terms = norm_identity_report(f, m)
        rhs = math.fsum(terms)
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 2.0
    report(6, "shift norm identity decomposes", ok,
           f"worst rel {worst:.2e} (tol 1e-12), 200 elements m<=5", elapsed)
    assert worst <= 1e-12
    assert elapsed < 2.0


# 7 -------------------------------------------------------------------------


def test_criterion_07_transform_unitarity_and_quadrature(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng([SEED, 7])
    worst_gap = 0.0
    for _ in range(200):
        m = int(rng.integers(1, 6))
        n = int(rng.integers(0, 61))
        c = list(complex_normal(rng, n + 1))
        worst_gap = max(worst_gap, unitarity_gap(c, m)["gap"])
    worst_quad = 0.0
    for _ in range(40):
        m = int(rng.integers(1, 6))
        n = int(rng.integers(0, 16))
        c = list(complex_normal(rng, n + 1))
        zr, zphi = 2.0 * math.sqrt(rng.uniform()), rng.uniform(0, 2 * math.pi)
        z = zr * complex(math.cos(zphi), math.sin(zphi))
        via_quad = transform_via_quadrature(c, m, z)
        via_coeffs = eval_point(forward(c, m), z)
        worst_quad = max(worst_quad, abs(via_quad - via_coeffs)
                         / max(abs(via_coeffs), 1e-300))
    elapsed = time.perf_counter() - t0
    ok = worst_gap <= 1e-12 and worst_quad <= 1e-8 and elapsed < 10.0
    report(7, "transform is unitary and matches quadrature", ok,
           f"worst gap {worst_gap:.2e} (tol 1e-12), "
           f"worst quadrature rel {worst_quad:.2e} (tol 1e-08)", elapsed)
    assert worst_gap <= 1e-12
    assert worst_quad <= 1e-8
    assert elapsed < 10.0


# 8 -------------------------------------------------------------------------


def test_criterion_08_product_inequality(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng([SEED, 8])
    violations = 0
    worst_ratio = 0.0
    for gap in (1, 2, 3):
        for _ in range(1000):
            p = int(rng.integers(1, 5))
            q = p + gap
            a = DualSequence(list(complex_normal(rng, int(rng.integers(1, 21)))), p)
            b = DualSequence(list(complex_normal(rng, int(rng.integers(1, 21)))), q)
            lhs, bound, holds = vage_check(a, b, p, q)
            violations += 0 if holds else 1
            if bound > 0:
                worst_ratio = max(worst_ratio, lhs / bound)
    const_err = abs(vage_constant(1) - math.sqrt(math.e)) / math.sqrt(math.e)
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and const_err <= 1e-12 and elapsed < 5.0
    report(8, "convolution product inequality holds", ok,
           f"{violations} violations in 3000 pairs, worst ratio "
           f"{worst_ratio:.3f}, gap-1 constant off by {const_err:.1e}",
           elapsed)
    assert violations == 0
    assert const_err <= 1e-12
    assert elapsed < 5.0


# 9 -------------------------------------------------------------------------


def test_criterion_09_reproducing_property(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng([SEED, 9])
    worst = 0.0
    for _ in range(600):
        m = int(rng.integers(1, 7))
        deg = int(rng.integers(0, 31))
        f = TaylorCoeffs(list(complex_normal(rng, deg + 1)))
        r, phi = 2.0 * math.sqrt(rng.uniform()), rng.uniform(0, 2 * math.pi)
        w = r * complex(math.cos(phi), math.sin(phi))
        lhs = inner_product(f, kernel_section(m, w, deg), m)
        # compensated reference evaluation of f at w (plain summation, no
        # kernel machinery); Horner would be fine too but drifts a few
        # ulps more on ill-conditioned draws
        terms, p = [], 1 + 0j
        for n, c in enumerate(f.coeffs):
            if n:
                p = p * w
            terms.append(c * p)
        rhs = complex(math.fsum(t.real for t in terms),
                      math.fsum(t.imag for t in terms))
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 2.0
    report(9, "kernel sections reproduce point values", ok,
           f"worst rel {worst:.2e} (tol 1e-12), 600 draws m<=6 |w|<=2 deg<=30",
           elapsed)
    assert worst <= 1e-12
    assert elapsed < 2.0


# 10 ------------------------------------------------------------------------


def test_criterion_10_aggregation_identities(report):
    t0 = time.perf_counter()
    worst_geo = worst_exp = 0.0
    for eps in (0.25, 0.5, 0.9):
        for z in (0.6, 1.1 + 0.3j, 1.8j):
            for w in (0.5, 1.2 - 0.4j, 2.0):
                lhs, rhs = aggregate_kernels_geometric(eps, z, w)
                worst_geo = max(worst_geo, abs(lhs - rhs) / abs(rhs))
                lhs, rhs = aggregate_kernels_exponential(eps, z, w)
                worst_exp = max(worst_exp, abs(lhs - rhs) / abs(rhs))
    elapsed = time.perf_counter() - t0
    ok = worst_geo <= 1e-10 and worst_exp <= 1e-10 and elapsed < 2.0
    report(10, "kernel aggregation identities hold", ok,
           f"worst rel geometric {worst_geo:.2e}, exponential "
           f"{worst_exp:.2e} (tol 1e-10), 3x3x3 grid", elapsed)
    assert worst_geo <= 1e-10
    assert worst_exp <= 1e-10
    assert elapsed < 2.0


# 11 ------------------------------------------------------------------------


def test_criterion_11_path_integral_refinement(report):
    t0 = time.perf_counter()
    x0 = DualSequence([1.0, 0.5, -0.25], 2)
    x1 = DualSequence([0.2, -1.0, 0.6], 2)
    y0 = DualSequence([0.8, 0.1], 2)
    y1 = DualSequence([-0.3, 0.9], 2)

    def lin(a0, a1):
        def path(t):
            return DualSequence(
                [a0.coeff(n) + t * a1.coeff(n)
                 for n in range(max(len(a0.coeffs), len(a1.coeffs)))],
                a0.level)
        return path

    # the closed form of the integral of (x0 + t x1)*(y0 + t y1) over [0,1]
    c0 = cauchy_product(x0, y0)
    c1a, c1b = cauchy_product(x0, y1), cauchy_product(x1, y0)
    c2 = cauchy_product(x1, y1)
    width = len(c2.coeffs)
    exact = DualSequence(
        [complex(c0.coeff(n)) + 0.5 * (complex(c1a.coeff(n))
                                       + complex(c1b.coeff(n)))
         + complex(c2.coeff(n)) / 3.0 for n in range(width)], 2)

    order = refinement_order(lin(x0, x1), lin(y0, y1), exact)
    elapsed = time.perf_counter() - t0
    ok = 1.9 <= order <= 2.1 and elapsed < 2.0
    report(11, "path integral refines at second order", ok,
           f"measured order {order:.4f} (need within [1.9, 2.1])", elapsed)
    assert 1.9 <= order <= 2.1
    assert elapsed < 2.0
