"""Bargmann-type transform between L2 of the line and the weighted scale.

The bridge is the Hermite basis with an alternating sign:

    eta_n(t) = (-1)**n * psi_n(t),

psi_n the usual orthonormal Hermite functions.  A function with Hermite
coefficients (c_n) maps to the series with Taylor coefficients

    f_n = c_n / (n!)**(m/2),

which converts the L2 norm into the level-m series norm term by term, so the
map is unitary by construction; the interesting checks are numerical (the
scale factors span hundreds of orders of magnitude) and analytic (the
integral kernel below reproduces the same map through actual quadrature).

The integral kernel at level m is

    h_m(z, t) = sum_n z**n / (n!)**(m/2) * eta_n(t).

At m = 1 the series has the classical Gaussian closed form
pi**(-1/4) * exp(-t*t/2 - sqrt(2)*t*z - z*z/2) under this sign convention;
:func:`classic_kernel_values` also reports the Gaussian variant
exp(2*t*z - t*t - z*z/2) that circulates for differently normalized
conventions, which does not match this one.  The series is the ground truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.hermite import hermgauss

from .coeffspace import TaylorCoeffs, WeightOverflowError, log_weight

_PI_QUARTER = math.pi ** -0.25
_MAX_LOG_SCALE = 745.0
_TINY = 1e-300

# Uniform bound on sup_t |eta_n(t)| over all n, used in truncation estimates.
# The true supremum is attained at n = 0 and equals pi**(-1/4) ~ 0.7511; the
# per-n maxima decrease from there.  0.9 is a deliberately round safe cover;
# eta_sup_on_grid lets tests re-measure it.
HERMITE_SUP_BOUND = 0.9


def hermite_eta_all(nmax: int, t) -> np.ndarray:
    """eta_0 .. eta_nmax at t (scalar or array); shape (nmax+1, *t.shape).

    Three-term recurrence in the orthonormal scaling, which is stable and
    keeps every value O(1):

        eta_{k+1} = -sqrt(2/(k+1)) * t * eta_k - sqrt(k/(k+1)) * eta_{k-1}
    """
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    t = np.asarray(t, float)
    out = np.empty((nmax + 1,) + t.shape)
    out[0] = _PI_QUARTER * np.exp(-0.5 * t * t)
    if nmax >= 1:
        out[1] = -math.sqrt(2.0) * t * out[0]
    for k in range(1, nmax):
        out[k + 1] = (-math.sqrt(2.0 / (k + 1)) * t * out[k]
                      - math.sqrt(k / (k + 1.0)) * out[k - 1])
    return out


def hermite_eta(n: int, t):
    """eta_n at t."""
    return hermite_eta_all(n, t)[n]


def _lifted_weights(nodes: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """w_j * exp(x_j**2), formed in the log domain: the product is O(1) for
    every node but the factors overflow separately at high rule orders."""
    return np.exp(np.log(weights) + nodes ** 2)


def eta_sup_on_grid(nmax: int, t_max: float = 30.0, pts: int = 6001
                    ) -> np.ndarray:
    """max over the grid of |eta_n|, for n = 0 .. nmax.

    The default window covers the classical turning points +-sqrt(2n+1) for
    n up to about 400, beyond which the functions are exponentially small.
    """
    t = np.linspace(-t_max, t_max, pts)
    return np.abs(hermite_eta_all(nmax, t)).max(axis=1)


@dataclass(frozen=True, eq=False)
class HermiteEvaluation:
    """The eta basis tabulated on a Gauss-Hermite rule.

    values[n, j] = eta_n(nodes[j]) for n <= max_index.  Since each eta_n is
    exp(-t*t/2) times a degree-n polynomial, sums of products of two rows
    against weights * exp(nodes**2) integrate exactly whenever the combined
    degree stays under twice the rule order, which is what makes the
    discrete orthonormality check meaningful.
    """

    max_index: int
    nodes: np.ndarray
    weights: np.ndarray
    values: np.ndarray

    @classmethod
    def build(cls, max_index: int, order: int | None = None
              ) -> "HermiteEvaluation":
        if max_index < 0:
            raise ValueError("max_index must be >= 0")
        if order is None:
            order = max_index + 1
        if order < max_index + 1:
            raise ValueError("rule order must exceed max_index for the "
                             "discrete pairing to be exact")
        nodes, weights = hermgauss(order)
        return cls(max_index, nodes, weights,
                   hermite_eta_all(max_index, nodes))

    def gram(self) -> np.ndarray:
        """Discrete pairing matrix sum_j w_j exp(x_j^2) eta_i eta_k."""
        return (self.values * _lifted_weights(self.nodes, self.weights)
                ) @ self.values.T

    def orthonormality_deviation(self) -> float:
        """max |gram - identity|; near machine zero for an adequate rule."""
        g = self.gram()
        return float(np.abs(g - np.eye(self.max_index + 1)).max())


def _scale(n: int, m: int) -> float:
    """(n!)**(-m/2) as one float; halving the log is exact in binary, so the
    forward and inverse transforms share the identical scale bit for bit."""
    half = 0.5 * log_weight(n, m)
    if half > _MAX_LOG_SCALE:
        raise WeightOverflowError(n, m)
    return math.exp(-half)


def forward(hermite_coeffs, m: int) -> TaylorCoeffs:
    """Taylor coefficients of the transform of sum c_n eta_n."""
    if m < 1:
        raise ValueError("level must be >= 1")
    return TaylorCoeffs(c * _scale(n, m) if c != 0 else 0
                        for n, c in enumerate(hermite_coeffs))


def inverse(f: TaylorCoeffs, m: int) -> tuple:
    """Hermite coefficients recovering f; divides by the same stored scale
    used in :func:`forward`, so a round trip is exact up to one rounding."""
    if m < 1:
        raise ValueError("level must be >= 1")
    return tuple(c / _scale(n, m) if c != 0 else 0
                 for n, c in enumerate(f.coeffs))


def unitarity_gap(hermite_coeffs, m: int) -> dict:
    """Squared L2 norm of the input, level-m squared norm of the image, and
    their relative gap (0 for an exactly unitary map)."""
    from .coeffspace import squared_norm

    l2 = math.fsum(abs(complex(c)) ** 2 for c in hermite_coeffs)
    img = squared_norm(forward(hermite_coeffs, m), m)
    gap = abs(img - l2) / max(l2, 1e-300)
    return {"l2": l2, "image": img, "gap": gap}


def transform_kernel(m: int, z: complex, t, tol: float = 1e-14):
    """h_m(z, t) = sum_n z**n (n!)**(-m/2) eta_n(t); t may be an array.

    Stops the same way the coefficient-side kernel does: after three
    consecutive terms fall below tol times the running sum, with the term
    size taken as the uniform bound |z|**n (n!)**(-m/2) * sup|eta| and the
    running sum as the largest partial-sum magnitude over the t batch
    (pointwise values can pass through zero; the batch maximum cannot
    collapse).
    """
    if m < 1:
        raise ValueError("level must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    z = complex(z)
    zabs = max(abs(z), 1e-30)
    t = np.asarray(t, float)
    eta_prev = np.zeros_like(t)
    eta = _PI_QUARTER * np.exp(-0.5 * t * t)
    total = eta.astype(complex)
    zpow = 1.0 + 0.0j
    term_bound = HERMITE_SUP_BOUND
    ref = max(float(np.abs(total).max()), _TINY)
    below = 0
    n = 0
    while below < 3 and n < 2000:
        n += 1
        eta_prev, eta = eta, (-math.sqrt(2.0 / n) * t * eta
                              - math.sqrt((n - 1.0) / n) * eta_prev)
        zpow = zpow * z
        total = total + zpow * _scale(n, m) * eta
        ref = max(ref, float(np.abs(total).max()))
        term_bound = term_bound * zabs * math.exp(
            -0.5 * (log_weight(n, m) - log_weight(n - 1, m)))
        below = below + 1 if term_bound < tol * ref else 0
    return total if total.ndim else complex(total)


def transform_via_quadrature(hermite_coeffs, m: int, z: complex,
                             order: int = 96) -> complex:
    """Evaluate the transform at z as the integral of h_m(z, .) against the
    input function, by Gauss-Hermite quadrature.

    Both factors carry exp(-t*t/2), so against the exp(-t*t) Gauss weight
    the integrand is polynomial and the rule is exact once the order beats
    the truncation degrees.  Independent of the coefficient route up to
    quadrature error; used as a cross-check.
    """
    if m < 1:
        raise ValueError("level must be >= 1")
    nodes, weights = hermgauss(order)
    coeffs = list(hermite_coeffs)
    etas = hermite_eta_all(max(len(coeffs) - 1, 0), nodes)
    phi = np.zeros_like(nodes, dtype=complex)
    for n, c in enumerate(coeffs):
        phi += complex(c) * etas[n]
    hz = transform_kernel(m, z, nodes)
    vals = _lifted_weights(nodes, weights) * hz * phi
    return complex(math.fsum(vals.real), math.fsum(vals.imag))


def classic_kernel_values(z: complex, t: float) -> dict:
    """The level-1 kernel three ways at one point.

    series            direct summation of h_1(z, t)
    generating_form   pi**(-1/4) exp(-t*t/2 - sqrt(2) t z - z*z/2), the
                      Hermite generating function under this sign convention
    gaussian_variant  exp(2 t z - t*t - z*z/2), the form quoted for other
                      normalizations; retained to document the mismatch
    """
    z = complex(z)
    series = transform_kernel(1, z, float(t))
    generating = _PI_QUARTER * np.exp(-0.5 * t * t - math.sqrt(2.0) * t * z
                                      - 0.5 * z * z)
    variant = np.exp(2.0 * t * z - t * t - 0.5 * z * z)
    return {"series": complex(series),
            "generating_form": complex(generating),
            "gaussian_variant": complex(variant)}
