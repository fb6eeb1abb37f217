"""Radial weight functions obtained by Mellin self-convolution.

The level-1 weight is exp(-x) on (0, inf).  Higher levels are defined by
iterating the multiplicative convolution (f * g)(x) = int f(x/t) g(t) dt/t,
which multiplies Mellin transforms, so the level-m weight has Mellin image
Gamma(s)**m and its n-th moment is (n!)**m.  Level 2 collapses to a modified
Bessel function, 2*K0(2*sqrt(x)), which provides an external cross-check.

Everything here works with log-values: the weights span hundreds of orders
of magnitude across the tabulated range (poly-log growth at 0, stretched
exponential decay exp(-m x**(1/m)) at infinity).

Evaluation routes, deliberately kept separate:

* a 1-D log-domain trapezoid engine for convolution integrals, with peak
  location, step control, window auto-expansion and halving refinement
  (:func:`log_mellin_convolve`);
* chained tables built from that engine, stored as log-log cubic splines
  (:func:`build_table`);
* direct (m-1)-dimensional tensor quadrature of the two integral
  representations (:func:`log_radial_weight_centered`,
  :func:`log_radial_weight_product`), practical for m <= 4, used to
  cross-check the chain.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import gammaincc, k0e

_NEG_INF = float("-inf")


class QuadratureConvergenceError(ArithmeticError):
    """Halving refinement did not reach the requested relative agreement."""

    def __init__(self, achieved: float, rel_tol: float):
        super().__init__(
            f"quadrature refinement stalled at relative change {achieved:.3e} "
            f"(requested {rel_tol:.3e})")
        self.achieved = achieved
        self.rel_tol = rel_tol


@dataclass(frozen=True)
class QuadConfig:
    """Knobs for the 1-D log-trapezoid convolution engine.

    rel_tol          relative agreement demanded between successive halvings
    abs_tol          integrand samples below abs_tol * peak are dead tail
    max_refinements  halvings attempted before declaring non-convergence
    coarse_step      spacing of the scouting pass that brackets the support
    target_step      upper bound on the final trapezoid spacing
    max_expand       window growth attempts when a tail is not dead yet

    The defaults are what table chaining supports.  Two effects floor the
    halving agreement well above machine precision: integrands reaching
    below a parent table pick up a derivative kink where the modeled tail
    takes over (needs 3-4 halvings to fall under ~2e-11), and a parent
    spline carries its own node errors (~3e-11 after one generation), which
    no amount of refinement in the child can certify past.  Analytic
    integrands accept on the first halving at ~1e-14.
    """

    rel_tol: float = 3e-10
    abs_tol: float = 3e-20
    max_refinements: int = 4
    coarse_step: float = 0.25
    target_step: float = 0.12
    max_expand: int = 8

    @property
    def tail_cut(self) -> float:
        return -math.log(self.abs_tol)


@dataclass(frozen=True)
class TableConfig:
    """Tabulation domain and density for the chained weight tables.

    The public domain is [x_min, x_max].  Tables extend ``low_margin``
    further down in log space because each convolution stage consumes its
    parent a few log-units below the point being built; the extension keeps
    that truncation error away from the public range.
    """

    x_min: float = 1e-30
    x_max: float = 1e9
    points_per_decade: int = 64
    low_margin: float = 30.0
    quad: QuadConfig = QuadConfig()


DEFAULT_TABLE_CONFIG = TableConfig()


def _log_trapezoid(log_vals: np.ndarray, h: float) -> float:
    """log of the trapezoid sum of exp(log_vals) with spacing h."""
    m = float(np.max(log_vals))
    if m == _NEG_INF:
        return _NEG_INF
    w = np.exp(log_vals - m)
    s = float(np.sum(w)) - 0.5 * (float(w[0]) + float(w[-1]))
    if s <= 0.0:
        return _NEG_INF
    return m + math.log(h * s)


def _clean(arr: np.ndarray) -> np.ndarray:
    # +inf or nan in a log-integrand means a pathological callable; treat the
    # sample as dead rather than poisoning the sum.
    return np.nan_to_num(arr, nan=_NEG_INF, posinf=_NEG_INF, neginf=_NEG_INF)


def log_mellin_convolve(log_f, log_g, ln_x: float,
                        window: tuple[float, float] | None = None,
                        quad: QuadConfig = QuadConfig()) -> float:
    """log of (f * g)(x) for the multiplicative convolution, x = exp(ln_x).

    ``log_f`` and ``log_g`` are vectorized maps w -> log f(exp(w)); working
    with log-arguments avoids overflow at both ends.  In log coordinates the
    integral is  int exp( log_f(ln_x - u) + log_g(u) ) du.

    The integrand is assumed to decay on both sides (true whenever f and g
    decay at infinity and are at most poly-log at 0).  A coarse scan brackets
    the support, a local search sharpens the peak and estimates its width so
    narrow saddles get a proportionally fine step, and the trapezoid value is
    accepted once one halving reproduces it to ``rel_tol``.  If
    ``max_refinements`` halvings never agree, QuadratureConvergenceError
    reports the last achieved relative change.
    """
    if window is None:
        window = (ln_x - 10.0, 40.0)
    u_lo, u_hi = float(window[0]), float(window[1])
    if not u_lo < u_hi:
        raise ValueError("window must satisfy lo < hi")

    def energy(u):
        with np.errstate(over="ignore", invalid="ignore", under="ignore"):
            return _clean(np.asarray(log_f(ln_x - u), float)
                          + np.asarray(log_g(u), float))

    # scouting pass, growing the window until both tails are dead
    for _ in range(quad.max_expand + 1):
        n = max(int(math.ceil((u_hi - u_lo) / quad.coarse_step)) + 1, 8)
        u = np.linspace(u_lo, u_hi, n)
        e = energy(u)
        peak = float(np.max(e))
        if peak == _NEG_INF:
            raise ValueError("integrand is identically dead on the window")
        grow_left = e[0] > peak - quad.tail_cut
        grow_right = e[-1] > peak - quad.tail_cut
        if not (grow_left or grow_right):
            break
        if grow_left:
            u_lo -= 4.0
        if grow_right:
            u_hi += 4.0
    else:
        raise RuntimeError("integrand tails refuse to die; bad window or "
                           "non-decaying input")

    alive = np.nonzero(e >= peak - quad.tail_cut)[0]
    step = u[1] - u[0]
    a = u[max(int(alive[0]) - 2, 0)]
    b = u[min(int(alive[-1]) + 2, len(u) - 1)]

    # sharpen the peak; a saddle of width sigma needs a step ~ sigma/3, and
    # the coarse scan cannot see below its own spacing
    c0 = float(u[int(np.argmax(e))])
    w = step
    curv = 0.0
    for _ in range(5):
        uu = np.linspace(c0 - w, c0 + w, 17)
        ee = energy(uu)
        k = int(np.argmax(ee))
        c0 = float(uu[k])
        if 1 <= k <= 15:
            d = uu[1] - uu[0]
            curv = max(-(ee[k - 1] - 2.0 * ee[k] + ee[k + 1]) / (d * d), 0.0)
        w /= 4.0
    sigma = (1.0 / math.sqrt(curv)) if curv > 0.0 else math.inf
    h = max(min(quad.target_step, sigma / 3.0), 1e-5)
    a = min(a, c0 - 10.0 * min(sigma, 1.0))
    b = max(b, c0 + 10.0 * min(sigma, 1.0))

    def trap(hh: float) -> float:
        npts = int(math.ceil((b - a) / hh)) + 1
        if npts > 500_000:
            raise RuntimeError("quadrature grid blew past the safety cap")
        grid = np.linspace(a, b, npts)
        return _log_trapezoid(energy(grid), grid[1] - grid[0])

    val = trap(h)
    achieved = math.inf
    for _ in range(quad.max_refinements):
        h /= 2.0
        finer = trap(h)
        achieved = abs(math.expm1(min(finer - val, 700.0)))
        val = finer
        if achieved <= quad.rel_tol:
            return val
    raise QuadratureConvergenceError(achieved, quad.rel_tol)


def _log_k1(w):
    """log K_1(exp(w)) = -exp(w), vectorized over log-arguments."""
    with np.errstate(over="ignore"):
        return -np.exp(np.asarray(w, float))


class KernelTable:
    """Log-log table of one radial weight with spline evaluation."""

    def __init__(self, m: int, cfg: TableConfig, s: np.ndarray, logk: np.ndarray):
        self.m = m
        self.cfg = cfg
        self.s = s
        self.logk = logk
        self.s_lo_public = math.log(cfg.x_min)
        self.s_hi = math.log(cfg.x_max)
        self._spline = CubicSpline(s, logk) if m > 1 else None
        # Below the grid the weight follows its poly-log small-argument
        # model (m-1) * log(-log x) - log((m-1)!); the shift pins the model
        # to the bottom node so convolution integrands reaching past the
        # grid stay continuous (a hard cutoff would stall the quadrature).
        self._tail_shift = float(logk[0]) - self._log_small_model(float(s[0]))

    def _log_small_model(self, w):
        return (self.m - 1.0) * np.log(-np.asarray(w, float)) - math.lgamma(self.m)

    def log_eval_log_arg(self, w):
        """log K_m(exp(w)); modeled below the grid, -inf above (dead tail)."""
        w = np.asarray(w, float)
        if self.m == 1:
            return _log_k1(w)
        out = np.full(w.shape, _NEG_INF)
        inside = (w >= self.s[0]) & (w <= self.s[-1])
        below = w < self.s[0]
        if np.any(inside):
            out[inside] = self._spline(w[inside])
        if np.any(below):
            out[below] = self._log_small_model(w[below]) + self._tail_shift
        return out

    def log_eval(self, x):
        """log K_m(x) on the public domain [x_min, x_max]."""
        x = np.asarray(x, float)
        if np.any(x < self.cfg.x_min) or np.any(x > self.cfg.x_max):
            raise ValueError(f"argument outside table domain "
                             f"[{self.cfg.x_min:g}, {self.cfg.x_max:g}]")
        if self.m == 1:
            return -x
        return self._spline(np.log(x))

    def eval(self, x):
        return np.exp(self.log_eval(x))


_TABLE_CACHE: dict[tuple[int, TableConfig], KernelTable] = {}
_TABLE_LOCK = threading.Lock()


def build_table(m: int, cfg: TableConfig = DEFAULT_TABLE_CONFIG) -> KernelTable:
    """Build (or fetch from cache) the level-m table by chained convolution.

    Level 1 is exact.  Level m is K_1 * K_(m-1) evaluated with the quadrature
    engine at every grid point, the parent entering through its spline.  The
    lowest ``low_margin`` log-units of each table inherit a truncation error
    of a few percent (the parent table ends there too); the public domain
    starts above that zone and is unaffected.
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"level must be an integer >= 1, got {m!r}")
    key = (m, cfg)
    with _TABLE_LOCK:
        hit = _TABLE_CACHE.get(key)
    if hit is not None:
        return hit

    s_hi = math.log(cfg.x_max)
    s_lo = math.log(cfg.x_min) - cfg.low_margin
    npts = int(math.ceil((s_hi - s_lo) * cfg.points_per_decade / math.log(10.0))) + 1
    s = np.linspace(s_lo, s_hi, npts)

    if m == 1:
        logk = -np.exp(s)
    else:
        parent = build_table(m - 1, cfg)
        logk = np.empty(npts)
        for i, si in enumerate(s):
            logk[i] = log_mellin_convolve(
                _log_k1, parent.log_eval_log_arg, si,
                window=(si - 8.0, parent.s[-1]), quad=cfg.quad)

    table = KernelTable(m, cfg, s, logk)
    with _TABLE_LOCK:
        _TABLE_CACHE.setdefault(key, table)
    return table


def log_radial_weight(m: int, x, cfg: TableConfig = DEFAULT_TABLE_CONFIG):
    """log K_m(x) through the cached table (spline between nodes)."""
    return build_table(m, cfg).log_eval(x)


def radial_weight(m: int, x, cfg: TableConfig = DEFAULT_TABLE_CONFIG):
    """K_m(x); underflows to 0.0 where the log value is below ~-745."""
    return np.exp(log_radial_weight(m, x, cfg))


def log_radial_weight_conv(m: int, x: float,
                           cfg: TableConfig = DEFAULT_TABLE_CONFIG) -> float:
    """Pointwise log K_m(x) = log (K_1 * K_(m-1))(x) via the engine alone.

    For m = 2 both factors are exact, so the value is independent of any
    table; this is the route the Bessel cross-check runs on.
    """
    if not isinstance(m, int) or m < 2:
        raise ValueError("pointwise convolution route needs integer m >= 2")
    if x <= 0:
        raise ValueError("x must be positive")
    ln_x = math.log(x)
    if m == 2:
        parent_log, hi = _log_k1, 40.0
    else:
        parent = build_table(m - 1, cfg)
        parent_log, hi = parent.log_eval_log_arg, parent.s[-1]
    return log_mellin_convolve(_log_k1, parent_log, ln_x,
                               window=(ln_x - 8.0, hi), quad=cfg.quad)


def _tensor_grid(m: int, x: float, step: float, tail_cut: float):
    """Common grid for the (m-1)-dimensional representations."""
    r = x ** (1.0 / m)
    sigma = 1.0 / math.sqrt(m * r)
    h = min(step, sigma / 3.0)
    half = max(math.log1p((tail_cut + 10.0) / r), 12.0 * sigma) + 2.0 * h
    n = int(math.ceil(2.0 * half / h)) + 1
    if n ** (m - 1) > 2e8:
        raise RuntimeError(f"tensor quadrature too large for m={m}, x={x:g}")
    t = np.linspace(-half, half, n)
    return t, t[1] - t[0], r


def _tensor_logsum(exponent_of_block, t: np.ndarray, dim: int) -> float:
    """log-sum-exp of a dim-dimensional tensor built in chunks along axis 0."""
    if dim == 1:
        e = exponent_of_block(t)
        m0 = float(np.max(e))
        return m0 + math.log(float(np.sum(np.exp(e - m0))))
    # two passes: max first, then the shifted sum, chunking the first axis
    n = len(t)
    chunk = max(1, int(4e6 // n ** (dim - 1)))
    m0 = _NEG_INF
    for i in range(0, n, chunk):
        m0 = max(m0, float(np.max(exponent_of_block(t[i:i + chunk]))))
    total = 0.0
    for i in range(0, n, chunk):
        total += float(np.sum(np.exp(exponent_of_block(t[i:i + chunk]) - m0)))
    return m0 + math.log(total)


def log_radial_weight_centered(m: int, x: float, step: float = 0.2,
                               tail_cut: float = 45.0) -> float:
    """log K_m(x) from the centered representation

        K_m(x) = int over R^(m-1) of exp(-x**(1/m) * (sum_i exp(t_i)
                                        + exp(-sum_i t_i))) dt.

    Tensor trapezoid; cost grows with the (m-1)-th power of the grid size,
    so this is a cross-check tool for m <= 4, not a bulk evaluator.
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"level must be an integer >= 1, got {m!r}")
    if x <= 0:
        raise ValueError("x must be positive")
    if m == 1:
        return -x
    t, h, r = _tensor_grid(m, x, step, tail_cut)
    dim = m - 1
    expt = np.exp(t)

    def block(t0: np.ndarray) -> np.ndarray:
        shape0 = (len(t0),) + (1,) * (dim - 1)
        g = np.exp(t0).reshape(shape0)
        tsum = t0.reshape(shape0)
        for ax in range(1, dim):
            shape = [1] * dim
            shape[ax] = len(t)
            g = g + expt.reshape(shape)
            tsum = tsum + t.reshape(shape)
        return -r * (g + np.exp(-tsum))

    return _tensor_logsum(block, t, dim) + dim * math.log(h)


def log_radial_weight_product(m: int, x: float, step: float = 0.2,
                              tail_cut: float = 45.0) -> float:
    """log K_m(x) from the raw product representation

        K_m(x) = int over (0,inf)^(m-1) of exp(-sum_i x_i - x / prod_i x_i)
                 * prod_i dx_i / x_i,

    evaluated in log coordinates u_i = log x_i on a grid centered at
    log(x)/m per axis.  Same scaling caveats as the centered route.
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"level must be an integer >= 1, got {m!r}")
    if x <= 0:
        raise ValueError("x must be positive")
    if m == 1:
        return -x
    t, h, _ = _tensor_grid(m, x, step, tail_cut)
    dim = m - 1
    c = math.log(x) / m
    u = t + c
    expu = np.exp(u)
    ln_x = math.log(x)

    def block(t0: np.ndarray) -> np.ndarray:
        u0 = t0 + c
        shape0 = (len(t0),) + (1,) * (dim - 1)
        s = np.exp(u0).reshape(shape0)
        usum = u0.reshape(shape0)
        for ax in range(1, dim):
            shape = [1] * dim
            shape[ax] = len(t)
            s = s + expu.reshape(shape)
            usum = usum + u.reshape(shape)
        with np.errstate(over="ignore"):
            return _clean(-s - np.exp(ln_x - usum))

    return _tensor_logsum(block, t, dim) + dim * math.log(h)


def mellin_step(parent, x: float, quad: QuadConfig = QuadConfig()) -> float:
    """(K_1 * parent)(x): one convolution rung, returned as a value.

    ``parent`` is a KernelTable or a plain callable y -> parent(y); this is
    the recursion that climbs from level m-1 to level m.
    """
    if x <= 0:
        raise ValueError("x must be positive")
    ln_x = math.log(x)
    if isinstance(parent, KernelTable):
        parent_log, hi = parent.log_eval_log_arg, float(parent.s[-1])
    else:
        def parent_log(w):
            w = np.asarray(w, float)
            with np.errstate(over="ignore", invalid="ignore", under="ignore"):
                vals = np.log(np.asarray(parent(np.exp(w)), float))
            return _clean(vals)
        hi = 40.0
    return math.exp(log_mellin_convolve(_log_k1, parent_log, ln_x,
                                        window=(ln_x - 8.0, hi), quad=quad))


def radial_weight_point(m: int, x: float,
                        cfg: TableConfig = DEFAULT_TABLE_CONFIG) -> float:
    """One K_m value by the cheapest adequate route.

    m = 1 closed form; m = 2, 3 direct tensor quadrature of the centered
    representation (1-D / 2-D, no tables involved); m >= 4 through the
    chained tables, where the tensor route would cost too much.
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"level must be an integer >= 1, got {m!r}")
    if m <= 3:
        return math.exp(log_radial_weight_centered(m, x,
                                                   tail_cut=cfg.quad.tail_cut))
    return float(np.exp(log_radial_weight(m, x, cfg)))


def geometric_inner_product(f, g, m: int,
                            cfg: TableConfig = DEFAULT_TABLE_CONFIG) -> complex:
    """The plane-integral inner product, reduced to radial moments.

    Angular integration kills all cross terms, leaving
    sum_n f_n conj(g_n) * (n-th moment of K_m); with exact moments this is
    the coefficient inner product, so the two must agree to quadrature
    accuracy.  Infrastructure for cross-checks, not a fast path.
    """
    terms = []
    for n in range(min(len(f.coeffs), len(g.coeffs))):
        prod = f.coeffs[n] * complex(g.coeffs[n]).conjugate()
        if prod == 0:
            continue
        terms.append(complex(prod) * moment(m, n, cfg))
    return complex(math.fsum(t.real for t in terms),
                   math.fsum(t.imag for t in terms))


def bessel_k0_quadrature(z: float, step: float = 0.05) -> float:
    """K0(z) from its cosh integral, by trapezoid on the even integrand.

    Single-purpose oracle, independent of every convolution path above and
    of library Bessel routines.
    """
    if z <= 0:
        raise ValueError("z must be positive")
    # integrand exp(-z*cosh(u)) on [0, U]; dead once z*cosh(U) ~ z + 50
    u_max = math.acosh((50.0 / z) + 1.0) + step
    n = int(math.ceil(u_max / step)) + 1
    u = np.linspace(0.0, n * step, n + 1)
    vals = np.exp(-z * np.cosh(u) + z)
    total = (float(np.sum(vals)) - 0.5 * (float(vals[0]) + float(vals[-1])))
    return total * step * math.exp(-z)


def bessel_reference_log(x: float) -> float:
    """log of 2*K0(2*sqrt(x)), the closed form the level-2 weight must match."""
    if x <= 0:
        raise ValueError("x must be positive")
    z = 2.0 * math.sqrt(x)
    return math.log(2.0) + math.log(float(k0e(z))) - z


def moment(m: int, n: int, cfg: TableConfig = DEFAULT_TABLE_CONFIG) -> float:
    """int over (0,inf) of x**n K_m(x) dx, numerically; target value (n!)**m.

    Trapezoid over the table grid in log-x plus the analytic small-x
    remainder below the grid (the weight behaves like
    (-log x)**(m-1)/(m-1)! there, giving an incomplete-gamma mass).
    """
    if n < 0:
        raise ValueError("moment order must be >= 0")
    table = build_table(m, cfg)
    s, logk = table.s, table.logk
    ln_val = _log_trapezoid((n + 1) * s + logk, float(s[1] - s[0]))
    return math.exp(ln_val) + small_x_moment_bound(m, n, math.exp(float(s[0])))


def small_x_mass_bound(m: int, x0: float) -> float:
    """Approximate mass of K_m below x0 << 1 from the poly-log growth model."""
    if not 0.0 < x0 < 1.0:
        raise ValueError("the small-argument model needs 0 < x0 < 1")
    return float(gammaincc(m, -math.log(x0)))


def small_x_moment_bound(m: int, n: int, x0: float) -> float:
    """Approximate contribution of (0, x0) to the n-th moment, same model."""
    if not 0.0 < x0 < 1.0:
        raise ValueError("the small-argument model needs 0 < x0 < 1")
    return float(gammaincc(m, (n + 1) * (-math.log(x0)))) / (n + 1) ** m
