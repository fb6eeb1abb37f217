"""Shift/derivative operator calculus on the weighted coefficient scale.

The two basic operators are multiplication by the variable (``raising``, a
coefficient shift up) and differentiation (``lowering``).  Their level-m
adjoints come out of the weighted inner product as pure coefficient
actions:

    (raising_adjoint f)_n  = (n+1)**m     * f_{n+1}
    (lowering_adjoint f)_n = f_{n-1} / n**(m-1)       (n >= 1)

so at level 1 they reduce to the classical pair.  The module keeps all
actions exact on int/Fraction input, which lets the combinatorial identity
checks run in integer arithmetic with no tolerance at all.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .coeffspace import (
    TaylorCoeffs,
    WeightOverflowError,
    _is_exact,
    log_weight,
    squared_norm,
    sub,
    weight,
)
from .stirling import normal_order_coeffs, stirling_s2

_TINY = 1e-300


class OperatorConsistencyError(RuntimeError):
    """Two supposedly equivalent operator routes disagreed."""


def _require_level(m: int) -> None:
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"level must be an integer >= 1, got {m!r}")


def raising(f: TaylorCoeffs) -> TaylorCoeffs:
    """Multiplication by the variable: shifts every coefficient up one slot."""
    if not f.coeffs:
        return f
    return TaylorCoeffs((0,) + f.coeffs)


def lowering(f: TaylorCoeffs) -> TaylorCoeffs:
    """Differentiation: (lowering f)_n = (n+1) * f_{n+1}."""
    cs = f.coeffs
    return TaylorCoeffs(tuple((n + 1) * cs[n + 1] for n in range(len(cs) - 1)))


def raising_adjoint(f: TaylorCoeffs, m: int) -> TaylorCoeffs:
    """Adjoint of ``raising`` at level m: (n+1)**m * f_{n+1}.

    Equals the operator word (lowering . raising)**(m-1) . lowering read as a
    composition; see :func:`adjoint_word_check`.
    """
    _require_level(m)
    cs = f.coeffs
    return TaylorCoeffs(tuple((n + 1) ** m * cs[n + 1] for n in range(len(cs) - 1)))


def lowering_adjoint(f: TaylorCoeffs, m: int) -> TaylorCoeffs:
    """Adjoint of ``lowering`` at level m: shifts up and divides by n**(m-1).

    Exact input stays exact (Fractions appear when the division demands
    them); float/complex input is divided in the obvious way.
    """
    _require_level(m)
    if not f.coeffs:
        return f
    out = [0]
    for k, c in enumerate(f.coeffs):
        d = (k + 1) ** (m - 1)
        if d == 1 or c == 0:
            out.append(c)
        elif _is_exact(c):
            out.append(Fraction(c, d))
        else:
            out.append(c / d)
    return TaylorCoeffs(out)


def apply_word(word: str, f: TaylorCoeffs, m: int = 1) -> TaylorCoeffs:
    """Apply a word of operator letters to f, rightmost letter acting first.

    Letters (case-insensitive): ``A`` raising, ``B`` lowering, ``S`` the
    level-m adjoint of A, ``T`` the level-m adjoint of B.  So the word
    ``"BA"`` sends a monomial of degree n to (n+1) times itself, ``"AB"``
    to n times itself.  The level only matters for S and T.
    """
    _require_level(m)
    g = f
    for ch in reversed(word.upper()):
        if ch == "A":
            g = raising(g)
        elif ch == "B":
            g = lowering(g)
        elif ch == "S":
            g = raising_adjoint(g, m)
        elif ch == "T":
            g = lowering_adjoint(g, m)
        else:
            raise ValueError(f"unknown operator letter {ch!r} (use A, B, S, T)")
    return g


def number_power_direct(k: int, f: TaylorCoeffs) -> TaylorCoeffs:
    """(raising . lowering)**k applied literally, k compositions."""
    if k < 0:
        raise ValueError("power must be >= 0")
    g = f
    for _ in range(k):
        g = raising(lowering(g))
    return g


def number_power_normal_ordered(k: int, f: TaylorCoeffs) -> TaylorCoeffs:
    """(raising . lowering)**k via its normal-ordered expansion.

    Uses sum over n of S(k, n) * raising**n . lowering**n with Stirling
    numbers of the second kind; exact on exact input.
    """
    if k < 0:
        raise ValueError("power must be >= 0")
    if k == 0:
        return f
    # lowering powers are reused across the expansion terms
    lowered = [f]
    for _ in range(k):
        lowered.append(lowering(lowered[-1]))
    total = TaylorCoeffs.zero()
    for n, s in normal_order_coeffs(k):
        g = lowered[n]
        for _ in range(n):
            g = raising(g)
        total = _axpy(s, g, total)
    return total


def _axpy(c, g: TaylorCoeffs, acc: TaylorCoeffs) -> TaylorCoeffs:
    n = max(len(g.coeffs), len(acc.coeffs))
    return TaylorCoeffs(tuple(acc.coeff(i) + c * g.coeff(i) for i in range(n)))


def raising_adjoint_via_stirling(f: TaylorCoeffs, m: int) -> TaylorCoeffs:
    """The raising adjoint as lowering composed with the normal-ordered
    (m-1)-th power of the number operator; must agree with
    :func:`raising_adjoint` exactly."""
    _require_level(m)
    return lowering(number_power_normal_ordered(m - 1, f))


def commutator_raising(f: TaylorCoeffs, m: int) -> TaylorCoeffs:
    """[raising_adjoint, raising] f, computed from the coefficient actions."""
    _require_level(m)
    return sub(raising_adjoint(raising(f), m), raising(raising_adjoint(f, m)))


def commutator_expansion_terms(m: int) -> list[tuple[int, int]]:
    """Weights of the normal-ordered form of [raising_adjoint, raising].

    Returns [(n, (n+1) * S(m, n+1)) for n = 1 .. m-1]; the identity term
    (weight 1) is implied.  Empty for m = 1, where the commutator is the
    identity.
    """
    _require_level(m)
    return [(n, (n + 1) * stirling_s2(m, n + 1)) for n in range(1, m)]


def commutator_via_expansion(f: TaylorCoeffs, m: int) -> TaylorCoeffs:
    """[raising_adjoint, raising] f through the Stirling expansion route."""
    _require_level(m)
    total = f
    for n, wgt in commutator_expansion_terms(m):
        g = f
        for _ in range(n):
            g = lowering(g)
        for _ in range(n):
            g = raising(g)
        total = _axpy(wgt, g, total)
    return total


def commutator_apply(f: TaylorCoeffs, m: int) -> TaylorCoeffs:
    """[raising_adjoint, raising] f with a built-in consistency assertion.

    Runs both the direct route and the Stirling-expansion route.  Exact
    input demands exact agreement; float input is allowed rounding at
    relative 1e-12 per coefficient.  Disagreement raises
    :class:`OperatorConsistencyError` (it would mean the expansion weights
    are wrong, not that the input is bad).
    """
    direct = commutator_raising(f, m)
    expanded = commutator_via_expansion(f, m)
    if f.is_exact():
        ok = direct == expanded
    else:
        n = max(len(direct.coeffs), len(expanded.coeffs))
        ok = all(
            abs(complex(direct.coeff(i)) - complex(expanded.coeff(i)))
            <= 1e-12 * max(abs(complex(direct.coeff(i))), 1e-300)
            for i in range(n)
        )
    if not ok:
        raise OperatorConsistencyError(
            f"commutator routes disagree at level m={m}")
    return direct


def weighted_moment(f: TaylorCoeffs, m: int, k: int) -> float:
    """Sum over n of |f_n|**2 * (n!)**m * n**k (hybrid log/exact per term)."""
    _require_level(m)
    if k < 0:
        raise ValueError("moment order must be >= 0")
    terms = []
    for n, c in enumerate(f.coeffs):
        if c == 0 or (n == 0 and k > 0):
            continue
        cc = complex(c)
        mag2 = cc.real * cc.real + cc.imag * cc.imag
        lw = log_weight(n, m)
        if lw < 700.0 and mag2 > _TINY:
            t = mag2 * weight(n, m) * float(n**k)
        else:
            lt = 2.0 * math.log(abs(cc)) + lw + k * math.log(max(n, 1))
            if lt > 709.0:
                raise WeightOverflowError(n, m)
            t = math.exp(lt)
        if not math.isfinite(t):
            raise WeightOverflowError(n, m)
        terms.append(t)
    return math.fsum(terms)


def domain_functional(f: TaylorCoeffs, m: int) -> tuple[float, bool]:
    """Graph-norm style functional sum |f_n|^2 (n!)^m n^m and its finiteness.

    Truncated series are always in the operator domain; the bool mirrors the
    definition (and goes False only if the value leaves double range).
    """
    _require_level(m)
    try:
        val = weighted_moment(f, m, m)
    except WeightOverflowError:
        return math.inf, False
    return val, math.isfinite(val)


def shift_norm_decomposition(f: TaylorCoeffs, m: int) -> dict:
    """Both sides of the level-m norm identity for the shift.

    lhs  = ||raising f||^2
    rhs  = ||raising_adjoint f||^2 + ||f||^2
           + sum_{k=1}^{m-1} C(m, k) * weighted_moment(f, m, k)

    Returns the pieces so callers can inspect where a mismatch lives.
    """
    _require_level(m)
    lhs = squared_norm(raising(f), m)
    adj = squared_norm(raising_adjoint(f, m), m)
    base = squared_norm(f, m)
    extra = math.fsum(
        math.comb(m, k) * weighted_moment(f, m, k) for k in range(1, m)
    )
    return {"lhs": lhs, "adjoint": adj, "base": base, "extra": extra,
            "rhs": adj + base + extra}


def norm_identity_report(f: TaylorCoeffs, m: int) -> tuple[float, list[float]]:
    """(lhs, rhs_terms) for the shift norm identity.

    rhs_terms = [||raising_adjoint f||^2, ||f||^2,
                 C(m,1)*moment_1, ..., C(m,m-1)*moment_{m-1}];
    the identity asserts lhs == sum(rhs_terms).
    """
    _require_level(m)
    lhs = squared_norm(raising(f), m)
    terms = [squared_norm(raising_adjoint(f, m), m), squared_norm(f, m)]
    terms.extend(math.comb(m, k) * weighted_moment(f, m, k)
                 for k in range(1, m))
    return lhs, terms


def adjoint_word_check(m: int, degree: int) -> bool:
    """raising_adjoint == (lowering raising)^(m-1) lowering on monomials.

    Exact integer comparison for all monomial degrees up to ``degree``.
    """
    _require_level(m)
    if degree < 1:
        raise ValueError("degree must be >= 1")
    word = "BA" * (m - 1) + "B"
    for j in range(degree + 1):
        mono = TaylorCoeffs.monomial(j)
        adj = raising_adjoint(mono, m)
        if apply_word(word, mono, m) != adj:
            return False
        if raising_adjoint_via_stirling(mono, m) != adj:
            return False
    return True


def reordering_identity_check(n: int, degree: int) -> bool:
    """Exact check of the two basic reordering identities on monomials.

    lowering^n . raising          == raising . lowering^n + n lowering^(n-1)
    lowering . raising^n          == raising^n . lowering + n raising^(n-1)
    """
    if n < 1 or degree < 0:
        raise ValueError("need n >= 1 and degree >= 0")
    for j in range(degree + 1):
        mono = TaylorCoeffs.monomial(j)
        lhs1 = apply_word("B" * n + "A", mono)
        rhs1 = _axpy(n, apply_word("B" * (n - 1), mono),
                     apply_word("A" + "B" * n, mono))
        if lhs1 != rhs1:
            return False
        lhs2 = apply_word("B" + "A" * n, mono)
        rhs2 = _axpy(n, apply_word("A" * (n - 1), mono),
                     apply_word("A" * n + "B", mono))
        if lhs2 != rhs2:
            return False
    return True
