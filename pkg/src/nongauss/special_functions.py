"""Gauss hypergeometric and Legendre functions on the real line.

Only the two regimes needed by the photon-statistics formulas are covered:
terminating series (upper parameter a non-positive integer) and the
convergent power series for |z| < 1. Sums are accumulated with
:func:`math.fsum`, and every term is produced from the previous one by the
ratio recurrence, so no factorial is ever formed explicitly.
"""

from __future__ import annotations

import math
import numbers
from fractions import Fraction

from .errors import AccuracyError, DomainError

DEFAULT_TOL = 1e-14
MAX_TERMS = 10**6


def _is_nonpositive_integer(value) -> bool:
    return value <= 0 and float(value).is_integer()


def _check_order(m) -> int:
    if isinstance(m, bool) or not isinstance(m, numbers.Integral) or m < 0:
        raise DomainError(f"order must be a non-negative integer, got {m!r}")
    return int(m)


def hyp2f1_terminating(m: int, b, c, z, exact: bool = False) -> float:
    """Evaluate the terminating series 2F1(-m, b; c; z).

    The series has exactly ``m + 1`` terms, so it converges for every real
    ``z``.

    Args:
        m: non-negative integer; the upper parameter is ``-m``.
        b: second upper parameter.
        c: lower parameter. Must not make a Pochhammer factor ``c + k``
            vanish for ``k < m``.
        z: argument.
        exact: if True, sum in rational arithmetic (inputs are converted
            exactly with :class:`fractions.Fraction`) and round once at the
            end. Use this when the terms alternate in sign and cancel.

    Returns:
        float: the value of the polynomial.

    Raises:
        DomainError: if ``m`` is not a non-negative integer or a factor
            ``c + k`` of the lower Pochhammer symbol is zero.
    """
    m = _check_order(m)
    if _is_nonpositive_integer(c) and -c <= m - 1:
        k = int(-c)
        raise DomainError(
            f"lower Pochhammer factor (c + {k}) vanishes for c={c!r}; "
            f"pole inside the {m + 1} terms of 2F1(-{m}, b; c; z)"
        )

    if exact:
        b, c, z = Fraction(b), Fraction(c), Fraction(z)
        term = Fraction(1)
        total = Fraction(1)
        for n in range(m):
            term = term * (n - m) * (b + n) * z / ((c + n) * (n + 1))
            if term == 0:
                break
            total += term
        return float(total)

    term = 1.0
    terms = [term]
    for n in range(m):
        term *= (n - m) * (b + n) * z / ((c + n) * (n + 1))
        if term == 0.0:
            break
        terms.append(term)
    return math.fsum(terms)


def hyp2f1_series(a, b, c, z, tol: float = DEFAULT_TOL, max_terms: int = MAX_TERMS) -> float:
    """Sum the Gauss hypergeometric series 2F1(a, b; c; z) for |z| < 1.

    Summation stops once the estimated remaining tail, bounded geometrically
    from the current term ratio, falls below ``tol`` relative to the partial
    sum. If ``a`` or ``b`` is a non-positive integer the series terminates
    on its own and the result is exact up to rounding.

    Raises:
        DomainError: if ``|z| >= 1``, ``c`` is a non-positive integer, or
            ``tol <= 0``.
        AccuracyError: if ``max_terms`` terms are summed without meeting
            the tolerance. The exception carries the last partial sum.
    """
    if not abs(z) < 1:
        raise DomainError(f"|z| < 1 required for series convergence, got z={z!r}")
    if _is_nonpositive_integer(c):
        raise DomainError(f"lower parameter c={c!r} is a non-positive integer")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")

    term = 1.0
    terms = [term]
    partial = 1.0
    prev_ratio = math.inf
    for n in range(max_terms):
        ratio = (a + n) * (b + n) * z / ((c + n) * (n + 1))
        term *= ratio
        if term == 0.0:
            return math.fsum(terms)
        terms.append(term)
        partial += term
        r = abs(ratio)
        # the geometric bound is only valid once the ratio has settled
        bound = max(r, abs(z))
        if bound < 1 and (r <= prev_ratio or r <= abs(z)):
            next_term = abs(term) * bound
            if next_term / (1.0 - bound) < tol * abs(partial):
                return math.fsum(terms)
        prev_ratio = r
    raise AccuracyError(
        f"2F1({a}, {b}; {c}; {z}) did not converge within {max_terms} terms",
        partial=math.fsum(terms),
        terms=len(terms),
    )


def legendre_p(l: int, z) -> float:
    """Legendre polynomial P_l(z) from its hypergeometric representation.

    Uses P_l(z) = 2F1(-l, l + 1; 1; (1 - z)/2). For z >= 1 every term is
    positive and the double-precision sum is accurate. For z < 1 the terms
    alternate and cancel heavily (P_30(0) is a difference of terms near
    1e15), so the sum is carried out in exact rational arithmetic.
    """
    l = _check_order(l)
    if l == 0:
        return 1.0
    if z >= 1:
        return hyp2f1_terminating(l, l + 1, 1, (1.0 - z) / 2.0)
    return hyp2f1_terminating(l, l + 1, 1, (1 - Fraction(z)) / 2, exact=True)
