"""Exact constants attached to the kernel family.

The central object is the rational number

    B(alpha, n) = (1/alpha) * prod_{k=1..n-1} k / (k + alpha),

a Beta-function value in disguise: B(alpha, n) = Beta(alpha, n) for integer
n >= 1.  Its reciprocal

    alpha * prod_{k=1..n-1} (1 + alpha/k)

is the constant multiplying pi on the right-hand side of the target
inequality, and the power moment of the n-th kernel,

    integral_0^1 K_n(x) * x**(alpha-1) dx,

equals B(alpha, n+1) / alpha.  Everything here is exact Fraction
arithmetic; the only float that appears is in ``extremal_density`` which is
meant for numeric integrands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import RationalLike


def _check_alpha(alpha: RationalLike) -> Fraction:
    a = Fraction(alpha)
    if a <= 0:
        raise ValueError("alpha must be a positive rational")
    return a


def beta_int(alpha: RationalLike, n: int) -> Fraction:
    """Exact B(alpha, n) = (1/alpha) * prod_{k=1..n-1} k/(k+alpha), n >= 1."""
    a = _check_alpha(alpha)
    if n < 1:
        raise ValueError("n must be >= 1")
    value = 1 / a
    for k in range(1, n):
        value *= Fraction(k) / (k + a)
    return value


@dataclass(frozen=True)
class RhsConstant:
    """The exact multiple of pi appearing on the inequality's right side."""

    alpha: Fraction
    n: int
    pi_coefficient: Fraction

    @property
    def value(self) -> float:
        return math.pi * float(self.pi_coefficient)


def rhs_constant(alpha: RationalLike, n: int) -> RhsConstant:
    """pi-coefficient  alpha * prod_{k=1..n-1} (1 + alpha/k)  as an exact record.

    By construction this is exactly ``1 / beta_int(alpha, n)``; the product
    form is computed independently so the reciprocity law is a real check,
    not a tautology.
    """
    a = _check_alpha(alpha)
    if n < 1:
        raise ValueError("n must be >= 1")
    coeff = a
    for k in range(1, n):
        coeff *= 1 + a / k
    return RhsConstant(alpha=a, n=n, pi_coefficient=coeff)


def kernel_power_moment(alpha: RationalLike, n: int, mode: str = "product") -> Fraction:
    """Exact value of integral_0^1 K_n(x) x**(alpha-1) dx, for n >= 0.

    Two independent routes are kept deliberately separate:

    * ``mode="product"`` uses the closed form B(alpha, n+1)/alpha.
    * ``mode="sum"`` uses the telescoped form
      1/alpha**2 - sum_{m=1..n} B(alpha, m+1)/m,
      which integrates the family's step-down relation term by term.

    Agreement of the two modes is one of the identity checks.
    """
    a = _check_alpha(alpha)
    if n < 0:
        raise ValueError("n must be >= 0")
    if mode == "product":
        return beta_int(a, n + 1) / a
    if mode == "sum":
        value = 1 / (a * a)
        for m in range(1, n + 1):
            value -= beta_int(a, m + 1) / m
        return value
    raise ValueError(f"unknown mode {mode!r}; expected 'product' or 'sum'")


def verify_moment_identity(alpha: RationalLike, n_max: int) -> list[bool]:
    """Check product-mode == sum-mode exactly for every n in 0..n_max."""
    a = _check_alpha(alpha)
    return [
        kernel_power_moment(a, n, "product") == kernel_power_moment(a, n, "sum")
        for n in range(n_max + 1)
    ]


def verify_reciprocity(alpha: RationalLike, n_max: int) -> list[bool]:
    """Check beta_int * rhs_constant.pi_coefficient == 1 exactly, n = 1..n_max."""
    a = _check_alpha(alpha)
    return [
        beta_int(a, n) * rhs_constant(a, n).pi_coefficient == 1
        for n in range(1, n_max + 1)
    ]


def extremal_density(alpha: RationalLike, n: int, t: float) -> float:
    """The density  alpha * t**(alpha-1) / B(alpha, n)  that attains equality.

    This is the test function for which the premise of the reduction holds
    with equality; feeding it through the full chain must reproduce the
    pi-multiple right-hand side exactly (up to quadrature error).
    """
    a = _check_alpha(alpha)
    if t <= 0.0:
        raise ValueError("t must be positive")
    scale = float(a / beta_int(a, n))
    return scale * t ** (float(a) - 1.0)
