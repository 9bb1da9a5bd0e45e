"""The kernel family used on the unit interval.

``kernel_eval(n, x)`` computes

    K_n(x) = -ln(x) - sum_{m=1..n} (1-x)**m / m,          0 < x <= 1,

the n-th member of a family that starts at ``K_0(x) = -ln(x)`` and strips
one more term of the logarithm's Taylor expansion around x = 1 each step.
The members satisfy

    K_{n+1}(x) = K_n(x) - (1-x)**(n+1) / (n+1),
    K_n'(x)    = -(1-x)**n / x,
    K_n(1)     = 0.

Close to x = 1 the closed form subtracts nearly equal quantities, so for
x above a fixed switch point we instead sum the convergent tail series

    K_n(x) = sum_{m >= n+1} (1-x)**m / m

with an explicit geometric remainder bound, giving full double accuracy on
the whole domain.
"""

from __future__ import annotations

import math

#: requested bound on the truncation error of the tail series
DEFAULT_TOL = 1e-14

#: switch from closed form to tail series above this x
_SERIES_SWITCH = 0.9


def kernel_eval(n: int, x: float, tol: float = DEFAULT_TOL) -> float:
    """Evaluate the n-th kernel at x in (0, 1], to within ``tol`` of truth."""
    if n < 0:
        raise ValueError("kernel index n must be >= 0")
    if not 0.0 < x <= 1.0:
        raise ValueError(f"kernel argument must lie in (0, 1], got {x!r}")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if x == 1.0:
        return 0.0
    u = 1.0 - x
    if x <= _SERIES_SWITCH:
        acc = -math.log(x)
        power = 1.0
        for m in range(1, n + 1):
            power *= u
            acc -= power / m
        return acc
    # Tail series: sum_{m>n} u**m/m.  After adding the term with index M the
    # remainder is below u**(M+1)/((M+1)*x) (geometric bound), which is what
    # we test against tol.
    power = u ** (n + 1)
    m = n + 1
    acc = 0.0
    while True:
        acc += power / m
        power *= u
        m += 1
        if power / (m * x) < tol:
            return acc


def kernel_derivative(n: int, x: float) -> float:
    """d/dx of the n-th kernel: exactly -(1-x)**n / x on (0, 1]."""
    if n < 0:
        raise ValueError("kernel index n must be >= 0")
    if not 0.0 < x <= 1.0:
        raise ValueError(f"kernel argument must lie in (0, 1], got {x!r}")
    return -((1.0 - x) ** n) / x


def kernel_recurrence_check(n: int, x: float, tol: float = DEFAULT_TOL) -> float:
    """Residual of the step-down relation K_{n+1} = K_n - (1-x)**(n+1)/(n+1).

    Returns the signed defect; it should vanish to rounding for every valid
    input, and is exposed so test suites and the CLI can assert exactly that.
    """
    lhs = kernel_eval(n + 1, x, tol)
    rhs = kernel_eval(n, x, tol) - (1.0 - x) ** (n + 1) / (n + 1)
    return lhs - rhs
