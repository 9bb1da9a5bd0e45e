"""Adaptive quadrature for every integral identity in the reduction argument.

The integrals all live on (0, 1) or (0, oo) with algebraic and logarithmic
endpoint behavior.  The strategy, in order of preference:

* **Flatten known endpoint powers.**  If the integrand behaves like
  t^lam * (smooth) at 0 with a known lam > -1, substitute t = v^m with
  m = 1/(lam+1); the image integrand extends continuously to 0 (up to an
  integrable log factor) and the adaptive engine converges at machine
  precision instead of grinding against the singularity.
* **Split the half-line at t = 1 and invert the tail.**  t = 1/s maps
  (1, oo) onto (0, 1); algebraic decay t^(-1-d) becomes an s^(d-1)
  endpoint power, flattened the same way when d is known.
* **Graded fallback.**  With no endpoint hint, a single adaptive pass with
  a forced split point near 0 isolates the singular end.

The underlying panel integrator is QUADPACK's adaptive Gauss-Kronrod
scheme (scipy.integrate.quad); this module owns the substitutions, the
convergence bookkeeping, and the identity-specific drivers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from scipy.integrate import quad as _scipy_quad

from .constants import extremal_density, rhs_constant
from .exact import RationalLike
from .kernel import kernel_eval
from .positivity import PositivityVerdict, Status, poly_nonneg_on_pos
from .transition import log_weight, transition_evaluator, transition_poly


@dataclass(frozen=True)
class QuadConfig:
    """Tolerances and budgets for one logical integral (possibly two panels)."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_subdivisions: int = 2000
    singularity_split: float = 1e-3

    def __post_init__(self) -> None:
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if not 0.0 < self.singularity_split < 1.0:
            raise ValueError("singularity_split must lie in (0, 1)")


DEFAULT_CONFIG = QuadConfig()


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    converged: bool
    subdivisions_used: int

    def __add__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(
            value=self.value + other.value,
            error_estimate=self.error_estimate + other.error_estimate,
            converged=self.converged and other.converged,
            subdivisions_used=self.subdivisions_used + other.subdivisions_used,
        )


@dataclass(frozen=True)
class DensityFunction:
    """A caller-supplied density q(t) >= 0 on the half-line.

    ``power_at_zero`` / ``power_at_infinity`` are optional exponent hints:
    q(t) ~ c * t^power near the respective end.  When present they let the
    engine substitute the singularity away instead of subdividing against
    it; when absent the graded fallback is used.
    """

    evaluator: Callable[[float], float]
    description: str
    power_at_zero: Optional[float] = None
    power_at_infinity: Optional[float] = None

    def __call__(self, t: float) -> float:
        return self.evaluator(t)


def extremal_density_fn(alpha: RationalLike, n: int) -> DensityFunction:
    """The equality-attaining density as a DensityFunction with exponent hints."""
    a = Fraction(alpha)
    power = float(a) - 1.0
    return DensityFunction(
        evaluator=lambda t: extremal_density(a, n, t),
        description=f"extremal density, alpha={a}, n={n}",
        power_at_zero=power,
        power_at_infinity=power,
    )


def log_spaced(lo: float, hi: float, count: int) -> tuple[float, ...]:
    """``count`` logarithmically spaced points from lo to hi inclusive."""
    if lo <= 0 or hi <= lo or count < 2:
        raise ValueError("need 0 < lo < hi and count >= 2")
    step = (math.log10(hi) - math.log10(lo)) / (count - 1)
    return tuple(10.0 ** (math.log10(lo) + i * step) for i in range(count))


# ---------------------------------------------------------------------------
# engine
# ---------------------------------------------------------------------------


def _panel(f: Callable[[float], float], cfg: QuadConfig,
           points: Optional[Sequence[float]] = None) -> QuadResult:
    """One adaptive pass over (0, 1) with per-panel convergence bookkeeping."""
    pts = list(points) if points else None
    # a forced split needs at least one subinterval per piece; a budget below
    # that is honoured by reporting non-convergence rather than crashing
    limit = cfg.max_subdivisions if pts is None else max(cfg.max_subdivisions,
                                                         len(pts) + 1)
    out = _scipy_quad(f, 0.0, 1.0,
                      epsabs=0.5 * cfg.abs_tol, epsrel=0.5 * cfg.rel_tol,
                      limit=limit, points=pts,
                      full_output=True)
    value, err, info = out[0], out[1], out[2]
    clean = len(out) == 3  # a fourth element is QUADPACK's warning message
    converged = clean and err <= max(cfg.abs_tol, cfg.rel_tol * abs(value))
    return QuadResult(value=value, error_estimate=err,
                      converged=converged, subdivisions_used=int(info["last"]))


def _flattened(f: Callable[[float], float], power_at_zero: float) -> Callable[[float], float]:
    """Substitute t = v^m, m = 1/(power+1), absorbing a t^power factor at 0."""
    if power_at_zero <= -1.0:
        raise ValueError(f"endpoint power {power_at_zero} is not integrable")
    m = 1.0 / (power_at_zero + 1.0)

    def g(v: float) -> float:
        if v <= 0.0:
            return 0.0
        t = v ** m
        return f(t) * m * v ** (m - 1.0)

    return g


def integrate_unit_interval(f: Callable[[float], float], cfg: QuadConfig = DEFAULT_CONFIG,
                            power_at_zero: Optional[float] = None) -> QuadResult:
    """Integrate f over (0, 1) with an optional endpoint-power hint at 0."""
    if power_at_zero is not None and power_at_zero != 0.0:
        return _panel(_flattened(f, power_at_zero), cfg)
    return _panel(f, cfg, points=[cfg.singularity_split])


def integrate_half_line(f: Callable[[float], float], cfg: QuadConfig = DEFAULT_CONFIG,
                        power_at_zero: Optional[float] = None,
                        decay_power: Optional[float] = None) -> QuadResult:
    """Integrate f over (0, oo): head on (0, 1], inverted tail from (1, oo).

    ``decay_power`` is d in f(t) ~ c * t^(-1-d) as t -> oo (must be > 0 for
    convergence); it becomes the endpoint-power hint of the tail integral.
    """
    if decay_power is not None and decay_power <= 0.0:
        raise ValueError(f"tail decay power {decay_power} does not converge")
    head = integrate_unit_interval(f, cfg, power_at_zero)

    def tail(s: float) -> float:
        if s <= 0.0:
            return 0.0
        return f(1.0 / s) / (s * s)

    tail_hint = None if decay_power is None else decay_power - 1.0
    return head + integrate_unit_interval(tail, cfg, tail_hint)


# ---------------------------------------------------------------------------
# identity drivers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResidualCheck:
    """A quadrature value confronted with its analytic target."""

    value: float
    target: float
    quad: QuadResult

    @property
    def residual(self) -> float:
        return self.value - self.target


def integrate_01_kernel(n: int, q: DensityFunction, t: float,
                        alpha: RationalLike, cfg: QuadConfig = DEFAULT_CONFIG) -> QuadResult:
    """The premise integral  int_0^1 K_{n-1}(x) q(t x) dx  for conjecture index n.

    The kernel's logarithmic blow-up at 0 combines with q's endpoint power;
    with q ~ x^(a-1) (the extremal shape) the hinted substitution is exactly
    x = u^(1/a).
    """
    if n < 1:
        raise ValueError("conjecture index n must be >= 1")
    if t <= 0.0:
        raise ValueError("t must be positive")
    if Fraction(alpha) <= 0:
        raise ValueError("alpha must be positive")
    k_index = n - 1

    def integrand(x: float) -> float:
        if x <= 0.0 or x > 1.0:
            return 0.0
        return kernel_eval(k_index, x) * q(t * x)

    return integrate_unit_interval(integrand, cfg, q.power_at_zero)


def integrate_log_moment(alpha: RationalLike, cfg: QuadConfig = DEFAULT_CONFIG) -> QuadResult:
    """int_0^oo t^(alpha-1) ln(1 + t^(-2 alpha)) dt  (analytic value: pi/alpha)."""
    a = Fraction(alpha)
    if a <= 0:
        raise ValueError("alpha must be positive")
    af = float(a)

    def f(t: float) -> float:
        return t ** (af - 1.0) * log_weight(t, af)

    return integrate_half_line(f, cfg, power_at_zero=af - 1.0, decay_power=af)


def integrate_weight_prime_moment(alpha: RationalLike,
                                  cfg: QuadConfig = DEFAULT_CONFIG) -> QuadResult:
    """int_0^oo t^alpha * w'(t) dt  where w is the log weight (value: -pi).

    The first derivative collapses to -2a * t^(a-1) / (1 + t^(2a)), giving
    an integrand with the same endpoint structure as the log moment.
    """
    a = Fraction(alpha)
    if a <= 0:
        raise ValueError("alpha must be positive")
    af = float(a)
    two_a = 2.0 * af

    def f(t: float) -> float:
        # t^a * w'(t) in overflow-safe form
        if t >= 1.0:
            return -two_a * t ** (af - 1.0 - two_a) / (1.0 + t ** (-two_a))
        return -two_a * t ** (af - 1.0) / (1.0 + t ** two_a)

    return integrate_half_line(f, cfg, power_at_zero=af - 1.0, decay_power=af)


def verify_reconstruction(n: int, alpha: RationalLike, y: float,
                          cfg: QuadConfig = DEFAULT_CONFIG) -> ResidualCheck:
    """Check that Phi_n integrated against the kernel rebuilds the log weight:

        int_y^oo Phi_n(t) K_n(y/t) dt  =  ln(1 + y^(-2 alpha)).

    The substitution t = y/u maps the domain onto u in (0, 1] with the
    kernel evaluated at u directly; Phi's decay turns into a u^(2a-1)
    endpoint power (times an integrable log), which is flattened away.
    """
    a = Fraction(alpha)
    if a <= 0:
        raise ValueError("alpha must be positive")
    if y <= 0.0:
        raise ValueError("y must be positive")
    if n < 0:
        raise ValueError("index must be >= 0")
    af = float(a)
    phi = transition_evaluator(n, a)

    def integrand(u: float) -> float:
        if u <= 0.0 or u > 1.0:
            return 0.0
        return phi(y / u) * kernel_eval(n, u) * y / (u * u)

    result = integrate_unit_interval(integrand, cfg, power_at_zero=2.0 * af - 1.0)
    return ResidualCheck(value=result.value, target=log_weight(y, af), quad=result)


def verify_weighted_moment(n: int, alpha: RationalLike,
                           cfg: QuadConfig = DEFAULT_CONFIG) -> ResidualCheck:
    """Check the weighted transition moment against its exact pi-multiple:

        int_0^oo Phi_n(t) t^alpha dt  =  pi * alpha * prod_{k=1..n}(1 + alpha/k).
    """
    a = Fraction(alpha)
    if a <= 0:
        raise ValueError("alpha must be positive")
    if n < 0:
        raise ValueError("index must be >= 0")
    af = float(a)
    phi = transition_evaluator(n, a)

    def f(t: float) -> float:
        return phi(t) * t ** af

    result = integrate_half_line(f, cfg, power_at_zero=3.0 * af - 1.0, decay_power=af)
    return ResidualCheck(value=result.value,
                         target=rhs_constant(a, n + 1).value, quad=result)


def khabibullin_transform(n: int, alpha: RationalLike, psi: DensityFunction,
                          cfg: QuadConfig = DEFAULT_CONFIG) -> QuadResult:
    """The transform  psi |-> int_0^oo Phi_{n-1}(t) psi(t) dt  (conjecture index n).

    Integrability against Phi_{n-1} is the caller's responsibility; when
    psi carries exponent hints they are checked against Phi's endpoint
    behavior (t^(2a-1) at zero, t^(-1-2a) decay) and refused outright if
    the combination cannot converge.
    """
    a = Fraction(alpha)
    if a <= 0:
        raise ValueError("alpha must be positive")
    if n < 1:
        raise ValueError("conjecture index n must be >= 1")
    af = float(a)
    phi = transition_evaluator(n - 1, a)

    power_at_zero = None
    if psi.power_at_zero is not None:
        power_at_zero = 2.0 * af - 1.0 + psi.power_at_zero
        if power_at_zero <= -1.0:
            raise ValueError("psi grows too fast at 0 for the transform to converge")
    decay_power = None
    if psi.power_at_infinity is not None:
        decay_power = 2.0 * af - psi.power_at_infinity
        if decay_power <= 0.0:
            raise ValueError("psi grows too fast at infinity for the transform to converge")

    def f(t: float) -> float:
        return phi(t) * psi(t)

    return integrate_half_line(f, cfg, power_at_zero=power_at_zero, decay_power=decay_power)


# ---------------------------------------------------------------------------
# the full reduction chain
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PremiseEntry:
    """Premise integral at one grid point t, against the target t^alpha."""

    t: float
    lhs: float
    target: float
    quad: QuadResult

    @property
    def violation(self) -> float:
        """How far the premise inequality LHS <= t^alpha is overshot (0 if held)."""
        return max(0.0, self.lhs - self.target)

    @property
    def deviation(self) -> float:
        """Absolute distance from equality (meaningful for the extremal density)."""
        return abs(self.lhs - self.target)


@dataclass(frozen=True)
class ChainReport:
    """Everything the reduction chain produced for one (n, alpha, q)."""

    conjecture_n: int
    poly_index: int
    alpha: Fraction
    positivity: PositivityVerdict
    applicable: bool
    premise: tuple[PremiseEntry, ...] = ()
    conclusion: Optional[QuadResult] = None
    rhs_pi_coefficient: Optional[Fraction] = None
    rhs_value: Optional[float] = None
    premise_tol: float = 1e-6
    equality_rel_tol: float = 1e-5

    @property
    def premise_max_violation(self) -> float:
        return max((e.violation for e in self.premise), default=0.0)

    @property
    def premise_max_deviation(self) -> float:
        return max((e.deviation for e in self.premise), default=0.0)

    @property
    def premise_satisfied(self) -> bool:
        return self.applicable and self.premise_max_violation <= self.premise_tol

    @property
    def conclusion_satisfied(self) -> bool:
        """Conclusion inequality LHS <= RHS, up to the equality tolerance."""
        if not self.applicable or self.conclusion is None:
            return False
        slack = self.equality_rel_tol * abs(self.rhs_value)
        return self.conclusion.value <= self.rhs_value + slack

    @property
    def equality_within_tol(self) -> bool:
        """Both sides agree to equality_rel_tol (expected for the extremal q)."""
        if not self.applicable or self.conclusion is None:
            return False
        return abs(self.conclusion.value - self.rhs_value) <= \
            self.equality_rel_tol * abs(self.rhs_value)


def default_chain_grid() -> tuple[float, ...]:
    """The documented default premise grid: 25 log-spaced t in [1e-3, 1e3]."""
    return log_spaced(1e-3, 1e3, 25)


def verify_conjecture_chain(n: int, alpha: RationalLike, q: DensityFunction,
                            t_grid: Optional[Sequence[float]] = None,
                            cfg: QuadConfig = DEFAULT_CONFIG,
                            premise_tol: float = 1e-6,
                            equality_rel_tol: float = 1e-5) -> ChainReport:
    """Run the reduction chain for conjecture index n at a rational alpha.

    Gate: the multiply-and-integrate step is only valid when P_{n-1} is
    nonnegative on (0, oo); otherwise the report comes back inapplicable
    and no integrals are attempted.  When applicable, the report carries
    (a) the premise integral against t^alpha on the sampled grid -- "for
    all t" is not decidable numerically, so the grid is explicit data --
    and (b) the conclusion integral against its exact pi-multiple target.
    """
    a = Fraction(alpha)
    if a <= 0:
        raise ValueError("alpha must be positive")
    if n < 1:
        raise ValueError("conjecture index n must be >= 1")
    poly_index = n - 1
    verdict = poly_nonneg_on_pos(transition_poly(poly_index), a)
    if verdict.status is not Status.NONNEGATIVE:
        return ChainReport(conjecture_n=n, poly_index=poly_index, alpha=a,
                           positivity=verdict, applicable=False,
                           premise_tol=premise_tol, equality_rel_tol=equality_rel_tol)

    grid = tuple(t_grid) if t_grid is not None else default_chain_grid()
    if not grid or any(t <= 0 for t in grid):
        raise ValueError("t grid must be non-empty and positive")
    af = float(a)

    entries = []
    for t in sorted(grid):
        inner = integrate_01_kernel(n, q, t, a, cfg)
        entries.append(PremiseEntry(
            t=t, lhs=t * inner.value, target=t ** af,
            quad=inner,
        ))

    def conclusion_integrand(t: float) -> float:
        return q(t) * log_weight(t, af)

    power_at_zero = q.power_at_zero
    decay_power = None
    if q.power_at_infinity is not None:
        decay_power = 2.0 * af - 1.0 - q.power_at_infinity
        if decay_power <= 0.0:
            raise ValueError("q decays too slowly for the conclusion integral")
    conclusion = integrate_half_line(conclusion_integrand, cfg,
                                     power_at_zero=power_at_zero,
                                     decay_power=decay_power)
    coeff = rhs_constant(a, n).pi_coefficient
    return ChainReport(
        conjecture_n=n, poly_index=poly_index, alpha=a,
        positivity=verdict, applicable=True,
        premise=tuple(entries),
        conclusion=conclusion,
        rhs_pi_coefficient=coeff,
        rhs_value=math.pi * float(coeff),
        premise_tol=premise_tol,
        equality_rel_tol=equality_rel_tol,
    )
