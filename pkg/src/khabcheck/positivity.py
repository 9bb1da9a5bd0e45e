"""Exact nonnegativity certificates for the transition polynomials on (0, oo).

The reduction argument is only valid where P_n(alpha, z) >= 0 for every
z > 0, so this module decides that property *exactly*: verdicts are backed
either by a certificate (a reason the polynomial cannot go negative) or by
a rational witness point where it provably does.

Decision ladder for a specialized polynomial p(z) with rational
coefficients:

1. zero polynomial, or all coefficients >= 0  ->  Nonnegative;
2. lowest-order nonzero coefficient < 0       ->  Negative (p < 0 near 0+,
   halve z until an exact evaluation is negative);
3. leading coefficient < 0                    ->  Negative (p < 0 near oo,
   double z until negative);
4. otherwise: isolate every positive real root with a Sturm chain of the
   squarefree part, refine each isolating interval below 2^-40, and read
   the sign of p at the interval endpoints and between intervals.  No
   negative sample means every positive root has even multiplicity and p
   stays nonnegative; a negative sample is returned as the witness.

All arithmetic is over Fraction; no floats participate in any verdict.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .exact import RationalLike, ZPolynomial, simplest_between
from .transition import transition_poly

Coeffs = tuple[Fraction, ...]

#: isolating intervals are refined below this width before sampling signs
_REFINE_WIDTH = Fraction(1, 2 ** 40)


class Status(enum.Enum):
    NONNEGATIVE = "Nonnegative"
    NEGATIVE = "Negative"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class QuadraticCoeffs:
    """Exact coefficients of  A z^2 + B z + C."""

    A: Fraction
    B: Fraction
    C: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "A", Fraction(self.A))
        object.__setattr__(self, "B", Fraction(self.B))
        object.__setattr__(self, "C", Fraction(self.C))

    def eval(self, z: RationalLike) -> Fraction:
        zz = Fraction(z)
        return (self.A * zz + self.B) * zz + self.C


@dataclass(frozen=True)
class PositivityVerdict:
    """Outcome of a sign decision on (0, oo).

    A Negative verdict always carries a positive rational ``witness`` whose
    exact evaluation ``witness_value`` is < 0; a Nonnegative verdict always
    names the ``certificate`` that establishes it.
    """

    status: Status
    certificate: Optional[str] = None
    witness: Optional[Fraction] = None
    witness_value: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.status is Status.NEGATIVE:
            if self.witness is None or self.witness_value is None:
                raise ValueError("Negative verdict requires a witness")
            if self.witness <= 0 or self.witness_value >= 0:
                raise ValueError("witness must be positive with negative value")
        if self.status is Status.NONNEGATIVE and not self.certificate:
            raise ValueError("Nonnegative verdict requires a certificate")


# ---------------------------------------------------------------------------
# exact univariate helpers (coefficient tuples, ascending powers of z)
# ---------------------------------------------------------------------------


def _strip(c: Sequence[Fraction]) -> Coeffs:
    out = tuple(Fraction(x) for x in c)
    while out and out[-1] == 0:
        out = out[:-1]
    return out


def _eval(c: Coeffs, z: Fraction) -> Fraction:
    acc = Fraction(0)
    for coeff in reversed(c):
        acc = acc * z + coeff
    return acc


def _deriv(c: Coeffs) -> Coeffs:
    return _strip(tuple(i * c[i] for i in range(1, len(c))))


def _divmod_poly(a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quot = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    db = len(b) - 1
    lead = b[-1]
    for i in range(len(a) - 1, db - 1, -1):
        if rem[i] == 0:
            continue
        factor = rem[i] / lead
        quot[i - db] = factor
        for j in range(db + 1):
            rem[i - db + j] -= factor * b[j]
    return _strip(tuple(quot)), _strip(tuple(rem))


def _gcd_poly(a: Coeffs, b: Coeffs) -> Coeffs:
    while b:
        _, r = _divmod_poly(a, b)
        a, b = b, r
    if a:
        a = tuple(x / a[-1] for x in a)  # monic for stability of sizes
    return a


def _squarefree(c: Coeffs) -> Coeffs:
    g = _gcd_poly(c, _deriv(c))
    if len(g) <= 1:
        return c
    q, r = _divmod_poly(c, g)
    assert not r, "gcd must divide the polynomial exactly"
    return q


def _sturm_chain(c: Coeffs) -> list[Coeffs]:
    chain = [c, _deriv(c)]
    while chain[-1]:
        _, r = _divmod_poly(chain[-2], chain[-1])
        if not r:
            break
        chain.append(tuple(-x for x in r))
    return [p for p in chain if p]


def _sign_variations(chain: list[Coeffs], z: Fraction) -> int:
    signs = []
    for p in chain:
        v = _eval(p, z)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _cauchy_bound(c: Coeffs) -> Fraction:
    lead = abs(c[-1])
    return 1 + max(abs(x) for x in c[:-1]) / lead if len(c) > 1 else Fraction(1)


def _split_point(h: Coeffs, lo: Fraction, hi: Fraction) -> Fraction:
    """A point strictly inside (lo, hi) where h does not vanish."""
    for num, den in ((1, 2), (1, 3), (2, 3), (2, 5), (3, 5), (1, 7), (3, 7),
                     (5, 7), (1, 11), (5, 11), (7, 11), (9, 11), (1, 13),
                     (5, 13), (11, 13), (1, 17)):
        mid = lo + (hi - lo) * Fraction(num, den)
        if _eval(h, mid) != 0:
            return mid
    raise RuntimeError("could not find a non-root split point")  # pragma: no cover


def _isolate_roots(h: Coeffs, chain: list[Coeffs],
                   lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (a, b], each holding exactly one root of h in (lo, hi]."""
    count = _sign_variations(chain, lo) - _sign_variations(chain, hi)
    if count == 0:
        return []
    if count == 1:
        return [(lo, hi)]
    mid = _split_point(h, lo, hi)
    return _isolate_roots(h, chain, lo, mid) + _isolate_roots(h, chain, mid, hi)


def _refine(h: Coeffs, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink a one-root interval below _REFINE_WIDTH by exact sign bisection.

    Returns a degenerate (r, r) interval when the root itself is hit exactly.
    """
    if _eval(h, hi) == 0:
        return hi, hi
    s_lo = _eval(h, lo)
    if s_lo == 0:
        # the root sits at the open end; cannot happen for our callers (lo is
        # either 0 with nonzero constant term or a checked split point)
        return lo, lo  # pragma: no cover
    while hi - lo > _REFINE_WIDTH:
        mid = (lo + hi) / 2
        v = _eval(h, mid)
        if v == 0:
            return mid, mid
        if (v > 0) == (s_lo > 0):
            lo, s_lo = mid, v
        else:
            hi = mid
    return lo, hi


# ---------------------------------------------------------------------------
# public deciders
# ---------------------------------------------------------------------------


def _halving_witness(value_at: Callable[[Fraction], Fraction]) -> tuple[Fraction, Fraction]:
    z = Fraction(1)
    for _ in range(100_000):
        v = value_at(z)
        if v < 0:
            return z, v
        z /= 2
    raise RuntimeError("halving search failed to certify negativity")  # pragma: no cover


def _doubling_witness(value_at: Callable[[Fraction], Fraction],
                      start: Fraction = Fraction(1)) -> tuple[Fraction, Fraction]:
    z = start
    for _ in range(100_000):
        v = value_at(z)
        if v < 0:
            return z, v
        z *= 2
    raise RuntimeError("doubling search failed to certify negativity")  # pragma: no cover


def quad_nonneg(c: QuadraticCoeffs) -> PositivityVerdict:
    """Exact sign decision for A z^2 + B z + C on z > 0.

    Implements the three-way criterion for quadratics: with A > 0 and B < 0
    nonnegativity is equivalent to a nonpositive discriminant (the vertex
    -B/(2A) lies in the positive axis); with A > 0, B >= 0 or with A = 0 it
    reduces to sign conditions on the remaining coefficients.
    """
    A, B, C = c.A, c.B, c.C
    if A > 0:
        if B < 0:
            disc = B * B - 4 * A * C
            if disc <= 0:
                return PositivityVerdict(Status.NONNEGATIVE, "criterion-case-1")
            vertex = -B / (2 * A)
            return PositivityVerdict(Status.NEGATIVE, witness=vertex,
                                     witness_value=c.eval(vertex))
        if C >= 0:
            return PositivityVerdict(Status.NONNEGATIVE, "criterion-case-2")
        z, v = _halving_witness(c.eval)
        return PositivityVerdict(Status.NEGATIVE, witness=z, witness_value=v)
    if A == 0:
        if B >= 0 and C >= 0:
            return PositivityVerdict(Status.NONNEGATIVE, "criterion-case-3")
        if C < 0:
            z, v = _halving_witness(c.eval)
        else:
            z, v = _doubling_witness(c.eval)
        return PositivityVerdict(Status.NEGATIVE, witness=z, witness_value=v)
    # A < 0: dominated by the negative leading term for large z
    z, v = _doubling_witness(c.eval, start=max(Fraction(1), -B / A))
    return PositivityVerdict(Status.NEGATIVE, witness=z, witness_value=v)


def coeffs_nonneg_on_pos(coeffs: Sequence[RationalLike]) -> PositivityVerdict:
    """Exact sign decision on (0, oo) for an explicit coefficient list."""
    c = _strip([Fraction(x) for x in coeffs])
    if not c:
        return PositivityVerdict(Status.NONNEGATIVE, "all-coefficients-nonnegative")
    # powers of z are positive on (0, oo): dropping a common z^m factor
    # changes no sign and makes the constant term nonzero
    first_nonzero = next(i for i, x in enumerate(c) if x != 0)
    c = c[first_nonzero:]

    def negative_at(z: Fraction, v: Fraction) -> PositivityVerdict:
        # report the value of the *original* polynomial, z^m factor restored
        return PositivityVerdict(Status.NEGATIVE, witness=z,
                                 witness_value=v * z ** first_nonzero)

    if all(x >= 0 for x in c):
        return PositivityVerdict(Status.NONNEGATIVE, "all-coefficients-nonnegative")
    if c[0] < 0:
        z, v = _halving_witness(lambda z: _eval(c, z))
        return negative_at(z, v)
    if c[-1] < 0:
        z, v = _doubling_witness(lambda z: _eval(c, z), start=_cauchy_bound(c))
        return negative_at(z, v)

    # mixed signs with positive ends: every sign change would have to happen
    # at a positive real root, so isolate them all
    h = _squarefree(c)
    chain = _sturm_chain(h)
    bound = _cauchy_bound(c)
    intervals = _isolate_roots(h, chain, Fraction(0), bound)
    if not intervals:
        return PositivityVerdict(Status.NONNEGATIVE, "sturm-no-positive-root")

    refined = [_refine(h, a, b) for a, b in intervals]
    # sample the *original* polynomial: at each interval's ends, and inside
    # every gap between consecutive intervals (signs are constant there)
    samples: list[Fraction] = []
    prev_hi = Fraction(0)
    for a, b in refined:
        if a == b:  # exact rational root: flank it on both sides
            samples.append((prev_hi + a) / 2)
            samples.append(a)  # evaluates to 0, harmless
        else:
            samples.append(a if a > 0 else (prev_hi + b) / 2)
            samples.append(b)
        prev_hi = max(b, prev_hi)
    samples.append(prev_hi + 1)
    for z in samples:
        if z <= 0:
            continue
        v = _eval(c, z)
        if v < 0:
            return negative_at(z, v)
    return PositivityVerdict(Status.NONNEGATIVE, "sturm-even-multiplicity")


def poly_nonneg_on_pos(P: ZPolynomial, alpha: RationalLike) -> PositivityVerdict:
    """Decide P(alpha, z) >= 0 for all z > 0, exactly, at a rational alpha."""
    a = Fraction(alpha)
    if a <= 0:
        raise ValueError("alpha must be positive")
    return coeffs_nonneg_on_pos(P.specialize(a))


# ---------------------------------------------------------------------------
# threshold search and region scan
# ---------------------------------------------------------------------------


def alpha_threshold(n: int, tol: float = 1e-6,
                    hi: RationalLike = Fraction(4)) -> tuple[Fraction, Fraction]:
    """Bracket sup{alpha > 0 : P_n(alpha, .) is nonnegative on (0, oo)}.

    Bisects with exact verdicts at rational probes until the bracket is
    narrower than ``tol``, then snaps the verified lower end to the simplest
    rational in the bracket (so a threshold of exactly 1/2 is reported as
    1/2 rather than a long dyadic).  The search assumes the threshold lies
    in (0, hi]; if the polynomial family is still nonnegative at ``hi`` the
    bracket cannot be established and a ValueError is raised.
    """
    if n < 1:
        raise ValueError("threshold search needs polynomial index >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    poly = transition_poly(n)

    def is_nonneg(a: Fraction) -> bool:
        return poly_nonneg_on_pos(poly, a).status is Status.NONNEGATIVE

    hi = Fraction(hi)
    if is_nonneg(hi):
        raise ValueError(f"nonnegative at alpha={hi}; threshold outside (0, {hi}]")
    lo = Fraction(1, 2)
    while not is_nonneg(lo):
        lo /= 2
        if lo < Fraction(1, 2 ** 60):  # pragma: no cover
            raise ValueError("no nonnegative alpha found above 2^-60")

    width = Fraction(tol).limit_denominator(10 ** 12)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if is_nonneg(mid):
            lo = mid
        else:
            hi = mid
    snap = simplest_between(lo, hi)
    if snap != lo and is_nonneg(snap):
        lo = snap
    return lo, hi


@dataclass(frozen=True)
class ScanCell:
    """One verdict in a region scan, labelled with both index conventions.

    ``poly_index`` is the subscript of the polynomial/transition function
    examined; the reduction for conjecture parameter n uses poly_index
    n - 1, so each cell also carries ``conjecture_n = poly_index + 1`` --
    per-index off-by-one confusion is the chief hazard in this area.
    """

    poly_index: int
    conjecture_n: int
    alpha: Fraction
    verdict: PositivityVerdict


@dataclass(frozen=True)
class ScanReport:
    cells: tuple[ScanCell, ...]

    @property
    def all_nonnegative(self) -> bool:
        return all(c.verdict.status is Status.NONNEGATIVE for c in self.cells)

    def cell(self, poly_index: int, alpha: RationalLike) -> ScanCell:
        a = Fraction(alpha)
        for c in self.cells:
            if c.poly_index == poly_index and c.alpha == a:
                return c
        raise KeyError((poly_index, a))


def region_scan(n_values: Iterable[int], alpha_grid: Iterable[RationalLike]) -> ScanReport:
    """Positivity verdicts over a (polynomial index, alpha) grid.

    Cells are computed independently and assembled in sorted (n, alpha)
    order, so the report is deterministic regardless of evaluation order.
    """
    ns = sorted(set(int(n) for n in n_values))
    alphas = sorted(set(Fraction(a) for a in alpha_grid))
    if not ns or not alphas:
        raise ValueError("scan grids must be non-empty")
    if any(n < 0 for n in ns):
        raise ValueError("polynomial indices must be >= 0")
    if any(a <= 0 for a in alphas):
        raise ValueError("alpha grid must be positive")
    cells = []
    for n in ns:
        poly = transition_poly(n)
        for a in alphas:
            cells.append(ScanCell(
                poly_index=n,
                conjecture_n=n + 1,
                alpha=a,
                verdict=poly_nonneg_on_pos(poly, a),
            ))
    return ScanReport(cells=tuple(cells))
