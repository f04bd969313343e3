"""Central charge, slopes and validity on the (beta, alpha^2) half-plane.

A stability parameter is a point of the upper half-plane with beta on
the horizontal axis and alpha > 0 vertical.  All comparisons stay exact
because a point stores alpha^2, never alpha: the central charge of a
class u = (r, c, s) at (beta, alpha) is

    Re Z = -s + H^2*beta*c + (H^2/2)*(alpha^2 - beta^2)*r
    Im Z = alpha * H^2 * (c - beta*r)

so Re Z and Im Z / alpha are rational functions of (beta, alpha^2).
Slope comparisons cross-multiply, which cancels the positive factor
alpha.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .lattice import K3Config, MukaiVector

Rat = Fraction


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating point input rejected; pass int or Fraction")
    return Fraction(x)


@dataclass(frozen=True)
class StabilityPoint:
    """Exact point (beta, alpha^2) of the upper half-plane, alpha^2 > 0."""

    beta: Fraction
    alpha2: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "beta", _frac(self.beta))
        object.__setattr__(self, "alpha2", _frac(self.alpha2))
        if self.alpha2 <= 0:
            raise ValueError(f"alpha^2 must be positive, got {self.alpha2}")


@dataclass(frozen=True)
class ReducedCharge:
    """Central charge with the positive factor alpha removed: (Re Z, Im Z / alpha)."""

    re: Fraction
    im_over_alpha: Fraction


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class HoleReport:
    """A root killing validity on a vertical ray.

    delta has square -2, positive rank and slope zero on the ray;
    alpha2_threshold is the largest alpha^2 with Re Z(delta) <= 0 (None
    if Re Z(delta) > 0 everywhere on the ray, which cannot happen for
    the enumerated family but is kept for safety).
    """

    delta: MukaiVector
    alpha2_threshold: Fraction | None


def reduced_charge(cfg: K3Config, pt: StabilityPoint, u: MukaiVector) -> ReducedCharge:
    h2 = cfg.h2
    re = -u.s + h2 * pt.beta * u.c + Fraction(h2, 2) * (pt.alpha2 - pt.beta**2) * u.r
    im = h2 * (u.c - pt.beta * u.r)
    return ReducedCharge(Fraction(re), Fraction(im))


def slope_mu_beta(u: MukaiVector, beta) -> Fraction | None:
    """Tilt slope c/r - beta; None encodes +infinity (rank-zero classes)."""
    if u.r == 0:
        return None
    return Fraction(u.c, u.r) - _frac(beta)


def expected_shift(u: MukaiVector, beta) -> int:
    """Shift parity putting a class into the tilted heart at a given beta.

    0 when the slope numerator c - beta*r is positive (the class itself
    sits in the heart), 1 otherwise (the shift by one does).
    """
    return 0 if u.c - _frac(beta) * u.r > 0 else 1


def slope_compare(cfg: K3Config, pt: StabilityPoint, u: MukaiVector,
                  w: MukaiVector) -> Ordering:
    """Exact comparison of the charge slopes -Re Z / Im Z of two classes.

    Both classes must have Im Z > 0 at the point (otherwise the slope
    is not defined inside the heart's half-plane).
    """
    zu = reduced_charge(cfg, pt, u)
    zw = reduced_charge(cfg, pt, w)
    if zu.im_over_alpha <= 0 or zw.im_over_alpha <= 0:
        raise ValueError("slope comparison requires Im Z > 0 for both classes")
    # mu(u) - mu(w) has the sign of re(w)*im(u) - re(u)*im(w)
    diff = zw.re * zu.im_over_alpha - zu.re * zw.im_over_alpha
    if diff < 0:
        return Ordering.LESS
    if diff > 0:
        return Ordering.GREATER
    return Ordering.EQUAL


def realpart_vanishing_alpha2(cfg: K3Config, delta: MukaiVector, beta) -> Fraction | None:
    """The alpha^2 with Re Z(delta) = 0 on the ray at beta, for rank > 0 classes.

    Re Z is strictly increasing in alpha^2 when the rank is positive,
    so this is also the largest alpha^2 with Re Z <= 0.  Returns None
    when the zero lies at alpha^2 <= 0.
    """
    if delta.r <= 0:
        raise ValueError("threshold only defined for positive-rank classes")
    beta = _frac(beta)
    base = -delta.s + cfg.h2 * beta * delta.c - Fraction(cfg.h2, 2) * beta**2 * delta.r
    alpha2 = Fraction(-2 * base, cfg.h2 * delta.r)
    return alpha2 if alpha2 > 0 else None


def find_holes_on_ray(cfg: K3Config, beta, search_limit: int = 64) -> list[HoleReport]:
    """All roots delta (delta^2 = -2, rank > 0, slope zero) on a vertical ray.

    Writing beta = p/q in lowest terms, such a root has rank q*t and
    degree p*t for a positive integer t, and the square condition pins
    s = (H^2 p^2 t^2 + 2) / (2 q t), which must be an integer.  That
    divisibility forces t | 2, so any search_limit >= 2 is exhaustive;
    the limit caps t for callers that want to see the parametrization.
    """
    beta = _frac(beta)
    p, q = beta.numerator, beta.denominator
    holes: list[HoleReport] = []
    for t in range(1, max(search_limit, 0) + 1):
        r = q * t
        c = p * t
        num = cfg.h2 * p * p * t * t + 2
        den = 2 * q * t
        if num % den:
            continue
        delta = MukaiVector(r, c, num // den)
        holes.append(HoleReport(delta, realpart_vanishing_alpha2(cfg, delta, beta)))
    return holes


def is_valid_point(cfg: K3Config, pt: StabilityPoint, search_limit: int = 64) -> bool:
    """Whether (beta, alpha^2) defines a geometric stability condition.

    The point is valid iff Re Z(delta) > 0 for every root delta with
    positive rank and slope zero at beta; it always is once
    alpha^2 * H^2 >= 2.
    """
    if pt.alpha2 * cfg.h2 >= 2:
        return True
    for hole in find_holes_on_ray(cfg, pt.beta, search_limit):
        if hole.alpha2_threshold is not None and hole.alpha2_threshold >= pt.alpha2:
            return False
    return True
