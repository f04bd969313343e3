"""Numerical walls for a fixed class: shapes, ray crossings, searches.

For a fixed v with positive rank, the numerical wall generated by a
class w is either the vertical line beta = v.c/v.r (when w has the same
slope direction as v) or a semicircle centered on the beta-axis with

    C   = (v.r*w.s - v.s*w.r) / (H^2 * (v.r*w.c - v.c*w.r))
    R^2 = (C - v.c/v.r)^2 - Q,        Q = <v,v> / (H^2 * v.r^2).

Every semicircular wall has its center strictly outside the band
[v.c/v.r - sqrt(Q), v.c/v.r + sqrt(Q)] and crosses exactly one of the
two vertical rays at the band's edges, which is what makes a finite
search along those rays possible.  All square-root comparisons are done
by sign-aware squaring.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor

from .halfplane import _frac
from .lattice import K3Config, MukaiVector, mukai_square


@dataclass(frozen=True)
class Vertical:
    beta: Fraction


@dataclass(frozen=True)
class Semicircle:
    center: Fraction
    radius2: Fraction


Shape = Vertical | Semicircle


@dataclass(frozen=True)
class Wall:
    """A numerical wall: its shape and the class that generates it."""

    shape: Shape
    witness: MukaiVector


@dataclass(frozen=True)
class WallHole:
    """A point of a wall where a root has vanishing central charge."""

    beta: Fraction
    alpha2: Fraction
    delta: MukaiVector


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class SearchWindow:
    """A crossing ray {beta = beta0} together with the search bounds.

    require_subobject_square keeps only candidates w with w^2 >= -2
    (the enumerated class must support a stable object).  The quotient
    class v - w is not constrained by default; require_quotient_square
    adds that, and is also the only way to bound the search in the rare
    geometry where the side constraint leaves w.s unbounded.
    """

    beta0: Fraction
    side: Side
    rank_bound: int
    require_subobject_square: bool = True
    require_quotient_square: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "beta0", _frac(self.beta0))
        if self.rank_bound < 0:
            raise ValueError("rank_bound must be nonnegative")


@dataclass(frozen=True)
class DestabilizerHit:
    w: MukaiVector
    wall: Wall


@dataclass(frozen=True)
class SearchOutcome:
    """Search results plus the evidence that raising rank_bound is futile.

    nonempty_ranks lists the ranks that produced at least one candidate
    before deduplication; saturation_rank is the start of the first run
    of ten consecutive ranks with provably empty candidate windows (a
    heuristic witness, not a proof of completeness).
    """

    hits: tuple[DestabilizerHit, ...]
    rank_bound: int
    nonempty_ranks: tuple[int, ...]
    saturation_rank: int | None
    hits_after_saturation: bool = False


class UnboundedSearchError(ValueError):
    """The candidate family at some (rank, degree) cell is infinite.

    Happens only when the enumerated class can have smaller vertical
    slope than v on the left ray (then arbitrarily negative w.s values
    satisfy both the side constraint and w^2 >= -2).  Enabling
    require_quotient_square restores a finite window.
    """


def q_invariant(cfg: K3Config, v: MukaiVector) -> Fraction:
    if v.r == 0:
        raise ValueError("Q is undefined for rank-zero classes")
    return Fraction(mukai_square(cfg, v), cfg.h2 * v.r * v.r)


def _proportional(v: MukaiVector, w: MukaiVector) -> bool:
    return (
        v.r * w.c - v.c * w.r == 0
        and v.r * w.s - v.s * w.r == 0
        and v.c * w.s - v.s * w.c == 0
    )


def numerical_wall(cfg: K3Config, v: MukaiVector, w: MukaiVector) -> Wall | None:
    """The numerical wall of w relative to v, or None when it is empty.

    Requires v.r > 0 and w not proportional to v.  Vertical when
    v.r*w.c - v.c*w.r = 0, otherwise a semicircle; an empty circle
    (radius^2 <= 0) yields None.
    """
    if v.r <= 0:
        raise ValueError("the fixed class must have positive rank")
    if _proportional(v, w):
        raise ValueError(f"wall undefined: {w} is proportional to {v}")
    denom = v.r * w.c - v.c * w.r
    if denom == 0:
        return Wall(Vertical(Fraction(v.c, v.r)), w)
    center = Fraction(v.r * w.s - v.s * w.r, cfg.h2 * denom)
    radius2 = (center - Fraction(v.c, v.r)) ** 2 - q_invariant(cfg, v)
    if radius2 <= 0:
        return None
    return Wall(Semicircle(center, radius2), w)


def side_constraint_check(cfg: K3Config, v: MukaiVector, wall: Wall) -> bool:
    """Whether a semicircle's center lies strictly outside the forbidden band.

    The band is [v.c/v.r - sqrt(Q), v.c/v.r + sqrt(Q)]; the check
    compares (C - v.c/v.r)^2 against Q, so no real square roots appear.
    """
    if not isinstance(wall.shape, Semicircle):
        raise ValueError("side constraint applies to semicircular walls only")
    gap2 = (wall.shape.center - Fraction(v.c, v.r)) ** 2
    return gap2 > q_invariant(cfg, v)


def ray_intersection(wall: Wall, beta0) -> Fraction | None:
    """alpha^2 where a semicircular wall crosses the ray {beta = beta0}."""
    if not isinstance(wall.shape, Semicircle):
        raise ValueError("ray intersection applies to semicircular walls only")
    beta0 = _frac(beta0)
    alpha2 = wall.shape.radius2 - (beta0 - wall.shape.center) ** 2
    return alpha2 if alpha2 > 0 else None


def decompose_class(v: MukaiVector, w: MukaiVector) -> MukaiVector:
    """Quotient class of a destabilizing sequence: t = v - w."""
    return v - w


def _mu_z_below_wall_key(cfg: K3Config, beta0: Fraction, u: MukaiVector):
    """Comparison data for the charge slope just below a wall on the ray.

    On the segment of the ray under a wall crossing, the sign of a
    slope difference is constant and equals its sign at alpha^2 -> 0,
    where Re Z degenerates to -s + H^2*beta*c - (H^2/2)*beta^2*r.
    Returns (re0, im') for cross-multiplied comparison.
    """
    re0 = -u.s + cfg.h2 * beta0 * u.c - Fraction(cfg.h2, 2) * beta0**2 * u.r
    im = cfg.h2 * (u.c - beta0 * u.r)
    return re0, im


def _prefer_candidate(cfg: K3Config, beta0: Fraction, a: MukaiVector,
                      b: MukaiVector) -> MukaiVector:
    """Pick the representative of two classes generating the same wall.

    Keeps the one with the larger charge slope just below the wall on
    the crossing ray (the destabilizing side); falls back to the
    lexicographically smaller triple on a tie.
    """
    re_a, im_a = _mu_z_below_wall_key(cfg, beta0, a)
    re_b, im_b = _mu_z_below_wall_key(cfg, beta0, b)
    diff = re_b * im_a - re_a * im_b  # sign of mu(a) - mu(b), both im > 0
    if diff > 0:
        return a
    if diff < 0:
        return b
    return min(a, b, key=lambda u: u.as_tuple())


def search_destabilizers(cfg: K3Config, v: MukaiVector,
                         window: SearchWindow) -> SearchOutcome:
    """Enumerate classes generating semicircular walls that cross a ray.

    A candidate w must have rank 1..rank_bound, imaginary part strictly
    between 0 and that of the heart representative of v at beta0 (which
    pins w.c to an open interval per rank), its wall center on the
    window's side of the ray, and optionally w^2 >= -2.  Candidates
    generating the same wall are deduplicated, keeping the positive
    rank representative with the larger slope just below the wall.
    """
    if v.r <= 0:
        raise ValueError("the fixed class must have positive rank")
    vertical_beta = Fraction(v.c, v.r)
    beta0 = window.beta0
    if beta0 == vertical_beta:
        raise ValueError("the crossing ray must avoid the vertical wall")
    on_left = beta0 < vertical_beta
    if on_left != (window.side is Side.LEFT):
        raise ValueError(
            f"window side {window.side.value!r} does not match beta0={beta0} "
            f"relative to the vertical wall at {vertical_beta}"
        )
    # heart representative of v on this side of the vertical wall
    v_eff = v if on_left else -v
    im_span = v_eff.c - beta0 * v_eff.r  # Im'(v_eff) / H^2 > 0
    assert im_span > 0
    h2 = cfg.h2

    by_shape: dict[tuple[Fraction, Fraction], MukaiVector] = {}
    nonempty: list[int] = []
    for rank in range(1, window.rank_bound + 1):
        rank_has_hit = False
        lo = floor(beta0 * rank) + 1
        hi = ceil(beta0 * rank + im_span) - 1
        for wc in range(lo, hi + 1):
            denom = v.r * wc - v.c * rank
            if denom == 0:
                continue  # vertical-wall direction, cannot cross the ray
            # side constraint:  C < beta0 (left) or C > beta0 (right), with
            # C = (v.r*ws - v.s*rank) / (H^2 * denom); clearing denominators
            # bounds ws by side_cut = (beta0*H^2*denom + v.s*rank) / v.r.
            side_cut = (beta0 * h2 * denom + v.s * rank) / v.r
            want_less = (window.side is Side.LEFT) == (denom > 0)
            bounds_lo: list[int] = []
            bounds_hi: list[int] = []
            if want_less:
                bounds_hi.append(ceil(side_cut) - 1)
            else:
                bounds_lo.append(floor(side_cut) + 1)
            if window.require_subobject_square:
                # H^2*wc^2 - 2*rank*ws >= -2
                bounds_hi.append(floor(Fraction(h2 * wc * wc + 2, 2 * rank)))
            if window.require_quotient_square:
                # (v_eff - w)^2 >= -2; no constraint when the quotient
                # has rank zero (its square is then >= 0 automatically)
                t_r = v_eff.r - rank
                t_c = v_eff.c - wc
                lhs = h2 * t_c * t_c + 2
                if t_r > 0:
                    bounds_lo.append(v_eff.s - floor(Fraction(lhs, 2 * t_r)))
                elif t_r < 0:
                    bounds_hi.append(v_eff.s - ceil(Fraction(lhs, 2 * t_r)))
            if not bounds_lo:
                raise UnboundedSearchError(
                    f"infinitely many candidates at rank={rank}, c={wc} on the "
                    f"{window.side.value} ray beta0={beta0}; set "
                    "require_quotient_square=True for a finite window"
                )
            if not bounds_hi:
                raise UnboundedSearchError(
                    f"no upper bound on s at rank={rank}, c={wc}; enable "
                    "require_subobject_square or require_quotient_square"
                )
            for ws in range(max(bounds_lo), min(bounds_hi) + 1):
                w = MukaiVector(rank, wc, ws)
                if _proportional(v, w):
                    continue
                wall = numerical_wall(cfg, v, w)
                if wall is None or not isinstance(wall.shape, Semicircle):
                    continue
                if not side_constraint_check(cfg, v, wall):
                    continue
                rank_has_hit = True
                key = (wall.shape.center, wall.shape.radius2)
                if key in by_shape:
                    by_shape[key] = _prefer_candidate(cfg, beta0, by_shape[key], w)
                else:
                    by_shape[key] = w
        if rank_has_hit:
            nonempty.append(rank)

    saturation = None
    run = 0
    for rank in range(1, window.rank_bound + 1):
        if rank in nonempty:
            run = 0
        else:
            run += 1
            if run == 10 and saturation is None:
                saturation = rank - 9
    hits_after = saturation is not None and any(r >= saturation for r in nonempty)

    hits = tuple(
        DestabilizerHit(w, Wall(Semicircle(*key), w))
        for key, w in sorted(by_shape.items(), key=lambda kv: (kv[0], kv[1].as_tuple()))
    )
    return SearchOutcome(hits, window.rank_bound, tuple(nonempty), saturation, hits_after)


def walls_disjoint(a: Wall, b: Wall) -> bool:
    """Whether two numerical walls are disjoint in the open half-plane.

    Both shapes are centered on the beta-axis, so any tangency happens
    at alpha = 0 and does not count.  Circle versus circle reduces to
    comparing the center distance with the sum/difference of radii by
    squaring: with X = d^2 - R1^2 - R2^2, they meet at positive alpha
    iff X^2 < 4*R1^2*R2^2.
    """
    sa, sb = a.shape, b.shape
    if isinstance(sa, Vertical) and isinstance(sb, Vertical):
        return sa.beta != sb.beta
    if isinstance(sa, Vertical) or isinstance(sb, Vertical):
        line, circ = (sa, sb) if isinstance(sa, Vertical) else (sb, sa)
        return (line.beta - circ.center) ** 2 >= circ.radius2
    d2 = (sa.center - sb.center) ** 2
    x = d2 - sa.radius2 - sb.radius2
    return x * x >= 4 * sa.radius2 * sb.radius2
