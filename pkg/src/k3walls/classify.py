"""Rank-2 wall lattices and the lattice-level wall-type classification.

The classes whose charge stays aligned with that of v along a wall form
a rank-2 hyperbolic sublattice: the saturation of the span of v and the
wall's witness.  Searching that lattice for isotropic and spherical
classes with prescribed pairing against v decides the type of the
birational modification across the wall:

    isotropic u, <u,v> = 1          -> divisorial (Hilbert-Chow)
    isotropic u, <u,v> = 2          -> divisorial (Li-Gieseker-Uhlenbeck)
    spherical s, <s,v> = 0          -> divisorial (Brill-Noether)
    spherical s, 0 < <s,v> <= v^2/2 -> flopping
    none of the above               -> fake or unknown

Each search is a one-parameter integer family (the linear pairing
condition) restricted to a quadric, i.e. a single-variable quadratic
solved exactly over the integers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from ._intlinalg import ext_gcd, hnf_rows, kernel_basis, primitive, solve_pair
from .lattice import K3Config, MukaiVector, mukai_pairing, mukai_square


@dataclass(frozen=True)
class WallLattice:
    """Saturated span of v and a wall witness, with canonical HNF basis."""

    basis: tuple[MukaiVector, MukaiVector]
    gram: tuple[tuple[int, int], tuple[int, int]]
    v_coords: tuple[int, int]

    def member(self, x: int, y: int) -> MukaiVector:
        b1, b2 = self.basis
        return x * b1 + y * b2

    def coordinates(self, u: MukaiVector) -> tuple[int, int] | None:
        """Integer coordinates of u in the basis, or None if u is outside."""
        sol = solve_pair(self.basis[0].as_tuple(), self.basis[1].as_tuple(),
                         u.as_tuple())
        if sol is None:
            return None
        x, y = sol
        if x.denominator != 1 or y.denominator != 1:
            return None
        return (int(x), int(y))

    def contains(self, u: MukaiVector) -> bool:
        return self.coordinates(u) is not None

    def det(self) -> int:
        (a, b), (_, d) = self.gram
        return a * d - b * b

    def square(self, x: int, y: int) -> int:
        (a, b), (_, d) = self.gram
        return a * x * x + 2 * b * x * y + d * y * y


@dataclass(frozen=True)
class InfiniteFamily:
    """Marker for a degenerate search: every base + k*direction solves it."""

    base: MukaiVector
    direction: MukaiVector


def wall_lattice(cfg: K3Config, v: MukaiVector, w: MukaiVector) -> WallLattice:
    """The saturated rank-2 lattice spanned by v and w.

    Saturation goes through the integer normal vector of the spanned
    plane: the lattice is the full kernel of that primitive functional,
    with basis canonicalized by Hermite normal form.
    """
    normal = (
        v.c * w.s - v.s * w.c,
        v.s * w.r - v.r * w.s,
        v.r * w.c - v.c * w.r,
    )
    if not any(normal):
        raise ValueError(f"wall lattice undefined: {w} is proportional to {v}")
    rows = hnf_rows(kernel_basis(primitive(normal)))
    b1, b2 = (MukaiVector(*row) for row in rows)
    gram = (
        (mukai_square(cfg, b1), mukai_pairing(cfg, b1, b2)),
        (mukai_pairing(cfg, b1, b2), mukai_square(cfg, b2)),
    )
    lattice = WallLattice((b1, b2), gram, (0, 0))
    coords = lattice.coordinates(v)
    assert coords is not None, "v must lie in the saturation of its own span"
    return WallLattice((b1, b2), gram, coords)


def _solve_on_affine_line(lattice: WallLattice, p: int, q: int, c: int,
                          n: int) -> list[tuple[int, int]] | InfiniteFamily:
    """Solve p*x + q*y = c and square(x, y) = n over the integers.

    The linear equation is parametrized by extended gcd; substituting
    into the quadratic leaves one variable.  Returns the finite
    solution list, or an InfiniteFamily when the restricted quadratic
    is identically satisfied (isotropic direction with matching base).
    """
    if p == 0 and q == 0:
        raise ValueError("degenerate linear condition (both coefficients zero)")
    g, x0, y0 = ext_gcd(p, q)
    if c % g:
        return []
    x0, y0 = x0 * (c // g), y0 * (c // g)
    dx, dy = q // g, -p // g
    (ga, gb), (_, gd) = lattice.gram

    def bilinear(ax, ay, bx, by):
        return ga * ax * bx + gb * (ax * by + ay * bx) + gd * ay * by

    aa = bilinear(dx, dy, dx, dy)
    bb = 2 * bilinear(x0, y0, dx, dy)
    cc = bilinear(x0, y0, x0, y0) - n
    if aa == 0:
        if bb == 0:
            if cc == 0:
                return InfiniteFamily(lattice.member(x0, y0),
                                      lattice.member(dx, dy))
            return []
        if (-cc) % bb:
            return []
        k = -cc // bb
        return [(x0 + k * dx, y0 + k * dy)]
    disc = bb * bb - 4 * aa * cc
    if disc < 0:
        return []
    root = isqrt(disc)
    if root * root != disc:
        return []
    out = []
    for num in (-bb - root, -bb + root):
        if num % (2 * aa) == 0:
            k = num // (2 * aa)
            out.append((x0 + k * dx, y0 + k * dy))
    return sorted(set(out))


def solve_norm_pairing(cfg: K3Config, lattice: WallLattice, v: MukaiVector,
                       n: int, c: int) -> list[MukaiVector] | InfiniteFamily:
    """All u in the lattice with u^2 = n and <u, v> = c.

    The list is complete and finite whenever the quadratic restricted
    to the pairing-c line is nondegenerate; the degenerate case returns
    an InfiniteFamily marker instead of looping forever.
    """
    b1, b2 = lattice.basis
    p = mukai_pairing(cfg, b1, v)
    q = mukai_pairing(cfg, b2, v)
    sols = _solve_on_affine_line(lattice, p, q, c, n)
    if isinstance(sols, InfiniteFamily):
        return sols
    out = [lattice.member(x, y) for x, y in sols]
    return sorted(out, key=lambda u: u.as_tuple())


def roots_with_rank(cfg: K3Config, lattice: WallLattice,
                    rank_limit: int = 64) -> list[MukaiVector]:
    """Spherical classes in the lattice with rank 1..rank_limit.

    Spherical classes never have rank zero (a rank-zero square is
    H^2 c^2 >= 0), so together with their negatives this lists every
    root of bounded rank; the list can grow without bound as the limit
    does (Pell-type lattices), which is why the bound is explicit.
    """
    b1, b2 = lattice.basis
    p, q = b1.r, b2.r
    if p == 0 and q == 0:
        return []
    roots = []
    for rank in range(1, rank_limit + 1):
        sols = _solve_on_affine_line(lattice, p, q, rank, -2)
        assert not isinstance(sols, InfiniteFamily)  # definite on rank lines
        roots.extend(lattice.member(x, y) for x, y in sols)
    return sorted(roots, key=lambda u: u.as_tuple())


class WallKind(enum.Enum):
    HILBERT_CHOW = "divisorial (Hilbert-Chow)"
    LI_GIESEKER_UHLENBECK = "divisorial (Li-Gieseker-Uhlenbeck)"
    BRILL_NOETHER = "divisorial (Brill-Noether)"
    FLOPPING = "flopping"
    FAKE_OR_UNKNOWN = "fake or unknown"

    @property
    def divisorial(self) -> bool:
        return self in (WallKind.HILBERT_CHOW, WallKind.LI_GIESEKER_UHLENBECK,
                        WallKind.BRILL_NOETHER)


@dataclass(frozen=True)
class WallTypeRecord:
    """Lattice-level classification of a wall.

    bouncing is set exactly for divisorial kinds (their two adjacent
    stability chambers map to a single movable chamber).  The
    totally-semistable flag means only that a spherical class with
    negative pairing against v exists among roots of rank up to
    root_rank_limit; whether that class is effective is not decidable
    at lattice level.
    """

    kind: WallKind
    bouncing: bool
    totally_semistable: bool
    witnesses: tuple[tuple[MukaiVector, str], ...]
    root_rank_limit: int


def classify_wall(cfg: K3Config, v: MukaiVector, w: MukaiVector,
                  root_rank_limit: int = 64) -> WallTypeRecord:
    """Classify the wall generated by w using the lattice criteria above."""
    lattice = wall_lattice(cfg, v, w)
    v2 = mukai_square(cfg, v)
    witnesses: list[tuple[MukaiVector, str]] = []

    def solutions(n: int, c: int) -> list[MukaiVector]:
        sols = solve_norm_pairing(cfg, lattice, v, n, c)
        if isinstance(sols, InfiniteFamily):
            base = sols.base
            if base.as_tuple() == (0, 0, 0):
                base = base + sols.direction
            return [base]
        return [u for u in sols if u.as_tuple() != (0, 0, 0)]

    kind = WallKind.FAKE_OR_UNKNOWN
    hc = solutions(0, 1)
    if hc:
        kind = WallKind.HILBERT_CHOW
        witnesses += [(u, "isotropic, pairing 1") for u in hc]
    else:
        lgu = solutions(0, 2)
        if lgu:
            kind = WallKind.LI_GIESEKER_UHLENBECK
            witnesses += [(u, "isotropic, pairing 2") for u in lgu]
        else:
            bn = solutions(-2, 0)
            if bn:
                kind = WallKind.BRILL_NOETHER
                witnesses += [(u, "spherical, orthogonal to v") for u in bn]
            else:
                for c in range(1, v2 // 2 + 1):
                    flop = solutions(-2, c)
                    if flop:
                        kind = WallKind.FLOPPING
                        witnesses += [(u, f"spherical, pairing {c}") for u in flop]
                        break

    totally_semistable = False
    for root in roots_with_rank(cfg, lattice, root_rank_limit):
        pairing = mukai_pairing(cfg, root, v)
        if pairing == 0:
            continue
        negative = root if pairing < 0 else -root
        witnesses.append((negative, "spherical, negative pairing"))
        totally_semistable = True
        break

    return WallTypeRecord(kind, kind.divisorial, totally_semistable,
                          tuple(witnesses), root_rank_limit)
