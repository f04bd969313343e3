"""Mukai lattice arithmetic for a Picard-rank-1 K3 surface.

A class is an integer triple (r, c, s) = (rank, c1 as a multiple of the
polarization H, ch2 + rank).  The symmetric pairing on such triples is

    <(r, c, s), (r', c', s')> = H^2 * c * c' - r * s' - s * r'

and the Euler characteristic of a pair of objects is minus the pairing
of their classes.  Everything in this module is exact integer or
rational arithmetic; there is no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Triple = tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class K3Config:
    """Numerical data of the surface: the degree H^2 of the polarization.

    H^2 must be a positive even integer; the genus of a smooth curve in
    |H| is H^2/2 + 1.
    """

    h2: int

    def __post_init__(self) -> None:
        if not isinstance(self.h2, int) or self.h2 < 2 or self.h2 % 2:
            raise ValueError(f"H^2 must be an even integer >= 2, got {self.h2!r}")

    @property
    def genus(self) -> int:
        return self.h2 // 2 + 1


@dataclass(frozen=True)
class MukaiVector:
    """Integer triple (rank, c1 in multiples of H, ch2 + rank)."""

    r: int
    c: int
    s: int

    def __post_init__(self) -> None:
        for name in ("r", "c", "s"):
            if not isinstance(getattr(self, name), int):
                raise TypeError(f"{name} must be an integer")

    def __add__(self, other: "MukaiVector") -> "MukaiVector":
        return MukaiVector(self.r + other.r, self.c + other.c, self.s + other.s)

    def __sub__(self, other: "MukaiVector") -> "MukaiVector":
        return MukaiVector(self.r - other.r, self.c - other.c, self.s - other.s)

    def __neg__(self) -> "MukaiVector":
        return MukaiVector(-self.r, -self.c, -self.s)

    def __mul__(self, n: int) -> "MukaiVector":
        return MukaiVector(n * self.r, n * self.c, n * self.s)

    __rmul__ = __mul__

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.r, self.c, self.s)

    def __str__(self) -> str:
        return f"({self.r},{self.c},{self.s})"


@dataclass(frozen=True)
class ChernVector:
    """Classical label (rank, c1 in multiples of H, integral of c2)."""

    rank: int
    c1: int
    c2: int


def mukai_pairing(cfg: K3Config, u: MukaiVector, w: MukaiVector) -> int:
    return cfg.h2 * u.c * w.c - u.r * w.s - u.s * w.r


def mukai_square(cfg: K3Config, u: MukaiVector) -> int:
    return mukai_pairing(cfg, u, u)


def euler_chi(cfg: K3Config, u: MukaiVector, w: MukaiVector) -> int:
    """chi(E, F) = -<v(E), v(F)> for objects with classes u, w."""
    return -mukai_pairing(cfg, u, w)


def chern_to_mukai(cfg: K3Config, ch: ChernVector) -> MukaiVector:
    """(r, c1, c2) -> (r, c1, ch2 + r) with ch2 = c1^2 * H^2/2 - c2."""
    ch2 = ch.c1 * ch.c1 * cfg.h2 // 2 - ch.c2
    return MukaiVector(ch.rank, ch.c1, ch2 + ch.rank)


def mukai_to_chern_character(u: MukaiVector) -> tuple[int, int, int]:
    """Chern character (rank, H-multiple, ch2) of a class: strips the rank shift."""
    return (u.r, u.c, u.s - u.r)


def chern_product(cfg: K3Config, a: Triple, b: Triple) -> Triple:
    """Graded product of cohomology triples (H^0, H^2, H^4 parts).

    The middle entries are multiples of H, so their product contributes
    H . H = H^2 to the degree-4 part.  Inputs may be int or Fraction;
    floats are rejected to keep everything exact.
    """
    for x in (*a, *b):
        if isinstance(x, float):
            raise TypeError("floating point input rejected; pass int or Fraction")
    a0, a1, a2 = a
    b0, b1, b2 = b
    return (a0 * b0, a0 * b1 + a1 * b0, a0 * b2 + a2 * b0 + a1 * b1 * cfg.h2)


def hrr_oracle(cfg: K3Config, ch_e: Triple, ch_f: Triple) -> Fraction:
    """chi(E, F) by Riemann-Roch: degree-4 part of ch(E)^dual . ch(F) . td.

    The dual negates the degree-2 part, and td = (1, 0, 2) for a K3.
    This deliberately avoids the Mukai pairing so the two computations
    can cross-validate each other.
    """
    dual_e = (ch_e[0], -ch_e[1], ch_e[2])
    todd = (1, 0, 2)
    prod = chern_product(cfg, chern_product(cfg, dual_e, ch_f), todd)
    return Fraction(prod[2])


def is_spherical(cfg: K3Config, u: MukaiVector) -> bool:
    return mukai_square(cfg, u) == -2


def is_isotropic(cfg: K3Config, u: MukaiVector) -> bool:
    return mukai_square(cfg, u) == 0


def is_primitive(u: MukaiVector) -> bool:
    return gcd(gcd(u.r, u.c), u.s) == 1
