"""The Neron-Severi lattice of the moduli space and its cone structure.

For a primitive v with v^2 > 0, NS of the moduli space is identified
with the sublattice v-perp of the rank-3 lattice, carrying the
restriction of the pairing as Beauville-Bogomolov form.  This module
builds an orthogonal basis (e1, e2) with e1^2 > 0 > e2^2, sends walls
and stability parameters to rays in v-perp, and assembles the nested
positive / movable / nef cones with their chamber decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable

from ._intlinalg import cross3, kernel_basis, primitive
from .classify import WallTypeRecord
from .halfplane import StabilityPoint, is_valid_point, reduced_charge
from .lattice import K3Config, MukaiVector, mukai_pairing, mukai_square


class InconsistentConeError(ValueError):
    """Raised when supplied wall data cannot sit inside the positive cone."""


@dataclass(frozen=True)
class NSBasis:
    """Orthogonal basis of v-perp with e1^2 > 0 > e2^2."""

    e1: MukaiVector
    e2: MukaiVector
    gram: tuple[int, int]


@dataclass(frozen=True)
class NSRay:
    """A primitive integer direction in v-perp.

    ambient is the primitive representative; coords are its exact
    coefficients in the (e1, e2) basis.  Rays with meaningful
    orientation (images of stability parameters) keep their sign; rays
    standing for lines are normalized so the first nonzero coordinate
    is positive.
    """

    ambient: MukaiVector
    coords: tuple[Fraction, Fraction]


@dataclass(frozen=True)
class SqrtRay:
    """Boundary ray of the positive cone with irrational slope.

    Stands for the direction (sqrt(p), sign * sqrt(q)) in (e1, e2)
    coordinates, where p = -e2^2 and q = e1^2 up to a common factor.
    Only squared comparisons against it are exact.
    """

    p: int
    q: int
    sign: int

    def slope_squared(self) -> Fraction:
        return Fraction(self.q, self.p)

    def is_rational(self) -> bool:
        root = isqrt(self.p * self.q)
        return root * root == self.p * self.q


PosRay = NSRay | SqrtRay


@dataclass(frozen=True)
class Chamber:
    label: str
    rays: tuple[NSRay | SqrtRay, NSRay | SqrtRay]
    model: str


@dataclass(frozen=True)
class ConeChart:
    """Generators of the nested cones plus the movable-chamber structure."""

    pos_rays: tuple[PosRay, PosRay]
    mov_rays: tuple[NSRay, PosRay]
    nef_rays: tuple[NSRay, NSRay | SqrtRay]
    chambers: tuple[Chamber, ...]


def _coords_in_basis(cfg: K3Config, basis: NSBasis,
                     u: MukaiVector) -> tuple[Fraction, Fraction]:
    x1 = Fraction(mukai_pairing(cfg, u, basis.e1), basis.gram[0])
    x2 = Fraction(mukai_pairing(cfg, u, basis.e2), basis.gram[1])
    return (x1, x2)


def _ray(cfg: K3Config, basis: NSBasis, vec, *, line: bool = False) -> NSRay:
    amb = primitive(tuple(vec))
    coords = _coords_in_basis(cfg, basis, MukaiVector(*amb))
    if line:
        lead = coords[0] if coords[0] != 0 else coords[1]
        if lead < 0:
            amb = tuple(-a for a in amb)
            coords = (-coords[0], -coords[1])
    return NSRay(MukaiVector(*amb), coords)


def _rank_zero_direction(cfg: K3Config, v: MukaiVector) -> MukaiVector | None:
    """Primitive rank-zero class orthogonal to v, if of positive square."""
    if v.r != 0:
        # <(0, c, s), v> = H^2*c*v.c - s*v.r = 0
        c, s = primitive((v.r, cfg.h2 * v.c))
        cand = MukaiVector(0, c, s)
    elif v.c != 0:
        cand = MukaiVector(0, 0, 1)
    else:
        return None
    return cand if mukai_square(cfg, cand) > 0 else None


def orthogonal_basis(cfg: K3Config, v: MukaiVector) -> NSBasis:
    """Canonical orthogonal basis (e1, e2) of v-perp, e1^2 > 0 > e2^2.

    e1 prefers the rank-zero direction of v-perp when that has positive
    square (it spans the image of the vertical wall), with the sign
    convention e1.s < 0, falling back to first-nonzero-positive when
    s = 0.  e2 is the orthogonal complement of the remaining kernel
    basis vector, primitive, first nonzero coordinate positive.  For
    v = (2,1,3) on H^2 = 16 this yields exactly e1 = (0,-1,-8),
    e2 = (2,1,5).
    """
    if mukai_square(cfg, v) <= 0:
        raise ValueError("orthogonal basis requires v^2 > 0")
    dual = (-v.s, cfg.h2 * v.c, -v.r)  # <u, v> as a functional on (r, c, s)
    f1, f2 = (MukaiVector(*row) for row in kernel_basis(primitive(dual)))

    e1 = _rank_zero_direction(cfg, v)
    if e1 is None:
        e1 = _spiral_positive_vector(cfg, f1, f2)
    if e1.s > 0 or (e1.s == 0 and next(a for a in e1.as_tuple() if a) < 0):
        e1 = -e1

    partner = f1 if cross3(f1.as_tuple(), e1.as_tuple()) != (0, 0, 0) else f2
    e1sq = mukai_square(cfg, e1)
    raw = e1sq * partner - mukai_pairing(cfg, partner, e1) * e1
    e2 = MukaiVector(*primitive(raw.as_tuple()))
    if next(a for a in e2.as_tuple() if a) < 0:
        e2 = -e2
    e2sq = mukai_square(cfg, e2)
    assert e1sq > 0 > e2sq and mukai_pairing(cfg, e1, e2) == 0
    return NSBasis(e1, e2, (e1sq, e2sq))


def _spiral_positive_vector(cfg: K3Config, f1: MukaiVector,
                            f2: MukaiVector) -> MukaiVector:
    """First primitive positive-square combination x*f1 + y*f2, by |x|+|y|."""
    for total in range(1, 64):
        for x in range(-total, total + 1):
            for y in sorted({total - abs(x), abs(x) - total}):
                cand = x * f1 + y * f2
                if mukai_square(cfg, cand) > 0:
                    return MukaiVector(*primitive(cand.as_tuple()))
    raise ValueError("no positive-square vector of small height in v-perp")


def wall_image(cfg: K3Config, v: MukaiVector, w: MukaiVector,
               basis: NSBasis | None = None) -> NSRay:
    """The line v-perp intersect w-perp, as a sign-normalized ray.

    This is where the wall generated by w lands in NS of the moduli
    space under the map from stability parameters to divisors.
    """
    dual_v = (-v.s, cfg.h2 * v.c, -v.r)
    dual_w = (-w.s, cfg.h2 * w.c, -w.r)
    normal = cross3(dual_v, dual_w)
    if not any(normal):
        raise ValueError(f"wall image undefined: {w} is proportional to {v}")
    if basis is None:
        basis = orthogonal_basis(cfg, v)
    return _ray(cfg, basis, normal, line=True)


def compute_l(cfg: K3Config, pt: StabilityPoint, v: MukaiVector,
              basis: NSBasis | None = None) -> NSRay:
    """Divisor ray attached to a stability parameter.

    With Omega the exponential class (1, z, H^2 z^2 / 2) at
    z = beta + i*alpha and Z(v) = <Omega, v>, the ray is the imaginary
    part of -Omega / Z(v); clearing the positive factors alpha and
    |Z(v)|^2 leaves the rational vector

        ( I', beta*I' - Re, (H^2/2)*((beta^2 - alpha^2)*I' - 2*beta*Re) )

    with Re = Re Z(v), I' = Im Z(v)/alpha, which is orthogonal to v by
    construction.  Only valid stability parameters are accepted.
    """
    if not is_valid_point(cfg, pt):
        raise ValueError(f"not a geometric stability condition: {pt}")
    z = reduced_charge(cfg, pt, v)
    re, imp = z.re, z.im_over_alpha
    vec = (
        imp,
        pt.beta * imp - re,
        Fraction(cfg.h2, 2) * ((pt.beta**2 - pt.alpha2) * imp - 2 * pt.beta * re),
    )
    scale = 1
    for comp in vec:
        scale = scale * comp.denominator // gcd(scale, comp.denominator)
    ints = tuple(int(comp * scale) for comp in vec)
    if basis is None:
        basis = orthogonal_basis(cfg, v)
    ray = _ray(cfg, basis, ints)
    assert mukai_pairing(cfg, ray.ambient, v) == 0
    return ray


def reflect(cfg: K3Config, d: MukaiVector, u: MukaiVector):
    """Reflection of u in the hyperplane orthogonal to d.

    Returns a MukaiVector when the result is integral (always when d^2
    divides 2<u,d>), otherwise the exact rational triple.
    """
    d2 = mukai_square(cfg, d)
    if d2 == 0:
        raise ValueError("cannot reflect in an isotropic class")
    coeff = Fraction(2 * mukai_pairing(cfg, u, d), d2)
    vec = tuple(Fraction(a) - coeff * b for a, b in zip(u.as_tuple(), d.as_tuple()))
    if all(comp.denominator == 1 for comp in vec):
        return MukaiVector(*(int(comp) for comp in vec))
    return vec


def positive_cone_boundary(cfg: K3Config, basis: NSBasis) -> tuple[PosRay, PosRay]:
    """The two boundary rays of the positive cone, on the e1 > 0 side.

    A class a*e1 + b*e2 is isotropic iff e1^2 * a^2 = -e2^2 * b^2, so
    the boundary slopes are b/a = +-sqrt(e1^2 / -e2^2): rational
    exactly when e1^2 * (-e2^2) is a perfect square, a symbolic SqrtRay
    otherwise.  The first returned ray is the one with b > 0.
    """
    e1sq, e2sq = basis.gram
    prod = e1sq * (-e2sq)
    root = isqrt(prod)
    if root * root != prod:
        g = gcd(-e2sq, e1sq)
        return (SqrtRay(-e2sq // g, e1sq // g, 1), SqrtRay(-e2sq // g, e1sq // g, -1))
    rays = []
    for sign in (1, -1):
        a, b = primitive((-e2sq, sign * root))
        if a < 0:
            a, b = -a, -b
        amb = a * basis.e1 + b * basis.e2
        rays.append(_ray(cfg, basis, amb.as_tuple()))
    return (rays[0], rays[1])


def _inside_closed_positive_cone(basis: NSBasis, coords) -> bool:
    x1, x2 = coords
    qval = basis.gram[0] * x1 * x1 + basis.gram[1] * x2 * x2
    return qval >= 0 and x1 >= 0


def _ample_orientation(cfg: K3Config, v: MukaiVector, basis: NSBasis) -> int:
    """Sign of the e2-coordinate of the image of a generic valid point.

    Every stability parameter maps into the movable cone, so this sign
    tells which side of the e1-axis the movable cone occupies.
    """
    beta = Fraction(v.c, v.r) - 1
    alpha2 = max(Fraction(1), Fraction(2, cfg.h2))
    ray = compute_l(cfg, StabilityPoint(beta, alpha2), v, basis)
    x2 = ray.coords[1]
    if x2 == 0:
        raise InconsistentConeError("orientation point landed on the boundary")
    return 1 if x2 > 0 else -1


def assemble_cones(cfg: K3Config, v: MukaiVector,
                   classified: Iterable[tuple[MukaiVector, WallTypeRecord]],
                   labels: dict[str, str] | None = None) -> ConeChart:
    """Assemble the positive, movable and nef cones from classified walls.

    The movable cone is the part of the positive cone cut out by the
    divisorial wall image (the e1-axis) on the side containing the
    images of stability parameters; flopping wall images subdivide it
    into chambers, after images falling on the far side are folded in
    by the reflection that fixes the divisorial image line.  The
    chamber adjacent to the divisorial image carries the ample cone of
    the starting moduli space; model names come from the label table,
    keyed by "r,c,s" of the wall witness.
    """
    labels = labels or {}
    basis = orthogonal_basis(cfg, v)
    pos = positive_cone_boundary(cfg, basis)
    orient = _ample_orientation(cfg, v, basis)

    divisorial: list[tuple[MukaiVector, NSRay]] = []
    flopping: list[tuple[MukaiVector, NSRay]] = []
    for witness, record in classified:
        image = wall_image(cfg, v, witness, basis)
        if not _inside_closed_positive_cone(basis, image.coords):
            raise InconsistentConeError(
                f"image {image.ambient} of wall witness {witness} lies outside "
                "the closed positive cone"
            )
        if record.kind.divisorial:
            divisorial.append((witness, image))
        elif record.kind.name == "FLOPPING":
            flopping.append((witness, image))

    if not divisorial:
        raise InconsistentConeError("no divisorial wall: movable boundary unknown")
    boundary_images = {img.ambient for _, img in divisorial}
    if len(boundary_images) > 1:
        raise InconsistentConeError("divisorial walls map to distinct boundary lines")
    mov_boundary = divisorial[0][1]
    if mov_boundary.coords[1] != 0:
        raise InconsistentConeError(
            "divisorial image is not the e1-axis; unsupported configuration"
        )

    # reflection identifying the two sides of the divisorial wall: along
    # the orthogonal complement of its image line inside v-perp
    mirror = wall_image(cfg, v, mov_boundary.ambient, basis).ambient

    interior: dict[Fraction, tuple[NSRay, MukaiVector]] = {}
    for witness, image in flopping:
        if orient * image.coords[1] < 0:
            folded = reflect(cfg, mirror, image.ambient)
            assert isinstance(folded, MukaiVector)
            image = _ray(cfg, basis, folded.as_tuple(), line=True)
        x1, x2 = image.coords
        if x1 <= 0:
            raise InconsistentConeError(
                f"flopping image {image.ambient} does not cut the movable cone"
            )
        interior.setdefault(orient * x2 / x1, (image, witness))

    if isinstance(pos[0], SqrtRay):
        upper_pos: PosRay = pos[0] if pos[0].sign == orient else pos[1]
    else:
        upper_pos = pos[0] if orient > 0 else pos[1]

    def model_label(witness: MukaiVector) -> str:
        key = ",".join(str(a) for a in witness.as_tuple())
        return labels.get(key, "model across the wall (numerical candidate)")

    ordered = sorted(interior.items())
    gieseker = labels.get("gieseker", "starting moduli space")
    rays_seq: list[NSRay | SqrtRay] = [mov_boundary]
    rays_seq += [image for _, (image, _) in ordered]
    rays_seq.append(upper_pos)
    models = [gieseker] + [model_label(witness) for _, (_, witness) in ordered]
    chambers = tuple(
        Chamber(f"({chr(ord('a') + i)})", (rays_seq[i], rays_seq[i + 1]), models[i])
        for i in range(len(models))
    )

    mov_rays = (mov_boundary, upper_pos)
    nef_rays = (mov_boundary, rays_seq[1])
    return ConeChart(pos, mov_rays, nef_rays, chambers)
