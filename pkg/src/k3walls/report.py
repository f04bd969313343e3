"""Configuration ingestion, pipeline orchestration and report rendering.

The run configuration is a plain-text key=value document; the report is
a deterministic structured text document (fixed key order, rationals
printed as p/q) so that identical inputs produce byte-identical output.
Every number in a report is produced by a module operation; this layer
only formats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import gcd, isqrt
from pathlib import Path

from .classify import WallTypeRecord, classify_wall, roots_with_rank, wall_lattice
from .cones import (ConeChart, InconsistentConeError, NSBasis, NSRay, SqrtRay,
                    assemble_cones, compute_l, orthogonal_basis, reflect,
                    wall_image)
from .halfplane import StabilityPoint, realpart_vanishing_alpha2
from .lattice import (K3Config, MukaiVector, is_primitive, mukai_pairing,
                      mukai_square)
from .walls import (SearchOutcome, SearchWindow, Semicircle, Side, Vertical, Wall,
                    WallHole, numerical_wall, q_invariant, search_destabilizers,
                    walls_disjoint)

CONFIG_KEYS = ("h2", "v", "rays", "rank_bound", "annotations", "out", "scale")


class ConfigError(ValueError):
    def __init__(self, line: int | None, message: str) -> None:
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters for the pipeline."""

    h2: int
    v: tuple[int, int, int]
    rays: tuple[Fraction, ...] | None = None
    rank_bound: int = 50
    annotations: str | None = None
    out: str | None = None
    scale: int = 1024


def _parse_rational(text: str, line: int) -> Fraction:
    text = text.strip()
    body = text[1:] if text.startswith("-") else text
    if not body or not all(part.isdigit() for part in body.split("/", 1)):
        raise ConfigError(line, f"malformed rational {text!r} (expected p or p/q)")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ConfigError(line, f"zero denominator in {text!r}") from None


def _parse_int(text: str, line: int, key: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ConfigError(line, f"{key} must be an integer, got {text.strip()!r}") from None


def parse_config(text: str) -> RunConfig:
    """Parse a key=value document into a validated RunConfig."""
    values: dict[str, object] = {}
    lines: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(lineno, f"expected key=value, got {stripped!r}")
        key, _, value = stripped.partition("=")
        key, value = key.strip(), value.strip()
        if key not in CONFIG_KEYS:
            raise ConfigError(lineno, f"unknown key {key!r}")
        if key in values:
            raise ConfigError(lineno, f"duplicate key {key!r}")
        lines[key] = lineno
        if key == "h2":
            values["h2"] = _parse_int(value, lineno, "h2")
        elif key == "v":
            parts = value.split(",")
            if len(parts) != 3:
                raise ConfigError(lineno, f"v must be three integers a,b,c, got {value!r}")
            values["v"] = tuple(_parse_int(p, lineno, "v") for p in parts)
        elif key == "rays":
            values["rays"] = tuple(
                _parse_rational(p, lineno) for p in value.split(",") if p.strip()
            )
        elif key in ("rank_bound", "scale"):
            values[key] = _parse_int(value, lineno, key)
        else:
            values[key] = value

    if "h2" not in values:
        raise ConfigError(None, "missing required key h2")
    if "v" not in values:
        raise ConfigError(None, "missing required key v")

    h2 = values["h2"]
    if h2 < 2 or h2 % 2:
        raise ConfigError(lines.get("h2"), f"h2 must be even and >= 2, got {h2}")
    v = MukaiVector(*values["v"])
    if not is_primitive(v):
        raise ConfigError(lines.get("v"), f"v = {v} is not primitive")
    if v.r < 0 or (v.r == 0 and v.c < 0) or (v.r == 0 and v.c == 0 and v.s < 0):
        raise ConfigError(
            lines.get("v"),
            f"v = {v}: use the sign with positive leading entry",
        )
    cfg = K3Config(h2)
    if mukai_square(cfg, v) < -2:
        raise ConfigError(
            lines.get("v"),
            f"v^2 = {mukai_square(cfg, v)} < -2: the moduli space is empty",
        )
    rank_bound = values.get("rank_bound", 50)
    if rank_bound < 0:
        raise ConfigError(lines.get("rank_bound"), "rank_bound must be nonnegative")
    scale = values.get("scale", 1024)
    if scale <= 0:
        raise ConfigError(lines.get("scale"), "scale must be a positive integer")
    return RunConfig(
        h2=h2,
        v=v.as_tuple(),
        rays=values.get("rays"),
        rank_bound=rank_bound,
        annotations=values.get("annotations"),
        out=values.get("out"),
        scale=scale,
    )


def serialize_config(config: RunConfig) -> str:
    out = [f"h2 = {config.h2}", "v = " + ",".join(str(a) for a in config.v)]
    if config.rays is not None:
        out.append("rays = " + ",".join(str(r) for r in config.rays))
    out.append(f"rank_bound = {config.rank_bound}")
    if config.annotations is not None:
        out.append(f"annotations = {config.annotations}")
    if config.out is not None:
        out.append(f"out = {config.out}")
    out.append(f"scale = {config.scale}")
    return "\n".join(out) + "\n"


def load_annotations(source: str | None, base_dir: Path | None = None) -> dict:
    """Load a curated annotation table.

    "builtin:<name>" loads a table shipped with the package; other
    values are file paths, resolved against base_dir when relative.
    None yields an empty table (reports then mark every wall as a
    numerical candidate).
    """
    if source is None:
        return {}
    if source.startswith("builtin:"):
        name = source.split(":", 1)[1]
        data = resources.files("k3walls").joinpath(f"data/{name}_annotations.json")
        return json.loads(data.read_text(encoding="utf-8"))
    path = Path(source)
    if base_dir is not None and not path.is_absolute():
        path = base_dir / path
    return json.loads(path.read_text(encoding="utf-8"))


@dataclass(frozen=True)
class ClassifiedWall:
    """A wall with everything the pipeline knows about it."""

    wall: Wall
    holes: tuple[WallHole, ...]
    classification: WallTypeRecord
    image: NSRay
    annotation: dict | None


@dataclass(frozen=True)
class RunReport:
    config: RunConfig
    cfg: K3Config
    v: MukaiVector
    notes: tuple[str, ...]
    rays: tuple[Fraction, ...]
    searches: tuple[tuple[Fraction, SearchOutcome], ...]
    walls: tuple[ClassifiedWall, ...]
    basis: NSBasis | None
    chart: ConeChart | None
    ample: NSRay | None
    anchor: StabilityPoint | None
    cross_checks: tuple[str, ...]
    annotation_notes: tuple[str, ...]


def _rational_sqrt(value: Fraction) -> Fraction | None:
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def default_rays(cfg: K3Config, v: MukaiVector) -> tuple[Fraction, ...] | None:
    """The two crossing rays v.c/v.r +- sqrt(Q), when rational."""
    if v.r == 0:
        return None
    root = _rational_sqrt(q_invariant(cfg, v))
    if root is None or root == 0:
        return None
    slope = Fraction(v.c, v.r)
    return (slope - root, slope + root)


def vertical_witness(cfg: K3Config, v: MukaiVector) -> MukaiVector:
    """Minimal positive-rank primitive isotropic class on the vertical wall.

    Classes on the vertical wall have (rank, degree) proportional to
    (v.r, v.c); the isotropic condition pins s once the divisibility
    2*r0 | H^2*c0^2*t holds, and the minimal such t gives the witness.
    """
    if v.r <= 0:
        raise ValueError("vertical wall requires positive rank")
    g = gcd(v.r, v.c)
    r0, c0 = v.r // g, v.c // g
    t = 2 * r0 // gcd(2 * r0, cfg.h2 * c0 * c0)
    s = cfg.h2 * c0 * c0 * t // (2 * r0)
    return MukaiVector(r0 * t, c0 * t, s)


def wall_holes(cfg: K3Config, v: MukaiVector, witness: MukaiVector,
               rank_limit: int = 64) -> tuple[WallHole, ...]:
    """Holes of a wall: zero loci of roots in its lattice, rank-bounded.

    A root delta in the wall lattice has vanishing charge at
    (delta.c/delta.r, alpha^2 with Re Z(delta) = 0), and that point
    automatically lies on the wall.
    """
    lattice = wall_lattice(cfg, v, witness)
    holes = []
    for delta in roots_with_rank(cfg, lattice, rank_limit):
        beta = Fraction(delta.c, delta.r)
        alpha2 = realpart_vanishing_alpha2(cfg, delta, beta)
        if alpha2 is not None:
            holes.append(WallHole(beta, alpha2, delta))
    return tuple(sorted(holes, key=lambda h: (h.beta, h.delta.as_tuple())))


def _wall_position(wall: Wall) -> Fraction:
    return wall.shape.beta if isinstance(wall.shape, Vertical) else wall.shape.center


def run_pipeline(config: RunConfig, base_dir: Path | None = None) -> RunReport:
    """Walls on both crossing rays, holes, classifications and cones."""
    cfg = K3Config(config.h2)
    v = MukaiVector(*config.v)
    annotations = load_annotations(config.annotations, base_dir)
    wall_notes = annotations.get("walls", {})
    notes: list[str] = []
    cross: list[str] = []
    v2 = mukai_square(cfg, v)

    searches: list[tuple[Fraction, SearchOutcome]] = []
    classified: list[ClassifiedWall] = []
    rays: tuple[Fraction, ...] = ()
    basis = chart = ample = anchor = None

    if v2 == -2:
        notes.append(
            "v^2 = -2: rigid class, the moduli space is a single point "
            "(dimension v^2 + 2 = 0); wall and cone analysis skipped"
        )
    elif v2 == 0:
        notes.append(
            "v^2 = 0: the crossing rays degenerate onto the vertical wall; "
            "wall and cone analysis skipped (moduli space is a surface)"
        )
    else:
        basis = orthogonal_basis(cfg, v)
        if v.r == 0:
            notes.append("rank 0: no vertical wall and no crossing rays; "
                         "wall search skipped")
        else:
            walls: list[Wall] = [numerical_wall(cfg, v, vertical_witness(cfg, v))]
            if config.rays is not None:
                rays = config.rays
            else:
                rays = default_rays(cfg, v) or ()
                if not rays:
                    notes.append(
                        "crossing rays are irrational for this class; supply "
                        "rays = ... explicitly to search semicircular walls"
                    )
            slope = Fraction(v.c, v.r)
            for beta0 in rays:
                side = Side.LEFT if beta0 < slope else Side.RIGHT
                outcome = search_destabilizers(
                    cfg, v, SearchWindow(beta0, side, config.rank_bound)
                )
                searches.append((beta0, outcome))
                walls.extend(hit.wall for hit in outcome.hits)
            walls.sort(key=lambda w: (_wall_position(w), w.witness.as_tuple()))

            for wall in walls:
                classified.append(ClassifiedWall(
                    wall,
                    wall_holes(cfg, v, wall.witness),
                    classify_wall(cfg, v, wall.witness),
                    wall_image(cfg, v, wall.witness, basis),
                    wall_notes.get(",".join(str(a) for a in wall.witness.as_tuple())),
                ))
            disjoint = all(
                walls_disjoint(a.wall, b.wall)
                for i, a in enumerate(classified)
                for b in classified[i + 1:]
            )
            cross.append(
                "pairwise disjointness of the listed walls in the open "
                f"half-plane: {'yes' if disjoint else 'NO'}"
            )
            for cw in classified:
                if isinstance(cw.wall.shape, Semicircle):
                    cross.append(
                        f"image {_vec(cw.image.ambient)} of wall "
                        f"{_vec(cw.wall.witness)}: pairing with v = "
                        f"{mukai_pairing(cfg, cw.image.ambient, v)}, "
                        f"with witness = "
                        f"{mukai_pairing(cfg, cw.image.ambient, cw.wall.witness)}"
                    )

        anchor = StabilityPoint(Fraction(v.c, v.r) - Fraction(1, 2)
                                if v.r else Fraction(0),
                                max(Fraction(1), Fraction(2, cfg.h2)))
        ample = compute_l(cfg, anchor, v, basis)
        labels = {"gieseker": annotations.get("gieseker_model",
                                              "starting moduli space")}
        for key, entry in wall_notes.items():
            if "model_across" in entry:
                labels[key] = entry["model_across"]
        try:
            chart = assemble_cones(
                cfg, v,
                [(cw.wall.witness, cw.classification) for cw in classified],
                labels,
            )
        except InconsistentConeError as exc:
            notes.append(f"cone chart not assembled: {exc}")
        if chart is not None:
            cross.append(
                f"anchor parameter (beta={anchor.beta}, alpha^2={anchor.alpha2}) "
                f"maps to {_vec(ample.ambient)} = {_coords(ample.coords)}"
            )
            mirror = wall_image(cfg, v, chart.mov_rays[0].ambient, basis).ambient
            for cw in classified:
                if (cw.classification.kind.name == "FLOPPING"
                        and cw.image.coords[1] * ample.coords[1] < 0):
                    refl = reflect(cfg, mirror, cw.image.ambient)
                    cross.append(
                        f"reflection by {_vec(mirror)} folds image "
                        f"{_vec(cw.image.ambient)} of wall {_vec(cw.wall.witness)} "
                        f"onto {_vec(refl)}"
                    )

    return RunReport(
        config=config,
        cfg=cfg,
        v=v,
        notes=tuple(notes),
        rays=rays,
        searches=tuple(searches),
        walls=tuple(classified),
        basis=basis,
        chart=chart,
        ample=ample,
        anchor=anchor,
        cross_checks=tuple(cross),
        annotation_notes=tuple(annotations.get("notes", ())),
    )


# ---------------------------------------------------------------- rendering

def _vec(u) -> str:
    if isinstance(u, MukaiVector):
        return ",".join(str(a) for a in u.as_tuple())
    return ",".join(str(a) for a in u)


def _frac(x: Fraction) -> str:
    return str(x)


def _coords(coords) -> str:
    x1, x2 = coords
    first = f"{x1}*e1"
    op = "+" if x2 >= 0 else "-"
    return f"{first} {op} {abs(x2)}*e2"


def _ray_str(ray) -> str:
    if isinstance(ray, SqrtRay):
        op = "+" if ray.sign > 0 else "-"
        return f"sqrt({ray.p})*e1 {op} sqrt({ray.q})*e2 (irrational boundary)"
    return f"{_vec(ray.ambient)} = {_coords(ray.coords)}"


def _shape_str(shape) -> str:
    if isinstance(shape, Vertical):
        return f"vertical beta = {shape.beta}"
    return f"semicircle center = {shape.center} radius^2 = {shape.radius2}"


def render_report(report: RunReport) -> str:
    """Deterministic plain-text rendering of a pipeline run."""
    out: list[str] = ["k3walls report", "format = 1", ""]

    out.append("[config]")
    out.append(f"h2 = {report.config.h2}")
    out.append("v = " + _vec(report.config.v))
    if report.config.rays is not None:
        out.append("rays = " + ", ".join(str(r) for r in report.config.rays))
    out.append(f"rank_bound = {report.config.rank_bound}")
    out.append(f"annotations = {report.config.annotations or 'none'}")
    out.append(f"scale = {report.config.scale}")
    out.append("")

    out.append("[surface]")
    out.append(f"h2 = {report.cfg.h2}")
    out.append(f"genus = {report.cfg.genus}")
    out.append("")

    out.append("[class]")
    out.append(f"v = {_vec(report.v)}")
    v2 = mukai_square(report.cfg, report.v)
    out.append(f"v_square = {v2}")
    out.append(f"moduli_dimension = {v2 + 2}")
    if report.v.r > 0 and v2 > 0:
        out.append(f"q_invariant = {q_invariant(report.cfg, report.v)}")
    out.append("")

    if report.notes:
        out.append("[notes]")
        for note in report.notes:
            out.append(f"note = {note}")
        out.append("")

    if report.rays:
        out.append("[rays]")
        out.append("crossing_rays = " + ", ".join(str(r) for r in report.rays))
        out.append("")

    for beta0, outcome in report.searches:
        out.append(f"[search beta0={beta0}]")
        out.append(f"rank_bound = {outcome.rank_bound}")
        if outcome.rank_bound == 0:
            out.append("evidence = no search performed")
        else:
            out.append("hits = " + ("; ".join(_vec(h.w) for h in outcome.hits)
                                    or "none"))
            out.append("nonempty_ranks = "
                       + (", ".join(str(r) for r in outcome.nonempty_ranks) or "none"))
            out.append("saturation_rank = "
                       + (str(outcome.saturation_rank)
                          if outcome.saturation_rank is not None else "not reached"))
            out.append("hits_after_saturation = "
                       + ("yes" if outcome.hits_after_saturation else "no"))
        out.append("")

    for idx, cw in enumerate(report.walls, start=1):
        out.append(f"[wall {idx}]")
        out.append(f"witness = {_vec(cw.wall.witness)}")
        out.append(f"shape = {_shape_str(cw.wall.shape)}")
        out.append(f"type = {cw.classification.kind.value}")
        out.append(f"bouncing = {'yes' if cw.classification.bouncing else 'no'}")
        out.append("totally_semistable_flag = "
                   + ("yes" if cw.classification.totally_semistable else "no")
                   + f" (roots searched up to rank {cw.classification.root_rank_limit})")
        for witness, role in cw.classification.witnesses:
            out.append(f"type_witness = {_vec(witness)} ({role})")
        if cw.holes:
            for hole in cw.holes:
                out.append(f"hole = (beta = {hole.beta}, alpha^2 = {hole.alpha2}) "
                           f"from root {_vec(hole.delta)}")
        else:
            out.append("hole = none")
        out.append(f"image = {_ray_str(cw.image)}")
        if cw.annotation:
            out.append(f"actual = {cw.annotation.get('actual', 'unknown')}")
            if "model_across" in cw.annotation:
                out.append(f"model_across = {cw.annotation['model_across']}")
            if "note" in cw.annotation:
                out.append(f"annotation = {cw.annotation['note']}")
        else:
            out.append("actual = unknown (numerical candidate)")
        out.append("")

    if report.basis is not None:
        out.append("[ns-basis]")
        out.append(f"e1 = {_vec(report.basis.e1)}")
        out.append(f"e2 = {_vec(report.basis.e2)}")
        out.append(f"gram = {report.basis.gram[0]}, {report.basis.gram[1]}")
        out.append("")

    if report.chart is not None:
        out.append("[cones]")
        out.append(f"positive_ray = {_ray_str(report.chart.pos_rays[0])}")
        out.append(f"positive_ray = {_ray_str(report.chart.pos_rays[1])}")
        out.append(f"movable_boundary = {_ray_str(report.chart.mov_rays[0])}")
        out.append(f"movable_boundary = {_ray_str(report.chart.mov_rays[1])}")
        out.append(f"nef_ray = {_ray_str(report.chart.nef_rays[0])}")
        out.append(f"nef_ray = {_ray_str(report.chart.nef_rays[1])}")
        out.append(f"ample_marker = {_ray_str(report.ample)}")
        for chamber in report.chart.chambers:
            out.append(
                f"chamber {chamber.label} = [{_ray_str(chamber.rays[0])}] .. "
                f"[{_ray_str(chamber.rays[1])}] ; model = {chamber.model}"
            )
        out.append("")

    if report.cross_checks:
        out.append("[cross-checks]")
        for line in report.cross_checks:
            out.append(f"check = {line}")
        out.append("")

    if report.annotation_notes:
        out.append("[annotation-notes]")
        for line in report.annotation_notes:
            out.append(f"note = {line}")
        out.append("")

    return "\n".join(out)
