"""SVG rendering of the half-plane wall picture and the NS cone picture.

Coordinates are exact rationals scaled by the configured integer
factor; irrational heights (alpha = sqrt(alpha^2), positive-cone
boundary slopes) are replaced by their floor approximation with
denominator 2^32 before formatting.  Numbers are printed with at most
six decimal places, rounded half away from zero.  Identical reports
render to byte-identical documents.

Style table (fixed):
    axis and frame        #222222, solid
    vertical wall         #cc2222, dashed 8 6
    actual circular wall  #2244cc, dashed 8 6
    candidate wall        #999999, dashed 3 5
    positive cone rays    #2a7f2a, solid
    movable boundary      #cc2222, dashed 8 6
    interior chamber wall #2244cc, dashed 8 6
    hole marker           white fill, wall-colored stroke
    ample marker          #222222 fill
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .cones import SqrtRay, positive_cone_boundary
from .report import RunReport
from .walls import Semicircle, Vertical

_SQRT_BITS = 32

COLOR_AXIS = "#222222"
COLOR_VERTICAL = "#cc2222"
COLOR_ACTUAL = "#2244cc"
COLOR_CANDIDATE = "#999999"
COLOR_POSITIVE = "#2a7f2a"
DASH_WALL = "8 6"
DASH_CANDIDATE = "3 5"
FONT = 'font-family="monospace" font-size="16"'


def sqrt_lower(x: Fraction) -> Fraction:
    """floor(sqrt(x) * 2^32) / 2^32, exactly."""
    if x < 0:
        raise ValueError("negative radicand")
    n, d = x.numerator, x.denominator
    return Fraction(isqrt(n * d << (2 * _SQRT_BITS)) // d, 1 << _SQRT_BITS)


def fmt(x: Fraction | int, places: int = 6) -> str:
    """Decimal rendering, at most `places` digits, half away from zero."""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    scaled = (abs(x) * 10**places + Fraction(1, 2)).__floor__()
    whole, frac = divmod(scaled, 10**places)
    if frac == 0:
        return f"{sign}{whole}"
    digits = str(frac).rjust(places, "0").rstrip("0")
    return f"{sign}{whole}.{digits}"


def _text(x, y, content: str, anchor: str = "middle") -> str:
    return (f'<text x="{fmt(x)}" y="{fmt(y)}" text-anchor="{anchor}" '
            f'{FONT} fill="{COLOR_AXIS}">{content}</text>')


def render_halfplane_svg(report: RunReport, scale: int | None = None) -> str:
    """The (beta, alpha) half-plane with walls, holes and chamber labels.

    The drawing window is beta in [-1/4, 3/2] and alpha in [0, 3/4],
    multiplied by the scale factor; geometry outside the window is
    clipped.  Wall circles keep their exact scaled center and radius.
    """
    s = Fraction(scale if scale is not None else report.config.scale)
    beta_min, beta_max = Fraction(-1, 4), Fraction(3, 2)
    alpha_max = Fraction(3, 4)
    margin = Fraction(40)
    width = (beta_max - beta_min) * s + 2 * margin
    height = alpha_max * s + 2 * margin
    # inner group: x = beta*scale, y = alpha*scale, y pointing up
    tx = margin - beta_min * s
    ty = margin + alpha_max * s

    def to_px(beta: Fraction, alpha: Fraction) -> tuple[Fraction, Fraction]:
        return (tx + beta * s, ty - alpha * s)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{fmt(width)}" height="{fmt(height)}" '
        f'viewBox="0 0 {fmt(width)} {fmt(height)}">',
        "<defs>",
        f'<clipPath id="upper"><rect x="{fmt(beta_min * s)}" y="0" '
        f'width="{fmt((beta_max - beta_min) * s)}" '
        f'height="{fmt(alpha_max * s)}"/></clipPath>',
        "</defs>",
        f'<g transform="translate({fmt(tx)},{fmt(ty)}) scale(1,-1)">',
        '<g clip-path="url(#upper)" fill="none">',
        f'<line x1="{fmt(beta_min * s)}" y1="0" x2="{fmt(beta_max * s)}" y2="0" '
        f'stroke="{COLOR_AXIS}" stroke-width="2"/>',
    ]

    vertical_beta = None
    for cw in report.walls:
        actual = bool(cw.annotation) and cw.annotation.get("actual") == "yes"
        if isinstance(cw.wall.shape, Vertical):
            vertical_beta = cw.wall.shape.beta
            x = cw.wall.shape.beta * s
            out.append(
                f'<line x1="{fmt(x)}" y1="0" x2="{fmt(x)}" y2="{fmt(alpha_max * s)}" '
                f'stroke="{COLOR_VERTICAL}" stroke-width="2" '
                f'stroke-dasharray="{DASH_WALL}"/>'
            )
        else:
            color = COLOR_ACTUAL if actual else COLOR_CANDIDATE
            dash = DASH_WALL if actual else DASH_CANDIDATE
            out.append(
                f'<circle cx="{fmt(cw.wall.shape.center * s)}" cy="0" '
                f'r="{fmt(sqrt_lower(cw.wall.shape.radius2) * s)}" '
                f'stroke="{color}" stroke-width="2" stroke-dasharray="{dash}"/>'
            )
        for hole in cw.holes:
            color = COLOR_VERTICAL if isinstance(cw.wall.shape, Vertical) else (
                COLOR_ACTUAL if actual else COLOR_CANDIDATE)
            out.append(
                f'<circle cx="{fmt(hole.beta * s)}" '
                f'cy="{fmt(sqrt_lower(hole.alpha2) * s)}" r="4" fill="white" '
                f'stroke="{color}" stroke-width="2"/>'
            )
    out.append("</g>")
    out.append("</g>")

    # labels live outside the flipped group
    ticks = [Fraction(0), Fraction(1)]
    if vertical_beta is not None:
        ticks.append(vertical_beta)
    for tick in sorted(set(ticks)):
        px, py = to_px(tick, Fraction(0))
        out.append(f'<line x1="{fmt(px)}" y1="{fmt(py - 5)}" x2="{fmt(px)}" '
                   f'y2="{fmt(py + 5)}" stroke="{COLOR_AXIS}" stroke-width="2"/>')
        out.append(_text(px, py + 24, str(tick)))
    px, py = to_px(beta_max, Fraction(0))
    out.append(_text(px + 20, py + 5, "b", anchor="start"))
    px, py = to_px(Fraction(0), alpha_max)
    out.append(_text(px - 12, py - 8, "a", anchor="end"))

    if vertical_beta is not None:
        left_labels = right_labels = 0
        px, py = to_px(vertical_beta - Fraction(1, 4), alpha_max * Fraction(2, 3))
        out.append(_text(px, py, "(a)"))
        px, py = to_px(vertical_beta + Fraction(1, 4), alpha_max * Fraction(2, 3))
        out.append(_text(px, py, "(a')"))
        for cw in report.walls:
            if (isinstance(cw.wall.shape, Semicircle)
                    and cw.classification.kind.name == "FLOPPING"):
                center = cw.wall.shape.center
                half_height = sqrt_lower(cw.wall.shape.radius2) / 2
                if center < vertical_beta:
                    name = f"({chr(ord('b') + left_labels)})"
                    left_labels += 1
                else:
                    name = f"({chr(ord('b') + right_labels)}')"
                    right_labels += 1
                px, py = to_px(center, half_height)
                out.append(_text(px, py, name))

    out.append("</svg>")
    return "\n".join(out) + "\n"


def _line_through_origin(direction, box: Fraction, both: bool):
    """Endpoints of the (half-)line through 0 with a rational direction."""
    dx, dy = direction
    t = box / max(abs(dx), abs(dy))
    end = (dx * t, dy * t)
    start = (-end[0], -end[1]) if both else (Fraction(0), Fraction(0))
    return start, end


def render_ns_cone_svg(report: RunReport, scale: int | None = None) -> str:
    """The positive cone in the (e1, e2) plane with its chamber walls.

    e1 is horizontal, e2 vertical; all rays are drawn from the origin
    to the frame of a square box of half-side scale/2.
    """
    s = Fraction(scale if scale is not None else report.config.scale)
    box = s / 2
    margin = Fraction(40)
    size = 2 * box + 2 * margin
    cx = cy = margin + box

    def to_px(x: Fraction, y: Fraction) -> tuple[Fraction, Fraction]:
        return (cx + x, cy - y)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{fmt(size)}" height="{fmt(size)}" '
        f'viewBox="0 0 {fmt(size)} {fmt(size)}">',
        f'<rect x="{fmt(margin)}" y="{fmt(margin)}" width="{fmt(2 * box)}" '
        f'height="{fmt(2 * box)}" fill="none" stroke="{COLOR_AXIS}" '
        'stroke-width="1"/>',
    ]
    if report.basis is None:
        out.append(_text(cx, cy, "no NS lattice for this class (v^2 &lt;= 0)"))
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def ray_direction(ray) -> tuple[Fraction, Fraction]:
        if isinstance(ray, SqrtRay):
            return (sqrt_lower(Fraction(ray.p)), ray.sign * sqrt_lower(Fraction(ray.q)))
        return ray.coords

    def draw(direction, color: str, dash: str | None, both: bool) -> None:
        (x1, y1), (x2, y2) = _line_through_origin(direction, box, both)
        p1, p2 = to_px(x1, y1), to_px(x2, y2)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(
            f'<line x1="{fmt(p1[0])}" y1="{fmt(p1[1])}" x2="{fmt(p2[0])}" '
            f'y2="{fmt(p2[1])}" stroke="{color}" stroke-width="2"{dash_attr}/>'
        )

    chart = report.chart
    if chart is not None:
        pos_rays = chart.pos_rays
    else:
        pos_rays = positive_cone_boundary(report.cfg, report.basis)

    for ray in pos_rays:
        draw(ray_direction(ray), COLOR_POSITIVE, None, both=False)
    if chart is not None:
        draw(chart.mov_rays[0].coords, COLOR_VERTICAL, DASH_WALL, both=True)
        interior = []
        seen = {}
        for chamber in chart.chambers[1:]:
            ray = chamber.rays[0]
            if not isinstance(ray, SqrtRay) and ray.coords not in seen:
                seen[ray.coords] = True
                interior.append(ray)
        for ray in interior:
            draw(ray.coords, COLOR_ACTUAL, DASH_WALL, both=True)
        if report.ample is not None:
            dx, dy = report.ample.coords
            t = box * Fraction(3, 4) / max(abs(dx), abs(dy))
            px, py = to_px(dx * t, dy * t)
            out.append(f'<circle cx="{fmt(px)}" cy="{fmt(py)}" r="5" '
                       f'fill="{COLOR_AXIS}"/>')
            out.append(_text(px + 12, py - 8, "A", anchor="start"))
        for chamber in chart.chambers:
            d1 = ray_direction(chamber.rays[0])
            d2 = ray_direction(chamber.rays[1])
            mid = (d1[0] / max(abs(d1[0]), abs(d1[1])) + d2[0] / max(abs(d2[0]), abs(d2[1])),
                   d1[1] / max(abs(d1[0]), abs(d1[1])) + d2[1] / max(abs(d2[0]), abs(d2[1])))
            if mid == (0, 0):
                continue
            t = box * Fraction(5, 8) / max(abs(mid[0]), abs(mid[1]))
            px, py = to_px(mid[0] * t, mid[1] * t)
            out.append(_text(px, py, chamber.label))

    px, py = to_px(box, Fraction(0))
    out.append(_text(px - 8, py - 10, "e1", anchor="end"))
    px, py = to_px(Fraction(0), box)
    out.append(_text(px + 10, py + 16, "e2", anchor="start"))
    out.append("</svg>")
    return "\n".join(out) + "\n"
