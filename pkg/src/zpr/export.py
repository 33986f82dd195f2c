"""Figure exporters for scenes: Wavefront OBJ and two SVG views."""

from __future__ import annotations

import math
from fractions import Fraction
from xml.sax.saxutils import escape

from .lift import ZprScene, dump_number

PRISM_SIDES = 12


def _f(q: Fraction | int) -> str:
    return f"{float(q):.6g}"


# ---------------------------------------------------------------------------
# OBJ
# ---------------------------------------------------------------------------


def to_obj(scene: ZprScene) -> str:
    """Rectangles as two triangles each, cylinders as 12-sided prisms.

    Geometry is approximate floating point; the exact values sit in comments.
    """
    lines = ["# z-parallel visibility representation", f"# epsilon {dump_number(scene.epsilon)}"]
    nv = 0
    for v, r in sorted(scene.rects.items()):
        lines.append(f"# rect {v} z={r.z} x=[{r.xL},{r.xR}] y=[{r.yBot},{r.yTop}]")
        lines.append(f"o rect_{v}")
        for x, y in ((r.xL, r.yBot), (r.xR, r.yBot), (r.xR, r.yTop), (r.xL, r.yTop)):
            lines.append(f"v {_f(x)} {_f(y)} {_f(r.z)}")
        lines.append(f"f {nv + 1} {nv + 2} {nv + 3}")
        lines.append(f"f {nv + 1} {nv + 3} {nv + 4}")
        nv += 4
    eps = float(scene.epsilon)
    k = PRISM_SIDES
    for e, c in sorted(scene.cylinders.items()):
        lines.append(
            f"# cylinder {e} axis x={dump_number(c.x)} y={dump_number(c.y)} z=[{c.zLow},{c.zHigh}]"
        )
        lines.append(f"o cylinder_{e}")
        for z in (c.zLow, c.zHigh):
            for i in range(k):
                a = 2 * math.pi * i / k
                lines.append(f"v {float(c.x) + eps * math.cos(a):.6g} {float(c.y) + eps * math.sin(a):.6g} {_f(z)}")
        bot, top = nv + 1, nv + 1 + k
        for i in range(k):
            j = (i + 1) % k
            lines.append(f"f {bot + i} {bot + j} {top + j}")
            lines.append(f"f {bot + i} {top + j} {top + i}")
        for i in range(1, k - 1):
            lines.append(f"f {bot} {bot + i + 1} {bot + i}")
            lines.append(f"f {top} {top + i} {top + i + 1}")
        nv += 2 * k
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

_UNIT = 20
_PAD = 20


def _svg(width: float, height: float, body: list[str], title: str) -> str:
    w, h = width * _UNIT + 2 * _PAD, height * _UNIT + 2 * _PAD
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:g}" height="{h:g}" '
        f'viewBox="0 0 {w:g} {h:g}">\n<title>{escape(title)}</title>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def to_svg_section(scene: ZprScene) -> str:
    """The x-z view at Y = 0: bars plus the x-positions of all cylinders.

    Cylinders that leave the plane (they cross a bar there) are drawn bold red.
    """
    rs = scene.rects.values()
    x0, x1 = min(r.xL for r in rs), max(r.xR for r in rs)
    z0, z1 = min(r.z for r in rs), max(r.z for r in rs)
    sx = lambda x: _PAD + (float(x) - x0) * _UNIT  # noqa: E731
    sz = lambda z: _PAD + (z1 - z) * _UNIT  # noqa: E731
    body = []
    for e, c in sorted(scene.cylinders.items()):
        lifted = c.y != 0
        style = 'stroke="red" stroke-width="3"' if lifted else 'stroke="black" stroke-width="1"'
        cls = "traversing" if lifted else "direct"
        body.append(
            f'<line class="{cls}" data-edge="{e}" x1="{sx(c.x):g}" y1="{sz(c.zLow):g}" '
            f'x2="{sx(c.x):g}" y2="{sz(c.zHigh):g}" {style}/>'
        )
    for v, r in sorted(scene.rects.items()):
        body.append(
            f'<line class="bar" data-vertex="{v}" x1="{sx(r.xL):g}" y1="{sz(r.z):g}" '
            f'x2="{sx(r.xR):g}" y2="{sz(r.z):g}" stroke="steelblue" stroke-width="6"/>'
        )
    return _svg(x1 - x0, z1 - z0, body, "section Y=0")


def to_svg_yz(scene: ZprScene) -> str:
    """Projection to the y-z plane showing only cylinders off Y = 0."""
    rs = scene.rects.values()
    y0, y1 = min(r.yBot for r in rs), max(r.yTop for r in rs)
    z0, z1 = min(r.z for r in rs), max(r.z for r in rs)
    sy = lambda y: _PAD + (float(y) - y0) * _UNIT  # noqa: E731
    sz = lambda z: _PAD + (z1 - z) * _UNIT  # noqa: E731
    body = []
    for v, r in sorted(scene.rects.items()):
        body.append(
            f'<line class="rect" data-vertex="{v}" x1="{sy(r.yBot):g}" y1="{sz(r.z):g}" '
            f'x2="{sy(r.yTop):g}" y2="{sz(r.z):g}" stroke="steelblue" stroke-width="6"/>'
        )
    for e, c in sorted(scene.cylinders.items()):
        if c.y == 0:
            continue
        body.append(
            f'<line class="traversing" data-edge="{e}" x1="{sy(c.y):g}" y1="{sz(c.zLow):g}" '
            f'x2="{sy(c.y):g}" y2="{sz(c.zHigh):g}" stroke="red" stroke-width="3"/>'
        )
    return _svg(y1 - y0, z1 - z0, body, "projection to the yz-plane")


EXPORTERS = {"obj": to_obj, "svg-section": to_svg_section, "svg-yz": to_svg_yz}
