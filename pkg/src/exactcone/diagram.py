"""Two-array box diagrams of min-semi-balanced systems.

Rows are players.  The left array has one column per unit of ``alpha_S`` for
each non-exceptional member; the right array has ``alpha_empty`` blank
columns, ``alpha_T`` grey columns for the exceptional set and ``alpha_N``
black columns.  A cell holds a box iff the player belongs to the column's set,
so both arrays have the same number of boxes in every row.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Optional
from xml.sax.saxutils import escape

from .semibal import IntegerForm, integer_form
from .setcore import SetSystem

BLANK, GREY, BLACK, BRIGHT = "blank", "grey", "black", "bright"

PALETTE = ("#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#9a6324")
GREY_FILL = "#aaaaaa"
BLACK_FILL = "#000000"


@dataclass(frozen=True)
class Column:
    coalition: int
    color: str
    count: int
    palette_index: Optional[int] = None


@dataclass(frozen=True)
class DiagramSpec:
    system: SetSystem
    left: tuple[Column, ...]
    right: tuple[Column, ...]

    def cells(self, side: str) -> list[list[bool]]:
        cols = self.left if side == "left" else self.right
        n = self.system.ground.n
        return [[bool(c.coalition >> i & 1) for c in cols for _ in range(c.count)] for i in range(n)]

    def row_counts(self, side: str) -> list[int]:
        return [sum(row) for row in self.cells(side)]

    def colors(self) -> set[str]:
        return {c.color for c in self.left + self.right if c.count}


def build_diagram(sys: SetSystem, form: Optional[IntegerForm] = None) -> DiagramSpec:
    form = form or integer_form(sys)
    full = sys.ground.full
    left = tuple(Column(s, BRIGHT, a, k) for k, (s, a) in enumerate(sorted(form.alpha.items(), key=lambda kv: sys.sets.index(kv[0]))))
    right = []
    if form.alpha_empty:
        right.append(Column(0, BLANK, form.alpha_empty))
    if form.alpha_exceptional is not None:
        t, a = form.alpha_exceptional
        right.append(Column(t, GREY, a))
    if form.alpha_N:
        right.append(Column(full, BLACK, form.alpha_N))
    spec = DiagramSpec(sys, left, tuple(right))
    if spec.row_counts("left") != spec.row_counts("right"):
        raise ArithmeticError(f"box counts differ between the arrays of {sys}")
    return spec


def _symbol(c: Column) -> str:
    if c.color == BRIGHT:
        return string.ascii_uppercase[c.palette_index]
    return {GREY: "X", BLACK: "#", BLANK: "."}[c.color]


def render_ascii(spec: DiagramSpec) -> str:
    g = spec.system.ground
    width = max(len(lab) for lab in g.labels)
    lines = [f"system {spec.system}"]
    for i, lab in enumerate(g.labels):
        left = "".join(_symbol(c) if c.coalition >> i & 1 else "." for c in spec.left for _ in range(c.count))
        right = "".join(_symbol(c) if c.coalition >> i & 1 else "." for c in spec.right for _ in range(c.count))
        lines.append(f"{lab:<{width}} {left} | {right}")
    legend = [f"{_symbol(c)}={g.format(c.coalition)}*{c.count}" for c in spec.left]
    for c in spec.right:
        legend.append(f"{'0' if c.color == BLANK else _symbol(c)}={g.format(c.coalition)}*{c.count}")
    lines.append("legend: " + " ".join(legend))
    return "\n".join(lines) + "\n"


def _fill(c: Column) -> str:
    if c.color == BRIGHT:
        return PALETTE[c.palette_index % len(PALETTE)]
    return {GREY: GREY_FILL, BLACK: BLACK_FILL, BLANK: "none"}[c.color]


def render_svg(spec: DiagramSpec, cell: int = 18) -> str:
    g = spec.system.ground
    n = g.n
    nl = sum(c.count for c in spec.left)
    nr = sum(c.count for c in spec.right)
    label_w, gap = 2 * cell, 2 * cell
    x_right = label_w + nl * cell + gap
    w = x_right + nr * cell + cell
    h = (n + 1) * cell
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f"<title>{escape(str(spec.system))}</title>",
    ]
    for i, lab in enumerate(g.labels):
        y = (i + 1) * cell
        out.append(f'<text x="{cell // 2}" y="{y - 4}" font-size="{cell - 6}" font-family="monospace">{escape(lab)}</text>')
    for x0, cols in ((label_w, spec.left), (x_right, spec.right)):
        j = 0
        for c in cols:
            for _ in range(c.count):
                x = x0 + j * cell
                for i in range(n):
                    y = i * cell + cell // 2
                    fill = _fill(c) if c.coalition >> i & 1 else "none"
                    out.append(f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="{fill}" stroke="#000000" stroke-width="1"/>')
                j += 1
    out.append("</svg>")
    return "\n".join(out) + "\n"
