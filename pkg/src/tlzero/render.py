"""Deterministic text renderings of diagrams and morphisms: ascii, tikz and json."""

from __future__ import annotations

import json
from typing import Dict, List, Sequence, Tuple

from .diagrams import Diagram
from .morphisms import Morphism
from .scalars import Laurent, format_laurent

FORMATS = ("ascii", "tikz", "json")


def _depths(arcs: Sequence[Tuple[int, int]]) -> Dict[Tuple[int, int], int]:
    """Nesting depth of each arc, innermost arcs at depth 1."""
    out: Dict[Tuple[int, int], int] = {}
    for a, b in sorted(arcs, key=lambda p: p[1] - p[0]):
        inner = [out[c] for c in out if a < c[0] and c[1] < b]
        out[(a, b)] = 1 + max(inner, default=0)
    return out


def _arc_rows(arcs, legs: Sequence[int], width: int, left: str, fill: str, right: str,
              top_down: bool) -> List[str]:
    depth = _depths(arcs)
    levels = range(1, max(depth.values(), default=0) + 1)
    rows = []
    for d in (levels if top_down else reversed(levels)):
        line = [" "] * width
        for c in legs:
            line[c] = "|"
        for (a, b), e in depth.items():
            ca, cb = 2 * (a - 1), 2 * (b - 1)
            if e == d:
                line[ca] = left
                line[cb] = right
                for c in range(ca + 1, cb):
                    line[c] = fill
            elif e > d:
                line[ca] = line[cb] = "|"
        rows.append("".join(line).rstrip())
    return rows


def ascii_diagram(x: Diagram) -> List[str]:
    """Targets on top, sources at the bottom; cups are drawn as \\_/ and caps as /-\\."""
    width = max(1, 2 * max(x.domain, x.codomain) - 1)
    if x.domain == x.codomain == 0:
        return ["(empty)"]
    thr = x.through()
    top_legs = [2 * (t - 1) for _, t in thr]
    bot_legs = [2 * (s - 1) for s, _ in thr]
    rows = _arc_rows(x.cups(), top_legs, width, "\\", "_", "/", top_down=True)
    # through strands drift from target columns to source columns one step per row
    pos = list(top_legs)
    middle = [[" "] * width for _ in range(max([abs(a - b) for a, b in zip(top_legs, bot_legs)],
                                               default=0))]
    for r in range(len(middle)):
        for i, want in enumerate(bot_legs):
            if pos[i] < want:
                pos[i] += 1
                middle[r][pos[i]] = "\\"
            elif pos[i] > want:
                pos[i] -= 1
                middle[r][pos[i]] = "/"
            else:
                middle[r][pos[i]] = "|"
    if not middle and thr:
        middle = [[" "] * width]
        for c in bot_legs:
            middle[0][c] = "|"
    rows += ["".join(line).rstrip() for line in middle]
    rows += _arc_rows(x.caps(), bot_legs, width, "/", "-", "\\", top_down=False)
    return rows


def _coeff_text(c, first: bool) -> str:
    text = format_laurent(c)
    if isinstance(c, Laurent) and len(c.coeffs) > 1:
        return ("" if first else "+ ") + f"({text})"
    if text.startswith("-"):
        return "- " + text[1:] if not first else "-" + text[1:]
    return text if first else "+ " + text


def ascii_morphism(f: Morphism) -> List[str]:
    if f.is_zero():
        return [f"0 : {f.domain} -> {f.codomain}"]
    out = []
    for i, (d, c) in enumerate(f.sorted_items()):
        out.append(f"{_coeff_text(c, i == 0)} *")
        out.extend("    " + line for line in ascii_diagram(d))
    return out


def _tikz_scope(x: Diagram, shift: float) -> List[str]:
    lines = [f"  \\begin{{scope}}[xshift={shift:g}cm]"]
    for a, b in x.caps():
        lines.append(f"    \\draw ({a - 1},0) .. controls ({a - 1},0.4) and ({b - 1},0.4) .. ({b - 1},0);")
    for a, b in x.cups():
        lines.append(f"    \\draw ({a - 1},1) .. controls ({a - 1},0.6) and ({b - 1},0.6) .. ({b - 1},1);")
    for s, t in x.through():
        lines.append(f"    \\draw ({s - 1},0) -- ({t - 1},1);")
    lines.append("  \\end{scope}")
    return lines


def tikz(obj) -> str:
    """One scope per diagram term; bottom points at y=0, top points at y=1."""
    items = [(obj, 1)] if isinstance(obj, Diagram) else obj.sorted_items()
    lines = ["\\begin{tikzpicture}"]
    x = 0.0
    if not items:
        lines.append("  \\node at (0,0.5) {$0$};")
    for i, (d, c) in enumerate(items):
        text = _coeff_text(c, i == 0)
        if not (i == 0 and text == "1"):
            sign, _, rest = text.partition(" ") if text[:1] in "+-" and " " in text else ("", "", text)
            if i == 0 and text.startswith("-"):
                sign, rest = "-", text[1:]
            label = "" if rest == "1" else rest
            lines.append(f"  \\node at ({x:g},0.5) {{${sign}{label}$}};")
            x += 0.8
        lines.extend(_tikz_scope(d, x))
        x += max(d.domain, d.codomain, 1) + 0.5
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines)


def to_json(obj) -> dict:
    return obj.to_json()


def render(obj, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(to_json(obj), indent=2)
    if fmt == "ascii":
        lines = ascii_diagram(obj) if isinstance(obj, Diagram) else ascii_morphism(obj)
        return "\n".join(lines)
    if fmt == "tikz":
        return tikz(obj)
    raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
