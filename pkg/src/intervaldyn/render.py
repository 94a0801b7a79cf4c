"""Self-contained SVG rendering of cobweb diagrams.

Documents are SVG 1.1 with viewBox 0 0 1000 1000 and no external
references. A cobweb figure carries the axes, the y = x diagonal, the
map's graph sampled at 1000 points, and the cobweb polyline itself;
the polyline has exactly 2*steps + 1 points. Output is generated with
fixed formatting so identical inputs give byte-identical documents.
"""

from __future__ import annotations

from .analysis import CobwebPath
from .errors import DomainError
from .maps import MapDescriptor, eval_map

VIEW = 1000.0
GRAPH_SAMPLES = 1000


def _fmt(v: float) -> str:
    return format(v, ".4f")


def _window(m: MapDescriptor, path: CobwebPath) -> tuple[float, float]:
    data = [c for p in path.points for c in p]
    dom = m.domain()
    if dom.bounded:
        lo, hi = min(dom.lo, min(data)), max(dom.hi, max(data))
    else:
        lo, hi = min(data), max(data)
    if hi - lo < 1e-9:
        lo, hi = lo - 0.5, hi + 0.5
    return lo, hi


def cobweb_svg(m: MapDescriptor, path: CobwebPath) -> str:
    """Render a cobweb path over the map's graph as an SVG document."""
    lo, hi = _window(m, path)
    span = hi - lo

    def px(x: float) -> float:
        return (x - lo) / span * VIEW

    def py(y: float) -> float:
        return VIEW - (y - lo) / span * VIEW

    graph_pts = []
    for i in range(GRAPH_SAMPLES):
        x = lo + span * i / (GRAPH_SAMPLES - 1)
        try:
            y = eval_map(m, x)
        except DomainError:
            continue
        graph_pts.append((x, y))

    def polyline(points, stroke: str, width: str, cls: str) -> str:
        coords = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in points)
        return (f'<polyline class="{cls}" fill="none" stroke="{stroke}" '
                f'stroke-width="{width}" points="{coords}"/>')

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'viewBox="0 0 1000 1000" width="1000" height="1000">',
        '<rect x="0" y="0" width="1000" height="1000" fill="#ffffff"/>',
        # axes along the left and bottom edges
        '<line class="axis" x1="0" y1="1000" x2="1000" y2="1000" stroke="#000000" stroke-width="2"/>',
        '<line class="axis" x1="0" y1="0" x2="0" y2="1000" stroke="#000000" stroke-width="2"/>',
        # the diagonal y = x
        '<line class="diagonal" x1="0" y1="1000" x2="1000" y2="0" stroke="#888888" stroke-width="1"/>',
        polyline(graph_pts, "#1f77b4", "2", "graph"),
        polyline(path.points, "#d62728", "1", "cobweb"),
        "</svg>",
    ]
    return "\n".join(lines) + "\n"
