"""SVG register view of an embedding."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

import drawsvg as draw
import numpy as np

from ..embedding.feasibility import DimensionMismatchError, DomainParams, squared_pair_distances
from ..graphs.core import Graph, Pair, pair_arrays
from .logging_utils import get_logger
from .utils import atomic_write_text


logger = get_logger("render")


@dataclass(frozen=True)
class RenderTheme:
    pixels_per_um: float = 6.0
    margin: float = 24.0
    background: str = "#ffffff"
    boundary: str = "#9aa5b1"
    disk_fill: str = "#4c78a8"
    disk_opacity: float = 0.18
    edge: str = "#1f2933"
    mismatch: str = "#d64545"
    atom: str = "#1f2933"
    label: str = "#ffffff"
    font_size: float = 10.0
    atom_radius: float = 7.0


@dataclass
class RenderResult:
    svg: str
    mismatches: List[Pair] = field(default_factory=list)


def geometric_mismatches(g: Graph, coords: np.ndarray, params: DomainParams) -> List[Pair]:
    """Pairs whose disks of radius ``D_adj/2`` intersect iff they are not adjacent."""

    coords = np.asarray(coords, dtype=np.float64)
    if coords.shape[0] != g.n:
        raise DimensionMismatchError(f"{g.n} Punkte erwartet, erhalten {coords.shape[0]}")
    rows, cols = pair_arrays(g.n)
    touching = squared_pair_distances(coords) <= params.d_adj**2
    differs = touching != g.pair_adjacency()
    return [(int(i), int(j)) for i, j in zip(rows[differs], cols[differs])]


def render_register(
    g: Graph,
    coords: np.ndarray,
    params: DomainParams,
    path: Optional[Path] = None,
    theme: Optional[RenderTheme] = None,
) -> RenderResult:
    """Draw atoms, disks of radius ``D_adj/2`` and the edges of ``g``.

    Edges follow the adjacency matrix, not the geometry; pairs where the
    two disagree get a dashed highlight and are returned. 3D coordinates are
    projected onto the xy plane.
    """

    theme = theme or RenderTheme()
    coords = np.asarray(coords, dtype=np.float64)
    mismatches = geometric_mismatches(g, coords, params)

    scale = theme.pixels_per_um
    size = 2.0 * (params.L * scale + theme.margin)
    d = draw.Drawing(size, size, origin="center")
    d.append(draw.Rectangle(-size / 2, -size / 2, size, size, fill=theme.background))
    d.append(
        draw.Circle(0, 0, params.L * scale, fill="none", stroke=theme.boundary, stroke_width=1.5, class_="boundary")
    )

    # svg y grows downwards
    xy = np.column_stack([coords[:, 0] * scale, -coords[:, 1] * scale])

    for x, y in xy:
        d.append(
            draw.Circle(
                x,
                y,
                params.d_adj / 2.0 * scale,
                fill=theme.disk_fill,
                fill_opacity=theme.disk_opacity,
                stroke=theme.disk_fill,
                stroke_width=0.8,
                class_="disk",
            )
        )

    for i, j in g.edges:
        d.append(
            draw.Line(*xy[i], *xy[j], stroke=theme.edge, stroke_width=1.5, class_="edge")
        )

    for i, j in mismatches:
        d.append(
            draw.Line(
                *xy[i],
                *xy[j],
                stroke=theme.mismatch,
                stroke_width=2.0,
                stroke_dasharray="5,3",
                class_="mismatch",
            )
        )

    for index, (x, y) in enumerate(xy):
        d.append(draw.Circle(x, y, theme.atom_radius, fill=theme.atom, class_="atom"))
        d.append(
            draw.Text(
                str(index),
                theme.font_size,
                x,
                y,
                fill=theme.label,
                text_anchor="middle",
                dominant_baseline="central",
                font_family="sans-serif",
            )
        )

    svg = d.as_svg()
    if path is not None:
        atomic_write_text(Path(path), svg)
        logger.info("Registeransicht gespeichert: %s", path)
    if mismatches:
        logger.warning("%s Paare widersprechen der Adjazenzmatrix", len(mismatches))
    return RenderResult(svg=svg, mismatches=mismatches)


__all__ = ["RenderResult", "RenderTheme", "geometric_mismatches", "render_register"]
