"""
Lattice Service
Square lattice on a torus: edges, vertex stars, plaquette loops and sites.
"""

import math
from collections import Counter
from typing import Dict

from ..core.exceptions import ArgumentError
from ..models.lattice import Direction, LoopEdge, Site, StarEdge, TorusLattice


def build_torus(rows: int, cols: int) -> TorusLattice:
    """
    Horizontal edge h(r, c) = r*cols + c runs from (r, c) to (r, c+1);
    vertical edge v(r, c) = rows*cols + r*cols + c runs from (r, c) to (r+1, c).
    """
    if rows < 2 or cols < 2:
        raise ArgumentError(f"Torus needs at least 2 rows and 2 columns, got {rows}x{cols}")
    n = rows * cols

    def vertex(r: int, c: int) -> int:
        return (r % rows) * cols + (c % cols)

    def h(r: int, c: int) -> int:
        return vertex(r, c)

    def v(r: int, c: int) -> int:
        return n + vertex(r, c)

    endpoints = [None] * (2 * n)
    directions = [None] * (2 * n)
    stars = []
    loops = []
    starts = []
    for r in range(rows):
        for c in range(cols):
            endpoints[h(r, c)] = (vertex(r, c), vertex(r, c + 1))
            directions[h(r, c)] = Direction.RIGHT
            endpoints[v(r, c)] = (vertex(r, c), vertex(r + 1, c))
            directions[v(r, c)] = Direction.UP
            stars.append((
                StarEdge(h(r, c), True),
                StarEdge(v(r, c), True),
                StarEdge(h(r, c - 1), False),
                StarEdge(v(r - 1, c), False),
            ))
            loops.append((
                LoopEdge(h(r, c), True),
                LoopEdge(v(r, c + 1), True),
                LoopEdge(h(r + 1, c), False),
                LoopEdge(v(r, c), False),
            ))
            starts.append(vertex(r, c))

    return TorusLattice(
        rows=rows,
        cols=cols,
        endpoints=tuple(endpoints),
        directions=tuple(directions),
        vertex_stars=tuple(stars),
        plaquette_loops=tuple(loops),
        plaquette_starts=tuple(starts),
    )


def parse_torus(text: str) -> TorusLattice:
    """Parse 'RxC', e.g. '2x2'."""
    try:
        rows, cols = (int(part) for part in text.lower().split("x"))
    except ValueError:
        raise ArgumentError(f"Torus size must look like RxC, got {text!r}") from None
    return build_torus(rows, cols)


def site_of(lattice: TorusLattice, v: int) -> Site:
    if not 0 <= v < lattice.num_vertices:
        raise ArgumentError(f"Vertex {v} out of range for a {lattice.rows}x{lattice.cols} torus")
    return lattice.site(v)


def site_hilbert_share(lattice: TorusLattice, qudit_dim: int) -> float:
    """(|G|^E)^(1/#sites): the Hilbert-space dimension attributable to one site."""
    return math.exp(lattice.num_edges * math.log(qudit_dim) / lattice.num_vertices)


def incidence_counts(lattice: TorusLattice) -> Dict[str, Counter]:
    """How many stars, loops and sites each edge belongs to."""
    stars = Counter(e for v in range(lattice.num_vertices) for e in lattice.star_edges(v))
    loops = Counter(e for p in range(lattice.num_plaquettes) for e in lattice.loop_edges(p))
    sites = Counter(e for s in lattice.sites for e in set(s.edges))
    return {"stars": stars, "loops": loops, "sites": sites}
