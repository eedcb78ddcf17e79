"""
Square lattice on a torus.
Horizontal edges point right, vertical edges point up; plaquettes are read
counterclockwise from their bottom-left vertex.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple


class Direction(str, Enum):
    RIGHT = "right"
    UP = "up"


@dataclass(frozen=True)
class StarEdge:
    """Edge of a vertex star; outgoing edges take L+, incoming take L-."""
    edge: int
    outgoing: bool


@dataclass(frozen=True)
class LoopEdge:
    """Edge of a plaquette loop; edges along the traversal take T+, others T-."""
    edge: int
    along: bool


@dataclass(frozen=True)
class Site:
    """
    A vertex and the plaquette to its upper right.

    Edges are numbered 1..6: 1 bottom, 2 right, 3 top, 4 left of the
    plaquette; 5 and 6 the remaining (incoming) star edges.
    """

    index: int
    vertex: int
    plaquette: int
    edges: Tuple[int, int, int, int, int, int]

    @property
    def shared_edges(self) -> Tuple[int, int]:
        return self.edges[0], self.edges[3]

    def numbered(self, k: int) -> int:
        """Lattice edge carrying site number k (1-based)."""
        return self.edges[k - 1]


@dataclass(frozen=True)
class TorusLattice:
    rows: int
    cols: int
    endpoints: Tuple[Tuple[int, int], ...]  # edge -> (tail vertex, head vertex)
    directions: Tuple[Direction, ...]
    vertex_stars: Tuple[Tuple[StarEdge, ...], ...]  # star edges 1, 4, 5, 6
    plaquette_loops: Tuple[Tuple[LoopEdge, ...], ...]  # loop edges 1, 2, 3, 4
    plaquette_starts: Tuple[int, ...]

    @property
    def num_vertices(self) -> int:
        return self.rows * self.cols

    @property
    def num_plaquettes(self) -> int:
        return self.rows * self.cols

    @property
    def num_edges(self) -> int:
        return 2 * self.rows * self.cols

    def vertex_index(self, r: int, c: int) -> int:
        return (r % self.rows) * self.cols + (c % self.cols)

    def coordinates(self, v: int) -> Tuple[int, int]:
        return divmod(v, self.cols)

    def star_edges(self, v: int) -> Tuple[int, ...]:
        return tuple(s.edge for s in self.vertex_stars[v])

    def loop_edges(self, p: int) -> Tuple[int, ...]:
        return tuple(l.edge for l in self.plaquette_loops[p])

    def plaquette_corners(self, p: int) -> Tuple[int, int, int, int]:
        """Corner vertices counterclockwise from the start vertex of the plaquette."""
        r, c = self.coordinates(self.plaquette_starts[p])
        return (
            self.vertex_index(r, c),
            self.vertex_index(r, c + 1),
            self.vertex_index(r + 1, c + 1),
            self.vertex_index(r + 1, c),
        )

    @property
    def sites(self) -> List[Site]:
        return [self.site(v) for v in range(self.num_vertices)]

    def site(self, v: int) -> Site:
        # the plaquette whose bottom-left corner is v shares its index
        loop = self.loop_edges(v)
        star = self.star_edges(v)
        return Site(index=v, vertex=v, plaquette=v, edges=(loop[0], loop[1], loop[2], loop[3], star[2], star[3]))

    def to_dict(self) -> Dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "edges": [
                {"edge": e, "tail": t, "head": h, "direction": d.value}
                for e, ((t, h), d) in enumerate(zip(self.endpoints, self.directions))
            ],
            "sites": [
                {
                    "site": s.index,
                    "vertex": s.vertex,
                    "plaquette": s.plaquette,
                    "edges": list(s.edges),
                    "star": [{"edge": x.edge, "flag": "L+" if x.outgoing else "L-"} for x in self.vertex_stars[s.vertex]],
                    "loop": [{"edge": x.edge, "flag": "T+" if x.along else "T-"} for x in self.plaquette_loops[s.plaquette]],
                }
                for s in self.sites
            ],
        }
