"""Oriented cell complexes on the torus.

Conventions (fixed once, everything downstream depends on them):

* The fundamental domain is drawn with x increasing right and y increasing up.
  "Clockwise" therefore means scanning directions in the order
  +y, +x, -y, -x around a vertex, and traversing a face so that its interior
  stays on the right.
* Every edge carries an orientation v_minus -> v_plus.  Looking along the
  arrow, p_minus is the plaquette on the left and p_plus the one on the
  right.
* Square torus: horizontal edges point +x, vertical edges point +y.
* Honeycomb torus: two sublattices A and B; every edge points A -> B.
* Star lists are clockwise starting from the first edge at or after the +y
  direction.  Boundary lists are clockwise cycles rotated so the smallest
  edge index comes first; each entry also records the corner vertex at which
  the clockwise traversal of that edge begins.

The w, h >= 2 requirement keeps the two endpoints and the two side
plaquettes of every edge distinct, which the operator constructions assume.
"""

from __future__ import annotations

from dataclasses import dataclass

MINUS = "minus"
PLUS = "plus"


@dataclass(frozen=True)
class Edge:
    v_minus: int
    v_plus: int
    p_minus: int
    p_plus: int


@dataclass(frozen=True)
class OrientedLattice:
    kind: str                     # "square" | "honeycomb"
    width: int
    height: int
    n_vertices: int
    n_plaquettes: int
    edges: tuple[Edge, ...]
    # per vertex: clockwise ((edge, end-label), ...) with end-label MINUS/PLUS
    star_order: tuple[tuple[tuple[int, str], ...], ...]
    # per plaquette: clockwise ((edge, side-label), ...), min edge id first
    boundary_order: tuple[tuple[tuple[int, str], ...], ...]
    # per plaquette: corner vertex where the traversal of boundary entry i starts
    boundary_corner: tuple[tuple[int, ...], ...]

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_plaquettes


def star(lat: OrientedLattice, v: int) -> tuple[tuple[int, str], ...]:
    """Clockwise (edge, end-label) list around vertex v."""
    if not 0 <= v < lat.n_vertices:
        raise ValueError(f"vertex {v} out of range")
    return lat.star_order[v]


def boundary(lat: OrientedLattice, p: int) -> tuple[tuple[int, str], ...]:
    """Clockwise (edge, side-label) cycle of plaquette p, min edge id first."""
    if not 0 <= p < lat.n_plaquettes:
        raise ValueError(f"plaquette {p} out of range")
    return lat.boundary_order[p]


def boundary_from_vertex(lat: OrientedLattice, p: int, v: int):
    """Boundary cycle of p rotated to start at corner vertex v."""
    cyc = boundary(lat, p)
    corners = lat.boundary_corner[p]
    if v not in corners:
        raise ValueError(f"vertex {v} is not on the boundary of plaquette {p}")
    r = corners.index(v)
    k = len(cyc)
    return tuple(cyc[(r + i) % k] for i in range(k))


def boundary_from_edge(lat: OrientedLattice, p: int, e0: int):
    """Boundary cycle of p rotated to start at edge e0."""
    cyc = boundary(lat, p)
    ids = [e for e, _ in cyc]
    if e0 not in ids:
        raise ValueError(f"edge {e0} is not on the boundary of plaquette {p}")
    r = ids.index(e0)
    k = len(cyc)
    return tuple(cyc[(r + i) % k] for i in range(k))


def star_from_edge(lat: OrientedLattice, v: int, e0: int):
    """Star of v rotated to start at edge e0."""
    st = star(lat, v)
    ids = [e for e, _ in st]
    if e0 not in ids:
        raise ValueError(f"edge {e0} is not incident to vertex {v}")
    r = ids.index(e0)
    k = len(st)
    return tuple(st[(r + i) % k] for i in range(k))


def plaquette_corners(lat: OrientedLattice, p: int) -> tuple[int, ...]:
    return lat.boundary_corner[p]


def _rotate_to_min_edge(cycle, corners):
    ids = [e for e, _ in cycle]
    r = ids.index(min(ids))
    k = len(cycle)
    return (
        tuple(cycle[(r + i) % k] for i in range(k)),
        tuple(corners[(r + i) % k] for i in range(k)),
    )


def build_square_torus(w: int, h: int) -> OrientedLattice:
    """Square torus with w*h vertices, 2wh edges, wh plaquettes.

    Index layout: vertex/plaquette (x, y) -> x + w*y; horizontal edge at
    (x, y) -> x + w*y; vertical edge at (x, y) -> wh + x + w*y.
    """
    if w < 2 or h < 2:
        raise ValueError("square torus needs w, h >= 2 (self-adjacent cells otherwise)")

    def v(x, y):
        return (x % w) + w * (y % h)

    def pq(x, y):
        return (x % w) + w * (y % h)

    def hx(x, y):
        return (x % w) + w * (y % h)

    def vt(x, y):
        return w * h + (x % w) + w * (y % h)

    edges = [None] * (2 * w * h)
    for y in range(h):
        for x in range(w):
            # horizontal edge, arrow +x: north plaquette on the left
            edges[hx(x, y)] = Edge(v(x, y), v(x + 1, y), pq(x, y), pq(x, y - 1))
            # vertical edge, arrow +y: west plaquette on the left
            edges[vt(x, y)] = Edge(v(x, y), v(x, y + 1), pq(x - 1, y), pq(x, y))

    stars = []
    for y in range(h):
        for x in range(w):
            stars.append((
                (vt(x, y), MINUS),      # north
                (hx(x, y), MINUS),      # east
                (vt(x, y - 1), PLUS),   # south
                (hx(x - 1, y), PLUS),   # west
            ))

    boundaries, corners_all = [], []
    for y in range(h):
        for x in range(w):
            # clockwise from the NW corner: top, right, bottom, left
            cyc = (
                (hx(x, y + 1), PLUS),
                (vt(x + 1, y), MINUS),
                (hx(x, y), MINUS),
                (vt(x, y), PLUS),
            )
            corners = (v(x, y + 1), v(x + 1, y + 1), v(x + 1, y), v(x, y))
            cyc, corners = _rotate_to_min_edge(cyc, corners)
            boundaries.append(cyc)
            corners_all.append(corners)

    return OrientedLattice(
        kind="square", width=w, height=h,
        n_vertices=w * h, n_plaquettes=w * h,
        edges=tuple(edges),
        star_order=tuple(stars),
        boundary_order=tuple(boundaries),
        boundary_corner=tuple(corners_all),
    )


def build_honeycomb_torus(w: int, h: int) -> OrientedLattice:
    """Honeycomb torus with 2wh vertices (A and B sublattices), 3wh edges.

    Unit cell (x, y) holds vertex A (index x + w*y), vertex B (index
    wh + x + w*y) and three edges e(x, y, k) -> 3*(x + w*y) + k:

        k=0: A(x,y) -> B(x,y)     (up-right bond)
        k=1: A(x,y) -> B(x-1,y)   (up-left bond)
        k=2: A(x,y) -> B(x,y-1)   (down bond)

    Plaquette p(x, y) is the hexagon with clockwise corner cycle
    A(x,y), B(x,y), A(x+1,y), B(x+1,y-1), A(x+1,y-1), B(x,y-1).
    """
    if w < 2 or h < 2:
        raise ValueError("honeycomb torus needs w, h >= 2 (self-adjacent cells otherwise)")

    def va(x, y):
        return (x % w) + w * (y % h)

    def vb(x, y):
        return w * h + (x % w) + w * (y % h)

    def pq(x, y):
        return (x % w) + w * (y % h)

    def e(x, y, k):
        return 3 * ((x % w) + w * (y % h)) + k

    edges = [None] * (3 * w * h)
    for y in range(h):
        for x in range(w):
            edges[e(x, y, 0)] = Edge(va(x, y), vb(x, y), pq(x - 1, y + 1), pq(x, y))
            edges[e(x, y, 1)] = Edge(va(x, y), vb(x - 1, y), pq(x - 1, y), pq(x - 1, y + 1))
            edges[e(x, y, 2)] = Edge(va(x, y), vb(x, y - 1), pq(x, y), pq(x - 1, y))

    stars = [None] * (2 * w * h)
    for y in range(h):
        for x in range(w):
            # A site: bonds at 30, 270, 150 degrees, clockwise from +y
            stars[va(x, y)] = (
                (e(x, y, 0), MINUS),
                (e(x, y, 2), MINUS),
                (e(x, y, 1), MINUS),
            )
            # B site: bonds at 90, 330, 210 degrees, clockwise from +y
            stars[vb(x, y)] = (
                (e(x, y + 1, 2), PLUS),
                (e(x + 1, y, 1), PLUS),
                (e(x, y, 0), PLUS),
            )

    boundaries, corners_all = [], []
    for y in range(h):
        for x in range(w):
            cyc = (
                (e(x, y, 0), PLUS),
                (e(x + 1, y, 1), MINUS),
                (e(x + 1, y, 2), PLUS),
                (e(x + 1, y - 1, 0), MINUS),
                (e(x + 1, y - 1, 1), PLUS),
                (e(x, y, 2), MINUS),
            )
            corners = (
                va(x, y), vb(x, y), va(x + 1, y),
                vb(x + 1, y - 1), va(x + 1, y - 1), vb(x, y - 1),
            )
            cyc, corners = _rotate_to_min_edge(cyc, corners)
            boundaries.append(cyc)
            corners_all.append(corners)

    return OrientedLattice(
        kind="honeycomb", width=w, height=h,
        n_vertices=2 * w * h, n_plaquettes=w * h,
        edges=tuple(edges),
        star_order=tuple(stars),
        boundary_order=tuple(boundaries),
        boundary_corner=tuple(corners_all),
    )


def build_lattice(kind: str, w: int, h: int) -> OrientedLattice:
    if kind == "square":
        return build_square_torus(w, h)
    if kind == "honeycomb":
        return build_honeycomb_torus(w, h)
    raise ValueError(f"unknown lattice kind {kind!r}")
