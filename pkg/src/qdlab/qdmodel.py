"""Quantum double Hamiltonians over a finite group on an oriented lattice.

Per-edge operators on C^|G| (z, g, h range over group element indices):

    L+(g) = sum_z |gz><z|        left multiplication by g
    L-(g) = sum_z |z g^-1><z|    right multiplication by g^-1
    T+(h) = |h><h|               projector
    T-(h) = |h^-1><h^-1|

An edge e = (v-, v+) oriented v- -> v+ with plaquettes p- (left) and p+
(right) resolves site-attached operators as

    L(g; e, v-) = L-(g)   L(g; e, v+) = L+(g)
    T(h; e, p-) = T-(h)   T(h; e, p+) = T+(h)

The gauge transformation A_g(v) multiplies every star edge by the resolved
L(g), and the magnetic charge B_g(v, p) projects onto boundary configurations
whose side-resolved values u_0..u_{k-1} (clockwise from v) satisfy
u_{k-1} ... u_1 u_0 = g.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np
import scipy.sparse as sp

from .groups import FiniteGroup
from .lattice import MINUS, PLUS, OrientedLattice, boundary_from_vertex, star
from .linop import Operator, SystemLayout, embed, identity, make_layout

LT_KINDS = ("L+", "L-", "T+", "T-")


def lt_matrix(group: FiniteGroup, kind: str, g: int) -> np.ndarray:
    """Dense |G|x|G| matrix of one of the four per-edge operators."""
    n = group.order
    if not 0 <= g < n:
        raise ValueError(f"element {g} out of range for {group.name}")
    m = np.zeros((n, n), dtype=np.complex128)
    if kind == "L+":
        m[group.mul[g], np.arange(n)] = 1.0
    elif kind == "L-":
        m[group.mul[np.arange(n), group.inv[g]], np.arange(n)] = 1.0
    elif kind == "T+":
        m[g, g] = 1.0
    elif kind == "T-":
        gi = group.inv[g]
        m[gi, gi] = 1.0
    else:
        raise ValueError(f"unknown operator kind {kind!r}")
    return m


def resolved_l(group: FiniteGroup, end_label: str, g: int) -> np.ndarray:
    """L(g) resolved by which end of the edge the vertex sits on."""
    return lt_matrix(group, "L-" if end_label == MINUS else "L+", g)


def resolved_t(group: FiniteGroup, side_label: str, h: int) -> np.ndarray:
    """T(h) resolved by which side of the edge the plaquette sits on."""
    return lt_matrix(group, "T-" if side_label == MINUS else "T+", h)


def side_value(group: FiniteGroup, side_label: str, z: np.ndarray) -> np.ndarray:
    """Group value u carried by edge state z as seen from the given side.

    T(h; e, p) = |u^-1(h)| ... concretely the projector T resolved on this
    side fires on state z exactly when u(z) = h, with u(z) = z on the plus
    side and z^-1 on the minus side.
    """
    return z if side_label == PLUS else group.inv[z]


def kron_chain(mats) -> sp.csr_matrix:
    """Kronecker chain with mats[0] the fastest-varying factor."""
    mats = [sp.csr_matrix(m) for m in mats]
    return reduce(lambda a, b: sp.kron(b, a, format="csr"), mats)


@dataclass(frozen=True)
class QdModel:
    group: FiniteGroup
    lattice: OrientedLattice
    edges: tuple[int, ...]          # edge ids carried by the layout, in order
    layout: SystemLayout

    def edge_factor(self, e: int) -> str:
        if e not in self.edges:
            raise ValueError(f"edge {e} is not part of this model's layout")
        return f"e{e}"


def make_model(group: FiniteGroup, lattice: OrientedLattice, edges=None,
               extra_factors=()) -> QdModel:
    """Model over all lattice edges, or a listed subset (single-cell mode).

    ``extra_factors`` appends auxiliary (id, dim, role) factors after the
    edges; the ribbon and gadget layers use this for registers and clocks.
    """
    if edges is None:
        edges = tuple(range(lattice.n_edges))
    else:
        edges = tuple(edges)
        if len(set(edges)) != len(edges):
            raise ValueError("duplicate edge ids")
        for e in edges:
            if not 0 <= e < lattice.n_edges:
                raise ValueError(f"edge {e} out of range")
    factors = [(f"e{e}", group.order, "edge") for e in edges]
    factors.extend(extra_factors)
    return QdModel(group, lattice, edges, make_layout(*factors))


def gauge_transformation(model: QdModel, v: int, g: int) -> Operator:
    """A_g(v): resolved L(g) on every edge of star(v)."""
    group = model.group
    entries = star(model.lattice, v)
    mats = [resolved_l(group, lab, g) for _, lab in entries]
    sites = [model.edge_factor(e) for e, _ in entries]
    return embed(model.layout, sites, kron_chain(mats))


def magnetic_charge(model: QdModel, v: int, p: int, g: int) -> Operator:
    """B_g(v, p): projector onto boundary flux g, read clockwise from v."""
    group = model.group
    cyc = boundary_from_vertex(model.lattice, p, v)
    k = len(cyc)
    ldim = group.order ** k
    idx = np.arange(ldim, dtype=np.int64)
    acc = np.zeros(ldim, dtype=np.int64)  # identity
    for i, (e, lab) in enumerate(cyc):
        z = (idx // group.order**i) % group.order
        u = side_value(group, lab, z)
        acc = group.mul[u, acc]           # left-multiply: u_i * (u_{i-1}...u_0)
    diag = (acc == g).astype(np.complex128)
    sites = [model.edge_factor(e) for e, _ in cyc]
    return embed(model.layout, sites, sp.diags(diag, format="csr"))


def vertex_operator(model: QdModel, v: int) -> Operator:
    """A(v): group average of the gauge transformations at v (a projector)."""
    group = model.group
    acc = gauge_transformation(model, v, 0)
    for g in range(1, group.order):
        acc = acc + gauge_transformation(model, v, g)
    return acc * (1.0 / group.order)


def plaquette_operator(model: QdModel, p: int) -> Operator:
    """B(p) = B_1(v, p); the starting corner does not matter for g = 1."""
    v0 = model.lattice.boundary_corner[p][0]
    return magnetic_charge(model, v0, p, model.group.identity)


def build_hqd(model: QdModel) -> Operator:
    """H = -sum_v A(v) - sum_p B(p) over the full lattice."""
    if model.edges != tuple(range(model.lattice.n_edges)):
        raise ValueError("the full Hamiltonian needs the all-edges layout")
    h = None
    for v in range(model.lattice.n_vertices):
        term = vertex_operator(model, v)
        h = term if h is None else h + term
    for p in range(model.lattice.n_plaquettes):
        h = h + plaquette_operator(model, p)
    return -1.0 * h


def site_local_edges(lattice: OrientedLattice, kind: str, site: int) -> tuple[int, ...]:
    """Edge ids carried by a single-cell model around one vertex/plaquette."""
    if kind == "vertex":
        return tuple(e for e, _ in star(lattice, site))
    if kind == "plaquette":
        return tuple(e for e, _ in lattice.boundary_order[site])
    raise ValueError(f"unknown site kind {kind!r}")
