"""Sparse complex operator algebra over registered tensor-product spaces.

Basis convention: a joint basis state is a mixed-radix integer whose digits
are the per-factor basis labels, with factor 0 the FASTEST-varying digit:

    index = d_0 + D_0*(d_1 + D_1*(d_2 + ...))

Written as a ket string the factor-0 digit is rightmost, so X acting on
factor 0 of two qubits maps |00> to |01>.

Operators are immutable once built: every arithmetic helper returns a new
instance and prunes entries below DROP_TOL.  Dense linear algebra is used up
to DENSE_EIG_CUTOFF; above that, eigen-solves go through shift-inverted
Lanczos with explicit residual checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import DegenerateCut, NumericFailure

DROP_TOL = 1e-14
DENSE_EIG_CUTOFF = 4096
DENSE_NORM_CUTOFF = 1024


@dataclass(frozen=True)
class Factor:
    id: str
    dim: int
    role: str  # "edge" | "register" | "clock"


@dataclass(frozen=True)
class SystemLayout:
    factors: tuple[Factor, ...]

    def __post_init__(self):
        ids = [f.id for f in self.factors]
        if len(set(ids)) != len(ids):
            raise ValueError("factor ids must be unique")
        if any(f.dim < 1 for f in self.factors):
            raise ValueError("factor dimensions must be >= 1")

    @property
    def total_dim(self) -> int:
        d = 1
        for f in self.factors:
            d *= f.dim
        return d

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.dim for f in self.factors)

    def position(self, factor_id: str) -> int:
        for i, f in enumerate(self.factors):
            if f.id == factor_id:
                return i
        raise ValueError(f"unknown factor id {factor_id!r}")

    def strides(self) -> tuple[int, ...]:
        out, s = [], 1
        for f in self.factors:
            out.append(s)
            s *= f.dim
        return tuple(out)

    def digits(self, idx: np.ndarray, position: int) -> np.ndarray:
        """Digit of basis index array at the given factor position."""
        stride = self.strides()[position]
        return (idx // stride) % self.factors[position].dim

    def without(self, factor_id: str) -> "SystemLayout":
        return SystemLayout(tuple(f for f in self.factors if f.id != factor_id))


def make_layout(*factors: tuple[str, int, str]) -> SystemLayout:
    return SystemLayout(tuple(Factor(i, d, r) for (i, d, r) in factors))


def _clean(mat: sp.csr_matrix) -> sp.csr_matrix:
    mat = mat.tocsr()
    if mat.nnz:
        mask = np.abs(mat.data) < DROP_TOL
        if mask.any():
            mat.data[mask] = 0.0
            mat.eliminate_zeros()
    mat.sort_indices()
    return mat


class Operator:
    """A sparse complex matrix tied to a SystemLayout."""

    __slots__ = ("layout", "mat")

    def __init__(self, layout: SystemLayout, mat):
        mat = sp.csr_matrix(mat, dtype=np.complex128)
        if mat.shape != (layout.total_dim, layout.total_dim):
            raise ValueError(f"matrix shape {mat.shape} != layout dim {layout.total_dim}")
        self.layout = layout
        self.mat = _clean(mat)

    @property
    def dim(self) -> int:
        return self.layout.total_dim

    @property
    def nnz(self) -> int:
        return self.mat.nnz

    def _check(self, other: "Operator"):
        if self.layout is not other.layout and self.layout != other.layout:
            raise ValueError("operators live on different layouts")

    def __add__(self, other):
        self._check(other)
        return Operator(self.layout, self.mat + other.mat)

    def __sub__(self, other):
        self._check(other)
        return Operator(self.layout, self.mat - other.mat)

    def __mul__(self, scalar):
        return Operator(self.layout, self.mat * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return self * (-1.0)

    def __matmul__(self, other):
        self._check(other)
        return Operator(self.layout, self.mat @ other.mat)

    def adjoint(self) -> "Operator":
        return Operator(self.layout, self.mat.conjugate().transpose())

    def trace(self) -> complex:
        return complex(self.mat.diagonal().sum())

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.mat.data)) if self.mat.nnz else 0.0

    def dense(self) -> np.ndarray:
        return self.mat.toarray()

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        diff = self.mat - self.mat.conjugate().transpose()
        scale = max(1.0, self.frobenius())
        return (np.max(np.abs(diff.data)) if diff.nnz else 0.0) <= tol * scale

    def __repr__(self):
        return f"Operator(dim={self.dim}, nnz={self.nnz})"


def identity(layout: SystemLayout) -> Operator:
    return Operator(layout, sp.identity(layout.total_dim, dtype=np.complex128, format="csr"))


def zero(layout: SystemLayout) -> Operator:
    return Operator(layout, sp.csr_matrix((layout.total_dim, layout.total_dim), dtype=np.complex128))


def from_diagonal(layout: SystemLayout, diag) -> Operator:
    diag = np.asarray(diag, dtype=np.complex128)
    if diag.shape != (layout.total_dim,):
        raise ValueError("diagonal length mismatch")
    return Operator(layout, sp.diags(diag, format="csr"))


def mul(a: Operator, b: Operator) -> Operator:
    return a @ b


def add(a: Operator, b: Operator) -> Operator:
    return a + b


def scale(a: Operator, c) -> Operator:
    return a * c


def adjoint(a: Operator) -> Operator:
    return a.adjoint()


def commutator(a: Operator, b: Operator) -> Operator:
    return a @ b - b @ a


def embed(layout: SystemLayout, sites, local) -> Operator:
    """Embed a local operator acting on the named factors, identity elsewhere.

    ``local`` is indexed in the same fastest-first convention restricted to
    the listed sites: the FIRST listed site is the fastest-varying digit of
    the local index.
    """
    sites = list(sites)
    if len(set(sites)) != len(sites):
        raise ValueError("site list contains duplicates")
    pos = [layout.position(s) for s in sites]
    ldim = 1
    for p in pos:
        ldim *= layout.factors[p].dim
    local = sp.csr_matrix(local, dtype=np.complex128)
    if local.shape != (ldim, ldim):
        raise ValueError(f"local operator shape {local.shape} != ({ldim}, {ldim})")

    total = layout.total_dim
    idx = np.arange(total, dtype=np.int64)
    rest_pos = [q for q in range(len(layout.factors)) if q not in pos]
    # reordered index = local digits (fastest, in listed order) then the rest
    reordered = np.zeros(total, dtype=np.int64)
    s = 1
    for p in pos:
        reordered += layout.digits(idx, p) * s
        s *= layout.factors[p].dim
    for q in rest_pos:
        reordered += layout.digits(idx, q) * s
        s *= layout.factors[q].dim

    rest_dim = total // ldim
    big = sp.kron(sp.identity(rest_dim, dtype=np.complex128, format="csr"), local, format="csr")
    perm = sp.csr_matrix(
        (np.ones(total), (reordered, idx)), shape=(total, total), dtype=np.complex128
    )
    return Operator(layout, perm.T @ big @ perm)


def embed_vector(layout: SystemLayout, sites, local_vec) -> np.ndarray:
    """Product state: local vector on the listed factors, |0> elsewhere."""
    sites = list(sites)
    vec = np.zeros(layout.total_dim, dtype=np.complex128)
    local_vec = np.asarray(local_vec, dtype=np.complex128).ravel()
    pos = [layout.position(s) for s in sites]
    idx = np.arange(layout.total_dim, dtype=np.int64)
    sel = np.ones(layout.total_dim, dtype=bool)
    for q in range(len(layout.factors)):
        if q not in pos:
            sel &= layout.digits(idx, q) == 0
    loc = np.zeros(layout.total_dim, dtype=np.int64)
    s = 1
    for p in pos:
        loc += layout.digits(idx, p) * s
        s *= layout.factors[p].dim
    vec[sel] = local_vec[loc[sel]]
    return vec


def fixing_isometry(layout: SystemLayout, factor_id: str, vec) -> tuple[SystemLayout, sp.csr_matrix]:
    """Isometry K from the layout-without-factor into the full layout,
    inserting the given (normalized) state on that factor.  K†K = I, and
    K† X K is the partial expectation <vec| X |vec> on the removed factor."""
    p = layout.position(factor_id)
    vec = np.asarray(vec, dtype=np.complex128).ravel()
    fdim = layout.factors[p].dim
    if vec.shape != (fdim,):
        raise ValueError("vector length does not match factor dimension")
    total = layout.total_dim
    idx = np.arange(total, dtype=np.int64)
    digit = layout.digits(idx, p)
    stride = layout.strides()[p]
    below = idx % stride
    above = idx // (stride * fdim)
    reduced_idx = below + stride * above
    data = vec[digit]
    keep = data != 0
    K = sp.csr_matrix(
        (data[keep], (idx[keep], reduced_idx[keep])),
        shape=(total, total // fdim), dtype=np.complex128,
    )
    return layout.without(factor_id), K


def partial_expectation(op: Operator, factor_id: str, vec) -> Operator:
    """<vec|_f op |vec>_f as an operator on the layout without factor f."""
    reduced_layout, K = fixing_isometry(op.layout, factor_id, vec)
    return Operator(reduced_layout, K.conjugate().transpose() @ op.mat @ K)


def operator_norm(a: Operator, tol: float = 1e-12) -> float:
    """Largest singular value (spectral norm)."""
    return _spectral_norm(a.mat, tol=tol)


def _spectral_norm(mat: sp.csr_matrix, tol: float = 1e-12) -> float:
    if mat.nnz == 0:
        return 0.0
    n = mat.shape[0]
    if n <= DENSE_NORM_CUTOFF:
        return float(np.linalg.norm(mat.toarray(), 2))
    fro = float(np.linalg.norm(mat.data))
    gram = (mat.conjugate().transpose() @ mat).tocsr()
    rng = np.random.default_rng(7)
    v0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    try:
        w = spla.eigsh(gram, k=1, which="LA", v0=v0, maxiter=5000, tol=tol,
                       return_eigenvectors=False)
        return float(np.sqrt(max(w[0].real, 0.0)))
    except Exception:
        # power iteration fallback; converges to the norm from below
        x = v0 / np.linalg.norm(v0)
        est = 0.0
        for _ in range(1000):
            y = gram @ x
            ny = np.linalg.norm(y)
            if ny == 0.0:
                return 0.0
            new = np.sqrt(ny)
            x = y / ny
            if abs(new - est) <= tol * max(new, 1.0):
                est = new
                break
            est = new
        return float(min(est, fro))


def _check_hermitian(h: Operator):
    if not h.is_hermitian(1e-10):
        raise ValueError("operator is not Hermitian within tolerance 1e-10")


def lowest_eigenpairs(h: Operator, d: int) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues/vectors of the d lowest levels, ascending, residuals <= 1e-8."""
    _check_hermitian(h)
    n = h.dim
    if not 1 <= d <= n:
        raise ValueError(f"requested {d} eigenpairs of a dim-{n} operator")
    if n <= DENSE_EIG_CUTOFF or d > n - 2:
        w, v = scipy.linalg.eigh(h.dense())
        w, v = w[:d].copy(), v[:, :d].copy()
    else:
        w, v = _iterative_lowest(h.mat, d)
    _validate_eigenpairs(h, w, v)
    return w, v


def _iterative_lowest(mat: sp.csr_matrix, d: int):
    n = mat.shape[0]
    rng = np.random.default_rng(11)
    v0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    try:
        wmin = spla.eigsh(mat, k=1, which="SA", v0=v0, maxiter=10000,
                          tol=1e-7, return_eigenvectors=False)[0].real
        sigma = wmin - 0.5
        w, v = spla.eigsh(mat, k=d, sigma=sigma, which="LM", v0=v0, maxiter=10000)
    except Exception as exc:  # ARPACK breakdowns etc.
        raise NumericFailure(f"sparse eigensolver failed: {exc}") from exc
    order = np.argsort(w)
    w, v = w[order], v[:, order]
    # Rayleigh-Ritz refinement on the converged subspace
    q, _ = np.linalg.qr(v)
    small = q.conj().T @ (mat @ q)
    small = 0.5 * (small + small.conj().T)
    ws, vs = np.linalg.eigh(small)
    return ws, q @ vs


def _validate_eigenpairs(h: Operator, w, v):
    res = h.mat @ v - v * w[None, :]
    worst = float(np.max(np.linalg.norm(res, axis=0))) if v.size else 0.0
    if worst > 1e-8:
        raise NumericFailure(f"eigenpair residual {worst:.3e} exceeds 1e-8")


def spectral_projector(h: Operator, d: int) -> Operator:
    """Rank-d orthogonal projector onto the span of the d lowest eigenstates."""
    n = h.dim
    if d == n:
        return identity(h.layout)
    w_ext, v_ext = lowest_eigenpairs(h, min(d + 1, n))
    gap = w_ext[d] - w_ext[d - 1]
    if gap <= 1e-8:
        raise DegenerateCut(f"gap {gap:.3e} at cut d={d} is below 1e-8")
    v = v_ext[:, :d]
    return Operator(h.layout, sp.csr_matrix(v @ v.conj().T))


def effective_hamiltonian_exact(h: Operator, d: int) -> Operator:
    """Sum of E_i |phi_i><phi_i| over the d lowest eigenpairs of h."""
    w, v = lowest_eigenpairs(h, min(d + 1, h.dim) if d < h.dim else d)
    if d < h.dim:
        gap = w[d] - w[d - 1]
        if gap <= 1e-8:
            raise DegenerateCut(f"gap {gap:.3e} at cut d={d} is below 1e-8")
    w, v = w[:d], v[:, :d]
    return Operator(h.layout, sp.csr_matrix((v * w[None, :]) @ v.conj().T))


def dump_operator(op: Operator, path) -> None:
    """Write sparse triplets: header "dim nnz", rows "row col re im"."""
    coo = op.mat.tocoo()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{op.dim} {coo.nnz}\n")
        for r, c, v in zip(coo.row, coo.col, coo.data):
            fh.write(f"{r} {c} {v.real:.17g} {v.imag:.17g}\n")


def load_operator(path, layout: SystemLayout) -> Operator:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().split()
        dim, nnz = int(header[0]), int(header[1])
        if dim != layout.total_dim:
            raise ValueError(f"stored dim {dim} != layout dim {layout.total_dim}")
        rows = np.zeros(nnz, dtype=np.int64)
        cols = np.zeros(nnz, dtype=np.int64)
        vals = np.zeros(nnz, dtype=np.complex128)
        for k in range(nnz):
            parts = fh.readline().split()
            rows[k], cols[k] = int(parts[0]), int(parts[1])
            vals[k] = float(parts[2]) + 1j * float(parts[3])
    return Operator(layout, sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim)))
