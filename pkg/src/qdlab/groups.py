"""Finite group arithmetic on dense index tables.

Group elements are the integers ``0 .. order-1`` with the identity pinned at
index 0, so an element doubles as a basis-state label of the local edge space
C^|G|.  All structure is carried by two integer tables: the Cayley table
``mul`` and the inverse table ``inv``.  Instances are immutable and safe to
share between threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    order: int
    mul: np.ndarray  # shape (order, order), mul[a, b] = index of a*b
    inv: np.ndarray  # shape (order,), inv[a] = index of a^-1
    identity: int = 0

    def __post_init__(self):
        mul = np.ascontiguousarray(np.asarray(self.mul, dtype=np.int64))
        inv = np.ascontiguousarray(np.asarray(self.inv, dtype=np.int64))
        if self.order < 1:
            raise ValueError("group order must be positive")
        if mul.shape != (self.order, self.order):
            raise ValueError(f"mul table shape {mul.shape} != ({self.order}, {self.order})")
        if inv.shape != (self.order,):
            raise ValueError(f"inv table shape {inv.shape} != ({self.order},)")
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "inv", inv)
        mul.setflags(write=False)
        inv.setflags(write=False)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteGroup)
            and self.order == other.order
            and np.array_equal(self.mul, other.mul)
        )

    def __hash__(self):
        return hash((self.name, self.order))

    def elements(self) -> range:
        return range(self.order)

    def product(self, seq) -> int:
        """Left-to-right product of a sequence of element indices."""
        acc = self.identity
        for a in seq:
            acc = int(self.mul[acc, a])
        return acc

    def conjugate(self, g: int, h: int) -> int:
        """Return g^-1 h g."""
        return int(self.mul[self.mul[self.inv[g], h], g])

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))


def make_cyclic(n: int) -> FiniteGroup:
    """Cyclic group Z_n with mul(a, b) = (a + b) mod n."""
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    a = np.arange(n)
    mul = (a[:, None] + a[None, :]) % n
    inv = (-a) % n
    return FiniteGroup(name=f"Z{n}", order=n, mul=mul, inv=inv)


def _perm_group(name: str, perms: list[tuple[int, ...]]) -> FiniteGroup:
    # mul(a, b) = a o b, i.e. apply b first, then a.
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    mul = np.zeros((n, n), dtype=np.int64)
    inv = np.zeros(n, dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            comp = tuple(p[q[k]] for k in range(len(p)))
            mul[i, j] = index[comp]
        pinv = tuple(sorted(range(len(p)), key=lambda k: p[k]))
        inv[i] = index[pinv]
    return FiniteGroup(name=name, order=n, mul=mul, inv=inv)


def make_symmetric_3() -> FiniteGroup:
    """Symmetric group S3 as permutations of {0,1,2} in lexicographic order.

    Lexicographic order puts the identity permutation at index 0.
    """
    perms = [p for p in permutations(range(3))]
    return _perm_group("S3", perms)


def make_dihedral_4() -> FiniteGroup:
    """Dihedral group D4 (order 8) acting on the corners 0..3 of a square.

    Element order: e, r, r^2, r^3, s, s*r, s*r^2, s*r^3 with r the 90-degree
    rotation (0->1->2->3) and s the reflection swapping corners 1 and 3.
    """
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)

    def comp(p, q):
        return tuple(p[q[k]] for k in range(4))

    e = (0, 1, 2, 3)
    rots = [e]
    for _ in range(3):
        rots.append(comp(r, rots[-1]))
    perms = rots + [comp(s, rk) for rk in rots]
    return _perm_group("D4", perms)


def verify_group_axioms(g: FiniteGroup) -> bool:
    """True iff the tables define a group with identity at index 0.

    Checks the four axioms: associativity, two-sided identity, inverses, and
    that every row/column of mul is a permutation.  Shape mismatches raise
    ValueError (they indicate malformed input, not a failed axiom).
    """
    n = g.order
    mul, inv = g.mul, g.inv
    if mul.shape != (n, n) or inv.shape != (n,):
        raise ValueError("table shapes inconsistent with group order")
    if mul.min() < 0 or mul.max() >= n or inv.min() < 0 or inv.max() >= n:
        return False
    ids = np.arange(n)
    if not (np.array_equal(mul[0], ids) and np.array_equal(mul[:, 0], ids)):
        return False
    if not np.array_equal(mul[ids, inv], np.zeros(n, dtype=np.int64)):
        return False
    rows_ok = all(len(np.unique(mul[a])) == n for a in range(n))
    cols_ok = all(len(np.unique(mul[:, a])) == n for a in range(n))
    if not (rows_ok and cols_ok):
        return False
    # mul[mul[a,b],c] vs mul[a,mul[b,c]] for all triples, vectorized.
    left = mul[mul, :]            # [a,b,c] -> mul[mul[a,b], c]
    right = mul[:, mul]           # [a,b,c] -> mul[a, mul[b,c]]
    return bool(np.array_equal(left, right))


def group_from_name(name: str) -> FiniteGroup:
    """Resolve a catalog name: Z<n> (any n >= 1), S3, or D4."""
    name = name.strip()
    if name.upper() == "S3":
        return make_symmetric_3()
    if name.upper() == "D4":
        return make_dihedral_4()
    m = re.fullmatch(r"[Zz](\d+)", name)
    if m:
        return make_cyclic(int(m.group(1)))
    raise ValueError(f"unknown group name {name!r} (expected Z<n>, S3, or D4)")
