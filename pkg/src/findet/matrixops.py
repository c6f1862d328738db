"""Polynomial matrices, the left-right group action, Fitting ideals and tangent images.

Matrices in M_{m,n} are identified with R^{mn} by flattening row-major:
entry (i, j) sits at position ``i*n + j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import List, Sequence, Tuple

from .linalg import det as field_det
from .localbasis import Ideal, Submodule
from .polyring import INF, Automorphism, Polynomial, PolyRing


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class PolyMatrix:
    ring: PolyRing
    entries: Tuple[Tuple[Polynomial, ...], ...]

    def __init__(self, ring: PolyRing, rows: Sequence[Sequence]):
        rows = tuple(tuple(ring(c) for c in row) for row in rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ShapeError("rows of different lengths")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "entries", rows)

    @classmethod
    def column(cls, ring: PolyRing, entries: Sequence) -> "PolyMatrix":
        return cls(ring, [[e] for e in entries])

    @classmethod
    def zeros(cls, ring: PolyRing, m: int, n: int) -> "PolyMatrix":
        return cls(ring, [[ring.zero] * n for _ in range(m)])

    @classmethod
    def identity(cls, ring: PolyRing, m: int) -> "PolyMatrix":
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(m)] for i in range(m)])

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    @property
    def nrows(self) -> int:
        return self.shape[0]

    @property
    def ncols(self) -> int:
        return self.shape[1]

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.entries[i][j]

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(c) for c in row) for row in self.entries) + "]"

    def flat(self) -> Tuple[Polynomial, ...]:
        return tuple(c for row in self.entries for c in row)

    def column_entries(self, j: int = 0) -> Tuple[Polynomial, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "PolyMatrix":
        m, n = self.shape
        return PolyMatrix(self.ring, [[self.entries[i][j] for i in range(m)] for j in range(n)])

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[fn(c) for c in row] for row in self.entries])

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if other.shape != self.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "PolyMatrix":
        c = self.ring(c)
        return self.map(lambda e: e * c)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        m, k = self.shape
        k2, n = other.shape
        if k != k2:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.ring.zero
        rows = []
        for i in range(m):
            row = []
            for j in range(n):
                acc = zero
                for l in range(k):
                    a, b = self.entries[i][l], other.entries[l][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return PolyMatrix(self.ring, rows)

    def ord(self):
        return min((c.ord() for c in self.flat()), default=INF)

    def in_maximal_ideal(self) -> bool:
        return all(c.ord() >= 1 for c in self.flat())

    def jet(self, k: int) -> "PolyMatrix":
        return self.map(lambda c: c.jet(k))

    def partial(self, var) -> "PolyMatrix":
        return self.map(lambda c: c.partial(var))

    def value_at_zero(self) -> List[List]:
        return [[c.constant_coefficient() for c in row] for row in self.entries]

    def entry_ideal(self) -> Ideal:
        return Ideal(self.ring, self.flat())


def parse_matrix(text: str, ring: PolyRing) -> PolyMatrix:
    """Rows separated by ``;``, entries by ``,``; brackets optional."""
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    rows = [[ring.parse(c) for c in row.split(",")] for row in body.split(";")]
    return PolyMatrix(ring, rows)


@dataclass(frozen=True)
class GroupElement:
    """(U, V, phi) acting by A -> U * phi(A) * V."""

    U: PolyMatrix
    V: PolyMatrix
    phi: Automorphism

    def __post_init__(self):
        field = self.U.ring.field
        for name, mat in (("U", self.U), ("V", self.V)):
            m, n = mat.shape
            if m != n:
                raise ShapeError(f"{name} must be square")
            if field_det(mat.value_at_zero(), field) == 0:
                raise ValueError(f"{name}(0) is not invertible")

    @classmethod
    def identity(cls, ring: PolyRing, m: int, n: int) -> "GroupElement":
        return cls(PolyMatrix.identity(ring, m), PolyMatrix.identity(ring, n), Automorphism.identity(ring))


def act_group(g: GroupElement, A: PolyMatrix) -> PolyMatrix:
    m, n = A.shape
    if g.U.shape != (m, m) or g.V.shape != (n, n):
        raise ShapeError(f"group element of shape {g.U.shape}, {g.V.shape} cannot act on {A.shape}")
    return g.U @ A.map(g.phi.apply) @ g.V


def minors(A: PolyMatrix, t: int) -> List[Polynomial]:
    """All t x t minors, by Laplace expansion along rows memoized on column subsets."""
    m, n = A.shape
    if not 1 <= t <= min(m, n):
        raise ValueError(f"minor size {t} out of range for a {m}x{n} matrix")
    entries = A.entries
    zero = A.ring.zero

    @lru_cache(maxsize=None)
    def minor(rows: Tuple[int, ...], cols: Tuple[int, ...]) -> Polynomial:
        if len(rows) == 1:
            return entries[rows[0]][cols[0]]
        r0, rest = rows[0], rows[1:]
        acc = zero
        for k, c in enumerate(cols):
            a = entries[r0][c]
            if not a:
                continue
            sub = minor(rest, cols[:k] + cols[k + 1:])
            if sub:
                term = a * sub
                acc = acc - term if k % 2 else acc + term
        return acc

    return [minor(rows, cols) for rows in combinations(range(m), t) for cols in combinations(range(n), t)]


def fitting_ideal(A: PolyMatrix, t: int) -> Ideal:
    """I_t(A): the ideal of all t x t minors."""
    return Ideal(A.ring, [d for d in minors(A, t) if d])


def jacobian(A: PolyMatrix) -> PolyMatrix:
    m, n = A.shape
    if n != 1:
        raise ShapeError("the Jacobian is defined for column matrices")
    s = A.ring.nvars
    return PolyMatrix(A.ring, [[A.entries[i][0].partial(j) for j in range(s)] for i in range(m)])


def _elementary_products(A: PolyMatrix) -> List[Tuple[Polynomial, ...]]:
    m, n = A.shape
    zero = A.ring.zero
    gens = []
    # E_{m,pq} * A: row q of A moved to row p
    for p in range(m):
        for q in range(m):
            flat = [zero] * (m * n)
            for j in range(n):
                flat[p * n + j] = A.entries[q][j]
            gens.append(tuple(flat))
    # A * E_{n,hl}: column h of A moved to column l
    for h in range(n):
        for l in range(n):
            flat = [zero] * (m * n)
            for i in range(m):
                flat[i * n + l] = A.entries[i][h]
            gens.append(tuple(flat))
    return gens


def tangent_image(A: PolyMatrix, extended: bool = True) -> Submodule:
    """Tangent image (``extended=False``) or extended tangent image in R^{mn}."""
    if not A.in_maximal_ideal():
        raise ValueError("matrix entries must lie in the maximal ideal")
    m, n = A.shape
    ring = A.ring
    gens = _elementary_products(A)
    for nu in range(ring.nvars):
        d = A.partial(nu).flat()
        if extended:
            gens.append(d)
        else:
            for x in ring.gens():
                gens.append(tuple(x * c for c in d))
    gens = [g for g in gens if any(g)]
    return Submodule(ring, m * n, gens)


def presentation_theta(A: PolyMatrix) -> PolyMatrix:
    """The m x (m^2 + s) matrix [Jac(A) | a in each of m block columns]."""
    m, n = A.shape
    if n != 1:
        raise ShapeError("presentation matrix is defined for column matrices")
    if not A.in_maximal_ideal():
        raise ValueError("matrix entries must lie in the maximal ideal")
    jac = jacobian(A)
    a = A.column_entries()
    zero = A.ring.zero
    rows = []
    for i in range(m):
        right = []
        for block in range(m):
            for k in range(m):
                right.append(a[k] if i == block else zero)
        rows.append(list(jac.entries[i]) + right)
    return PolyMatrix(A.ring, rows)


def column_span(M: PolyMatrix) -> Submodule:
    return Submodule(M.ring, M.nrows, [M.column_entries(j) for j in range(M.ncols)])
