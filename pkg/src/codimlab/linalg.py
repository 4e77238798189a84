"""Exact dense linear algebra over the scalar fields.

Matrices are small here (dimensions are bounded by dim L and its low
tensor powers), so the representation is a plain tuple of row tuples of
Scalars.  Rank over Q goes through fraction-free Bareiss elimination on
an integer-scaled copy to keep intermediate entries from exploding;
over a cyclotomic field it falls back to ordinary exact Gaussian
elimination.  Subspaces are value objects: two subspaces are equal
exactly when their reduced row echelon bases coincide.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from codimlab.scalar import FieldSpec, Scalar


class MatrixExact:
    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: FieldSpec, data):
        data = tuple(tuple(x for x in row) for row in data)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", len(data[0]) if data else 0)
        for row in data:
            if len(row) != self.cols:
                raise ValueError("ragged rows")

    def __setattr__(self, *a):
        raise AttributeError("MatrixExact is immutable")

    @classmethod
    def zeros(cls, field, rows, cols):
        z = field.zero()
        return cls(field, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero(), field.one()
        return cls(field, [[o if i == j else z for j in range(n)]
                           for i in range(n)])

    @classmethod
    def from_rows(cls, field, rows):
        return cls(field, rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def column(self, j):
        return tuple(self.data[i][j] for i in range(self.rows))

    def __eq__(self, other):
        return (isinstance(other, MatrixExact)
                and self.field == other.field and self.data == other.data)

    def __hash__(self):
        return hash((self.field, self.data))

    def __add__(self, other):
        return MatrixExact(self.field, [
            [a + b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other):
        return MatrixExact(self.field, [
            [a - b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.data, other.data)])

    def __neg__(self):
        return MatrixExact(self.field, [[-a for a in r] for r in self.data])

    def scale(self, c) -> "MatrixExact":
        return MatrixExact(self.field, [[c * a for a in r]
                                        for r in self.data])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        z = self.field.zero()
        out = []
        for i in range(self.rows):
            ri = self.data[i]
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    if ri[k]:
                        acc = acc + ri[k] * other.data[k][j]
                row.append(acc)
            out.append(row)
        return MatrixExact(self.field, out)

    def apply(self, vec):
        """Matrix times column vector, given and returned as a tuple."""
        z = self.field.zero()
        out = []
        for i in range(self.rows):
            acc = z
            ri = self.data[i]
            for k in range(self.cols):
                if ri[k] and vec[k]:
                    acc = acc + ri[k] * vec[k]
            out.append(acc)
        return tuple(out)

    def transpose(self):
        return MatrixExact(self.field,
                           [[self.data[i][j] for i in range(self.rows)]
                            for j in range(self.cols)])

    def trace(self):
        acc = self.field.zero()
        for i in range(min(self.rows, self.cols)):
            acc = acc + self.data[i][i]
        return acc

    def is_zero(self):
        return not any(any(r) for r in self.data)

    def rref(self):
        """Reduced row echelon form, returns (matrix, pivot columns)."""
        reduced, pivots = _rref_rows(self.field,
                                     [list(r) for r in self.data], self.cols)
        z = self.field.zero()
        padded = list(reduced)
        while len(padded) < self.rows:
            padded.append([z] * self.cols)
        return MatrixExact(self.field, padded), tuple(pivots)

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        if self.field.order == 1:
            return _bareiss_rank_rational(self.data)
        _, pivots = _rref_rows(self.field,
                               [list(r) for r in self.data], self.cols)
        return len(pivots)

    def kernel(self) -> "Subspace":
        """Right kernel {x : M x = 0} as a subspace of F^cols."""
        reduced, pivots = _rref_rows(self.field,
                                     [list(r) for r in self.data], self.cols)
        z, o = self.field.zero(), self.field.one()
        free = [j for j in range(self.cols) if j not in pivots]
        basis = []
        for j in free:
            vec = [z] * self.cols
            vec[j] = o
            for r, pc in enumerate(pivots):
                vec[pc] = -reduced[r][j]
            basis.append(vec)
        return Subspace(self.field, self.cols, basis)

    def solve(self, rhs):
        """One solution x of M x = rhs, or None if inconsistent."""
        aug = [list(r) + [b] for r, b in zip(self.data, rhs)]
        reduced, pivots = _rref_rows(self.field, aug, self.cols + 1)
        if self.cols in pivots:
            return None
        z = self.field.zero()
        x = [z] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = reduced[r][self.cols]
        return tuple(x)

    def det(self):
        if self.rows != self.cols:
            raise ValueError("det needs a square matrix")
        work = [list(r) for r in self.data]
        n = self.rows
        sign = 1
        acc = self.field.one()
        for col in range(n):
            piv = next((r for r in range(col, n) if work[r][col]), None)
            if piv is None:
                return self.field.zero()
            if piv != col:
                work[col], work[piv] = work[piv], work[col]
                sign = -sign
            lead = work[col][col]
            acc = acc * lead
            inv = lead.inverse()
            for r in range(col + 1, n):
                if work[r][col]:
                    f = work[r][col] * inv
                    work[r] = [a - f * b
                               for a, b in zip(work[r], work[col])]
        return acc if sign > 0 else -acc

    def __repr__(self):
        body = "; ".join(" ".join(repr(x) for x in row) for row in self.data)
        return f"MatrixExact[{body}]"


def _rref_rows(field, work, cols):
    """In-place Gauss-Jordan on a list of scalar row lists.

    Returns (nonzero reduced rows, pivot column list).  Deterministic:
    scans columns left to right, takes the first nonzero entry.
    """
    pivots = []
    rank = 0
    for col in range(cols):
        piv = None
        for r in range(rank, len(work)):
            if work[r][col]:
                piv = r
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = work[rank][col].inverse()
        work[rank] = [inv * x for x in work[rank]]
        prow = work[rank]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], prow)]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return work[:rank], pivots


def _bareiss_rank_rational(data) -> int:
    """Rank over Q by fraction-free elimination on integer-scaled rows."""
    int_rows = []
    for row in data:
        fr = [x.coeffs[0] for x in row]
        if not any(fr):
            continue
        scale = 1
        for v in fr:
            if v.denominator != 1:
                scale = scale * v.denominator // gcd(scale, v.denominator)
        ints = [int(v * scale) for v in fr]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        int_rows.append(ints)
    return bareiss_rank_int(int_rows)


def bareiss_rank_int(rows: list[list[int]]) -> int:
    """Fraction-free Bareiss rank of an integer matrix.

    Mutates its argument.  Exact divisions by the previous pivot keep
    entries at the size of minors instead of their products.
    """
    if not rows:
        return 0
    cols = len(rows[0])
    rank = 0
    prev = 1
    for col in range(cols):
        piv = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        lead = prow[col]
        for r in range(rank + 1, len(rows)):
            row = rows[r]
            f = row[col]
            # every row is rescaled by lead/prev, even where f == 0,
            # or the exact-division invariant breaks
            for j in range(col, cols):
                row[j] = (lead * row[j] - f * prow[j]) // prev
        prev = lead
        rank += 1
        if rank == len(rows):
            break
    return rank


class Subspace:
    """Subspace of F^ambient stored by its canonical RREF basis."""

    __slots__ = ("field", "ambient", "basis")

    def __init__(self, field: FieldSpec, ambient: int, vectors):
        reduced, _ = _rref_rows(field, [list(v) for v in vectors], ambient)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis",
                           tuple(tuple(r) for r in reduced))

    def __setattr__(self, *a):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient, [])

    @classmethod
    def full(cls, field, ambient):
        return cls(field, ambient,
                   MatrixExact.identity(field, ambient).data)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.field == other.field
                and self.ambient == other.ambient
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.field, self.ambient, self.basis))

    def reduce(self, vec):
        """Residual of vec after eliminating against the RREF basis.

        Zero residual means membership; the residual is linear in vec
        with kernel exactly this subspace.
        """
        v = list(vec)
        for row in self.basis:
            pc = next(j for j, x in enumerate(row) if x)
            if v[pc]:
                f = v[pc]
                v = [a - f * b for a, b in zip(v, row)]
        return tuple(v)

    def contains_vector(self, vec) -> bool:
        return not any(self.reduce(vec))

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(v) for v in other.basis)

    def coordinates(self, vec):
        """Coefficients of vec on the RREF basis, or None if outside."""
        v = list(vec)
        coords = []
        for row in self.basis:
            pc = next(j for j, x in enumerate(row) if x)
            c = v[pc]
            coords.append(c)
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        if any(v):
            return None
        return tuple(coords)

    def add(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        return Subspace(self.field, self.ambient,
                        list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: row reduce [A | A; B | 0], rows whose left block
        vanished have right blocks spanning the intersection."""
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        n = self.ambient
        z = self.field.zero()
        block = [list(v) + list(v) for v in self.basis]
        block += [list(v) + [z] * n for v in other.basis]
        reduced, _ = _rref_rows(self.field, block, 2 * n)
        out = [row[n:] for row in reduced if not any(row[:n])]
        return Subspace(self.field, n, out)

    def complement_coords(self):
        """Indices of non-pivot coordinates: reading a vector at these
        positions after reduce() gives coordinates on a complement."""
        pivots = {next(j for j, x in enumerate(row) if x)
                  for row in self.basis}
        return tuple(j for j in range(self.ambient) if j not in pivots)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def modular_rank(int_rows, prime: int) -> int:
    """Rank of integer rows modulo a prime, straight dense elimination.

    A cross-check helper: the result is a lower bound for the rational
    rank, with equality unless the prime divides a critical minor.
    """
    work = [[v % prime for v in row] for row in int_rows]
    work = [r for r in work if any(r)]
    if not work:
        return 0
    cols = len(work[0])
    rank = 0
    for col in range(cols):
        piv = next((r for r in range(rank, len(work)) if work[r][col]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = pow(work[rank][col], prime - 2, prime)
        work[rank] = [(inv * x) % prime for x in work[rank]]
        prow = work[rank]
        for r in range(rank + 1, len(work)):
            f = work[r][col]
            if f:
                work[r] = [(a - f * b) % prime
                           for a, b in zip(work[r], prow)]
        rank += 1
        if rank == len(work):
            break
    return rank
