"""Exact scalars over Q and F_p, dense matrices, and Gaussian elimination.

Rationals are stdlib ``Fraction`` values; prime-field elements are ``Residue``
objects.  Mixing the two, or residues of different primes, raises
``FieldMismatch``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class FieldMismatch(TypeError):
    pass


class DimensionMismatch(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Residue:
    """Canonical residue ``value`` modulo the prime ``p``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _other(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise FieldMismatch(f"F{self.p} vs F{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            raise FieldMismatch(f"F{self.p} vs Q")
        return None

    def __add__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return Residue(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return Residue(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return Residue(v - self.value, self.p)

    def __mul__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return Residue(self.value * v, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "Residue":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.p}")
        return Residue(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return self * Residue(v, self.p).inverse()

    def __rtruediv__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return Residue(v, self.p) * self.inverse()

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Residue(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (other - self.value) % self.p == 0
        return False

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} mod {self.p}"


class Field:
    """Common interface of ``QQ`` and ``GF(p)``."""

    name: str
    is_finite: bool
    characteristic: int
    zero: object
    one: object

    def __call__(self, x):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def zeros(self, n: int) -> tuple:
        return (self.zero,) * n

    def unit_vector(self, n: int, i: int) -> tuple:
        v = [self.zero] * n
        v[i] = self.one
        return tuple(v)


class RationalField(Field):
    name = "Q"
    is_finite = False
    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, Residue):
            raise FieldMismatch("Q vs F_p")
        if isinstance(x, (float, complex)):
            raise TypeError("floating point values are not accepted")
        if isinstance(x, str):
            x = x.strip()
            if x.endswith(" mod"):
                raise ValueError(x)
        return Fraction(x)

    def contains(self, x) -> bool:
        return isinstance(x, Fraction)

    def format(self, x) -> str:
        return f"{x.numerator}/{x.denominator}"

    def random(self, rng: random.Random, height: int = 5) -> Fraction:
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    is_finite = True

    def __init__(self, p: int):
        if not isinstance(p, int) or p >= 2**31 or not is_prime(p):
            raise ValueError(f"{p} is not a prime below 2^31")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"
        self.zero = Residue(0, p)
        self.one = Residue(1, p)

    def __call__(self, x) -> Residue:
        if isinstance(x, Residue):
            if x.p != self.p:
                raise FieldMismatch(f"F{x.p} vs F{self.p}")
            return x
        if isinstance(x, (float, complex)):
            raise TypeError("floating point values are not accepted")
        if isinstance(x, str):
            x = x.strip()
            if x.endswith(f"mod {self.p}"):
                x = x[: -len(f"mod {self.p}")].strip()
            x = Fraction(x)
        if isinstance(x, Fraction):
            return Residue(x.numerator, self.p) / Residue(x.denominator, self.p)
        return Residue(int(x), self.p)

    def contains(self, x) -> bool:
        return isinstance(x, Residue) and x.p == self.p

    def format(self, x) -> str:
        return f"{x.value} mod {self.p}"

    def elements(self) -> Iterator[Residue]:
        for v in range(self.p):
            yield Residue(v, self.p)

    def random(self, rng: random.Random) -> Residue:
        return Residue(rng.randrange(self.p), self.p)

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_name(name: str) -> Field:
    if name == "Q":
        return QQ
    if name.startswith("F") and name[1:].isdigit():
        return GF(int(name[1:]))
    raise ValueError(f"unknown field {name!r}")


# ---------------------------------------------------------------- matrices


@dataclass(frozen=True)
class Mat:
    rows: int
    cols: int
    entries: tuple
    field: Field

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch("entry count does not match shape")
        for x in self.entries:
            if not self.field.contains(x):
                raise FieldMismatch(f"{x!r} is not an element of {self.field.name}")

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence]) -> "Mat":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), ncols, tuple(field(x) for r in rows for x in r), field)

    @classmethod
    def column(cls, field: Field, values: Iterable) -> "Mat":
        values = tuple(field(x) for x in values)
        return cls(len(values), 1, values, field)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Mat":
        return cls(rows, cols, (field.zero,) * (rows * cols), field)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        return cls(n, n, tuple(field.one if i == j else field.zero for i in range(n) for j in range(n)), field)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def _check(self, other: "Mat"):
        if other.field is not self.field and other.field != self.field:
            raise FieldMismatch(f"{self.field.name} vs {other.field.name}")

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        zero = self.field.zero
        out = []
        cols = [other.col(j) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                out.append(acc)
        return Mat(self.rows, other.cols, tuple(out), self.field)

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch")
        return Mat(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)), self.field)

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def __neg__(self) -> "Mat":
        return Mat(self.rows, self.cols, tuple(-a for a in self.entries), self.field)

    def scale(self, c) -> "Mat":
        c = self.field(c)
        return Mat(self.rows, self.cols, tuple(c * a for a in self.entries), self.field)

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)), self.field)

    def rank(self) -> int:
        return len(row_reduce(self.to_rows(), self.cols, self.field)[1])

    def is_zero(self) -> bool:
        return not any(self.entries)


def row_reduce(rows: list[list], pivot_cols: int, field: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form.  Pivots are sought only among the first
    ``pivot_cols`` columns; the pivot row is the first one (from the current
    row down) with a nonzero entry in the column."""
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(pivot_cols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if rows[i][c]), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        inv = field.one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return rows, pivots


def solve_linear(A: Mat, b: Mat) -> Mat | None:
    """Some x with A x = b, or None when the system is inconsistent."""
    A._check(b)
    if b.cols != 1 or b.rows != A.rows:
        raise DimensionMismatch("right-hand side must be a column with A.rows entries")
    aug = [list(A.row(i)) + [b.entries[i]] for i in range(A.rows)]
    red, pivots = row_reduce(aug, A.cols + 1, A.field)
    if pivots and pivots[-1] == A.cols:
        return None
    x = [A.field.zero] * A.cols
    for r, c in enumerate(pivots):
        x[c] = red[r][A.cols]
    return Mat(A.cols, 1, tuple(x), A.field)


def kernel_basis(A: Mat) -> list[Mat]:
    red, pivots = row_reduce(A.to_rows(), A.cols, A.field)
    free = [c for c in range(A.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [A.field.zero] * A.cols
        x[f] = A.field.one
        for r, c in enumerate(pivots):
            x[c] = -red[r][f]
        basis.append(Mat(A.cols, 1, tuple(x), A.field))
    return basis


@dataclass(frozen=True)
class QuotientSpace:
    """k^n modulo the span of some relation vectors, with explicit
    coordinates: ``project`` is q x n, ``lift`` is n x q."""

    project: Mat
    lift: Mat

    @property
    def dim(self) -> int:
        return self.project.rows

    @property
    def ambient_dim(self) -> int:
        return self.project.cols

    def project_vector(self, v: Sequence) -> tuple:
        P = self.project
        zero = P.field.zero
        out = []
        for i in range(P.rows):
            acc = zero
            for a, x in zip(P.row(i), v):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def lift_vector(self, c: Sequence) -> tuple:
        L = self.lift
        zero = L.field.zero
        out = []
        for i in range(L.rows):
            acc = zero
            for a, x in zip(L.row(i), c):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)


def quotient_presentation(n: int, relations: Sequence, field: Field) -> QuotientSpace:
    rel_rows = []
    for r in relations:
        vals = r.entries if isinstance(r, Mat) else tuple(r)
        if len(vals) != n:
            raise DimensionMismatch("relation vector has the wrong length")
        rel_rows.append(list(vals))
    red, pivots = row_reduce(rel_rows, n, field)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    q = len(free)
    proj = [[field.zero] * n for _ in range(q)]
    for k, f in enumerate(free):
        proj[k][f] = field.one
        for r, c in enumerate(pivots):
            if red[r][f]:
                proj[k][c] = -red[r][f]
    lift = [[field.zero] * q for _ in range(n)]
    for k, f in enumerate(free):
        lift[f][k] = field.one
    return QuotientSpace(
        Mat(q, n, tuple(x for row in proj for x in row), field),
        Mat(n, q, tuple(x for row in lift for x in row), field),
    )


class SubspaceBasis:
    """Coordinates with respect to a list of linearly independent vectors."""

    def __init__(self, vectors: Sequence[Sequence], field: Field, dim: int | None = None):
        self.vectors = [tuple(v) for v in vectors]
        self.field = field
        q = len(self.vectors)
        n = dim if dim is not None else (len(self.vectors[0]) if self.vectors else 0)
        self.ambient_dim = n
        aug = [list(v) + list(field.unit_vector(q, i)) for i, v in enumerate(self.vectors)]
        red, pivots = row_reduce(aug, n, field)
        if len(pivots) != q:
            raise ValueError("vectors are linearly dependent")
        self._rows = [r[:n] for r in red]
        self._transform = [r[n:] for r in red]
        self._pivots = pivots

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def coords(self, v: Sequence) -> tuple | None:
        """Coordinates of v, or None if v lies outside the span."""
        zero = self.field.zero
        residual = list(v)
        c_red = []
        for row, p in zip(self._rows, self._pivots):
            c = residual[p]
            c_red.append(c)
            if c:
                residual = [x - c * y for x, y in zip(residual, row)]
        if any(residual):
            return None
        out = []
        for j in range(self.dim):
            acc = zero
            for c, t in zip(c_red, self._transform):
                if c and t[j]:
                    acc = acc + c * t[j]
            out.append(acc)
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        return self.coords(v) is not None

    def vector(self, coords: Sequence) -> tuple:
        out = [self.field.zero] * self.ambient_dim
        for c, v in zip(coords, self.vectors):
            if c:
                out = [x + c * y for x, y in zip(out, v)]
        return tuple(out)


def independent_subset(vectors: Sequence[Sequence], field: Field) -> list[int]:
    """Indices of a greedy maximal independent subset, in input order."""
    chosen: list[int] = []
    rows: list[list] = []
    pivots: list[int] = []
    for idx, v in enumerate(vectors):
        residual = list(v)
        for row, p in zip(rows, pivots):
            c = residual[p]
            if c:
                residual = [x - c * y for x, y in zip(residual, row)]
        p = next((i for i, x in enumerate(residual) if x), None)
        if p is None:
            continue
        inv = field.one / residual[p]
        residual = [x * inv for x in residual]
        rows.append(residual)
        pivots.append(p)
        chosen.append(idx)
    return chosen


def span_rank(vectors: Sequence[Sequence], field: Field) -> int:
    return len(independent_subset(vectors, field))
