"""Convolution algebras Hom(H^{(x)n}, A), their idempotents and inverses.

A cochain of degree n stores one A-vector per basis tuple of H^{(x)n}, in
row-major order (see ``hopf.tensor_index``).  Degree 0 cochains are elements
of A.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .hopf import tensor_decode, tensor_index
from .linalg import Mat, solve_linear
from .partial_action import PartialActionMap


class DegreeMismatch(ValueError):
    pass


class NotInIdeal(ValueError):
    pass


class NotInvertible(ValueError):
    pass


class IdempotentMismatch(AssertionError):
    pass


@dataclass(frozen=True, eq=False)
class Cochain:
    pa: PartialActionMap
    degree: int
    values: tuple

    def __post_init__(self):
        expected = self.pa.hopf.dim ** self.degree
        if len(self.values) != expected:
            raise ValueError(f"degree {self.degree} cochain needs {expected} values, got {len(self.values)}")

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.pa is other.pa and self.degree == other.degree and self.values == other.values

    def __hash__(self):
        return hash((id(self.pa), self.degree, self.values))

    def __mul__(self, other: "Cochain") -> "Cochain":
        return convolve(self, other)

    def __pow__(self, k: int) -> "Cochain":
        if k < 0:
            return invert_in_ideal(self) ** (-k)
        out = unit_cochain(self.pa, self.degree)
        for _ in range(k):
            out = convolve(out, self)
        return out

    def __call__(self, *basis: int) -> tuple:
        dims = [self.pa.hopf.dim] * self.degree
        return self.values[tensor_index(dims, basis)] if basis else self.values[0]

    @property
    def dims(self) -> list[int]:
        return [self.pa.hopf.dim] * self.degree

    def scalar(self, *basis: int):
        """The value at a basis tuple when A is one-dimensional."""
        return self(*basis)[0]

    def times_element(self, a: Sequence) -> "Cochain":
        """The cochain x |-> f(x) a for a fixed a in A."""
        A = self.pa.target
        return Cochain(self.pa, self.degree, tuple(A.mul(v, a) for v in self.values))

    def is_zero(self) -> bool:
        return not any(any(v) for v in self.values)

    def label_table(self) -> dict[str, tuple]:
        H = self.pa.hopf
        out = {}
        for idx, v in enumerate(self.values):
            multi = tensor_decode(self.dims, idx) if self.degree else ()
            out[",".join(H.labels[i] for i in multi)] = v
        return out


def from_function(pa: PartialActionMap, n: int, fn: Callable[[tuple], object]) -> Cochain:
    """Tabulate fn over basis tuples; fn may return an A-vector or a scalar
    (taken as a multiple of 1_A)."""
    A = pa.target
    vals = []
    for multi in itertools.product(range(pa.hopf.dim), repeat=n):
        v = fn(multi)
        if not isinstance(v, tuple):
            v = tuple(pa.field(v) * u for u in A.unit)
        vals.append(v)
    return Cochain(pa, n, tuple(vals))


def zero_cochain(pa: PartialActionMap, n: int) -> Cochain:
    z = pa.target.zero()
    return Cochain(pa, n, (z,) * (pa.hopf.dim ** n))


def unit_cochain(pa: PartialActionMap, n: int) -> Cochain:
    H, A = pa.hopf, pa.target
    return from_function(pa, n, lambda m: tuple(_prod_counit(H, m) * u for u in A.unit))


def _prod_counit(H, multi):
    c = H.field.one
    for i in multi:
        c = c * H.counit[i]
    return c


def convolve(f: Cochain, g: Cochain) -> Cochain:
    if f.pa is not g.pa:
        raise ValueError("cochains belong to different partial actions")
    if f.degree != g.degree:
        raise DegreeMismatch(f"{f.degree} vs {g.degree}")
    A = f.pa.target
    n = f.degree
    if n == 0:
        return Cochain(f.pa, 0, (A.mul(f.values[0], g.values[0]),))
    table = f.pa.hopf.tensor_coproduct(n)
    fv, gv = f.values, g.values
    F = f.pa.field
    out = []
    if A.dim == 1 and A.mult[0][0][0] == F.one:
        for terms in table:
            acc = F.zero
            for l, r, c in terms:
                a = fv[l][0]
                if a:
                    b = gv[r][0]
                    if b:
                        acc = acc + c * a * b
            out.append((acc,))
    else:
        for terms in table:
            acc = [F.zero] * A.dim
            for l, r, c in terms:
                if any(fv[l]) and any(gv[r]):
                    for k, x in enumerate(A.mul(fv[l], gv[r])):
                        if x:
                            acc[k] = acc[k] + c * x
            out.append(tuple(acc))
    return Cochain(f.pa, n, tuple(out))


def convolve_all(cochains: Sequence[Cochain]) -> Cochain:
    out = cochains[0]
    for c in cochains[1:]:
        out = convolve(out, c)
    return out


def evaluate(f: Cochain, hs: Sequence[Sequence]) -> tuple:
    """f(h^1, ..., h^n) for arbitrary vectors h^i of H."""
    A = f.pa.target
    F = f.pa.field
    acc = [F.zero] * A.dim
    supports = [[(i, c) for i, c in enumerate(h) if c] for h in hs]
    for combo in itertools.product(*supports):
        c = F.one
        for _, x in combo:
            c = c * x
        v = f.values[tensor_index(f.dims, [i for i, _ in combo])] if f.degree else f.values[0]
        for k, x in enumerate(v):
            if x:
                acc[k] = acc[k] + c * x
    return tuple(acc)


# ------------------------------------------------------------- idempotents


def _product_vector(H, multi) -> tuple:
    v = H.unit
    for i in multi:
        v = H.mul(v, H.basis(i))
    return v


def e_tilde(pa: PartialActionMap, n: int) -> Cochain:
    """(h^1 ... h^n) . 1_A."""
    H, A = pa.hopf, pa.target
    return from_function(pa, n, lambda m: pa.act_vec(_product_vector(H, m), A.unit))


def e_tilde_padded(pa: PartialActionMap, l: int, n: int) -> Cochain:
    """e~_l (x) epsilon^{(x)(n-l)}."""
    if not 1 <= l <= n:
        raise ValueError("need 1 <= l <= n")
    H, A = pa.hopf, pa.target
    base = e_tilde(pa, l)
    return from_function(pa, n, lambda m: tuple(_prod_counit(H, m[l:]) * x for x in base(*m[:l])))


def e_nested(pa: PartialActionMap, n: int) -> Cochain:
    """h^1 . (h^2 . ( ... (h^n . 1_A)))."""
    A = pa.target

    def fn(m):
        v = A.unit
        for i in reversed(m):
            v = pa.act_basis(i, v)
        return v

    return from_function(pa, n, fn)


def e_product(pa: PartialActionMap, n: int) -> Cochain:
    """e~_{1,n} * e~_{2,n} * ... * e~_{n,n}."""
    if n == 0:
        return Cochain(pa, 0, (pa.target.unit,))
    return convolve_all([e_tilde_padded(pa, l, n) for l in range(1, n + 1)])


@lru_cache(maxsize=None)
def idempotent(pa: PartialActionMap, n: int) -> Cochain:
    """e_n, computed as a convolution product and in nested form; the two
    must agree."""
    if n == 0:
        return Cochain(pa, 0, (pa.target.unit,))
    prod_form = e_product(pa, n)
    nested = e_nested(pa, n)
    if prod_form != nested:
        raise IdempotentMismatch(f"e_{n}: product and nested forms differ")
    return nested


def build_idempotent(pa: PartialActionMap, n: int, l: int | None = None) -> Cochain:
    """e_n, or e~_{l,n} when l is given."""
    if l is not None:
        return e_tilde_padded(pa, l, n)
    return idempotent(pa, n)


# ------------------------------------------------------------ ideal, units


def in_ideal(f: Cochain) -> bool:
    if f.degree == 0:
        return True
    return convolve(idempotent(f.pa, f.degree), f) == f


def left_multiplication_matrix(f: Cochain) -> Mat:
    """Matrix of g |-> f * g on the flattened coordinates (index, A-basis)."""
    pa = f.pa
    A = pa.target
    dA = A.dim
    F = pa.field
    N = len(f.values) * dA
    rows = [[F.zero] * N for _ in range(N)]
    table = pa.hopf.tensor_coproduct(f.degree) if f.degree else [[(0, 0, F.one)]]
    for idx, terms in enumerate(table):
        for l, r, c in terms:
            fl = f.values[l]
            if not any(fl):
                continue
            for b in range(dA):
                prod_vec = A.mul(fl, A.basis(b))
                for k, x in enumerate(prod_vec):
                    if x:
                        rows[idx * dA + k][r * dA + b] += c * x
    return Mat(N, N, tuple(x for row in rows for x in row), F)


def _flatten(f: Cochain) -> tuple:
    return tuple(x for v in f.values for x in v)


def _unflatten(pa, n, flat) -> Cochain:
    dA = pa.target.dim
    return Cochain(pa, n, tuple(tuple(flat[i:i + dA]) for i in range(0, len(flat), dA)))


def invert_in_ideal(f: Cochain) -> Cochain:
    pa, n = f.pa, f.degree
    if n == 0:
        inv = pa.target.inverse(f.values[0])
        if inv is None:
            raise NotInvertible("element of A is not a unit")
        return Cochain(pa, 0, (inv,))
    e = idempotent(pa, n)
    if convolve(e, f) != f:
        raise NotInIdeal("e_n * f != f")
    M = left_multiplication_matrix(f)
    rhs = _flatten(e)
    sol = solve_linear(M, Mat(len(rhs), 1, rhs, pa.field))
    if sol is None:
        raise NotInvertible("f * g = e_n has no solution")
    g = convolve(e, _unflatten(pa, n, sol.entries))
    if convolve(f, g) != e or convolve(g, f) != e:
        raise NotInvertible("inverse check failed")
    return g


def is_invertible(f: Cochain) -> bool:
    try:
        invert_in_ideal(f)
    except (NotInvertible, NotInIdeal):
        return False
    return True


def random_cochain(pa: PartialActionMap, n: int, rng: random.Random) -> Cochain:
    F = pa.field
    dA = pa.target.dim
    return Cochain(pa, n, tuple(tuple(F.random(rng) for _ in range(dA)) for _ in range(pa.hopf.dim ** n)))


def random_ideal_element(pa: PartialActionMap, n: int, rng: random.Random) -> Cochain:
    g = random_cochain(pa, n, rng)
    return convolve(idempotent(pa, n), g) if n else g


def random_invertible(pa: PartialActionMap, n: int, rng: random.Random, attempts: int = 200) -> Cochain:
    """A random element of C^n: an invertible element of the ideal
    e_n * Hom(H^{(x)n}, A)."""
    for _ in range(attempts):
        f = random_ideal_element(pa, n, rng)
        if is_invertible(f):
            return f
    raise NotInvertible(f"no invertible cochain found in {attempts} attempts")
