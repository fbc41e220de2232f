"""Finite-dimensional algebras and Hopf algebras given by structure constants.

Vectors are tuples of field elements in the basis order of the object.  The
comultiplication is stored sparsely: ``comult[i]`` lists triples ``(j, k, c)``
with Delta(b_i) = sum c b_j (x) b_k.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import prod
from typing import Iterable, Sequence

from .linalg import Field
from .report import ValidationReport

MAX_GROUP_ORDER = 16


class GroupTooLarge(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


# ------------------------------------------------------------------ groups


@dataclass(frozen=True)
class AbelianGroup:
    """Z_{n1} x ... x Z_{nk}; elements are residue tuples."""

    orders: tuple[int, ...]
    bound: int = MAX_GROUP_ORDER

    def __post_init__(self):
        if not self.orders or any(n < 1 for n in self.orders):
            raise ValueError("cyclic orders must be positive")
        if prod(self.orders) > self.bound:
            raise GroupTooLarge(f"|G| = {prod(self.orders)} exceeds {self.bound}")

    @classmethod
    def from_name(cls, name: str) -> "AbelianGroup":
        if name in ("trivial", "1", "Z1"):
            return cls((1,))
        if name == "V4":
            return cls((2, 2))
        parts = name.split("x")
        if not all(re.fullmatch(r"Z[1-9][0-9]*", p) for p in parts):
            raise ValueError(f"cannot parse group {name!r}")
        return cls(tuple(int(p[1:]) for p in parts))

    @property
    def name(self) -> str:
        return "x".join(f"Z{n}" for n in self.orders)

    @property
    def order(self) -> int:
        return prod(self.orders)

    @cached_property
    def elements(self) -> tuple[tuple[int, ...], ...]:
        return tuple(itertools.product(*(range(n) for n in self.orders)))

    @cached_property
    def _index(self) -> dict:
        return {g: i for i, g in enumerate(self.elements)}

    def index(self, g) -> int:
        return self._index[tuple(g)]

    @property
    def identity(self) -> tuple[int, ...]:
        return tuple(0 for _ in self.orders)

    def mul(self, g, h) -> tuple[int, ...]:
        return tuple((a + b) % n for a, b, n in zip(g, h, self.orders))

    def inv(self, g) -> tuple[int, ...]:
        return tuple((-a) % n for a, n in zip(g, self.orders))

    def power(self, g, k: int) -> tuple[int, ...]:
        return tuple((a * k) % n for a, n in zip(g, self.orders))

    def element_order(self, g) -> int:
        k, x = 1, tuple(g)
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    @staticmethod
    def label(g) -> str:
        return "-".join(str(a) for a in g)

    def parse_element(self, token: str) -> tuple[int, ...]:
        """Accepts "e", a dash-joined residue tuple ("1-0"), or a word in the
        generators a, b, c, ... with optional exponents ("ab", "a^3", "a2b")."""
        token = token.strip()
        if token == "e":
            return self.identity
        if re.fullmatch(r"[0-9]+(-[0-9]+)*", token):
            g = tuple(int(x) for x in token.split("-"))
            if len(g) != len(self.orders):
                raise ValueError(f"element {token!r} has the wrong rank")
            return tuple(a % n for a, n in zip(g, self.orders))
        if re.fullmatch(r"([a-z](\^?[0-9]+)?)+", token):
            g = list(self.identity)
            for letter, exp in re.findall(r"([a-z])\^?([0-9]*)", token):
                pos = ord(letter) - ord("a")
                if pos >= len(self.orders):
                    raise ValueError(f"generator {letter!r} does not exist in {self.name}")
                g[pos] = (g[pos] + (int(exp) if exp else 1)) % self.orders[pos]
            return tuple(g)
        raise ValueError(f"cannot parse group element {token!r}")

    def generated(self, gens: Iterable) -> frozenset:
        found = {self.identity}
        frontier = [self.identity]
        gens = [tuple(g) for g in gens]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in found:
                    found.add(y)
                    frontier.append(y)
        return frozenset(found)

    def is_subgroup(self, subset: Iterable) -> bool:
        s = {tuple(g) for g in subset}
        if self.identity not in s:
            return False
        return all(self.mul(g, self.inv(h)) in s for g in s for h in s)

    @cached_property
    def subgroups(self) -> tuple[frozenset, ...]:
        """All subgroups, by closure of generator sets; sorted by size and
        then by element index for a deterministic order."""
        start = frozenset({self.identity})
        seen = {start}
        queue = [start]
        while queue:
            s = queue.pop()
            for g in self.elements:
                if g not in s:
                    t = self.generated(list(s) + [g])
                    if t not in seen:
                        seen.add(t)
                        queue.append(t)
        return tuple(sorted(seen, key=lambda s: (len(s), sorted(self.index(g) for g in s))))


# ----------------------------------------------------------- tensor powers


def tensor_index(dims: Sequence[int], multi: Sequence[int]) -> int:
    if len(dims) != len(multi):
        raise IndexOutOfRange("rank mismatch")
    idx = 0
    for d, i in zip(dims, multi):
        if not 0 <= i < d:
            raise IndexOutOfRange(f"index {i} out of range for dimension {d}")
        idx = idx * d + i
    return idx


def tensor_decode(dims: Sequence[int], idx: int) -> tuple[int, ...]:
    total = prod(dims)
    if not 0 <= idx < total:
        raise IndexOutOfRange(f"flat index {idx} out of range for {total}")
    out = []
    for d in reversed(dims):
        idx, r = divmod(idx, d)
        out.append(r)
    return tuple(reversed(out))


# ---------------------------------------------------------------- algebras


def _add_into(acc: list, v: Sequence, c=None):
    if c is None:
        for i, x in enumerate(v):
            if x:
                acc[i] = acc[i] + x
    else:
        for i, x in enumerate(v):
            if x:
                acc[i] = acc[i] + c * x


@dataclass(frozen=True, eq=False)
class FinAlgebra:
    field: Field
    labels: tuple[str, ...]
    mult: tuple  # mult[i][j] is the vector b_i b_j
    unit: tuple

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis(self, i: int) -> tuple:
        return self.field.unit_vector(self.dim, i)

    def zero(self) -> tuple:
        return self.field.zeros(self.dim)

    @cached_property
    def _sparse(self) -> list[list[list[tuple[int, object]]]]:
        return [[[(k, c) for k, c in enumerate(self.mult[i][j]) if c] for j in range(self.dim)] for i in range(self.dim)]

    def mul(self, x: Sequence, y: Sequence) -> tuple:
        if self.dim == 1:
            return (x[0] * y[0] * self.mult[0][0][0],)
        acc = [self.field.zero] * self.dim
        sp = self._sparse
        for i, a in enumerate(x):
            if not a:
                continue
            row = sp[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in row[j]:
                    acc[k] = acc[k] + ab * c
        return tuple(acc)

    def add(self, x: Sequence, y: Sequence) -> tuple:
        return tuple(a + b for a, b in zip(x, y))

    def scale(self, c, x: Sequence) -> tuple:
        return tuple(c * a for a in x)

    @cached_property
    def is_commutative(self) -> bool:
        return all(self.mult[i][j] == self.mult[j][i] for i in range(self.dim) for j in range(i))

    def inverse(self, x: Sequence) -> tuple | None:
        """Multiplicative inverse of x, or None."""
        from .linalg import Mat, solve_linear

        d = self.dim
        if d == 1:
            if not x[0]:
                return None
            return (self.field.one / (x[0] * self.mult[0][0][0]),)
        cols = [self.mul(x, self.basis(j)) for j in range(d)]
        A = Mat(d, d, tuple(cols[j][i] for i in range(d) for j in range(d)), self.field)
        sol = solve_linear(A, Mat(d, 1, tuple(self.unit), self.field))
        if sol is None:
            return None
        y = sol.entries
        if self.mul(y, x) != tuple(self.unit):
            return None
        return y

    def validate(self) -> ValidationReport:
        rep = ValidationReport("algebra")
        d = self.dim
        bad = None
        for i, j, k in itertools.product(range(d), repeat=3):
            lhs = self.mul(self.mul(self.basis(i), self.basis(j)), self.basis(k))
            rhs = self.mul(self.basis(i), self.mul(self.basis(j), self.basis(k)))
            if lhs != rhs:
                bad = {"basis": [self.labels[i], self.labels[j], self.labels[k]]}
                break
        rep.add("associativity", bad is None, bad)
        bad = None
        for i in range(d):
            b = self.basis(i)
            if self.mul(self.unit, b) != b or self.mul(b, self.unit) != b:
                bad = {"basis": [self.labels[i]]}
                break
        rep.add("unit", bad is None, bad)
        return rep


def base_field_algebra(field: Field) -> FinAlgebra:
    return FinAlgebra(field, ("1",), (((field.one,),),), (field.one,))


def product_algebra(field: Field, n: int, prefix: str = "u") -> FinAlgebra:
    """k^n with its basis of orthogonal idempotents."""
    mult = tuple(tuple(field.unit_vector(n, i) if i == j else field.zeros(n) for j in range(n)) for i in range(n))
    return FinAlgebra(field, tuple(f"{prefix}{i}" for i in range(n)), mult, (field.one,) * n)


# ----------------------------------------------------------- Hopf algebras


@dataclass(frozen=True, eq=False)
class FinHopf:
    algebra: FinAlgebra
    comult: tuple  # comult[i] = ((j, k, c), ...)
    counit: tuple
    antipode: tuple | None  # antipode[i] = S(b_i) as a vector
    group: AbelianGroup | None = None
    kind: str = "custom"
    name: str = "H"

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def labels(self) -> tuple[str, ...]:
        return self.algebra.labels

    @property
    def unit(self) -> tuple:
        return self.algebra.unit

    def basis(self, i: int) -> tuple:
        return self.algebra.basis(i)

    def mul(self, x, y) -> tuple:
        return self.algebra.mul(x, y)

    def mult_terms(self, i: int, j: int) -> list[tuple[int, object]]:
        return self.algebra._sparse[i][j]

    @cached_property
    def unit_terms(self) -> list[tuple[int, object]]:
        return [(i, c) for i, c in enumerate(self.unit) if c]

    def counit_of(self, x: Sequence):
        acc = self.field.zero
        for a, e in zip(x, self.counit):
            if a and e:
                acc = acc + a * e
        return acc

    def antipode_of(self, x: Sequence) -> tuple:
        if self.antipode is None:
            raise ValueError(f"{self.name} has no antipode")
        acc = [self.field.zero] * self.dim
        for i, a in enumerate(x):
            if a:
                _add_into(acc, self.antipode[i], a)
        return tuple(acc)

    @cached_property
    def antipode_terms(self) -> list[list[tuple[int, object]]]:
        return [[(j, c) for j, c in enumerate(self.antipode[i]) if c] for i in range(self.dim)]

    def coproduct(self, x: Sequence) -> dict[tuple[int, int], object]:
        out: dict = {}
        for i, a in enumerate(x):
            if not a:
                continue
            for j, k, c in self.comult[i]:
                out[(j, k)] = out.get((j, k), self.field.zero) + a * c
        return {key: v for key, v in out.items() if v}

    def iterated_coproduct(self, n: int, x: Sequence, nesting: str = "left") -> dict[tuple[int, ...], object]:
        """Delta^(n)(x) in H^{(x)(n+1)} as a sparse dict of index tuples.
        ``nesting="left"`` applies Delta to the first factor at each step,
        ``"right"`` to the last."""
        cur = {(i,): a for i, a in enumerate(x) if a}
        for _ in range(n):
            nxt: dict = {}
            for key, a in cur.items():
                pos = 0 if nesting == "left" else len(key) - 1
                for j, k, c in self.comult[key[pos]]:
                    new = key[:pos] + (j, k) + key[pos + 1:]
                    nxt[new] = nxt.get(new, self.field.zero) + a * c
            cur = {key: v for key, v in nxt.items() if v}
        return cur

    def iterated_coproduct_vector(self, n: int, x: Sequence) -> tuple:
        dims = [self.dim] * (n + 1)
        out = [self.field.zero] * (self.dim ** (n + 1))
        for key, c in self.iterated_coproduct(n, x).items():
            out[tensor_index(dims, key)] = c
        return tuple(out)

    @cached_property
    def basis_coproduct_terms(self) -> dict:
        """Cache: (pieces, i) -> list of (index tuple, coeff) for Delta^(pieces-1)(b_i)."""
        return {}

    def split_terms(self, i: int, pieces: int) -> list[tuple[tuple[int, ...], object]]:
        key = (pieces, i)
        cache = self.basis_coproduct_terms
        if key not in cache:
            cache[key] = list(self.iterated_coproduct(pieces - 1, self.basis(i)).items())
        return cache[key]

    @cached_property
    def _tensor_coproducts(self) -> dict:
        return {}

    def tensor_coproduct(self, n: int) -> list[list[tuple[int, int, object]]]:
        """For each flat basis index of H^{(x)n}, the terms (left, right, c) of
        its coproduct in the tensor-product coalgebra H^{(x)n}."""
        cache = self._tensor_coproducts
        if n not in cache:
            if n == 0:
                cache[n] = [[(0, 0, self.field.one)]]
            else:
                prev = self.tensor_coproduct(n - 1)
                d = self.dim
                table = []
                for p_terms in prev:
                    for i in range(d):
                        row = []
                        for l0, r0, c0 in p_terms:
                            for j, k, c in self.comult[i]:
                                row.append((l0 * d + j, r0 * d + k, c0 * c))
                        table.append(row)
                cache[n] = table
        return cache[n]

    @cached_property
    def is_cocommutative(self) -> bool:
        for i in range(self.dim):
            delta = self.coproduct(self.basis(i))
            swapped = {(k, j): c for (j, k), c in delta.items()}
            if delta != swapped:
                return False
        return True

    @property
    def is_commutative(self) -> bool:
        return self.algebra.is_commutative

    def element_label(self, x: Sequence) -> str:
        terms = []
        for lab, c in zip(self.labels, x):
            if c:
                terms.append(f"({self.field.format(c)}){lab}")
        return " + ".join(terms) if terms else "0"


def _tensor_mul(H: FinHopf, x: dict, y: dict) -> dict:
    out: dict = {}
    for (a1, a2), c in x.items():
        for (b1, b2), e in y.items():
            for k1, m1 in H.mult_terms(a1, b1):
                for k2, m2 in H.mult_terms(a2, b2):
                    key = (k1, k2)
                    out[key] = out.get(key, H.field.zero) + c * e * m1 * m2
    return {k: v for k, v in out.items() if v}


def validate_hopf(H: FinHopf, require_cocommutative: bool = True) -> ValidationReport:
    rep = ValidationReport(f"hopf {H.name}")
    rep.extend(H.algebra.validate())
    d, F = H.dim, H.field
    labels = H.labels

    bad = None
    for i in range(d):
        left = H.iterated_coproduct(2, H.basis(i), "left")
        right = H.iterated_coproduct(2, H.basis(i), "right")
        if left != right:
            bad = {"basis": [labels[i]]}
            break
    rep.add("coassociativity", bad is None, bad)

    bad = None
    for i in range(d):
        b = H.basis(i)
        lhs = [F.zero] * d
        rhs = [F.zero] * d
        for (j, k), c in H.coproduct(b).items():
            lhs[k] = lhs[k] + c * H.counit[j]
            rhs[j] = rhs[j] + c * H.counit[k]
        if tuple(lhs) != b or tuple(rhs) != b:
            bad = {"basis": [labels[i]]}
            break
    rep.add("counit", bad is None, bad)

    bad = None
    unit_delta = H.coproduct(H.unit)
    expect_unit = {}
    for i, a in enumerate(H.unit):
        for j, b in enumerate(H.unit):
            if a and b:
                expect_unit[(i, j)] = a * b
    if unit_delta != expect_unit or H.counit_of(H.unit) != F.one:
        bad = {"basis": ["1"]}
    if bad is None:
        for i in range(d):
            for j in range(d):
                bi, bj = H.basis(i), H.basis(j)
                prod_ij = H.mul(bi, bj)
                if H.coproduct(prod_ij) != _tensor_mul(H, H.coproduct(bi), H.coproduct(bj)):
                    bad = {"basis": [labels[i], labels[j]], "map": "comultiplication"}
                    break
                if H.counit_of(prod_ij) != H.counit[i] * H.counit[j]:
                    bad = {"basis": [labels[i], labels[j]], "map": "counit"}
                    break
            if bad:
                break
    rep.add("compatibility", bad is None, bad)

    if H.antipode is not None:
        bad = None
        for i in range(d):
            expect = tuple(H.counit[i] * u for u in H.unit)
            left = [F.zero] * d
            right = [F.zero] * d
            for (j, k), c in H.coproduct(H.basis(i)).items():
                _add_into(left, H.mul(H.antipode[j], H.basis(k)), c)
                _add_into(right, H.mul(H.basis(j), H.antipode[k]), c)
            if tuple(left) != expect or tuple(right) != expect:
                bad = {"basis": [labels[i]]}
                break
        rep.add("antipode", bad is None, bad)

    if require_cocommutative:
        bad = None
        for i in range(d):
            delta = H.coproduct(H.basis(i))
            if delta != {(k, j): c for (j, k), c in delta.items()}:
                bad = {"basis": [labels[i]]}
                break
        rep.add("cocommutativity", bad is None, bad)
    return rep


# ------------------------------------------------------------ constructors


def build_group_algebra(G: AbelianGroup, field: Field) -> FinHopf:
    n = G.order
    els = G.elements
    labels = tuple("d_" + G.label(g) for g in els)
    mult = tuple(tuple(field.unit_vector(n, G.index(G.mul(g, h))) for h in els) for g in els)
    unit = field.unit_vector(n, G.index(G.identity))
    alg = FinAlgebra(field, labels, mult, unit)
    comult = tuple(((i, i, field.one),) for i in range(n))
    counit = (field.one,) * n
    antipode = tuple(field.unit_vector(n, G.index(G.inv(g))) for g in els)
    return FinHopf(alg, comult, counit, antipode, G, "group", f"kG:{G.name}")


def build_dual_group_algebra(G: AbelianGroup, field: Field) -> FinHopf:
    n = G.order
    els = G.elements
    labels = tuple("p_" + G.label(g) for g in els)
    mult = tuple(tuple(field.unit_vector(n, i) if i == j else field.zeros(n) for j in range(n)) for i in range(n))
    unit = (field.one,) * n
    alg = FinAlgebra(field, labels, mult, unit)
    comult = tuple(
        tuple((G.index(h), G.index(G.mul(G.inv(h), g)), field.one) for h in els)
        for g in els
    )
    counit = field.unit_vector(n, G.index(G.identity))
    antipode = tuple(field.unit_vector(n, G.index(G.inv(g))) for g in els)
    return FinHopf(alg, comult, counit, antipode, G, "dual", f"dual:{G.name}")
