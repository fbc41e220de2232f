"""The partial cochain complex: auxiliary operators, coboundaries, finite
cohomology by enumeration, reduced cochains, E(A) and the Klein-four family."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .convolution import (
    Cochain,
    NotInvertible,
    NotInIdeal,
    convolve,
    convolve_all,
    e_tilde,
    from_function,
    idempotent,
    invert_in_ideal,
    is_invertible,
)
from .hopf import AbelianGroup, FinAlgebra, build_dual_group_algebra, tensor_index
from .linalg import QQ, Field, Mat, SubspaceBasis, independent_subset, kernel_basis, solve_linear
from .partial_action import PartialActionMap, subgroup_to_action

DEFAULT_BUDGET = 10**6


class BadDegree(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class NotFiniteField(ValueError):
    pass


class FieldUnsupported(ValueError):
    pass


class ComplexError(AssertionError):
    """An identity the theory guarantees did not hold."""


# ------------------------------------------------------ auxiliary operators


def E_map(f: Cochain) -> Cochain:
    """E^n(f)(h^1, ..., h^{n+1}) = h^1 . f(h^2, ..., h^{n+1})."""
    pa = f.pa
    d = pa.hopf.dim
    span = d ** f.degree
    vals = []
    for h in range(d):
        for rest in range(span):
            vals.append(pa.act_basis(h, f.values[rest]))
    return Cochain(pa, f.degree + 1, tuple(vals))


def include(f: Cochain, m: int) -> Cochain:
    """i_{n,m}(f)(h^1, ..., h^m) = f(h^1, ..., h^n) eps(h^{n+1}) ... eps(h^m)."""
    n = f.degree
    if m <= n:
        raise BadDegree(f"i_{{{n},{m}}} needs n < m")
    pa = f.pa
    H = pa.hopf
    pad = H.dim ** (m - n)
    pad_counits = []
    for multi in itertools.product(range(H.dim), repeat=m - n):
        c = H.field.one
        for i in multi:
            c = c * H.counit[i]
        pad_counits.append(c)
    zero = pa.target.zero()
    vals = []
    for v in f.values:
        for c in pad_counits:
            vals.append(tuple(c * x for x in v) if c else zero)
    assert len(vals) == len(f.values) * pad
    return Cochain(pa, m, tuple(vals))


def compose_mu(f: Cochain, i: int) -> Cochain:
    """f o mu_i, where mu_i multiplies tensor factors i and i+1 (1-based)."""
    n = f.degree
    if not 1 <= i <= n:
        raise BadDegree(f"mu_{i} needs 1 <= i <= {n}")
    pa = f.pa
    H = pa.hopf
    d = H.dim
    F = pa.field
    dA = pa.target.dim
    vals = []
    for multi in itertools.product(range(d), repeat=n + 1):
        acc = [F.zero] * dA
        head, a, b, tail = multi[: i - 1], multi[i - 1], multi[i], multi[i + 1:]
        for k, c in H.mult_terms(a, b):
            v = f.values[tensor_index([d] * n, head + (k,) + tail)]
            for t, x in enumerate(v):
                if x:
                    acc[t] = acc[t] + c * x
        vals.append(tuple(acc))
    return Cochain(pa, n + 1, tuple(vals))


def auxiliary_map(kind: str, f: Cochain, arg: int | None = None) -> Cochain:
    """kind "E", "I" (arg = target degree m) or "MU" (arg = i)."""
    if kind == "E":
        return E_map(f)
    if kind == "I":
        return include(f, arg)
    if kind == "MU":
        return compose_mu(f, arg)
    raise ValueError(kind)


# -------------------------------------------------------------- coboundary


def _signed(f: Cochain, inv: Cochain, sign: int) -> Cochain:
    return f if sign > 0 else inv


def coboundary(f: Cochain) -> Cochain:
    """delta_n via E^n, mu_i and i_{n,n+1}."""
    pa, n = f.pa, f.degree
    inv = invert_in_ideal(f)
    factors = [E_map(f)]
    for i in range(1, n + 1):
        factors.append(compose_mu(_signed(f, inv, (-1) ** i), i))
    factors.append(include(_signed(f, inv, (-1) ** (n + 1)), n + 1))
    out = convolve_all(factors)
    if convolve(idempotent(pa, n + 1), out) != out:
        raise ComplexError(f"delta_{n} f left the degree {n + 1} ideal")
    return out


SWEEDLER_CAP = 200_000


def sweedler_cost(pa: PartialActionMap, n: int) -> int:
    """Number of Sweedler terms ``coboundary_sweedler`` expands for degree n."""
    H = pa.hopf
    if n == 0:
        return H.dim
    total = 0
    for multi in itertools.product(range(H.dim), repeat=n + 1):
        c = 1
        for b in multi:
            c *= len(H.split_terms(b, n + 2))
        total += c
    return total


def sweedler_feasible(pa: PartialActionMap, n: int, cap: int = SWEEDLER_CAP) -> bool:
    return sweedler_cost(pa, n) <= cap


def coboundary_sweedler(f: Cochain) -> Cochain:
    """delta_n by direct expansion of every argument into n+2 Sweedler
    components.  Exponential in n; intended for n <= 2 as a cross-check of
    ``coboundary``."""
    pa, n = f.pa, f.degree
    H, A = pa.hopf, pa.target
    F = pa.field
    inv = invert_in_ideal(f)
    if n == 0:
        a = f.values[0]
        return from_function(pa, 1, lambda m: A.mul(pa.act_basis(m[0], a), inv.values[0]))
    d = H.dim

    def value(g: Cochain, args: Sequence[tuple]) -> tuple:
        """g evaluated on a tuple of H-vectors given as sparse term lists."""
        acc = [F.zero] * A.dim
        for combo in itertools.product(*args):
            c = F.one
            idx = []
            for k, x in combo:
                c = c * x
                idx.append(k)
            v = g.values[tensor_index([d] * g.degree, idx)]
            for t, y in enumerate(v):
                if y:
                    acc[t] = acc[t] + c * y
        return tuple(acc)

    vals = []
    for multi in itertools.product(range(d), repeat=n + 1):
        splits = [H.split_terms(b, n + 2) for b in multi]
        acc = [F.zero] * A.dim
        for choice in itertools.product(*splits):
            coeff = F.one
            for _, c in choice:
                coeff = coeff * c
            piece = lambda j, t: choice[j][0][t]  # component t of argument j
            first = pa.act_basis(piece(0, 0), value(f, [[(piece(j, 0), F.one)] for j in range(1, n + 1)]))
            total = first
            for i in range(1, n + 1):
                g = _signed(f, inv, (-1) ** i)
                args = []
                for j in range(n + 1):
                    if j == i - 1:
                        args.append(H.mult_terms(piece(i - 1, i), piece(i, i)))
                    elif j == i:
                        continue
                    else:
                        args.append([(piece(j, i), F.one)])
                total = A.mul(total, value(g, args))
            g = _signed(f, inv, (-1) ** (n + 1))
            last = value(g, [[(piece(j, n + 1), F.one)] for j in range(n)])
            last = tuple(H.counit[piece(n, n + 1)] * x for x in last)
            total = A.mul(total, last)
            for t, y in enumerate(total):
                if y:
                    acc[t] = acc[t] + coeff * y
        vals.append(tuple(acc))
    return Cochain(pa, n + 1, tuple(vals))


def is_cocycle(f: Cochain) -> bool:
    return coboundary(f) == idempotent(f.pa, f.degree + 1)


def verify_coboundary_witness(f: Cochain, g: Cochain) -> bool:
    """True iff delta_{n-1}(g) = f."""
    if g.degree + 1 != f.degree:
        raise BadDegree("witness must have degree n-1")
    return coboundary(g) == f


def one_cocycle_identity(f: Cochain) -> bool:
    """(h1 . f(l)) f(h2) = (h1 . 1_A) f(h2 l) on all basis pairs."""
    pa = f.pa
    H, A = pa.hopf, pa.target
    F = pa.field
    for h, l in itertools.product(range(H.dim), repeat=2):
        lhs = [F.zero] * A.dim
        rhs = [F.zero] * A.dim
        for j, k, c in H.comult[h]:
            v = A.mul(pa.act_basis(j, f(l)), f(k))
            lhs = [x + c * y for x, y in zip(lhs, v)]
            hl = H.mul(H.basis(k), H.basis(l))
            fv = [F.zero] * A.dim
            for t, s in enumerate(hl):
                if s:
                    fv = [x + s * y for x, y in zip(fv, f(t))]
            v = A.mul(pa.unit_images[j], tuple(fv))
            rhs = [x + c * y for x, y in zip(rhs, v)]
        if lhs != rhs:
            return False
    return True


@dataclass
class ComplexHandle:
    """A partial action together with its cached idempotents e_0..e_{max+1}."""

    pa: PartialActionMap
    max_degree: int = 3

    def __post_init__(self):
        self.idempotents = [idempotent(self.pa, n) for n in range(self.max_degree + 2)]

    def e(self, n: int) -> Cochain:
        return self.idempotents[n]


# ------------------------------------------------------------- enumeration


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get("PARCOH_BUDGET")
    return int(raw) if raw else default


def ideal_basis(pa: PartialActionMap, n: int) -> list[Cochain]:
    """A basis of e_n * Hom(H^{(x)n}, A)."""
    e = idempotent(pa, n)
    dA = pa.target.dim
    gens = []
    for idx in range(pa.hopf.dim ** n):
        for b in range(dA):
            vals = [pa.target.zero()] * (pa.hopf.dim ** n)
            vals[idx] = pa.target.basis(b)
            gens.append(convolve(e, Cochain(pa, n, tuple(vals))))
    flat = [tuple(x for v in g.values for x in v) for g in gens]
    return [gens[i] for i in independent_subset(flat, pa.field)]


def _require_finite(pa):
    if not pa.field.is_finite:
        raise NotFiniteField(pa.field.name)


def enumerate_units(pa: PartialActionMap, budget: int) -> list[Cochain]:
    """C^0 = A^x as degree 0 cochains."""
    _require_finite(pa)
    A = pa.target
    F = pa.field
    if F.p ** A.dim > budget:
        raise BudgetExceeded(f"|A| = {F.p ** A.dim} > {budget}")
    out = []
    for v in itertools.product(list(F.elements()), repeat=A.dim):
        if A.inverse(v) is not None:
            out.append(Cochain(pa, 0, (tuple(v),)))
    return out


def enumerate_cochains(pa: PartialActionMap, n: int, budget: int) -> list[Cochain]:
    """Every element of C^n, by running through the ideal."""
    if n == 0:
        return enumerate_units(pa, budget)
    _require_finite(pa)
    F = pa.field
    basis = ideal_basis(pa, n)
    size = F.p ** len(basis)
    if size > budget:
        raise BudgetExceeded(f"ideal of degree {n} has {size} elements > {budget}")
    zero = tuple(x for _ in range(pa.hopf.dim ** n) for x in pa.target.zero())
    flats = [tuple(x for v in b.values for x in v) for b in basis]
    dA = pa.target.dim
    out = []
    for coeffs in itertools.product(list(F.elements()), repeat=len(basis)):
        flat = list(zero)
        for c, b in zip(coeffs, flats):
            if c:
                flat = [x + c * y for x, y in zip(flat, b)]
        f = Cochain(pa, n, tuple(tuple(flat[i:i + dA]) for i in range(0, len(flat), dA)))
        if is_invertible(f):
            out.append(f)
    return out


@dataclass
class CohomologyTable:
    degree: int
    cochains: list[Cochain]
    cocycles: list[Cochain]
    coboundaries: list[Cochain]
    representatives: list[Cochain]
    class_orders: list[int]
    units: list[Cochain] = field(default_factory=list)

    @property
    def orders(self) -> dict[str, int]:
        return {
            "C": len(self.cochains),
            "Z": len(self.cocycles),
            "B": len(self.coboundaries),
            "H": len(self.representatives),
        }


def enumerate_cohomology(pa: PartialActionMap, n: int, budget: int | None = None) -> CohomologyTable:
    _require_finite(pa)
    budget = budget_from_env() if budget is None else budget
    units = enumerate_units(pa, budget)
    C = enumerate_cochains(pa, n, budget)
    target = idempotent(pa, n + 1)
    Z = [f for f in C if coboundary(f) == target]
    if n == 0:
        B = [Cochain(pa, 0, (pa.target.unit,))]
    else:
        seen = {}
        for g in enumerate_cochains(pa, n - 1, budget):
            b = coboundary(g)
            seen.setdefault(b.values, b)
        B = list(seen.values())
    z_keys = {f.values for f in Z}
    b_keys = {b.values for b in B}
    if not b_keys <= z_keys:
        raise ComplexError("a coboundary failed the cocycle test")
    assigned: set = set()
    reps, orders = [], []
    for z in Z:
        if z.values in assigned:
            continue
        reps.append(z)
        for b in B:
            assigned.add(convolve(z, b).values)
        k, x = 1, z
        while x.values not in b_keys:
            x = convolve(x, z)
            k += 1
        orders.append(k)
    if assigned != z_keys or len(Z) != len(B) * len(reps):
        raise ComplexError("coset decomposition of Z by B is inconsistent")
    return CohomologyTable(n, C, Z, B, reps, orders, units)


@dataclass
class ReducedOrders:
    degree: int
    units: int
    cochains: int
    cocycles: int
    coboundaries: int
    cohomology: int
    embedding_injective: bool
    well_defined: bool


def embedded_units(pa: PartialActionMap, n: int, units: Sequence[Cochain]) -> list[Cochain]:
    e = idempotent(pa, n)
    return [e.times_element(a.values[0]) for a in units]


def reduce_modulo_units(table: CohomologyTable) -> ReducedOrders:
    """Orders of the reduced groups C~^n = C^n / {a e_n}, with delta~ [f] =
    [delta f].  The reduced and unreduced cohomology must have equal order."""
    if not table.cochains:
        raise ValueError("empty table")
    pa = table.cochains[0].pa
    _require_finite(pa)
    n = table.degree
    if n == 0:
        raise BadDegree("the reduced complex starts in degree 1")
    U_n = embedded_units(pa, n, table.units)
    U_next = {u.values for u in embedded_units(pa, n + 1, table.units)}
    injective = len({u.values for u in U_n}) == len(table.units)
    well_defined = all(coboundary(u).values in U_next for u in U_n)

    def orbit_count(group: Sequence[Cochain]) -> int:
        seen: set = set()
        count = 0
        for f in group:
            if f.values in seen:
                continue
            count += 1
            for u in U_n:
                seen.add(convolve(f, u).values)
        return count

    C_keys = {f.values for f in table.cochains}
    Ztilde = [f for f in table.cochains if coboundary(f).values in U_next]
    BU = {}
    for b in table.coboundaries:
        for u in U_n:
            x = convolve(b, u)
            BU.setdefault(x.values, x)
    if not set(BU) <= C_keys:
        raise ComplexError("B * U is not contained in C")
    z = orbit_count(Ztilde)
    b = orbit_count(list(BU.values()))
    if z % b:
        raise ComplexError("reduced coboundaries do not divide reduced cocycles")
    h = z // b
    if h != len(table.representatives):
        raise ComplexError(f"reduced H^{n} has order {h}, unreduced has {len(table.representatives)}")
    return ReducedOrders(n, len(U_n), orbit_count(table.cochains), z, b, h, injective, well_defined)


# ----------------------------------------------------------------- E(A)


@dataclass(frozen=True, eq=False)
class BaseSubalgebra:
    """E(A) with its inclusion into A (``vectors[i]`` is the i-th basis
    element of E(A) written in A)."""

    algebra: FinAlgebra
    vectors: tuple
    coords: SubspaceBasis

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def to_A(self, x: Sequence) -> tuple:
        return self.coords.vector(x)

    def from_A(self, a: Sequence) -> tuple | None:
        return self.coords.coords(a)

    @property
    def inclusion(self) -> Mat:
        F = self.algebra.field
        dA = len(self.vectors[0])
        return Mat(dA, self.dim, tuple(self.vectors[j][i] for i in range(dA) for j in range(self.dim)), F)


def compute_EA(pa: PartialActionMap) -> BaseSubalgebra:
    A = pa.target
    F = pa.field
    vecs = [pa.unit_images[h] for h in range(pa.hopf.dim)] + [A.unit]
    vecs = [vecs[i] for i in independent_subset(vecs, F)]
    while True:
        cand = vecs + [A.mul(x, y) for x in vecs for y in vecs]
        new = [cand[i] for i in independent_subset(cand, F)]
        if len(new) == len(vecs):
            break
        vecs = new
    sub = SubspaceBasis(vecs, F, A.dim)
    q = sub.dim
    mult = tuple(tuple(sub.coords(A.mul(vecs[i], vecs[j])) for j in range(q)) for i in range(q))
    unit = sub.coords(A.unit)
    labels = tuple(f"E{i}" for i in range(q)) if q > 1 else ("1",)
    return BaseSubalgebra(FinAlgebra(F, labels, mult, unit), tuple(vecs), sub)


# -------------------------------------------------------- Klein-four case


KLEIN_SUBGROUP = ((0, 0), (1, 0))  # L = <a> with a the first generator


def klein_four_instance(field: Field = QQ) -> PartialActionMap:
    """(kV4)* acting on k through L = <a>; one shared object per field."""
    return _klein_four_instance(field)


@lru_cache(maxsize=None)
def _klein_four_instance(field: Field) -> PartialActionMap:
    if field.characteristic == 2:
        raise FieldUnsupported("characteristic 2")
    H = build_dual_group_algebra(AbelianGroup((2, 2)), field)
    return subgroup_to_action(H, KLEIN_SUBGROUP)


def klein_four_table(pa: PartialActionMap, x) -> Cochain:
    """The 2-cochain on (kV4)* that is invariant under L in both slots, has
    row and column sums lambda, and value x at (p_e, p_e)."""
    F = pa.field
    x = F(x)
    quarter = F.one / F(4)
    G = pa.hopf.group
    L = set(KLEIN_SUBGROUP)
    W = [[x, quarter - x], [quarter - x, x - quarter]]
    cls = [0 if g in L else 1 for g in G.elements]
    return from_function(pa, 2, lambda m: W[cls[m[0]]][cls[m[1]]])


@dataclass
class KleinFourFamily:
    x: object
    xbar: object
    omega: Cochain
    omega_bar: Cochain
    invertible_pair: bool
    equation_holds: bool
    cocycle: bool | None
    cocycle_bar: bool | None

    @property
    def consistent(self) -> bool:
        return self.invertible_pair == self.equation_holds


def invertibility_polynomial(x, xbar, F: Field):
    return F(16) * x * xbar - F(3) * (x + xbar) + F.one / F(2)


def klein_four_family(x, xbar, field: Field = QQ) -> KleinFourFamily:
    pa = klein_four_instance(field)
    x, xbar = field(x), field(xbar)
    w = klein_four_table(pa, x)
    wb = klein_four_table(pa, xbar)
    e2 = idempotent(pa, 2)
    pair = convolve(w, wb) == e2
    eq = invertibility_polynomial(x, xbar, field) == field.zero
    cw = is_cocycle(w) if is_invertible(w) else None
    cwb = is_cocycle(wb) if is_invertible(wb) else None
    return KleinFourFamily(x, xbar, w, wb, pair, eq, cw, cwb)


def klein_four_partner(x, field: Field = QQ):
    """The x-bar solving the invertibility equation for given x, or None."""
    x = field(x)
    denom = field(16) * x - field(3)
    if not denom:
        return None
    return (field(3) * x - field.one / field(2)) / denom


def klein_four_degree_one_system(field: Field = QQ) -> list[tuple]:
    """All solutions (x, y, xbar, ybar) of
        x + y = 1/2, xbar + ybar = 1/2, x xbar + y ybar = 1/4,
        x ybar + y xbar = 0, x y = 0
    where x, y are the values of a 1-cochain on L and off L.  The product
    equation splits into the branches x = 0 and y = 0, each of which leaves a
    linear system in (xbar, ybar)."""
    half = field.one / field(2)
    quarter = field.one / field(4)
    solutions = []
    for x, y in ((field.zero, half), (half, field.zero)):
        if x + y != half or x * y != field.zero:
            continue
        A = Mat.from_rows(field, [[1, 1], [x, y], [y, x]])
        b = Mat.column(field, [half, quarter, 0])
        sol = solve_linear(A, b)
        if sol is None:
            continue
        if kernel_basis(A):
            raise ComplexError("degree-one system is underdetermined")
        solutions.append((x, y, sol.entries[0], sol.entries[1]))
    return solutions


def klein_four_one_cochain(pa: PartialActionMap, x, y) -> Cochain:
    L = set(KLEIN_SUBGROUP)
    els = pa.hopf.group.elements
    return from_function(pa, 1, lambda m: x if els[m[0]] in L else y)
