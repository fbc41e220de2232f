"""Partial actions of cocommutative Hopf algebras on commutative algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .hopf import FinAlgebra, FinHopf, AbelianGroup, base_field_algebra, product_algebra
from .linalg import Mat, SubspaceBasis, independent_subset
from .report import ValidationReport


class NotCocommutative(ValueError):
    pass


class NotCommutative(ValueError):
    pass


class NotASubgroup(ValueError):
    pass


class CharDividesOrder(ValueError):
    pass


class NotIdempotent(ValueError):
    pass


class NotCentral(ValueError):
    pass


class NotGlobal(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PartialActionMap:
    """``act[h][a]`` is the vector b_h . b_a in the target algebra."""

    hopf: FinHopf
    target: FinAlgebra
    act: tuple
    description: str = ""

    @property
    def field(self):
        return self.hopf.field

    @property
    def matrix(self) -> Mat:
        dA, dH = self.target.dim, self.hopf.dim
        cols = [self.act[h][a] for h in range(dH) for a in range(dA)]
        return Mat(dA, dH * dA, tuple(cols[j][i] for i in range(dA) for j in range(dH * dA)), self.field)

    def act_basis(self, h: int, x: Sequence) -> tuple:
        dA = self.target.dim
        if dA == 1:
            return (self.act[h][0][0] * x[0],)
        acc = [self.field.zero] * dA
        row = self.act[h]
        for a, c in enumerate(x):
            if c:
                for k, v in enumerate(row[a]):
                    if v:
                        acc[k] = acc[k] + c * v
        return tuple(acc)

    def act_vec(self, hvec: Sequence, x: Sequence) -> tuple:
        acc = [self.field.zero] * self.target.dim
        for h, c in enumerate(hvec):
            if c:
                for k, v in enumerate(self.act_basis(h, x)):
                    if v:
                        acc[k] = acc[k] + c * v
        return tuple(acc)

    @cached_property
    def unit_images(self) -> tuple:
        """h . 1_A for every basis element h."""
        return tuple(self.act_basis(h, self.target.unit) for h in range(self.hopf.dim))

    @cached_property
    def is_global(self) -> bool:
        u = self.target.unit
        return all(self.unit_images[h] == tuple(self.hopf.counit[h] * x for x in u) for h in range(self.hopf.dim))


def _label(pa: PartialActionMap, kind: str, i: int) -> str:
    return pa.hopf.labels[i] if kind == "H" else pa.target.labels[i]


def validate_partial_action(pa: PartialActionMap) -> ValidationReport:
    H, A = pa.hopf, pa.target
    if not H.is_cocommutative:
        raise NotCocommutative(H.name)
    if not A.is_commutative:
        raise NotCommutative("target algebra")
    rep = ValidationReport("partial action")
    dH, dA = H.dim, A.dim
    F = pa.field

    bad = None
    for a in range(dA):
        b = A.basis(a)
        got = pa.act_vec(H.unit, b)
        if got != b:
            bad = {"basis": [A.labels[a]], "lhs": got, "rhs": b}
            break
    rep.add("PA1", bad is None, bad)

    bad = None
    for h, a, b in itertools.product(range(dH), range(dA), range(dA)):
        lhs = pa.act_basis(h, A.mul(A.basis(a), A.basis(b)))
        rhs = [F.zero] * dA
        for j, k, c in H.comult[h]:
            v = A.mul(pa.act_basis(j, A.basis(a)), pa.act_basis(k, A.basis(b)))
            rhs = [x + c * y for x, y in zip(rhs, v)]
        if lhs != tuple(rhs):
            bad = {"basis": [H.labels[h], A.labels[a], A.labels[b]], "lhs": lhs, "rhs": tuple(rhs)}
            break
    rep.add("PA2", bad is None, bad)

    bad3 = bad3s = None
    for h, l, a in itertools.product(range(dH), range(dH), range(dA)):
        lhs = pa.act_basis(h, pa.act_basis(l, A.basis(a)))
        rhs = [F.zero] * dA
        rhs_s = [F.zero] * dA
        for j, k, c in H.comult[h]:
            hl_a = pa.act_vec(H.mul(H.basis(k), H.basis(l)), A.basis(a))
            v = A.mul(pa.unit_images[j], hl_a)
            rhs = [x + c * y for x, y in zip(rhs, v)]
            hl_a_s = pa.act_vec(H.mul(H.basis(j), H.basis(l)), A.basis(a))
            v = A.mul(hl_a_s, pa.unit_images[k])
            rhs_s = [x + c * y for x, y in zip(rhs_s, v)]
        if bad3 is None and lhs != tuple(rhs):
            bad3 = {"basis": [H.labels[h], H.labels[l], A.labels[a]], "lhs": lhs, "rhs": tuple(rhs)}
        if bad3s is None and lhs != tuple(rhs_s):
            bad3s = {"basis": [H.labels[h], H.labels[l], A.labels[a]], "lhs": lhs, "rhs": tuple(rhs_s)}
    rep.add("PA3", bad3 is None, bad3)
    rep.add("PA3'", bad3s is None, bad3s)
    return rep


def action_on_base_field(H: FinHopf, values: Sequence, description: str = "") -> PartialActionMap:
    """The linear map h . 1 = values[h] on A = k."""
    F = H.field
    A = base_field_algebra(F)
    act = tuple((((F(v)),),) for v in values)
    return PartialActionMap(H, A, act, description)


def trivial_global_action(H: FinHopf, A: FinAlgebra | None = None) -> PartialActionMap:
    """h . a = epsilon(h) a."""
    A = A or base_field_algebra(H.field)
    act = tuple(tuple(tuple(H.counit[h] * x for x in A.basis(a)) for a in range(A.dim)) for h in range(H.dim))
    return PartialActionMap(H, A, act, "global")


def _as_subgroup(G: AbelianGroup, L: Iterable) -> frozenset:
    L = frozenset(tuple(g) for g in L)
    if not all(g in set(G.elements) for g in L) or not G.is_subgroup(L):
        raise NotASubgroup(sorted(G.label(g) for g in L))
    return L


def subgroup_label(G: AbelianGroup, L: Iterable) -> str:
    return "{" + ",".join(G.label(g) for g in sorted(L, key=G.index)) + "}"


def subgroup_to_action(H: FinHopf, L: Iterable) -> PartialActionMap:
    G = H.group
    if G is None or H.kind not in ("group", "dual"):
        raise ValueError("subgroup actions need a group algebra or a dual group algebra")
    L = _as_subgroup(G, L)
    F = H.field
    desc = f"L={subgroup_label(G, L)}"
    if H.kind == "group":
        values = [F.one if g in L else F.zero for g in G.elements]
    else:
        if F.characteristic and len(L) % F.characteristic == 0:
            raise CharDividesOrder(f"|L| = {len(L)} is zero in {F.name}")
        w = F.one / F(len(L))
        values = [w if g in L else F.zero for g in G.elements]
    return action_on_base_field(H, values, desc)


def enumerate_base_field_actions(H: FinHopf) -> list[tuple[frozenset, PartialActionMap]]:
    """One partial action on k per subgroup of G (dual case: subgroups whose
    order is invertible in the field)."""
    G = H.group
    out = []
    for L in G.subgroups:
        try:
            out.append((L, subgroup_to_action(H, L)))
        except CharDividesOrder:
            continue
    return out


def brute_force_base_field_actions(H: FinHopf) -> list[tuple]:
    """Every functional lambda on H over a finite field that defines a partial
    action on k, by exhaustive search."""
    F = H.field
    if not F.is_finite:
        raise ValueError("brute force search needs a finite field")
    found = []
    elements = list(F.elements())
    for values in itertools.product(elements, repeat=H.dim):
        pa = action_on_base_field(H, values)
        if validate_partial_action(pa).ok:
            found.append(tuple(values))
    return found


def translation_action(G: AbelianGroup, field) -> PartialActionMap:
    """The global action of kG on k^G permuting the idempotents u_x."""
    from .hopf import build_group_algebra

    H = build_group_algebra(G, field)
    n = G.order
    B = product_algebra(field, n, prefix="u_")
    B = FinAlgebra(field, tuple("u_" + G.label(x) for x in G.elements), B.mult, B.unit)
    act = tuple(
        tuple(field.unit_vector(n, G.index(G.mul(g, x))) for x in G.elements)
        for g in G.elements
    )
    return PartialActionMap(H, B, act, "translation")


def induced_partial_action(glob: PartialActionMap, e: Sequence) -> PartialActionMap:
    """The partial action h . (ea) = e (h |> ea) on the corner algebra eB."""
    H, B = glob.hopf, glob.target
    F = glob.field
    e = tuple(F(x) for x in e)
    if B.mul(e, e) != e:
        raise NotIdempotent(e)
    for i in range(B.dim):
        b = B.basis(i)
        if B.mul(e, b) != B.mul(b, e):
            raise NotCentral(e)
    if not glob.is_global or not validate_partial_action(glob).ok:
        raise NotGlobal(glob.description)

    spanning = [B.mul(e, B.basis(i)) for i in range(B.dim)]
    keep = independent_subset(spanning, F)
    vectors = [spanning[i] for i in keep]
    sub = SubspaceBasis(vectors, F, B.dim)
    labels = tuple(f"e*{B.labels[i]}" for i in keep)
    q = sub.dim
    mult = tuple(tuple(sub.coords(B.mul(vectors[i], vectors[j])) for j in range(q)) for i in range(q))
    unit = sub.coords(e)
    A = FinAlgebra(F, labels, mult, unit)
    act = tuple(
        tuple(sub.coords(B.mul(e, glob.act_basis(h, vectors[a]))) for a in range(q))
        for h in range(H.dim)
    )
    return PartialActionMap(H, A, act, f"induced({glob.description})")
