"""Twisted partial actions and the partial crossed product (A (x) H)(1 # 1)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .cohomology import BaseSubalgebra, coboundary, compute_EA
from .convolution import (
    Cochain,
    NotInIdeal,
    NotInvertible,
    convolve,
    e_tilde_padded,
    e_tilde,
    from_function,
    idempotent,
    invert_in_ideal,
)
from .hopf import tensor_index
from .linalg import Mat, SubspaceBasis, independent_subset, kernel_basis
from .partial_action import PartialActionMap, validate_partial_action
from .report import ValidationReport


class NotNormalized(ValueError):
    pass


class NotACocycle(ValueError):
    pass


class UnitValueNotInvertible(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TwistedPartialAction:
    pa: PartialActionMap
    omega: Cochain
    omega_inv: Cochain

    @classmethod
    def untwisted(cls, pa: PartialActionMap) -> "TwistedPartialAction":
        e2 = idempotent(pa, 2)
        return cls(pa, e2, e2)

    @classmethod
    def from_cocycle(cls, omega: Cochain) -> "TwistedPartialAction":
        return cls(omega.pa, omega, invert_in_ideal(omega))


def omega_at(omega: Cochain, h: Sequence, l: Sequence) -> tuple:
    """omega(h, l) for arbitrary vectors h, l of H."""
    pa = omega.pa
    F = pa.field
    d = pa.hopf.dim
    acc = [F.zero] * pa.target.dim
    for i, a in enumerate(h):
        if not a:
            continue
        for j, b in enumerate(l):
            if not b:
                continue
            v = omega.values[i * d + j]
            c = a * b
            for t, x in enumerate(v):
                if x:
                    acc[t] = acc[t] + c * x
    return tuple(acc)


def _vadd(acc: list, v: Sequence, c):
    for t, x in enumerate(v):
        if x:
            acc[t] = acc[t] + c * x


def cocycle_condition(omega: Cochain) -> tuple[bool, dict | None]:
    """(h1 . w(l1, m1)) w(h2, l2 m2) = w(h1, l1) w(h2 l2, m) on basis triples."""
    pa = omega.pa
    H, A = pa.hopf, pa.target
    F = pa.field
    for h, l, m in itertools.product(range(H.dim), repeat=3):
        lhs = [F.zero] * A.dim
        rhs = [F.zero] * A.dim
        for h1, h2, ch in H.comult[h]:
            for l1, l2, cl in H.comult[l]:
                for m1, m2, cm in H.comult[m]:
                    lm = H.mul(H.basis(l2), H.basis(m2))
                    v = A.mul(pa.act_basis(h1, omega(l1, m1)), omega_at(omega, H.basis(h2), lm))
                    _vadd(lhs, v, ch * cl * cm)
                hl = H.mul(H.basis(h2), H.basis(l2))
                v = A.mul(omega(h1, l1), omega_at(omega, hl, H.basis(m)))
                _vadd(rhs, v, ch * cl)
        if lhs != rhs:
            return False, {"basis": [H.labels[h], H.labels[l], H.labels[m]], "lhs": tuple(lhs), "rhs": tuple(rhs)}
    return True, None


def is_normalized(omega: Cochain) -> tuple[bool, dict | None]:
    """omega(h, 1_H) = omega(1_H, h) = h . 1_A."""
    pa = omega.pa
    H = pa.hopf
    for h in range(H.dim):
        expect = pa.unit_images[h]
        left = omega_at(omega, H.unit, H.basis(h))
        right = omega_at(omega, H.basis(h), H.unit)
        if left != expect or right != expect:
            return False, {"basis": [H.labels[h]], "lhs": (left, right), "rhs": expect}
    return True, None


def validate_twisted(tpa: TwistedPartialAction) -> ValidationReport:
    pa, w, wi = tpa.pa, tpa.omega, tpa.omega_inv
    H, A = pa.hopf, pa.target
    F = pa.field
    rep = ValidationReport("twisted partial action")
    hl, al = H.labels, A.labels

    bad = None
    for a in range(A.dim):
        if pa.act_vec(H.unit, A.basis(a)) != A.basis(a):
            bad = {"basis": [al[a]]}
            break
    rep.add("TPA1", bad is None, bad)

    bad = None
    for h, a, b in itertools.product(range(H.dim), range(A.dim), range(A.dim)):
        lhs = pa.act_basis(h, A.mul(A.basis(a), A.basis(b)))
        rhs = [F.zero] * A.dim
        for j, k, c in H.comult[h]:
            _vadd(rhs, A.mul(pa.act_basis(j, A.basis(a)), pa.act_basis(k, A.basis(b))), c)
        if lhs != tuple(rhs):
            bad = {"basis": [hl[h], al[a], al[b]], "lhs": lhs, "rhs": tuple(rhs)}
            break
    rep.add("TPA2", bad is None, bad)

    bad = None
    for h, l, a in itertools.product(range(H.dim), range(H.dim), range(A.dim)):
        lhs = [F.zero] * A.dim
        rhs = [F.zero] * A.dim
        for h1, h2, ch in H.comult[h]:
            for l1, l2, cl in H.comult[l]:
                c = ch * cl
                _vadd(lhs, A.mul(pa.act_basis(h1, pa.act_basis(l1, A.basis(a))), w(h2, l2)), c)
                prod = H.mul(H.basis(h2), H.basis(l2))
                _vadd(rhs, A.mul(w(h1, l1), pa.act_vec(prod, A.basis(a))), c)
        if lhs != rhs:
            bad = {"basis": [hl[h], hl[l], al[a]], "lhs": tuple(lhs), "rhs": tuple(rhs)}
            break
    rep.add("TPA3", bad is None, bad)

    bad = None
    for h, l in itertools.product(range(H.dim), repeat=2):
        rhs = [F.zero] * A.dim
        for h1, h2, ch in H.comult[h]:
            for l1, l2, cl in H.comult[l]:
                prod = H.mul(H.basis(h2), H.basis(l2))
                _vadd(rhs, A.mul(w(h1, l1), pa.act_vec(prod, A.unit)), ch * cl)
        if w(h, l) != tuple(rhs):
            bad = {"basis": [hl[h], hl[l]], "lhs": w(h, l), "rhs": tuple(rhs)}
            break
    rep.add("TPA4", bad is None, bad)

    e12 = e_tilde_padded(pa, 1, 2)
    et2 = e_tilde(pa, 2)
    e2 = idempotent(pa, 2)
    rep.add("e~12 idempotent", convolve(e12, e12) == e12)
    rep.add("e~2 idempotent", convolve(et2, et2) == et2)
    rep.add("e2 = e~12 * e~2", convolve(e12, et2) == e2)
    rep.add("omega in ideal", convolve(e2, w) == w and convolve(e2, wi) == wi)
    rep.add("omega invertible", convolve(w, wi) == e2 and convolve(wi, w) == e2)
    ok, wit = cocycle_condition(w)
    rep.add("cocycle condition", ok, wit)
    rep.extend(validate_partial_action(pa), prefix="untwisted ")
    return rep


def normalize_cocycle(omega: Cochain) -> tuple[Cochain, Cochain]:
    """(omega~, phi) with omega~ = omega . omega(1,1)^{-1} normalized and
    delta_1 phi = omega~ * omega^{-1}."""
    pa = omega.pa
    H, A = pa.hopf, pa.target
    ok, wit = cocycle_condition(omega)
    if not ok:
        raise NotACocycle(wit)
    c = omega_at(omega, H.unit, H.unit)
    c_inv = A.inverse(c)
    if c_inv is None:
        raise UnitValueNotInvertible(c)
    normalized = omega.times_element(c_inv)
    phi = from_function(pa, 1, lambda m: A.mul(pa.unit_images[m[0]], c_inv))
    if not is_normalized(normalized)[0]:
        raise NotNormalized("rescaled cocycle is not normalized")
    if coboundary(phi) != convolve(normalized, invert_in_ideal(omega)):
        raise NotACocycle("delta_1 phi differs from omega~ * omega^{-1}")
    return normalized, phi


# ----------------------------------------------------------- crossed product


class CrossedProduct:
    """The subspace (A (x) H)(1 (x) 1) with the twisted product

        (a (x) h)(b (x) l) = a (h1 . b) w(h2, l1) (x) h3 l2.

    Ambient index of a (x) h is a * dim H + h.  Elements of the crossed
    product are handled in coordinates with respect to ``basis``."""

    def __init__(self, tpa: TwistedPartialAction):
        self.tpa = tpa
        pa = tpa.pa
        self.pa = pa
        self.H, self.A = pa.hopf, pa.target
        self.field = pa.field
        dA, dH = self.A.dim, self.H.dim
        self.ambient_dim = dA * dH
        self._amb_cache: dict = {}
        u = self.ambient_one
        images = [self.ambient_mul(self.ambient_basis(i), u) for i in range(self.ambient_dim)]
        self.right_unit_images = images
        keep = independent_subset(images, self.field)
        self.representatives = keep
        self.basis = SubspaceBasis([images[i] for i in keep], self.field, self.ambient_dim)
        self.labels = tuple(f"{self.A.labels[i // dH]}#{self.H.labels[i % dH]}" for i in keep)

    # ambient arithmetic
    def ambient_basis(self, i: int) -> tuple:
        return self.field.unit_vector(self.ambient_dim, i)

    def pure(self, a: Sequence, h: Sequence) -> tuple:
        """The ambient vector a (x) h."""
        dH = self.H.dim
        out = [self.field.zero] * self.ambient_dim
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(h):
                    if y:
                        out[i * dH + j] = out[i * dH + j] + x * y
        return tuple(out)

    @property
    def ambient_one(self) -> tuple:
        return self.pure(self.A.unit, self.H.unit)

    def _basis_product(self, i: int, j: int) -> tuple:
        key = (i, j)
        if key not in self._amb_cache:
            H, A, pa = self.H, self.A, self.pa
            w = self.tpa.omega
            dH = H.dim
            a, h = divmod(i, dH)
            b, l = divmod(j, dH)
            acc = [self.field.zero] * self.ambient_dim
            ab = [A.mul(A.basis(a), pa.act_basis(h1, A.basis(b))) for h1 in range(dH)]
            for (h1, h2, h3), ch in H.split_terms(h, 3):
                if not any(ab[h1]):
                    continue
                for l1, l2, cl in H.comult[l]:
                    coeff = A.mul(ab[h1], w(h2, l1))
                    if not any(coeff):
                        continue
                    for k, cm in H.mult_terms(h3, l2):
                        c = ch * cl * cm
                        for t, x in enumerate(coeff):
                            if x:
                                acc[t * dH + k] = acc[t * dH + k] + c * x
            self._amb_cache[key] = tuple(acc)
        return self._amb_cache[key]

    def ambient_mul(self, x: Sequence, y: Sequence) -> tuple:
        acc = [self.field.zero] * self.ambient_dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    _vadd(acc, self._basis_product(i, j), a * b)
        return tuple(acc)

    # the crossed product itself
    @property
    def dim(self) -> int:
        return self.basis.dim

    def to_ambient(self, x: Sequence) -> tuple:
        return self.basis.vector(x)

    def from_ambient(self, v: Sequence) -> tuple:
        c = self.basis.coords(v)
        if c is None:
            raise ValueError("vector is not in the crossed product")
        return c

    def element(self, a: Sequence, h: Sequence) -> tuple:
        """Coordinates of a # h = (a (x) h)(1 (x) 1)."""
        return self.from_ambient(self.ambient_mul(self.pure(a, h), self.ambient_one))

    def project(self, v: Sequence) -> tuple:
        """Coordinates of v (1 (x) 1) for an ambient vector v."""
        return self.from_ambient(self.ambient_mul(v, self.ambient_one))

    def basis_element(self, i: int) -> tuple:
        return self.field.unit_vector(self.dim, i)

    @cached_property
    def structure(self) -> list[list[tuple | None]]:
        vecs = self.basis.vectors
        return [[self.basis.coords(self.ambient_mul(x, y)) for y in vecs] for x in vecs]

    @cached_property
    def is_closed(self) -> bool:
        return all(c is not None for row in self.structure for c in row)

    def mul(self, x: Sequence, y: Sequence) -> tuple:
        acc = [self.field.zero] * self.dim
        st = self.structure
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    _vadd(acc, st[i][j], a * b)
        return tuple(acc)

    @cached_property
    def one(self) -> tuple:
        return self.from_ambient(self.ambient_mul(self.ambient_one, self.ambient_one))

    def embed(self, a: Sequence) -> tuple:
        """i(a) = a # 1_H."""
        return self.element(a, self.H.unit)

    @cached_property
    def embedding_matrix(self) -> Mat:
        cols = [self.embed(self.A.basis(a)) for a in range(self.A.dim)]
        return Mat(self.dim, self.A.dim, tuple(cols[j][i] for i in range(self.dim) for j in range(self.A.dim)), self.field)

    # coaction rho(a # h) = a # h1 (x) h2, valued in CP (x) H (index i * dim H + h)
    def ambient_coaction(self, v: Sequence) -> tuple:
        dH = self.H.dim
        acc = [self.field.zero] * (self.dim * dH)
        for idx, c in enumerate(v):
            if not c:
                continue
            a, h = divmod(idx, dH)
            for h1, h2, ch in self.H.comult[h]:
                x = self.element(self.A.basis(a), self.H.basis(h1))
                for i, y in enumerate(x):
                    if y:
                        acc[i * dH + h2] = acc[i * dH + h2] + c * ch * y
        return tuple(acc)

    def coaction(self, x: Sequence) -> tuple:
        return self.ambient_coaction(self.to_ambient(x))

    def right_multiplication_kernel(self) -> list[tuple]:
        n = self.ambient_dim
        imgs = self.right_unit_images
        M = Mat(n, n, tuple(imgs[j][i] for i in range(n) for j in range(n)), self.field)
        return [k.entries for k in kernel_basis(M)]


def _check_unit(cp: CrossedProduct) -> tuple[bool, dict | None]:
    if not cp.is_closed:
        return False, {"reason": "subspace not closed under the product"}
    one = cp.one
    for i in range(cp.dim):
        b = cp.basis_element(i)
        if cp.mul(one, b) != b or cp.mul(b, one) != b:
            return False, {"basis": [cp.labels[i]]}
    return True, None


def _check_assoc(cp: CrossedProduct) -> tuple[bool, dict | None]:
    vecs = cp.basis.vectors
    for i, j, k in itertools.product(range(cp.dim), repeat=3):
        x, y, z = vecs[i], vecs[j], vecs[k]
        lhs = cp.ambient_mul(cp.ambient_mul(x, y), z)
        rhs = cp.ambient_mul(x, cp.ambient_mul(y, z))
        if lhs != rhs:
            return False, {"basis": [cp.labels[i], cp.labels[j], cp.labels[k]]}
    return True, None


def build_crossed_product(tpa: TwistedPartialAction, strict: bool = True) -> CrossedProduct:
    if strict:
        ok, wit = is_normalized(tpa.omega)
        if not ok:
            raise NotNormalized(f"the crossed product is unital if, and only if, omega is normalized: {wit}")
        ok, wit = cocycle_condition(tpa.omega)
        if not ok:
            raise NotACocycle(f"the crossed product is associative if, and only if, omega is a cocycle: {wit}")
    cp = CrossedProduct(tpa)
    if strict and not cp.is_closed:
        raise NotACocycle("crossed product subspace is not closed")
    return cp


def check_unital_iff_normalized(tpa: TwistedPartialAction) -> ValidationReport:
    cp = CrossedProduct(tpa)
    rep = ValidationReport("unital iff normalized")
    norm, w1 = is_normalized(tpa.omega)
    unital, w2 = _check_unit(cp)
    rep.add("equivalence", norm == unital, {"normalized": norm, "unital": unital, "witness": w1 or w2})
    rep.checks[-1].note = f"normalized={norm} unital={unital}"
    return rep


def check_associativity_iff_cocycle(tpa: TwistedPartialAction) -> ValidationReport:
    cp = CrossedProduct(tpa)
    rep = ValidationReport("associative iff cocycle")
    coc, w1 = cocycle_condition(tpa.omega)
    assoc, w2 = _check_assoc(cp)
    rep.add("equivalence", coc == assoc, {"cocycle": coc, "associative": assoc, "witness": w1 or w2})
    rep.checks[-1].note = f"cocycle={coc} associative={assoc}"
    return rep


def criteria_summary(tpa: TwistedPartialAction) -> dict:
    """The four raw verdicts behind the two equivalences."""
    cp = CrossedProduct(tpa)
    return {
        "normalized": is_normalized(tpa.omega)[0],
        "unital": _check_unit(cp)[0],
        "cocycle": cocycle_condition(tpa.omega)[0],
        "associative": _check_assoc(cp)[0],
    }


def validate_crossed_product(cp: CrossedProduct) -> ValidationReport:
    rep = ValidationReport("crossed product")
    H, A = cp.H, cp.A
    F = cp.field
    rep.add("closed", cp.is_closed)
    ok, wit = _check_assoc(cp)
    rep.add("associativity", ok, wit)
    ok, wit = _check_unit(cp)
    rep.add("unit", ok, wit)

    bad = None
    for a, h in itertools.product(range(A.dim), range(H.dim)):
        rhs = [F.zero] * cp.ambient_dim
        for h1, h2, c in H.comult[h]:
            _vadd(rhs, cp.pure(A.mul(A.basis(a), cp.pa.unit_images[h1]), H.basis(h2)), c)
        if cp.ambient_mul(cp.pure(A.basis(a), H.basis(h)), cp.ambient_one) != tuple(rhs):
            bad = {"basis": [A.labels[a], H.labels[h]]}
            break
    rep.add("a#h = a(h1.1)#h2", bad is None, bad)
    bad = next(({"basis": [cp.labels[i]]} for i, v in enumerate(cp.basis.vectors)
                if cp.ambient_mul(v, cp.ambient_one) != v), None)
    rep.add("right multiplication by 1(x)1 fixes the crossed product", bad is None, bad)

    if cp.is_closed:
        bad = None
        for a, b in itertools.product(range(A.dim), repeat=2):
            lhs = cp.embed(A.mul(A.basis(a), A.basis(b)))
            if lhs != cp.mul(cp.embed(A.basis(a)), cp.embed(A.basis(b))):
                bad = {"basis": [A.labels[a], A.labels[b]]}
                break
        rep.add("embedding multiplicative", bad is None and cp.embed(A.unit) == cp.one, bad)
    rep.add("embedding injective", cp.embedding_matrix.rank() == A.dim)
    rep.extend(validate_coaction(cp))
    return rep


def validate_coaction(cp: CrossedProduct) -> ValidationReport:
    rep = ValidationReport("coaction")
    H = cp.H
    F = cp.field
    dH, q = H.dim, cp.dim

    bad = None
    for k in cp.right_multiplication_kernel():
        if any(cp.ambient_coaction(k)):
            bad = {"kernel_vector": k}
            break
    rep.add("coaction well defined", bad is None, bad)

    def rho(x):
        return cp.coaction(x)

    bad = None
    for i in range(q):
        r = rho(cp.basis_element(i))
        lhs = [F.zero] * (q * dH * dH)
        rhs = [F.zero] * (q * dH * dH)
        for j in range(q):
            for h in range(dH):
                c = r[j * dH + h]
                if not c:
                    continue
                rj = rho(cp.basis_element(j))
                for j2 in range(q):
                    for h2 in range(dH):
                        d = rj[j2 * dH + h2]
                        if d:
                            idx = (j2 * dH + h2) * dH + h
                            lhs[idx] = lhs[idx] + c * d
                for (h1, h2), d in H.coproduct(H.basis(h)).items():
                    idx = (j * dH + h1) * dH + h2
                    rhs[idx] = rhs[idx] + c * d
        if lhs != rhs:
            bad = {"basis": [cp.labels[i]]}
            break
    rep.add("coaction coassociative", bad is None, bad)

    bad = None
    for i in range(q):
        r = rho(cp.basis_element(i))
        back = [F.zero] * q
        for j in range(q):
            for h in range(dH):
                if r[j * dH + h]:
                    back[j] = back[j] + r[j * dH + h] * H.counit[h]
        if tuple(back) != cp.basis_element(i):
            bad = {"basis": [cp.labels[i]]}
            break
    rep.add("coaction counital", bad is None, bad)

    if cp.is_closed:
        bad = None
        for i, j in itertools.product(range(q), repeat=2):
            x, y = cp.basis_element(i), cp.basis_element(j)
            lhs = rho(cp.mul(x, y))
            rx, ry = rho(x), rho(y)
            rhs = [F.zero] * (q * dH)
            for a in range(q):
                for h in range(dH):
                    c = rx[a * dH + h]
                    if not c:
                        continue
                    for b in range(q):
                        for l in range(dH):
                            d = ry[b * dH + l]
                            if not d:
                                continue
                            xy = cp.mul(cp.basis_element(a), cp.basis_element(b))
                            for k, m in H.mult_terms(h, l):
                                for t, z in enumerate(xy):
                                    if z:
                                        rhs[t * dH + k] = rhs[t * dH + k] + c * d * m * z
            if lhs != tuple(rhs):
                bad = {"basis": [cp.labels[i], cp.labels[j]]}
                break
        one_rho = rho(cp.one)
        expect = [F.zero] * (q * dH)
        for t, z in enumerate(cp.one):
            for h in range(dH):
                if z and H.unit[h]:
                    expect[t * dH + h] = z * H.unit[h]
        rep.add("coaction multiplicative", bad is None and one_rho == tuple(expect), bad)
    return rep


def coinvariants(cp: CrossedProduct) -> list[tuple]:
    """A basis of {x : rho(x) = x (x) 1_H}."""
    H = cp.H
    q, dH = cp.dim, H.dim
    cols = []
    for i in range(q):
        x = cp.basis_element(i)
        r = list(cp.coaction(x))
        for t, z in enumerate(x):
            for h in range(dH):
                if z and H.unit[h]:
                    r[t * dH + h] = r[t * dH + h] - z * H.unit[h]
        cols.append(r)
    n = q * dH
    M = Mat(n, q, tuple(cols[j][i] for i in range(n) for j in range(q)), cp.field)
    return [k.entries for k in kernel_basis(M)]


# ------------------------------------------------------------- smash product


@dataclass(frozen=True, eq=False)
class PartialSmash:
    product: CrossedProduct
    base: BaseSubalgebra
    action: PartialActionMap


def restrict_to_EA(pa: PartialActionMap, base: BaseSubalgebra | None = None) -> tuple[PartialActionMap, BaseSubalgebra]:
    base = base or compute_EA(pa)
    act = []
    for h in range(pa.hopf.dim):
        row = []
        for v in base.vectors:
            c = base.from_A(pa.act_basis(h, v))
            if c is None:
                raise ValueError("E(A) is not stable under the partial action")
            row.append(c)
        act.append(tuple(row))
    return PartialActionMap(pa.hopf, base.algebra, tuple(act), f"{pa.description} on E(A)"), base


def build_partial_smash(pa: PartialActionMap) -> PartialSmash:
    restricted, base = restrict_to_EA(pa)
    return PartialSmash(build_crossed_product(TwistedPartialAction.untwisted(restricted)), base, restricted)


# ------------------------------------------------- isomorphism witnesses


@dataclass
class Failure:
    reason: str
    detail: dict | None = None

    def __bool__(self):
        return False


@dataclass
class IsomorphismWitness:
    matrix: Mat
    report: ValidationReport

    def __bool__(self):
        return self.report.ok


def cocycle_isomorphism_witness(omega: TwistedPartialAction, sigma: TwistedPartialAction, v: Cochain) -> IsomorphismWitness | Failure:
    """Check sigma * omega^{-1} = delta_1 v and build
    Phi(a #_omega h) = a u(h1) #_sigma h2 with u = v^{-1}."""
    pa = omega.pa
    if sigma.pa is not pa or v.pa is not pa:
        return Failure("instances differ")
    H, A = pa.hopf, pa.target
    F = pa.field
    try:
        u = invert_in_ideal(v)
    except (NotInvertible, NotInIdeal) as exc:
        return Failure("v is not a 1-cochain", {"error": str(exc)})
    from .convolution import evaluate

    if evaluate(v, [H.unit]) != A.unit or evaluate(u, [H.unit]) != A.unit:
        return Failure("v(1_H) or u(1_H) differs from 1_A")
    if convolve(sigma.omega, omega.omega_inv) != coboundary(v):
        return Failure("sigma * omega^{-1} != delta_1 v")

    cw = build_crossed_product(omega)
    cs = build_crossed_product(sigma)
    dH = H.dim

    def phi_ambient(vec):
        acc = [F.zero] * cs.dim
        for idx, c in enumerate(vec):
            if not c:
                continue
            a, h = divmod(idx, dH)
            for h1, h2, ch in H.comult[h]:
                _vadd(acc, cs.element(A.mul(A.basis(a), u(h1)), H.basis(h2)), c * ch)
        return tuple(acc)

    rep = ValidationReport("isomorphism witness")
    rep.add("well defined", all(not any(phi_ambient(k)) for k in cw.right_multiplication_kernel()))
    images = [phi_ambient(vec) for vec in cw.basis.vectors]
    M = Mat(cs.dim, cw.dim, tuple(images[j][i] for i in range(cs.dim) for j in range(cw.dim)), F)

    def phi(x):
        acc = [F.zero] * cs.dim
        for j, c in enumerate(x):
            if c:
                _vadd(acc, images[j], c)
        return tuple(acc)

    rep.add("bijective", cw.dim == cs.dim and M.rank() == cw.dim)
    bad = None
    for i, j in itertools.product(range(cw.dim), repeat=2):
        x, y = cw.basis_element(i), cw.basis_element(j)
        if phi(cw.mul(x, y)) != cs.mul(phi(x), phi(y)):
            bad = {"basis": [cw.labels[i], cw.labels[j]]}
            break
    rep.add("multiplicative", bad is None and phi(cw.one) == cs.one, bad)
    bad = None
    for a, i in itertools.product(range(A.dim), range(cw.dim)):
        x = cw.basis_element(i)
        if phi(cw.mul(cw.embed(A.basis(a)), x)) != cs.mul(cs.embed(A.basis(a)), phi(x)):
            bad = {"basis": [A.labels[a], cw.labels[i]]}
            break
    rep.add("left A-linear", bad is None, bad)
    bad = None
    for i in range(cw.dim):
        x = cw.basis_element(i)
        lhs = cs.coaction(phi(x))
        r = cw.coaction(x)
        rhs = [F.zero] * (cs.dim * dH)
        for j in range(cw.dim):
            for h in range(dH):
                c = r[j * dH + h]
                if c:
                    for t, z in enumerate(images[j]):
                        if z:
                            rhs[t * dH + h] = rhs[t * dH + h] + c * z
        if lhs != tuple(rhs):
            bad = {"basis": [cw.labels[i]]}
            break
    rep.add("right H-colinear", bad is None, bad)
    if not rep.ok:
        return Failure("Phi is not an isomorphism of crossed products", {"checks": [c.name for c in rep.failures()]})
    return IsomorphismWitness(M, rep)
