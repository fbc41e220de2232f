"""Independent brute-force models used as test oracles.

Everything here works directly with group elements and plain Python
scalars (Fraction, or ints reduced mod p) for the partial actions of kG and
(kG)* on the base field given by a subgroup L.  None of it calls the
package's convolution, idempotent or coboundary code.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


class Scalars:
    """Arithmetic in Q (p = 0) or F_p on plain ints."""

    def __init__(self, p: int = 0):
        self.p = p

    def norm(self, x):
        if self.p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return x % self.p
        return Fraction(x)

    def inv(self, x):
        return pow(x, -1, self.p) if self.p else 1 / Fraction(x)

    def elements(self):
        return range(self.p)


class GroupModel:
    """Z_{n1} x ... x Z_{nk} as residue tuples."""

    def __init__(self, orders):
        self.orders = tuple(orders)
        self.elements = list(itertools.product(*(range(n) for n in self.orders)))
        self.identity = tuple(0 for _ in self.orders)

    def mul(self, g, h):
        return tuple((a + b) % n for a, b, n in zip(g, h, self.orders))

    def inv(self, g):
        return tuple((-a) % n for a, n in zip(g, self.orders))

    def subgroups(self):
        """Every subset closed under the product and containing e."""
        out = []
        for mask in range(1, 2 ** len(self.elements)):
            s = {g for i, g in enumerate(self.elements) if mask >> i & 1}
            if self.identity in s and all(self.mul(a, b) in s for a in s for b in s):
                out.append(frozenset(s))
        return out


class BaseFieldModel:
    """Partial action of kG ("group") or (kG)* ("dual") on k through L.

    Cochains are dicts from tuples of group elements (naming the basis
    elements d_g or p_g) to scalars.
    """

    def __init__(self, group: GroupModel, kind: str, L, scalars: Scalars):
        self.G, self.kind, self.L, self.k = group, kind, frozenset(L), scalars
        if kind == "group":
            self.lam = {g: scalars.norm(1 if g in self.L else 0) for g in group.elements}
        else:
            w = scalars.norm(Fraction(1, len(self.L)))
            self.lam = {g: (w if g in self.L else scalars.norm(0)) for g in group.elements}

    def tuples(self, n):
        return list(itertools.product(self.G.elements, repeat=n))

    def counit(self, g):
        if self.kind == "group":
            return self.k.norm(1)
        return self.k.norm(1 if g == self.G.identity else 0)

    def convolve(self, f, g, n):
        k = self.k
        if self.kind == "group":
            return {t: k.norm(f[t] * g[t]) for t in self.tuples(n)}
        out = {}
        for t in self.tuples(n):
            acc = k.norm(0)
            for ys in self.tuples(n):
                zs = tuple(self.G.mul(self.G.inv(y), x) for y, x in zip(ys, t))
                acc = k.norm(acc + f[ys] * g[zs])
            out[t] = acc
        return out

    def unit(self, n):
        out = {}
        for t in self.tuples(n):
            c = self.k.norm(1)
            for g in t:
                c = self.k.norm(c * self.counit(g))
            out[t] = c
        return out

    def product_basis(self, t):
        """The product of the basis elements named by t, as {g: coeff}."""
        if self.kind == "group":
            x = self.G.identity
            for g in t:
                x = self.G.mul(x, g)
            return {x: self.k.norm(1)}
        if not t:
            return {g: self.k.norm(1) for g in self.G.elements}
        return {t[0]: self.k.norm(1)} if all(g == t[0] for g in t) else {}

    def act_on_one(self, element):
        acc = self.k.norm(0)
        for g, c in element.items():
            acc = self.k.norm(acc + c * self.lam[g])
        return acc

    def e_product_form(self, n):
        """e~_{1,n} * e~_{2,n} * ... * e~_{n,n}, each computed from the
        product of the leading basis elements."""
        out = self.unit(n)
        for l in range(1, n + 1):
            factor = {}
            for t in self.tuples(n):
                c = self.act_on_one(self.product_basis(t[:l]))
                for g in t[l:]:
                    c = self.k.norm(c * self.counit(g))
                factor[t] = c
            out = self.convolve(out, factor, n)
        return out

    def compose_mu(self, f, n, i):
        """(f o mu_i) on tuples of length n+1."""
        out = {}
        for t in self.tuples(n + 1):
            acc = self.k.norm(0)
            for x, c in self.product_basis(t[i - 1:i + 1]).items():
                acc = self.k.norm(acc + c * f[t[:i - 1] + (x,) + t[i + 1:]])
            out[t] = acc
        return out

    def E(self, f, n):
        return {t: self.k.norm(self.lam[t[0]] * f[t[1:]]) for t in self.tuples(n + 1)}

    def include(self, f, n):
        return {t: self.k.norm(f[t[:n]] * self.counit(t[n])) for t in self.tuples(n + 1)}

    def inverse(self, f, n):
        """Inverse of f in the ideal e_n * Hom by solving f * g = e_n."""
        e = self.e_product_form(n)
        if self.kind == "group":
            # pointwise: the ideal is supported where e_n = 1
            if any(bool(f[t]) != bool(e[t]) for t in f):
                raise ValueError("not invertible")
            return {t: (self.k.inv(f[t]) if e[t] else self.k.norm(0)) for t in f}
        keys = self.tuples(n)
        index = {t: i for i, t in enumerate(keys)}
        rows = []
        for t in keys:
            row = [self.k.norm(0)] * len(keys)
            for ys in keys:
                zs = tuple(self.G.mul(self.G.inv(y), x) for y, x in zip(ys, t))
                row[index[zs]] = self.k.norm(row[index[zs]] + f[ys])
            rows.append(row + [e[t]])
        sol = _solve(rows, self.k)
        if sol is None:
            raise ValueError("not invertible")
        g = self.convolve(e, {t: sol[index[t]] for t in keys}, n)
        if self.convolve(f, g, n) != e:
            raise ValueError("not invertible")
        return g

    def coboundary(self, f, n):
        if n == 0:
            a = f[()]
            return {(g,): self.k.norm(self.lam[g] * a * self.k.inv(a)) for g in self.G.elements}
        inv = self.inverse(f, n)
        out = self.E(f, n)
        for i in range(1, n + 1):
            term = self.compose_mu(f if i % 2 == 0 else inv, n, i)
            out = self.convolve(out, term, n + 1)
        last = self.include(f if (n + 1) % 2 == 0 else inv, n)
        return self.convolve(out, last, n + 1)


def _solve(rows, k):
    """Gaussian elimination on an augmented matrix; any solution or None."""
    rows = [list(r) for r in rows]
    m, ncols = len(rows), len(rows[0]) - 1
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = k.inv(rows[r][c])
        rows[r] = [k.norm(x * inv) for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [k.norm(a - f * b) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(rows[i][-1] for i in range(r, m)):
        return None
    sol = [k.norm(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][-1]
    return sol


def brute_force_h1_base_field(model: BaseFieldModel):
    """(|Z^1|, |B^1|, |H^1|) over a finite field by running through every
    functional on H and keeping those invertible in the degree-one ideal."""
    k = model.k
    els = model.G.elements
    e1 = model.e_product_form(1)
    e2 = model.e_product_form(2)
    cochains = []
    for values in itertools.product(list(k.elements()), repeat=len(els)):
        f = {(g,): v for g, v in zip(els, values)}
        if model.convolve(e1, f, 1) != f:
            continue
        try:
            model.inverse(f, 1)
        except ValueError:
            continue
        cochains.append(f)
    Z = [f for f in cochains if model.coboundary(f, 1) == e2]
    units = [a for a in k.elements() if a]
    B = {tuple(sorted(model.coboundary({(): a}, 0).items())) for a in units}
    return len(Z), len(B), len(Z) // len(B)


def as_model_cochain(model: BaseFieldModel, cochain, field_to_int):
    """Translate a package Cochain on A = k into the oracle's dict form."""
    G = model.G
    n = cochain.degree
    out = {}
    for t in model.tuples(n):
        idx = 0
        for g in t:
            idx = idx * len(G.elements) + G.elements.index(g)
        out[t] = model.k.norm(field_to_int(cochain.values[idx][0]))
    return out


def base_field_action_functionals(group: GroupModel, kind: str, k: Scalars):
    """Every lambda: G -> F_p satisfying the partial action axioms for A = k,
    written out as scalar equations (kG: idempotent values, lambda(g)lambda(h) =
    lambda(g)lambda(gh); (kG)*: lambda = lambda*lambda and lambda(g)lambda(h)
    = lambda(gh^-1)lambda(h))."""
    els = group.elements
    idx = {g: i for i, g in enumerate(els)}
    out = []
    for values in itertools.product(list(k.elements()), repeat=len(els)):
        lam = dict(zip(els, values))
        if kind == "group":
            ok = lam[group.identity] == 1 and all(k.norm(lam[g] * lam[g]) == lam[g] for g in els)
            ok = ok and all(k.norm(lam[g] * lam[h]) == k.norm(lam[g] * lam[group.mul(g, h)]) for g in els for h in els)
        else:
            ok = k.norm(sum(values)) == 1
            ok = ok and all(
                k.norm(sum(lam[h] * lam[group.mul(group.inv(h), g)] for h in els)) == lam[g] for g in els)
            ok = ok and all(
                k.norm(lam[g] * lam[h]) == k.norm(lam[group.mul(g, group.inv(h))] * lam[h])
                for g in els for h in els)
        if ok:
            out.append(tuple(values[idx[g]] for g in els))
    return out
