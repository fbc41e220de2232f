"""Randomised identity batteries for the partial cochain complex.

Each battery samples cochains with an explicit ``random.Random`` and records
one check per identity (and per index where the identity is indexed).  A
failing check carries the trial number and the offending index.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cohomology import E_map, coboundary, compose_mu, include
from .convolution import (
    Cochain,
    convolve,
    e_nested,
    e_product,
    e_tilde,
    e_tilde_padded,
    idempotent,
    invert_in_ideal,
    random_invertible,
)
from .hopf import tensor_decode
from .partial_action import PartialActionMap
from .report import ValidationReport


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    trials: int = 25
    lemma_degree: int = 2
    idempotent_max_degree: int = 3
    complex_degrees: tuple = (0, 1)


def _mu(f: Cochain, *indices: int) -> Cochain:
    """f o mu_{i_1} o mu_{i_2} o ...: indices listed left to right as written."""
    for i in indices:
        f = compose_mu(f, i)
    return f


class _Recorder:
    """Collects failures per identity across trials, emitting one check each."""

    def __init__(self):
        self.order: list[str] = []
        self.failed: dict[str, dict] = {}

    def record(self, name: str, ok: bool, witness: dict) -> None:
        if name not in self.order:
            self.order.append(name)
        if not ok and name not in self.failed:
            self.failed[name] = witness

    def into(self, report: ValidationReport) -> ValidationReport:
        for name in self.order:
            report.add(name, name not in self.failed, self.failed.get(name))
        return report


def first_difference(lhs: Cochain, rhs: Cochain) -> dict:
    labels = lhs.pa.hopf.labels
    for idx, (x, y) in enumerate(zip(lhs.values, rhs.values)):
        if x != y:
            multi = tensor_decode(lhs.dims, idx) if lhs.degree else ()
            return {"basis": [labels[i] for i in multi], "lhs": x, "rhs": y}
    return {}


# ------------------------------------------------------------------ first


def first_lemma_identities(f: Cochain, g: Cochain, rec: _Recorder, tag: dict) -> None:
    """The seven identities relating E, i, mu and the idempotents to the
    convolution product, for f, g of degree n."""
    pa, n = f.pa, f.degree
    e_n, e_up = idempotent(pa, n), idempotent(pa, n + 1)

    def check(name, lhs, rhs, **extra):
        rec.record(f"[n={n}] {name}", lhs == rhs, {**tag, **extra, **first_difference(lhs, rhs)})

    check("p1(i) E(f*g) = E(f)*E(g)", E_map(convolve(f, g)), convolve(E_map(f), E_map(g)))
    check("p1(ii) E(e_n) = e_{n+1}", E_map(e_n), e_up)
    for m in (n + 1, n + 2):
        top = f"n+{m - n}"
        check(f"p1(iii) i_{{n,{top}}}(f*g) = i(f)*i(g)", include(convolve(f, g), m),
              convolve(include(f, m), include(g, m)))
        check(f"p1(iv) i_{{n,{top}}}(e_n)*e_{{{top}}} = e_{{{top}}}", convolve(include(e_n, m), idempotent(pa, m)),
              idempotent(pa, m))
    for i in range(1, n + 1):
        check(f"p1(v) (f*g) o mu_{i} = (f o mu_{i})*(g o mu_{i})", compose_mu(convolve(f, g), i),
              convolve(compose_mu(f, i), compose_mu(g, i)))
    if n >= 1:
        check("p1(vi) (e_n o mu_n)*i_{n,n+1}(e_n) = e_{n+1}",
              convolve(compose_mu(e_n, n), include(e_n, n + 1)), e_up)
    for i in range(1, n):
        check(f"p1(vii) (e_n o mu_{i})*e_{{n+1}} = e_{{n+1}}", convolve(compose_mu(e_n, i), e_up), e_up)


# ----------------------------------------------------------------- second


def second_lemma_identities(f: Cochain, n: int, rec: _Recorder, tag: dict) -> None:
    """The nine identities for f of degree n-1 (n >= 2); indexed items are
    recorded per index, and an item with an empty index range is recorded as
    vacuous."""
    pa = f.pa
    if f.degree != n - 1 or n < 2:
        raise ValueError("need f of degree n-1 with n >= 2")
    inv = invert_in_ideal(f)
    e_prev, e_up = idempotent(pa, n - 1), idempotent(pa, n + 1)
    et1 = e_tilde(pa, 1)

    def check(name, lhs, rhs, **extra):
        rec.record(f"[n={n}] {name}", lhs == rhs, {**tag, **extra, **first_difference(lhs, rhs)})

    def vacuous(name):
        rec.record(f"[n={n}] {name} (vacuous: empty index range)", True, {})

    check("p2(i) E^n(i_{n-1,n} f) = i_{n,n+1}(E^{n-1} f)", E_map(include(f, n)), include(E_map(f), n + 1))

    for i in range(1, n):
        check(f"p2(ii) (e_{{n-1}} o mu_{i} o mu_{i + 1})*e_{{n+1}} = e_{{n+1}}",
              convolve(_mu(e_prev, i, i + 1), e_up), e_up)

    cases = [(i, j) for i in range(1, n) for j in range(2, n - i + 1)]
    if not cases:
        vacuous("p2(iii)")
    for i, j in cases:
        check(f"p2(iii) (e_{{n-1}} o mu_{i} o mu_{i + j})*e_{{n+1}} = e_{{n+1}}",
              convolve(_mu(e_prev, i, i + j), e_up), e_up)

    for i in range(1, n):
        check(f"p2(iv) E^n(f o mu_{i}) = E^{{n-1}}(f) o mu_{i + 1}", E_map(compose_mu(f, i)),
              compose_mu(E_map(f), i + 1))

    ef = E_map(f)
    check("p2(v) E^n E^{n-1} f = i_{1,n+1}(e~_1)*(E^{n-1}(f) o mu_1)", E_map(ef),
          convolve(include(et1, n + 1), compose_mu(ef, 1)))

    for i in range(1, n):
        check(f"p2(vi) i(f o mu_{i})*(i(f^-1) o mu_{i}) = i(e_{{n-1}} o mu_{i})",
              convolve(include(compose_mu(f, i), n + 1), compose_mu(include(inv, n), i)),
              include(compose_mu(e_prev, i), n + 1))

    check("p2(vii) (i_{n-1,n}(f) o mu_n)*i_{n-1,n+1}(f^-1) = i_{n-1,n+1}(e_{n-1})",
          convolve(compose_mu(include(f, n), n), include(inv, n + 1)), include(e_prev, n + 1))

    for i in range(1, n):
        check(f"p2(viii) (f o mu_{i} o mu_{i})*(f^-1 o mu_{i} o mu_{i + 1}) = e_{{n-1}} o mu_{i} o mu_{i}",
              convolve(_mu(f, i, i), _mu(inv, i, i + 1)), _mu(e_prev, i, i))

    cases = [(i, j) for i in range(1, n - 1) for j in range(2, n - i + 1)]
    if not cases:
        vacuous("p2(ix)")
    for i, j in cases:
        check(f"p2(ix) (f o mu_{i} o mu_{i + j})*(f^-1 o mu_{i + j - 1} o mu_{i}) = e_{{n-1}} o mu_{i} o mu_{i + j}",
              convolve(_mu(f, i, i + j), _mu(inv, i + j - 1, i)), _mu(e_prev, i, i + j))


def lemma_battery(pa: PartialActionMap, config: SuiteConfig = SuiteConfig(),
                  second_degrees: tuple | None = None) -> ValidationReport:
    """Both lemma suites on ``config.trials`` random invertible cochains.

    The first suite runs in degree ``config.lemma_degree``.  The second runs
    for every n in ``second_degrees`` (default: the lemma degree and the next
    one, since two of its items have no indices at n = 2)."""
    rng = random.Random(config.seed)
    n = config.lemma_degree
    degrees = second_degrees if second_degrees is not None else (n, n + 1)
    rec = _Recorder()
    for t in range(config.trials):
        f = random_invertible(pa, n, rng)
        g = random_invertible(pa, n, rng)
        first_lemma_identities(f, g, rec, {"trial": t})
    for m in degrees:
        # degree n-1 = 2 cochains are costly; the extra degree gets fewer trials
        trials = config.trials if m == n else max(1, config.trials // 5)
        for t in range(trials):
            h = random_invertible(pa, m - 1, rng)
            second_lemma_identities(h, m, rec, {"trial": t})
    return rec.into(ValidationReport("lemma identities"))


# ---------------------------------------------------------------- complex


def complex_battery(pa: PartialActionMap, config: SuiteConfig = SuiteConfig()) -> ValidationReport:
    """delta o delta = e_{n+2} and delta(f*g) = delta(f)*delta(g)."""
    rng = random.Random(config.seed)
    rec = _Recorder()
    for n in config.complex_degrees:
        target = idempotent(pa, n + 2)
        for t in range(config.trials):
            f = random_invertible(pa, n, rng)
            g = random_invertible(pa, n, rng)
            df = coboundary(f)
            dd = coboundary(df)
            rec.record(f"delta_{n + 1} o delta_{n} = e_{n + 2}", dd == target,
                       {"trial": t, **first_difference(dd, target)})
            lhs = coboundary(convolve(f, g))
            rhs = convolve(df, coboundary(g))
            rec.record(f"delta_{n}(f*g) = delta_{n}(f)*delta_{n}(g)", lhs == rhs,
                       {"trial": t, **first_difference(lhs, rhs)})
    return rec.into(ValidationReport("complex identities"))


def idempotent_battery(pa: PartialActionMap, max_degree: int = 3) -> ValidationReport:
    """Product and nested forms of e_n agree, and each padded e~_{l,n}
    absorbs e_n."""
    report = ValidationReport("idempotent system")
    for n in range(1, max_degree + 1):
        prod_form, nested = e_product(pa, n), e_nested(pa, n)
        report.add(f"e_{n} product form = nested form", prod_form == nested, first_difference(prod_form, nested))
        for l in range(1, n + 1):
            lhs = convolve(e_tilde_padded(pa, l, n), nested)
            report.add(f"e~_{{{l},{n}}} * e_{n} = e_{n}", lhs == nested, first_difference(lhs, nested))
    return report


def property_suite(pa: PartialActionMap, config: SuiteConfig = SuiteConfig()) -> ValidationReport:
    report = ValidationReport("property suite")
    report.extend(idempotent_battery(pa, config.idempotent_max_degree))
    report.extend(complex_battery(pa, config))
    report.extend(lemma_battery(pa, config))
    return report
