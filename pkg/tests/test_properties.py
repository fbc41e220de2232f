import pytest
from helpers import instance

from parcoh import properties
from parcoh.catalog import catalog_instances
from parcoh.cohomology import E_map, compose_mu, include
from parcoh.cohomology import coboundary as true_coboundary
from parcoh.convolution import convolve_all, invert_in_ideal
from parcoh.linalg import GF
from parcoh.properties import (
    SuiteConfig,
    complex_battery,
    idempotent_battery,
    lemma_battery,
    property_suite,
)
F5 = GF(5)
QUICK = SuiteConfig(seed=3, trials=3)


@pytest.mark.parametrize("entry", catalog_instances(F5), ids=lambda e: e.label)
def test_quick_suite_on_catalog(entry):
    rep = property_suite(entry.action, QUICK)
    assert rep.ok, [c.name for c in rep.checks if not c.passed]


def test_every_lemma_item_is_reported():
    pa, _ = instance("dual:Z2xZ2", F5, ["a"])
    names = [c.name for c in lemma_battery(pa, QUICK).checks]
    for item in ("(i)", "(ii)", "(iii)", "(iv)", "(v)", "(vi)", "(vii)", "(viii)", "(ix)"):
        assert any(item in n for n in names), item


def test_idempotent_battery_counts():
    pa, _ = instance("kG:Z4", F5, ["a^2"])
    rep = idempotent_battery(pa, 3)
    # per n: one product/nested comparison and n absorption checks
    assert len(rep.checks) == sum(1 + n for n in (1, 2, 3)) and rep.ok


def _sign_swapped_coboundary(f):
    """delta with every exponent (-1)^i replaced by (-1)^(i+1)."""
    if f.degree == 0:
        return true_coboundary(f)
    inv = invert_in_ideal(f)
    factors = [E_map(f)]
    for i in range(1, f.degree + 1):
        factors.append(compose_mu(f if i % 2 else inv, i))
    factors.append(include(f if f.degree % 2 else inv, f.degree + 1))
    return convolve_all(factors)


def test_mutated_coboundary_is_caught(monkeypatch):
    pa, _ = instance("kG:Z2xZ2", F5, ["a"])
    assert complex_battery(pa, QUICK).ok
    monkeypatch.setattr(properties, "coboundary", _sign_swapped_coboundary)
    rep = complex_battery(pa, QUICK)
    assert not rep.ok
    bad = next(c for c in rep.checks if not c.passed)
    assert "trial" in bad.witness and "basis" in bad.witness


def test_suite_is_reproducible():
    pa, _ = instance("dual:Z2", F5, ["a"])
    a = property_suite(pa, QUICK)
    b = property_suite(pa, QUICK)
    assert [(c.name, c.passed) for c in a.checks] == [(c.name, c.passed) for c in b.checks]
