"""Named instances: Hopf algebras, their base-field partial actions, and the
crossed products used throughout the test suite."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cohomology import KLEIN_SUBGROUP, klein_four_instance, klein_four_table
from .crossed_product import CrossedProduct, TwistedPartialAction, build_crossed_product
from .hopf import AbelianGroup, FinHopf, build_dual_group_algebra, build_group_algebra
from .linalg import Field, QQ, GF
from .partial_action import CharDividesOrder, PartialActionMap, subgroup_label, subgroup_to_action


class UnknownCatalogName(KeyError):
    pass


GROUP_ALIASES = {"V4": "Z2xZ2"}
CATALOG_HOPF_NAMES = ("kG:Z2", "kG:Z4", "kG:Z2xZ2", "dual:Z2", "dual:Z2xZ2")
KLEIN_TWISTS = ((Fraction(1, 4), Fraction(1, 4)), (Fraction(0), Fraction(1, 6)))


def hopf_from_name(name: str, field: Field) -> FinHopf:
    """Resolve "kG:<group>" or "dual:<group>"; groups are products of cyclic
    groups written like "Z2xZ2"."""
    kind, sep, gname = name.partition(":")
    if not sep or kind not in ("kG", "dual"):
        raise UnknownCatalogName(name)
    gname = GROUP_ALIASES.get(gname, gname)
    try:
        G = AbelianGroup.from_name(gname)
    except ValueError as exc:
        raise UnknownCatalogName(name) from exc
    if G.name != gname:
        raise UnknownCatalogName(name)
    return build_group_algebra(G, field) if kind == "kG" else build_dual_group_algebra(G, field)


@dataclass(frozen=True)
class CatalogEntry:
    hopf_name: str
    subgroup: str
    action: PartialActionMap

    @property
    def label(self) -> str:
        return f"{self.hopf_name} L={self.subgroup} over {self.action.field.name}"


def catalog_instances(field: Field, hopf_names=CATALOG_HOPF_NAMES) -> list[CatalogEntry]:
    """Every (Hopf algebra, subgroup) pair; dual cases whose subgroup order is
    zero in the field are skipped."""
    out = []
    for name in hopf_names:
        H = hopf_from_name(name, field)
        for L in H.group.subgroups:
            try:
                pa = subgroup_to_action(H, L)
            except CharDividesOrder:
                continue
            out.append(CatalogEntry(name, subgroup_label(H.group, L), pa))
    return out


@dataclass(frozen=True)
class CatalogProduct:
    label: str
    twist: TwistedPartialAction
    product: CrossedProduct


def klein_twist(field: Field, x, xbar) -> TwistedPartialAction:
    pa = klein_four_instance(field)
    return TwistedPartialAction(pa, klein_four_table(pa, field(x)), klein_four_table(pa, field(xbar)))


def catalog_crossed_products(field: Field) -> list[CatalogProduct]:
    """The untwisted crossed product of every catalog instance, followed by
    the Klein-four family twists."""
    out = []
    for entry in catalog_instances(field):
        tpa = TwistedPartialAction.untwisted(entry.action)
        out.append(CatalogProduct(f"{entry.label}, trivial twist", tpa, build_crossed_product(tpa)))
    if field.characteristic not in (2, 3):
        for x, xbar in KLEIN_TWISTS:
            tpa = klein_twist(field, x, xbar)
            label = f"dual:Z2xZ2 L={subgroup_label(tpa.pa.hopf.group, KLEIN_SUBGROUP)} over {field.name}, klein4({x}, {xbar})"
            out.append(CatalogProduct(label, tpa, build_crossed_product(tpa)))
    return out


ACCEPTANCE_FIELDS = (QQ, GF(5))
