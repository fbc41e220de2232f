"""Small shared constructors for the test modules."""

from fractions import Fraction

from oracles import BaseFieldModel, GroupModel, Scalars

from parcoh.catalog import hopf_from_name
from parcoh.linalg import Residue
from parcoh.partial_action import subgroup_to_action


def scalar_value(x):
    return x.value if isinstance(x, Residue) else x


def field_scalars(field):
    return Scalars(field.characteristic)


def instance(name, field, subgroup_tokens):
    """(package partial action, oracle model) for "kG:..."/"dual:..." and
    the subgroup generated by the given elements."""
    H = hopf_from_name(name, field)
    L = [H.group.parse_element(t) for t in subgroup_tokens]
    closure = H.group.generated(L)
    pa = subgroup_to_action(H, closure)
    kind = "group" if name.startswith("kG") else "dual"
    model = BaseFieldModel(GroupModel(H.group.orders), kind, closure, field_scalars(field))
    return pa, model


def q(a, b=1):
    return Fraction(a, b)
