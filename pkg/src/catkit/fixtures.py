"""Named fixture precategories shared by tests, the harness and the CLI."""
from __future__ import annotations

from .constructions import mk_chaotic, mk_discrete, mk_finset_skeleton, mk_preorder
from .groupoid import cyclic_group, discrete_groupoid, groupoid_from_components
from .precat import FinPrecategory, build_precategory


def terminal() -> FinPrecategory:
    return mk_chaotic(1, obj_labels=("*",))


def walking_arrow() -> FinPrecategory:
    """Objects ``a = 0``, ``b = 1`` and one arrow ``f: a -> b``."""
    return build_precategory([[1, 1], [0, 1]], [0, 0], lambda a, b, c, g, f: 0,
                             obj_labels=("a", "b"), mor_labels=(((None,), ("f",)), ((), (None,))))


def chaotic2() -> FinPrecategory:
    return mk_chaotic(2, obj_labels=("x", "y"))


def z2_strict() -> FinPrecategory:
    """The group Z/2 as a one-object category ``{e, s}``, ``s ∘ s = e``, discrete object type."""
    return build_precategory([[2]], [0], lambda a, b, c, g, f: g ^ f,
                             obj_labels=("*",), mor_labels=(((None, "s"),),))


def z2() -> FinPrecategory:
    """Z/2 with its group as the object groupoid, so idtoiso is a bijection."""
    G = groupoid_from_components(1, [([0], cyclic_group(2))], labels=((("refl(*)", "s"),),))
    return mk_discrete(G, obj_labels=("*",))


def idempotent_monoid() -> FinPrecategory:
    """``{e, t}`` with ``t ∘ t = t``."""
    return build_precategory([[2]], [0], lambda a, b, c, g, f: g | f,
                             obj_labels=("*",), mor_labels=(((None, "t"),),))


DIVISORS = (1, 2, 3, 6)


def divisibility_poset() -> FinPrecategory:
    rel = [[b % a == 0 for b in DIVISORS] for a in DIVISORS]
    C = mk_preorder(rel, obj_labels=tuple(str(d) for d in DIVISORS))
    labels = tuple(tuple((f"d{a}_{b}",) if b % a == 0 and a != b else ((None,) if a == b else ())
                         for b in DIVISORS) for a in DIVISORS)
    return FinPrecategory(C.hom_sizes, C.identity, C.comp, C.paths, C.transport, C.obj_labels, labels)


def finset_skeleton3() -> FinPrecategory:
    return mk_finset_skeleton(3)


def z2_groupoid():
    return groupoid_from_components(1, [([0], cyclic_group(2))])


def named_fixtures(include_rezk: bool = True, include_large: bool = True) -> dict[str, FinPrecategory]:
    """Fixtures in a fixed order; Rezk completions appended with a ``_hat`` suffix."""
    from .rezk import rezk_completion

    base = {
        "terminal": terminal(),
        "walking_arrow": walking_arrow(),
        "chaotic2": chaotic2(),
        "z2": z2(),
        "z2_strict": z2_strict(),
        "idempotent": idempotent_monoid(),
        "divisibility": divisibility_poset(),
    }
    if include_large:
        base["finset3"] = finset_skeleton3()
    out = dict(base)
    if include_rezk:
        for name, C in base.items():
            out[name + "_hat"] = rezk_completion(C)[0]
    return out


__all__ = [
    "terminal", "walking_arrow", "chaotic2", "z2", "z2_strict", "idempotent_monoid", "divisibility_poset",
    "finset_skeleton3", "named_fixtures", "discrete_groupoid", "z2_groupoid",
]
