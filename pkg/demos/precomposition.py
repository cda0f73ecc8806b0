"""Precomposition with a weak equivalence, into univalent and non-univalent targets.

Collapsing chaotic(2) onto the terminal category induces an isomorphism of
functor categories into the walking arrow.  The Rezk unit of chaotic(2)
does not induce one into chaotic(2) itself: the target is not univalent.

    python3 demos/precomposition.py
"""
from catkit import constant_functor, rezk_completion
from catkit.fixtures import chaotic2, terminal, walking_arrow
from catkit.harness import check_precomposition


def show(title, H, C):
    d = check_precomposition(H, C).details
    print(title)
    print(f"  functors   {d['functors_from_codomain']} -> {d['functors_from_domain']}")
    print(f"  morphisms  {d['morphisms_from_codomain']} -> {d['morphisms_from_domain']}")
    print(f"  isomorphism of precategories: {d['precomposition_iso']}")


show("chaotic(2) -> 1, into the walking arrow", constant_functor(chaotic2(), terminal(), 0), walking_arrow())
show("Rezk unit of chaotic(2), into chaotic(2)", rezk_completion(chaotic2())[1], chaotic2())
