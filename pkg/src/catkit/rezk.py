"""The Rezk completion, computed by replacing object paths with isomorphisms."""
from __future__ import annotations

from .equiv import check_adjunction, equivalence_from_ffeso
from .errors import CatkitError, EnumerationTooLarge, InvalidInput
from .functor import FinFunctor, _nest, is_nat_iso, validate_functor
from .precat import FinPrecategory, validate_precategory, with_core_paths
from .yoneda import presheaf_precategory, yoneda_functor, yoneda_object


def rezk_completion(C: FinPrecategory) -> tuple[FinPrecategory, FinFunctor]:
    """``(Ĉ, I)``: ``Ĉ`` has the homs of ``C`` and the core groupoid as object paths.

    ``I`` is the identity on objects and morphisms and sends a path ``p``
    to the iso ``idtoiso(p)`` seen as a path of ``Ĉ``.
    """
    rep = validate_precategory(C)
    if not rep.ok:
        raise InvalidInput("cannot complete an invalid precategory", rep)
    Chat = with_core_paths(C)
    n = C.n
    hm = _nest(n, lambda a, b: range(C.hom_sizes[a][b]))
    pm = _nest(n, lambda a, b: [Chat.transport[a][b].index(C.transport[a][b][p]) for p in range(C.paths.sizes[a][b])])
    return Chat, FinFunctor(C, Chat, tuple(range(n)), hm, pm, "I")


CROSSCHECK_MAX_OBJECTS = 3
CROSSCHECK_MAX_HOM = 3


def rezk_yoneda_crosscheck(C: FinPrecategory) -> bool:
    """Compare ``Ĉ`` with the full subcategory of presheaves on the representables.

    Builds the Yoneda functor out of ``Ĉ`` and asks for an adjoint
    inverse equivalence; True when one is constructed and checks out.
    """
    big = max((s for row in C.hom_sizes for s in row), default=0)
    if C.n > CROSSCHECK_MAX_OBJECTS or big > CROSSCHECK_MAX_HOM:
        raise EnumerationTooLarge(max(C.n, big), min(CROSSCHECK_MAX_OBJECTS, CROSSCHECK_MAX_HOM),
                                  "objects/hom size for the presheaf cross-check")
    Chat, _ = rezk_completion(C)
    P = presheaf_precategory(Chat, [yoneda_object(Chat, a) for a in range(Chat.n)])
    Y = yoneda_functor(Chat, P)
    if not validate_functor(Y).ok:
        return False
    try:
        eq = equivalence_from_ffeso(Y)
    except CatkitError:
        return False
    return (check_adjunction(eq.adj).ok and is_nat_iso(eq.adj.eta)[0] and is_nat_iso(eq.adj.eps)[0]
            and validate_functor(eq.G).ok)
