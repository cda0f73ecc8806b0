"""Human-readable text for violations and results, using item labels instead of indices."""
from __future__ import annotations

from .. import report as R
from ..functor import FinFunctor
from ..groupoid import PathRef
from ..precat import FinPrecategory, MorRef
from ..yoneda import FinPresheaf


def _m(C, a, b, f):
    if f is None or not 0 <= f < C.hom_sizes[a][b]:
        return f"<{f}>"
    return C.mor_label(MorRef(a, b, f))


def _p(C, a, b, p):
    G = C.paths
    if p is None or not 0 <= p < G.sizes[a][b]:
        return f"<{p}>"
    return G.path_label(PathRef(a, b, p))


def _c(C, a, b, c, g, f):
    try:
        return C.comp[a][b][c][g][f]
    except (IndexError, TypeError):
        return None


def describe_precat(C: FinPrecategory, v) -> str:
    w, o = v.witness, C.obj_label
    try:
        if v.law in (R.UNIT_LEFT, R.UNIT_RIGHT):
            a, b, f = w
            return f"{v.law}: fails for {_m(C, a, b, f)}: {o(a)} -> {o(b)}"
        if v.law == R.ASSOC:
            a, b, c, d, f, g, h = w
            gf, hg = _c(C, a, b, c, g, f), _c(C, b, c, d, h, g)
            lhs = _c(C, a, c, d, h, gf) if gf is not None else None
            rhs = _c(C, a, b, d, hg, f) if hg is not None else None
            names = ", ".join((_m(C, a, b, f), _m(C, b, c, g), _m(C, c, d, h)))
            return (f"assoc: for f, g, h = {names}, h . (g . f) = {_m(C, a, d, lhs)} "
                    f"but (h . g) . f = {_m(C, a, d, rhs)}")
        if v.law == R.J_REFL:
            (a,) = w
            return f"J-refl: idtoiso(refl({o(a)})) is not id({o(a)})"
        if v.law == R.J_FUNCTOR:
            a, b, c, p, q = w
            return f"J-functor: idtoiso does not preserve the composite of {_p(C, a, b, p)} and {_p(C, b, c, q)}"
        if v.law in (R.J_ISO, R.J_INVERSE):
            a, b, p = w
            what = "is not an isomorphism" if v.law == R.J_ISO else "does not invert on the inverse path"
            return f"{v.law}: idtoiso({_p(C, a, b, p)}) = {_m(C, a, b, C.transport[a][b][p])} {what}"
        if v.law in (R.GPD_UNIT, R.GPD_INVERSE):
            a, b, p = w
            return f"{v.law}: fails for path {_p(C, a, b, p)}: {o(a)} = {o(b)}"
    except (IndexError, TypeError, ValueError):
        pass
    return str(v)


def describe_functor(F: FinFunctor, v) -> str:
    A, w = F.dom, v.witness
    try:
        if v.law == R.F_IDENTITY:
            (a,) = w
            return f"functor-identity: F(id({A.obj_label(a)})) is not an identity"
        if v.law == R.F_COMPOSITION:
            a, b, c, f, g = w
            return (f"functor-composition: F({_m(A, b, c, g)} . {_m(A, a, b, f)}) differs from "
                    f"F({_m(A, b, c, g)}) . F({_m(A, a, b, f)})")
        if v.law == R.F_IDTOISO:
            a, b, p = w
            return f"idtoiso-preservation: fails for path {_p(A, a, b, p)}"
        if v.law == R.NATURALITY:
            a, b, f = w
            return f"naturality: square for {_m(A, a, b, f)} does not commute"
    except (IndexError, TypeError, ValueError):
        pass
    return str(v)


def describe_presheaf(P: FinPresheaf, v) -> str:
    A, w = P.base, v.witness
    try:
        if v.law == R.PSH_IDENTITY:
            (a,) = w
            return f"presheaf-identity: id({A.obj_label(a)}) does not act as the identity"
        if v.law == R.PSH_COMPOSITION:
            a, b, c, f, g, x = w
            return (f"presheaf-composition: {_m(A, b, c, g)} . {_m(A, a, b, f)} acts differently from the "
                    f"composite action on {P.element_label(c, x)}")
    except (IndexError, TypeError, ValueError):
        pass
    return str(v)


def describe(item, v) -> str:
    if isinstance(item, FinPrecategory):
        return describe_precat(item, v)
    if isinstance(item, FinFunctor):
        return describe_functor(item, v)
    if isinstance(item, FinPresheaf):
        return describe_presheaf(item, v)
    return str(v)
