"""Functor precategories, paths between functors, currying and precomposition.

The object groupoid of ``B^A`` has as paths ``F = G`` the families
``p_a : Fa = Ga`` that carry ``F`` to ``G`` under transport, i.e.
``idtoiso(p_b) ∘ Ff = Gf ∘ idtoiso(p_a)`` for every ``f: a -> b``, and
that are natural for the object paths of ``A``: ``F(r) · p_a' = p_a · G(r)``
for ``r : a = a'``.  The second condition is what makes the family a
homotopy between the object functions; it follows from the first when
``B`` is univalent.
idtoiso of such a family is the transformation with components
``idtoiso(p_a)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DomainMismatch
from .finite import Budget
from .functor import (FinFunctor, FinNatTrans, _nest, compose_functors, enumerate_functors, enumerate_nat_trans,
                      identity_nat_trans, whisker_right)
from .groupoid import FinGroupoid
from .precat import FinPrecategory, product


@dataclass(frozen=True)
class FunctorPath:
    src: FinFunctor
    tgt: FinFunctor
    components: tuple

    def __str__(self):
        return "path[" + ",".join(map(str, self.components)) + "]"


def enumerate_functor_paths(F: FinFunctor, G: FinFunctor, budget: Budget | None = None) -> list[FunctorPath]:
    """All coherent path families ``F = G``, lexicographic in the components."""
    budget = budget or Budget("functor paths")
    A, B = F.dom, F.cod
    n = A.n
    fo, go = F.obj_map, G.obj_map
    sizes = [B.paths.sizes[fo[a]][go[a]] for a in range(n)]
    if any(s == 0 for s in sizes):
        return []
    squares = [[] for _ in range(n)]
    for a, b in itertools.product(range(n), repeat=2):
        for f in range(A.hom_sizes[a][b]):
            squares[max(a, b)].append((a, b, F.hom_maps[a][b][f], G.hom_maps[a][b][f]))
    GA, GB = A.paths, B.paths
    loops = [[] for _ in range(n)]
    for a, b in itertools.product(range(n), repeat=2):
        for r in range(GA.sizes[a][b]):
            loops[max(a, b)].append((a, b, F.path_maps[a][b][r], G.path_maps[a][b][r]))
    tr = B.transport
    comps = [None] * n
    out = []

    def ok(i):
        for a, b, Ff, Gf in squares[i]:
            ja = tr[fo[a]][go[a]][comps[a]]
            jb = tr[fo[b]][go[b]][comps[b]]
            if B.comp[fo[a]][fo[b]][go[b]][jb][Ff] != B.comp[fo[a]][go[a]][go[b]][Gf][ja]:
                return False
        for a, b, Fr, Gr in loops[i]:
            if GB.comp[fo[a]][fo[b]][go[b]][comps[b]][Fr] != GB.comp[fo[a]][go[a]][go[b]][Gr][comps[a]]:
                return False
        return True

    def rec(i):
        if i == n:
            out.append(FunctorPath(F, G, tuple(comps)))
            return
        for v in range(sizes[i]):
            budget.tick()
            comps[i] = v
            if ok(i):
                rec(i + 1)
        comps[i] = None

    rec(0)
    return out


def functor_category(A: FinPrecategory, B: FinPrecategory, budget: Budget | None = None) -> FinPrecategory:
    """``B^A``.  Object labels are the :class:`FinFunctor` values, morphism labels the
    :class:`FinNatTrans` values and path labels the :class:`FunctorPath` values."""
    budget = budget or Budget("functor category")
    functors = enumerate_functors(A, B, budget)
    k = len(functors)
    budget.require(k * k)
    # the composition cube has at least the triples (x,x,x), (x,x,y) and (x,y,y);
    # charging them while the homs are built stops hopeless cases early
    diag = [enumerate_nat_trans(F, F, budget) for F in functors]
    cube = sum(len(d) ** 2 for d in diag)
    budget.require(cube)
    homs = []
    for x, F in enumerate(functors):
        row = []
        for y, G in enumerate(functors):
            if x == y:
                row.append(diag[x])
                continue
            h = enumerate_nat_trans(F, G, budget)
            cube += len(h) * (len(diag[x]) + len(diag[y]))
            budget.require(cube)
            row.append(h)
        homs.append(row)
    hpos = [[{t.components: i for i, t in enumerate(homs[x][y])} for y in range(k)] for x in range(k)]
    hs = tuple(tuple(len(homs[x][y]) for y in range(k)) for x in range(k))
    ident = tuple(hpos[x][x][identity_nat_trans(functors[x]).components] for x in range(k))
    budget.require(sum(hs[x][y] * hs[y][z] for x in range(k) for y in range(k) for z in range(k)))
    n = A.n
    objs = [F.obj_map for F in functors]
    hcomps = [[[t.components for t in homs[x][y]] for y in range(k)] for x in range(k)]

    def tab(x, y, z):
        # vertical composition computed on raw component tuples
        fx, fy, fz = objs[x], objs[y], objs[z]
        tabs = [B.comp[fx[a]][fy[a]][fz[a]] for a in range(n)]
        pos = hpos[x][z]
        return tuple(tuple(pos[tuple(tabs[a][d[a]][g[a]] for a in range(n))] for g in hcomps[x][y])
                     for d in hcomps[y][z])

    comp = _sparse_cube(k, lambda x, y, z: hs[x][y] and hs[y][z], tab)
    paths = [[enumerate_functor_paths(F, G, budget) for G in functors] for F in functors]
    ppos = [[{p.components: i for i, p in enumerate(paths[x][y])} for y in range(k)] for x in range(k)]
    pcomps = [[[p.components for p in paths[x][y]] for y in range(k)] for x in range(k)]
    psz = tuple(tuple(len(paths[x][y]) for y in range(k)) for x in range(k))
    GB = B.paths

    def pcomp(x, y, z):
        fx, fy, fz = objs[x], objs[y], objs[z]
        tabs = [GB.comp[fx[a]][fy[a]][fz[a]] for a in range(n)]
        pos = ppos[x][z]
        return tuple(tuple(pos[tuple(tabs[a][q[a]][p[a]] for a in range(n))] for p in pcomps[x][y])
                     for q in pcomps[y][z])

    def pinv(x, y):
        fx, fy = objs[x], objs[y]
        return tuple(ppos[y][x][tuple(GB.inv[fx[a]][fy[a]][p[a]] for a in range(n))] for p in pcomps[x][y])

    G = FinGroupoid(
        psz,
        tuple(ppos[x][x][tuple(GB.refl[v] for v in objs[x])] for x in range(k)),
        _sparse_cube(k, lambda x, y, z: psz[x][y] and psz[y][z], pcomp),
        tuple(tuple(pinv(x, y) for y in range(k)) for x in range(k)),
        tuple(tuple(tuple(paths[x][y]) for y in range(k)) for x in range(k)),
    )

    def ttab(x, y):
        fx, fy = objs[x], objs[y]
        return tuple(hpos[x][y][tuple(B.transport[fx[a]][fy[a]][p[a]] for a in range(n))] for p in pcomps[x][y])

    transport = tuple(tuple(ttab(x, y) for y in range(k)) for x in range(k))
    mor_labels = tuple(tuple(tuple(homs[x][y]) for y in range(k)) for x in range(k))
    return FinPrecategory(hs, ident, comp, G, transport, tuple(functors), mor_labels)


def _sparse_cube(k, nonempty, fn):
    return tuple(tuple(tuple(fn(x, y, z) if nonempty(x, y, z) else () for z in range(k)) for y in range(k))
                 for x in range(k))


def functor_of(FC: FinPrecategory, x: int) -> FinFunctor:
    return FC.obj_labels[x]


def _obj_index(FC: FinPrecategory) -> dict:
    d = FC.__dict__.get("_objpos")
    if d is None:
        d = {F: i for i, F in enumerate(FC.obj_labels)}
        FC.__dict__["_objpos"] = d
    return d


def index_of_functor(FC: FinPrecategory, F: FinFunctor) -> int:
    return _obj_index(FC)[F]


def index_of_nat_trans(FC: FinPrecategory, gamma: FinNatTrans) -> int:
    x, y = index_of_functor(FC, gamma.src), index_of_functor(FC, gamma.tgt)
    return [t.components for t in FC.mor_labels[x][y]].index(gamma.components)


def index_of_functor_path(FC: FinPrecategory, x: int, y: int, components) -> int:
    return [p.components for p in FC.paths.labels[x][y]].index(tuple(components))


def is_functor_category(C: FinPrecategory) -> bool:
    return C.obj_labels is not None and all(isinstance(F, FinFunctor) for F in C.obj_labels)


# --------------------------------------------------------------------------- currying


def curry_functor(F: FinFunctor, A: FinPrecategory, B: FinPrecategory, CB: FinPrecategory | None = None) -> FinFunctor:
    """``A × B -> C`` to ``A -> C^B``; ``F.dom`` must be ``product(A, B)``."""
    C = F.cod
    if F.dom != product(A, B):
        raise DomainMismatch("functor domain is not the product of the given factors")
    CB = CB if CB is not None else functor_category(B, C)
    m = B.n
    hB = [[B.hom_sizes[b][b2] for b2 in range(m)] for b in range(m)]
    pB = B.paths.sizes

    def slice_functor(a):
        obj = tuple(F.obj_map[a * m + b] for b in range(m))
        ia, ra = A.identity[a], A.paths.refl[a]
        hm = _nest(m, lambda b, b2: [F.hom_maps[a * m + b][a * m + b2][ia * hB[b][b2] + g] for g in range(hB[b][b2])])
        pm = _nest(m, lambda b, b2: [F.path_maps[a * m + b][a * m + b2][ra * pB[b][b2] + q] for q in range(pB[b][b2])])
        return FinFunctor(B, C, obj, hm, pm)

    slices = [slice_functor(a) for a in range(A.n)]
    obj_map = tuple(index_of_functor(CB, S) for S in slices)

    def hom_image(a, a2, f):
        comps = tuple(F.hom_maps[a * m + b][a2 * m + b][f * hB[b][b] + B.identity[b]] for b in range(m))
        return index_of_nat_trans(CB, FinNatTrans(slices[a], slices[a2], comps))

    def path_image(a, a2, r):
        comps = tuple(F.path_maps[a * m + b][a2 * m + b][r * pB[b][b] + B.paths.refl[b]] for b in range(m))
        return index_of_functor_path(CB, obj_map[a], obj_map[a2], comps)

    n = A.n
    hm = _nest(n, lambda a, a2: [hom_image(a, a2, f) for f in range(A.hom_sizes[a][a2])])
    pm = _nest(n, lambda a, a2: [path_image(a, a2, r) for r in range(A.paths.sizes[a][a2])])
    return FinFunctor(A, CB, obj_map, hm, pm)


def uncurry_functor(G: FinFunctor, B: FinPrecategory) -> FinFunctor:
    """``A -> C^B`` to ``A × B -> C``; ``(f, g)`` goes to ``G(f)_{b'} ∘ G(a)(g)``."""
    A, CB = G.dom, G.cod
    if not is_functor_category(CB):
        raise DomainMismatch("codomain is not a functor category")
    if CB.n:
        C = CB.obj_labels[0].cod
        if CB.obj_labels[0].dom != B:
            raise DomainMismatch("functor category is not indexed by the given precategory")
    else:
        raise DomainMismatch("cannot uncurry into an empty functor category")
    AB = product(A, B)
    m = B.n
    n = AB.n
    split = [(i // m, i % m) for i in range(n)]
    Gs = [CB.obj_labels[G.obj_map[a]] for a in range(A.n)]
    obj = tuple(Gs[a].obj_map[b] for a, b in split)

    def hom_table(x, y):
        (a, b), (a2, b2) = split[x], split[y]
        hb = B.hom_sizes[b][b2]
        out = []
        for idx in range(AB.hom_sizes[x][y]):
            f, g = divmod(idx, hb)
            gamma = CB.mor_labels[G.obj_map[a]][G.obj_map[a2]][G.hom_maps[a][a2][f]]
            inner = Gs[a].hom_maps[b][b2][g]
            out.append(C.comp[obj[x]][Gs[a].obj_map[b2]][obj[y]][gamma.components[b2]][inner])
        return out

    def path_table(x, y):
        (a, b), (a2, b2) = split[x], split[y]
        pb = B.paths.sizes[b][b2]
        out = []
        for idx in range(AB.paths.sizes[x][y]):
            r, q = divmod(idx, pb)
            fp = CB.paths.labels[G.obj_map[a]][G.obj_map[a2]][G.path_maps[a][a2][r]]
            inner = Gs[a].path_maps[b][b2][q]
            out.append(C.paths.comp[obj[x]][Gs[a].obj_map[b2]][obj[y]][fp.components[b2]][inner])
        return out

    hm = _nest(n, hom_table)
    pm = _nest(n, path_table)
    return FinFunctor(AB, C, obj, hm, pm)


# --------------------------------------------------------------------------- precomposition


def precomposition_functor(H: FinFunctor, C: FinPrecategory, CB: FinPrecategory | None = None,
                           CA: FinPrecategory | None = None) -> FinFunctor:
    """``(- ∘ H): C^B -> C^A`` for ``H: A -> B``."""
    A, B = H.dom, H.cod
    CB = CB if CB is not None else functor_category(B, C)
    CA = CA if CA is not None else functor_category(A, C)
    k = CB.n
    Fs = CB.obj_labels
    obj = tuple(index_of_functor(CA, compose_functors(F, H)) for F in Fs)

    def hom_table(x, y):
        return [index_of_nat_trans(CA, whisker_right(t, H)) for t in CB.mor_labels[x][y]]

    def path_table(x, y):
        return [index_of_functor_path(CA, obj[x], obj[y], tuple(p.components[v] for v in H.obj_map))
                for p in CB.paths.labels[x][y]]

    return FinFunctor(CB, CA, obj, _nest(k, hom_table), _nest(k, path_table), "(-∘H)")
