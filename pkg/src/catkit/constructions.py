"""Standard small precategories: discrete/groupoid, chaotic, preorders, finite sets."""
from __future__ import annotations

import itertools

from .errors import EnumerationTooLarge, NotReflexive, NotTransitive
from .finite import guard_limit
from .groupoid import FinGroupoid
from .precat import FinPrecategory, build_precategory


def mk_discrete(G: FinGroupoid, obj_labels=None) -> FinPrecategory:
    """The groupoid ``G`` as a category: ``hom(a, b) = paths(a, b)``, idtoiso the identity."""
    n = G.n
    transport = tuple(tuple(tuple(range(G.sizes[a][b])) for b in range(n)) for a in range(n))
    return FinPrecategory(G.sizes, G.refl, G.comp, G, transport, obj_labels, G.labels)


def mk_chaotic(n: int, obj_labels=None) -> FinPrecategory:
    if n < 0:
        raise ValueError("number of objects must be nonnegative")
    return build_precategory([[1] * n for _ in range(n)], [0] * n, lambda a, b, c, g, f: 0,
                             obj_labels=obj_labels)


def mk_preorder(rel, obj_labels=None) -> FinPrecategory:
    """Thin precategory from a reflexive, transitive relation matrix ``rel[a][b]`` (``a <= b``)."""
    n = len(rel)
    for a in range(n):
        if not rel[a][a]:
            raise NotReflexive(a)
    for a, b, c in itertools.product(range(n), repeat=3):
        if rel[a][b] and rel[b][c] and not rel[a][c]:
            raise NotTransitive(a, b, c)
    hs = [[1 if rel[a][b] else 0 for b in range(n)] for a in range(n)]
    return build_precategory(hs, [0] * n, lambda a, b, c, g, f: 0, obj_labels=obj_labels)


def _table_index(t, cod):
    i = 0
    for v in t:
        i = i * cod + v
    return i


def mk_finset_skeleton(N: int) -> FinPrecategory:
    """Objects ``0..N`` standing for the sets ``{0..n-1}``, all functions as morphisms.

    Object paths are permutations: ``paths(n, n) = S_n`` and idtoiso
    includes a permutation as the corresponding bijection.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    sizes = [[n ** m for n in range(N + 1)] for m in range(N + 1)]
    work = sum(sizes[b][c] * sizes[a][b] for a in range(N + 1) for b in range(N + 1) for c in range(N + 1))
    limit = guard_limit()
    if work > limit:
        raise EnumerationTooLarge(work, limit, "finite-set composition tables")
    tables = [[list(itertools.product(range(n), repeat=m)) for n in range(N + 1)] for m in range(N + 1)]

    def compose(a, b, c, g, f):
        gt, ft = tables[b][c][g], tables[a][b][f]
        return _table_index([gt[x] for x in ft], c)

    identity = [_table_index(range(m), m) for m in range(N + 1)]
    perms = [list(itertools.permutations(range(m))) for m in range(N + 1)]
    ppos = [{p: i for i, p in enumerate(ps)} for ps in perms]
    n = N + 1
    psizes = tuple(tuple(len(perms[a]) if a == b else 0 for b in range(n)) for a in range(n))

    def pcomp(a, b, c):
        if not a == b == c:
            return ()
        ps = perms[a]
        return tuple(tuple(ppos[a][tuple(q[x] for x in p)] for p in ps) for q in ps)

    def pinv(p):
        inv = [0] * len(p)
        for i, v in enumerate(p):
            inv[v] = i
        return tuple(inv)

    comp = tuple(tuple(tuple(pcomp(a, b, c) for c in range(n)) for b in range(n)) for a in range(n))
    inv = tuple(tuple(tuple(ppos[a][pinv(p)] for p in perms[a]) if a == b else () for b in range(n))
                for a in range(n))
    refl = tuple(ppos[a][tuple(range(a))] for a in range(n))
    labels = tuple(tuple(tuple("perm" + "".join(map(str, p)) if p != tuple(range(a)) else f"refl({a})"
                               for p in perms[a]) if a == b else () for b in range(n)) for a in range(n))
    G = FinGroupoid(psizes, refl, comp, inv, labels)
    transport = tuple(tuple(tuple(_table_index(p, a) for p in perms[a]) if a == b else () for b in range(n))
                      for a in range(n))
    mor_labels = tuple(tuple(tuple(f"map{a}{b}_" + "".join(map(str, t)) for t in tables[a][b]) for b in range(n))
                       for a in range(n))
    return build_precategory(sizes, identity, compose, G, transport,
                             obj_labels=tuple(str(m) for m in range(n)), mor_labels=mor_labels)


def finset_table(C: FinPrecategory, m: int, n: int, index: int) -> tuple:
    """Decode a morphism of :func:`mk_finset_skeleton` back into its function table."""
    return tuple(itertools.product(range(n), repeat=m))[index]
