"""Functors, natural transformations, whiskering and exhaustive enumeration.

A :class:`FinFunctor` carries three tables: the object map, a hom map
per pair of objects, and a path map per pair of objects (the action of
the object function on identity types).  Functor and transformation
equality is equality of these tables; ``dom``/``cod`` are not compared.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

from . import report as R
from .errors import DomainMismatch, InvalidInput
from .finite import Budget
from .groupoid import PathRef
from .precat import FinPrecategory, MorRef
from .report import ValidationReport


@dataclass(frozen=True)
class FinFunctor:
    dom: FinPrecategory = field(compare=False, hash=False, repr=False)
    cod: FinPrecategory = field(compare=False, hash=False, repr=False)
    obj_map: tuple
    hom_maps: tuple
    path_maps: tuple
    name: str | None = field(default=None, compare=False, hash=False)

    def __call__(self, x):
        """Apply to an object index, a :class:`MorRef` or a :class:`PathRef`."""
        if isinstance(x, MorRef):
            return MorRef(self.obj_map[x.src], self.obj_map[x.tgt], self.hom_maps[x.src][x.tgt][x.index])
        if isinstance(x, PathRef):
            return PathRef(self.obj_map[x.src], self.obj_map[x.tgt], self.path_maps[x.src][x.tgt][x.index])
        return self.obj_map[x]

    def __str__(self):
        return self.name or f"Functor{list(self.obj_map)}"


def _nest(n, fn):
    return tuple(tuple(tuple(fn(a, b)) for b in range(n)) for a in range(n))


def make_functor(dom, cod, obj_map, hom_maps, path_maps=None, name=None) -> FinFunctor:
    """Build a functor from tables.

    ``hom_maps`` may be a nested sequence or a dict ``(a, b) -> table``.
    Without ``path_maps`` the path action is inferred from idtoiso where
    it is uniquely determined; refl always goes to refl.
    """
    n = dom.n
    obj_map = tuple(obj_map)
    if isinstance(hom_maps, dict):
        hm = _nest(n, lambda a, b: hom_maps.get((a, b), ()))
    else:
        hm = _nest(n, lambda a, b: hom_maps[a][b])
    if path_maps is None:
        pm = _nest(n, lambda a, b: [_infer_path(dom, cod, obj_map, hm, PathRef(a, b, p))
                                    for p in range(dom.paths.sizes[a][b])])
    elif isinstance(path_maps, dict):
        pm = _nest(n, lambda a, b: path_maps.get((a, b), ()))
    else:
        pm = _nest(n, lambda a, b: path_maps[a][b])
    return FinFunctor(dom, cod, obj_map, hm, pm, name)


def _infer_path(dom, cod, obj_map, hm, p):
    fa, fb = obj_map[p.src], obj_map[p.tgt]
    if p.src == p.tgt and p.index == dom.paths.refl[p.src]:
        return cod.paths.refl[fa]
    try:
        target = hm[p.src][p.tgt][dom.transport[p.src][p.tgt][p.index]]
        cands = [q for q in range(cod.paths.sizes[fa][fb]) if cod.transport[fa][fb][q] == target]
    except IndexError:
        return -1
    return cands[0] if len(cands) == 1 else -1


def identity_functor(C: FinPrecategory) -> FinFunctor:
    n = C.n
    return FinFunctor(C, C, tuple(range(n)), _nest(n, lambda a, b: range(C.hom_sizes[a][b])),
                      _nest(n, lambda a, b: range(C.paths.sizes[a][b])), "1")


def constant_functor(A: FinPrecategory, B: FinPrecategory, b: int) -> FinFunctor:
    n = A.n
    return FinFunctor(A, B, (b,) * n, _nest(n, lambda x, y: [B.identity[b]] * A.hom_sizes[x][y]),
                      _nest(n, lambda x, y: [B.paths.refl[b]] * A.paths.sizes[x][y]), f"const_{B.obj_label(b)}")


def compose_functors(G: FinFunctor, F: FinFunctor) -> FinFunctor:
    """``G ∘ F``."""
    if F.cod is not G.dom and F.cod != G.dom:
        raise DomainMismatch("codomain of F is not the domain of G")
    return _compose(G, F, id(F.dom), id(G.cod), G.name, F.name)


@functools.lru_cache(maxsize=1 << 14)
def _compose(G, F, _dom, _cod, _gname, _fname):
    # whiskering recomputes the same composites many times; the key pins the endpoint categories and names
    n = F.dom.n
    fo, go = F.obj_map, G.obj_map
    hm = _nest(n, lambda a, b: [G.hom_maps[fo[a]][fo[b]][x] for x in F.hom_maps[a][b]])
    pm = _nest(n, lambda a, b: [G.path_maps[fo[a]][fo[b]][x] for x in F.path_maps[a][b]])
    name = f"{G}∘{F}" if (G.name and F.name) else None
    return FinFunctor(F.dom, G.cod, tuple(go[x] for x in fo), hm, pm, name)


def validate_functor(F: FinFunctor) -> ValidationReport:
    rep = ValidationReport("functor")
    A, B = F.dom, F.cod
    n = A.n
    fo = F.obj_map
    if len(fo) != n or any(not 0 <= x < B.n for x in fo):
        rep.add(R.SHAPE, ("obj_map",), f"object map {list(fo)} is not a map Fin({n}) -> Fin({B.n})")
        return rep
    try:
        for a, b in itertools.product(range(n), repeat=2):
            if len(F.hom_maps[a][b]) != A.hom_sizes[a][b]:
                rep.add(R.SHAPE, ("hom_map", a, b), "hom map has the wrong length")
            if len(F.path_maps[a][b]) != A.paths.sizes[a][b]:
                rep.add(R.SHAPE, ("path_map", a, b), "path map has the wrong length")
    except (IndexError, TypeError):
        rep.add(R.SHAPE, (), "hom/path maps are not indexed by pairs of objects")
    if not rep.ok:
        return rep
    for a, b in itertools.product(range(n), repeat=2):
        size = B.hom_sizes[fo[a]][fo[b]]
        for f, v in enumerate(F.hom_maps[a][b]):
            if not 0 <= v < size:
                rep.add(R.RANGE, ("hom_map", a, b, f),
                        f"image {v} outside hom({fo[a]},{fo[b]}) of size {size}")
        psize = B.paths.sizes[fo[a]][fo[b]]
        for p, v in enumerate(F.path_maps[a][b]):
            if not 0 <= v < psize:
                rep.add(R.RANGE, ("path_map", a, b, p), f"image {v} outside paths({fo[a]},{fo[b]}) of size {psize}")

    def Fh(a, b, f):
        v = F.hom_maps[a][b][f]
        return v if 0 <= v < B.hom_sizes[fo[a]][fo[b]] else None

    def Fp(a, b, p):
        v = F.path_maps[a][b][p]
        return v if 0 <= v < B.paths.sizes[fo[a]][fo[b]] else None

    def bc(x, y, z, g, f):
        if g is None or f is None:
            return None
        return B.comp[x][y][z][g][f]

    for a in range(n):
        if Fh(a, a, A.identity[a]) != B.identity[fo[a]]:
            rep.add(R.F_IDENTITY, (a,), f"F(1_{a}) = {Fh(a, a, A.identity[a])}, expected {B.identity[fo[a]]}")
    for a, b, c in itertools.product(range(n), repeat=3):
        if not (A.hom_sizes[a][b] and A.hom_sizes[b][c]):
            continue
        for g in range(A.hom_sizes[b][c]):
            for f in range(A.hom_sizes[a][b]):
                lhs = Fh(a, c, A.comp[a][b][c][g][f])
                rhs = bc(fo[a], fo[b], fo[c], Fh(b, c, g), Fh(a, b, f))
                if lhs is None or lhs != rhs:
                    rep.add(R.F_COMPOSITION, (a, b, c, f, g), f"F(g∘f) = {lhs}, Fg∘Ff = {rhs}")
    GA, GB = A.paths, B.paths
    for a in range(n):
        if Fp(a, a, GA.refl[a]) != GB.refl[fo[a]]:
            rep.add(R.F_PATH, ("refl", a), "refl is not sent to refl")
    for a, b, c in itertools.product(range(n), repeat=3):
        for p in range(GA.sizes[a][b]):
            for q in range(GA.sizes[b][c]):
                lhs = Fp(a, c, GA.comp[a][b][c][q][p])
                fp, fq = Fp(a, b, p), Fp(b, c, q)
                rhs = None if fp is None or fq is None else GB.comp[fo[a]][fo[b]][fo[c]][fq][fp]
                if lhs is None or lhs != rhs:
                    rep.add(R.F_PATH, ("comp", a, b, c, p, q), f"F(p·q) = {lhs}, F(p)·F(q) = {rhs}")
    for a, b in itertools.product(range(n), repeat=2):
        for p in range(GA.sizes[a][b]):
            fp = Fp(a, b, p)
            fpi = Fp(b, a, GA.inv[a][b][p])
            if fp is not None and (fpi is None or fpi != GB.inv[fo[a]][fo[b]][fp]):
                rep.add(R.F_PATH, ("inv", a, b, p), "F(p⁻¹) != F(p)⁻¹")
            if fp is None:
                continue
            lhs = B.transport[fo[a]][fo[b]][fp]
            rhs = Fh(a, b, A.transport[a][b][p])
            if lhs != rhs:
                rep.add(R.F_IDTOISO, (a, b, p), f"idtoiso(F p) = {lhs}, F(idtoiso p) = {rhs}")
    return rep


# --------------------------------------------------------------------------- natural transformations


@dataclass(frozen=True)
class FinNatTrans:
    src: FinFunctor
    tgt: FinFunctor
    components: tuple

    def __getitem__(self, a) -> MorRef:
        return MorRef(self.src.obj_map[a], self.tgt.obj_map[a], self.components[a])

    def __str__(self):
        return f"[{','.join(map(str, self.components))}]"


def nat_trans(src: FinFunctor, tgt: FinFunctor, components) -> FinNatTrans:
    return FinNatTrans(src, tgt, tuple(components))


def identity_nat_trans(F: FinFunctor) -> FinNatTrans:
    B = F.cod
    return FinNatTrans(F, F, tuple(B.identity[x] for x in F.obj_map))


def validate_nat_trans(gamma: FinNatTrans) -> ValidationReport:
    rep = ValidationReport("natural transformation")
    F, G = gamma.src, gamma.tgt
    A, B = F.dom, F.cod
    n = A.n
    if len(gamma.components) != n:
        rep.add(R.SHAPE, (), f"{len(gamma.components)} components for {n} objects")
        return rep
    fo, go = F.obj_map, G.obj_map
    for a in range(n):
        v = gamma.components[a]
        if not 0 <= v < B.hom_sizes[fo[a]][go[a]]:
            rep.add(R.RANGE, (a,), f"component {v} outside hom({fo[a]},{go[a]})")

    def comp_at(a):
        v = gamma.components[a]
        return v if 0 <= v < B.hom_sizes[fo[a]][go[a]] else None

    for a, b in itertools.product(range(n), repeat=2):
        for f in range(A.hom_sizes[a][b]):
            ga, gb = comp_at(a), comp_at(b)
            Ff, Gf = F.hom_maps[a][b][f], G.hom_maps[a][b][f]
            lhs = None if ga is None else B.comp[fo[a]][go[a]][go[b]][Gf][ga]
            rhs = None if gb is None else B.comp[fo[a]][fo[b]][go[b]][gb][Ff]
            if lhs is None or lhs != rhs:
                rep.add(R.NATURALITY, (a, b, f), f"Gf∘γ_a = {lhs}, γ_b∘Ff = {rhs}")
    return rep


def _check_parallel(gamma, delta):
    if gamma.tgt != delta.src:
        raise DomainMismatch("transformations do not compose: target of the first is not the source of the second")


def vcomp(delta: FinNatTrans, gamma: FinNatTrans) -> FinNatTrans:
    """``δ ∘ γ`` for ``γ: F -> G`` and ``δ: G -> H``."""
    _check_parallel(gamma, delta)
    B = gamma.src.cod
    fo, go, ho = gamma.src.obj_map, gamma.tgt.obj_map, delta.tgt.obj_map
    comps = tuple(B.comp[fo[a]][go[a]][ho[a]][delta.components[a]][gamma.components[a]] for a in range(len(fo)))
    return FinNatTrans(gamma.src, delta.tgt, comps)


def whisker_right(gamma: FinNatTrans, F: FinFunctor) -> FinNatTrans:
    """``γF: GF -> HF`` with components ``γ_{Fa}``."""
    return FinNatTrans(compose_functors(gamma.src, F), compose_functors(gamma.tgt, F),
                       tuple(gamma.components[x] for x in F.obj_map))


def whisker_left(K: FinFunctor, gamma: FinNatTrans) -> FinNatTrans:
    """``Kγ: KG -> KH`` with components ``K(γ_b)``."""
    G, H = gamma.src, gamma.tgt
    comps = tuple(K.hom_maps[G.obj_map[b]][H.obj_map[b]][gamma.components[b]] for b in range(len(G.obj_map)))
    return FinNatTrans(compose_functors(K, G), compose_functors(K, H), comps)


def interchange_check(gamma: FinNatTrans, delta: FinNatTrans, check: bool = True):
    """Compare ``(δG)(Hγ)`` with ``(Kγ)(δF)`` for ``γ: F -> G`` over ``A -> B``, ``δ: H -> K`` over ``B -> C``.

    Returns ``(holds, witness)`` where ``witness`` is the first object at
    which the components differ, or None.  ``check=False`` skips validating
    the inputs, for callers that enumerated them.
    """
    for t, name in ((gamma, "gamma"), (delta, "delta")) if check else ():
        rep = validate_nat_trans(t)
        if not rep.ok:
            raise InvalidInput(f"{name} is not a natural transformation", rep)
    F, G = gamma.src, gamma.tgt
    H, K = delta.src, delta.tgt
    lhs = vcomp(whisker_right(delta, G), whisker_left(H, gamma))
    rhs = vcomp(whisker_left(K, gamma), whisker_right(delta, F))
    for a, (x, y) in enumerate(zip(lhs.components, rhs.components)):
        if x != y:
            return False, a
    return True, None


# --------------------------------------------------------------------------- enumeration


def enumerate_functors(A: FinPrecategory, B: FinPrecategory, budget: Budget | None = None) -> list[FinFunctor]:
    """All functors ``A -> B``: object maps lexicographically, then hom maps, then path maps."""
    budget = budget or Budget("functors")
    n = A.n
    budget.require(B.n ** n)
    morphs = [(a, b, f) for a in range(n) for b in range(n) for f in range(A.hom_sizes[a][b])]
    pos = {m: i for i, m in enumerate(morphs)}
    # composition constraints checked once all three morphisms are assigned
    checks = [[] for _ in morphs]
    for a, b, c in itertools.product(range(n), repeat=3):
        if not (A.hom_sizes[a][b] and A.hom_sizes[b][c]):
            continue
        for g in range(A.hom_sizes[b][c]):
            for f in range(A.hom_sizes[a][b]):
                h = A.comp[a][b][c][g][f]
                ig, i_f, ih = pos[(b, c, g)], pos[(a, b, f)], pos[(a, c, h)]
                checks[max(ig, i_f, ih)].append((a, b, c, ig, i_f, ih))
    out = []
    for obj_map in itertools.product(range(B.n), repeat=n):
        budget.tick()
        fo = obj_map
        if any(A.hom_sizes[a][b] and not B.hom_sizes[fo[a]][fo[b]] for a in range(n) for b in range(n)):
            continue
        if any(A.paths.sizes[a][b] and not B.paths.sizes[fo[a]][fo[b]] for a in range(n) for b in range(n)):
            continue
        img = [None] * len(morphs)

        def cands(i):
            a, b, f = morphs[i]
            if a == b and f == A.identity[a]:
                return (B.identity[fo[a]],)
            return range(B.hom_sizes[fo[a]][fo[b]])

        def ok_hom(i):
            for a, b, c, ig, i_f, ih in checks[i]:
                if img[ih] != B.comp[fo[a]][fo[b]][fo[c]][img[ig]][img[i_f]]:
                    return False
            return True

        def go(i):
            if i == len(morphs):
                hm = _nest(n, lambda a, b: [img[pos[(a, b, f)]] for f in range(A.hom_sizes[a][b])])
                for pm in path_actions(A, B, fo, hm, budget):
                    out.append(FinFunctor(A, B, tuple(fo), hm, pm))
                return
            for v in cands(i):
                budget.tick()
                img[i] = v
                if ok_hom(i):
                    go(i + 1)
            img[i] = None

        go(0)
    return out


def path_actions(A: FinPrecategory, B: FinPrecategory, obj_map, hom_maps, budget: Budget | None = None,
                 first_only: bool = False) -> list[tuple]:
    """Every path map compatible with the given object and hom maps.

    A path map must be a groupoid functor and satisfy
    ``idtoiso(F p) = F(idtoiso p)``.  Results are nested ``[a][b][p]`` tables.
    """
    budget = budget or Budget("path maps")
    n = A.n
    fo = obj_map
    GA, GB = A.paths, B.paths
    paths = [(a, b, p) for a in range(n) for b in range(n) for p in range(GA.sizes[a][b])]
    ppos = {m: i for i, m in enumerate(paths)}
    pchecks = [[] for _ in paths]
    for a, b, c in itertools.product(range(n), repeat=3):
        for p in range(GA.sizes[a][b]):
            for q in range(GA.sizes[b][c]):
                r = GA.comp[a][b][c][q][p]
                ip, iq, ir = ppos[(a, b, p)], ppos[(b, c, q)], ppos[(a, c, r)]
                pchecks[max(ip, iq, ir)].append(("c", a, b, c, iq, ip, ir))
    for a, b in itertools.product(range(n), repeat=2):
        for p in range(GA.sizes[a][b]):
            ip, ii = ppos[(a, b, p)], ppos[(b, a, GA.inv[a][b][p])]
            pchecks[max(ip, ii)].append(("i", a, b, ip, ii))
    pimg = [None] * len(paths)
    found = []

    def pcands(i):
        a, b, p = paths[i]
        if a == b and p == GA.refl[a]:
            base = (GB.refl[fo[a]],)
        else:
            base = range(GB.sizes[fo[a]][fo[b]])
        target = hom_maps[a][b][A.transport[a][b][p]]
        return [q for q in base if B.transport[fo[a]][fo[b]][q] == target]

    def ok_path(i):
        for chk in pchecks[i]:
            if chk[0] == "c":
                _, a, b, c, iq, ip, ir = chk
                if pimg[ir] != GB.comp[fo[a]][fo[b]][fo[c]][pimg[iq]][pimg[ip]]:
                    return False
            else:
                _, a, b, ip, ii = chk
                if pimg[ii] != GB.inv[fo[a]][fo[b]][pimg[ip]]:
                    return False
        return True

    def pgo(i):
        if i == len(paths):
            found.append(_nest(n, lambda a, b: [pimg[ppos[(a, b, p)]] for p in range(GA.sizes[a][b])]))
            return first_only
        for q in pcands(i):
            budget.tick()
            pimg[i] = q
            if ok_path(i) and pgo(i + 1):
                return True
        pimg[i] = None
        return False

    pgo(0)
    return found


def enumerate_nat_trans(F: FinFunctor, G: FinFunctor, budget: Budget | None = None) -> list[FinNatTrans]:
    """All natural transformations ``F -> G``, components in lexicographic order."""
    budget = budget or Budget("natural transformations")
    A, B = F.dom, F.cod
    n = A.n
    fo, go_ = F.obj_map, G.obj_map
    sizes = [B.hom_sizes[fo[a]][go_[a]] for a in range(n)]
    if any(s == 0 for s in sizes):
        return []
    comp = B.comp
    # squares inside one object only constrain that component
    free = []
    for i in range(n):
        loops = [(F.hom_maps[i][i][f], G.hom_maps[i][i][f]) for f in range(A.hom_sizes[i][i])]
        x, y = fo[i], go_[i]
        free.append([v for v in range(sizes[i])
                     if all(comp[x][y][y][Gf][v] == comp[x][x][y][v][Ff] for Ff, Gf in loops)])
    # a square between j < i fixes the value of one composite with γ_i; index γ_i by that value
    cross = [[] for _ in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        if j >= i:
            continue
        for f in range(A.hom_sizes[j][i]):  # f: j -> i, Gf∘γ_j = γ_i∘Ff
            Ff, Gf = F.hom_maps[j][i][f], G.hom_maps[j][i][f]
            index = {}
            for v in free[i]:
                index.setdefault(comp[fo[j]][fo[i]][go_[i]][v][Ff], set()).add(v)
            cross[i].append((index, lambda w, Gf=Gf, j=j: comp[fo[j]][go_[j]][go_[i]][Gf][w], j))
        for f in range(A.hom_sizes[i][j]):  # f: i -> j, γ_j∘Ff = Gf∘γ_i
            Ff, Gf = F.hom_maps[i][j][f], G.hom_maps[i][j][f]
            index = {}
            for v in free[i]:
                index.setdefault(comp[fo[i]][go_[i]][go_[j]][Gf][v], set()).add(v)
            cross[i].append((index, lambda w, Ff=Ff, j=j: comp[fo[i]][fo[j]][go_[j]][w][Ff], j))
    comps = [None] * n
    out = []

    def rec(i):
        if i == n:
            out.append(FinNatTrans(F, G, tuple(comps)))
            return
        budget.tick()
        allowed = None
        for index, key, j in cross[i]:
            s_ = index.get(key(comps[j]), set())
            allowed = s_ if allowed is None else allowed & s_
        for v in free[i]:
            if allowed is not None and v not in allowed:
                continue
            budget.tick()
            comps[i] = v
            rec(i + 1)
        comps[i] = None

    rec(0)
    return out


def is_nat_iso(gamma: FinNatTrans):
    """``(True, inverse)`` when every component is invertible, else ``(False, first bad object)``.

    The assembled inverse is checked for naturality before it is returned.
    """
    B = gamma.src.cod
    fo, go = gamma.src.obj_map, gamma.tgt.obj_map
    inv = []
    for a, c in enumerate(gamma.components):
        g = B.inverse_table[fo[a]][go[a]][c]
        if g is None:
            return False, a
        inv.append(g)
    delta = FinNatTrans(gamma.tgt, gamma.src, tuple(inv))
    rep = validate_nat_trans(delta)
    assert rep.ok, f"componentwise inverse is not natural: {rep.summary()}"
    return True, delta
