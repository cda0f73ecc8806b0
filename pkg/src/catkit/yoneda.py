"""Finite presheaves, the Yoneda embedding and representability.

A presheaf on ``A`` assigns a finite set ``carrier[a]`` to each object and
to each ``f: a -> b`` a table ``action[a][b][f]`` from ``carrier[b]`` to
``carrier[a]``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import report as R
from .finite import Budget, is_injective_table
from .functor import FinFunctor, _nest
from .precat import FinPrecategory, build_precategory, core_groupoid, with_paths
from .report import ValidationReport


@dataclass(frozen=True)
class FinPresheaf:
    base: FinPrecategory = field(compare=False, hash=False, repr=False)
    carrier: tuple
    action: tuple
    name: str | None = field(default=None, compare=False, hash=False)
    element_labels: object = field(default=None, compare=False, hash=False, repr=False)

    def __str__(self):
        return self.name or f"Psh{list(self.carrier)}"

    def element_label(self, a, x) -> str:
        if self.element_labels is not None:
            return str(self.element_labels[a][x])
        return f"e{a}_{x}"

    def act(self, f, x):
        """``F(f)(x)`` for ``f`` a :class:`MorRef` ``a -> b`` and ``x`` in ``carrier[b]``."""
        return self.action[f.src][f.tgt][f.index][x]


@dataclass(frozen=True)
class PresheafMor:
    src: FinPresheaf
    tgt: FinPresheaf
    components: tuple

    def __str__(self):
        return "<" + ";".join(",".join(map(str, c)) for c in self.components) + ">"


def make_presheaf(A: FinPrecategory, carrier, action, name=None, element_labels=None) -> FinPresheaf:
    """``action`` may be nested ``[a][b][f]`` or a dict ``(a, b, f) -> table``; identities default to identity tables."""
    n = A.n
    carrier = tuple(carrier)
    if isinstance(action, dict):
        def get(a, b, f):
            if (a, b, f) in action:
                return tuple(action[(a, b, f)])
            if a == b and f == A.identity[a]:
                return tuple(range(carrier[a]))
            raise KeyError(f"no action given for morphism {(a, b, f)}")
        act = _nest(n, lambda a, b: [get(a, b, f) for f in range(A.hom_sizes[a][b])])
    else:
        act = _nest(n, lambda a, b: [tuple(t) for t in action[a][b]])
    return FinPresheaf(A, carrier, act, name, element_labels)


def constant_presheaf(A: FinPrecategory, size: int, name=None) -> FinPresheaf:
    return make_presheaf(A, [size] * A.n, _nest(A.n, lambda a, b: [tuple(range(size))] * A.hom_sizes[a][b]), name)


def validate_presheaf(P: FinPresheaf) -> ValidationReport:
    rep = ValidationReport("presheaf")
    A = P.base
    n = A.n
    if len(P.carrier) != n or any(c < 0 for c in P.carrier):
        rep.add(R.SHAPE, (), "carrier does not list a nonnegative size per object")
        return rep
    car = P.carrier
    for a, b in itertools.product(range(n), repeat=2):
        if len(P.action[a][b]) != A.hom_sizes[a][b]:
            rep.add(R.SHAPE, (a, b), "wrong number of action tables")
            continue
        for f, t in enumerate(P.action[a][b]):
            if len(t) != car[b]:
                rep.add(R.SHAPE, (a, b, f), f"action table has length {len(t)}, expected {car[b]}")
            elif any(not 0 <= v < car[a] for v in t):
                rep.add(R.RANGE, (a, b, f), f"action table {list(t)} leaves carrier of size {car[a]}")
    if any(v.law == R.SHAPE for v in rep.violations):
        return rep

    def app(a, b, f, x):
        if x is None:
            return None
        v = P.action[a][b][f][x]
        return v if 0 <= v < car[a] else None

    for a in range(n):
        if tuple(P.action[a][a][A.identity[a]]) != tuple(range(car[a])):
            rep.add(R.PSH_IDENTITY, (a,), f"action of 1_{a} is {list(P.action[a][a][A.identity[a]])}")
    for a, b, c in itertools.product(range(n), repeat=3):
        for g in range(A.hom_sizes[b][c]):
            for f in range(A.hom_sizes[a][b]):
                h = A.comp[a][b][c][g][f]
                for x in range(car[c]):
                    lhs = app(a, c, h, x)
                    rhs = app(a, b, f, app(b, c, g, x))
                    if lhs is None or lhs != rhs:
                        rep.add(R.PSH_COMPOSITION, (a, b, c, f, g, x), f"F(g∘f)(x) = {lhs}, F(f)(F(g)(x)) = {rhs}")
    return rep


def validate_presheaf_mor(alpha: PresheafMor) -> ValidationReport:
    rep = ValidationReport("presheaf morphism")
    P, Q = alpha.src, alpha.tgt
    A = P.base
    n = A.n
    for a in range(n):
        t = alpha.components[a]
        if len(t) != P.carrier[a] or any(not 0 <= v < Q.carrier[a] for v in t):
            rep.add(R.RANGE, (a,), f"component {list(t)} is not a map {P.carrier[a]} -> {Q.carrier[a]}")
    if not rep.ok:
        return rep
    for a, b in itertools.product(range(n), repeat=2):
        for f in range(A.hom_sizes[a][b]):
            for x in range(P.carrier[b]):
                lhs = alpha.components[a][P.action[a][b][f][x]]
                rhs = Q.action[a][b][f][alpha.components[b][x]]
                if lhs != rhs:
                    rep.add(R.NATURALITY, (a, b, f, x), f"α_a(P(f)(x)) = {lhs}, Q(f)(α_b(x)) = {rhs}")
    return rep


def identity_presheaf_mor(P: FinPresheaf) -> PresheafMor:
    return PresheafMor(P, P, tuple(tuple(range(c)) for c in P.carrier))


def compose_presheaf_mors(beta: PresheafMor, alpha: PresheafMor) -> PresheafMor:
    return PresheafMor(alpha.src, beta.tgt, tuple(tuple(bt[x] for x in at)
                                                  for at, bt in zip(alpha.components, beta.components)))


def enumerate_presheaf_mors(P: FinPresheaf, Q: FinPresheaf, budget: Budget | None = None) -> list[PresheafMor]:
    """All natural maps ``P -> Q``, lexicographic in the components read object by object.

    Elements are assigned one at a time; choosing ``α_b(x) = y`` forces
    ``α_a(P(f)(x)) = Q(f)(y)`` for every ``f: a -> b``, and those forced
    values propagate in turn, so only genuinely free elements branch.
    """
    budget = budget or Budget("presheaf morphisms")
    A = P.base
    n = A.n
    into = [[(P.action[a][b][f], Q.action[a][b][f], a) for a in range(n) for f in range(A.hom_sizes[a][b])]
            for b in range(n)]
    cells = [(a, x) for a in range(n) for x in range(P.carrier[a])]
    val = [[None] * c for c in P.carrier]
    out = []

    def assign(b, x, y, trail):
        todo = [(b, x, y)]
        while todo:
            b, x, y = todo.pop()
            cur = val[b][x]
            if cur is not None:
                if cur != y:
                    return False
                continue
            val[b][x] = y
            trail.append((b, x))
            todo.extend((a, pf[x], qf[y]) for pf, qf, a in into[b])
        return True

    def rec(i):
        while i < len(cells) and val[cells[i][0]][cells[i][1]] is not None:
            i += 1
        if i == len(cells):
            out.append(PresheafMor(P, Q, tuple(map(tuple, val))))
            return
        b, x = cells[i]
        for y in range(Q.carrier[b]):
            budget.tick()
            trail = []
            if assign(b, x, y, trail):
                rec(i + 1)
            for a, z in trail:
                val[a][z] = None

    rec(0)
    return out


def enumerate_presheaves(A: FinPrecategory, max_carrier: int, budget: Budget | None = None) -> list[FinPresheaf]:
    """Every presheaf with all carriers of size at most ``max_carrier``.

    Carrier vectors in lexicographic order, then action tables morphism by morphism.
    """
    budget = budget or Budget("presheaves")
    n = A.n
    morphs = [(a, b, f) for a in range(n) for b in range(n) for f in range(A.hom_sizes[a][b])]
    pos = {m: i for i, m in enumerate(morphs)}
    checks = [[] for _ in morphs]
    for a, b, c in itertools.product(range(n), repeat=3):
        for g in range(A.hom_sizes[b][c]):
            for f in range(A.hom_sizes[a][b]):
                ig, i_f, ih = pos[(b, c, g)], pos[(a, b, f)], pos[(a, c, A.comp[a][b][c][g][f])]
                checks[max(ig, i_f, ih)].append((c, ig, i_f, ih))
    out = []
    for car in itertools.product(range(max_carrier + 1), repeat=n):
        budget.tick()
        tabs = [None] * len(morphs)

        def cands(i):
            a, b, f = morphs[i]
            if a == b and f == A.identity[a]:
                return (tuple(range(car[a])),)
            return itertools.product(range(car[a]), repeat=car[b])

        def ok(i):
            for c, ig, i_f, ih in checks[i]:
                tg, tf, th = tabs[ig], tabs[i_f], tabs[ih]
                for x in range(car[c]):
                    if th[x] != tf[tg[x]]:
                        return False
            return True

        def rec(i):
            if i == len(morphs):
                act = _nest(n, lambda a, b: [tabs[pos[(a, b, f)]] for f in range(A.hom_sizes[a][b])])
                out.append(FinPresheaf(A, tuple(car), act))
                return
            for t in cands(i):
                budget.tick()
                tabs[i] = t
                if ok(i):
                    rec(i + 1)
            tabs[i] = None

        rec(0)
    return out


# --------------------------------------------------------------------------- Yoneda


def yoneda_object(A: FinPrecategory, c: int) -> FinPresheaf:
    """``y(c)``: carrier ``hom(x, c)``, a morphism acts by precomposition."""
    n = A.n
    car = tuple(A.hom_sizes[x][c] for x in range(n))
    act = _nest(n, lambda a, b: [tuple(A.comp[a][b][c][g][f] for g in range(car[b])) for f in range(A.hom_sizes[a][b])])
    return FinPresheaf(A, car, act, f"y({A.obj_label(c)})")


def yoneda_map(A: FinPrecategory, c: int, d: int, h: int) -> PresheafMor:
    """``y(h): y(c) -> y(d)`` for ``h: c -> d``, postcomposition."""
    n = A.n
    comps = tuple(tuple(A.comp[x][c][d][h][g] for g in range(A.hom_sizes[x][c])) for x in range(n))
    return PresheafMor(yoneda_object(A, c), yoneda_object(A, d), comps)


def hom_functor(A: FinPrecategory) -> FinFunctor:
    """``hom_A: A^op × A -> FinSet`` into ``mk_finset_skeleton`` of the largest hom size.

    ``(f, g)`` sends ``h`` to ``g ∘ h ∘ f``; path actions are read off idtoiso.
    """
    from .constructions import _table_index, mk_finset_skeleton
    from .functor import make_functor
    from .precat import opposite, product

    n = A.n
    top = max((s for row in A.hom_sizes for s in row), default=0)
    S = mk_finset_skeleton(top)
    D = product(opposite(A), A)
    split = [(i // n, i % n) for i in range(D.n)]
    obj = [A.hom_sizes[a][b] for a, b in split]

    def table(x, y):
        (a, b), (a2, b2) = split[x], split[y]
        hb = A.hom_sizes[b][b2]
        out = []
        for idx in range(D.hom_sizes[x][y]):
            f, g = divmod(idx, hb)  # f: a2 -> a in A, g: b -> b2
            img = [A.comp[a2][b][b2][g][A.comp[a2][a][b][h][f]] for h in range(obj[x])]
            out.append(_table_index(img, obj[y]))
        return out

    return make_functor(D, S, obj, _nest(D.n, table), name="hom")


def yoneda_forward(A: FinPrecategory, a: int, F: FinPresheaf, alpha: PresheafMor) -> int:
    """``α ↦ α_a(1_a)``."""
    return alpha.components[a][A.identity[a]]


def yoneda_backward(A: FinPrecategory, a: int, F: FinPresheaf, x: int) -> PresheafMor:
    """``x ↦ (f ↦ F(f)(x))``."""
    comps = tuple(tuple(F.action[b][a][f][x] for f in range(A.hom_sizes[b][a])) for b in range(A.n))
    return PresheafMor(yoneda_object(A, a), F, comps)


def _is_iso_mor(alpha: PresheafMor) -> bool:
    return all(len(t) == q and is_injective_table(t)
               for t, q in zip(alpha.components, alpha.tgt.carrier))


def presheaf_isos(P: FinPresheaf, Q: FinPresheaf, budget=None) -> list[PresheafMor]:
    if P.carrier != Q.carrier:
        return []
    return [m for m in enumerate_presheaf_mors(P, Q, budget) if _is_iso_mor(m)]


def is_representable(A: FinPrecategory, F: FinPresheaf, budget=None):
    """First ``(a, iso y(a) -> F)`` in object order, or None."""
    for a in range(A.n):
        isos = presheaf_isos(yoneda_object(A, a), F, budget)
        if isos:
            return a, isos[0]
    return None


def representations(A: FinPrecategory, F: FinPresheaf, budget=None) -> list:
    """Every ``(a, iso)`` representing ``F``."""
    return [(a, i) for a in range(A.n) for i in presheaf_isos(yoneda_object(A, a), F, budget)]


def presheaf_precategory(A: FinPrecategory, presheaves, budget: Budget | None = None) -> FinPrecategory:
    """Full subcategory of presheaves on the given list; object paths are the presheaf isomorphisms."""
    budget = budget or Budget("presheaf category")
    ps = list(presheaves)
    k = len(ps)
    homs = [[enumerate_presheaf_mors(P, Q, budget) for Q in ps] for P in ps]
    hpos = [[{m.components: i for i, m in enumerate(homs[x][y])} for y in range(k)] for x in range(k)]
    ident = [hpos[x][x][identity_presheaf_mor(ps[x]).components] for x in range(k)]

    def compose(x, y, z, g, f):
        return hpos[x][z][compose_presheaf_mors(homs[y][z][g], homs[x][y][f]).components]

    C = build_precategory([[len(homs[x][y]) for y in range(k)] for x in range(k)], ident, compose,
                          obj_labels=tuple(ps), mor_labels=tuple(tuple(tuple(h) for h in row) for row in homs))
    G, transport = core_groupoid(C)
    return with_paths(C, G, transport)


def yoneda_functor(A: FinPrecategory, P: FinPrecategory | None = None) -> FinFunctor:
    """``y`` corestricted to ``P = presheaf_precategory(A, [y a for a in A])``."""
    if P is None:
        P = presheaf_precategory(A, [yoneda_object(A, a) for a in range(A.n)])
    n = A.n
    labels = list(P.obj_labels)

    def place(a):
        ya = yoneda_object(A, a)
        # prefer the a-th slot so that y(a) = y(b) as data still gives distinct objects
        if a < len(labels) and labels[a] == ya:
            return a
        return labels.index(ya)

    obj = tuple(place(a) for a in range(n))
    mpos = [[{m.components: i for i, m in enumerate(P.mor_labels[x][y])} for y in range(P.n)] for x in range(P.n)]

    def hom_image(a, b, f):
        return mpos[obj[a]][obj[b]][yoneda_map(A, a, b, f).components]

    hm = _nest(n, lambda a, b: [hom_image(a, b, f) for f in range(A.hom_sizes[a][b])])

    def path_image(a, b, p):
        m = hm[a][b][A.transport[a][b][p]]
        return P.transport[obj[a]][obj[b]].index(m)

    pm = _nest(n, lambda a, b: [path_image(a, b, p) for p in range(A.paths.sizes[a][b])])
    return FinFunctor(A, P, obj, hm, pm, "y")
