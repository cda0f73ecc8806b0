"""Finite precategories with an object groupoid and an idtoiso structure map.

A :class:`FinPrecategory` stores

* ``hom_sizes[a][b]`` -- the size of ``hom(a, b)``; morphisms are indices,
* ``identity[a]`` -- the index of ``1_a`` in ``hom(a, a)``,
* ``comp[a][b][c][g][f]`` -- the index of ``g ∘ f`` for ``f: a -> b``, ``g: b -> c``,
* ``paths`` -- a :class:`~catkit.groupoid.FinGroupoid` on the same objects,
  modelling the identity types of the object type,
* ``transport[a][b][p]`` -- ``idtoiso(p)`` as an index into ``hom(a, b)``.

Morphisms from different hom-sets are never compared; every public
operation takes :class:`MorRef` values carrying their source and target.
"""
from __future__ import annotations

import itertools
from collections import namedtuple
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, NamedTuple

from . import report as R
from .errors import DomainMismatch, EnumerationTooLarge, NotAnIso, NotUnivalent
from .finite import guard_limit
from .groupoid import FinGroupoid, PathRef, discrete_groupoid, product_groupoid, validate_groupoid
from .report import ValidationReport

MorRef = namedtuple("MorRef", "src tgt index")


@dataclass(frozen=True)
class FinPrecategory:
    hom_sizes: tuple
    identity: tuple
    comp: tuple
    paths: FinGroupoid
    transport: tuple
    obj_labels: object = field(default=None, compare=False, hash=False, repr=False)
    mor_labels: object = field(default=None, compare=False, hash=False, repr=False)

    @property
    def n(self) -> int:
        return len(self.hom_sizes)

    def objects(self):
        return range(self.n)

    def hom(self, a, b):
        return [MorRef(a, b, i) for i in range(self.hom_sizes[a][b])]

    def morphisms(self):
        for a in range(self.n):
            for b in range(self.n):
                for i in range(self.hom_sizes[a][b]):
                    yield MorRef(a, b, i)

    @property
    def morphism_count(self) -> int:
        return sum(map(sum, self.hom_sizes))

    def id(self, a) -> MorRef:
        return MorRef(a, a, self.identity[a])

    def compose(self, g: MorRef, f: MorRef) -> MorRef:
        """``g ∘ f`` (``f`` first)."""
        if f.tgt != g.src:
            raise DomainMismatch(f"{f} ends at {f.tgt} but {g} starts at {g.src}")
        return MorRef(f.src, g.tgt, self.comp[f.src][f.tgt][g.tgt][g.index][f.index])

    def c(self, a, b, c, g, f) -> int:
        """Raw index composition, no checks."""
        return self.comp[a][b][c][g][f]

    def is_identity(self, f: MorRef) -> bool:
        return f.src == f.tgt and f.index == self.identity[f.src]

    def J(self, p: PathRef) -> int:
        return self.transport[p.src][p.tgt][p.index]

    def obj_label(self, a) -> str:
        if self.obj_labels is not None:
            return str(self.obj_labels[a])
        return str(a)

    def mor_label(self, f: MorRef) -> str:
        if f.src == f.tgt and f.index == self.identity[f.src]:
            return f"id({self.obj_label(f.src)})"
        if self.mor_labels is not None:
            lab = self.mor_labels[f.src][f.tgt][f.index]
            if lab is not None:
                return str(lab)
        return f"m{f.src}_{f.tgt}_{f.index}"

    @cached_property
    def inverse_table(self) -> tuple:
        """``inverse_table[a][b][f]``: index of the inverse of ``f`` in ``hom(b, a)``, or None."""
        return tuple(tuple(tuple(_unique_inverse(self, a, b, f) for f in range(self.hom_sizes[a][b]))
                           for b in range(self.n)) for a in range(self.n))


def _cube(n, fn):
    return tuple(tuple(tuple(fn(a, b, c) for c in range(n)) for b in range(n)) for a in range(n))


def build_precategory(hom_sizes, identity, compose: Callable, paths: FinGroupoid | None = None,
                      transport=None, obj_labels=None, mor_labels=None) -> FinPrecategory:
    """Assemble tables from a composition function ``compose(a, b, c, g, f) -> index``.

    Without ``paths`` the object groupoid is discrete and idtoiso sends
    each refl to the identity.
    """
    hom_sizes = tuple(tuple(r) for r in hom_sizes)
    n = len(hom_sizes)

    def tab(a, b, c):
        if not (hom_sizes[a][b] and hom_sizes[b][c]):
            return ()
        return tuple(tuple(compose(a, b, c, g, f) for f in range(hom_sizes[a][b])) for g in range(hom_sizes[b][c]))

    comp = _cube(n, tab)
    if paths is None:
        paths = discrete_groupoid(n)
        transport = tuple(tuple((identity[a],) if a == b else () for b in range(n)) for a in range(n))
    return FinPrecategory(hom_sizes, tuple(identity), comp, paths, tuple(tuple(tuple(t) for t in r) for r in transport),
                          obj_labels, mor_labels)


# --------------------------------------------------------------------------- validation


def validate_precategory(C: FinPrecategory) -> ValidationReport:
    """Every violated precategory law, with witnesses.

    Out-of-range table entries are reported under ``range`` and also make
    every law that reads them fail.
    """
    rep = ValidationReport("precategory")
    n = C.n
    hs = C.hom_sizes
    try:
        shape_ok = (all(len(r) == n for r in hs) and len(C.identity) == n and len(C.comp) == n
                    and all(len(C.comp[a]) == n and all(len(C.comp[a][b]) == n for b in range(n)) for a in range(n))
                    and C.paths.n == n and len(C.transport) == n and all(len(r) == n for r in C.transport))
    except TypeError:
        shape_ok = False
    if not shape_ok:
        rep.add(R.SHAPE, (), "tables do not match the number of objects")
        return rep
    for a, b, c in itertools.product(range(n), repeat=3):
        if hs[a][b] and hs[b][c]:
            tab = C.comp[a][b][c]
            if len(tab) != hs[b][c] or any(len(row) != hs[a][b] for row in tab):
                rep.add(R.SHAPE, ("comp", a, b, c), "composition table has the wrong shape")
            elif not hs[a][c]:
                rep.add(R.SHAPE, ("comp", a, b, c), f"hom({a},{c}) is empty but composable pairs exist")
    for a, b in itertools.product(range(n), repeat=2):
        if len(C.transport[a][b]) != C.paths.sizes[a][b]:
            rep.add(R.SHAPE, ("transport", a, b), "transport table does not match paths")
    if not rep.ok:
        return rep

    def inr(a, b, f):
        return f is not None and 0 <= f < hs[a][b]

    for a in range(n):
        if not inr(a, a, C.identity[a]):
            rep.add(R.RANGE, ("identity", a), f"identity index {C.identity[a]} outside hom({a},{a})")
    for a, b, c in itertools.product(range(n), repeat=3):
        if hs[a][b] and hs[b][c]:
            for g in range(hs[b][c]):
                for f in range(hs[a][b]):
                    v = C.comp[a][b][c][g][f]
                    if not inr(a, c, v):
                        rep.add(R.RANGE, ("comp", a, b, c, g, f), f"value {v} outside hom({a},{c})")
    for a, b in itertools.product(range(n), repeat=2):
        for p in range(C.paths.sizes[a][b]):
            v = C.transport[a][b][p]
            if not inr(a, b, v):
                rep.add(R.RANGE, ("transport", a, b, p), f"value {v} outside hom({a},{b})")

    def c(a, b, c_, g, f):
        if not (inr(b, c_, g) and inr(a, b, f)):
            return None
        return C.comp[a][b][c_][g][f]

    ident = C.identity
    for a, b in itertools.product(range(n), repeat=2):
        for f in range(hs[a][b]):
            if c(a, b, b, ident[b], f) != f:
                rep.add(R.UNIT_LEFT, (a, b, f), f"1_{b} ∘ f = {c(a, b, b, ident[b], f)}, expected {f}")
            if c(a, a, b, f, ident[a]) != f:
                rep.add(R.UNIT_RIGHT, (a, b, f), f"f ∘ 1_{a} = {c(a, a, b, f, ident[a])}, expected {f}")
    for a, b, c_, d in itertools.product(range(n), repeat=4):
        if not (hs[a][b] and hs[b][c_] and hs[c_][d]):
            continue
        for f in range(hs[a][b]):
            for g in range(hs[b][c_]):
                gf = c(a, b, c_, g, f)
                for h in range(hs[c_][d]):
                    lhs = c(a, c_, d, h, gf)
                    rhs = c(a, b, d, c(b, c_, d, h, g), f)
                    if lhs is None or rhs is None or lhs != rhs:
                        rep.add(R.ASSOC, (a, b, c_, d, f, g, h), f"h∘(g∘f) = {lhs}, (h∘g)∘f = {rhs}")

    G = C.paths
    rep.extend(validate_groupoid(G))
    if not rep.ok and any(v.law in (R.SHAPE,) for v in rep.violations):
        return rep

    def J(a, b, p):
        if not 0 <= p < G.sizes[a][b]:
            return None
        return C.transport[a][b][p]

    for a in range(n):
        if J(a, a, G.refl[a]) != ident[a]:
            rep.add(R.J_REFL, (a,), f"J(refl_{a}) = {J(a, a, G.refl[a])}, expected 1_{a} = {ident[a]}")
    for a, b, c_ in itertools.product(range(n), repeat=3):
        for p in range(G.sizes[a][b]):
            for q in range(G.sizes[b][c_]):
                qp = G.comp[a][b][c_][q][p]
                lhs = J(a, c_, qp)
                rhs = c(a, b, c_, J(b, c_, q), J(a, b, p))
                if lhs is None or rhs is None or lhs != rhs:
                    rep.add(R.J_FUNCTOR, (a, b, c_, p, q), f"J(p·q) = {lhs}, J(q)∘J(p) = {rhs}")
    for a, b in itertools.product(range(n), repeat=2):
        for p in range(G.sizes[a][b]):
            jp = J(a, b, p)
            if not inr(a, b, jp):
                continue
            invs = [g for g in range(hs[b][a])
                    if c(a, b, a, g, jp) == ident[a] and c(b, a, b, jp, g) == ident[b]]
            if not invs:
                rep.add(R.J_ISO, (a, b, p), f"J(p) = {jp} is not an isomorphism")
                continue
            jpi = J(b, a, G.inv[a][b][p])
            if jpi not in invs:
                rep.add(R.J_INVERSE, (a, b, p), f"J(p⁻¹) = {jpi} is not the inverse of J(p) = {jp}")
    return rep


# --------------------------------------------------------------------------- isomorphisms


def _inverses(C: FinPrecategory, a, b, f) -> list[int]:
    ia, ib = C.identity[a], C.identity[b]
    out = []
    for g in range(C.hom_sizes[b][a]):
        if C.comp[a][b][a][g][f] == ia and C.comp[b][a][b][f][g] == ib:
            out.append(g)
    return out


def _unique_inverse(C, a, b, f):
    invs = _inverses(C, a, b, f)
    # inverses are unique in any precategory
    assert len(invs) <= 1, f"morphism {(a, b, f)} has several inverses {invs}; the precategory is invalid"
    return invs[0] if invs else None


def iso_witness(C: FinPrecategory, f: MorRef) -> MorRef | None:
    """The inverse of ``f`` if it has one (unique by the usual argument)."""
    g = _unique_inverse(C, f.src, f.tgt, f.index)
    return None if g is None else MorRef(f.tgt, f.src, g)


def is_iso(C: FinPrecategory, f: MorRef) -> bool:
    return C.inverse_table[f.src][f.tgt][f.index] is not None


def iso_set(C: FinPrecategory, a, b) -> list[tuple[MorRef, MorRef]]:
    inv = C.inverse_table[a][b]
    return [(MorRef(a, b, f), MorRef(b, a, g)) for f, g in enumerate(inv) if g is not None]


def inverse(C: FinPrecategory, f: MorRef) -> MorRef:
    g = C.inverse_table[f.src][f.tgt][f.index]
    if g is None:
        raise NotAnIso(f"{C.mor_label(f)} is not an isomorphism")
    return MorRef(f.tgt, f.src, g)


# --------------------------------------------------------------------------- idtoiso / univalence


def idtoiso(C: FinPrecategory, p: PathRef) -> MorRef:
    return MorRef(p.src, p.tgt, C.transport[p.src][p.tgt][p.index])


class UnivalenceFailure(NamedTuple):
    a: int
    b: int
    paths: int
    isos: int
    reason: str


@dataclass
class UnivalenceReport:
    is_univalent: bool
    failures: list

    def __bool__(self):
        return self.is_univalent

    @property
    def failing_pairs(self) -> list[tuple[int, int]]:
        return sorted({(f.a, f.b) for f in self.failures})

    def summary(self, C: FinPrecategory | None = None) -> str:
        if self.is_univalent:
            return "univalent"
        lab = (lambda x: C.obj_label(x)) if C is not None else str
        lines = [f"not univalent: {len(self.failing_pairs)} failing pair(s)"]
        for f in self.failures:
            lines.append(f"  ({lab(f.a)}, {lab(f.b)}): {f.paths} path(s) vs {f.isos} iso(s), {f.reason}")
        return "\n".join(lines)


NOT_INJECTIVE = "NotInjective"
NOT_SURJECTIVE = "NotSurjective"


def is_univalent(C: FinPrecategory) -> UnivalenceReport:
    """Check that idtoiso is a bijection ``paths(a, b) -> iso(a, b)`` for every pair."""
    failures = []
    G = C.paths
    for a in range(C.n):
        for b in range(C.n):
            isos = {f for f, g in enumerate(C.inverse_table[a][b]) if g is not None}
            images = [C.transport[a][b][p] for p in range(G.sizes[a][b])]
            if len(set(images)) != len(images):
                failures.append(UnivalenceFailure(a, b, len(images), len(isos), NOT_INJECTIVE))
            if not isos <= set(images):
                failures.append(UnivalenceFailure(a, b, len(images), len(isos), NOT_SURJECTIVE))
    return UnivalenceReport(not failures, failures)


def _univalent_cached(C):
    # cached on the instance; FinPrecategory is immutable
    try:
        return C.__dict__["_univalent"]
    except KeyError:
        v = is_univalent(C).is_univalent
        C.__dict__["_univalent"] = v
        return v


def isotoid(C: FinPrecategory, f: MorRef) -> PathRef:
    """The unique path ``p`` with ``idtoiso(p) = f``."""
    if not _univalent_cached(C):
        raise NotUnivalent("isotoid needs a univalent precategory")
    if not is_iso(C, f):
        raise NotAnIso(f"{C.mor_label(f)} is not an isomorphism")
    tr = C.transport[f.src][f.tgt]
    return PathRef(f.src, f.tgt, tr.index(f.index))


def transport_hom(C: FinPrecategory, p: PathRef, q: PathRef, f: MorRef) -> MorRef:
    """Transport ``f: a -> b`` along ``p: a = a'`` and ``q: b = b'``: ``J(q) ∘ f ∘ J(p)⁻¹``."""
    if p.src != f.src or q.src != f.tgt:
        raise DomainMismatch(f"paths {p}, {q} do not start at the ends of {f}")
    jp_inv = inverse(C, idtoiso(C, p))
    return C.compose(idtoiso(C, q), C.compose(f, jp_inv))


@dataclass(frozen=True)
class Classification:
    strict: bool
    gaunt: bool
    preorder: bool


def classify(C: FinPrecategory) -> Classification:
    strict = C.paths.is_discrete
    preorder = all(s <= 1 for row in C.hom_sizes for s in row)
    return Classification(strict=strict, gaunt=strict and _univalent_cached(C), preorder=preorder)


# --------------------------------------------------------------------------- core groupoid


def core_groupoid(C: FinPrecategory) -> tuple[FinGroupoid, tuple]:
    """The groupoid of isomorphisms of ``C`` and its inclusion into ``C``.

    ``paths(a, b)`` lists the isomorphisms ``a -> b`` in hom-index order;
    the second component is the transport table of the inclusion.
    """
    n = C.n
    isos = [[[f for f, g in enumerate(C.inverse_table[a][b]) if g is not None] for b in range(n)] for a in range(n)]
    pos = [[{f: i for i, f in enumerate(isos[a][b])} for b in range(n)] for a in range(n)]
    sizes = tuple(tuple(len(isos[a][b]) for b in range(n)) for a in range(n))
    refl = tuple(pos[a][a][C.identity[a]] for a in range(n))

    def ctab(a, b, c):
        if not (sizes[a][b] and sizes[b][c]):
            return ()
        return tuple(tuple(pos[a][c][C.comp[a][b][c][g][f]] for f in isos[a][b]) for g in isos[b][c])

    comp = _cube(n, ctab)
    inv = tuple(tuple(tuple(pos[b][a][C.inverse_table[a][b][f]] for f in isos[a][b]) for b in range(n))
                for a in range(n))
    labels = tuple(tuple(tuple(_core_path_label(C, MorRef(a, b, f)) for f in isos[a][b]) for b in range(n))
                   for a in range(n))
    G = FinGroupoid(sizes, refl, comp, inv, labels)
    transport = tuple(tuple(tuple(isos[a][b]) for b in range(n)) for a in range(n))
    return G, transport


def _core_path_label(C, f):
    if C.is_identity(f):
        return f"refl({C.obj_label(f.src)})"
    return f"iso_{C.mor_label(f)}"


def with_paths(C: FinPrecategory, paths: FinGroupoid, transport) -> FinPrecategory:
    return FinPrecategory(C.hom_sizes, C.identity, C.comp, paths,
                          tuple(tuple(tuple(t) for t in r) for r in transport), C.obj_labels, C.mor_labels)


def with_core_paths(C: FinPrecategory) -> FinPrecategory:
    """Same precategory, object paths replaced by the isomorphisms."""
    G, transport = core_groupoid(C)
    return with_paths(C, G, transport)


def with_discrete_paths(C: FinPrecategory) -> FinPrecategory:
    n = C.n
    return with_paths(C, discrete_groupoid(n), tuple(tuple((C.identity[a],) if a == b else () for b in range(n))
                                                    for a in range(n)))


# --------------------------------------------------------------------------- opposite / product


def opposite(C: FinPrecategory) -> FinPrecategory:
    """``hom_op(a, b) = hom(b, a)``; idtoiso of ``p`` is ``idtoiso(p⁻¹)``."""
    n = C.n
    hs = tuple(tuple(C.hom_sizes[b][a] for b in range(n)) for a in range(n))

    def tab(a, b, c):
        # g ∈ hom(c, b), f ∈ hom(b, a) in C; g ∘op f = f ∘ g
        if not (hs[a][b] and hs[b][c]):
            return ()
        t = C.comp[c][b][a]
        return tuple(tuple(t[f][g] for f in range(hs[a][b])) for g in range(hs[b][c]))

    comp = _cube(n, tab)
    G = C.paths
    transport = tuple(tuple(tuple(C.transport[b][a][G.inv[a][b][p]] for p in range(G.sizes[a][b]))
                            for b in range(n)) for a in range(n))
    mor_labels = None
    if C.mor_labels is not None:
        mor_labels = tuple(tuple(C.mor_labels[b][a] for b in range(n)) for a in range(n))
    return FinPrecategory(hs, C.identity, comp, G, transport, C.obj_labels, mor_labels)


def product(C: FinPrecategory, D: FinPrecategory) -> FinPrecategory:
    """Objects ``(a, b)`` at index ``a * D.n + b``; morphism ``(f, g)`` at ``f * |hom_D| + g``."""
    m = D.n
    n = C.n * m
    total = sum(C.hom_sizes[a][a2] * D.hom_sizes[b][b2]
                for a in range(C.n) for a2 in range(C.n) for b in range(m) for b2 in range(m))
    limit = guard_limit()
    if n * n * n > limit or total > limit:
        raise EnumerationTooLarge(max(n ** 3, total), limit, "product tables")
    split = [(i // m, i % m) for i in range(n)]
    hs = tuple(tuple(C.hom_sizes[split[x][0]][split[y][0]] * D.hom_sizes[split[x][1]][split[y][1]]
                     for y in range(n)) for x in range(n))
    ident = tuple(C.identity[a] * D.hom_sizes[b][b] + D.identity[b] for a, b in split)

    def tab(x, y, z):
        if not (hs[x][y] and hs[y][z]):
            return ()
        (a, b), (a2, b2), (a3, b3) = split[x], split[y], split[z]
        dy, dz, dxz = D.hom_sizes[b][b2], D.hom_sizes[b2][b3], D.hom_sizes[b][b3]
        ct, dt = C.comp[a][a2][a3], D.comp[b][b2][b3]
        return tuple(tuple(ct[g // dz][f // dy] * dxz + dt[g % dz][f % dy] for f in range(hs[x][y]))
                     for g in range(hs[y][z]))

    comp = _cube(n, tab)
    G = product_groupoid(C.paths, D.paths)

    def ttab(x, y):
        (a, b), (a2, b2) = split[x], split[y]
        ds, dh = D.paths.sizes[b][b2], D.hom_sizes[b][b2]
        return tuple(C.transport[a][a2][p // ds] * dh + D.transport[b][b2][p % ds] for p in range(G.sizes[x][y]))

    transport = tuple(tuple(ttab(x, y) for y in range(n)) for x in range(n))
    obj_labels = tuple(f"({C.obj_label(a)},{D.obj_label(b)})" for a, b in split)
    return FinPrecategory(hs, ident, comp, G, transport, obj_labels, None)
