"""Finite groupoids, used as the type of objects of a precategory.

Paths ``p : a = b`` are indices into ``paths(a, b)``.  Composition is
stored categorically: ``comp[a][b][c][q][p]`` is the path obtained by
going along ``p : a = b`` first and then ``q : b = c`` (written ``p · q``
in path notation, ``q ∘ p`` here).
"""
from __future__ import annotations

import itertools
from collections import namedtuple
from dataclasses import dataclass, field
from functools import cached_property

from . import report as R
from .report import ValidationReport

PathRef = namedtuple("PathRef", "src tgt index")


def _cube(n, fn):
    return tuple(tuple(tuple(fn(a, b, c) for c in range(n)) for b in range(n)) for a in range(n))


@dataclass(frozen=True)
class FinGroupoid:
    sizes: tuple
    refl: tuple
    comp: tuple
    inv: tuple
    labels: object = field(default=None, compare=False, hash=False, repr=False)

    @property
    def n(self) -> int:
        return len(self.sizes)

    def paths(self, a, b):
        return range(self.sizes[a][b])

    def all_paths(self):
        for a in range(self.n):
            for b in range(self.n):
                for p in range(self.sizes[a][b]):
                    yield PathRef(a, b, p)

    def compose(self, q: PathRef, p: PathRef) -> PathRef:
        """``q ∘ p`` (``p`` first)."""
        if p.tgt != q.src:
            from .errors import DomainMismatch

            raise DomainMismatch(f"path {p} ends at {p.tgt}, path {q} starts at {q.src}")
        return PathRef(p.src, q.tgt, self.comp[p.src][p.tgt][q.tgt][q.index][p.index])

    def concat(self, p: PathRef, q: PathRef) -> PathRef:
        """Path concatenation ``p · q``."""
        return self.compose(q, p)

    def inverse(self, p: PathRef) -> PathRef:
        return PathRef(p.tgt, p.src, self.inv[p.src][p.tgt][p.index])

    def refl_path(self, a) -> PathRef:
        return PathRef(a, a, self.refl[a])

    @cached_property
    def is_discrete(self) -> bool:
        return all(self.sizes[a][b] == (1 if a == b else 0) for a in range(self.n) for b in range(self.n))

    def components(self) -> list[list[int]]:
        seen, out = set(), []
        for a in range(self.n):
            if a in seen:
                continue
            comp = [b for b in range(self.n) if self.sizes[a][b] > 0]
            seen.update(comp)
            out.append(comp)
        return out

    def path_label(self, p: PathRef) -> str:
        if self.labels is not None:
            lab = self.labels[p.src][p.tgt][p.index]
            if lab is not None:
                return str(lab)
        if p.src == p.tgt and p.index == self.refl[p.src]:
            return f"refl({p.src})"
        return f"p{p.src}_{p.tgt}_{p.index}"


def validate_groupoid(G: FinGroupoid) -> ValidationReport:
    rep = ValidationReport("groupoid")
    n = G.n
    sz = G.sizes
    if any(len(row) != n for row in sz) or len(G.refl) != n:
        rep.add(R.SHAPE, (), "size matrix or refl vector has the wrong shape")
        return rep
    for a in range(n):
        if not 0 <= G.refl[a] < sz[a][a]:
            rep.add(R.RANGE, ("refl", a), f"refl index {G.refl[a]} outside paths({a},{a})")
    if not rep.ok:
        return rep
    try:
        for a, b, c in itertools.product(range(n), repeat=3):
            tab = G.comp[a][b][c]
            if sz[a][b] and sz[b][c]:
                if len(tab) != sz[b][c] or any(len(row) != sz[a][b] for row in tab):
                    rep.add(R.SHAPE, ("comp", a, b, c), "composition table has the wrong shape")
        for a, b in itertools.product(range(n), repeat=2):
            if len(G.inv[a][b]) != sz[a][b]:
                rep.add(R.SHAPE, ("inv", a, b), "inverse table has the wrong shape")
    except (IndexError, TypeError):
        rep.add(R.SHAPE, (), "tables are not indexable as expected")
    if not rep.ok:
        return rep

    def c(a, b, c_, q, p):
        if q is None or p is None or not (0 <= q < sz[b][c_] and 0 <= p < sz[a][b]):
            return None
        v = G.comp[a][b][c_][q][p]
        return v

    for a, b, c_ in itertools.product(range(n), repeat=3):
        if sz[a][b] and sz[b][c_] and not sz[a][c_]:
            rep.add(R.SHAPE, ("comp", a, b, c_), f"paths({a},{b}) and paths({b},{c_}) are inhabited but paths({a},{c_}) is empty")
            continue
        for q in range(sz[b][c_]):
            for p in range(sz[a][b]):
                v = G.comp[a][b][c_][q][p]
                if not 0 <= v < sz[a][c_]:
                    rep.add(R.RANGE, ("comp", a, b, c_, q, p), f"value {v} outside paths({a},{c_})")
    for a, b in itertools.product(range(n), repeat=2):
        for p in range(sz[a][b]):
            v = G.inv[a][b][p]
            if not 0 <= v < sz[b][a]:
                rep.add(R.RANGE, ("inv", a, b, p), f"value {v} outside paths({b},{a})")
    for a, b in itertools.product(range(n), repeat=2):
        for p in range(sz[a][b]):
            if c(a, b, b, G.refl[b], p) != p:
                rep.add(R.GPD_UNIT, (a, b, p), "refl ∘ p != p")
            if c(a, a, b, p, G.refl[a]) != p:
                rep.add(R.GPD_UNIT, (a, b, p), "p ∘ refl != p")
    for a, b, c_, d in itertools.product(range(n), repeat=4):
        for p in range(sz[a][b]):
            for q in range(sz[b][c_]):
                for r in range(sz[c_][d]):
                    lhs = c(a, c_, d, r, c(a, b, c_, q, p))
                    rhs = c(a, b, d, c(b, c_, d, r, q), p)
                    if lhs is None or lhs != rhs:
                        rep.add(R.GPD_ASSOC, (a, b, c_, d, p, q, r), f"{lhs} != {rhs}")
    for a, b in itertools.product(range(n), repeat=2):
        for p in range(sz[a][b]):
            pi = G.inv[a][b][p]
            if not 0 <= pi < sz[b][a]:
                continue
            if c(a, b, a, pi, p) != G.refl[a] or c(b, a, b, p, pi) != G.refl[b]:
                rep.add(R.GPD_INVERSE, (a, b, p), "inv(p) is not a two-sided inverse")
    return rep


def discrete_groupoid(n: int, labels=None) -> FinGroupoid:
    sizes = tuple(tuple(1 if a == b else 0 for b in range(n)) for a in range(n))
    comp = _cube(n, lambda a, b, c: ((0,),) if a == b == c else ())
    inv = tuple(tuple((0,) if a == b else () for b in range(n)) for a in range(n))
    return FinGroupoid(sizes, (0,) * n, comp, inv, labels)


def _inverse_table(mult):
    k = len(mult)
    return tuple(next(y for y in range(k) if mult[x][y] == 0) for x in range(k))


def groupoid_from_components(n: int, components, labels=None) -> FinGroupoid:
    """Connected components with vertex groups.

    ``components`` is a list of ``(objects, mult)`` pairs where ``mult``
    is a Cayley table with identity ``0`` (``mult[x][y]`` is ``x`` after
    ``y``).  Paths between two objects of a component are indexed by group
    elements; objects not listed form trivial singleton components.
    """
    comp_of = [None] * n
    groups = []
    for objs, mult in components:
        gi = len(groups)
        groups.append(tuple(tuple(r) for r in mult))
        for a in objs:
            if comp_of[a] is not None:
                raise ValueError(f"object {a} listed in two components")
            comp_of[a] = gi
    for a in range(n):
        if comp_of[a] is None:
            comp_of[a] = len(groups)
            groups.append(((0,),))
    invs = [_inverse_table(m) for m in groups]
    sizes = tuple(
        tuple(len(groups[comp_of[a]]) if comp_of[a] == comp_of[b] else 0 for b in range(n)) for a in range(n)
    )

    def ctab(a, b, c):
        if not (comp_of[a] == comp_of[b] == comp_of[c]):
            return ()
        m = groups[comp_of[a]]
        return tuple(tuple(m[q][p] for p in range(len(m))) for q in range(len(m)))

    comp = _cube(n, ctab)
    inv = tuple(
        tuple(invs[comp_of[a]] if comp_of[a] == comp_of[b] else () for b in range(n)) for a in range(n)
    )
    return FinGroupoid(sizes, (0,) * n, comp, inv, labels)


def cyclic_group(k: int):
    return tuple(tuple((x + y) % k for y in range(k)) for x in range(k))


def enumerate_groups(order: int) -> list[tuple]:
    """All groups of the given order up to isomorphism, identity at 0.

    Brute force over Cayley tables; only meant for the tiny orders the
    harness uses.
    """
    if order < 1:
        return []
    k = order
    found = []
    canon_seen = set()
    cells = [(x, y) for x in range(1, k) for y in range(1, k)]
    table = [[None] * k for _ in range(k)]
    for x in range(k):
        table[0][x] = x
        table[x][0] = x

    def consistent():
        for x in range(k):
            row = [v for v in table[x] if v is not None]
            if len(row) != len(set(row)):
                return False
            col = [table[y][x] for y in range(k) if table[y][x] is not None]
            if len(col) != len(set(col)):
                return False
        return True

    def assoc():
        for x, y, z in itertools.product(range(k), repeat=3):
            if table[table[x][y]][z] != table[x][table[y][z]]:
                return False
        return True

    def canon(t):
        best = None
        for perm in itertools.permutations(range(1, k)):
            p = (0,) + perm
            inv = [0] * k
            for i, v in enumerate(p):
                inv[v] = i
            relabeled = tuple(tuple(p[t[inv[x]][inv[y]]] for y in range(k)) for x in range(k))
            if best is None or relabeled < best:
                best = relabeled
        return best

    def go(i):
        if i == len(cells):
            if assoc():
                t = tuple(tuple(r) for r in table)
                c = canon(t)
                if c not in canon_seen:
                    canon_seen.add(c)
                    found.append(c)
            return
        x, y = cells[i]
        for v in range(k):
            table[x][y] = v
            if consistent():
                go(i + 1)
        table[x][y] = None

    go(0)
    return sorted(found)


def product_groupoid(G: FinGroupoid, H: FinGroupoid) -> FinGroupoid:
    """Objects ``(a, b)`` indexed ``a * H.n + b``; paths ``(p, q)`` indexed ``p * |paths_H| + q``."""
    m = H.n
    n = G.n * m
    split = [(i // m, i % m) for i in range(n)]
    sizes = tuple(
        tuple(G.sizes[split[x][0]][split[y][0]] * H.sizes[split[x][1]][split[y][1]] for y in range(n))
        for x in range(n)
    )

    def ctab(x, y, z):
        (a, b), (a2, b2), (a3, b3) = split[x], split[y], split[z]
        if not (sizes[x][y] and sizes[y][z]):
            return ()
        hy, hz = H.sizes[b][b2], H.sizes[b2][b3]
        hxz = H.sizes[b][b3]
        gt, ht = G.comp[a][a2][a3], H.comp[b][b2][b3]
        return tuple(
            tuple(gt[q // hz][p // hy] * hxz + ht[q % hz][p % hy] for p in range(sizes[x][y]))
            for q in range(sizes[y][z])
        )

    comp = _cube(n, ctab)
    refl = tuple(G.refl[a] * H.sizes[b][b] + H.refl[b] for a, b in split)

    def itab(x, y):
        (a, b), (a2, b2) = split[x], split[y]
        hs, hr = H.sizes[b][b2], H.sizes[b2][b]
        return tuple(G.inv[a][a2][p // hs] * hr + H.inv[b][b2][p % hs] for p in range(sizes[x][y]))

    inv = tuple(tuple(itab(x, y) for y in range(n)) for x in range(n))
    return FinGroupoid(sizes, refl, comp, inv)
