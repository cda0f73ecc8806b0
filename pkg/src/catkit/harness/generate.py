"""Bounded exhaustive generation of small valid precategories."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from ..finite import Budget, DEFAULT_GUARD
from ..groupoid import discrete_groupoid, enumerate_groups, groupoid_from_components
from ..precat import FinPrecategory, _cube, validate_precategory


@dataclass(frozen=True)
class GenBounds:
    max_objects: int = 2
    max_hom_size: int = 2
    max_path_size: int = 2
    guard_limit: int = DEFAULT_GUARD
    seed: int = 0
    up_to_iso: bool = True

    def __post_init__(self):
        for name in ("max_objects", "max_hom_size", "max_path_size", "guard_limit"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    def admits(self, C: FinPrecategory) -> bool:
        return (1 <= C.n <= self.max_objects
                and all(s <= self.max_hom_size for row in C.hom_sizes for s in row)
                and all(s <= self.max_path_size for row in C.paths.sizes for s in row))


def hom_size_matrices(n: int, max_hom: int) -> Iterator[tuple]:
    """Matrices with nonempty diagonal that are closed under composition of inhabited homs."""
    cells = [(a, b) for a in range(n) for b in range(n)]
    for vals in itertools.product(range(max_hom + 1), repeat=len(cells)):
        m = [[0] * n for _ in range(n)]
        for (a, b), v in zip(cells, vals):
            m[a][b] = v
        if any(m[a][a] == 0 for a in range(n)):
            continue
        if any(m[a][b] and m[b][c] and not m[a][c] for a, b, c in itertools.product(range(n), repeat=3)):
            continue
        yield tuple(tuple(r) for r in m)


def composition_tables(hs, budget: Budget) -> Iterator[tuple]:
    """Every associative, unital composition with identity index 0 in each endo-hom.

    Unit laws fix every composite with an identity; the remaining cells
    are filled by backtracking with associativity checked as soon as the
    entries it reads are known.
    """
    n = len(hs)
    table = {}
    cells = []
    for a, b, c in itertools.product(range(n), repeat=3):
        if not (hs[a][b] and hs[b][c]):
            continue
        for g in range(hs[b][c]):
            for f in range(hs[a][b]):
                if b == c and g == 0:
                    table[(a, b, c, g, f)] = f
                elif a == b and f == 0:
                    table[(a, b, c, g, f)] = g
                else:
                    cells.append((a, b, c, g, f))
    mors = [(a, b, f) for a in range(n) for b in range(n) for f in range(hs[a][b])]
    triples = [(f, g, h) for f in mors for g in mors if g[0] == f[1] for h in mors if h[0] == g[1]]
    def get(a, b, c, g, f):
        return table.get((a, b, c, g, f))

    def assoc_ok(f, g, h):
        gf = get(f[0], f[1], g[1], g[2], f[2])
        hg = get(g[0], g[1], h[1], h[2], g[2])
        if gf is None or hg is None:
            return True
        lhs = get(f[0], g[1], h[1], h[2], gf)
        rhs = get(f[0], f[1], h[1], hg, f[2])
        return lhs is None or rhs is None or lhs == rhs

    def rec(i):
        if i == len(cells):
            if all(assoc_ok(*t) for t in triples):
                yield _cube(n, lambda a, b, c: tuple(tuple(table[(a, b, c, g, f)] for f in range(hs[a][b]))
                                                    for g in range(hs[b][c])) if hs[a][b] and hs[b][c] else ())
            return
        cell = cells[i]
        a, c = cell[0], cell[2]
        for v in range(hs[a][c]):
            budget.tick()
            table[cell] = v
            if all(assoc_ok(*t) for t in triples):
                yield from rec(i + 1)
        del table[cell]

    yield from rec(0)


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def path_groupoids(hs, max_path: int):
    """Groupoids on the objects: a partition into components and a group of order <= max_path per block.

    Blocks must be hom-connected both ways, otherwise no idtoiso exists.
    """
    n = len(hs)
    groups = {k: enumerate_groups(k) for k in range(1, max_path + 1)}
    parts = sorted(_set_partitions(list(range(n))), key=lambda p: (len(p), sorted(map(sorted, p))), reverse=True)
    for part in parts:
        part = sorted(sorted(b) for b in part)
        if any(not hs[a][b] for blk in part for a in blk for b in blk):
            continue
        choices = [[g for k in range(1, max_path + 1) for g in groups[k]] for _ in part]
        for pick in itertools.product(*choices):
            if all(len(blk) == 1 and len(g) == 1 for blk, g in zip(part, pick)):
                yield discrete_groupoid(n)
            else:
                yield groupoid_from_components(n, [(blk, g) for blk, g in zip(part, pick)])


def transports(hs, identity, comp, G, budget: Budget):
    """Every idtoiso table for the given composition and path groupoid."""
    n = len(hs)

    def is_iso(a, b, f):
        return any(comp[a][b][a][g][f] == identity[a] and comp[b][a][b][f][g] == identity[b]
                   for g in range(hs[b][a]))

    paths = [(a, b, p) for a in range(n) for b in range(n) for p in range(G.sizes[a][b])]
    pos = {x: i for i, x in enumerate(paths)}
    cands = []
    for a, b, p in paths:
        if a == b and p == G.refl[a]:
            cands.append([identity[a]])
        else:
            cands.append([f for f in range(hs[a][b]) if is_iso(a, b, f)])
    checks = [[] for _ in paths]
    for a, b, c in itertools.product(range(n), repeat=3):
        for p in range(G.sizes[a][b]):
            for q in range(G.sizes[b][c]):
                r = G.comp[a][b][c][q][p]
                ip, iq, ir = pos[(a, b, p)], pos[(b, c, q)], pos[(a, c, r)]
                checks[max(ip, iq, ir)].append((a, b, c, ip, iq, ir))
    img = [None] * len(paths)

    def rec(i):
        if i == len(paths):
            yield tuple(tuple(tuple(img[pos[(a, b, p)]] for p in range(G.sizes[a][b])) for b in range(n))
                        for a in range(n))
            return
        for v in cands[i]:
            budget.tick()
            img[i] = v
            if all(img[ir] == comp[a][b][c][img[iq]][img[ip]] for a, b, c, ip, iq, ir in checks[i]):
                yield from rec(i + 1)
        img[i] = None

    yield from rec(0)


def generated_precategories(b: GenBounds, budget: Budget | None = None) -> Iterator[FinPrecategory]:
    budget = budget or Budget("generated precategories", b.guard_limit)
    for n in range(1, b.max_objects + 1):
        for hs in hom_size_matrices(n, b.max_hom_size):
            identity = (0,) * n
            for comp in composition_tables(hs, budget):
                for G in path_groupoids(hs, b.max_path_size):
                    for tr in transports(hs, identity, comp, G, budget):
                        C = FinPrecategory(hs, identity, comp, G, tr)
                        # construction already enforces the laws; the gate is a second line of defence
                        if validate_precategory(C).ok:
                            yield C


def _inverse_perm(p):
    out = [0] * len(p)
    for old, new in enumerate(p):
        out[new] = old
    return out


MAX_RELABELINGS = 20000


def canonical_key(C: FinPrecategory):
    """A key shared exactly by isomorphic copies of ``C``.

    Isomorphic means equal after renumbering objects, the morphisms of
    each hom-set and the paths of each path-set.  Returns None when the
    number of renumberings exceeds ``MAX_RELABELINGS``.
    """
    n = C.n
    G = C.paths
    pairs = [(a, b) for a in range(n) for b in range(n)]
    count = 1
    for a, b in pairs:
        for k in (C.hom_sizes[a][b], G.sizes[a][b]):
            for i in range(2, k + 1):
                count *= i
    for i in range(2, n + 1):
        count *= i
    if count > MAX_RELABELINGS:
        return None
    hperms = [list(itertools.permutations(range(C.hom_sizes[a][b]))) for a, b in pairs]
    pperms = [list(itertools.permutations(range(G.sizes[a][b]))) for a, b in pairs]
    best = None
    for op in itertools.permutations(range(n)):
        inv = _inverse_perm(op)
        for hc in itertools.product(*hperms):
            h = {ab: p for ab, p in zip(pairs, hc)}
            hi = {ab: _inverse_perm(p) for ab, p in h.items()}
            for pc in itertools.product(*pperms):
                q = {ab: p for ab, p in zip(pairs, pc)}
                qi = {ab: _inverse_perm(p) for ab, p in q.items()}
                key = _relabeled(C, inv, h, hi, q, qi)
                if best is None or key < best:
                    best = key
    return best


def _relabeled(C, inv, h, hi, q, qi):
    n = C.n
    G = C.paths
    rng = range(n)
    hs = tuple(tuple(C.hom_sizes[inv[x]][inv[y]] for y in rng) for x in rng)
    ps = tuple(tuple(G.sizes[inv[x]][inv[y]] for y in rng) for x in rng)
    ident = tuple(h[(inv[x], inv[x])][C.identity[inv[x]]] for x in rng)
    refl = tuple(q[(inv[x], inv[x])][G.refl[inv[x]]] for x in rng)
    comp, pcomp = [], []
    for x, y, z in itertools.product(rng, repeat=3):
        a, b, c = inv[x], inv[y], inv[z]
        comp.append(tuple(tuple(h[(a, c)][C.comp[a][b][c][hi[(b, c)][g]][hi[(a, b)][f]]] for f in range(hs[x][y]))
                          for g in range(hs[y][z])) if hs[x][y] and hs[y][z] else ())
        pcomp.append(tuple(tuple(q[(a, c)][G.comp[a][b][c][qi[(b, c)][s]][qi[(a, b)][p]]] for p in range(ps[x][y]))
                           for s in range(ps[y][z])) if ps[x][y] and ps[y][z] else ())
    pinv, tr = [], []
    for x, y in itertools.product(rng, repeat=2):
        a, b = inv[x], inv[y]
        pinv.append(tuple(q[(b, a)][G.inv[a][b][qi[(a, b)][p]]] for p in range(ps[x][y])))
        tr.append(tuple(h[(a, b)][C.transport[a][b][qi[(a, b)][p]]] for p in range(ps[x][y])))
    return (hs, ident, tuple(comp), ps, refl, tuple(pcomp), tuple(pinv), tuple(tr))


def generate_precategories(b: GenBounds, include_fixtures: bool = True, budget: Budget | None = None,
                           extra=(), up_to_iso: bool | None = None) -> Iterator[FinPrecategory]:
    """Named fixtures within bounds first, then the generated stream, without repeats.

    With ``up_to_iso`` (default taken from the bounds) only the first
    member of each isomorphism class is kept.  ``extra`` lets tests inject candidate structures; they go
    through the same validation gate and are dropped when invalid.
    """
    from ..fixtures import named_fixtures

    if up_to_iso is None:
        up_to_iso = b.up_to_iso
    seen = set()
    head = []
    if include_fixtures:
        head = [C for C in named_fixtures(include_large=False).values() if b.admits(C)]

    def fresh(C):
        key = canonical_key(C) if up_to_iso else None
        key = C if key is None else key
        if key in seen:
            return False
        seen.add(key)
        return True

    for C in itertools.chain(head, extra):
        if validate_precategory(C).ok and fresh(C):
            yield C
    for C in generated_precategories(b, budget):
        if fresh(C):
            yield C
