"""Adjunctions, adjoint equivalences, fully faithful / essentially surjective functors.

Orientation is fixed throughout: ``F: A -> B`` is the left adjoint,
``η: 1_A -> GF`` and ``ε: FG -> 1_B``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import report as R
from .errors import (InvalidAdjunction, NoPathLift, NotANatIso, NotEssentiallySurjective, NotFullyFaithful,
                     NotUnivalent)
from .funcat import FunctorPath
from .functor import (FinFunctor, FinNatTrans, _nest, compose_functors, identity_functor, identity_nat_trans,
                      is_nat_iso, path_actions, validate_nat_trans)
from .groupoid import PathRef
from .precat import MorRef, _univalent_cached, isotoid, transport_hom
from .report import ValidationReport


@dataclass(frozen=True)
class Adjunction:
    F: FinFunctor
    G: FinFunctor
    eta: FinNatTrans
    eps: FinNatTrans


@dataclass(frozen=True)
class AdjointEquivalence:
    adj: Adjunction
    eta_inverse: FinNatTrans
    eps_inverse: FinNatTrans

    @property
    def F(self):
        return self.adj.F

    @property
    def G(self):
        return self.adj.G


def make_adjunction(F: FinFunctor, G: FinFunctor, eta_components, eps_components) -> Adjunction:
    A, B = F.dom, F.cod
    eta = FinNatTrans(identity_functor(A), compose_functors(G, F), tuple(eta_components))
    eps = FinNatTrans(compose_functors(F, G), identity_functor(B), tuple(eps_components))
    return Adjunction(F, G, eta, eps)


def check_adjunction(adj: Adjunction) -> ValidationReport:
    """Naturality of η and ε plus both triangle identities, pointwise."""
    rep = ValidationReport("adjunction")
    F, G = adj.F, adj.G
    A, B = F.dom, F.cod
    if G.dom != B or G.cod != A:
        rep.add(R.SHAPE, ("G",), "G is not a functor B -> A")
        return rep
    GF, FG = compose_functors(G, F), compose_functors(F, G)
    if adj.eta.src != identity_functor(A) or adj.eta.tgt != GF:
        rep.add(R.SHAPE, ("eta",), "η is not a transformation 1 -> GF")
    if adj.eps.src != FG or adj.eps.tgt != identity_functor(B):
        rep.add(R.SHAPE, ("eps",), "ε is not a transformation FG -> 1")
    if not rep.ok:
        return rep
    rep.extend(validate_nat_trans(adj.eta))
    rep.extend(validate_nat_trans(adj.eps))
    fo, go = F.obj_map, G.obj_map
    eta, eps = adj.eta.components, adj.eps.components

    def inr(C, a, b, f):
        return 0 <= f < C.hom_sizes[a][b]

    for a in range(A.n):
        fa = fo[a]
        gfa = go[fa]
        e, k = eta[a], eps[fa]
        if inr(A, a, gfa, e) and inr(B, fo[gfa], fa, k):
            v = B.comp[fa][fo[gfa]][fa][k][F.hom_maps[a][gfa][e]]
        else:
            v = None
        if v != B.identity[fa]:
            rep.add(R.TRIANGLE_1, (a,), f"ε_Fa ∘ F(η_a) = {v}, expected 1_Fa = {B.identity[fa]}")
    for b in range(B.n):
        gb = go[b]
        fgb = fo[gb]
        e, k = eta[gb], eps[b]
        if inr(A, gb, go[fgb], e) and inr(B, fgb, b, k):
            v = A.comp[gb][go[fgb]][gb][G.hom_maps[fgb][b][k]][e]
        else:
            v = None
        if v != A.identity[gb]:
            rep.add(R.TRIANGLE_2, (b,), f"G(ε_b) ∘ η_Gb = {v}, expected 1_Gb = {A.identity[gb]}")
    return rep


def _require_nat_iso(t, which):
    ok, res = is_nat_iso(t)
    if not ok:
        raise NotANatIso(which, res)
    return res


def adjointify(F: FinFunctor, G: FinFunctor, eta: FinNatTrans, eps: FinNatTrans) -> AdjointEquivalence:
    """Keep η and replace ε by ``ε'_b = ε_b ∘ F(η_Gb)⁻¹ ∘ (ε_FGb)⁻¹``."""
    for t, which in ((eta, "eta"), (eps, "eps")):
        rep = validate_nat_trans(t)
        if not rep.ok:
            raise InvalidAdjunction(f"{which} is not natural", rep)
    eta_inv = _require_nat_iso(eta, "eta")
    eps_inv = _require_nat_iso(eps, "eps")
    B = F.cod
    fo, go = F.obj_map, G.obj_map
    comps = []
    for b in range(B.n):
        gb = go[b]
        fgb = fo[gb]
        gfgb = go[fgb]
        fgfgb = fo[gfgb]
        e1 = eps_inv.components[fgb]  # FGb -> FGFGb
        e2 = B.inverse_table[fgb][fgfgb][F.hom_maps[gb][gfgb][eta.components[gb]]]  # FGFGb -> FGb
        x = B.comp[fgb][fgfgb][fgb][e2][e1]
        comps.append(B.comp[fgb][fgb][b][eps.components[b]][x])
    new_eps = FinNatTrans(eps.src, eps.tgt, tuple(comps))
    adj = Adjunction(F, G, eta, new_eps)
    rep = check_adjunction(adj)
    assert rep.ok, rep.summary()
    return AdjointEquivalence(adj, eta_inv, _require_nat_iso(new_eps, "eps'"))


# --------------------------------------------------------------------------- ff / eso


@dataclass
class FFReport:
    faithful: bool
    full: bool
    failures: list = field(default_factory=list)  # (a, b, "not injective" | "not surjective")

    @property
    def fully_faithful(self) -> bool:
        return self.faithful and self.full

    def __bool__(self):
        return self.fully_faithful


def ff_report(F: FinFunctor) -> FFReport:
    A, B = F.dom, F.cod
    fo = F.obj_map
    failures = []
    for a, b in itertools.product(range(A.n), repeat=2):
        img = F.hom_maps[a][b]
        if len(set(img)) != len(img):
            failures.append((a, b, "not injective"))
        if len(set(img)) != B.hom_sizes[fo[a]][fo[b]]:
            failures.append((a, b, "not surjective"))
    faithful = not any(k == "not injective" for _, _, k in failures)
    full = not any(k == "not surjective" for _, _, k in failures)
    return FFReport(faithful, full, failures)


@dataclass
class EsoWitness:
    """``witness[b] = (a, i)`` with ``i: Fa -> b`` an isomorphism, or None with the unreachable objects."""

    witness: tuple | None
    unreachable: list

    def __bool__(self):
        return self.witness is not None


def essential_surjectivity_witness(F: FinFunctor) -> EsoWitness:
    """First witness in (object index, iso index) order for every object of the codomain."""
    A, B = F.dom, F.cod
    out, missing = [], []
    for b in range(B.n):
        found = None
        for a in range(A.n):
            inv = B.inverse_table[F.obj_map[a]][b]
            i = next((f for f, g in enumerate(inv) if g is not None), None)
            if i is not None:
                found = (a, i)
                break
        if found is None:
            missing.append(b)
        out.append(found)
    return EsoWitness(None if missing else tuple(out), missing)


def _unique_preimage(F, a, b, target):
    cands = [h for h, v in enumerate(F.hom_maps[a][b]) if v == target]
    assert len(cands) == 1, "fully faithful functor must have unique preimages"
    return cands[0]


def equivalence_from_ffeso(F: FinFunctor, witness=None) -> AdjointEquivalence:
    """Inverse equivalence of a fully faithful, essentially surjective functor.

    ``G b`` is the witness object, ``ε_b`` the witness iso, ``G(g)`` the
    unique preimage of ``ε_b'⁻¹ ∘ g ∘ ε_b`` and ``η_a`` the preimage of
    ``ε_Fa⁻¹``.  On object paths ``G`` must send ``q`` to a path whose
    idtoiso is ``G(idtoiso q)``; :class:`NoPathLift` is raised when the
    domain has no such path (the domain's paths are too few).
    """
    ff = ff_report(F)
    if not ff.fully_faithful:
        raise NotFullyFaithful(f"functor is not fully faithful: {ff.failures}")
    if witness is None:
        w = essential_surjectivity_witness(F)
        if not w:
            raise NotEssentiallySurjective(w.unreachable)
        witness = w.witness
    A, B = F.dom, F.cod
    fo = F.obj_map
    inv = B.inverse_table
    go = tuple(a for a, _ in witness)
    eps = tuple(i for _, i in witness)
    for b, (a, i) in enumerate(witness):
        if inv[fo[a]][b][i] is None:
            raise NotEssentiallySurjective([b])

    def G_hom(b, b2, g):
        x = B.comp[fo[go[b]]][b][b2][g][eps[b]]
        y = B.comp[fo[go[b]]][b2][fo[go[b2]]][inv[fo[go[b2]]][b2][eps[b2]]][x]
        return _unique_preimage(F, go[b], go[b2], y)

    hm = _nest(B.n, lambda b, b2: [G_hom(b, b2, g) for g in range(B.hom_sizes[b][b2])])
    lifts = path_actions(B, A, go, hm, first_only=True)
    if not lifts:
        raise NoPathLift("the domain has no object paths realizing the inverse on identity types")
    G = FinFunctor(B, A, go, hm, lifts[0])
    GF, FG = compose_functors(G, F), compose_functors(F, G)
    eta = []
    for a in range(A.n):
        fa = fo[a]
        target = inv[fo[go[fa]]][fa][eps[fa]]
        eta.append(_unique_preimage(F, a, go[fa], target))
    adj = Adjunction(F, G, FinNatTrans(identity_functor(A), GF, tuple(eta)),
                     FinNatTrans(FG, identity_functor(B), eps))
    rep = check_adjunction(adj)
    assert rep.ok, rep.summary()
    return AdjointEquivalence(adj, _require_nat_iso(adj.eta, "eta"), _require_nat_iso(adj.eps, "eps"))


@dataclass
class WeakEquivalenceReport:
    ok: bool
    ff: FFReport
    unreachable: list

    def __bool__(self):
        return self.ok


def is_weak_equivalence(F: FinFunctor) -> WeakEquivalenceReport:
    ff = ff_report(F)
    w = essential_surjectivity_witness(F)
    return WeakEquivalenceReport(ff.fully_faithful and bool(w), ff, w.unreachable)


@dataclass
class IsoOfPrecatsReport:
    ok: bool
    ff: FFReport
    path_failures: list  # (a, b) where F is not bijective on paths(a, b)
    unreached_components: list  # objects of the codomain not path-connected to the image

    def __bool__(self):
        return self.ok


def is_isomorphism_of_precats(F: FinFunctor) -> IsoOfPrecatsReport:
    """Fully faithful, and an equivalence of object groupoids."""
    A, B = F.dom, F.cod
    ff = ff_report(F)
    fo = F.obj_map
    path_failures = []
    for a, b in itertools.product(range(A.n), repeat=2):
        img = F.path_maps[a][b]
        if len(set(img)) != len(img) or len(img) != B.paths.sizes[fo[a]][fo[b]]:
            path_failures.append((a, b))
    hit = set(fo)
    unreached = [b for b in range(B.n) if not any(B.paths.sizes[x][b] for x in hit)]
    return IsoOfPrecatsReport(ff.fully_faithful and not path_failures and not unreached, ff, path_failures, unreached)


# --------------------------------------------------------------------------- uniqueness of adjoints


@dataclass
class AdjointUniqueness:
    gamma: FinNatTrans  # G -> G'
    delta: FinNatTrans  # G' -> G
    path: FunctorPath  # G = G'
    eta_recovered: bool
    eps_recovered: bool


def adjoint_uniqueness(adj1: Adjunction, adj2: Adjunction) -> AdjointUniqueness:
    """Compare two right adjoints of the same ``F`` with univalent domain."""
    F = adj1.F
    A, B = F.dom, F.cod
    if adj2.F != F:
        raise InvalidAdjunction("adjunctions are for different left adjoints")
    for adj, which in ((adj1, "first"), (adj2, "second")):
        rep = check_adjunction(adj)
        if not rep.ok:
            raise InvalidAdjunction(f"{which} adjunction is invalid", rep)
    if not _univalent_cached(A):
        raise NotUnivalent("the domain of F must be univalent")
    G, G2 = adj1.G, adj2.G
    fo, go, g2o = F.obj_map, G.obj_map, G2.obj_map
    eta, eps = adj1.eta.components, adj1.eps.components
    eta2, eps2 = adj2.eta.components, adj2.eps.components

    def twist(Gx, Gy, eta_y, eps_x, b):
        # (Gy ε_x)(η_y Gx) at b: Gx b -> Gy F Gx b -> Gy b
        gxb = Gx.obj_map[b]
        fgxb = fo[gxb]
        first = eta_y[gxb]
        second = Gy.hom_maps[fgxb][b][eps_x[b]]
        return A.comp[gxb][Gy.obj_map[fgxb]][Gy.obj_map[b]][second][first]

    gamma = FinNatTrans(G, G2, tuple(twist(G, G2, eta2, eps, b) for b in range(B.n)))
    delta = FinNatTrans(G2, G, tuple(twist(G2, G, eta, eps2, b) for b in range(B.n)))
    for b in range(B.n):
        assert A.comp[go[b]][g2o[b]][go[b]][delta.components[b]][gamma.components[b]] == A.identity[go[b]]
        assert A.comp[g2o[b]][go[b]][g2o[b]][gamma.components[b]][delta.components[b]] == A.identity[g2o[b]]
    ps = tuple(isotoid(A, MorRef(go[b], g2o[b], gamma.components[b])).index for b in range(B.n))
    for b, b2 in itertools.product(range(B.n), repeat=2):
        for g in range(B.hom_sizes[b][b2]):
            moved = transport_hom(A, PathRef(go[b], g2o[b], ps[b]), PathRef(go[b2], g2o[b2], ps[b2]),
                                  MorRef(go[b], go[b2], G.hom_maps[b][b2][g]))
            assert moved.index == G2.hom_maps[b][b2][g], "functor path does not transport G to G'"
    # η' = (G'εF)(η'GF)η and ε' = ε ∘ F(δ)
    eta_ok = True
    for a in range(A.n):
        fa = fo[a]
        gfa = go[fa]
        fgfa = fo[gfa]
        x = A.comp[a][gfa][g2o[fgfa]][eta2[gfa]][eta[a]]
        y = A.comp[a][g2o[fgfa]][g2o[fa]][G2.hom_maps[fgfa][fa][eps[fa]]][x]
        eta_ok &= y == eta2[a]
    eps_ok = True
    for b in range(B.n):
        fg2b, fgb = fo[g2o[b]], fo[go[b]]
        x = B.comp[fg2b][fgb][b][eps[b]][F.hom_maps[g2o[b]][go[b]][delta.components[b]]]
        eps_ok &= x == eps2[b]
    return AdjointUniqueness(gamma, delta, FunctorPath(G, G2, ps), eta_ok, eps_ok)


def identity_adjunction(C) -> Adjunction:
    I = identity_functor(C)
    return Adjunction(I, I, identity_nat_trans(I), identity_nat_trans(I))


def enumerate_adjunctions(F: FinFunctor, right_adjoints, budget=None) -> list[Adjunction]:
    """Every valid ``(G, η, ε)`` for ``F`` with ``G`` drawn from ``right_adjoints``."""
    from .functor import enumerate_nat_trans

    A, B = F.dom, F.cod
    out = []
    for G in right_adjoints:
        GF, FG = compose_functors(G, F), compose_functors(F, G)
        etas = enumerate_nat_trans(identity_functor(A), GF, budget)
        if not etas:
            continue
        epss = enumerate_nat_trans(FG, identity_functor(B), budget)
        for eta in etas:
            for eps in epss:
                adj = Adjunction(F, G, eta, eps)
                if check_adjunction(adj).ok:
                    out.append(adj)
    return out
