import itertools

import pytest
from hypothesis import given, settings, strategies as st

from catkit import (AdjointEquivalence, Adjunction, FinNatTrans, NotANatIso, NotEssentiallySurjective,
                    NotFullyFaithful, NotUnivalent, adjoint_uniqueness, adjointify, check_adjunction,
                    compose_functors, constant_functor, enumerate_functors, enumerate_nat_trans,
                    equivalence_from_ffeso, essential_surjectivity_witness, ff_report, identity_functor,
                    identity_nat_trans, is_isomorphism_of_precats, is_nat_iso, is_univalent, is_weak_equivalence,
                    make_adjunction, rezk_completion, validate_functor)
from catkit import report as R
from catkit.equiv import enumerate_adjunctions, identity_adjunction
from catkit.errors import InvalidAdjunction, NoPathLift
from catkit.fixtures import chaotic2, terminal, walking_arrow, z2, z2_strict
from catkit.yoneda import yoneda_functor
from strategies import fixtures, small_pool

SMALL = ["terminal", "walking_arrow", "chaotic2", "z2", "z2_strict", "idempotent"]


def collapse():
    return constant_functor(chaotic2(), terminal(), 0)


def quasi_equivalences(A, B):
    for F in enumerate_functors(A, B):
        for G in enumerate_functors(B, A):
            etas = [t for t in enumerate_nat_trans(identity_functor(A), compose_functors(G, F)) if is_nat_iso(t)[0]]
            epss = [t for t in enumerate_nat_trans(compose_functors(F, G), identity_functor(B)) if is_nat_iso(t)[0]]
            for eta, eps in itertools.product(etas, epss):
                yield F, G, eta, eps


# ----------------------------------------------------------------- adjunctions


@pytest.mark.parametrize("name", SMALL)
def test_identity_adjunction_valid(name):
    assert check_adjunction(identity_adjunction(fixtures()[name])).ok


def test_chaotic_terminal_equivalence_valid():
    F = collapse()
    G = constant_functor(terminal(), chaotic2(), 0)
    adj = make_adjunction(F, G, [0, 0], [0])
    assert check_adjunction(adj).ok


def test_perturbed_unit_breaks_triangles():
    adj = identity_adjunction(z2_strict())
    bad = Adjunction(adj.F, adj.G, FinNatTrans(adj.eta.src, adj.eta.tgt, (1,)), adj.eps)
    rep = check_adjunction(bad)
    assert [v.witness for v in rep.by_law(R.TRIANGLE_1)] == [(0,)]
    assert [v.witness for v in rep.by_law(R.TRIANGLE_2)] == [(0,)]
    assert not rep.by_law(R.NATURALITY)


def test_adjunction_shape_mismatch():
    W = walking_arrow()
    I = identity_functor(W)
    bad = Adjunction(I, identity_functor(z2()), identity_nat_trans(I), identity_nat_trans(I))
    assert R.SHAPE in check_adjunction(bad).laws


# ----------------------------------------------------------------- adjointify


def test_adjointify_keeps_adjoint_counit():
    for F, G, eta, eps in quasi_equivalences(z2(), z2()):
        if check_adjunction(Adjunction(F, G, eta, eps)).ok:
            eq = adjointify(F, G, eta, eps)
            assert eq.adj.eps == eps and eq.adj.eta == eta


def test_adjointify_chaotic_terminal():
    G = constant_functor(terminal(), chaotic2(), 1)
    F = collapse()
    eta = enumerate_nat_trans(identity_functor(chaotic2()), compose_functors(G, F))[0]
    eps = identity_nat_trans(identity_functor(terminal()))
    eq = adjointify(F, G, eta, eps)
    assert isinstance(eq, AdjointEquivalence) and check_adjunction(eq.adj).ok


def test_adjointify_repairs_counit():
    # z2 self-equivalence with eta = s, eps = e is a quasi-equivalence but not adjoint
    C = z2()
    I = identity_functor(C)
    eta, eps = FinNatTrans(I, I, (1,)), FinNatTrans(I, I, (0,))
    assert not check_adjunction(Adjunction(I, I, eta, eps)).ok
    eq = adjointify(I, I, eta, eps)
    # ε' = ε ∘ F(η)⁻¹ ∘ ε⁻¹ = e ∘ s ∘ e = s
    assert eq.adj.eps.components == (1,)


def test_adjointify_rejects_non_iso_unit():
    W = walking_arrow()
    F = constant_functor(W, terminal(), 0)
    G = constant_functor(terminal(), W, 1)
    eta = enumerate_nat_trans(identity_functor(W), compose_functors(G, F))[0]
    eps = identity_nat_trans(identity_functor(terminal()))
    with pytest.raises(NotANatIso) as e:
        adjointify(F, G, eta, eps)
    assert e.value.which == "eta"


@pytest.mark.parametrize("a,b", list(itertools.product(SMALL, repeat=2)))
def test_adjointify_exhaustive(a, b):
    A, B = fixtures()[a], fixtures()[b]
    for F, G, eta, eps in quasi_equivalences(A, B):
        eq = adjointify(F, G, eta, eps)
        assert check_adjunction(eq.adj).ok and eq.adj.eta == eta
        assert is_nat_iso(eq.adj.eps)[0]


# ----------------------------------------------------------------- ff / eso


def test_ff_examples():
    assert ff_report(identity_functor(walking_arrow())).fully_faithful
    assert ff_report(collapse()).fully_faithful
    W = walking_arrow()
    rep = ff_report(constant_functor(W, W, 0))
    assert rep.faithful and not rep.full


@pytest.mark.parametrize("name", list(fixtures()))
def test_yoneda_embedding_fully_faithful(name):
    assert ff_report(yoneda_functor(fixtures()[name])).fully_faithful


def test_eso_examples():
    W = walking_arrow()
    w = essential_surjectivity_witness(identity_functor(W))
    assert w.witness == ((0, 0), (1, 0))
    assert essential_surjectivity_witness(collapse()).witness == ((0, 0),)
    incl = constant_functor(terminal(), W, 0)
    w = essential_surjectivity_witness(incl)
    assert not w and w.unreachable == [1]


def test_ffeso_identity():
    W = walking_arrow()
    eq = equivalence_from_ffeso(identity_functor(W))
    assert eq.adj == identity_adjunction(W)


def test_ffeso_chaotic_terminal():
    eq = equivalence_from_ffeso(collapse())
    assert eq.G.obj_map == (0,)
    assert check_adjunction(eq.adj).ok
    assert not is_isomorphism_of_precats(collapse())


def test_ffeso_errors():
    W = walking_arrow()
    with pytest.raises(NotFullyFaithful):
        equivalence_from_ffeso(constant_functor(W, W, 0))
    with pytest.raises(NotEssentiallySurjective) as e:
        equivalence_from_ffeso(constant_functor(terminal(), W, 0))
    assert e.value.unreachable == [1]


def test_ffeso_no_path_lift():
    # the Rezk unit of chaotic(2) is a weak equivalence out of a non-univalent precategory
    _, I = rezk_completion(chaotic2())
    assert is_weak_equivalence(I)
    # the default witness collapses both objects onto x, which needs no path
    assert equivalence_from_ffeso(I).G.obj_map == (0, 0)
    # keeping y apart would send the core path x ≅ y to a path of the discrete domain
    with pytest.raises(NoPathLift):
        equivalence_from_ffeso(I, ((0, 0), (1, 0)))


@pytest.mark.parametrize("a,b", list(itertools.product(SMALL, repeat=2)))
def test_ffeso_round_trip(a, b):
    A, B = fixtures()[a], fixtures()[b]
    for F in enumerate_functors(A, B):
        if not (ff_report(F).fully_faithful and essential_surjectivity_witness(F)):
            continue
        try:
            eq = equivalence_from_ffeso(F)
        except NoPathLift:
            assert not is_univalent(A)
            continue
        adj = eq.adj
        assert check_adjunction(adj).ok and is_nat_iso(adj.eta)[0] and is_nat_iso(adj.eps)[0]
        assert validate_functor(adj.G).ok
        witness = tuple((adj.G.obj_map[y], adj.eps.components[y]) for y in range(B.n))
        again = equivalence_from_ffeso(F, witness)
        assert again.adj.G.obj_map == adj.G.obj_map and again.adj.eps == adj.eps and again.adj == adj


# ----------------------------------------------------------------- weak equivalences, isomorphisms


def test_weak_equivalence_examples():
    assert is_weak_equivalence(collapse())
    W = walking_arrow()
    rep = is_weak_equivalence(constant_functor(W, W, 0))
    assert not rep and rep.unreachable == [1]


@pytest.mark.parametrize("name", list(fixtures()))
def test_rezk_unit_weak_equivalence(name):
    assert is_weak_equivalence(rezk_completion(fixtures()[name])[1])


def test_iso_of_precats_examples():
    assert is_isomorphism_of_precats(identity_functor(z2()))
    assert not is_isomorphism_of_precats(collapse())
    _, I = rezk_completion(chaotic2())
    rep = is_isomorphism_of_precats(I)
    assert not rep and rep.path_failures == [(0, 1), (1, 0)]


# ----------------------------------------------------------------- uniqueness of adjoints


def test_adjoint_uniqueness_same():
    adj = identity_adjunction(z2())
    u = adjoint_uniqueness(adj, adj)
    assert u.gamma == identity_nat_trans(adj.G) and u.eta_recovered and u.eps_recovered


def test_adjoint_uniqueness_two_structures():
    C = z2()
    I = identity_functor(C)
    adjs = enumerate_adjunctions(I, enumerate_functors(C, C))
    assert len(adjs) == 2  # (η, ε) = (e, e) or (s, s)
    for a1, a2 in itertools.product(adjs, repeat=2):
        u = adjoint_uniqueness(a1, a2)
        comp = lambda d, g: tuple(C.comp[0][0][0][x][y] for x, y in zip(d.components, g.components))  # noqa: E731
        assert comp(u.delta, u.gamma) == (0,) == comp(u.gamma, u.delta)
        assert u.eta_recovered and u.eps_recovered


def test_adjoint_uniqueness_needs_univalent_domain():
    adj = identity_adjunction(chaotic2())
    with pytest.raises(NotUnivalent):
        adjoint_uniqueness(adj, adj)


def test_adjoint_uniqueness_rejects_invalid():
    adj = identity_adjunction(z2_strict())
    bad = Adjunction(adj.F, adj.G, FinNatTrans(adj.eta.src, adj.eta.tgt, (1,)), adj.eps)
    with pytest.raises(InvalidAdjunction):
        adjoint_uniqueness(adj, bad)


@pytest.mark.parametrize("a,b", [("walking_arrow", "walking_arrow"), ("z2", "terminal"), ("terminal", "z2"),
                                 ("chaotic2_hat", "terminal"), ("z2", "z2")])
def test_adjoint_uniqueness_exhaustive(a, b):
    A, B = fixtures()[a], fixtures()[b]
    for F in enumerate_functors(A, B):
        adjs = enumerate_adjunctions(F, enumerate_functors(B, A))
        for a1, a2 in itertools.product(adjs, repeat=2):
            u = adjoint_uniqueness(a1, a2)
            assert u.eta_recovered and u.eps_recovered


# ----------------------------------------------------------------- properties


UNIVALENT = [k for k in ("terminal", "walking_arrow", "z2", "chaotic2_hat", "z2_strict_hat", "idempotent_hat")]


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(UNIVALENT), st.sampled_from(UNIVALENT))
def test_levelwise_equivalence_on_univalent(a, b):
    A, B = fixtures()[a], fixtures()[b]
    for F in enumerate_functors(A, B):
        weq = bool(is_weak_equivalence(F))
        iso = bool(is_isomorphism_of_precats(F))
        try:
            equivalence_from_ffeso(F)
            ffeso = True
        except (NotFullyFaithful, NotEssentiallySurjective):
            ffeso = False
        assert weq == iso == ffeso


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(UNIVALENT), st.sampled_from(SMALL))
def test_eso_witnesses_related_by_paths(a, b):
    # with a univalent domain any two (x, Fx ≅ y) are connected by a path
    A, B = fixtures()[a], fixtures()[b]
    for F in enumerate_functors(A, B):
        if not ff_report(F).fully_faithful:
            continue
        for y in range(B.n):
            ws = [(x, i) for x in range(A.n) for i, g in enumerate(B.inverse_table[F.obj_map[x]][y]) if g is not None]
            for (x, i), (x2, i2) in itertools.combinations(ws, 2):
                assert any(B.comp[F.obj_map[x]][F.obj_map[x2]][y][i2][F.hom_maps[x][x2][A.transport[x][x2][p]]] == i
                           for p in range(A.paths.sizes[x][x2]))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(small_pool()))
def test_isomorphisms_are_equivalences(A):
    for F in enumerate_functors(A, A):
        if is_isomorphism_of_precats(F):
            eq = equivalence_from_ffeso(F)
            assert check_adjunction(eq.adj).ok
            eq2 = adjointify(F, eq.G, eq.adj.eta, eq.adj.eps)
            assert check_adjunction(eq2.adj).ok
