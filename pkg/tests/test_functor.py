import itertools

import pytest
from hypothesis import given, settings, strategies as st

from catkit import (FinFunctor, FinNatTrans, InvalidInput, compose_functors, constant_functor, curry_functor,
                    enumerate_functors, enumerate_nat_trans, functor_category, hom_functor, identity_functor,
                    identity_nat_trans, interchange_check, is_nat_iso, is_univalent, make_functor, opposite,
                    product, uncurry_functor, validate_functor, validate_nat_trans, validate_precategory, vcomp,
                    whisker_left, whisker_right)
from catkit import report as R
from catkit.errors import DomainMismatch
from catkit.fixtures import chaotic2, terminal, walking_arrow, z2, z2_strict
from catkit.funcat import enumerate_functor_paths, functor_of
from strategies import fixtures, small_pool

SMALL = ["terminal", "walking_arrow", "chaotic2", "z2", "z2_strict", "idempotent"]


def small(name):
    return fixtures()[name]


def brute_functor_count(A, B):
    """Oracle for strict A: object maps × hom tables, filtered by the unit and composition laws."""
    count = 0
    morphs = list(A.morphisms())
    for obj in itertools.product(range(B.n), repeat=A.n):
        choices = [range(B.hom_sizes[obj[f.src]][obj[f.tgt]]) for f in morphs]
        for vals in itertools.product(*choices):
            F = dict(zip(morphs, vals))
            if any(F[A.id(a)] != B.identity[obj[a]] for a in A.objects()):
                continue
            ok = all(F[A.compose(g, f)] == B.comp[obj[f.src]][obj[f.tgt]][obj[g.tgt]][F[g]][F[f]]
                     for f in morphs for g in morphs if f.tgt == g.src)
            count += ok
    return count


def all_functors(A, B):
    return enumerate_functors(A, B)


@st.composite
def composable_functors(draw):
    names = [draw(st.sampled_from(SMALL)) for _ in range(4)]
    cats = [small(n) for n in names]
    Fs = []
    for X, Y in zip(cats, cats[1:]):
        fs = all_functors(X, Y)
        if not fs:
            return None
        Fs.append(draw(st.sampled_from(fs)))
    return Fs


# ----------------------------------------------------------------- functors


@pytest.mark.parametrize("name", list(fixtures()))
def test_identity_functor_valid(name):
    assert validate_functor(identity_functor(fixtures()[name])).ok


def test_swap_on_walking_arrow_invalid():
    W = walking_arrow()
    # f: a -> b would have to land in hom(b, a), which is empty
    F = FinFunctor(W, W, (1, 0), (((0,), (0,)), ((), (0,))), (((0,), ()), ((), (0,))))
    assert R.RANGE in validate_functor(F).laws


def test_constant_chaotic_to_arrow_valid():
    assert validate_functor(constant_functor(chaotic2(), walking_arrow(), 0)).ok


def test_compose_units():
    F = constant_functor(chaotic2(), walking_arrow(), 1)
    assert compose_functors(identity_functor(walking_arrow()), F) == F
    assert compose_functors(F, identity_functor(chaotic2())) == F


def test_compose_mismatch():
    with pytest.raises(DomainMismatch):
        compose_functors(identity_functor(z2()), identity_functor(walking_arrow()))


@settings(max_examples=60)
@given(composable_functors())
def test_compose_associative_and_valid(Fs):
    if Fs is None:
        return
    F, G, H = Fs
    assert compose_functors(H, compose_functors(G, F)) == compose_functors(compose_functors(H, G), F)
    assert validate_functor(compose_functors(G, F)).ok


def test_make_functor_infers_paths():
    C = z2()
    F = make_functor(C, C, [0], [[[0, 1]]])
    assert F == identity_functor(C)


# ----------------------------------------------------------------- enumeration


def test_functor_counts():
    W, X = walking_arrow(), chaotic2()
    assert len(enumerate_functors(W, W)) == brute_functor_count(W, W) == 3
    fs = enumerate_functors(X, W)
    assert len(fs) == brute_functor_count(X, W) == 2
    assert [F.obj_map for F in fs] == [(0, 0), (1, 1)]


def test_nat_trans_between_constants():
    W, X = walking_arrow(), chaotic2()
    c0, c1 = constant_functor(X, W, 0), constant_functor(X, W, 1)
    ts = enumerate_nat_trans(c0, c1)
    assert len(ts) == 1 and ts[0].components == (0, 0)


STRICT = ["terminal", "walking_arrow", "chaotic2", "z2_strict", "idempotent"]


@pytest.mark.parametrize("a,b", list(itertools.product(STRICT, SMALL)))
def test_functor_counts_match_oracle(a, b):
    A, B = small(a), small(b)
    fs = enumerate_functors(A, B)
    assert len(fs) == brute_functor_count(A, B)
    assert len(set(fs)) == len(fs)
    assert all(validate_functor(F).ok for F in fs)


def test_enumeration_deterministic():
    A, B = z2(), walking_arrow()
    assert enumerate_functors(A, B) == enumerate_functors(A, B)


# ----------------------------------------------------------------- transformations


def test_identity_transformation_valid():
    assert validate_nat_trans(identity_nat_trans(identity_functor(z2()))).ok


def test_constants_transformation_valid():
    X, W = chaotic2(), walking_arrow()
    g = FinNatTrans(constant_functor(X, W, 0), constant_functor(X, W, 1), (0, 0))
    assert validate_nat_trans(g).ok


def test_corrupted_component_in_z2():
    I = identity_functor(z2_strict())
    bad = FinNatTrans(I, I, (2,))
    rep = validate_nat_trans(bad)
    # every square through the only object fails: one per endomorphism
    assert sorted(v.witness for v in rep.by_law(R.NATURALITY)) == [(0, 0, 0), (0, 0, 1)]


def test_vcomp_units():
    I = identity_functor(z2_strict())
    s = FinNatTrans(I, I, (1,))
    one = identity_nat_trans(I)
    assert vcomp(one, s) == s == vcomp(s, one)
    assert vcomp(s, s) == one


def test_whisker_identities():
    W = walking_arrow()
    I = identity_functor(W)
    F = constant_functor(W, W, 1)
    assert whisker_right(identity_nat_trans(I), F) == identity_nat_trans(F)
    assert whisker_left(F, identity_nat_trans(I)) == identity_nat_trans(F)
    g = enumerate_nat_trans(constant_functor(W, W, 0), I)[0]
    assert whisker_right(g, identity_functor(W)) == g


def test_whisker_left_applies_hom_map():
    W = walking_arrow()
    I = identity_functor(W)
    g = enumerate_nat_trans(constant_functor(W, W, 0), I)[0]
    for K in enumerate_functors(W, W):
        wl = whisker_left(K, g)
        assert wl.components == tuple(K.hom_maps[0][b][g.components[b]] for b in range(2))
        assert validate_nat_trans(wl).ok


@pytest.mark.parametrize("a,b", [("walking_arrow", "chaotic2"), ("z2", "z2_strict"), ("chaotic2", "walking_arrow")])
def test_whiskering_is_componentwise(a, b):
    # the harness covers all interchange pairs by relying on this locality
    A, B = small(a), small(b)
    AB, BB = enumerate_functors(A, B), enumerate_functors(B, B)
    for F, G in itertools.product(AB, repeat=2):
        for g in enumerate_nat_trans(F, G):
            for H in BB:
                wl = whisker_left(H, g)
                assert wl.components == tuple(H.hom_maps[F.obj_map[x]][G.obj_map[x]][g.components[x]]
                                              for x in range(A.n))
    for H, K in itertools.product(BB, repeat=2):
        for d in enumerate_nat_trans(H, K):
            for F in AB:
                assert whisker_right(d, F).components == tuple(d.components[F.obj_map[x]] for x in range(A.n))


def test_interchange_identities():
    F = identity_functor(walking_arrow())
    ok, w = interchange_check(identity_nat_trans(F), identity_nat_trans(F))
    assert ok and w is None


@pytest.mark.parametrize("a,b", [("walking_arrow", "walking_arrow"), ("chaotic2", "walking_arrow"),
                                 ("z2", "z2_strict"), ("walking_arrow", "idempotent")])
def test_interchange_exhaustive(a, b):
    A, B = small(a), small(b)
    gammas = [t for F in enumerate_functors(A, B) for G in enumerate_functors(A, B) for t in enumerate_nat_trans(F, G)]
    deltas = [t for H in enumerate_functors(B, B) for K in enumerate_functors(B, B) for t in enumerate_nat_trans(H, K)]
    assert gammas and deltas
    assert all(interchange_check(g, d)[0] for g in gammas for d in deltas)


def test_interchange_rejects_unnatural():
    I = identity_functor(z2_strict())
    with pytest.raises(InvalidInput):
        interchange_check(FinNatTrans(I, I, (5,)), identity_nat_trans(I))


def test_is_nat_iso_cases():
    X, W = chaotic2(), walking_arrow()
    ok, inv = is_nat_iso(identity_nat_trans(identity_functor(W)))
    assert ok and inv == identity_nat_trans(identity_functor(W))
    g = enumerate_nat_trans(constant_functor(X, W, 0), constant_functor(X, W, 1))[0]
    assert is_nat_iso(g) == (False, 0)


@settings(max_examples=40)
@given(st.sampled_from(SMALL), st.sampled_from(SMALL))
def test_transformation_ops_stay_valid(a, b):
    A, B = small(a), small(b)
    fs = enumerate_functors(A, B)
    for F, G in itertools.product(fs, repeat=2):
        for g in enumerate_nat_trans(F, G):
            assert validate_nat_trans(g).ok
            ok, inv = is_nat_iso(g)
            if ok:
                assert vcomp(inv, g) == identity_nat_trans(F)
            for H in fs:
                for d in enumerate_nat_trans(G, H):
                    assert validate_nat_trans(vcomp(d, g)).ok


# ----------------------------------------------------------------- functor categories


def test_functor_category_chaotic_into_arrow():
    FC = functor_category(chaotic2(), walking_arrow())
    assert FC.n == 2 and FC.morphism_count == 3
    assert FC.hom_sizes == walking_arrow().hom_sizes
    assert validate_precategory(FC).ok


@pytest.mark.parametrize("name", ["walking_arrow", "z2", "chaotic2", "divisibility", "chaotic2_hat"])
def test_functor_category_from_terminal(name):
    C = fixtures()[name]
    FC = functor_category(terminal(), C)
    # object x is the functor picking functor_of(x).obj_map[0]
    pick = [functor_of(FC, x).obj_map[0] for x in range(FC.n)]
    assert sorted(pick) == list(range(C.n))
    assert all(FC.hom_sizes[x][y] == C.hom_sizes[pick[x]][pick[y]] for x in range(FC.n) for y in range(FC.n))
    assert all(FC.paths.sizes[x][y] == C.paths.sizes[pick[x]][pick[y]] for x in range(FC.n) for y in range(FC.n))


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(small_pool()), st.sampled_from(["terminal", "walking_arrow", "z2", "chaotic2_hat",
                                                        "z2_strict_hat", "idempotent_hat"]))
def test_functor_category_univalent_when_target_is(A, bname):
    B = fixtures()[bname]
    FC = functor_category(A, B)
    assert validate_precategory(FC).ok
    assert is_univalent(FC)
    for x, y in itertools.product(range(FC.n), repeat=2):
        images = FC.transport[x][y]
        isos = [i for i, t in enumerate(FC.mor_labels[x][y]) if is_nat_iso(t)[0]]
        assert sorted(images) == isos


def test_non_univalent_target_breaks_functor_category():
    X = chaotic2()
    assert not is_univalent(functor_category(terminal(), X))
    assert not is_univalent(functor_category(walking_arrow(), X))


def test_functor_paths_coherent():
    C = z2()
    I = identity_functor(C)
    assert [p.components for p in enumerate_functor_paths(I, I)] == [(0,), (1,)]


# ----------------------------------------------------------------- currying


def test_curry_constant_to_terminal():
    A, B = walking_arrow(), chaotic2()
    F = constant_functor(product(A, B), terminal(), 0)
    K = curry_functor(F, A, B)
    assert K.cod.n == 1 and K.obj_map == (0, 0)


@pytest.mark.parametrize("a,b,c", [("walking_arrow", "terminal", "walking_arrow"),
                                   ("walking_arrow", "chaotic2", "walking_arrow"),
                                   ("z2", "walking_arrow", "z2_strict"),
                                   ("chaotic2", "z2", "z2")])
def test_curry_round_trips(a, b, c):
    A, B, C = small(a), small(b), small(c)
    CB = functor_category(B, C)
    for F in enumerate_functors(product(A, B), C):
        K = curry_functor(F, A, B, CB)
        assert validate_functor(K).ok
        assert uncurry_functor(K, B) == F
    for G in enumerate_functors(A, CB):
        assert curry_functor(uncurry_functor(G, B), A, B, CB) == G


@pytest.mark.parametrize("name", ["walking_arrow", "z2", "chaotic2", "divisibility", "terminal"])
def test_hom_functor_curries(name):
    A = fixtures()[name]
    H = hom_functor(A)
    assert validate_functor(H).ok
    K = curry_functor(H, opposite(A), A)
    assert validate_functor(K).ok
    assert uncurry_functor(K, A) == H
