import itertools
import math

import pytest
from hypothesis import given, settings

from catkit import (MorRef, NotAnIso, NotReflexive, NotTransitive, NotUnivalent, PathRef, build_precategory,
                    classify, discrete_groupoid, finset_table, idtoiso, is_iso, is_univalent, iso_set, iso_witness,
                    isotoid, mk_chaotic, mk_discrete, mk_finset_skeleton, mk_preorder, opposite, product,
                    transport_hom, validate_groupoid, validate_precategory)
from catkit import report as R
from catkit.fixtures import (chaotic2, divisibility_poset, finset_skeleton3, terminal, walking_arrow, z2, z2_groupoid,
                             z2_strict)
from catkit.precat import NOT_SURJECTIVE, FinPrecategory, with_core_paths
from catkit.rezk import rezk_completion
from strategies import fixtures, groupoid_cats, groupoids, precats, preorders


def brute_isos(C, a, b):
    """Oracle: every (f, g) with both composites identities, by exhaustive search."""
    out = []
    for f in range(C.hom_sizes[a][b]):
        for g in range(C.hom_sizes[b][a]):
            if C.comp[a][b][a][g][f] == C.identity[a] and C.comp[b][a][b][f][g] == C.identity[b]:
                out.append((f, g))
    return out


def mutate(C, **kw):
    fields = dict(hom_sizes=C.hom_sizes, identity=C.identity, comp=C.comp, paths=C.paths, transport=C.transport)
    fields.update(kw)
    return FinPrecategory(**fields)


def set_entry(t, path, value):
    if not path:
        return value
    i = path[0]
    return tuple(set_entry(x, path[1:], value) if k == i else x for k, x in enumerate(t))


# ----------------------------------------------------------------- validation


@pytest.mark.parametrize("name", list(fixtures()))
def test_fixtures_valid(name):
    assert validate_precategory(fixtures()[name]).ok


def test_terminal_shape():
    C = terminal()
    assert C.n == 1 and C.morphism_count == 1


def test_walking_arrow_corrupted_unit_right():
    C = walking_arrow()
    # comp[a][a][b][f][id_a] := 1 (out of range for hom(a,b))
    bad = mutate(C, comp=set_entry(C.comp, (0, 0, 1, 0, 0), 1))
    rep = validate_precategory(bad)
    assert [v.witness for v in rep.by_law(R.UNIT_RIGHT)] == [(0, 1, 0)]
    assert not rep.by_law(R.UNIT_LEFT)


def test_z2_all_triples_associate():
    C = z2_strict()
    # oracle: s∘s = e, so composition is xor on {0, 1}
    for f, g, h in itertools.product(range(2), repeat=3):
        assert C.comp[0][0][0][h][C.comp[0][0][0][g][f]] == (h ^ g ^ f)
        assert C.comp[0][0][0][C.comp[0][0][0][h][g]][f] == (h ^ g ^ f)
    assert validate_precategory(C).ok


def test_shape_error_reported():
    C = walking_arrow()
    rep = validate_precategory(mutate(C, identity=(0,)))
    assert rep.laws == {R.SHAPE}


def test_non_iso_transport_flagged():
    # idempotent monoid with a Z/2 object groupoid sending s to t: t is no isomorphism
    G = z2_groupoid()
    C = build_precategory([[2]], [0], lambda a, b, c, g, f: g | f, G, [[(0, 1)]])
    assert R.J_ISO in validate_precategory(C).laws


# ----------------------------------------------------------------- isomorphisms


def test_iso_witness_identity():
    C = walking_arrow()
    assert iso_witness(C, C.id(0)) == C.id(0)


def test_iso_witness_arrow_none():
    assert iso_witness(walking_arrow(), MorRef(0, 1, 0)) is None


def test_iso_witness_z2():
    assert iso_witness(z2_strict(), MorRef(0, 0, 1)) == MorRef(0, 0, 1)


def test_iso_set_discrete_off_diagonal():
    C = mk_discrete(discrete_groupoid(3))
    assert all(iso_set(C, a, b) == [] for a in range(3) for b in range(3) if a != b)


def test_iso_set_chaotic():
    C = chaotic2()
    assert all(len(iso_set(C, a, b)) == 1 for a in range(2) for b in range(2))


def test_iso_set_finset_2_2():
    C = finset_skeleton3()
    isos = iso_set(C, 2, 2)
    assert len(isos) == 2
    # oracle: the bijective self-maps of a 2-element set
    perms = [t for t in itertools.product(range(2), repeat=2) if len(set(t)) == 2]
    assert sorted(finset_table(C, 2, 2, f.index) for f, _ in isos) == sorted(perms)


def test_inverse_of_non_iso():
    from catkit import inverse
    with pytest.raises(NotAnIso):
        inverse(walking_arrow(), MorRef(0, 1, 0))


# ----------------------------------------------------------------- idtoiso / isotoid / transport


def test_idtoiso_refl():
    C = finset_skeleton3()
    for a in range(C.n):
        assert idtoiso(C, C.paths.refl_path(a)) == C.id(a)


def test_idtoiso_on_completed_chaotic():
    Chat, _ = rezk_completion(chaotic2())
    assert Chat.paths.sizes[0][1] == 1
    assert idtoiso(Chat, PathRef(0, 1, 0)) == MorRef(0, 1, 0)


def test_idtoiso_concat_finset():
    C = finset_skeleton3()
    G = C.paths
    for p, q in itertools.product(G.paths(3, 3), repeat=2):
        P, Q = PathRef(3, 3, p), PathRef(3, 3, q)
        assert idtoiso(C, G.concat(P, Q)) == C.compose(idtoiso(C, Q), idtoiso(C, P))


def test_isotoid_identity():
    C = z2()
    assert isotoid(C, C.id(0)) == C.paths.refl_path(0)


def test_isotoid_transposition():
    C = finset_skeleton3()
    swap = next(f for f in range(C.hom_sizes[2][2]) if finset_table(C, 2, 2, f) == (1, 0))
    p = isotoid(C, MorRef(2, 2, swap))
    assert p.index != C.paths.refl[2] and C.paths.sizes[2][2] == 2


def test_isotoid_not_univalent():
    with pytest.raises(NotUnivalent):
        isotoid(chaotic2(), MorRef(0, 1, 0))


def test_isotoid_not_iso():
    C = finset_skeleton3()
    const = next(f for f in range(C.hom_sizes[2][2]) if finset_table(C, 2, 2, f) == (0, 0))
    with pytest.raises(NotAnIso):
        isotoid(C, MorRef(2, 2, const))


def test_isotoid_composition():
    C = finset_skeleton3()
    isos = [f for f, _ in iso_set(C, 3, 3)]
    for e, f in itertools.product(isos, repeat=2):
        lhs = isotoid(C, C.compose(f, e))
        assert lhs == C.paths.concat(isotoid(C, e), isotoid(C, f))


def test_transport_refl_refl():
    C = walking_arrow()
    f = MorRef(0, 1, 0)
    assert transport_hom(C, C.paths.refl_path(0), C.paths.refl_path(1), f) == f


def test_transport_identity_along_path():
    C = finset_skeleton3()
    for p in C.paths.paths(3, 3):
        P = PathRef(3, 3, p)
        assert transport_hom(C, P, P, C.id(3)) == C.id(3)


def test_transport_conjugates_in_finset():
    C = finset_skeleton3()
    swap = PathRef(2, 2, next(p for p in C.paths.paths(2, 2) if p != C.paths.refl[2]))
    for f in range(C.hom_sizes[2][2]):
        t = finset_table(C, 2, 2, f)
        moved = transport_hom(C, swap, swap, MorRef(2, 2, f))
        # oracle: σ ∘ t ∘ σ⁻¹ with σ the swap
        sigma = (1, 0)
        assert finset_table(C, 2, 2, moved.index) == tuple(sigma[t[sigma[x]]] for x in range(2))


# ----------------------------------------------------------------- univalence / classification


def test_chaotic2_not_univalent():
    rep = is_univalent(chaotic2())
    assert not rep
    assert rep.failing_pairs == [(0, 1), (1, 0)]
    f = next(x for x in rep.failures if (x.a, x.b) == (0, 1))
    assert (f.paths, f.isos, f.reason) == (0, 1, NOT_SURJECTIVE)


def test_divisibility_univalent():
    assert is_univalent(divisibility_poset())


def test_completed_chaotic_univalent():
    assert is_univalent(rezk_completion(chaotic2())[0])


@pytest.mark.parametrize("make,expected", [
    (divisibility_poset, (True, True, True)),
    (finset_skeleton3, (False, False, False)),
    (chaotic2, (True, False, True)),
])
def test_classify(make, expected):
    c = classify(make())
    assert (c.strict, c.gaunt, c.preorder) == expected


# ----------------------------------------------------------------- opposite / product


def test_opposite_terminal():
    assert opposite(terminal()) == terminal()


def test_opposite_walking_arrow():
    op = opposite(walking_arrow())
    assert op.hom_sizes == ((1, 0), (1, 1))


@pytest.mark.parametrize("name", list(fixtures()))
def test_double_opposite(name):
    C = fixtures()[name]
    assert opposite(opposite(C)) == C
    assert validate_precategory(opposite(C)).ok


@pytest.mark.parametrize("name", ["walking_arrow", "z2", "divisibility", "chaotic2_hat"])
def test_product_with_terminal(name):
    C = fixtures()[name]
    assert product(C, terminal()) == C


def test_walking_arrow_squared():
    W = walking_arrow()
    P = product(W, W)
    assert P.n == 4
    assert P.hom_sizes[0][3] == 1
    # oracle: Σ over pairs of hom-size products
    hs = W.hom_sizes
    expected = sum(hs[a][a2] * hs[b][b2] for a, a2, b, b2 in itertools.product(range(2), repeat=4))
    assert P.morphism_count == expected == 9
    assert validate_precategory(P).ok


# ----------------------------------------------------------------- constructions


def test_mk_discrete_trivial_is_terminal():
    assert mk_discrete(discrete_groupoid(1)) == terminal()


def test_mk_discrete_two_objects():
    C = mk_discrete(discrete_groupoid(2))
    assert C.morphism_count == 2 and is_univalent(C)


def test_mk_discrete_z2():
    C = mk_discrete(z2_groupoid())
    assert is_univalent(C) and len(iso_set(C, 0, 0)) == 2


def test_mk_chaotic_small():
    assert mk_chaotic(1) == terminal()
    assert validate_precategory(mk_chaotic(2)).ok and not is_univalent(mk_chaotic(2))
    empty = mk_chaotic(0)
    assert empty.n == 0 and is_univalent(empty)


def test_mk_preorder_total_is_chaotic():
    assert mk_preorder([[1, 1], [1, 1]]) == mk_chaotic(2)


def test_mk_preorder_errors():
    with pytest.raises(NotTransitive):
        mk_preorder([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    with pytest.raises(NotReflexive):
        mk_preorder([[0]])


def test_finset_sizes():
    C = finset_skeleton3()
    assert C.hom_sizes[2][3] == 9
    assert C.paths.sizes[2][2] == 2
    assert is_univalent(C)
    # oracle: iso(m, n) = bijections, m! when m = n, none otherwise
    for m, n in itertools.product(range(4), repeat=2):
        count = sum(1 for t in itertools.product(range(n), repeat=m) if len(set(t)) == m == n)
        assert len(iso_set(C, m, n)) == count == (math.factorial(m) if m == n else 0)


def test_finset_zero():
    C = mk_finset_skeleton(0)
    assert C.n == 1 and C.hom_sizes == ((1,),)


# ----------------------------------------------------------------- properties


@given(precats())
def test_iso_witness_of_idtoiso_is_idtoiso_of_inverse(C):
    for p in C.paths.all_paths():
        assert iso_witness(C, idtoiso(C, p)) == idtoiso(C, C.paths.inverse(p))


@given(precats())
def test_transport_refl_is_identity(C):
    for f in C.morphisms():
        assert transport_hom(C, C.paths.refl_path(f.src), C.paths.refl_path(f.tgt), f) == f


@given(groupoids())
def test_groupoid_categories_univalent(G):
    assert validate_groupoid(G).ok
    C = mk_discrete(G)
    assert validate_precategory(C).ok and is_univalent(C)


@given(precats())
def test_gaunt_three_way(C):
    c = classify(C)
    at_most_one = all(len(iso_set(C, a, b)) <= 1 for a in C.objects() for b in C.objects())
    assert c.gaunt == (bool(is_univalent(C)) and c.strict and at_most_one)


@settings(max_examples=60)
@given(precats(), precats())
def test_opposite_and_product_valid(C, D):
    assert validate_precategory(opposite(C)).ok
    assert validate_precategory(product(C, D)).ok


@given(precats())
def test_inverses_unique(C):
    for a, b in itertools.product(C.objects(), repeat=2):
        for f in range(C.hom_sizes[a][b]):
            invs = [g for f2, g in brute_isos(C, a, b) if f2 == f]
            assert len(invs) <= 1
            assert is_iso(C, MorRef(a, b, f)) == bool(invs)
        assert [(f.index, g.index) for f, g in iso_set(C, a, b)] == brute_isos(C, a, b)


@given(precats())
def test_univalence_matches_counting_oracle(C):
    # oracle: J injective and hitting exactly the isomorphisms, per pair
    expected = all(
        sorted(C.transport[a][b]) == sorted(f for f, _ in brute_isos(C, a, b))
        for a, b in itertools.product(C.objects(), repeat=2))
    assert bool(is_univalent(C)) == expected


@given(preorders())
def test_preorders(C):
    assert validate_precategory(C).ok
    c = classify(C)
    assert c.strict and c.preorder
    antisymmetric = all(not (C.hom_sizes[a][b] and C.hom_sizes[b][a]) for a in C.objects() for b in C.objects()
                        if a != b)
    assert bool(is_univalent(C)) == antisymmetric == c.gaunt


@given(groupoid_cats())
def test_core_of_groupoid_is_itself(C):
    core = with_core_paths(C)
    assert core.paths.sizes == C.paths.sizes and is_univalent(core)
