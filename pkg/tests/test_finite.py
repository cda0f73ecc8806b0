import itertools

import pytest
from hypothesis import given, strategies as st

from catkit import (EnumerationTooLarge, Fin, FinMap, NotBijective, compose_maps, enumerate_maps, guard,
                    guard_limit, invert_map, is_bijection)
from catkit.errors import DomainMismatch
from catkit.finite import DEFAULT_GUARD, identity_map


def fmap(table, cod):
    return FinMap.of(table, cod)


@st.composite
def maps(draw, dom=None, cod=None):
    dom = draw(st.integers(0, 5)) if dom is None else dom
    cod = draw(st.integers(1, 5)) if cod is None else cod
    return fmap(draw(st.lists(st.integers(0, cod - 1), min_size=dom, max_size=dom)), cod)


@st.composite
def chains(draw):
    a, b, c, d = (draw(st.integers(1, 4)) for _ in range(4))
    return draw(maps(a, b)), draw(maps(b, c)), draw(maps(c, d))


@st.composite
def perms(draw):
    n = draw(st.integers(0, 6))
    return fmap(draw(st.permutations(list(range(n)))), n)


def test_fin_rejects_negative_size():
    with pytest.raises(ValueError):
        Fin(-1)


def test_finmap_rejects_out_of_range_entries():
    with pytest.raises(ValueError):
        fmap([0, 2], 2)


def test_compose_with_identity():
    f = fmap([1, 0, 1], 2)
    assert compose_maps(identity_map(2), f) == f
    assert compose_maps(f, identity_map(3)) == f


def test_compose_swap_twice():
    swap = fmap([1, 0], 2)
    assert compose_maps(swap, swap).table == (0, 1)


def test_compose_domain_mismatch():
    with pytest.raises(DomainMismatch):
        compose_maps(fmap([0], 1), fmap([0, 1], 2))


@pytest.mark.parametrize("table,cod,expected", [
    ((0, 1, 2), 3, True),
    ((0, 0), 2, False),
    ((2, 0, 1), 3, True),
    ((0, 1), 3, False),
])
def test_is_bijection(table, cod, expected):
    assert is_bijection(fmap(table, cod)) is expected


def test_invert_cycle():
    assert invert_map(fmap([2, 0, 1], 3)).table == (1, 2, 0)


def test_invert_non_bijection():
    with pytest.raises(NotBijective):
        invert_map(fmap([0, 0], 2))


def test_enumerate_empty_domain():
    assert [m.table for m in enumerate_maps(Fin(0), Fin(3))] == [()]


def test_enumerate_two_to_two():
    assert len(list(enumerate_maps(Fin(2), Fin(2)))) == 4


def test_enumerate_three_to_two_order():
    # oracle: counting in base 2, most significant entry first
    expected = [tuple((k >> s) & 1 for s in (2, 1, 0)) for k in range(8)]
    assert [m.table for m in enumerate_maps(Fin(3), Fin(2))] == expected


def test_guard_fires_at_call_time():
    with guard(7):
        with pytest.raises(EnumerationTooLarge) as e:
            enumerate_maps(Fin(3), Fin(2))
    assert e.value.count == 8 and e.value.limit == 7


def test_guard_resolution(monkeypatch):
    monkeypatch.delenv("CATKIT_GUARD", raising=False)
    assert guard_limit() == DEFAULT_GUARD == 10**6
    monkeypatch.setenv("CATKIT_GUARD", "50")
    assert guard_limit() == 50
    with guard(9):
        assert guard_limit() == 9
    assert guard_limit() == 50


@given(chains())
def test_compose_associative(fgh):
    f, g, h = fgh
    assert compose_maps(h, compose_maps(g, f)) == compose_maps(compose_maps(h, g), f)


@given(maps())
def test_identities_are_units(f):
    assert compose_maps(identity_map(f.cod), f) == f == compose_maps(f, identity_map(f.dom))


@given(perms())
def test_invert_is_involution(p):
    inv = invert_map(p)
    assert invert_map(inv) == p
    assert compose_maps(inv, p) == identity_map(p.dom)
    assert compose_maps(p, inv) == identity_map(p.cod)


@given(st.integers(0, 4), st.integers(0, 4))
def test_enumerate_counts_and_distinct(dom, cod):
    tables = [m.table for m in enumerate_maps(Fin(dom), Fin(cod))]
    assert len(tables) == cod**dom == len(set(tables))
    assert tables == sorted(tables)
    assert tables == list(itertools.product(range(cod), repeat=dom))
