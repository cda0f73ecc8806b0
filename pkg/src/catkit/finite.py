"""Finite carriers and maps between them.

Every finite set is a :class:`Fin`, whose elements are the indices
``0 .. size-1``.  Names never appear at this level.
"""
from __future__ import annotations

import contextlib
import itertools
import os
from dataclasses import dataclass
from typing import Iterator

from .errors import DomainMismatch, EnumerationTooLarge, NotBijective

DEFAULT_GUARD = 10**6

_guard_override: list[int] = []


def guard_limit() -> int:
    """Current enumeration guard.

    Resolution order: innermost :func:`guard` context, then the
    ``CATKIT_GUARD`` environment variable, then ``DEFAULT_GUARD``.
    """
    if _guard_override:
        return _guard_override[-1]
    env = os.environ.get("CATKIT_GUARD")
    if env:
        return int(env)
    return DEFAULT_GUARD


@contextlib.contextmanager
def guard(limit: int):
    _guard_override.append(int(limit))
    try:
        yield limit
    finally:
        _guard_override.pop()


class Budget:
    """Counts search steps and raises once the guard is exceeded."""

    def __init__(self, what="items", limit=None):
        self.limit = guard_limit() if limit is None else limit
        self.what = what
        self.count = 0

    def tick(self, k=1):
        self.count += k
        if self.count > self.limit:
            raise EnumerationTooLarge(self.count, self.limit, self.what)

    def require(self, count):
        """Fail up front when a known search size exceeds the guard."""
        if count > self.limit:
            raise EnumerationTooLarge(count, self.limit, self.what)


@dataclass(frozen=True)
class Fin:
    size: int

    def __post_init__(self):
        if self.size < 0:
            raise ValueError(f"Fin size must be nonnegative, got {self.size}")

    def __iter__(self):
        return iter(range(self.size))

    def __len__(self):
        return self.size

    def __contains__(self, i):
        return isinstance(i, int) and 0 <= i < self.size


@dataclass(frozen=True)
class FinMap:
    dom: Fin
    cod: Fin
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.dom.size:
            raise ValueError(f"table has length {len(self.table)}, domain has size {self.dom.size}")
        for i, v in enumerate(self.table):
            if not 0 <= v < self.cod.size:
                raise ValueError(f"table[{i}] = {v} is outside Fin({self.cod.size})")

    def __call__(self, i: int) -> int:
        return self.table[i]

    @classmethod
    def of(cls, table, cod_size: int) -> FinMap:
        return cls(Fin(len(table)), Fin(cod_size), tuple(table))


def identity_map(n: int | Fin) -> FinMap:
    carrier = n if isinstance(n, Fin) else Fin(n)
    return FinMap(carrier, carrier, tuple(range(carrier.size)))


def compose_maps(g: FinMap, f: FinMap) -> FinMap:
    """``g ∘ f``: apply ``f`` first."""
    if f.cod != g.dom:
        raise DomainMismatch(f"cannot compose: f lands in Fin({f.cod.size}), g starts at Fin({g.dom.size})")
    gt = g.table
    return FinMap(f.dom, g.cod, tuple(gt[i] for i in f.table))


def is_injective_table(table) -> bool:
    return len(set(table)) == len(table)


def is_bijection(f: FinMap) -> bool:
    return f.dom.size == f.cod.size and is_injective_table(f.table)


def invert_map(f: FinMap) -> FinMap:
    if not is_bijection(f):
        raise NotBijective(f"{list(f.table)} is not a bijection Fin({f.dom.size}) -> Fin({f.cod.size})")
    inv = [0] * f.dom.size
    for i, v in enumerate(f.table):
        inv[v] = i
    return FinMap(f.cod, f.dom, tuple(inv))


def count_maps(dom: int, cod: int) -> int:
    return cod**dom


def enumerate_tables(dom: int, cod: int, limit: int | None = None) -> Iterator[tuple[int, ...]]:
    """All tables ``Fin(dom) -> Fin(cod)`` in lexicographic order."""
    Budget("maps", limit).require(count_maps(dom, cod))
    return itertools.product(range(cod), repeat=dom)


def enumerate_maps(dom: Fin, cod: Fin, limit: int | None = None) -> Iterator[FinMap]:
    # not a generator: the guard must fire at call time
    tables = enumerate_tables(dom.size, cod.size, limit)
    return (FinMap(dom, cod, t) for t in tables)


def enumerate_bijections(n: int) -> Iterator[tuple[int, ...]]:
    """Permutations of ``Fin(n)`` in lexicographic order."""
    return itertools.permutations(range(n))
