"""Brute-force reference implementations.

Nothing here reuses the fast paths it is meant to check: components come
from enumerating every subset, and classicality is decided from the raw
order relation and actuality sets without the cached meet/join tables or
the Cartan shortcut.
"""

from __future__ import annotations

from .closure import FiniteClosureSpace, Partition, clopen_sets, induced_subspace, is_connected
from .order import SetFamily
from .report import InputError
from .sps import StatePropertySystem

BRUTE_CAP = 12


def brute_components(space: FiniteClosureSpace) -> Partition:
    """Component of ``x`` = union of every connected subset containing ``x``."""
    n = space.universe.size
    if n > BRUTE_CAP:
        raise InputError(f"brute_components refuses {n} points (cap {BRUTE_CAP})")
    connected = [s for s in range(1, 1 << n) if is_connected(induced_subspace(space, s))]
    blocks = set()
    for x in range(n):
        block = 0
        for s in connected:
            if s >> x & 1:
                block |= s
        blocks.add(block)
    return Partition(space.universe, SetFamily(space.universe, tuple(blocks)))


def quasi_components(space: FiniteClosureSpace) -> Partition:
    """Classes of points that no clopen set separates."""
    clopens = clopen_sets(space).members
    blocks = set()
    for x in range(space.universe.size):
        block = space.universe.full
        for c in clopens:
            if c >> x & 1:
                block &= c
        blocks.add(block)
    return Partition(space.universe, SetFamily(space.universe, tuple(blocks)))


def brute_classical(sps: StatePropertySystem, a: str) -> str | None:
    """Scan every element for a complement of ``a`` that is superselection-separated from it."""
    names = list(sps.lattice.elements)
    le = {(x, y) for x, y in sps.lattice.pairs()}
    actual = [set(sps.actual(s)) for s in sps.states]

    def least(candidates: list[str]) -> str:
        return next(u for u in candidates if all((u, v) in le for v in candidates))

    def greatest(candidates: list[str]) -> str:
        return next(u for u in candidates if all((v, u) in le for v in candidates))

    top = greatest(names)
    bottom = least(names)
    for c in names:
        upper = least([u for u in names if (a, u) in le and (c, u) in le])
        lower = greatest([u for u in names if (u, a) in le and (u, c) in le])
        if upper != top or lower != bottom:
            continue
        if all(upper not in xs or a in xs or c in xs for xs in actual):
            return c
    return None
