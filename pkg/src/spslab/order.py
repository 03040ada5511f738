"""Point universes, bitmask set families and finite lattices.

Subsets of a :class:`PointUniverse` are plain ``int`` bitmasks: bit ``i`` is
set when the ``i``-th label (in canonical order) is a member. Every family
equality in the package is therefore bit-exact integer comparison.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .report import InputError, ValidationReport, Violation

_DIGITS = re.compile(r"(\d+)")


def natural_key(label: str) -> list:
    """Sort key that orders ``x2`` before ``x10``."""
    return [int(tok) if tok.isdigit() else tok for tok in _DIGITS.split(label)]


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def canonical_key(mask: int) -> tuple[int, int]:
    return (mask.bit_count(), mask)


@dataclass(frozen=True)
class PointUniverse:
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(sorted(self.labels, key=natural_key))
        if len(set(labels)) != len(labels):
            dupes = sorted({x for x in labels if labels.count(x) > 1})
            raise InputError(f"duplicate labels: {dupes}")
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    @cached_property
    def _index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown point {label!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        out = 0
        for label in labels:
            out |= 1 << self.index(label)
        return out

    def members(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    def format(self, mask: int) -> str:
        return "{" + ",".join(self.members(mask)) + "}"


@dataclass(frozen=True)
class SetFamily:
    """Deduplicated family of subsets, ordered by cardinality then mask."""

    universe: PointUniverse
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        members = tuple(sorted(set(self.members), key=canonical_key))
        for m in members:
            if m < 0 or m & ~self.universe.full:
                raise InputError(f"subset mask {m:#x} exceeds a universe of {self.universe.size} points")
        object.__setattr__(self, "members", members)

    @classmethod
    def from_labels(cls, universe: PointUniverse, sets: Iterable[Iterable[str]]) -> SetFamily:
        return cls(universe, tuple(universe.mask(s) for s in sets))

    @cached_property
    def _lookup(self) -> frozenset[int]:
        return frozenset(self.members)

    def __contains__(self, mask: object) -> bool:
        return mask in self._lookup

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def as_labels(self) -> list[list[str]]:
        return [self.universe.members(m) for m in self.members]


def intersection_closure(family: SetFamily) -> SetFamily:
    """Smallest intersection-closed superfamily, including the full universe."""
    seen = {family.universe.full}
    seen.update(family.members)
    todo = list(seen)
    while todo:
        a = todo.pop()
        for b in list(seen):
            c = a & b
            if c not in seen:
                seen.add(c)
                todo.append(c)
    return SetFamily(family.universe, tuple(seen))


# -- lattices --------------------------------------------------------------


@dataclass(frozen=True)
class FiniteLattice:
    """A finite lattice given by its order relation.

    ``down[i]`` is the bitmask (over element indices) of everything below
    element ``i``. Meet and join tables, top and bottom are derived once at
    construction and never supplied by the caller.
    """

    elements: tuple[str, ...]
    down: tuple[int, ...]
    up: tuple[int, ...] = field(compare=False, repr=False)
    meet_table: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)
    join_table: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)
    bottom: int = field(compare=False, repr=False)
    top: int = field(compare=False, repr=False)

    @classmethod
    def from_order(cls, elements: Sequence[str], leq: Iterable[tuple[str, str]]) -> FiniteLattice:
        return validate_lattice(elements, leq).unwrap()

    @classmethod
    def from_down_sets(cls, elements: Sequence[str], down: Sequence[int]) -> FiniteLattice:
        return _validate_masks(tuple(elements), tuple(down)).unwrap()

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def idx(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise InputError(f"unknown lattice element {name!r}") from None

    def leq(self, a: str, b: str) -> bool:
        return bool(self.down[self.idx(b)] >> self.idx(a) & 1)

    def leq_idx(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def meet_idx(self, indices: Iterable[int]) -> int:
        out = self.top
        for i in indices:
            out = self.meet_table[out][i]
        return out

    def join_idx(self, indices: Iterable[int]) -> int:
        out = self.bottom
        for i in indices:
            out = self.join_table[out][i]
        return out

    def pairs(self) -> list[tuple[str, str]]:
        """The full order relation as ``(lower, upper)`` name pairs."""
        return [
            (self.elements[i], self.elements[j])
            for j in range(len(self.elements))
            for i in bits(self.down[j])
        ]

    @property
    def top_name(self) -> str:
        return self.elements[self.top]

    @property
    def bottom_name(self) -> str:
        return self.elements[self.bottom]


def order_closure(elements: Sequence[str], pairs: Iterable[tuple[str, str]]) -> list[tuple[str, str]]:
    """Reflexive-transitive closure of ``pairs``; handy for writing fixtures from covers."""
    index = {e: i for i, e in enumerate(elements)}
    down = [1 << i for i in range(len(elements))]
    for a, b in pairs:
        down[index[b]] |= 1 << index[a]
    changed = True
    while changed:
        changed = False
        for j in range(len(down)):
            acc = down[j]
            for i in bits(down[j]):
                acc |= down[i]
            if acc != down[j]:
                down[j] = acc
                changed = True
    return [(elements[i], elements[j]) for j in range(len(elements)) for i in bits(down[j])]


def validate_lattice(elements: Sequence[str], leq: Iterable[tuple[str, str]]) -> ValidationReport:
    """Check that ``leq`` is a partial order on ``elements`` with all binary meets and joins.

    ``leq`` must be the whole relation, reflexive pairs included; nothing is
    closed up on the caller's behalf. On success the report's ``value`` is
    the materialized :class:`FiniteLattice`.
    """
    elements = tuple(elements)
    if not elements:
        return ValidationReport((Violation("nonempty", "lattice has no elements"),))
    if len(set(elements)) != len(elements):
        dupes = sorted({e for e in elements if elements.count(e) > 1})
        return ValidationReport((Violation("distinct", f"duplicate elements {dupes}", dupes),))
    index = {e: i for i, e in enumerate(elements)}
    down = [0] * len(elements)
    for a, b in leq:
        if a not in index or b not in index:
            bad = a if a not in index else b
            return ValidationReport((Violation("known-elements", f"order mentions unknown element {bad!r}", (a, b)),))
        down[index[b]] |= 1 << index[a]
    return _validate_masks(elements, tuple(down))


def _validate_masks(elements: tuple[str, ...], down: tuple[int, ...]) -> ValidationReport:
    n = len(elements)
    if n == 0:
        return ValidationReport((Violation("nonempty", "lattice has no elements"),))
    violations: list[Violation] = []

    def first(axiom: str, pairs: Iterator[tuple[int, int]], text: str) -> None:
        for i, j in pairs:
            violations.append(Violation(axiom, text.format(a=elements[i], b=elements[j]), (elements[i], elements[j])))
            return

    first("reflexive", ((i, i) for i in range(n) if not down[i] >> i & 1), "{a} is not <= itself")
    first(
        "antisymmetric",
        ((i, j) for j in range(n) for i in bits(down[j]) if i != j and down[i] >> j & 1),
        "{a} <= {b} and {b} <= {a} but they differ",
    )
    first(
        "transitive",
        ((k, j) for j in range(n) for i in bits(down[j]) for k in bits(down[i]) if not down[j] >> k & 1),
        "{a} <= {b} does not follow by transitivity",
    )
    if violations:
        return ValidationReport(tuple(violations))

    up = [0] * n
    for j in range(n):
        for i in bits(down[j]):
            up[i] |= 1 << j

    def bound(cone: Sequence[int], common: int) -> int | None:
        # the greatest element of `common` w.r.t. `cone`, if any
        for g in bits(common):
            if cone[g] & common == common:
                return g
        return None

    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    missing_meet = missing_join = None
    for i in range(n):
        for j in range(i, n):
            m = bound(down, down[i] & down[j])
            s = bound(up, up[i] & up[j])
            if m is None and missing_meet is None:
                missing_meet = (i, j)
            if s is None and missing_join is None:
                missing_join = (i, j)
            meet[i][j] = meet[j][i] = -1 if m is None else m
            join[i][j] = join[j][i] = -1 if s is None else s
    if missing_meet:
        first("meets", iter([missing_meet]), "no meet for ({a},{b})")
    if missing_join:
        first("joins", iter([missing_join]), "no join for ({a},{b})")
    if violations:
        return ValidationReport(tuple(violations))

    everything = (1 << n) - 1
    top = next(i for i in range(n) if down[i] == everything)
    bottom = next(i for i in range(n) if up[i] == everything)
    lattice = FiniteLattice(
        elements=elements,
        down=down,
        up=tuple(up),
        meet_table=tuple(map(tuple, meet)),
        join_table=tuple(map(tuple, join)),
        bottom=bottom,
        top=top,
    )
    return ValidationReport(value=lattice)


def meet(lattice: FiniteLattice, elems: Iterable[str]) -> str:
    """Greatest lower bound; the empty meet is the top element."""
    return lattice.elements[lattice.meet_idx(lattice.idx(e) for e in elems)]


def join(lattice: FiniteLattice, elems: Iterable[str]) -> str:
    """Least upper bound; the empty join is the bottom element."""
    return lattice.elements[lattice.join_idx(lattice.idx(e) for e in elems)]


def sublattice(lattice: FiniteLattice, indices: Iterable[int]) -> ValidationReport:
    """Validate the subset ``indices`` under the inherited order (element order kept)."""
    keep = sorted(set(indices))
    pos = {old: new for new, old in enumerate(keep)}
    down = tuple(sum(1 << pos[i] for i in bits(lattice.down[j]) if i in pos) for j in keep)
    return _validate_masks(tuple(lattice.elements[j] for j in keep), down)


def interval(lattice: FiniteLattice, lo: str, hi: str) -> FiniteLattice:
    """The sublattice ``[lo, hi]``."""
    i, j = lattice.idx(lo), lattice.idx(hi)
    if not lattice.leq_idx(i, j):
        raise InputError(f"interval bounds out of order: {lo!r} is not <= {hi!r}")
    return sublattice(lattice, bits(lattice.up[i] & lattice.down[j])).unwrap()
