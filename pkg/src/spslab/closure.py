"""Finite closure spaces: validation, closure, clopens, components, quotients."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .order import PointUniverse, SetFamily, bits, canonical_key, intersection_closure
from .report import InputError, ValidationReport, Violation


@dataclass(frozen=True)
class FiniteClosureSpace:
    universe: PointUniverse
    closed: SetFamily

    @classmethod
    def build(cls, points: Iterable[str], closed_sets: Iterable[Iterable[str]]) -> FiniteClosureSpace:
        universe = PointUniverse(tuple(points))
        return validate_closure_space(universe, SetFamily.from_labels(universe, closed_sets)).unwrap()

    @property
    def points(self) -> tuple[str, ...]:
        return self.universe.labels

    def __str__(self) -> str:
        sets = ", ".join(self.universe.format(m) for m in self.closed)
        return f"({self.universe.format(self.universe.full)}, [{sets}])"


@dataclass(frozen=True)
class Partition:
    universe: PointUniverse
    blocks: SetFamily

    def __post_init__(self) -> None:
        seen = 0
        for b in self.blocks:
            if not b or b & seen:
                raise InputError(f"partition blocks must be nonempty and disjoint (at {self.universe.format(b)})")
            seen |= b
        if seen != self.universe.full:
            raise InputError("partition blocks do not cover the universe")

    def block_of(self, point: int) -> int:
        return next(b for b in self.blocks if b >> point & 1)

    def labels(self) -> tuple[str, ...]:
        return block_labels(len(self.blocks))

    def as_labels(self) -> list[list[str]]:
        return self.blocks.as_labels()


def block_labels(count: int) -> tuple[str, ...]:
    """Names for the points of a quotient: ``b1 .. bk`` in canonical block order."""
    return tuple(f"b{i + 1}" for i in range(count))


@dataclass(frozen=True)
class ContinuousMap:
    domain: FiniteClosureSpace
    codomain: FiniteClosureSpace
    mapping: Mapping[str, str]

    def __post_init__(self) -> None:
        if not is_continuous(self.mapping, self.domain, self.codomain):
            raise InputError("map is not continuous")

    def preimage(self, mask: int) -> int:
        return preimage(self.mapping, self.domain, self.codomain, mask)


def validate_closure_space(universe: PointUniverse, family: SetFamily | Iterable[int]) -> ValidationReport:
    if not isinstance(family, SetFamily):
        family = SetFamily(universe, tuple(family))
    if universe.size == 0:
        return ValidationReport((Violation("nonempty", "closure space has no points"),))
    violations = []
    if 0 not in family:
        violations.append(Violation("empty-closed", "empty set not closed"))
    if universe.full not in family:
        violations.append(Violation("whole-closed", "X not closed"))
    for a, b in combinations(family.members, 2):
        if a & b not in family:
            violations.append(
                Violation(
                    "intersection",
                    f"{universe.format(a & b)} missing: intersection of {universe.format(a)} and {universe.format(b)}",
                    (universe.members(a), universe.members(b)),
                )
            )
            break
    if violations:
        return ValidationReport(tuple(violations))
    return ValidationReport(value=FiniteClosureSpace(universe, family))


def closure_of(space: FiniteClosureSpace, subset: int) -> int:
    """Smallest closed superset."""
    out = space.universe.full
    for f in space.closed:
        if f & subset == subset:
            out &= f
    return out


def clopen_sets(space: FiniteClosureSpace) -> SetFamily:
    full = space.universe.full
    return SetFamily(space.universe, tuple(f for f in space.closed if full ^ f in space.closed))


def is_topological(space: FiniteClosureSpace) -> bool:
    """True iff the closed family is also closed under (finite) unions."""
    return all(a | b in space.closed for a, b in combinations(space.closed.members, 2))


def _traces(closed: Iterable[int], block: int) -> set[int]:
    return {f & block for f in closed}


def _first_split(closed: Iterable[int], block: int) -> int | None:
    """Canonically first proper nonempty clopen of the subspace on ``block``."""
    traces = _traces(closed, block)
    for t in sorted(traces, key=canonical_key):
        if t and t != block and block ^ t in traces:
            return t
    return None


def is_connected(space: FiniteClosureSpace) -> bool:
    if space.universe.size == 0:
        raise InputError("connectedness of the empty space is undefined")
    return len(clopen_sets(space)) == 2


def is_connected_subset(space: FiniteClosureSpace, subset: int) -> bool:
    """Connectedness of the induced subspace on ``subset``, without relabelling."""
    if not subset:
        raise InputError("connectedness of the empty set is undefined")
    return _first_split(space.closed, subset) is None


def induced_subspace(space: FiniteClosureSpace, subset: int) -> FiniteClosureSpace:
    if not subset:
        raise InputError("cannot induce a subspace on the empty set")
    if subset & ~space.universe.full:
        raise InputError("subset is not contained in the space")
    positions = list(bits(subset))
    universe = PointUniverse(tuple(space.universe.labels[i] for i in positions))

    def compress(mask: int) -> int:
        return sum(1 << k for k, i in enumerate(positions) if mask >> i & 1)

    return FiniteClosureSpace(universe, SetFamily(universe, tuple(compress(t) for t in _traces(space.closed, subset))))


def components(space: FiniteClosureSpace) -> Partition:
    """Connection components, found by recursive clopen splitting."""
    if space.universe.size == 0:
        raise InputError("components of the empty space are undefined")
    blocks: list[int] = []
    todo = [space.universe.full]
    while todo:
        block = todo.pop()
        cut = _first_split(space.closed, block)
        if cut is None:
            blocks.append(block)
        else:
            todo.extend((cut, block ^ cut))
    return Partition(space.universe, SetFamily(space.universe, tuple(blocks)))


def quotient_map(space: FiniteClosureSpace, partition: Partition) -> ContinuousMap:
    target = quotient_space(space, partition)
    names = block_labels(len(partition.blocks))
    mapping = {}
    for name, block in zip(names, partition.blocks):
        for p in bits(block):
            mapping[space.universe.labels[p]] = name
    return ContinuousMap(space, target, mapping)


def quotient_space(space: FiniteClosureSpace, partition: Partition) -> FiniteClosureSpace:
    """Quotient by ``partition``: the largest closed family on the blocks
    for which the projection is continuous.

    A set of blocks is closed iff the union of its blocks is closed in
    ``space``; every such union is itself a member of the closed family, so
    the closed family is scanned once rather than all block subsets.
    """
    if partition.universe != space.universe:
        raise InputError("partition is over a different universe")
    blocks = partition.blocks.members
    universe = PointUniverse(block_labels(len(blocks)))
    closed = []
    for f in space.closed:
        picked = 0
        covered = 0
        for k, b in enumerate(blocks):
            if b & f:
                picked |= 1 << k
                covered |= b
        if covered == f:
            closed.append(picked)
    return FiniteClosureSpace(universe, SetFamily(universe, tuple(closed)))


def is_totally_disconnected(space: FiniteClosureSpace) -> bool:
    return all(b.bit_count() == 1 for b in components(space).blocks)


def zero_dimensional_core(space: FiniteClosureSpace) -> FiniteClosureSpace:
    return FiniteClosureSpace(space.universe, intersection_closure(clopen_sets(space)))


def is_zero_dimensional(space: FiniteClosureSpace) -> bool:
    core = zero_dimensional_core(space).closed
    return all(f in core for f in space.closed)


def preimage(mapping: Mapping[str, str], domain: FiniteClosureSpace, codomain: FiniteClosureSpace, mask: int) -> int:
    out = 0
    for i, label in enumerate(domain.universe.labels):
        if mask >> codomain.universe.index(mapping[label]) & 1:
            out |= 1 << i
    return out


def is_continuous(mapping: Mapping[str, str], domain: FiniteClosureSpace, codomain: FiniteClosureSpace) -> bool:
    missing = [p for p in domain.points if p not in mapping]
    if missing:
        raise InputError(f"map is not total: no image for {missing}")
    stray = sorted({mapping[p] for p in domain.points} - set(codomain.points))
    if stray:
        raise InputError(f"map leaves the codomain: {stray}")
    return all(preimage(mapping, domain, codomain, b) in domain.closed for b in codomain.closed)
