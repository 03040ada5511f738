"""State property systems, the Cartan map, superselection and classicality."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

from .order import FiniteLattice, PointUniverse, SetFamily, bits
from .report import InputError, ValidationReport, Violation


@dataclass(frozen=True)
class StatePropertySystem:
    """States, a property lattice, and for each state its actual properties.

    ``xi[p]`` is a bitmask over lattice element indices, stored in full
    rather than generated from a strongest property, so that validation can
    see inputs that are not filters.
    """

    states: PointUniverse
    lattice: FiniteLattice
    xi: tuple[int, ...]

    @classmethod
    def build(
        cls,
        states: Iterable[str],
        lattice: FiniteLattice,
        xi: Mapping[str, Iterable[str]],
    ) -> StatePropertySystem:
        return validate_sps(PointUniverse(tuple(states)), lattice, xi).unwrap()

    @cached_property
    def kappa(self) -> tuple[int, ...]:
        """Cartan map by element index: the mask of states where it is actual."""
        out = [0] * len(self.lattice)
        for p, mask in enumerate(self.xi):
            for a in bits(mask):
                out[a] |= 1 << p
        return tuple(out)

    @cached_property
    def kappa_inverse(self) -> dict[int, int]:
        return {k: a for a, k in enumerate(self.kappa)}

    def actual(self, state: str) -> list[str]:
        return [self.lattice.elements[a] for a in bits(self.xi[self.states.index(state)])]

    def is_actual(self, prop: str, state: str) -> bool:
        return bool(self.xi[self.states.index(state)] >> self.lattice.idx(prop) & 1)

    def xi_names(self) -> dict[str, list[str]]:
        return {s: self.actual(s) for s in self.states}


def validate_sps(
    states: PointUniverse,
    lattice: FiniteLattice,
    xi: Mapping[str, Iterable[str]] | Iterable[int],
) -> ValidationReport:
    """Check the three state property system axioms.

    ``xi`` is either a mapping from state names to property names or a
    sequence of element-index masks in state order.
    """
    if isinstance(xi, Mapping):
        missing = [s for s in states if s not in xi]
        if missing:
            return ValidationReport((Violation("total", f"no actual properties given for {missing}", missing),))
        extra = sorted(set(xi) - set(states.labels))
        if extra:
            return ValidationReport((Violation("total", f"actual properties given for unknown states {extra}", extra),))
        masks = []
        for s in states:
            m = 0
            for name in xi[s]:
                if name not in lattice.index:
                    return ValidationReport(
                        (Violation("known-properties", f"unknown property {name!r} for state {s}", (s, name)),)
                    )
                m |= 1 << lattice.index[name]
            masks.append(m)
        xi = tuple(masks)
    else:
        xi = tuple(xi)
        if len(xi) != states.size:
            return ValidationReport((Violation("total", "one property mask per state required"),))
    return _validate_masks(states, lattice, xi)


def _validate_masks(states: PointUniverse, lattice: FiniteLattice, xi: tuple[int, ...]) -> ValidationReport:
    if states.size == 0:
        return ValidationReport((Violation("nonempty", "a state property system needs at least one state"),))
    names = lattice.elements
    violations = []
    bottom, top = lattice.bottom, lattice.top

    for p, mask in enumerate(xi):
        if mask >> bottom & 1:
            violations.append(
                Violation("bottom-never-actual", f"{names[bottom]} actual in state {states.labels[p]}", (states.labels[p], names[bottom]))
            )
            break

    def meet_failure() -> Violation | None:
        for p, mask in enumerate(xi):
            s = states.labels[p]
            if not mask >> top & 1:
                return Violation("meets-actual", f"top {names[top]} (empty meet) not actual in state {s}", (s, names[top]))
            for a, b in combinations(bits(mask), 2):
                m = lattice.meet_table[a][b]
                if not mask >> m & 1:
                    return Violation(
                        "meets-actual",
                        f"{names[a]} and {names[b]} actual in state {s} but their meet {names[m]} is not",
                        (s, names[a], names[b]),
                    )
        return None

    v = meet_failure()
    if v:
        violations.append(v)

    kappa = [0] * len(lattice)
    for p, mask in enumerate(xi):
        for a in bits(mask):
            kappa[a] |= 1 << p
    n = len(lattice)
    for a in range(n):
        for b in range(n):
            ordered = lattice.leq_idx(a, b)
            included = kappa[a] & kappa[b] == kappa[a]
            if ordered != included:
                text = (
                    f"{names[a]} <= {names[b]} but some state has {names[a]} actual without {names[b]}"
                    if ordered
                    else f"{names[a]} is not <= {names[b]} yet {names[b]} is actual wherever {names[a]} is"
                )
                violations.append(Violation("order-matches-actuality", text, (names[a], names[b])))
                break
        else:
            continue
        break

    if violations:
        return ValidationReport(tuple(violations))
    return ValidationReport(value=StatePropertySystem(states, lattice, xi))


def cartan(sps: StatePropertySystem, a: str) -> int:
    return sps.kappa[sps.lattice.idx(a)]


def cartan_image(sps: StatePropertySystem) -> SetFamily:
    return SetFamily(sps.states, sps.kappa)


def strongest_property(sps: StatePropertySystem, state: str) -> str:
    p = sps.states.index(state)
    return sps.lattice.elements[sps.lattice.meet_idx(bits(sps.xi[p]))]


def _ssr_idx(sps: StatePropertySystem, a: int, b: int) -> bool:
    j = sps.lattice.join_table[a][b]
    return all(not (m >> j & 1) or m >> a & 1 or m >> b & 1 for m in sps.xi)


def _ssr_cartan_idx(sps: StatePropertySystem, a: int, b: int) -> bool:
    k = sps.kappa
    return k[sps.lattice.join_table[a][b]] == k[a] | k[b]


def ssr(sps: StatePropertySystem, a: str, b: str) -> bool:
    """Superselection: every state making ``a v b`` actual makes ``a`` or ``b`` actual."""
    return _ssr_idx(sps, sps.lattice.idx(a), sps.lattice.idx(b))


def ssr_cartan(sps: StatePropertySystem, a: str, b: str) -> bool:
    """The same relation, decided as ``kappa(a v b) == kappa(a) | kappa(b)``."""
    return _ssr_cartan_idx(sps, sps.lattice.idx(a), sps.lattice.idx(b))


def ssr_table(sps: StatePropertySystem) -> list[list[bool]]:
    n = len(sps.lattice)
    return [[_ssr_idx(sps, a, b) for b in range(n)] for a in range(n)]


def is_classical_sps(sps: StatePropertySystem) -> bool:
    n = len(sps.lattice)
    return all(_ssr_idx(sps, a, b) for a in range(n) for b in range(a + 1, n))


def _complement_idx(sps: StatePropertySystem, a: int) -> int | None:
    lat = sps.lattice
    for c in range(len(lat)):
        if lat.join_table[a][c] == lat.top and lat.meet_table[a][c] == lat.bottom and _ssr_idx(sps, a, c):
            return c
    return None


def is_classical_property(sps: StatePropertySystem, a: str) -> str | None:
    """First (in element order) complement of ``a`` separated from it by a superselection rule."""
    c = _complement_idx(sps, sps.lattice.idx(a))
    return None if c is None else sps.lattice.elements[c]


def classical_properties(sps: StatePropertySystem) -> tuple[str, ...]:
    lat = sps.lattice
    return tuple(lat.elements[a] for a in range(len(lat)) if _complement_idx(sps, a) is not None)


def is_pure_nonclassical(sps: StatePropertySystem) -> bool:
    lat = sps.lattice
    return set(classical_properties(sps)) == {lat.top_name, lat.bottom_name}


@dataclass(frozen=True)
class SpsMorphism:
    """``(m, n): source -> target`` with ``m`` on states forward and ``n`` on properties backward."""

    source: StatePropertySystem
    target: StatePropertySystem
    m: Mapping[str, str]
    n: Mapping[str, str]


def validate_morphism(
    m: Mapping[str, str],
    n: Mapping[str, str],
    source: StatePropertySystem,
    target: StatePropertySystem,
) -> ValidationReport:
    missing_m = [p for p in source.states if p not in m]
    if missing_m:
        return ValidationReport((Violation("total", f"state map undefined on {missing_m}", missing_m),))
    missing_n = [a for a in target.lattice.elements if a not in n]
    if missing_n:
        return ValidationReport((Violation("total", f"property map undefined on {missing_n}", missing_n),))
    stray = sorted({m[p] for p in source.states} - set(target.states.labels))
    stray += sorted({n[a] for a in target.lattice.elements} - set(source.lattice.elements))
    if stray:
        return ValidationReport((Violation("codomain", f"maps hit unknown names {stray}", stray),))
    for a in target.lattice.elements:
        for p in source.states:
            lhs = target.is_actual(a, m[p])
            rhs = source.is_actual(n[a], p)
            if lhs != rhs:
                return ValidationReport(
                    (
                        Violation(
                            "morphism",
                            f"{a} actual in m({p})={m[p]} is {lhs} but n({a})={n[a]} actual in {p} is {rhs}",
                            (a, p),
                        ),
                    )
                )
    return ValidationReport(value=SpsMorphism(source, target, dict(m), dict(n)))


def identity_morphism(sps: StatePropertySystem) -> SpsMorphism:
    return SpsMorphism(sps, sps, {s: s for s in sps.states}, {a: a for a in sps.lattice.elements})


def compose(g: SpsMorphism, f: SpsMorphism) -> SpsMorphism:
    """``g . f``; states compose forward, properties backward."""
    if f.target != g.source:
        raise InputError("morphisms are not composable")
    return SpsMorphism(
        f.source,
        g.target,
        {p: g.m[f.m[p]] for p in f.source.states},
        {a: f.n[g.n[a]] for a in g.target.lattice.elements},
    )
