"""The functors between state property systems and closure spaces.

``functor_F`` sends a system to its states with the Cartan image as closed
family; ``functor_G`` sends a closure space to the system whose properties
are its closed sets. On finite instances the equivalence is exhibited by
explicit isomorphism witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass

from .closure import ContinuousMap, FiniteClosureSpace, clopen_sets, validate_closure_space
from .order import FiniteLattice, PointUniverse, bits
from .report import InvalidInstance, ValidationReport, Violation
from .sps import (
    SpsMorphism,
    StatePropertySystem,
    _ssr_idx,
    cartan_image,
    compose,
    identity_morphism,
    validate_morphism,
    validate_sps,
)


def property_name(universe: PointUniverse, mask: int) -> str:
    """Name of the property that a closed set becomes under ``functor_G``."""
    return universe.format(mask)


@dataclass(frozen=True)
class IsoWitness:
    forward: SpsMorphism
    backward: SpsMorphism

    def composites_are_identities(self) -> bool:
        there_and_back = compose(self.backward, self.forward)
        back_and_there = compose(self.forward, self.backward)
        return _same_maps(there_and_back, identity_morphism(self.forward.source)) and _same_maps(
            back_and_there, identity_morphism(self.forward.target)
        )


def _same_maps(f: SpsMorphism, g: SpsMorphism) -> bool:
    return dict(f.m) == dict(g.m) and dict(f.n) == dict(g.n)


def functor_F(sps: StatePropertySystem) -> FiniteClosureSpace:
    return validate_closure_space(sps.states, cartan_image(sps)).unwrap()


def functor_F_mor(morphism: SpsMorphism) -> ContinuousMap:
    return ContinuousMap(functor_F(morphism.source), functor_F(morphism.target), dict(morphism.m))


def functor_G(space: FiniteClosureSpace) -> StatePropertySystem:
    closed = space.closed.members
    names = [property_name(space.universe, f) for f in closed]
    down = [sum(1 << i for i, g in enumerate(closed) if g & f == g) for f in closed]
    lattice = FiniteLattice.from_down_sets(names, down)
    xi = [sum(1 << i for i, f in enumerate(closed) if f >> p & 1) for p in range(space.universe.size)]
    return validate_sps(space.universe, lattice, xi).unwrap()


def functor_G_mor(f: ContinuousMap) -> SpsMorphism:
    source, target = functor_G(f.domain), functor_G(f.codomain)
    n = {
        property_name(f.codomain.universe, b): property_name(f.domain.universe, f.preimage(b))
        for b in f.codomain.closed
    }
    return validate_morphism(dict(f.mapping), n, source, target).unwrap()


def _witness(forward: ValidationReport, backward: ValidationReport) -> IsoWitness:
    witness = IsoWitness(forward.unwrap(), backward.unwrap())
    if not witness.composites_are_identities():
        raise InvalidInstance(ValidationReport((Violation("iso", "composites are not identities"),)))
    return witness


def unit_iso(sps: StatePropertySystem) -> IsoWitness:
    """Witness that ``sps`` is isomorphic to ``G(F(sps))``, with the Cartan map as property map."""
    image = functor_G(functor_F(sps))
    ident = {s: s for s in sps.states}
    kappa_names = {a: property_name(sps.states, sps.kappa[i]) for i, a in enumerate(sps.lattice.elements)}
    kappa_inv = {v: k for k, v in kappa_names.items()}
    return _witness(
        validate_morphism(ident, kappa_inv, sps, image),
        validate_morphism(ident, kappa_names, image, sps),
    )


def counit_check(space: FiniteClosureSpace) -> bool:
    return functor_F(functor_G(space)) == space


def _invariants(sps: StatePropertySystem) -> tuple:
    n = len(sps.lattice)
    ssr_counts = sorted(sum(_ssr_idx(sps, a, b) for b in range(n)) for a in range(n))
    return (
        sps.states.size,
        n,
        sorted(m.bit_count() for m in sps.xi),
        ssr_counts,
        len(clopen_sets(functor_F(sps))),
    )


def _state_signatures(sps: StatePropertySystem) -> list[tuple[int, ...]]:
    return [tuple(sorted(sps.kappa[a].bit_count() for a in bits(m))) for m in sps.xi]


def sps_isomorphic(s1: StatePropertySystem, s2: StatePropertySystem) -> IsoWitness | None:
    """Search for an isomorphism ``s1 -> s2``; the lexicographically first state bijection wins.

    With injective Cartan maps the property map is forced by the state map,
    so only state bijections are searched. A partial assignment survives
    while the Cartan families of both sides agree when traced on the
    states assigned so far.
    """
    if _invariants(s1) != _invariants(s2):
        return None
    sig1, sig2 = _state_signatures(s1), _state_signatures(s2)
    n = s1.states.size
    image = [0] * n
    k1, k2 = s1.kappa, s2.kappa

    def consistent(depth: int) -> bool:
        dom = (1 << depth) - 1
        t1 = {k & dom for k in k1}
        t2 = set()
        for k in k2:
            pulled = 0
            for p in range(depth):
                if k >> image[p] & 1:
                    pulled |= 1 << p
            t2.add(pulled)
        return t1 == t2

    def search(depth: int, used: int) -> bool:
        if depth == n:
            return True
        for q in range(n):
            if used >> q & 1 or sig1[depth] != sig2[q]:
                continue
            image[depth] = q
            if consistent(depth + 1) and search(depth + 1, used | 1 << q):
                return True
        return False

    if not search(0, 0):
        return None

    def pull(k: int) -> int:
        return sum(1 << p for p in range(n) if k >> image[p] & 1)

    names1, names2 = s1.lattice.elements, s2.lattice.elements
    st1, st2 = s1.states.labels, s2.states.labels
    m = {st1[p]: st2[image[p]] for p in range(n)}
    m_inv = {v: k for k, v in m.items()}
    n_map = {names2[a]: names1[s1.kappa_inverse[pull(k2[a])]] for a in range(len(names2))}
    n_inv = {v: k for k, v in n_map.items()}
    return _witness(validate_morphism(m, n_map, s1, s2), validate_morphism(m_inv, n_inv, s2, s1))
