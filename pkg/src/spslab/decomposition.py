"""Splitting a state property system along the components of its closure space.

A system decomposes into one pure nonclassical system per connection
component, a totally classical system living on the set of components, and
a classical part built from meets of classical properties.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .closure import (
    FiniteClosureSpace,
    Partition,
    block_labels,
    clopen_sets,
    components,
    induced_subspace,
    is_totally_disconnected,
    is_zero_dimensional,
    quotient_space,
    zero_dimensional_core,
)
from .functors import functor_F, functor_G, sps_isomorphic
from .order import PointUniverse, bits, sublattice
from .report import Counterexample, InputError, ValidationReport, Violation
from .sps import StatePropertySystem, cartan_image, classical_properties, is_classical_sps, is_pure_nonclassical, validate_sps

MAX_COMPONENTS = 16


@dataclass(frozen=True)
class ComponentSystem:
    omega: int
    s_omega: str
    sps: StatePropertySystem


@dataclass(frozen=True)
class Decomposition:
    source: StatePropertySystem
    omegas: Partition
    components: tuple[ComponentSystem, ...]
    totally_classical: StatePropertySystem | None
    counterexample: Counterexample | None
    via_quotient: StatePropertySystem
    classical_part: StatePropertySystem
    evidence: dict[str, ValidationReport] = field(default_factory=dict)
    probes: dict[str, ValidationReport] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.evidence.values())


def _subsystem(
    sps: StatePropertySystem,
    state_mask: int,
    keep: Iterable[int],
    kind: str,
) -> StatePropertySystem:
    report = sublattice(sps.lattice, keep)
    if not report.ok:
        raise Counterexample(f"{kind}-lattice", str(report), report.violations)
    lattice = report.value
    pos = {sps.lattice.index[name]: i for i, name in enumerate(lattice.elements)}
    positions = list(bits(state_mask))
    universe = PointUniverse(tuple(sps.states.labels[p] for p in positions))
    xi = [sum(1 << pos[a] for a in bits(sps.xi[p]) if a in pos) for p in positions]
    report = validate_sps(universe, lattice, xi)
    if not report.ok:
        raise Counterexample(f"{kind}-axioms", str(report), report.violations)
    return report.value


def component_property(sps: StatePropertySystem, omega: int) -> str:
    """The property whose Cartan image is the component ``omega``."""
    a = sps.kappa_inverse.get(omega)
    if a is None:
        raise Counterexample(
            "component-property",
            f"component {sps.states.format(omega)} is not the Cartan image of any property",
            sps.states.members(omega),
        )
    return sps.lattice.elements[a]


def segment_system(sps: StatePropertySystem, c: str) -> StatePropertySystem:
    """Sub-system on the states where ``c`` is actual, with properties ``[0, c]``."""
    i = sps.lattice.idx(c)
    if i == sps.lattice.bottom:
        raise InputError("the segment below the bottom element has no states")
    states = sps.kappa[i]
    if not states:
        raise Counterexample("segment", f"{c} is never actual but is not the bottom element", c)
    return _subsystem(sps, states, bits(sps.lattice.down[i]), "segment")


def component_systems(sps: StatePropertySystem) -> list[ComponentSystem]:
    space = functor_F(sps)
    out = []
    for omega in components(space).blocks:
        s = component_property(sps, omega)
        system = segment_system(sps, s)
        if not is_pure_nonclassical(system):
            raise Counterexample("component-purity", f"component system over {sps.states.format(omega)} is not pure", s)
        if sps_isomorphic(system, functor_G(induced_subspace(space, omega))) is None:
            raise Counterexample(
                "component-trace",
                f"component system over {sps.states.format(omega)} differs from its trace subspace",
                s,
            )
        out.append(ComponentSystem(omega, s, system))
    return out


def _join_closure(sps: StatePropertySystem, generators: list[int]) -> set[int]:
    lat = sps.lattice
    out = {lat.bottom}
    for g in generators:
        out |= {lat.join_table[c][g] for c in out}
    return out


def _meet_closure(sps: StatePropertySystem, generators: Iterable[int]) -> set[int]:
    lat = sps.lattice
    out = {lat.top}
    for g in generators:
        out |= {lat.meet_table[c][g] for c in out}
    return out


def totally_classical_system(sps: StatePropertySystem) -> StatePropertySystem:
    """The system on the components, with properties the joins of component properties.

    Raises :class:`Counterexample` when the actual-property map is not
    constant on a component, or the result fails the axioms.
    """
    blocks = components(functor_F(sps)).blocks.members
    if len(blocks) > MAX_COMPONENTS:
        raise InputError(f"{len(blocks)} components exceed the cap of {MAX_COMPONENTS}")
    gens = [sps.lattice.idx(component_property(sps, omega)) for omega in blocks]
    keep = _join_closure(sps, gens)
    keep_mask = sum(1 << a for a in keep)
    names = sps.lattice.elements
    for omega in blocks:
        reps = list(bits(omega))
        first = sps.xi[reps[0]] & keep_mask
        for q in reps[1:]:
            diff = first ^ (sps.xi[q] & keep_mask)
            if diff:
                a = next(bits(diff))
                p_name, q_name = sps.states.labels[reps[0]], sps.states.labels[q]
                raise Counterexample(
                    "eta-well-defined",
                    f"{p_name} and {q_name} share a component but disagree on {names[a]}",
                    {"states": [p_name, q_name], "property": names[a]},
                )
    report = sublattice(sps.lattice, keep)
    if not report.ok:
        raise Counterexample("classical-lattice", str(report), report.violations)
    lattice = report.value
    pos = {sps.lattice.index[name]: i for i, name in enumerate(lattice.elements)}
    eta = [sum(1 << pos[a] for a in bits(sps.xi[next(bits(omega))] & keep_mask)) for omega in blocks]
    report = validate_sps(PointUniverse(block_labels(len(blocks))), lattice, eta)
    if not report.ok:
        raise Counterexample("eta-axioms", str(report), report.violations)
    return report.value


def totally_classical_via_quotient(sps: StatePropertySystem) -> StatePropertySystem:
    space = functor_F(sps)
    return functor_G(quotient_space(space, components(space)))


def classical_part(sps: StatePropertySystem) -> StatePropertySystem:
    """Same states; properties are all meets of classical properties."""
    gens = [sps.lattice.index[a] for a in classical_properties(sps)]
    return _subsystem(sps, sps.states.full, _meet_closure(sps, gens), "classical-part")


def _report(violations: list[Violation]) -> ValidationReport:
    return ValidationReport(tuple(violations))


def _check_traces(sps: StatePropertySystem, comps: list[ComponentSystem]) -> tuple[ValidationReport, ValidationReport]:
    lat = sps.lattice
    trace, rebuild = [], []
    for a, name in enumerate(lat.elements):
        parts = []
        for comp in comps:
            s = lat.index[comp.s_omega]
            cut = lat.meet_table[a][s]
            parts.append(cut)
            if sps.kappa[a] & comp.omega != sps.kappa[cut]:
                trace.append(Violation("trace", f"kappa({name}) restricted to {comp.s_omega} != kappa({name} ^ {comp.s_omega})", (name, comp.s_omega)))
        if lat.join_idx(parts) != a:
            rebuild.append(Violation("reconstruction", f"{name} is not the join of its component parts", name))
    return _report(trace[:1]), _report(rebuild[:1])


def _check_classical_part(sps: StatePropertySystem, space: FiniteClosureSpace, part: StatePropertySystem) -> ValidationReport:
    out = []
    core = zero_dimensional_core(space)
    if cartan_image(part) != core.closed:
        out.append(Violation("core", "Cartan image of the classical part differs from the zero-dimensional core"))
    part_space = functor_F(part)
    if not is_zero_dimensional(part_space):
        out.append(Violation("zero-dimensional", "classical part is not zero-dimensional"))
    kept = clopen_sets(part_space)
    lost = [c for c in clopen_sets(space) if c not in kept]
    if lost:
        out.append(Violation("clopens-kept", f"{sps.states.format(lost[0])} is no longer clopen", sps.states.members(lost[0])))
    if sps_isomorphic(classical_part(part), part) is None:
        out.append(Violation("idempotent", "classical part of the classical part is not isomorphic to it"))
    return _report(out)


def decompose(sps: StatePropertySystem) -> Decomposition:
    """Build every part of the decomposition and record evidence for each invariant."""
    space = functor_F(sps)
    omegas = components(space)
    evidence: dict[str, ValidationReport] = {}
    probes: dict[str, ValidationReport] = {}

    unclosed = [b for b in omegas.blocks if b not in space.closed]
    evidence["partition"] = _report(
        [Violation("closed-blocks", f"component {sps.states.format(unclosed[0])} is not closed")] if unclosed else []
    )

    comps: list[ComponentSystem] = []
    try:
        comps = component_systems(sps)
        evidence["component-systems"] = _report([])
    except Counterexample as exc:
        evidence["component-systems"] = _report([Violation(exc.kind, exc.message, exc.witness)])
    if comps:
        evidence["trace-identity"], evidence["reconstruction"] = _check_traces(sps, comps)

    tc, counterexample = None, None
    try:
        tc = totally_classical_system(sps)
    except Counterexample as exc:
        counterexample = exc
        evidence["totally-classical"] = _report([Violation(exc.kind, exc.message, exc.witness)])
    if tc is not None:
        wide = []
        for omega_state, a in zip(tc.states, _component_props(tc)):
            seg = segment_system(tc, a)
            if len(seg.lattice) != 2:
                wide.append(Violation("segment", f"segment over {a} at {omega_state} has {len(seg.lattice)} properties", a))
        evidence["totally-classical"] = _report(wide[:1])

    via_quotient = totally_classical_via_quotient(sps)
    evidence["quotient-totally-disconnected"] = _report(
        [] if is_totally_disconnected(functor_F(via_quotient)) else [Violation("quotient", "quotient is not totally disconnected")]
    )

    part = classical_part(sps)
    evidence["classical-part"] = _check_classical_part(sps, space, part)

    if tc is not None:
        if is_classical_sps(sps) and is_totally_disconnected(space):
            evidence["discrete-classical"] = _report(
                [] if sps_isomorphic(tc, sps) else [Violation("discrete-classical", "classical discrete system differs from its quotient system")]
            )
        probes["quotient-agreement"] = _report(
            [] if sps_isomorphic(tc, via_quotient) else [Violation("quotient-agreement", "explicit and quotient constructions differ")]
        )
        probes["meets-inherited"] = _meets_inherited(sps, tc)

    return Decomposition(sps, omegas, tuple(comps), tc, counterexample, via_quotient, part, evidence, probes)


def _component_props(tc: StatePropertySystem) -> list[str]:
    # each state of the quotient system is a component; its strongest property is s(omega)
    lat = tc.lattice
    return [lat.elements[lat.meet_idx(bits(m))] for m in tc.xi]


def _meets_inherited(sps: StatePropertySystem, tc: StatePropertySystem) -> ValidationReport:
    """Whether meets in the quotient's property lattice coincide with meets in the source lattice."""
    big, small = sps.lattice, tc.lattice
    for i, a in enumerate(small.elements):
        for j, b in enumerate(small.elements):
            here = small.elements[small.meet_table[i][j]]
            there = big.elements[big.meet_table[big.index[a]][big.index[b]]]
            if here != there:
                return _report([Violation("meets-inherited", f"meet of {a},{b} is {here} in C but {there} in L", (a, b))])
    return _report([])
