"""Run every cross-check on one instance and collect the verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .closure import (
    FiniteClosureSpace,
    clopen_sets,
    closure_of,
    components,
    induced_subspace,
    is_connected,
    is_connected_subset,
    is_topological,
)
from .decomposition import decompose
from .functors import counit_check, functor_F, functor_G, unit_iso
from .oracle import BRUTE_CAP, brute_classical, brute_components, quasi_components
from .report import InvalidInstance
from .sps import (
    StatePropertySystem,
    _ssr_cartan_idx,
    _ssr_idx,
    is_classical_property,
    is_classical_sps,
    is_pure_nonclassical,
)

PASS, FAIL, NA, COUNTEREXAMPLE = "pass", "fail", "n/a", "counterexample"


@dataclass(frozen=True)
class Verdict:
    status: str
    detail: str = ""
    witness: Any = None


@dataclass
class TheoremReport:
    """Verdicts keyed by check name; names starting with ``probe:`` record open findings.

    A ``counterexample`` verdict is a construction that is not well defined on
    this instance, with a witness that was re-checked independently. It does
    not count as a failure of the implementation.
    """

    instance_id: str
    verdicts: dict[str, Verdict] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v.status != FAIL for k, v in self.verdicts.items() if not k.startswith("probe:"))

    def failures(self) -> dict[str, Verdict]:
        return {k: v for k, v in self.verdicts.items() if v.status == FAIL and not k.startswith("probe:")}


def _confirm_join_witness(space: FiniteClosureSpace, part, sps: StatePropertySystem, witness: Any) -> bool:
    """The witness property is a join of component properties and splits a component."""
    try:
        p, q = witness["states"]
        kappa = sps.kappa[sps.lattice.idx(witness["property"])]
        u = space.universe
        ip, iq = u.index(p), u.index(q)
    except (KeyError, TypeError, ValueError):
        return False
    same_block = any(b >> ip & 1 and b >> iq & 1 for b in part.blocks)
    splits = bool(kappa >> ip & 1) != bool(kappa >> iq & 1)
    inside = 0
    for b in part.blocks:
        if b & kappa == b:
            inside |= b
    return same_block and splits and closure_of(space, inside) == kappa


def theorem_suite(instance: StatePropertySystem | FiniteClosureSpace, instance_id: str = "") -> TheoremReport:
    if isinstance(instance, FiniteClosureSpace):
        space, sps = instance, functor_G(instance)
    else:
        sps, space = instance, functor_F(instance)
    report = TheoremReport(instance_id or str(space))
    v = report.verdicts

    def record(name: str, witness: Any, detail: str = "") -> None:
        v[name] = Verdict(PASS, detail) if witness is None else Verdict(FAIL, detail, witness)

    record("counit", None if counit_check(space) else str(space), "F(G(X)) == X")
    try:
        witness = unit_iso(sps)
        record("unit", None if witness.composites_are_identities() else "composites", "S ~ G(F(S))")
    except InvalidInstance as exc:
        record("unit", str(exc))

    lat = sps.lattice
    n = len(lat)
    names = lat.elements
    ssr = [[_ssr_idx(sps, a, b) for b in range(n)] for a in range(n)]
    record(
        "ssr-criterion",
        next(((names[a], names[b]) for a in range(n) for b in range(n) if ssr[a][b] != _ssr_cartan_idx(sps, a, b)), None),
    )
    classical, topological = is_classical_sps(sps), is_topological(space)
    record(
        "classical-iff-topological",
        None if classical == topological else {"classical": classical, "topological": topological},
        "topological" if topological else "not topological",
    )

    clopens = clopen_sets(space)
    mismatch = None
    for a, name in enumerate(names):
        is_clopen = sps.kappa[a] in clopens
        fast = is_classical_property(sps, name) is not None
        slow = brute_classical(sps, name) is not None
        if not fast == slow == is_clopen:
            mismatch = {"property": name, "complement-search": fast, "brute": slow, "clopen": is_clopen}
            break
    record("classical-property-iff-clopen", mismatch)

    pure, connected = is_pure_nonclassical(sps), is_connected(space)
    record(
        "pure-iff-connected",
        None if pure == connected else {"pure": pure, "connected": connected},
        "connected" if connected else "disconnected",
    )

    part = components(space)
    problems = []
    if space.universe.size <= BRUTE_CAP:
        brute = brute_components(space)
        if brute != part:
            problems.append({"components": part.as_labels(), "brute": brute.as_labels()})
    for b in part.blocks:
        if b not in space.closed:
            problems.append({"unclosed": space.universe.members(b)})
        if not is_connected(induced_subspace(space, b)):
            problems.append({"disconnected": space.universe.members(b)})
        for y in range(space.universe.size):
            if not b >> y & 1 and is_connected_subset(space, b | 1 << y):
                problems.append({"not-maximal": space.universe.members(b), "extra": space.universe.labels[y]})
    record("components", problems[0] if problems else None)

    quasi = quasi_components(space)
    refines = all(any(b & q == b for q in quasi.blocks) for b in part.blocks)
    coincide = quasi == part
    if not refines or (topological and not coincide):
        record("quasi-components", {"components": part.as_labels(), "quasi": quasi.as_labels()})
    else:
        record("quasi-components", None, "coincide" if coincide else "components strictly finer")

    d = decompose(sps)
    for key, rep in d.evidence.items():
        record(key, None if rep.ok else [(x.axiom, x.message, x.witness) for x in rep.violations])
    if d.counterexample is not None:
        exc = d.counterexample
        if _confirm_join_witness(space, part, sps, exc.witness):
            v["totally-classical"] = Verdict(COUNTEREXAMPLE, f"{exc.kind}: {exc.message}", exc.witness)
    for key in ("trace-identity", "reconstruction", "discrete-classical"):
        v.setdefault(key, Verdict(NA))
    for key, rep in d.probes.items():
        record(f"probe:{key}", None if rep.ok else [(x.axiom, x.message) for x in rep.violations])
    v.setdefault("probe:quotient-agreement", Verdict(NA, "no explicit quotient system"))
    return report
