from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spslab.closure import FiniteClosureSpace, components, is_totally_disconnected, is_zero_dimensional, zero_dimensional_core
from spslab.decomposition import (
    classical_part,
    component_property,
    component_systems,
    decompose,
    segment_system,
    totally_classical_system,
    totally_classical_via_quotient,
)
from spslab.functors import functor_F, functor_G, sps_isomorphic
from spslab.generators import random_closure_space
from spslab.report import Counterexample, InputError
from spslab.sps import cartan_image, is_pure_nonclassical

from conftest import sps

# smallest kind of failure of the explicit quotient system: components
# {x2}, {x4}, {x1,x3}; the join of the {x2}- and {x4}-properties is
# {x1,x2,x4}, which splits the component {x1,x3}
SPLITTING = FiniteClosureSpace.build(
    ["x1", "x2", "x3", "x4"],
    [[], ["x1"], ["x2"], ["x4"], ["x1", "x2"], ["x1", "x3"], ["x1", "x2", "x3"], ["x1", "x2", "x4"], ["x1", "x2", "x3", "x4"]],
)


def test_component_property():
    s = sps("e2")
    assert component_property(s, s.states.mask(["x1"])) == "{x1}"
    assert component_property(sps("e3"), sps("e3").states.full) == "{x1,x2,x3}"
    assert component_property(sps("e4"), sps("e4").states.mask(["x2"])) == "{x2}"
    with pytest.raises(Counterexample):
        component_property(s, s.states.mask(["x2"]))


def test_component_systems_e2():
    comps = component_systems(sps("e2"))
    assert [c.sps.states.labels for c in comps] == [("x1",), ("x2", "x3")]
    assert [c.sps.lattice.elements for c in comps] == [("{}", "{x1}"), ("{}", "{x2,x3}")]
    assert all(is_pure_nonclassical(c.sps) for c in comps)


def test_component_systems_connected_input():
    (only,) = component_systems(sps("e3"))
    assert only.sps == sps("e3")


def test_component_systems_discrete():
    comps = component_systems(sps("e4"))
    assert [len(c.sps.lattice) for c in comps] == [2, 2]
    assert [c.sps.states.labels for c in comps] == [("x1",), ("x2",)]


def test_totally_classical_e2():
    tc = totally_classical_system(sps("e2"))
    assert tc.states.labels == ("b1", "b2")
    assert tc.lattice.elements == ("{}", "{x1}", "{x2,x3}", "{x1,x2,x3}")
    assert tc.actual("b1") == ["{x1}", "{x1,x2,x3}"]


def test_totally_classical_connected():
    tc = totally_classical_system(sps("e3"))
    assert tc.states.size == 1 and len(tc.lattice) == 2


def test_totally_classical_discrete():
    assert sps_isomorphic(totally_classical_system(sps("e4")), sps("e4")) is not None


def test_totally_classical_counterexample():
    with pytest.raises(Counterexample) as info:
        totally_classical_system(functor_G(SPLITTING))
    exc = info.value
    assert exc.kind == "eta-well-defined"
    assert exc.witness == {"states": ["x1", "x3"], "property": "{x1,x2,x4}"}
    s = functor_G(SPLITTING)
    assert s.is_actual("{x1,x2,x4}", "x1") and not s.is_actual("{x1,x2,x4}", "x3")
    comps = components(SPLITTING).as_labels()
    assert ["x1", "x3"] in comps


def test_quotient_route_survives_counterexample():
    q = totally_classical_via_quotient(functor_G(SPLITTING))
    assert is_totally_disconnected(functor_F(q))
    d = decompose(functor_G(SPLITTING))
    assert d.totally_classical is None
    assert d.counterexample.kind == "eta-well-defined"
    assert not d.ok
    assert not d.evidence["totally-classical"].ok
    assert all(r.ok for k, r in d.evidence.items() if k != "totally-classical")


def test_via_quotient():
    q = totally_classical_via_quotient(sps("e2"))
    assert functor_F(q).closed.as_labels() == [[], ["b1"], ["b2"], ["b1", "b2"]]
    assert totally_classical_via_quotient(sps("e3")).states.size == 1
    assert totally_classical_via_quotient(sps("e1")).states.size == 1


def test_segments():
    seg = segment_system(sps("e2"), "{x1}")
    assert seg.states.labels == ("x1",) and seg.lattice.elements == ("{}", "{x1}")
    assert segment_system(sps("e3"), "{x1,x2,x3}") == sps("e3")
    tc = totally_classical_system(sps("e4"))
    seg = segment_system(tc, "{x1}")
    assert seg.lattice.elements == ("{}", "{x1}")
    with pytest.raises(InputError):
        segment_system(sps("e2"), "{}")


def test_classical_part():
    cp = classical_part(sps("e5"))
    assert cp.lattice.elements == ("{}", "{x1,x2,x3}")
    assert classical_part(sps("e2")) == sps("e2")
    assert classical_part(sps("e4")) == sps("e4")


@pytest.mark.parametrize("name", ["e1", "e2", "e3", "e4", "e5", "one"])
def test_decompose_fixtures(name):
    d = decompose(sps(name))
    assert d.ok, {k: str(r) for k, r in d.evidence.items()}
    assert d.totally_classical is not None
    assert all(r.ok for r in d.probes.values())


def test_decompose_summaries():
    d = decompose(sps("e2"))
    assert len(d.components) == 2 and d.totally_classical.states.size == 2
    assert d.classical_part == sps("e2")
    d = decompose(sps("e3"))
    assert len(d.components) == 1 and d.components[0].sps == sps("e3")
    assert d.classical_part.lattice.elements == ("{}", "{x1,x2,x3}")
    d = decompose(sps("e4"))
    assert len(d.components) == 2
    assert sps_isomorphic(d.totally_classical, sps("e4")) is not None


random_spaces = st.builds(
    random_closure_space,
    n=st.integers(1, 6),
    density=st.sampled_from([0.1, 0.2, 0.35, 0.5]),
    seed=st.integers(0, 2**64 - 1),
)


@settings(max_examples=40, deadline=None)
@given(random_spaces)
def test_decomposition_invariants(s):
    g = functor_G(s)
    d = decompose(g)
    lat = g.lattice
    for key, rep in d.evidence.items():
        if key == "totally-classical" and d.counterexample is not None:
            continue
        assert rep.ok, (key, str(rep))
    for comp in d.components:
        assert is_pure_nonclassical(comp.sps)
        for a in range(len(lat)):
            s_idx = lat.index[comp.s_omega]
            assert g.kappa[a] & comp.omega == g.kappa[lat.meet_table[a][s_idx]]
    cp = d.classical_part
    assert cartan_image(cp) == zero_dimensional_core(s).closed
    assert is_zero_dimensional(functor_F(cp))
    if d.counterexample is not None:
        w = d.counterexample.witness
        p, q = w["states"]
        assert g.is_actual(w["property"], p) != g.is_actual(w["property"], q)
