from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spslab.closure import clopen_sets, closure_of, components, is_connected, is_topological
from spslab.functors import functor_F, functor_G
from spslab.generators import random_closure_space
from spslab.order import PointUniverse, join, meet
from spslab.report import InputError
from spslab.sps import (
    StatePropertySystem,
    cartan,
    cartan_image,
    classical_properties,
    is_classical_property,
    is_classical_sps,
    is_pure_nonclassical,
    ssr,
    ssr_cartan,
    strongest_property,
    validate_morphism,
    validate_sps,
)

from conftest import diamond, space, sps


def test_g_image_validates():
    s = sps("e3")
    assert validate_sps(s.states, s.lattice, s.xi_names()).ok


def test_bottom_actual_fails():
    s = sps("e3")
    xi = s.xi_names()
    xi["x1"] = xi["x1"] + ["{}"]
    report = validate_sps(s.states, s.lattice, xi)
    assert "bottom-never-actual" in {v.axiom for v in report.violations}


def test_diamond_over_one_state_fails_order_axiom():
    report = validate_sps(PointUniverse(("p",)), diamond(), {"p": ["I"]})
    assert [v.axiom for v in report.violations] == ["order-matches-actuality"]


def test_non_filter_is_rejected():
    # a and b actual but their meet 0 is not closed under meets
    report = validate_sps(PointUniverse(("p",)), diamond(), {"p": ["a", "b", "I"]})
    assert "meets-actual" in {v.axiom for v in report.violations}


def test_missing_top_is_rejected():
    report = validate_sps(PointUniverse(("p",)), diamond(), {"p": []})
    assert "meets-actual" in {v.axiom for v in report.violations}


def test_xi_must_be_total():
    assert not validate_sps(PointUniverse(("p", "q")), diamond(), {"p": ["I"]}).ok
    assert not validate_sps(PointUniverse(("p",)), diamond(), {"p": ["zz"]}).ok


def test_cartan():
    s = sps("e3")
    assert cartan(s, "{x1,x2,x3}") == s.states.full
    assert cartan(s, "{}") == 0
    assert cartan(s, "{x1}") == s.states.mask(["x1"])
    with pytest.raises(InputError):
        cartan(s, "nope")


def test_cartan_image():
    for name in ("e2", "e3", "e4"):
        assert cartan_image(sps(name)) == space(name).closed


def test_strongest_property():
    assert strongest_property(sps("e3"), "x3") == "{x1,x2,x3}"
    assert strongest_property(sps("e3"), "x1") == "{x1}"
    assert strongest_property(sps("e4"), "x1") == "{x1}"
    with pytest.raises(InputError):
        strongest_property(sps("e3"), "x9")


def test_ssr_examples():
    assert not ssr(sps("e3"), "{x1}", "{x2}")
    assert ssr(sps("e3"), "{x1}", "{x1}")
    assert ssr(sps("e2"), "{x1}", "{x2,x3}")


def test_classical_system_examples():
    assert is_classical_sps(sps("e1"))
    assert not is_classical_sps(sps("e3"))
    assert is_classical_sps(sps("e4"))


def test_classical_property_examples():
    s = sps("e2")
    assert is_classical_property(s, "{x1,x2,x3}") == "{}"
    assert is_classical_property(s, "{x1}") == "{x2,x3}"
    assert is_classical_property(sps("e3"), "{x1}") is None


def test_classical_properties():
    assert classical_properties(sps("e3")) == ("{}", "{x1,x2,x3}")
    assert classical_properties(sps("e2")) == sps("e2").lattice.elements
    assert classical_properties(sps("e5")) == ("{}", "{x1,x2,x3}")


def test_pure_nonclassical():
    assert is_pure_nonclassical(sps("e3"))
    assert not is_pure_nonclassical(sps("e2"))
    one = sps("one")
    assert len(one.lattice) == 2 and is_pure_nonclassical(one)


def test_identity_morphism_validates():
    s = sps("e2")
    ident = {p: p for p in s.states}
    assert validate_morphism(ident, {a: a for a in s.lattice.elements}, s, s).ok


def test_bad_morphism():
    s = sps("e4")
    report = validate_morphism({"x1": "x1", "x2": "x1"}, {a: "{x1,x2}" for a in s.lattice.elements}, s, s)
    assert not report.ok
    assert report.violations[0].witness == ("{}", "x1")
    # first violating pair in scan order; the {x2}-property at x1 also fails
    assert not s.is_actual("{x2}", "x1") and s.is_actual("{x1,x2}", "x1")


def test_hand_built_system():
    lat = diamond()
    s = StatePropertySystem.build(["p", "q"], lat, {"p": ["a", "I"], "q": ["b", "I"]})
    assert cartan(s, "a") == s.states.mask(["p"])
    assert is_classical_sps(s)
    assert classical_properties(s) == ("0", "a", "b", "I")


random_spaces = st.builds(
    random_closure_space,
    n=st.integers(1, 5),
    density=st.sampled_from([0.1, 0.2, 0.35, 0.5, 0.8]),
    seed=st.integers(0, 2**64 - 1),
)


@settings(max_examples=60, deadline=None)
@given(random_spaces)
def test_cartan_laws(space_):
    s = functor_G(space_)
    lat = s.lattice
    names = lat.elements
    k = s.kappa
    assert len(set(k)) == len(k)  # injective
    for p in s.states:
        actual = set(s.actual(p))
        for a in actual:
            assert all(b in actual for b in names if lat.leq(a, b))  # upward closed
    for a, b in combinations(names, 2):
        ka, kb = cartan(s, a), cartan(s, b)
        assert cartan(s, meet(lat, [a, b])) == ka & kb
        assert cartan(s, join(lat, [a, b])) == closure_of(space_, ka | kb)
        assert lat.leq(a, b) == (ka & kb == ka)
    for a in names:
        for b in names:
            assert ssr(s, a, b) == ssr_cartan(s, a, b)


@settings(max_examples=60, deadline=None)
@given(random_spaces)
def test_classicality_matches_topology(space_):
    s = functor_G(space_)
    f = functor_F(s)
    assert is_classical_sps(s) == is_topological(f)
    assert is_pure_nonclassical(s) == is_connected(f)
    clopens = clopen_sets(f)
    for a in s.lattice.elements:
        witness = is_classical_property(s, a)
        assert (witness is not None) == (cartan(s, a) in clopens)
        if witness is not None:
            lat = s.lattice
            assert join(lat, [a, witness]) == lat.top_name
            assert meet(lat, [a, witness]) == lat.bottom_name
            assert ssr(s, a, witness)
    classical = set(classical_properties(s))
    for block in components(f).blocks:
        members = f.universe.members(block)
        rows = {frozenset(set(s.actual(p)) & classical) for p in members}
        assert len(rows) == 1
