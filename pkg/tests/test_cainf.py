"""Curved category tables: relations, graded, functors, modules."""

from fractions import Fraction as F

import pytest

from pogcat import (
    CAinf,
    CAinfError,
    CAinfFunctor,
    cch_instance,
    check_cainf,
    check_functor,
    check_module,
    flat,
    functor_curvature,
    gr,
    hom_stratum_complex,
    identity_functor,
    module_curvature,
    module_value_complex,
    reduce_mod2,
    relation_residual,
    restrict_objects,
    unit_category,
    yoneda,
)
from pogcat.cainf import F0

V = ("V", "V")


def key(name, pair=V):
    return (pair[0], pair[1], name)


def two_term(coeff="z"):
    """Two objects, one arrow with a primitive: mu1(a) = da."""
    gens = {
        ("V", "V"): {"e": (0, F(0))},
        ("W", "W"): {"e": (0, F(0))},
        ("V", "W"): {"a": (0, F(0)), "da": (1, F(0))},
    }
    units = {"V": "e", "W": "e"}
    ev, ew = ("V", "V", "e"), ("W", "W", "e")
    a, da = ("V", "W", "a"), ("V", "W", "da")
    mu = {
        1: {(a,): {(da, F0): 1}},
        2: {
            (ev, ev): {(ev, F0): 1},
            (ew, ew): {(ew, F0): 1},
            (ev, a): {(a, F0): 1},
            (a, ew): {(a, F0): 1},
            (ev, da): {(da, F0): 1},
            (da, ew): {(da, F0): 1 if coeff == "f2" else -1},
        },
    }
    return CAinf(["V", "W"], gens, units, {}, mu, cutoff=1, eps=F(1, 2),
                 coeff=coeff, name="two-term")


# -- construction and evaluation --------------------------------------


def test_construction_refuses_malformed_tables():
    gens = {V: {"e": (0, 0)}}
    with pytest.raises(CAinfError, match="no unit"):
        CAinf(["V"], gens, {}, cutoff=1, eps=1)
    with pytest.raises(CAinfError, match="do not compose"):
        CAinf(["V", "W"], {V: {"e": (0, 0)}, ("W", "W"): {"e": (0, 0)}},
              {"V": "e", "W": "e"},
              mu={2: {(key("e"), ("W", "W", "e")): {(key("e"), F0): 1}}},
              cutoff=1, eps=1)
    with pytest.raises(CAinfError, match="above the cutoff"):
        CAinf(["V"], {V: {"e": (0, 0), "x": (1, 3)}}, {"V": "e"},
              cutoff=2, eps=1)
    with pytest.raises(CAinfError, match="degree 0 and weight 0"):
        CAinf(["V"], {V: {"e": (1, 0)}}, {"V": "e"}, cutoff=1, eps=1)
    with pytest.raises(CAinfError, match="nonnegative"):
        CAinf(["V"], {V: {"e": (0, 0)}}, {"V": "e"},
              mu={1: {(key("e"),): {(key("e"), F(-1, 2)): 1}}},
              cutoff=1, eps=1)


def test_evaluation_is_multilinear_over_weight_shifts():
    C = cch_instance()
    d = key("d")
    out = C.eval([{(d, F(1, 2)): 2}, {(d, F0): 3}])
    assert out == {(key("dd"), F(1, 2)): 6}
    # pushing the shift past the cutoff kills the term
    assert C.eval([{(d, F(1, 2)): 2}, {(d, F(1, 2)): 3}]) == {}


def test_terms_at_the_cutoff_are_dropped_at_construction():
    gens = {V: {"e": (0, 0), "x": (1, F(1, 2))}}
    mu = {
        1: {(key("x"),): {(key("x"), F(1, 2)): 1}},
        2: {(key("e"), key("e")): {(key("e"), F0): 1}},
    }
    C = CAinf(["V"], gens, {"V": "e"}, mu=mu, cutoff=1, eps=F(1, 2))
    # weight 1/2 + shift 1/2 reaches the cutoff, so the entry is gone
    assert C.eval([key("x")]) == {}
    assert 1 not in C.mu


# -- the relation checker ---------------------------------------------


def test_unit_category_passes_every_check():
    rep = check_cainf(unit_category(["a", "b"]), d_max=3)
    assert rep.status == "pass"


def test_weighted_map_instance_passes_through_arity_four():
    rep = check_cainf(cch_instance(), d_max=4)
    assert rep.status == "pass"
    assert rep.items[-1].detail == "341 tuples checked"


def test_relation_residual_vanishes_on_good_data():
    C = cch_instance()
    assert relation_residual(C, (key("d"), key("d"))) == {}
    assert relation_residual(C, (key("d"), key("dd"), key("d"))) == {}


def test_doubled_unit_composition_is_reported():
    C = cch_instance()
    mu = {d: dict(t) for d, t in C.mu.items()}
    mu[2] = dict(mu[2])
    mu[2][(key("e"), key("e"))] = {(key("e"), F0): 2}
    bad = CAinf(C.objects, C.gens, C.units, C.mu0, mu,
                cutoff=C.cutoff, eps=C.eps)
    rep = check_cainf(bad, d_max=2)
    assert rep.status == "fail"
    item = rep.first_failure()
    assert item.name == "units are strict"
    assert "mu2(e" in item.detail


def test_unit_inside_a_higher_operation_is_reported():
    gens = {V: {"e": (0, 0), "z": (1, 0)}}
    mu = {
        1: {(key("e"),): {(key("z"), F0): 1}},
        2: {(key("e"), key("e")): {(key("e"), F0): 1},
            (key("e"), key("z")): {(key("z"), F0): 1},
            (key("z"), key("e")): {(key("z"), F0): -1}},
    }
    bad = CAinf(["V"], gens, {"V": "e"}, mu=mu, cutoff=1, eps=F(1, 2))
    rep = check_cainf(bad, d_max=0)
    assert rep.first_failure().name == "units are strict"
    assert "arity 1" in rep.first_failure().detail


def test_degree_and_weight_slips_are_reported():
    gens = {V: {"e": (0, 0), "x": (1, F(1, 2)), "y": (1, 0)}}
    base = {2: {(key("e"), key("e")): {(key("e"), F0): 1}}}
    off_degree = dict(base)
    off_degree[1] = {(key("x"),): {(key("x"), F0): 1}}
    bad = CAinf(["V"], gens, {"V": "e"}, mu=off_degree, cutoff=1, eps=F(1, 2))
    rep = check_cainf(bad, d_max=0)
    assert rep.items[0].ok is False
    assert "wrong degree" in rep.items[0].detail

    gens = {V: {"e": (0, 0), "x": (1, F(1, 2)), "z": (2, 0)}}
    lossy = dict(base)
    lossy[1] = {(key("x"),): {(key("z"), F(1, 4)): 1}}
    bad = CAinf(["V"], gens, {"V": "e"}, mu=lossy, cutoff=1, eps=F(1, 2))
    rep = check_cainf(bad, d_max=0)
    assert rep.items[0].ok is False
    assert "loses weight" in rep.items[0].detail


def test_shallow_curvature_is_reported():
    gens = {V: {"e": (0, 0), "c": (2, F(1, 4))}}
    bad = CAinf(["V"], gens, {"V": "e"}, {"V": {(key("c"), F0): 1}},
                {2: {(key("e"), key("e")): {(key("e"), F0): 1}}},
                cutoff=1, eps=F(1, 2))
    rep = check_cainf(bad, d_max=0)
    assert rep.items[1].ok is False
    assert "below 1/2" in rep.items[1].detail


def test_relation_failure_names_the_tuple_and_residual():
    C = cch_instance()
    mu = {2: {k: v for k, v in C.mu[2].items() if k != (key("d"), key("dd"))}}
    bad = CAinf(C.objects, C.gens, C.units, C.mu0, mu,
                cutoff=C.cutoff, eps=C.eps)
    rep = check_cainf(bad, d_max=2)
    item = rep.first_failure()
    assert item.name == "the curved relation holds through arity 2"
    assert "d=1 at (d:V>V)" in item.detail
    assert "ddd:V>V" in item.detail


def test_exhausted_tuple_budget_is_inconclusive():
    rep = check_cainf(cch_instance(), d_max=4, max_tuples=5)
    assert rep.status == "inconclusive"
    assert "stopped after 5 tuples" in rep.items[-1].detail


def test_two_term_fixture_passes_and_its_stratum_is_acyclic():
    C = two_term()
    assert check_cainf(C, d_max=3).status == "pass"
    cx = hom_stratum_complex(C, "V", "W", F(0))
    assert cx.is_acyclic()


# -- coefficient modes ------------------------------------------------


def test_mod_two_reduction_matches_a_native_rebuild():
    assert reduce_mod2(cch_instance()) == cch_instance(coeff="f2")
    assert reduce_mod2(two_term()) == two_term(coeff="f2")


def test_residuals_reduce_mod_two_on_broken_data_as_well():
    C = cch_instance()
    mu = {2: {k: v for k, v in C.mu[2].items() if k != (key("d"), key("dd"))}}
    bad_z = CAinf(C.objects, C.gens, C.units, C.mu0, mu,
                  cutoff=C.cutoff, eps=C.eps)
    bad_2 = reduce_mod2(bad_z)
    for d in (1, 2, 3):
        for chain in bad_z.chains(d):
            rz = relation_residual(bad_z, chain)
            folded = bad_2.clean({t: c % 2 for t, c in rz.items()})
            assert folded == relation_residual(bad_2, chain)


# -- associated graded and flat part ----------------------------------


def test_graded_forgets_curvature_and_is_idempotent():
    C = cch_instance()
    G = gr(C)
    assert not G.mu0
    assert check_cainf(G, d_max=4).status == "pass"
    assert gr(G) == G


def test_graded_drops_weight_gaining_terms():
    gens = {V: {"e": (0, 0), "x": (0, 0), "y": (1, F(1, 2))}}
    mu = {
        1: {(key("x"),): {(key("y"), F0): 1}},
        2: {(key("e"), key("e")): {(key("e"), F0): 1},
            (key("e"), key("x")): {(key("x"), F0): 1},
            (key("x"), key("e")): {(key("x"), F0): 1},
            (key("e"), key("y")): {(key("y"), F0): 1},
            (key("y"), key("e")): {(key("y"), F0): -1}},
    }
    C = CAinf(["V"], gens, {"V": "e"}, mu=mu, cutoff=1, eps=F(1, 2))
    assert check_cainf(C, d_max=2).status == "pass"
    G = gr(C)
    assert 1 not in G.mu
    assert G.eval([key("x")]) == {}


def test_flat_keeps_exactly_the_curvature_free_objects():
    C = cch_instance()
    assert flat(C).objects == []
    assert flat(gr(C)).objects == ["V"]
    U = unit_category(["a", "b"])
    sub = restrict_objects(U, ["b"])
    assert sub.objects == ["b"]
    assert check_cainf(sub, d_max=2).status == "pass"


# -- functors ----------------------------------------------------------


def test_identity_functor_has_no_curvature():
    for C in (cch_instance(), two_term(), unit_category(["a", "b"])):
        assert functor_curvature(identity_functor(C), d_max=3) == {}


def test_unit_sent_elsewhere_is_reported():
    C = unit_category()
    e = ("*", "*", "e")
    fun = CAinfFunctor(C, C, {"*": "*"}, {1: {(e,): {(e, F0): 2}}})
    rep = check_functor(fun)
    assert rep.first_failure().name == "units map to units strictly"


def test_obstruction_term_reproduces_the_series():
    C = cch_instance()
    idf = identity_functor(C)
    bump = CAinfFunctor(C, C, {"V": "V"}, idf.phi,
                        {"V": {(key("d"), F0): 1}})
    assert check_functor(bump).status == "pass"
    cur = functor_curvature(bump, d_max=1)
    # -(mu1(b) + mu2(b,b) + ...) with b = d: only the square survives
    assert cur[0][("V",)] == {(key("dd"), F0): -1}
    # composing around one letter picks up b on both sides
    assert cur[1][(key("d"),)] == {(key("dd"), F0): -2}


def test_toplevel_obstruction_term_can_be_unobstructed():
    C = cch_instance()
    idf = identity_functor(C)
    quiet = CAinfFunctor(C, C, {"V": "V"}, idf.phi,
                         {"V": {(key("ddd"), F0): 1}})
    # every correction involving b = ddd falls over the cutoff
    assert functor_curvature(quiet, d_max=2) == {}


def test_functor_curvature_agrees_mod_two():
    C = cch_instance()
    idf = identity_functor(C)
    bump = CAinfFunctor(C, C, {"V": "V"}, idf.phi,
                        {"V": {(key("d"), F0): 1}})
    C2 = cch_instance(coeff="f2")
    idf2 = identity_functor(C2)
    bump2 = CAinfFunctor(C2, C2, {"V": "V"}, idf2.phi,
                         {"V": {(key("d"), F0): 1}})
    cur_z = functor_curvature(bump, d_max=2)
    cur_2 = functor_curvature(bump2, d_max=2)
    folded = {}
    for d, table in cur_z.items():
        for chain, elt in table.items():
            elt2 = C2.clean({t: c % 2 for t, c in elt.items()})
            if elt2:
                folded.setdefault(d, {})[chain] = elt2
    assert folded == cur_2


# -- modules -----------------------------------------------------------


def test_yoneda_of_a_curved_object_keeps_right_multiplication():
    C = cch_instance()
    M = yoneda(C, "V")
    res = module_curvature(M, d_max=1)
    assert sorted(res) == [0]
    mu0 = C.curvature("V")
    for name in ("e", "d", "dd", "ddd"):
        got = res[0].get(((), ("V", name)), {})
        sign = 1 if C.degree(key(name)) % 2 == 0 else -1
        want = {((t[0][0], t[0][2]), t[1]): sign * c
                for t, c in C.eval([key(name), mu0]).items()}
        assert got == M.clean(want)
    rep = check_module(M, d_max=1)
    assert rep.items[0].ok is True
    assert rep.items[1].ok is False


def test_yoneda_over_the_graded_category_is_a_strict_module():
    M = yoneda(gr(cch_instance()), "V")
    assert module_curvature(M, d_max=2) == {}
    assert check_module(M, d_max=2).status == "pass"
    N = yoneda(two_term(), "W")
    assert check_module(N, d_max=2).status == "pass"


def test_module_value_stratum_has_the_arrow_homology():
    N = yoneda(two_term(), "W")
    cx = module_value_complex(N, "V", F(0))
    # a -> da is exact; the endomorphisms of W survive untouched
    assert cx.is_acyclic()
    cw = module_value_complex(N, "W", F(0))
    assert cw.homology(0).free_rank == 1
