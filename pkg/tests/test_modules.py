import random
from fractions import Fraction as F

import pytest

from pogcat import (
    AbGroup,
    GradedModule,
    InclusionError,
    ModuleError,
    PersistenceModule,
    Presentation,
    Quotient,
    Rationals,
    ZScaled,
    complete_persistence,
    equivariantize,
    extend_persistence,
    free_line,
    hom_rank,
    ideal_quotient_ranks,
    interval_module,
    module_check,
    restrict,
    restrict_persistence,
    ring_completion,
    tensor,
)
from pogcat.homology import identity
from pogcat.pog import ceil_to
from pogcat.scalars import CutoffError, novikov_truncate

Q = Rationals()


# ---------------------------------------------------------------------------
# graded modules and the functor-law checker


def test_free_point_module_passes():
    m = GradedModule(ZScaled(1), {0: 1})
    assert module_check(m, samples=10).status == "pass"


def test_broken_composition_is_caught_with_witness():
    bad = GradedModule(
        ZScaled(1),
        {0: 1, 1: 1, 2: 1},
        {(0, 1): [[1]], (1, 1): [[1]], (0, 2): [[2]]},
    )
    rep = module_check(bad, samples=10)
    assert rep.status == "fail"
    assert "disagree" in rep.first_failure().detail


def test_weighted_line_module():
    m = free_line(2, F(5, 2))
    assert module_check(m, samples=30).status == "pass"
    assert m.support == [F(0), F(1, 2), F(1), F(3, 2), F(2), F(5, 2)]
    # composite shifts resolve through the stored single steps
    assert m.action(F(3, 2), F(1, 2)) == [[1]]
    # shifts landing outside the window are the zero map
    assert m.action(F(1, 2), F(5, 2)) == []


def test_action_of_zero_is_identity():
    m = free_line(1, 2)
    assert m.action(0, 1) == identity(1)


def test_underdetermined_shift_raises():
    m = GradedModule(ZScaled(1), {0: 1, 2: 1})  # no step data at all
    with pytest.raises(ModuleError):
        m.action(2, 0)


def test_relation_preservation_check():
    # Z/2 at both ends; multiplication by 1 respects the relation,
    # but a map hitting an odd multiple of a generator with relation 3 not
    good = GradedModule(
        ZScaled(1),
        {0: Presentation(1, ((2,),)), 1: Presentation(1, ((2,),))},
        {(0, 1): [[3]]},
    )
    assert module_check(good).status == "pass"
    bad = GradedModule(
        ZScaled(1),
        {0: Presentation(1, ((2,),)), 1: Presentation(1, ((3,),))},
        {(0, 1): [[1]]},
    )
    rep = module_check(bad)
    assert rep.status == "fail"
    assert "relation" in rep.first_failure().name


def test_restrict_keeps_the_induced_action():
    m = free_line(2, F(5, 2))
    mq = GradedModule(Q, {g: m.components[g] for g in m.support}, m.steps)
    mz = restrict(mq, ZScaled(1))
    assert mz.support == [F(0), F(1), F(2)]
    # the half steps leave the sublattice but their composites remain
    assert mz.action(1, 0) == [[1]] and mz.action(2, 0) == [[1]]
    same = restrict(m, m.pog)
    assert same.support == m.support and same.steps == m.steps


def test_restrict_rejects_non_inclusions():
    m = free_line(2, 1)
    with pytest.raises(InclusionError):
        restrict(m, ZScaled(3))


def test_equivariantize_full_collapse():
    m = GradedModule(
        ZScaled(1),
        {g: 1 for g in range(-2, 3)},
        {(g, 1): [[1]] for g in range(-2, 2)},
    )
    q = equivariantize(m, ZScaled(1), {F(g): [[1]] for g in range(-2, 3)})
    assert isinstance(q.pog, Quotient)
    assert q.support == [F(0)]
    assert q.component(0).group() == AbGroup(1)
    assert module_check(q, samples=10).status == "pass"


def test_equivariantize_half_lattice():
    m = free_line(2, F(3, 2))
    ids = {g: [[1]] for g in [F(0), F(1, 2)]}
    q = equivariantize(m, ZScaled(1), ids)
    assert q.support == [F(0), F(1, 2)]
    assert all(q.component(g).group() == AbGroup(1) for g in q.support)
    assert module_check(q, samples=20).status == "pass"
    # the action wraps around the circle grading
    assert q.action(2, 0) == [[1]]


def test_equivariantize_needs_identifications():
    m = free_line(2, F(3, 2))
    with pytest.raises(ModuleError):
        equivariantize(m, ZScaled(1), {})


def test_equivariantize_rejects_non_unimodular_identifications():
    m = GradedModule(ZScaled(1), {0: 1, 1: 1}, {(0, 1): [[1]]})
    with pytest.raises(ModuleError):
        equivariantize(m, ZScaled(1), {F(0): [[2]]})


def test_double_equivariantization_matches_one_step():
    m = free_line(2, 1)
    one = equivariantize(m, ZScaled(2), {F(0): [[1]], F(1, 2): [[1]]})
    two = equivariantize(
        equivariantize(m, ZScaled(1), {F(0): [[1]]}),
        ZScaled(2),
        {F(0): [[1]]},
    )
    assert one.support == two.support
    assert one.steps == two.steps
    assert {g: one.component(g).group() for g in one.support} == \
        {g: two.component(g).group() for g in two.support}


def test_tensor_of_shifted_lines():
    # Z[t]/t^2 placed at 1/2: the balanced square lives at grades 1, 2
    a = GradedModule(Q, {F(1, 2): 1, F(3, 2): 1}, {(F(1, 2), 1): [[1]]})
    t = tensor(a, a, [F(1), F(2), F(3)])
    assert t.component(F(1)).group() == AbGroup(1)
    assert t.component(F(2)).group() == AbGroup(1)
    assert t.component(F(3)).group() == AbGroup(0)
    assert module_check(t, samples=20).status == "pass"


def test_restriction_is_monoidal_on_lattice_supports():
    a = GradedModule(Q, {F(0): 1, F(1): 1}, {(F(0), 1): [[1]]})
    b = GradedModule(Q, {F(0): 1}, {})
    window = [F(0), F(1), F(2)]
    sub = ZScaled(1)
    lhs = restrict(tensor(a, b, window), sub)
    rhs = tensor(restrict(a, sub), restrict(b, sub), window)
    assert lhs.support == rhs.support
    assert lhs.steps == rhs.steps
    assert lhs.components == rhs.components


# ---------------------------------------------------------------------------
# persistence and completion


def test_interval_completion_queries():
    g = interval_module(Q, 0, 1)
    assert complete_persistence(g, F(1, 2)) == AbGroup(1)
    assert complete_persistence(g, 1) == AbGroup(0)
    assert complete_persistence(g, 0) == AbGroup(1)
    assert complete_persistence(g, -1) == AbGroup(0)


def test_completion_evaluates_at_the_next_lattice_point():
    g = interval_module(ZScaled(2), 0, 1)
    assert complete_persistence(g, F(1, 4)) == AbGroup(1)
    assert complete_persistence(g, F(3, 4)) == AbGroup(0)
    assert complete_persistence(g, F(1, 2)) == AbGroup(1)


def test_unknown_germ_raises_below_first_critical():
    h = PersistenceModule(Q, [0], [0, 1], [[]], initial_known=False)
    with pytest.raises(ModuleError):
        h.rank_at(-1)
    assert h.rank_at(0) == 1


def test_extension_materializes_the_completion():
    g = interval_module(ZScaled(2), 0, 1)
    e = extend_persistence(g, ZScaled(4))
    for k in range(-4, 8):
        a = F(k, 4)
        assert e.value_at(a) == complete_persistence(g, a), a


def test_restriction_merges_critical_values():
    f = interval_module(ZScaled(4), F(1, 4), F(3, 4))
    c = restrict_persistence(f, ZScaled(2))
    assert c.critical == (F(1, 2), F(1))
    assert c.ranks == (0, 1, 0)
    # collapsing an interval that misses the sublattice kills the module
    tiny = interval_module(ZScaled(4), F(1, 4), F(1, 2))
    cc = restrict_persistence(tiny, ZScaled(1))
    assert cc.ranks[-1] == 0 and all(
        cc.rank_at(F(k)) == 0 for k in range(-2, 3))


def test_transition_composes_critical_maps():
    m = PersistenceModule(Q, [0, 1], [1, 1, 1], [[[2]], [[3]]])
    assert m.transition(-1, F(1, 2)) == [[2]]
    assert m.transition(-1, 1) == [[6]]
    assert m.transition(F(1, 2), F(3, 4)) == [[1]]
    with pytest.raises(ModuleError):
        m.transition(1, 0)


def test_adjunction_hom_ranks_on_random_intervals():
    rng = random.Random(7)
    fine, coarse = ZScaled(4), ZScaled(2)
    def rand_interval(pog, n):
        lo, hi = sorted(rng.sample(range(-4, 8), 2))
        return interval_module(pog, F(lo, n), F(hi, n))
    for case in range(50):
        f = rand_interval(fine, 4)
        g = rand_interval(coarse, 2)
        lhs = hom_rank(f, extend_persistence(g, fine))
        rhs = hom_rank(restrict_persistence(f, coarse), g)
        assert lhs == rhs, (case, f.critical, g.critical, lhs, rhs)


def test_triangle_identities_on_intervals():
    rng = random.Random(11)
    fine, coarse = ZScaled(4), ZScaled(2)
    window = [F(k, 4) for k in range(-8, 12)]
    for case in range(20):
        lo, hi = sorted(rng.sample(range(-4, 8), 2))
        f = interval_module(fine, F(lo, 4), F(hi, 4))
        g = interval_module(coarse, F(lo, 2), F(hi, 2))
        # unit on the sublattice is the identity, so both composites are too
        for k in range(-4, 6):
            b = F(k, 2)
            assert f.transition(b, ceil_to(coarse, fine, b)) == \
                identity(f.rank_at(b))
        ge = extend_persistence(g, fine)
        for a in window:
            assert ge.transition(a, ceil_to(coarse, fine, a)) == \
                identity(ge.rank_at(a))


def test_hom_rank_basics():
    g = interval_module(Q, 0, 1)
    assert hom_rank(g, g) == 1
    h = interval_module(Q, 2, 3)
    # no overlap and no backwards maps
    assert hom_rank(g, h) == 0
    assert hom_rank(h, g) == 0
    # overlapping intervals map onto an earlier-born, earlier-dying target
    a = interval_module(Q, 0, 2)
    b = interval_module(Q, 1, 3)
    assert hom_rank(b, a) == 1
    assert hom_rank(a, b) == 0


# ---------------------------------------------------------------------------
# ring completion


def test_ring_completion_of_integers():
    r = ring_completion(ZScaled(1), 3)
    t = r.monomial(1)
    assert str(t * t) == "1*T^(2)"
    assert (t * t * t).is_zero
    assert r.rank() == 3


def test_ring_completion_rejects_quotients():
    with pytest.raises(CutoffError):
        ring_completion(Quotient(ZScaled(1), ZScaled(1)), 1)


def test_module_ideal_quotients_match_ring_ranks():
    m = free_line(2, F(7, 2))
    for k in (1, 2, 3):
        ranks = ideal_quotient_ranks(m, k)
        total = sum(g.free_rank for g in ranks.values())
        assert total == ring_completion(ZScaled(2), k).rank() == 2 * k
        for g, grp in ranks.items():
            assert grp == (AbGroup(1) if g < k else AbGroup(0))


def test_completion_tower_compatibility():
    terms = {F(0): 1, F(3, 2): 2, F(5, 2): 1}
    big = ring_completion(ZScaled(2), 3).element(terms)
    small = ring_completion(ZScaled(2), 2).element(terms)
    assert novikov_truncate(big, F(2)) == small
