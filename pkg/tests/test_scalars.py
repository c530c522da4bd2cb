from fractions import Fraction as F

import pytest

from pogcat import (
    AlmostSetup,
    CutoffError,
    MonoidRingElt,
    NovikovElt,
    PogError,
    Quotient,
    Rationals,
    TruncatedMap,
    TruncatedModule,
    ZScaled,
    almost_iso,
    almost_zero,
    idempotent_split,
    novikov_truncate,
    parse_pog,
)

Q = Rationals()
HALF = ZScaled(2)


def mring(pog, terms):
    return MonoidRingElt.from_terms(pog, terms)


def nov(pog, terms, cutoff):
    return NovikovElt.from_terms(pog, terms, F(cutoff))


def test_rendering():
    x = mring(Q, {F(0): 1, F(1, 2): 5})
    assert str(x) == "1*T^(0) + 5*T^(1/2)"
    y = mring(Q, {F(1, 2): 3, F(1): -6})
    assert str(y) == "3*T^(1/2) - 6*T^(1)"
    assert str(mring(Q, {})) == "0"
    assert str(mring(Q, {F(2): -1})) == "-1*T^(2)"


def test_ring_axioms_small():
    a = mring(Q, {F(0): 1, F(1, 2): 2})
    b = mring(Q, {F(1, 2): 3})
    c = mring(Q, {F(1): -1, F(3, 2): 1})
    one = MonoidRingElt.one(Q)
    assert a * one == a
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == MonoidRingElt.zero(Q)


def test_exponents_stay_in_the_cone():
    with pytest.raises(PogError):
        mring(Q, {F(-1, 2): 1})
    with pytest.raises(PogError):
        mring(ZScaled(2), {F(1, 3): 1})


def test_truncation_worked_example():
    x = mring(Q, {F(n) + F(1, n): 1 for n in range(1, 6)})
    t = novikov_truncate(x, F(3))
    assert str(t) == "1*T^(2) + 1*T^(5/2)"


def test_truncation_is_a_ring_map():
    a = mring(Q, {F(0): 2, F(3, 4): 1, F(5, 2): -3})
    b = mring(Q, {F(1, 4): 1, F(2): 7})
    cut = F(2)
    lhs = novikov_truncate(a * b, cut)
    rhs = novikov_truncate(a, cut) * novikov_truncate(b, cut)
    assert lhs == rhs
    assert novikov_truncate(a + b, cut) == \
        novikov_truncate(a, cut) + novikov_truncate(b, cut)


def test_novikov_drops_beyond_cutoff():
    x = nov(Q, {F(1, 2): 1, F(7, 2): 4}, 3)
    assert x.term_dict() == {F(1, 2): 1}
    y = nov(Q, {F(2): 1}, 3)
    assert (x * y).term_dict() == {F(5, 2): 1}
    assert (x * y * y).is_zero


def test_mixed_cutoffs_take_the_finer_window():
    a = nov(Q, {F(0): 1}, 3)
    b = nov(Q, {F(0): 1, F(3, 2): 1}, 2)
    assert (a * b).cutoff == F(2)
    assert (a + b).cutoff == F(2)


def test_truncate_refuses_to_refine():
    x = nov(Q, {F(0): 1}, 2)
    assert novikov_truncate(x, F(1)).cutoff == F(1)
    with pytest.raises(CutoffError):
        novikov_truncate(x, F(3))


def test_novikov_rejects_quotient_gradings():
    with pytest.raises(PogError):
        nov(parse_pog("Z/2%Z"), {F(1, 2): 1}, 1)


def test_idempotent_split():
    x = nov(HALF, {F(1): 3}, 2)
    pairs = idempotent_split(x)
    assert len(pairs) == 1
    left, right = pairs[0]
    assert left.term_dict() == {F(1, 2): 1}
    assert right.term_dict() == {F(1, 2): 3}
    assert (left * right).term_dict() == x.term_dict()
    # the split may need a finer lattice than the input carried
    assert left.pog == ZScaled(4)

    many = nov(Q, {F(1, 2): 1, F(3, 2): -2}, 2)
    total = sum((a * b for a, b in idempotent_split(many)),
                NovikovElt.from_terms(Q, {}, F(2)))
    assert total == many


def test_shift():
    x = nov(Q, {F(0): 1, F(1): 1}, 2)
    s = x.shift(F(3, 2))
    assert s.term_dict() == {F(3, 2): 1}


def test_valuation():
    assert nov(Q, {F(1, 2): 2, F(1): 1}, 3).valuation() == F(1, 2)
    assert mring(Q, {F(0): 1}).valuation() == 0
    assert not nov(Q, {F(0): 1}, 1).has_positive_valuation()
    assert nov(Q, {F(1, 3): 1}, 1).has_positive_valuation()


# ---------------------------------------------------------------------------
# almost vanishing against the probe ideal


def test_free_rank_one_is_not_almost_zero():
    lam = TruncatedModule(HALF, F(1), 1, [])
    assert not almost_zero(lam, AlmostSetup(2))


def test_cokernel_of_half_shift_is_almost_zero():
    # Lambda / T^(1/2) Lambda: every generator dies under any positive probe
    m = TruncatedModule(HALF, F(1), 1, [[nov(HALF, {F(1, 2): 1}, 1)]])
    assert almost_zero(m, AlmostSetup(2))


def test_quotient_by_all_small_monomials_is_almost_zero():
    rels = [[nov(ZScaled(4), {F(1, 4): 1}, 1)]]
    m = TruncatedModule(ZScaled(4), F(1), 1, rels)
    assert almost_zero(m, AlmostSetup(4))


def test_direct_sum_respects_almost_zero():
    setup = AlmostSetup(2)
    a = TruncatedModule(HALF, F(1), 1, [[nov(HALF, {F(1, 2): 1}, 1)]])
    b = TruncatedModule(HALF, F(1), 1, [])
    from pogcat.scalars import direct_sum
    assert almost_zero(direct_sum(a, a), setup)
    assert not almost_zero(direct_sum(a, b), setup)


def test_almost_iso_examples():
    setup = AlmostSetup(2)
    ident = TruncatedMap(HALF, F(1), [[nov(HALF, {F(0): 1}, 1)]], 1, 1)
    assert almost_iso(ident, setup)

    zero = TruncatedMap(HALF, F(1), [[nov(HALF, {}, 1)]], 1, 1)
    assert not almost_iso(zero, setup)

    half = TruncatedMap(HALF, F(1), [[nov(HALF, {F(1, 2): 1}, 1)]], 1, 1)
    assert almost_iso(half, setup)
    assert half.kernel_almost_zero(setup)
    assert half.cokernel_almost_zero(setup)
