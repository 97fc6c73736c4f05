import random

import pytest
from hypothesis import given, settings, strategies as st

from sobriety import sampling
from sobriety.codec import f_encode
from sobriety.countable import (
    TOP,
    BElem,
    BFamily,
    BWindow,
    Nat,
    NatTail,
    Slice,
    WordTail,
    Wrd,
    b_enumerate,
    b_leq,
    b_lt,
    b_upper_max_families,
    family_sup,
    is_b_maximal,
    oracle_for,
    words_upto,
)
from sobriety.errors import BoundTooSmall, PreconditionError
from sobriety.suite import check_oracle_equivalence

seeds = st.integers(min_value=0, max_value=2**32)
SMALL = BWindow(2, 2, ((0, 1), (0, 2), (1, 2)), 2, 2)
TINY = BWindow(1, 1, ((0, 1),), 1, 1)


def test_tiny_window_counts():
    # m in {0, 1, 12, 25}, n in {0, 1}, five L values; 85 pairs counted by hand:
    # 40 reflexive, 40 from R1, 2 from R2, 3 from R3.
    o = oracle_for(TINY)
    assert len(o.elements) == 40
    assert sum(bin(r).count("1") for r in o.reach) == 85


def test_criterion_window_counts():
    o = oracle_for(BWindow(4, 4, ((0, 1), (0, 2), (1, 2)), 2, 2))
    assert len(o.elements) == 9430
    assert sum(bin(r).count("1") for r in o.reach) == 26629


def test_closed_form_matches_oracle_on_small_window():
    res = check_oracle_equivalence(SMALL)
    assert res.passed, res.detail
    assert res.checked == len(oracle_for(SMALL).elements) ** 2


def test_oracle_check_catches_a_wrong_order(monkeypatch):
    import sobriety.suite as suite

    # forgetting R3 must show up as a mismatch
    def no_r3(u, v):
        if v.l is TOP and u.l is not TOP and type(u.l.x) is Nat and u.m == u.l.s[1] and v.n == u.n + 1:
            return False
        return b_leq(u, v)

    monkeypatch.setattr(suite, "b_leq", no_r3)
    assert not check_oracle_equivalence(TINY).passed


def test_upper_families_match_oracle():
    o = oracle_for(SMALL)
    tops = [(j, v) for j, v in enumerate(o.elements) if v.l is TOP]
    for i, e in enumerate(o.elements):
        fams = b_upper_max_families(e)
        for j, v in tops:
            assert bool(o.reach[i] >> j & 1) == any(F.contains(v) for F in fams), (e, v)


@settings(max_examples=200)
@given(seeds)
def test_family_samples_lie_above(seed):
    rng = random.Random(seed)
    e = sampling.random_b(rng)
    for F in b_upper_max_families(e):
        for t in F.sample(3):
            assert is_b_maximal(t) and F.contains(t) and b_leq(e, t)


@settings(max_examples=300)
@given(seeds)
def test_order_laws(seed):
    rng = random.Random(seed)
    u = sampling.random_b(rng)
    v = sampling.random_b_above(rng, u)
    w = sampling.random_b_above(rng, v)
    assert b_leq(u, u)
    assert b_leq(u, v) and b_leq(v, w) and b_leq(u, w)
    if b_leq(v, u):
        assert u == v
    assert not b_lt(u, u)


def test_top_typed_elements_are_maximal():
    for u in b_enumerate(TINY):
        if u.l is TOP:
            assert all(not b_lt(u, v) for v in b_enumerate(TINY))


def test_r4_appends_a_letter():
    s = (0, 2)
    u = BElem(f_encode(s, (1,)), 3, Slice(s, Nat(4)))
    assert b_leq(u, BElem(f_encode(s, (1, 4)), 3, TOP))
    assert b_leq(u, BElem(f_encode(s, (1, 9)), 3, TOP))
    assert not b_leq(u, BElem(f_encode(s, (1, 3)), 3, TOP))
    assert not b_leq(u, BElem(f_encode(s, (1, 4)), 4, TOP))


@settings(max_examples=100)
@given(seeds)
def test_families_increase_to_their_sup(seed):
    rng = random.Random(seed)
    s = sampling.random_slice(rng)
    fam = sampling.random_bfamily(rng, rng.randint(0, 30), rng.randint(0, 3), s)
    members = list(fam.members(10))
    sup = family_sup(fam)
    for a, b in zip(members, members[1:]):
        assert b_lt(a, b)
    assert all(b_lt(m, sup) for m in members)


def test_degenerate_families_rejected():
    with pytest.raises(PreconditionError):
        family_sup(BFamily(0, 0, (0, 1), NatTail(0, 0)))
    with pytest.raises(PreconditionError):
        family_sup(BFamily(0, 0, (0, 1), WordTail((1,), ())))
    with pytest.raises(ValueError):
        family_sup(BFamily(0, 0, (1, 1), NatTail(0, 1)))


def test_window_validation_and_bounds():
    with pytest.raises(ValueError):
        BWindow(1, 1, (), 1, 1)
    with pytest.raises(BoundTooSmall):
        oracle_for(TINY).leq(BElem(9, 0, TOP), BElem(0, 0, TOP))


def test_words_upto_count():
    assert len(words_upto(2, 2)) == 3 + 9
    assert len(words_upto(3, 3)) == 4 + 16 + 64
    assert words_upto(1, 1) == [(0,), (1,)]


def test_slice_elements_reject_bad_slices():
    with pytest.raises(ValueError):
        Slice((3, 1), Nat(0))
    with pytest.raises(ValueError):
        Wrd(())
