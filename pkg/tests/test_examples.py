"""Worked examples for every operation, with hand-derived expectations."""

import pytest

from sobriety.codec import (
    default_choice,
    e_index,
    f_decode,
    f_encode,
    in_i,
    pair,
    phi,
    phi_inv,
    unpair,
    word_code,
    word_decode,
)
from sobriety.countable import (
    TOP,
    BElem,
    BFamily,
    BWindow,
    Nat,
    NatTail,
    NumExt,
    Sing,
    Slice,
    WordExt,
    WordTail,
    Wrd,
    b_leq,
    b_leq_oracle,
    b_upper_max_families,
    family_sup,
    l_leq,
    m_leq,
)
from sobriety.errors import CycleError, NotALattice, PreconditionError
from sobriety.pair import (
    TOP1,
    TOP2,
    CoordFamily,
    Exhausted,
    Fn,
    FnDiag,
    FnRep,
    InB,
    ProductPoint,
    XRep,
    Xf,
    a_closed_check,
    a_escape,
    a_member,
    a_witness,
    diagonal_point,
    family_intersect,
    interleave_chain,
    not_point_closure,
    p1_leq,
    p1_upper_max_families,
    p2_leq,
)
from sobriety.poset import from_relations
from sobriety.topology import (
    FiniteSpace,
    alexandrov_space,
    irreducible_closed_sets,
    is_sober,
    open_set_lattice,
    product_space,
    spaces_equal,
    specialization_order,
    sup_map_jointly_continuous,
)

CODE = 2275  # f((0,1); [5])


def chain2():
    return from_relations(["a", "b"], [("a", "b")])


def anti2():
    return from_relations(["a", "b"], [])


def diamond():
    return from_relations(["bot", "x", "y", "top"], [("bot", "x"), ("bot", "y"), ("x", "top"), ("y", "top")])


def sierpinski():
    return FiniteSpace.from_open_labels(["a", "b"], [[], ["b"], ["a", "b"]])


def discrete(n):
    labels = [f"p{i}" for i in range(n)]
    return FiniteSpace.from_masks(labels, range(1 << n))


# --- finite posets ---------------------------------------------------------


def test_poset_construction_and_queries():
    c = chain2()
    assert c.leq("a", "b") and not c.leq("b", "a")
    assert from_relations(["a"], []).leq("a", "a")
    with pytest.raises(CycleError):
        from_relations(["a", "b"], [("a", "b"), ("b", "a")])
    assert not anti2().leq("a", "b")
    assert c.members(c.up_set(c.mask(["a"]))) == ["a", "b"]
    assert c.members(c.down_set(c.mask(["a"]))) == ["a"]
    assert c.up_set(0) == 0 and c.down_set(0) == 0
    assert c.members(c.maximal_elements(c.full)) == ["b"]
    assert anti2().maximal_elements(0b11) == 0b11
    d = diamond()
    assert d.members(d.maximal_elements(d.mask(["bot", "x", "y"]))) == ["x", "y"]
    assert c.is_directed(c.full) and not anti2().is_directed(0b11)
    assert d.is_directed(d.mask(["x", "y", "top"]))
    assert c.sup(c.full) == "b" and anti2().sup(0b11) is None
    assert d.sup(d.mask(["x", "y"])) == "top"


def test_poset_constructions():
    sq = chain2().product(chain2())
    assert len(sq) == 4 and len(sq.hasse_covers()) == 4
    one = from_relations(["a"], [])
    assert not one.disjoint_sum(one).leq("0:a", "1:a") and len(one.disjoint_sum(one)) == 2
    lifted = anti2().lift_top()
    assert len(lifted) == 3 and lifted.leq("a", "top") and lifted.leq("b", "top")
    c3 = from_relations(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert c3.hasse_covers() == [("a", "b"), ("b", "c")]
    assert len(diamond().hasse_covers()) == 4
    assert anti2().hasse_covers() == []


# --- finite topology -------------------------------------------------------


def test_alexandrov_examples():
    assert alexandrov_space(chain2()).open_label_sets() == [[], ["b"], ["a", "b"]]
    assert len(alexandrov_space(anti2())) == 4
    assert alexandrov_space(from_relations(["a"], [])).open_label_sets() == [[], ["a"]]


def test_specialization_examples():
    assert list(specialization_order(alexandrov_space(chain2())).up) == list(chain2().up)
    sp = specialization_order(sierpinski())
    assert sp.leq("a", "b") and not sp.leq("b", "a")
    disc = specialization_order(discrete(2))
    assert not disc.leq("p0", "p1") and not disc.leq("p1", "p0")


def test_irreducible_examples():
    a = alexandrov_space(anti2())
    assert sorted(irreducible_closed_sets(a)) == [0b01, 0b10]
    c = alexandrov_space(chain2())
    assert sorted(irreducible_closed_sets(c)) == [0b01, 0b11]
    d = alexandrov_space(diamond())
    assert sorted(irreducible_closed_sets(d)) == sorted(diamond().down)


def test_sober_examples():
    rep = is_sober(sierpinski())
    assert rep.sober and len(rep.irreducibles) == 2
    rep = is_sober(discrete(3))
    assert rep.sober and len(rep.irreducibles) == 3


def test_open_set_lattice_examples():
    assert list(open_set_lattice(from_relations(["a"], [])).up) == list(chain2().up)
    boolean = open_set_lattice(anti2())
    assert len(boolean) == 4 and len(boolean.hasse_covers()) == 4
    c3 = open_set_lattice(chain2())
    assert len(c3) == 3 and len(c3.hasse_covers()) == 2


def test_product_space_examples():
    sq = product_space(sierpinski(), sierpinski())
    assert spaces_equal(sq, alexandrov_space(chain2().product(chain2())))
    point = FiniteSpace.from_open_labels(["*"], [[], ["*"]])
    unit = product_space(sierpinski(), point)
    assert unit.open_masks() == sierpinski().open_masks()
    assert spaces_equal(product_space(discrete(2), discrete(2)), FiniteSpace.from_masks(
        [f"(p{i},p{j})" for i in range(2) for j in range(2)], range(16)))


def test_spaces_equal_examples():
    sl = open_set_lattice(chain2())
    lhs = product_space(alexandrov_space(sl), alexandrov_space(sl))
    assert spaces_equal(lhs, alexandrov_space(sl.product(sl)))
    assert spaces_equal(sierpinski(), sierpinski())
    assert not spaces_equal(sierpinski(), FiniteSpace.from_masks(["a", "b"], range(4)))


def test_sup_map_examples():
    assert sup_map_jointly_continuous(open_set_lattice(diamond()))
    assert sup_map_jointly_continuous(diamond())
    with pytest.raises(NotALattice):
        sup_map_jointly_continuous(anti2())


# --- codec -----------------------------------------------------------------


def test_codec_examples():
    assert pair(0, 0) == 0 and pair(1, 1) == 4 and unpair(4) == (1, 1)
    assert word_code((0,)) == 2 and word_code((0, 0)) == 6 and word_decode(5) is None
    assert pair(2, 64) == CODE == f_encode((0, 1), (5,))
    assert f_decode(CODE) == ((0, 1), (5,)) and f_decode(0) is None
    assert in_i(CODE, (0, 1)) and not in_i(CODE, (0, 2)) and not in_i(0, (0, 1))
    assert phi(0) == (0, 1) and phi(2) == (1, 2) and phi_inv(phi(17)) == 17
    assert e_index(CODE) == 0 and e_index(0) is None
    assert e_index(f_encode(phi(7), (1, 2))) == 7
    assert default_choice(5) == f_encode(phi(5), (0,))


# --- B ---------------------------------------------------------------------


def test_m_and_l_examples():
    assert m_leq(Nat(2), Nat(5))
    assert m_leq(Wrd((0,)), Wrd((0, 1)))
    assert not m_leq(Nat(0), Wrd((0,)))
    assert l_leq(Slice((0, 1), Wrd((0,))), TOP)
    assert not l_leq(Slice((0, 1), Nat(0)), Slice((0, 2), Nat(0)))
    assert l_leq(TOP, TOP)


def test_b_leq_examples_and_oracle():
    u = BElem(0, 3, Slice((0, 1), Wrd((5,))))
    v = BElem(CODE, 4, TOP)
    slice_el = BElem(7, 2, Slice((1, 2), Nat(4)))
    window = BWindow(1, 4, ((0, 1), (0, 2)), 1, 5)
    cases = [
        (u, v, True),
        (slice_el, BElem(7, 2, TOP), True),
        (BElem(0, 3, TOP), BElem(1, 3, TOP), False),
        (u, u, True),
        (BElem(0, 3, Slice((0, 1), Nat(1))), BElem(0, 3, Slice((0, 2), Nat(1))), False),
    ]
    for a, b, want in cases:
        assert b_leq(a, b) is want
    for a, b, want in cases[:1] + cases[2:]:
        assert b_leq_oracle(a, b, window) is want


def test_family_sup_examples():
    fam = BFamily(3, 2, (0, 1), NatTail(0, 1))
    assert family_sup(fam) == BElem(3, 2, TOP)
    words = BFamily(0, 0, (0, 1), WordTail((0,), (0,)))
    assert family_sup(words) == BElem(0, 0, TOP)
    with pytest.raises(PreconditionError):
        family_sup(BFamily(3, 2, (0, 1), NatTail(4, 0)))


def test_upper_family_examples():
    e = BElem(0, 3, Slice((0, 1), Wrd((5,))))
    fams = b_upper_max_families(e)
    assert fams == [Sing(BElem(0, 3, TOP)), WordExt((0, 1), (5,), 4)]
    assert fams[1].contains(BElem(CODE, 4, TOP)) and b_leq(e, BElem(CODE, 4, TOP))
    top = BElem(4, 4, TOP)
    assert b_upper_max_families(top) == [Sing(top)]
    e = BElem(1, 3, Slice((0, 1), Nat(2)))
    assert b_upper_max_families(e) == [Sing(BElem(1, 3, TOP)), NumExt((0, 1), 2, 4)]


# --- P1, P2, A -------------------------------------------------------------

F39 = FnRep.make({3: 9}, 7)


def test_p1_examples():
    assert p1_leq(Fn(F39, 2), InB(BElem(9, 3, TOP)))
    assert not p1_leq(Fn(F39, 2), Fn(F39, 1))
    assert p1_leq(InB(BElem(0, 0, Slice((0, 1), Nat(0)))), TOP1)


def test_p2_examples():
    d = XRep.make({})
    assert p2_leq(Xf(d, 0, 3), InB(BElem(default_choice(5), 3, TOP)))
    assert not p2_leq(Xf(d, 0, 3), InB(BElem(default_choice(5), 4, TOP)))
    assert p2_leq(Xf(d, 2, 1), Xf(d, 7, 1))


def test_upper_family_examples_p1():
    (diag,) = p1_upper_max_families(Fn(F39, 2))
    assert diag == FnDiag(F39, 2)
    assert diag.contains(BElem(9, 3, TOP))
    assert all(diag.contains(BElem(7, k, TOP)) for k in (2, 4, 5, 9))
    assert not diag.contains(BElem(7, 3, TOP)) and not diag.contains(BElem(7, 1, TOP))
    assert p1_upper_max_families(TOP1) == []
    t = BElem(2, 2, TOP)
    assert p1_upper_max_families(InB(t)) == [Sing(t)]


def test_family_intersect_examples():
    assert family_intersect(FnDiag(F39, 2), Sing(BElem(9, 3, TOP))) == BElem(9, 3, TOP)
    meet = family_intersect(WordExt((0, 1), (5,), 4), WordExt((0, 1), (5, 0), 4))
    assert meet == BElem(f_encode((0, 1), (5, 0)), 4, TOP)
    assert family_intersect(WordExt((0, 1), (5,), 4), WordExt((0, 2), (5,), 4)) is None


def test_a_member_examples():
    t = InB(BElem(3, 2, TOP))
    assert a_member(ProductPoint(t, t))
    assert not a_member(ProductPoint(TOP1, t))
    assert not a_member(ProductPoint(TOP1, TOP2))
    assert a_witness(ProductPoint(Fn(F39, 2), InB(BElem(9, 3, TOP)))) == BElem(9, 3, TOP)


def test_interleave_examples():
    links = interleave_chain(0, 1, 2, [5])
    assert all(lk.holds for lk in links)
    assert links[-1].upper == BElem(CODE, 3, TOP)
    links = interleave_chain(0, 1, 2, [5, 4])
    assert all(lk.holds for lk in links)
    assert "R4" in [lk.rule for lk in links]
    assert links[-1].upper == BElem(f_encode((0, 1), (5, 4)), 3, TOP)
    with pytest.raises(PreconditionError):
        interleave_chain(1, 0, 0, [0])


def test_escape_examples():
    diag00 = diagonal_point(BElem(0, 0, TOP))
    assert a_escape([], []) == diag00
    assert isinstance(a_escape([ProductPoint(TOP1, TOP2)], [], budget=500), Exhausted)
    assert a_escape([diag00], []) == diagonal_point(BElem(1, 0, TOP))


def test_closedness_examples():
    # nat chain at (f(s; s0), n0) beside the word x* <= s0 one level down
    s, s0, n0 = (0, 1), (2, 3), 2
    fam = BFamily(f_encode(s, s0), n0, s, NatTail(0, 1))
    fixed = InB(BElem(0, n0 - 1, Slice(s, Wrd((2,)))))
    assert a_closed_check(CoordFamily("left", fixed, fam))
    # slice chain under a top-typed diagonal partner
    partner = InB(BElem(3, 2, TOP))
    assert a_closed_check(CoordFamily("right", partner, BFamily(3, 2, (1, 2), NatTail(0, 1))))


def test_not_point_closure_examples():
    diag00 = diagonal_point(BElem(0, 0, TOP))
    assert not_point_closure(diag00) == BElem(1, 0, TOP)
    t = not_point_closure(ProductPoint(TOP1, InB(BElem(0, 0, TOP))))
    assert t and (t.m, t.n) != (0, 0)
    assert isinstance(not_point_closure(ProductPoint(TOP1, TOP2), budget=500), Exhausted)
