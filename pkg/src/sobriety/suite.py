"""Property suites behind the acceptance criteria.

Each ``check_*`` returns a :class:`CheckResult`; nothing here asserts, so the
same code backs ``gallery suite`` and the test-suite gate.  All randomness
flows from an explicit seed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import repeat
from typing import Callable, List, Sequence

import numpy as np

from . import codec
from .codec import default_choice, f_decode, f_encode, in_i, is_prefix, phi, phi_inv, word_code, word_decode
from .countable import (
    TOP,
    BElem,
    BWindow,
    Slice,
    Wrd,
    b_leq,
    b_upper_max_families,
    family_sup,
    oracle_for,
    words_upto,
)
from .errors import FamilyNotInA
from .pair import (
    TOP1,
    TOP2,
    Fn,
    FnRep,
    InB,
    ProductPoint,
    XRep,
    Xf,
    a_closed_check,
    a_escape,
    a_member,
    climb_level,
    diagonal_point,
    interleave_chain,
    not_point_closure,
    p1_leq,
    p2_leq,
    p12_leq,
    small_constants,
)
from .topology import (
    alexandrov_space,
    irreducible_closed_sets,
    irreducible_closed_sets_by_pairs,
    is_sober,
    open_set_lattice,
    product_space,
    spaces_equal,
    sup_map_jointly_continuous,
)
from . import sampling
from .poset import from_relations

CRITERION_WINDOW = BWindow(4, 4, ((0, 1), (0, 2), (1, 2)), 2, 2)
COMPARATOR_CAP = 1 << 23


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int
    seconds: float = 0.0
    failures: List[str] = field(default_factory=list)

    def note(self, msg: str, keep: int = 5) -> None:
        self.passed = False
        if len(self.failures) < keep:
            self.failures.append(msg)

    @property
    def detail(self) -> str:
        return "; ".join(self.failures) if self.failures else "ok"


def _timed(name: str):
    def wrap(fn: Callable[..., CheckResult]):
        def run(*args, **kwargs) -> CheckResult:
            t0 = time.perf_counter()
            res = fn(*args, **kwargs)
            res.name = name
            res.seconds = time.perf_counter() - t0
            return res

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


# --- 1. closed form against the reachability oracle ------------------------


@_timed("oracle-equivalence")
def check_oracle_equivalence(window: BWindow = CRITERION_WINDOW) -> CheckResult:
    """``b_leq`` against the window oracle on every ordered pair."""
    oracle = oracle_for(window)
    els = oracle.elements
    n = len(els)
    res = CheckResult("", True, n * n)
    nbytes = (n + 7) // 8
    for i, u in enumerate(els):
        raw = np.frombuffer(oracle.reach[i].to_bytes(nbytes, "little"), dtype=np.uint8)
        want = np.unpackbits(raw, bitorder="little")[:n].astype(bool)
        got = np.fromiter(map(b_leq, repeat(u, n), els), dtype=bool, count=n)
        if not np.array_equal(got, want):
            j = int(np.flatnonzero(got != want)[0])
            res.note(f"{u!r} vs {els[j]!r}: closed form {bool(got[j])}, oracle {bool(want[j])}")
    return res


# --- 2. partial-order laws -------------------------------------------------


def _law_triples(leq, fresh, above, rng: random.Random, count: int, res: CheckResult, tag: str):
    for _ in range(count):
        u = fresh(rng)
        if rng.random() < 0.5:
            v = above(rng, u)
            w = above(rng, v)
        else:
            v, w = fresh(rng), fresh(rng)
        if not leq(u, u):
            res.note(f"{tag}: not reflexive at {u!r}")
        if u != v and leq(u, v) and leq(v, u):
            res.note(f"{tag}: antisymmetry fails for {u!r}, {v!r}")
        if leq(u, v) and leq(v, w) and not leq(u, w):
            res.note(f"{tag}: transitivity fails for {u!r} <= {v!r} <= {w!r}")


def _pair_fresh(rng):
    return ProductPoint(sampling.random_p1(rng), sampling.random_p2(rng))


def _pair_above(rng, p):
    return ProductPoint(sampling.random_p1_above(rng, p.x), sampling.random_p2_above(rng, p.y))


def closure_adds_nothing(elements: Sequence, leq) -> bool:
    """Is the relation ``leq`` restricted to ``elements`` already transitive?"""
    n = len(elements)
    rows = [sum(1 << j for j, v in enumerate(elements) if leq(u, v)) for u in elements]
    closed = list(rows)
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if closed[i] & bit:
                closed[i] |= closed[k]
    return closed == rows


def p1_window() -> List:
    """A finite slice of P1: a small B window, a few functions, and TOP1."""
    w = BWindow(2, 2, ((0, 1), (0, 2)), 1, 1)
    bs = [InB(e) for e in oracle_for(w).elements]
    codes = [f_encode((0, 1), (0,)), f_encode((0, 2), (1,)), 1, 2]
    reps = [FnRep.make({}, c) for c in codes] + [FnRep.make({0: codes[0], 1: codes[1]}, 2)]
    fns = [Fn(f, n) for f in reps for n in range(3)]
    return bs + fns + [TOP1]


def p2_window() -> List:
    w = BWindow(2, 2, ((0, 1), (0, 2)), 1, 1)
    bs = [InB(e) for e in oracle_for(w).elements]
    reps = [XRep.make({}), XRep.make({0: f_encode(phi(0), (1,))}), XRep.make({1: f_encode(phi(1), (0, 1))})]
    xs = [Xf(f, n, k) for f in reps for n in range(3) for k in range(3)]
    return bs + xs + [TOP2]


@_timed("order-laws")
def check_order_laws(samples: int = 10_000, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    res = CheckResult("", True, 4 * samples)
    _law_triples(b_leq, sampling.random_b, sampling.random_b_above, rng, samples, res, "B")
    _law_triples(p1_leq, sampling.random_p1, sampling.random_p1_above, rng, samples, res, "P1")
    _law_triples(p2_leq, sampling.random_p2, sampling.random_p2_above, rng, samples, res, "P2")
    _law_triples(p12_leq, _pair_fresh, _pair_above, rng, samples, res, "P1xP2")
    if not closure_adds_nothing(p1_window(), p1_leq):
        res.note("P1: transitive closure of the displayed union adds pairs on the window")
    if not closure_adds_nothing(p2_window(), p2_leq):
        res.note("P2: order on the window is not transitive")
    return res


# --- 3. codec laws ---------------------------------------------------------


@_timed("codec-laws")
def check_codec_laws(max_component: int = 6, max_len: int = 3, max_letter: int = 3) -> CheckResult:
    slices = [(a, b) for b in range(max_component + 1) for a in range(b)]
    words = words_upto(max_len, max_letter)
    res = CheckResult("", True, len(slices) * len(words))
    seen = {}
    for s in slices:
        for w in words:
            code = f_encode(s, w)
            if code in seen:
                res.note(f"images overlap: {seen[code]} and {(s, w)} both give {code}")
            seen[code] = (s, w)
            if not code > s[1]:
                res.note(f"f({s}; {w}) = {code} is not above {s[1]}")
            if f_decode(code) != (s, w):
                res.note(f"f_decode(f({s}; {w})) = {f_decode(code)}")
            if word_decode(word_code(w)) != w:
                res.note(f"word round trip fails for {w}")
            if not in_i(code, s):
                res.note(f"{code} not in i{s}")
            for w2 in words:
                if is_prefix(w, w2) and w != w2 and not f_encode(s, w) < f_encode(s, w2):
                    res.note(f"f not prefix-monotone at {s}, {w} < {w2}")
    for j in range(len(slices)):
        s = phi(j)
        if phi_inv(s) != j:
            res.note(f"phi round trip fails at {j}")
        if f_decode(default_choice(j)) != (s, (0,)):
            res.note(f"default choice at {j} is not f(phi({j}); [0])")
    for a, b in slices:
        if codec.unpair(codec.pair(a, b)) != (a, b):
            res.note(f"pairing round trip fails at {(a, b)}")
    return res


# --- 4. sup of directed families in B --------------------------------------


def _bound_horizon(c: BElem) -> int:
    return 8 + max([0] + small_constants(c))


def _candidates(rng: random.Random, fam, count: int) -> List[BElem]:
    sup = family_sup(fam)
    first = fam.member(0)
    pool = [sup]
    for F in b_upper_max_families(first):
        pool.extend(F.sample(2))
    pool += [fam.member(rng.randint(0, 6)) for _ in range(3)]
    pool += [BElem(fam.m, fam.n + 1, TOP), BElem(fam.m + 1, fam.n, TOP)]
    pool += [sampling.random_b(rng) for _ in range(count)]
    rng.shuffle(pool)
    out = [sup] + [c for c in pool if c != sup]
    return out[:count]


@_timed("family-sup")
def check_family_sups(count: int = 100, candidates: int = 20, seed: int = 0) -> CheckResult:
    """The sup is an upper bound below every sampled upper bound."""
    rng = random.Random(seed)
    res = CheckResult("", True, count * candidates)
    for _ in range(count):
        s = sampling.random_slice(rng)
        fam = sampling.random_bfamily(rng, sampling.random_m(rng, s), rng.randint(0, 3), s)
        sup = family_sup(fam)
        if sup != BElem(fam.m, fam.n, TOP):
            res.note(f"sup of {fam!r} is {sup!r}")
        for c in _candidates(rng, fam, candidates):
            h = _bound_horizon(c) + 8
            bounds = all(b_leq(fam.member(k), c) for k in range(h))
            if c == sup and not bounds:
                res.note(f"sup {sup!r} fails to bound {fam!r}")
            if bounds and not b_leq(sup, c):
                res.note(f"{c!r} bounds {fam!r} but lies outside the sup's up-set")
    return res


# --- 5. A closed under coordinatewise sups ---------------------------------


@_timed("a-closed")
def check_a_closed(count: int = 200, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    res = CheckResult("", True, count)
    for _ in range(count):
        fam = sampling.random_family_in_a(rng)
        try:
            ok = a_closed_check(fam)
        except FamilyNotInA as exc:
            res.note(f"generator left A: {exc}")
            continue
        if not ok:
            res.note(f"sup of {fam!r} leaves A")
    return res


# --- 6. irreducibility on the subbase and constructive chains --------------


def _generator_set(rng: random.Random) -> List[ProductPoint]:
    out = []
    while len(out) < rng.randint(1, 5):
        p = sampling.random_point(rng)
        if not (p.x is TOP1 and p.y is TOP2):
            out.append(p)
    return out


def meet_diagonals(m1: int, n1: int, m2: int, n2: int, letters: Sequence[int]):
    """Links joining the diagonal points at ``(m1, n1)`` and ``(m2, n2)``.

    The lower level is lifted with ``climb_level`` until both sit on one
    level, then an ``interleave_chain`` joins them.  Returns the chain's links
    (empty if the climb already lands on the other point).
    """
    if n1 > n2:
        m1, n1, m2, n2 = m2, n2, m1, n1
    while n1 < n2:
        m1 = climb_level(m1, n1, letters[0]).m
        n1 += 1
    if m1 == m2:
        return []
    lo, hi = sorted((m1, m2))
    return interleave_chain(lo, hi, n1, letters)


@_timed("irreducible-subbase")
def check_irreducible_subbase(pairs: int = 100, chains: int = 50, seed: int = 0, budget: int = 10_000) -> CheckResult:
    rng = random.Random(seed)
    res = CheckResult("", True, pairs + chains)
    for _ in range(pairs):
        F1, F2 = _generator_set(rng), _generator_set(rng)
        if not (a_escape(F1, [], budget) and a_escape(F2, [], budget)):
            res.note(f"precondition fails for {F1!r} / {F2!r}")
            continue
        d = a_escape(F1, F2, budget)
        if not d:
            res.note(f"no escape within {budget} for {F1!r} / {F2!r}")
        elif not a_member(d) or any(p12_leq(d, g) for g in F1 + F2):
            res.note(f"escape {d!r} is not a valid witness")
    for _ in range(chains):
        m1 = rng.randint(0, 6)
        m2 = m1 + rng.randint(1, 6)
        n = rng.randint(0, 3)
        letters = [rng.randint(0, 4) for _ in range(rng.randint(1, 4))]
        links = interleave_chain(m1, m2, n, letters)
        if not all(link.holds for link in links):
            res.note(f"broken link in chain {(m1, m2, n, letters)}")
        final = links[-1].upper
        u_origin = BElem(m1, n, Slice((m1, m2), Wrd(tuple(letters))))
        v_origin = links[0].lower
        if not b_leq(u_origin, final) or not b_leq(v_origin, links[0].upper):
            res.note(f"chain {(m1, m2, n, letters)} does not reach its origins")
        if len(letters) == 1 and not b_leq(v_origin, final):
            res.note(f"one-letter chain {(m1, m2, n, letters)} misses the V origin")
        # The zig-zag must connect: consecutive tops share a lower element.
        tops = [lk.upper for lk in links]
        for lk_prev, lk_r1, lk_r4 in zip(links[1::3], links[2::3], links[3::3]):
            if lk_r1.upper != lk_prev.upper or lk_r1.lower != lk_r4.lower:
                res.note(f"chain {(m1, m2, n, letters)} is not connected")
        if tops[-1] != final:
            res.note("final element mismatch")
        # Two levels apart: climb, then interleave.
        n2 = n + rng.randint(0, 2)
        for lk in meet_diagonals(m1, n, m2, n2, letters):
            if not lk.holds:
                res.note(f"climb+interleave link fails: {lk!r}")
    return res


# --- 7. A has no greatest element ------------------------------------------


@_timed("not-principal")
def check_not_principal(count: int = 100, seed: int = 0, budget: int = 10_000) -> CheckResult:
    rng = random.Random(seed)
    points = [ProductPoint(TOP1, TOP2)] + [sampling.random_point(rng) for _ in range(count - 1)]
    res = CheckResult("", True, count)
    for p in points:
        t = not_point_closure(p, budget)
        top = p.x is TOP1 and p.y is TOP2
        if top:
            if t:
                res.note(f"witness {t!r} found below (TOP1, TOP2)")
        elif not t:
            res.note(f"no witness for {p!r} within {budget}")
        elif not a_member(diagonal_point(t)) or p12_leq(diagonal_point(t), p):
            res.note(f"bad witness {t!r} for {p!r}")
    if a_member(ProductPoint(TOP1, TOP2)):
        res.note("(TOP1, TOP2) reported in A")
    return res


# --- 8. finite posets are sober --------------------------------------------


@_timed("finite-sobriety")
def check_finite_sobriety(count: int = 500, max_size: int = 8, oracle_size: int = 6, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    res = CheckResult("", True, count)
    for _ in range(count):
        p = sampling.random_poset(rng, max_size)
        s = alexandrov_space(p)
        rep = is_sober(s)
        if not rep.sober or len(rep.irreducibles) != len(p.labels):
            res.note(f"poset {p.labels} with up rows {p.up}: sober={rep.sober}, {len(rep.irreducibles)} irreducibles")
        if len(p.labels) <= oracle_size and irreducible_closed_sets(s) != irreducible_closed_sets_by_pairs(s):
            res.note(f"irreducibility characterizations disagree on {p.up}")
    return res


# --- 9. product topology against the up-set topology -----------------------


@_timed("sigma-comparator")
def check_comparator(count: int = 100, max_size: int = 3, seed: int = 0, per_case: float = 10.0) -> CheckResult:
    rng = random.Random(seed)
    res = CheckResult("", True, count)
    widest = from_relations([f"a{i}" for i in range(max_size)], [])
    for case in range(count):
        # the antichain pair has the largest product (7,828,354 opens at size 3)
        if case == 0:
            L = P = widest
        else:
            L = sampling.random_poset(rng, max_size)
            P = sampling.random_poset(rng, max_size)
        t0 = time.perf_counter()
        sl, sp = open_set_lattice(L), open_set_lattice(P)
        lhs = product_space(alexandrov_space(sl), alexandrov_space(sp), cap=COMPARATOR_CAP)
        rhs = alexandrov_space(sl.product(sp), cap=COMPARATOR_CAP)
        if not spaces_equal(lhs, rhs):
            res.note(f"product topology differs for L={L.up}, P={P.up}")
        if not sup_map_jointly_continuous(sl):
            res.note(f"sup map of sigma(L) not jointly continuous for L={L.up}")
        dt = time.perf_counter() - t0
        if dt > per_case:
            res.note(f"case L={L.up}, P={P.up} took {dt:.1f}s")
    return res


def run_suite(bound: int = 4, samples: int = 10_000, seed: int = 0) -> List[CheckResult]:
    """Run every property suite.

    ``bound`` is the m/n bound of the oracle window; ``samples`` scales the
    random triple count, and the remaining suites use their fixed sizes.
    """
    window = BWindow(bound, bound, CRITERION_WINDOW.slices, 2, 2)
    out = [
        check_oracle_equivalence(window),
        check_order_laws(samples, seed),
        check_codec_laws(),
        check_family_sups(seed=seed),
        check_a_closed(seed=seed),
        check_irreducible_subbase(seed=seed),
        check_not_principal(seed=seed),
        check_finite_sobriety(seed=seed),
        check_comparator(seed=seed),
    ]
    return sorted(out, key=lambda r: r.name)
