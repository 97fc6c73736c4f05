"""Seeded random generators for posets, gallery points and directed families.

Everything takes an explicit :class:`random.Random` so suites are
reproducible from a single seed.
"""

from __future__ import annotations

import random
from typing import Optional

from . import codec
from .codec import f_encode, phi
from .countable import (
    TOP,
    BElem,
    BFamily,
    Nat,
    NatTail,
    Slice,
    WordTail,
    Wrd,
    b_upper_max_families,
)
from .pair import (
    TOP1,
    TOP2,
    CoordFamily,
    Fn,
    FnChain,
    FnRep,
    InB,
    ProductPoint,
    XChain,
    XRep,
    Xf,
    p1_upper_max_families,
    p2_upper_max_families,
)
from .poset import FinitePoset, from_relations

SLICES = ((0, 1), (0, 2), (1, 2), (0, 3), (2, 3))


def random_poset(rng: random.Random, max_size: int = 8, size: Optional[int] = None) -> FinitePoset:
    """Random DAG on ``e0..e{n-1}`` (edges only from lower to higher index)."""
    n = size if size is not None else rng.randint(1, max_size)
    p = rng.uniform(0.1, 0.7)
    labels = [f"e{i}" for i in range(n)]
    pairs = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return from_relations(labels, pairs)


def random_word(rng: random.Random, max_len: int = 3, max_letter: int = 3) -> codec.Word:
    return tuple(rng.randint(0, max_letter) for _ in range(rng.randint(1, max_len)))


def random_slice(rng: random.Random):
    return rng.choice(SLICES)


def random_m(rng: random.Random, s) -> int:
    kind = rng.randrange(4)
    if kind == 0:
        return s[0]
    if kind == 1:
        return s[1]
    if kind == 2:
        return f_encode(s, random_word(rng, 2, 2))
    return rng.randint(0, 4)


def random_b(rng: random.Random, max_n: int = 3) -> BElem:
    s = random_slice(rng)
    m, n = random_m(rng, s), rng.randint(0, max_n)
    r = rng.random()
    if r < 0.3:
        return BElem(m, n, TOP)
    if r < 0.65:
        return BElem(m, n, Slice(s, Nat(rng.randint(0, 3))))
    return BElem(m, n, Slice(s, Wrd(random_word(rng, 2, 2))))


def random_b_above(rng: random.Random, u: BElem) -> BElem:
    """An element of B above ``u`` (possibly ``u`` itself)."""
    r = rng.random()
    if r < 0.15 or u.l is TOP:
        return u
    if r < 0.45:
        x = u.l.x
        if isinstance(x, Nat):
            bigger = Slice(u.l.s, Nat(x.k + rng.randint(0, 2)))
        else:
            bigger = Slice(u.l.s, Wrd(x.w + random_word(rng, 2, 2)[: rng.randint(0, 2)]))
        return BElem(u.m, u.n, bigger if rng.random() < 0.6 else TOP)
    fam = rng.choice(b_upper_max_families(u))
    return rng.choice(fam.sample(2))


def random_fnrep(rng: random.Random) -> FnRep:
    s = random_slice(rng)
    values = [rng.randint(0, 3), f_encode(s, random_word(rng, 2, 2)), s[0], s[1]]
    table = {rng.randint(0, 4): rng.choice(values) for _ in range(rng.randint(0, 3))}
    return FnRep.make(table, rng.choice(values))


def random_xrep(rng: random.Random) -> XRep:
    table = {}
    for _ in range(rng.randint(0, 3)):
        k = rng.randint(0, 4)
        table[k] = f_encode(phi(k), random_word(rng, 2, 2))
    return XRep.make(table)


def random_p1(rng: random.Random):
    r = rng.random()
    if r < 0.05:
        return TOP1
    if r < 0.45:
        return Fn(random_fnrep(rng), rng.randint(0, 4))
    return InB(random_b(rng))


def random_p2(rng: random.Random):
    r = rng.random()
    if r < 0.05:
        return TOP2
    if r < 0.45:
        return Xf(random_xrep(rng), rng.randint(0, 4), rng.randint(0, 3))
    return InB(random_b(rng))


def random_p1_above(rng: random.Random, u):
    if u is TOP1 or rng.random() < 0.1:
        return u if rng.random() < 0.5 else TOP1
    if isinstance(u, Fn):
        if rng.random() < 0.4:
            return Fn(u.f, u.n + rng.randint(0, 3))
        return InB(rng.choice(p1_upper_max_families(u)[0].sample(3)))
    return InB(random_b_above(rng, u.e))


def random_p2_above(rng: random.Random, u):
    if u is TOP2 or rng.random() < 0.1:
        return u if rng.random() < 0.5 else TOP2
    if isinstance(u, Xf):
        if rng.random() < 0.4:
            return Xf(u.f, u.n + rng.randint(0, 3), u.k)
        return InB(rng.choice(p2_upper_max_families(u)[0].sample(3)))
    return InB(random_b_above(rng, u.e))


def random_point(rng: random.Random) -> ProductPoint:
    """A product point in A about half of the time (built under a diagonal)."""
    if rng.random() < 0.5:
        return ProductPoint(random_p1(rng), random_p2(rng))
    t = BElem(random_m(rng, random_slice(rng)), rng.randint(0, 3), TOP)
    return ProductPoint(_random_below_top(rng, t), _random_below_top(rng, t))


def _random_below_top(rng: random.Random, t: BElem):
    r = rng.random()
    if r < 0.4:
        return InB(t)
    s = random_slice(rng)
    return InB(BElem(t.m, t.n, Slice(s, Nat(rng.randint(0, 3)))))


# --- directed families inside A --------------------------------------------


def random_bfamily(rng: random.Random, m: int, n: int, s, nat: Optional[bool] = None) -> BFamily:
    if nat is None:
        nat = rng.random() < 0.5
    if nat:
        return BFamily(m, n, s, NatTail(rng.randint(0, 3), rng.randint(1, 2)))
    pattern = tuple(rng.randint(0, 2) for _ in range(rng.randint(1, 2)))
    return BFamily(m, n, s, WordTail(random_word(rng, 2, 2), pattern))


def random_family_in_a(rng: random.Random) -> CoordFamily:
    """A coordinatewise directed family all of whose members lie in A.

    Kinds: a slice chain beside anything below the same top-typed element; a
    nat chain at ``(f(s0), n0)`` beside the word ``x* <= s0`` one level lower
    (the R4/R2 meeting); a slice chain beside a function point whose
    diagonal family reaches the chain's top.
    """
    kind = rng.randrange(4)
    moving = rng.choice(("left", "right"))
    s = random_slice(rng)
    if kind == 0:
        m, n = random_m(rng, s), rng.randint(0, 3)
        fam = random_bfamily(rng, m, n, s)
        if rng.random() < 0.5:
            fixed = InB(BElem(m, n, TOP))
        else:
            fixed = InB(BElem(m, n, Slice(random_slice(rng), Nat(rng.randint(0, 3)))))
        return CoordFamily(moving, fixed, fam)
    if kind == 1:
        s0 = random_word(rng, 2, 3)
        n0 = rng.randint(1, 3)
        fam = random_bfamily(rng, f_encode(s, s0), n0, s, nat=True)
        xstar = s0[: rng.randint(1, len(s0))]
        fixed = InB(BElem(s[0], n0 - 1, Slice(s, Wrd(xstar))))
        return CoordFamily(moving, fixed, fam)
    if kind == 2:
        f = random_fnrep(rng)
        n = rng.randint(0, 3)
        lvl = n + rng.randint(0, 3)
        fam = random_bfamily(rng, f(lvl), lvl, s)
        return CoordFamily("right", Fn(f, n), fam)
    g = random_xrep(rng)
    n, k0 = rng.randint(0, 3), rng.randint(0, 3)
    m = n + rng.randint(0, 3)
    fam = random_bfamily(rng, g(m), k0, s)
    return CoordFamily("left", Xf(g, n, k0), fam)


def random_function_chain(rng: random.Random) -> CoordFamily:
    """A family moving through function levels; its sup is TOP1 or TOP2."""
    if rng.random() < 0.5:
        f = random_fnrep(rng)
        return CoordFamily("left", random_p2(rng), FnChain(f, rng.randint(0, 3)))
    g = random_xrep(rng)
    return CoordFamily("right", random_p1(rng), XChain(g, rng.randint(0, 3), rng.randint(0, 3)))
