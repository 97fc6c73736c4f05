"""The dcpos P1 and P2, their product, and the closed set A.

``P1 = (N^N x N) + B + {TOP1}`` and ``P2 = (X x N x N) + B + {TOP2}`` where
``X`` holds the choice functions with ``f(n)`` in ``E_n``.  Only finitely
presented functions are representable: an override table over a constant
tail (:class:`FnRep`) or over the fixed default choice ``d(n)`` (:class:`XRep`).
Deciding the orders only ever evaluates a function at finitely many
determined arguments, so nothing is lost on the points that are built.

``A`` is the down-closure of the diagonal ``{(t, t) : t in max B}`` in
``P1 x P2``.  Membership is decided symbolically: the maximal elements of
``B`` above a point form a finite union of parametric families, and a point
is in ``A`` iff some family above its left coordinate meets some family above
its right coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from . import codec
from .codec import default_choice, e_index, f_decode, f_encode, is_prefix, phi_inv
from .countable import (
    TOP,
    AppendExt,
    BElem,
    BFamily,
    Nat,
    NumExt,
    Sing,
    Slice,
    WordExt,
    Wrd,
    b_leq,
    b_upper_max_families,
    family_sup,
)
from .errors import FamilyNotInA, InvalidXRep, PreconditionError

__all__ = [
    "FnRep",
    "XRep",
    "Fn",
    "Xf",
    "InB",
    "Top1",
    "Top2",
    "TOP1",
    "TOP2",
    "P1Point",
    "P2Point",
    "ProductPoint",
    "p1_leq",
    "p2_leq",
    "p12_leq",
    "FnDiag",
    "XDiag",
    "p1_upper_max_families",
    "p2_upper_max_families",
    "family_intersect",
    "a_member",
    "a_witness",
    "Link",
    "interleave_chain",
    "climb_level",
    "Exhausted",
    "diagonal_point",
    "top_typed_candidates",
    "a_escape",
    "not_point_closure",
    "FnChain",
    "XChain",
    "CoordFamily",
    "coord_family_sup",
    "a_closed_check",
]


# --- finitely presented functions ------------------------------------------


@dataclass(frozen=True)
class FnRep:
    """``k -> overrides.get(k, tail)``; normalised so equality is extensional."""

    overrides: Tuple[Tuple[int, int], ...]
    tail: int

    def __post_init__(self):
        ov = dict(self.overrides)
        norm = tuple(sorted((int(k), int(v)) for k, v in ov.items() if v != self.tail))
        if any(k < 0 or v < 0 for k, v in norm) or self.tail < 0:
            raise ValueError("functions are N -> N")
        object.__setattr__(self, "overrides", norm)

    @classmethod
    def make(cls, overrides: Mapping[int, int] = (), tail: int = 0) -> "FnRep":
        return cls(tuple(dict(overrides).items()), tail)

    def __call__(self, k: int) -> int:
        for a, v in self.overrides:
            if a == k:
                return v
        return self.tail

    @property
    def table(self) -> Dict[int, int]:
        return dict(self.overrides)


@dataclass(frozen=True)
class XRep:
    """A member of ``X``: override table over the default ``d(n) = f([0]) in E_n``."""

    overrides: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        ov = dict(self.overrides)
        for k, v in ov.items():
            if k < 0 or e_index(v) != k:
                raise InvalidXRep(f"value {v} at index {k} is not in E_{k}")
        norm = tuple(sorted((int(k), int(v)) for k, v in ov.items() if v != default_choice(k)))
        object.__setattr__(self, "overrides", norm)

    @classmethod
    def make(cls, overrides: Mapping[int, int] = ()) -> "XRep":
        return cls(tuple(dict(overrides).items()))

    def __call__(self, k: int) -> int:
        for a, v in self.overrides:
            if a == k:
                return v
        return default_choice(k)

    @property
    def table(self) -> Dict[int, int]:
        return dict(self.overrides)


# --- points -----------------------------------------------------------------


@dataclass(frozen=True)
class Fn:
    f: FnRep
    n: int


@dataclass(frozen=True)
class Xf:
    f: XRep
    n: int
    k: int


@dataclass(frozen=True)
class InB:
    e: BElem


class Top1:
    __slots__ = ()
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "TOP1"

    def __reduce__(self):
        return (Top1, ())


class Top2:
    __slots__ = ()
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "TOP2"

    def __reduce__(self):
        return (Top2, ())


TOP1 = Top1()
TOP2 = Top2()

P1Point = Union[Fn, InB, Top1]
P2Point = Union[Xf, InB, Top2]


@dataclass(frozen=True)
class ProductPoint:
    x: P1Point
    y: P2Point


def p1_leq(u: P1Point, v: P1Point) -> bool:
    if u == v or v is TOP1:
        return True
    if u is TOP1:
        return False
    if isinstance(u, Fn):
        if isinstance(v, Fn):
            return u.f == v.f and u.n <= v.n
        if isinstance(v, InB):
            # (f, n) < (f, k) < (f(k), k, T) for k >= n
            e = v.e
            return e.l is TOP and e.n >= u.n and u.f(e.n) == e.m
        return False
    if isinstance(u, InB) and isinstance(v, InB):
        return b_leq(u.e, v.e)
    return False


def p2_leq(u: P2Point, v: P2Point) -> bool:
    if u == v or v is TOP2:
        return True
    if u is TOP2:
        return False
    if isinstance(u, Xf):
        if isinstance(v, Xf):
            return u.f == v.f and u.k == v.k and u.n <= v.n
        if isinstance(v, InB):
            # (f, n, k) < (f, m, k) < (f(m), k, T); f(m) in E_m pins m down
            e = v.e
            if e.l is not TOP or e.n != u.k:
                return False
            m = e_index(e.m)
            return m is not None and m >= u.n and u.f(m) == e.m
        return False
    if isinstance(u, InB) and isinstance(v, InB):
        return b_leq(u.e, v.e)
    return False


def p12_leq(u: ProductPoint, v: ProductPoint) -> bool:
    return p1_leq(u.x, v.x) and p2_leq(u.y, v.y)


# --- families above function-typed points -----------------------------------


@dataclass(frozen=True)
class FnDiag:
    """``{(f(k), k, T) : k >= min_level}``"""

    f: FnRep
    min_level: int

    def contains(self, t: BElem) -> bool:
        return t.l is TOP and t.n >= self.min_level and self.f(t.n) == t.m

    def sample(self, depth: int) -> List[BElem]:
        hi = max([self.min_level] + [k for k, _ in self.f.overrides]) + depth
        return [BElem(self.f(k), k, TOP) for k in range(self.min_level, hi + 1)]


@dataclass(frozen=True)
class XDiag:
    """``{(f(m), level, T) : m >= min_index}``"""

    f: XRep
    min_index: int
    level: int

    def contains(self, t: BElem) -> bool:
        if t.l is not TOP or t.n != self.level:
            return False
        m = e_index(t.m)
        return m is not None and m >= self.min_index and self.f(m) == t.m

    def sample(self, depth: int) -> List[BElem]:
        hi = max([self.min_index] + [k for k, _ in self.f.overrides]) + depth
        return [BElem(self.f(m), self.level, TOP) for m in range(self.min_index, hi + 1)]


def p1_upper_max_families(u: P1Point) -> list:
    if isinstance(u, Fn):
        return [FnDiag(u.f, u.n)]
    if isinstance(u, InB):
        return b_upper_max_families(u.e)
    return []


def p2_upper_max_families(u: P2Point) -> list:
    if isinstance(u, Xf):
        return [XDiag(u.f, u.n, u.k)]
    if isinstance(u, InB):
        return b_upper_max_families(u.e)
    return []


# --- intersecting two families ----------------------------------------------

_CODE_KINDS = (WordExt, NumExt, AppendExt)


def _word_meet(F, G) -> Optional[codec.Word]:
    """A common word of two code families on the same slice and level."""
    if isinstance(G, WordExt) and not isinstance(F, WordExt):
        F, G = G, F
    if isinstance(F, WordExt):
        b = F.base
        if isinstance(G, WordExt):
            if is_prefix(b, G.base):
                return G.base
            if is_prefix(G.base, b):
                return b
            return None
        if isinstance(G, NumExt):
            if len(b) == 1 and b[0] >= G.base:
                return b
            return None
        # AppendExt: words prefix.y with y >= base
        p = G.prefix
        if is_prefix(b, p):
            return p + (G.base,)
        if len(b) == len(p) + 1 and b[:-1] == p and b[-1] >= G.base:
            return b
        return None
    if isinstance(F, NumExt) and isinstance(G, NumExt):
        return (max(F.base, G.base),)
    if isinstance(F, AppendExt) and isinstance(G, AppendExt):
        if F.prefix == G.prefix:
            return F.prefix + (max(F.base, G.base),)
        return None
    # NumExt against AppendExt: lengths 1 and >= 2 never meet
    return None


def family_intersect(F, G) -> Optional[BElem]:
    """A common element of two upper-bound families, or ``None``."""
    if isinstance(F, Sing):
        return F.e if G.contains(F.e) else None
    if isinstance(G, Sing):
        return G.e if F.contains(G.e) else None

    if isinstance(F, _CODE_KINDS) and isinstance(G, _CODE_KINDS):
        if F.slice != G.slice or F.level != G.level:
            return None
        w = _word_meet(F, G)
        return None if w is None else BElem(f_encode(F.slice, w), F.level, TOP)

    if isinstance(G, FnDiag) and not isinstance(F, FnDiag):
        F, G = G, F
    if isinstance(F, FnDiag):
        if isinstance(G, FnDiag):
            lo = max(F.min_level, G.min_level)
            keys = {k for k, _ in F.f.overrides} | {k for k, _ in G.f.overrides}
            # one argument past every override stands for the whole tail
            cands = sorted(k for k in keys if k >= lo) + [max([lo] + [k + 1 for k in keys])]
            for k in cands:
                if F.f(k) == G.f(k):
                    return BElem(F.f(k), k, TOP)
            return None
        # G has a single level: only that argument can work
        lvl = G.level
        if lvl < F.min_level:
            return None
        t = BElem(F.f(lvl), lvl, TOP)
        return t if G.contains(t) else None

    if isinstance(G, XDiag) and not isinstance(F, XDiag):
        F, G = G, F
    if isinstance(F, XDiag):
        if F.level != G.level:
            return None
        if isinstance(G, XDiag):
            lo = max(F.min_index, G.min_index)
            keys = {k for k, _ in F.f.overrides} | {k for k, _ in G.f.overrides}
            cands = sorted(k for k in keys if k >= lo) + [max([lo] + [k + 1 for k in keys])]
            for m in cands:
                if F.f(m) == G.f(m):
                    return BElem(F.f(m), F.level, TOP)
            return None
        # a code family lives in one E_m
        m = phi_inv(G.slice)
        if m < F.min_index:
            return None
        t = BElem(F.f(m), F.level, TOP)
        return t if G.contains(t) else None

    raise TypeError(f"unsupported family pair {type(F).__name__}, {type(G).__name__}")


def a_witness(p: ProductPoint) -> Optional[BElem]:
    """A top-typed ``t`` with ``p <= (t, t)``, or ``None`` if ``p`` is not in A."""
    for F in p1_upper_max_families(p.x):
        for G in p2_upper_max_families(p.y):
            t = family_intersect(F, G)
            if t is not None:
                return t
    return None


def a_member(p: ProductPoint) -> bool:
    return a_witness(p) is not None


def diagonal_point(t: BElem) -> ProductPoint:
    return ProductPoint(InB(t), InB(t))


# --- the constructive chains behind irreducibility ---------------------------


@dataclass(frozen=True)
class Link:
    lower: BElem
    upper: BElem
    rule: str
    holds: bool


def _link(lower: BElem, upper: BElem, rule: str) -> Link:
    return Link(lower, upper, rule, lower != upper and b_leq(lower, upper))


def interleave_chain(m1: int, m2: int, n: int, letters: Sequence[int]) -> List[Link]:
    """The zig-zag that joins two diagonal points on the same level.

    With ``s = (m1, m2)`` and ``w_j = letters[:j+1]``:

    * ``(m2, n, k0@s) < (f(s; [k0]), n+1, T)`` by R3;
    * for ``j >= 1``, ``(f(s; w_{j-1}), n+1, kj@s)`` lies under the previous
      top-typed element (R1) and under ``(f(s; w_j), n+1, T)`` (R4);
    * ``(m1, n, w_j@s) < (f(s; w_j), n+1, T)`` by R2, joining the other side.

    Every link is recorded with its ``b_leq`` verdict.
    """
    if not 0 <= m1 < m2:
        raise PreconditionError(f"need m1 < m2, got {m1}, {m2}")
    letters = codec.as_word(letters)
    s = (m1, m2)
    links: List[Link] = []
    word = letters[:1]
    top = BElem(f_encode(s, word), n + 1, TOP)
    links.append(_link(BElem(m2, n, Slice(s, Nat(letters[0]))), top, "R3"))
    links.append(_link(BElem(m1, n, Slice(s, Wrd(word))), top, "R2"))
    for k in letters[1:]:
        step = BElem(f_encode(s, word), n + 1, Slice(s, Nat(k)))
        links.append(_link(step, top, "R1"))
        word = word + (k,)
        top = BElem(f_encode(s, word), n + 1, TOP)
        links.append(_link(step, top, "R4"))
        links.append(_link(BElem(m1, n, Slice(s, Wrd(word))), top, "R2"))
    return links


def climb_level(m: int, n: int, k0: int) -> BElem:
    """Lift the diagonal point at ``(m, n)`` one level up via slice ``(m, m+1)``.

    ``(m, n, [k0]@(m, m+1)) < (f(m, m+1; [k0]), n+1, T)`` by R2, and the
    source lies under ``(m, n, T)``.
    """
    s = (m, m + 1)
    target = BElem(f_encode(s, (k0,)), n + 1, TOP)
    source = BElem(m, n, Slice(s, Wrd((k0,))))
    if not (b_leq(source, target) and b_leq(source, BElem(m, n, TOP))):
        raise AssertionError(f"climb link failed at {source!r}")
    return target


# --- semi-decision searches --------------------------------------------------


@dataclass(frozen=True)
class Exhausted:
    budget: int

    def __bool__(self):
        return False


def top_typed_candidates(budget: int):
    """Top-typed elements ``(m, n, T)`` in Cantor order of ``(m, n)``."""
    for j in range(budget):
        m, n = codec.unpair(j)
        yield BElem(m, n, TOP)


def a_escape(F1: Iterable[ProductPoint], F2: Iterable[ProductPoint], budget: int = 10_000):
    """A diagonal point of A outside ``down(F1)`` and ``down(F2)``."""
    gens = list(F1) + list(F2)
    for t in top_typed_candidates(budget):
        d = diagonal_point(t)
        if not any(p12_leq(d, g) for g in gens):
            return d
    return Exhausted(budget)


def not_point_closure(p: ProductPoint, budget: int = 10_000):
    """A top-typed ``t`` with ``(t, t)`` in A but not below ``p``."""
    for t in top_typed_candidates(budget):
        if not p12_leq(diagonal_point(t), p):
            return t
    return Exhausted(budget)


# --- coordinatewise directed families ---------------------------------------


@dataclass(frozen=True)
class FnChain:
    """``(f, n)`` for ``n >= start``; its sup in P1 is TOP1."""

    f: FnRep
    start: int


@dataclass(frozen=True)
class XChain:
    """``(f, n, k)`` for ``n >= start``; its sup in P2 is TOP2."""

    f: XRep
    start: int
    k: int


@dataclass(frozen=True)
class CoordFamily:
    """A directed subset of ``P1 x P2`` with one coordinate held fixed.

    ``moving`` is ``"left"`` or ``"right"``; ``chain`` describes the moving
    coordinate and ``fixed`` is the other one.
    """

    moving: str
    fixed: Union[P1Point, P2Point]
    chain: Union[BFamily, FnChain, XChain]

    def __post_init__(self):
        if self.moving not in ("left", "right"):
            raise ValueError("moving must be 'left' or 'right'")

    def _moving_point(self, k: int):
        c = self.chain
        if isinstance(c, BFamily):
            return InB(c.member(k))
        if isinstance(c, FnChain):
            return Fn(c.f, c.start + k)
        return Xf(c.f, c.start + k, c.k)

    def member(self, k: int) -> ProductPoint:
        if self.moving == "left":
            return ProductPoint(self._moving_point(k), self.fixed)
        return ProductPoint(self.fixed, self._moving_point(k))

    def horizon(self) -> int:
        """How many members to check before the family's shape is settled.

        Past every constant mentioned by the fixed point and the chain, the
        members only grow in one unbounded parameter, and each family above
        the fixed point pins that parameter to finitely many values.
        """
        consts = [0]
        for obj in (self.fixed, self.chain):
            consts.extend(small_constants(obj))
        return 4 + max(consts)


def small_constants(obj) -> List[int]:
    out: List[int] = []
    if isinstance(obj, InB):
        obj = obj.e
    if isinstance(obj, BElem):
        out += [obj.n]
        if obj.m < 64:
            out.append(obj.m)
        d = f_decode(obj.m)
        if d is not None:
            out += [len(d[1]), phi_inv(d[0])] + list(d[1]) + list(d[0])
        if obj.l is not TOP:
            out += list(obj.l.s)
            x = obj.l.x
            out += [x.k] if isinstance(x, Nat) else [len(x.w)] + list(x.w)
    elif isinstance(obj, (Fn, FnChain)):
        out += [getattr(obj, "n", 0), getattr(obj, "start", 0)]
        out += [k for k, _ in obj.f.overrides]
        values = [v for _, v in obj.f.overrides] + [obj.f.tail]
        out += [e for e in map(e_index, values) if e is not None]
    elif isinstance(obj, (Xf, XChain)):
        out += [getattr(obj, "n", 0), getattr(obj, "start", 0), obj.k]
        out += [k for k, _ in obj.f.overrides]
    elif isinstance(obj, BFamily):
        out += [obj.n, obj.m if obj.m < 64 else 0] + list(obj.slice)
        t = obj.tail
        out += [t.start] if hasattr(t, "start") else [len(t.seed)] + list(t.seed)
    return [min(int(c), 256) for c in out]


def coord_family_sup(d: CoordFamily) -> ProductPoint:
    c = d.chain
    if isinstance(c, BFamily):
        top = InB(family_sup(c))
    elif isinstance(c, FnChain):
        top = TOP1
    else:
        top = TOP2
    if d.moving == "left":
        return ProductPoint(top, d.fixed)
    return ProductPoint(d.fixed, top)


def a_closed_check(d: CoordFamily, members: Optional[int] = None) -> bool:
    """Does the sup of a directed family inside A stay in A?

    Raises :class:`FamilyNotInA` when a checked member already leaves A.
    """
    horizon = d.horizon() if members is None else members
    for k in range(horizon):
        p = d.member(k)
        if not a_member(p):
            raise FamilyNotInA(f"member {k} of the family is not in A: {p!r}")
    return a_member(coord_family_sup(d))
