"""The countable posets M, L and B.

``M`` is the disjoint sum of the naturals and the nonempty words under the
prefix order.  ``L`` puts one copy ("slice") of ``M`` over every index pair
``a < b`` and adds a top; distinct slices are incomparable.  ``B`` is
``N x N x L`` with the order generated by four rules:

R1  ``(m, n, x) < (m, n, y)`` when ``x < y`` in ``L`` (so a slice element sits
    under the top-typed element with the same ``m, n``);
R2  ``(a, n, w@(a,b))  <  (f(a,b; y), n+1, T)`` for words ``y`` extending ``w``;
R3  ``(b, n, k@(a,b))  <  (f(a,b; [y]), n+1, T)`` for naturals ``y >= k``;
R4  ``(f(a,b; s), n, k@(a,b))  <  (f(a,b; s.y), n, T)`` for naturals ``y >= k``.

R2 to R4 already absorb a preceding R1 step, which makes :func:`b_leq` a
closed-form test.  :func:`b_leq_oracle` recomputes the same order as graph
reachability over a finite window and shares nothing with it but the codec.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from graphlib import TopologicalSorter
from itertools import product as _cartesian
from typing import Dict, Iterator, List, Tuple, Union

from . import codec
from .codec import SlicePair, Word, f_decode, f_encode, is_prefix
from .errors import BoundTooSmall, PreconditionError

__all__ = [
    "Nat",
    "Wrd",
    "MElem",
    "Top",
    "TOP",
    "Slice",
    "LElem",
    "BElem",
    "m_leq",
    "l_leq",
    "b_leq",
    "b_lt",
    "BWindow",
    "words_upto",
    "b_enumerate",
    "b_leq_oracle",
    "BOracle",
    "oracle_for",
    "NatTail",
    "WordTail",
    "BFamily",
    "family_sup",
    "is_b_maximal",
    "Sing",
    "WordExt",
    "NumExt",
    "AppendExt",
    "b_upper_max_families",
]


@dataclass(frozen=True, slots=True)
class Nat:
    k: int

    def __repr__(self):
        return f"Nat({self.k})"


@dataclass(frozen=True, slots=True)
class Wrd:
    w: Word

    def __post_init__(self):
        object.__setattr__(self, "w", codec.as_word(self.w))

    def __repr__(self):
        return f"Wrd({list(self.w)})"


MElem = Union[Nat, Wrd]


class Top:
    """The top of ``L``; use the singleton :data:`TOP`."""

    __slots__ = ()
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "TOP"

    def __reduce__(self):
        return (Top, ())


TOP = Top()


@dataclass(frozen=True, slots=True)
class Slice:
    s: SlicePair
    x: MElem

    def __post_init__(self):
        object.__setattr__(self, "s", codec.check_slice(self.s))

    def __repr__(self):
        return f"{self.x!r}@{self.s}"


LElem = Union[Top, Slice]


@dataclass(frozen=True, slots=True)
class BElem:
    m: int
    n: int
    l: LElem

    def __repr__(self):
        return f"B({self.m},{self.n},{self.l!r})"


def m_leq(x: MElem, y: MElem) -> bool:
    if type(x) is not type(y):
        return False
    if type(x) is Nat:
        return x.k <= y.k
    return is_prefix(x.w, y.w)


def l_leq(x: LElem, y: LElem) -> bool:
    if y is TOP:
        return True
    if x is TOP:
        return False
    return x.s == y.s and m_leq(x.x, y.x)


def b_leq(u: BElem, v: BElem) -> bool:
    lv = v.l
    if lv is not TOP:
        # only R1 reaches a slice-typed element
        return u.m == v.m and u.n == v.n and l_leq(u.l, lv)
    lu = u.l
    if u.m == v.m and u.n == v.n:
        return True
    if lu is TOP:
        return False
    x = lu.x
    a, b = lu.s
    if type(x) is Wrd:
        if u.m != a or v.n != u.n + 1:
            return False
        d = f_decode(v.m)
        return d is not None and d[0] == lu.s and is_prefix(x.w, d[1])
    if v.n == u.n + 1 and u.m == b:
        d = f_decode(v.m)
        if d is not None and d[0] == lu.s and len(d[1]) == 1 and d[1][0] >= x.k:
            return True
    if v.n == u.n:
        du = f_decode(u.m)
        if du is not None and du[0] == lu.s:
            dv = f_decode(v.m)
            if dv is not None and dv[0] == lu.s:
                s, y = du[1], dv[1]
                return len(y) == len(s) + 1 and y[:-1] == s and y[-1] >= x.k
    return False


def b_lt(u: BElem, v: BElem) -> bool:
    return u != v and b_leq(u, v)


def is_b_maximal(e: BElem) -> bool:
    return e.l is TOP


# --- truncation windows and the reachability oracle -----------------------


def words_upto(max_len: int, max_letter: int) -> List[Word]:
    """Nonempty words by length, then lexicographically."""
    out = []
    for length in range(1, max_len + 1):
        out.extend(_cartesian(range(max_letter + 1), repeat=length))
    return out


@dataclass(frozen=True)
class BWindow:
    """Bounds for a finite truncation of ``B``.

    Covers ``m <= max_m`` plus every f-code of an in-window slice and word,
    ``n <= max_n``, the listed slices, words up to ``max_len`` letters and
    letters (and naturals in ``M``) up to ``max_letter``.
    """

    max_m: int
    max_n: int
    slices: Tuple[SlicePair, ...]
    max_len: int
    max_letter: int

    def __post_init__(self):
        object.__setattr__(self, "slices", tuple(codec.check_slice(s) for s in self.slices))
        if min(self.max_m, self.max_n, self.max_letter) < 0 or self.max_len < 1 or not self.slices:
            raise ValueError(f"empty window bounds: {self!r}")

    def words(self) -> List[Word]:
        return words_upto(self.max_len, self.max_letter)

    def m_values(self) -> List[int]:
        vals = set(range(self.max_m + 1))
        for s in self.slices:
            for w in self.words():
                vals.add(f_encode(s, w))
        return sorted(vals)

    def l_values(self) -> List[LElem]:
        out: List[LElem] = [TOP]
        for s in self.slices:
            out.extend(Slice(s, Nat(k)) for k in range(self.max_letter + 1))
            out.extend(Slice(s, Wrd(w)) for w in self.words())
        return out


def b_enumerate(window: BWindow) -> List[BElem]:
    return [
        BElem(m, n, l)
        for m in window.m_values()
        for n in range(window.max_n + 1)
        for l in window.l_values()
    ]


class BOracle:
    """Reflexive-transitive closure of the generator edges inside a window."""

    def __init__(self, window: BWindow):
        self.window = window
        self.elements = b_enumerate(window)
        self.index: Dict[BElem, int] = {e: i for i, e in enumerate(self.elements)}
        self.edges = self._generator_edges()
        self.reach = self._closure()

    def _generator_edges(self) -> Dict[int, set]:
        w = self.window
        idx = self.index
        words = w.words()
        succ: Dict[int, set] = {i: set() for i in range(len(self.elements))}

        def add(u: BElem, v: BElem):
            j = idx.get(v)
            if j is not None:
                succ[idx[u]].add(j)

        for m in w.m_values():
            for n in range(w.max_n + 1):
                for s in w.slices:
                    a, b = s
                    slice_elems = [Slice(s, Nat(k)) for k in range(w.max_letter + 1)]
                    slice_elems += [Slice(s, Wrd(x)) for x in words]
                    for x in slice_elems:
                        u = BElem(m, n, x)
                        # R1: strictly larger in L, same m and n
                        add(u, BElem(m, n, TOP))
                        for y in slice_elems:
                            if x != y and m_leq(x.x, y.x):
                                add(u, BElem(m, n, y))
                        if type(x.x) is Wrd and m == a:
                            add(u, BElem(f_encode(s, x.x.w), n + 1, TOP))
                        if type(x.x) is Nat and m == b:
                            add(u, BElem(f_encode(s, (x.x.k,)), n + 1, TOP))
                        if type(x.x) is Nat:
                            d = f_decode(m)
                            if d is not None and d[0] == s and len(d[1]) < w.max_len:
                                add(u, BElem(f_encode(s, d[1] + (x.x.k,)), n, TOP))
        return succ

    def _closure(self) -> List[int]:
        reach = [0] * len(self.elements)
        for i in TopologicalSorter(self.edges).static_order():
            r = 1 << i
            for j in self.edges[i]:
                r |= reach[j]
            reach[i] = r
        return reach

    def leq(self, u: BElem, v: BElem) -> bool:
        try:
            i, j = self.index[u], self.index[v]
        except KeyError as exc:
            raise BoundTooSmall(f"{exc.args[0]!r} lies outside {self.window!r}") from None
        return bool(self.reach[i] >> j & 1)


@lru_cache(maxsize=8)
def oracle_for(window: BWindow) -> BOracle:
    return BOracle(window)


def b_leq_oracle(u: BElem, v: BElem, window: BWindow) -> bool:
    return oracle_for(window).leq(u, v)


# --- directed families and their sups --------------------------------------


@dataclass(frozen=True)
class NatTail:
    """Naturals ``start, start + step, ...`` (cofinal in N when step >= 1)."""

    start: int = 0
    step: int = 1


@dataclass(frozen=True)
class WordTail:
    """Words ``seed``, ``seed.p0``, ``seed.p0.p1``, ... with ``pattern`` cycled."""

    seed: Word
    pattern: Tuple[int, ...]


@dataclass(frozen=True)
class BFamily:
    m: int
    n: int
    slice: SlicePair
    tail: Union[NatTail, WordTail]

    def validate(self) -> None:
        codec.check_slice(self.slice)
        t = self.tail
        if isinstance(t, NatTail):
            if t.step < 1 or t.start < 0:
                raise PreconditionError("a constant chain has a greatest element")
        elif isinstance(t, WordTail):
            codec.as_word(t.seed)
            if not t.pattern:
                raise PreconditionError("a constant chain has a greatest element")
        else:
            raise PreconditionError(f"unknown tail {t!r}")

    def member(self, k: int) -> BElem:
        t = self.tail
        if isinstance(t, NatTail):
            x: MElem = Nat(t.start + k * t.step)
        else:
            ext = tuple(t.pattern[i % len(t.pattern)] for i in range(k))
            x = Wrd(tuple(t.seed) + ext)
        return BElem(self.m, self.n, Slice(self.slice, x))

    def members(self, count: int) -> Iterator[BElem]:
        return (self.member(k) for k in range(count))


def family_sup(d: BFamily) -> BElem:
    d.validate()
    return BElem(d.m, d.n, TOP)


# --- symbolic upper bounds inside max B ------------------------------------


@dataclass(frozen=True)
class Sing:
    e: BElem

    def contains(self, t: BElem) -> bool:
        return t == self.e

    def sample(self, depth: int) -> List[BElem]:
        return [self.e]


@dataclass(frozen=True)
class WordExt:
    """``{(f(slice; y), level, T) : y extends base}``"""

    slice: SlicePair
    base: Word
    level: int

    def contains(self, t: BElem) -> bool:
        if t.l is not TOP or t.n != self.level:
            return False
        d = f_decode(t.m)
        return d is not None and d[0] == self.slice and is_prefix(self.base, d[1])

    def sample(self, depth: int) -> List[BElem]:
        out = []
        for extra in range(depth + 1):
            for tail in _cartesian(range(depth + 1), repeat=extra):
                out.append(BElem(f_encode(self.slice, self.base + tail), self.level, TOP))
        return out


@dataclass(frozen=True)
class NumExt:
    """``{(f(slice; [y]), level, T) : y >= base}``"""

    slice: SlicePair
    base: int
    level: int

    def contains(self, t: BElem) -> bool:
        if t.l is not TOP or t.n != self.level:
            return False
        d = f_decode(t.m)
        return d is not None and d[0] == self.slice and len(d[1]) == 1 and d[1][0] >= self.base

    def sample(self, depth: int) -> List[BElem]:
        return [
            BElem(f_encode(self.slice, (y,)), self.level, TOP)
            for y in range(self.base, self.base + depth + 1)
        ]


@dataclass(frozen=True)
class AppendExt:
    """``{(f(slice; prefix.y), level, T) : y >= base}``"""

    slice: SlicePair
    prefix: Word
    base: int
    level: int

    def contains(self, t: BElem) -> bool:
        if t.l is not TOP or t.n != self.level:
            return False
        d = f_decode(t.m)
        if d is None or d[0] != self.slice:
            return False
        y = d[1]
        return len(y) == len(self.prefix) + 1 and y[:-1] == self.prefix and y[-1] >= self.base

    def sample(self, depth: int) -> List[BElem]:
        return [
            BElem(f_encode(self.slice, self.prefix + (y,)), self.level, TOP)
            for y in range(self.base, self.base + depth + 1)
        ]


def b_upper_max_families(e: BElem) -> list:
    """``up(e) & max B`` as a finite union of families."""
    if e.l is TOP:
        return [Sing(e)]
    s, x = e.l.s, e.l.x
    out: list = [Sing(BElem(e.m, e.n, TOP))]
    if type(x) is Wrd:
        if e.m == s[0]:
            out.append(WordExt(s, x.w, e.n + 1))
        return out
    if e.m == s[1]:
        out.append(NumExt(s, x.k, e.n + 1))
    d = f_decode(e.m)
    if d is not None and d[0] == s:
        out.append(AppendExt(s, d[1], x.k, e.n))
    return out
