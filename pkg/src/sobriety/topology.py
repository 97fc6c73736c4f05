"""Finite topological spaces and their sobriety.

A :class:`FiniteSpace` keeps its open sets as a canonically sorted array of
bit masks (``uint64`` words, little-endian word order), so topology equality
is array equality.

On a finite poset every directed subset contains its own supremum (the
pairwise upper bounds inside the set close up to a greatest element), so the
Scott-open sets are exactly the up-sets.  :func:`alexandrov_space` is
therefore also the Scott space of a finite poset.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import CarrierMismatch, NotALattice, NotT0, TooManyOpens
from .poset import FinitePoset, bits, popcount

__all__ = [
    "DEFAULT_OPEN_CAP",
    "FiniteSpace",
    "SobrietyReport",
    "alexandrov_space",
    "specialization_order",
    "closure",
    "irreducible_closed_sets",
    "irreducible_closed_sets_by_pairs",
    "is_sober",
    "open_set_lattice",
    "product_space",
    "spaces_equal",
    "sup_map_jointly_continuous",
    "sup_map_discontinuity",
    "set_label",
]

DEFAULT_OPEN_CAP = 1 << 20
_WORD = 64
_LOW = (1 << _WORD) - 1


def _nwords(n: int) -> int:
    return max(1, -(-n // _WORD))


def _to_words(mask: int, w: int) -> np.ndarray:
    return np.array([(mask >> (_WORD * k)) & _LOW for k in range(w)], dtype=np.uint64)


def _to_int(row: np.ndarray) -> int:
    out = 0
    for k, word in enumerate(row.tolist()):
        out |= int(word) << (_WORD * k)
    return out


def _canonical(rows: np.ndarray) -> np.ndarray:
    if rows.shape[1] == 1:
        return np.sort(rows, axis=0)
    order = np.lexsort(tuple(rows[:, k] for k in range(rows.shape[1])))
    return rows[order]


def _enumerate_closed_families(n: int, schedule: Sequence[Tuple[int, int]], cap: int) -> np.ndarray:
    """All subsets ``S`` of ``range(n)`` with ``x in S  =>  need[x] <= S``.

    ``schedule`` lists ``(x, need[x])`` so that ``need[x] - {x}`` only holds
    points listed earlier.  Each step keeps every family built so far and adds
    ``x`` to those that already contain ``need[x] - {x}``; no duplicates arise.
    """
    w = _nwords(n)
    sets = np.zeros((1, w), dtype=np.uint64)
    for x, need in schedule:
        need = _to_words(need & ~(1 << x), w)
        if need.any():
            ok = np.all((sets & need) == need, axis=1)
            extra = sets[ok]
        else:
            extra = sets.copy()
        extra[:, x // _WORD] |= np.uint64(1 << (x % _WORD))
        if len(sets) + len(extra) > cap:
            raise TooManyOpens(
                f"more than {cap} open sets; raise the cap to enumerate this space"
            )
        sets = np.concatenate([sets, extra])
    return sets


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    """Finite carrier plus its open sets (canonical ``uint64`` rows)."""

    carrier: Tuple[str, ...]
    opens: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        if len(set(self.carrier)) != len(self.carrier):
            raise ValueError("carrier labels must be distinct")

    @classmethod
    def from_masks(cls, carrier: Sequence[str], masks: Iterable[int], check: bool = True) -> "FiniteSpace":
        carrier = tuple(carrier)
        w = _nwords(len(carrier))
        uniq = sorted(set(int(m) for m in masks))
        rows = np.array([_to_words(m, w) for m in uniq], dtype=np.uint64).reshape(len(uniq), w)
        space = cls(carrier, _canonical(rows))
        if check:
            space.check_topology()
        return space

    @classmethod
    def from_open_labels(cls, carrier: Sequence[str], opens: Iterable[Iterable[str]]) -> "FiniteSpace":
        index = {lab: i for i, lab in enumerate(carrier)}
        masks = []
        for u in opens:
            m = 0
            for lab in u:
                m |= 1 << index[lab]
            masks.append(m)
        return cls.from_masks(carrier, masks)

    @property
    def full(self) -> int:
        return (1 << len(self.carrier)) - 1

    def __len__(self) -> int:
        return len(self.opens)

    def open_masks(self) -> List[int]:
        return [_to_int(r) for r in self.opens]

    def open_label_sets(self) -> List[List[str]]:
        return [[self.carrier[i] for i in bits(m)] for m in self.open_masks()]

    def closed_masks(self) -> List[int]:
        full = self.full
        return sorted(full & ~m for m in self.open_masks())

    def mask(self, labels: Iterable[str]) -> int:
        index = {lab: i for i, lab in enumerate(self.carrier)}
        m = 0
        for lab in labels:
            m |= 1 << index[lab]
        return m

    def members(self, mask: int) -> List[str]:
        return [self.carrier[i] for i in bits(mask)]

    def check_topology(self) -> None:
        masks = set(self.open_masks())
        if 0 not in masks or self.full not in masks:
            raise ValueError("empty set and carrier must be open")
        ms = sorted(masks)
        for i, u in enumerate(ms):
            for v in ms[i + 1:]:
                if (u | v) not in masks or (u & v) not in masks:
                    raise ValueError("open sets are not closed under union and intersection")

    def neighbourhoods(self) -> List[int]:
        """Smallest open set containing each point."""
        out = []
        for x in range(len(self.carrier)):
            col = (self.opens[:, x // _WORD] >> np.uint64(x % _WORD)) & np.uint64(1)
            rows = self.opens[col == 1]
            out.append(_to_int(np.bitwise_and.reduce(rows, axis=0)))
        return out

    def point_closures(self) -> List[int]:
        """``cl{x}`` for each point: the points whose neighbourhood contains x."""
        nb = self.neighbourhoods()
        out = [0] * len(nb)
        for y, n_y in enumerate(nb):
            for x in bits(n_y):
                out[x] |= 1 << y
        return out

    def is_t0(self) -> bool:
        nb = self.neighbourhoods()
        return len(set(nb)) == len(nb)


def set_label(labels: Sequence[str], mask: int) -> str:
    return "{" + ",".join(labels[i] for i in bits(mask)) + "}"


def _upset_masks(p: FinitePoset, cap: int) -> np.ndarray:
    # top-down: every strict upper bound is decided before its lower elements
    schedule = [(x, p.up[x]) for x in reversed(p.linear_extension())]
    return _enumerate_closed_families(len(p), schedule, cap)


def alexandrov_space(p: FinitePoset, cap: int = DEFAULT_OPEN_CAP) -> FiniteSpace:
    """The up-set (= Scott) topology of a finite poset."""
    return FiniteSpace(p.labels, _canonical(_upset_masks(p, cap)))


def specialization_order(s: FiniteSpace) -> FinitePoset:
    nb = s.neighbourhoods()
    if len(set(nb)) != len(nb):
        raise NotT0("distinct points share every open neighbourhood")
    return FinitePoset(s.carrier, nb, check=False)


def closure(s: FiniteSpace, subset: int) -> int:
    """Smallest closed superset of ``subset`` (bit mask)."""
    w = s.opens.shape[1]
    target = _to_words(subset, w)
    disjoint = np.all((s.opens & target) == 0, axis=1)
    outside = np.bitwise_or.reduce(s.opens[disjoint], axis=0) if disjoint.any() else np.zeros(w, np.uint64)
    return s.full & ~_to_int(outside)


def irreducible_closed_sets(s: FiniteSpace) -> List[int]:
    """Nonempty closed sets that are not a union of two proper closed subsets.

    For ``x`` in ``C`` the largest closed subset of ``C`` missing ``x`` is
    ``C - N(x)`` (``N(x)`` the least open neighbourhood), and every proper
    closed subset sits under one of these.  So ``C`` splits iff some
    ``x, y`` in ``C`` have ``C & N(x) & N(y)`` empty.
    """
    nb = s.neighbourhoods()
    out = []
    for c in s.closed_masks():
        if not c:
            continue
        pts = list(bits(c))
        split = False
        for i, x in enumerate(pts):
            cx = c & nb[x]
            for y in pts[i:]:
                if not cx & nb[y]:
                    split = True
                    break
            if split:
                break
        if not split:
            out.append(c)
    return out


def irreducible_closed_sets_by_pairs(s: FiniteSpace) -> List[int]:
    """Reference check straight from the definition: ``C <= A | B`` forces
    ``C <= A`` or ``C <= B`` for all closed ``A, B``.  Quartic; test use only."""
    closed = s.closed_masks()
    out = []
    for c in closed:
        if not c:
            continue
        if all(
            (c & ~a == 0) or (c & ~b == 0)
            for a in closed
            for b in closed
            if c & ~(a | b) == 0
        ):
            out.append(c)
    return out


@dataclass(frozen=True)
class SobrietyReport:
    sober: bool
    irreducibles: Tuple[Tuple[Tuple[str, ...], Optional[str]], ...]

    def as_dict(self) -> dict:
        return {
            "sober": self.sober,
            "irreducibles": [
                {"closed": list(c), "generic": g} for c, g in self.irreducibles
            ],
        }


def is_sober(s: FiniteSpace) -> SobrietyReport:
    cls = s.point_closures()
    if len(set(cls)) != len(cls):
        raise NotT0("distinct points have the same closure")
    generic = {c: x for x, c in enumerate(cls)}
    items = []
    sober = True
    for c in irreducible_closed_sets(s):
        g = generic.get(c)
        if g is None:
            sober = False
        items.append((tuple(s.members(c)), None if g is None else s.carrier[g]))
    return SobrietyReport(sober, tuple(items))


def open_set_lattice(p: FinitePoset, cap: int = DEFAULT_OPEN_CAP) -> FinitePoset:
    """All up-sets of ``p`` ordered by inclusion, labelled ``{a,b,...}``."""
    ups = sorted(_to_int(r) for r in _upset_masks(p, cap))
    ups.sort(key=lambda m: (popcount(m), m))
    rows = []
    for u in ups:
        row = 0
        for j, v in enumerate(ups):
            if u & ~v == 0:
                row |= 1 << j
        rows.append(row)
    return FinitePoset([set_label(p.labels, u) for u in ups], rows, check=False)


def product_space(s: FiniteSpace, t: FiniteSpace, cap: int = DEFAULT_OPEN_CAP) -> FiniteSpace:
    """Product topology: all unions of rectangles ``U x V``.

    A set is a union of rectangles iff with each point ``(x, y)`` it contains
    the smallest rectangle around it, ``N(x) x N(y)``, built here from the
    factors' open families.  Both factors must be T0.
    """
    if not (s.is_t0() and t.is_t0()):
        raise NotT0("product_space needs T0 factors")
    ns, nt = s.neighbourhoods(), t.neighbourhoods()
    m = len(t.carrier)
    rect = {}
    for x, nx in enumerate(ns):
        for y, ny in enumerate(nt):
            r = 0
            for k in bits(nx):
                r |= ny << (k * m)
            rect[x * m + y] = r
    schedule = sorted(rect.items(), key=lambda kv: (popcount(kv[1]), kv[0]))
    carrier = [f"({a},{b})" for a in s.carrier for b in t.carrier]
    rows = _enumerate_closed_families(len(carrier), schedule, cap)
    return FiniteSpace(carrier, _canonical(rows))


def spaces_equal(s: FiniteSpace, t: FiniteSpace) -> bool:
    if sorted(s.carrier) != sorted(t.carrier):
        raise CarrierMismatch("spaces have different carriers")
    if s.carrier == t.carrier:
        return s.opens.shape == t.opens.shape and bool(np.array_equal(s.opens, t.opens))
    if len(s.opens) != len(t.opens):
        return False
    pos = {lab: i for i, lab in enumerate(s.carrier)}
    perm = [pos[lab] for lab in t.carrier]
    remapped = []
    for m in t.open_masks():
        r = 0
        for j in bits(m):
            r |= 1 << perm[j]
        remapped.append(r)
    return sorted(remapped) == s.open_masks()


def _joins(lat: FinitePoset) -> List[List[int]]:
    n = len(lat)
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            k = lat.join(i, j)
            if k is None:
                raise NotALattice(f"{lat.labels[i]} and {lat.labels[j]} have no join")
            table[i][j] = table[j][i] = k
    return table


def sup_map_discontinuity(lat: FinitePoset, cap: int = DEFAULT_OPEN_CAP):
    """A witness ``(open U, point (a, b))`` against continuity of the binary
    join ``lat x lat -> lat`` in the up-set topologies, or ``None``.

    The preimage ``W`` of an open ``U`` is open in the product topology iff
    it contains ``N(a) x N(b)`` for each of its points ``(a, b)``.
    """
    join = _joins(lat)
    space = alexandrov_space(lat, cap)
    nb = space.neighbourhoods()
    n = len(lat)
    for u in space.open_masks():
        for a in range(n):
            for b in range(n):
                if not u >> join[a][b] & 1:
                    continue
                for a2 in bits(nb[a]):
                    for b2 in bits(nb[b]):
                        if not u >> join[a2][b2] & 1:
                            return (space.members(u), (lat.labels[a], lat.labels[b]))
    return None


def sup_map_jointly_continuous(lat: FinitePoset, cap: int = DEFAULT_OPEN_CAP) -> bool:
    return sup_map_discontinuity(lat, cap) is None
