"""Finite posets stored as closed order relations.

Row ``i`` of ``up`` is a bit mask of every element ``>= i``; ``down`` is the
transpose.  Subsets of the carrier ("element sets") are plain ``int`` bit
masks indexed like ``labels``.  Use :meth:`FinitePoset.mask` and
:meth:`FinitePoset.members` to move between labels and masks.
"""

from __future__ import annotations

from itertools import product as _cartesian
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import CycleError, DuplicateLabel, UnknownLabel

__all__ = ["FinitePoset", "from_relations", "bits", "popcount"]


def bits(mask: int) -> Iterable[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class FinitePoset:
    """An immutable finite poset.

    Construct through :func:`from_relations` unless the closed relation is
    already at hand; the constructor checks reflexivity, antisymmetry and
    transitivity when ``check`` is true.
    """

    __slots__ = ("labels", "up", "down", "_index")

    def __init__(self, labels: Sequence[str], up: Sequence[int], check: bool = True):
        self.labels: Tuple[str, ...] = tuple(str(x) for x in labels)
        index = {}
        for i, lab in enumerate(self.labels):
            if lab in index:
                raise DuplicateLabel(lab)
            index[lab] = i
        self._index = index
        if len(up) != len(self.labels):
            raise ValueError("relation rows do not match the carrier")
        self.up: Tuple[int, ...] = tuple(up)
        down = [0] * len(self.labels)
        for i, row in enumerate(self.up):
            for j in bits(row):
                down[j] |= 1 << i
        self.down: Tuple[int, ...] = tuple(down)
        if check:
            self._check_axioms()

    def _check_axioms(self) -> None:
        n = len(self)
        for i in range(n):
            if not self.up[i] >> i & 1:
                raise ValueError(f"relation is not reflexive at {self.labels[i]}")
            for j in bits(self.up[i]):
                if j != i and self.up[j] >> i & 1:
                    raise CycleError(self.labels[i], self.labels[j])
                if self.up[j] & ~self.up[i]:
                    raise ValueError("relation is not transitive")

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FinitePoset)
            and self.labels == other.labels
            and self.up == other.up
        )

    def __hash__(self) -> int:
        return hash((self.labels, self.up))

    def __repr__(self) -> str:
        return f"FinitePoset({list(self.labels)!r}, covers={self.hasse_covers()!r})"

    @property
    def full(self) -> int:
        return (1 << len(self)) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"unknown element {label!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for lab in labels:
            m |= 1 << self.index(lab)
        return m

    def members(self, mask: int) -> List[str]:
        return [self.labels[i] for i in bits(mask)]

    # order queries

    def leq(self, a: str, b: str) -> bool:
        return bool(self.up[self.index(a)] >> self.index(b) & 1)

    def up_set(self, s: int) -> int:
        out = 0
        for i in bits(s):
            out |= self.up[i]
        return out

    def down_set(self, s: int) -> int:
        out = 0
        for i in bits(s):
            out |= self.down[i]
        return out

    def is_up_set(self, s: int) -> bool:
        return self.up_set(s) == s

    def maximal_elements(self, s: int) -> int:
        out = 0
        for i in bits(s):
            if not (self.up[i] & s) & ~(1 << i):
                out |= 1 << i
        return out

    def minimal_elements(self, s: int) -> int:
        out = 0
        for i in bits(s):
            if not (self.down[i] & s) & ~(1 << i):
                out |= 1 << i
        return out

    def upper_bounds(self, s: int) -> int:
        out = self.full
        for i in bits(s):
            out &= self.up[i]
        return out

    def is_directed(self, s: int) -> bool:
        # pairwise upper bounds inside s suffice for finite s
        if not s:
            return False
        idx = list(bits(s))
        for x, i in enumerate(idx):
            for j in idx[x + 1:]:
                if not self.up[i] & self.up[j] & s:
                    return False
        return True

    def sup_index(self, s: int) -> Optional[int]:
        least = self.minimal_elements(self.upper_bounds(s))
        if least and least & (least - 1) == 0:
            i = least.bit_length() - 1
            # a unique minimal upper bound is least only if it is below all others
            if self.up[i] & self.upper_bounds(s) == self.upper_bounds(s):
                return i
        return None

    def sup(self, s: int) -> Optional[str]:
        """Least upper bound of ``s`` (``sup`` of the empty set is the bottom)."""
        i = self.sup_index(s)
        return None if i is None else self.labels[i]

    def join(self, i: int, j: int) -> Optional[int]:
        return self.sup_index((1 << i) | (1 << j))

    def hasse_covers(self) -> List[Tuple[str, str]]:
        covers = []
        for i in range(len(self)):
            strict = self.up[i] & ~(1 << i)
            for j in bits(strict):
                # j covers i iff nothing strictly between
                if not (strict & self.down[j]) & ~(1 << j):
                    covers.append((self.labels[i], self.labels[j]))
        return covers

    def linear_extension(self) -> List[int]:
        """Indices sorted so every element precedes the elements above it."""
        return sorted(range(len(self)), key=lambda i: (popcount(self.down[i]), i))

    # constructions

    def product(self, other: "FinitePoset") -> "FinitePoset":
        n, m = len(self), len(other)
        labels = [f"({x},{y})" for x, y in _cartesian(self.labels, other.labels)]
        up = []
        for i in range(n):
            for j in range(m):
                row = 0
                for k in bits(self.up[i]):
                    row |= other.up[j] << (k * m)
                up.append(row)
        return FinitePoset(labels, up, check=False)

    def disjoint_sum(self, other: "FinitePoset") -> "FinitePoset":
        n = len(self)
        labels = [f"0:{x}" for x in self.labels] + [f"1:{y}" for y in other.labels]
        up = list(self.up) + [row << n for row in other.up]
        return FinitePoset(labels, up, check=False)

    def lift_top(self, top_label: str = "top") -> "FinitePoset":
        n = len(self)
        if top_label in self._index:
            raise DuplicateLabel(top_label)
        up = [row | (1 << n) for row in self.up] + [1 << n]
        return FinitePoset(list(self.labels) + [top_label], up, check=False)

    def relabel(self, labels: Sequence[str]) -> "FinitePoset":
        return FinitePoset(labels, self.up, check=False)


def from_relations(labels: Sequence[str], pairs: Iterable[Tuple[str, str]]) -> FinitePoset:
    """Poset whose order is the reflexive-transitive closure of ``pairs``."""
    labels = [str(x) for x in labels]
    index = {}
    for i, lab in enumerate(labels):
        if lab in index:
            raise DuplicateLabel(lab)
        index[lab] = i
    n = len(labels)
    up = [1 << i for i in range(n)]
    for a, b in pairs:
        try:
            ia, ib = index[a], index[b]
        except KeyError as exc:
            raise UnknownLabel(f"unknown element {exc.args[0]!r}") from None
        up[ia] |= 1 << ib
    # Warshall on bit rows
    for k in range(n):
        kbit = 1 << k
        row_k = up[k]
        for i in range(n):
            if up[i] & kbit:
                up[i] |= row_k
    for i in range(n):
        for j in bits(up[i] & ~(1 << i)):
            if up[j] >> i & 1:
                raise CycleError(labels[i], labels[j])
    return FinitePoset(labels, up, check=False)
