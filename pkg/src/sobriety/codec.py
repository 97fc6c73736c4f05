"""Integer encodings behind the countable constructions.

Three pieces live here:

* the Cantor pairing ``pair``/``unpair``;
* ``word_code``, a prime-power Goedel numbering of nonempty words that is
  injective and grows strictly along the prefix order;
* ``f_encode``, which tags a word code with its slice ``(a, b)`` so that the
  images ``i(a, b)`` of distinct slices are disjoint and every member of
  ``i(a, b)`` exceeds ``b``.

``phi`` is the fixed enumeration of slices used to define the level sets
``E_n = i(phi(n))``.  All arithmetic is exact (Python ints).
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt
from typing import Optional, Sequence, Tuple

Word = Tuple[int, ...]
SlicePair = Tuple[int, int]

__all__ = [
    "Word",
    "SlicePair",
    "as_word",
    "check_slice",
    "is_prefix",
    "nth_prime",
    "pair",
    "unpair",
    "word_code",
    "word_decode",
    "f_encode",
    "f_decode",
    "in_i",
    "phi",
    "phi_inv",
    "e_index",
    "default_choice",
]


def as_word(letters: Sequence[int]) -> Word:
    w = tuple(int(x) for x in letters)
    if not w:
        raise ValueError("words are nonempty")
    if any(x < 0 for x in w):
        raise ValueError(f"letters must be natural numbers: {w!r}")
    return w


def check_slice(s: Sequence[int]) -> SlicePair:
    a, b = (int(x) for x in s)
    if not 0 <= a < b:
        raise ValueError(f"slice index must satisfy 0 <= a < b, got {(a, b)}")
    return (a, b)


def is_prefix(w: Word, x: Word) -> bool:
    """True iff ``w`` is a (non-strict) prefix of ``x``."""
    return len(w) <= len(x) and x[: len(w)] == w


def pair(u: int, v: int) -> int:
    if u < 0 or v < 0:
        raise ValueError("pair is defined on naturals")
    s = u + v
    return s * (s + 1) // 2 + v


def unpair(k: int) -> Tuple[int, int]:
    if k < 0:
        raise ValueError("unpair is defined on naturals")
    w = (isqrt(8 * k + 1) - 1) // 2
    v = k - w * (w + 1) // 2
    return (w - v, v)


_PRIMES = [2]


def nth_prime(i: int) -> int:
    """The i-th prime, zero-based (2, 3, 5, ...)."""
    while len(_PRIMES) <= i:
        c = _PRIMES[-1] + 1
        while any(c % p == 0 for p in _PRIMES if p * p <= c):
            c += 1
        _PRIMES.append(c)
    return _PRIMES[i]


def word_code(w: Sequence[int]) -> int:
    w = as_word(w)
    code = 1
    for i, letter in enumerate(w):
        code *= nth_prime(i) ** (letter + 1)
    return code


def word_decode(h: int) -> Optional[Word]:
    """Inverse of :func:`word_code`; ``None`` off its image.

    The image is exactly the naturals of the form ``2^e0 3^e1 ... p_j^ej``
    with every exponent positive and no other prime factor.
    """
    if h < 2:
        return None
    letters = []
    i = 0
    while h != 1:
        p = nth_prime(i)
        e = 0
        while h % p == 0:
            h //= p
            e += 1
        if e == 0:
            return None
        letters.append(e - 1)
        i += 1
    return tuple(letters)


def f_encode(s: Sequence[int], w: Sequence[int]) -> int:
    """The code of word ``w`` inside the slice image ``i(s)``."""
    a, b = check_slice(s)
    return pair(pair(a, b), word_code(w))


@lru_cache(maxsize=1 << 16)
def f_decode(k: int) -> Optional[Tuple[SlicePair, Word]]:
    if k < 0:
        return None
    u, v = unpair(k)
    a, b = unpair(u)
    if a >= b:
        return None
    w = word_decode(v)
    if w is None:
        return None
    return ((a, b), w)


def in_i(k: int, s: Sequence[int]) -> bool:
    d = f_decode(k)
    return d is not None and d[0] == tuple(s)


def phi(n: int) -> SlicePair:
    """Slices enumerated by increasing ``b``, then increasing ``a``."""
    if n < 0:
        raise ValueError("phi is defined on naturals")
    # largest b with b(b-1)/2 <= n
    b = (1 + isqrt(1 + 8 * n)) // 2
    return (n - b * (b - 1) // 2, b)


def phi_inv(s: Sequence[int]) -> int:
    a, b = check_slice(s)
    return b * (b - 1) // 2 + a


def e_index(k: int) -> Optional[int]:
    """The unique ``n`` with ``k`` in ``E_n``, or ``None``."""
    d = f_decode(k)
    if d is None:
        return None
    return phi_inv(d[0])


@lru_cache(maxsize=4096)
def default_choice(n: int) -> int:
    """Smallest canonical member of ``E_n``: the code of the word ``[0]``."""
    return f_encode(phi(n), (0,))
