"""Seeded random elements, built on a pinned SplitMix64 stream.

The generator is fixed so streams reproduce bit-for-bit across runs,
platforms and ports: SplitMix64 with the usual published constants, all
arithmetic truncated to 64 bits::

    state  += 0x9E3779B97F4A7C15
    z       = state
    z       = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z       = (z ^ (z >> 27)) * 0x94D049BB133111EB
    output  = z ^ (z >> 31)

Derived draws are defined on top of that stream:

* ``below(n)``: ``next_uint64() % n`` with the standard rejection cutoff
  so the result is unbiased.
* ``uniform()``: ``(next_uint64() >> 11) * 2**-53``, a double in [0, 1).
* ``normal()``: Box-Muller on two uniforms; the cosine branch is
  returned first and the sine branch cached for the next call.

Reference outputs are frozen in ``tests/fixtures/prng.json``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .element import Element
from .words import letter_index

_MASK64 = (1 << 64) - 1
_MAX_ATTEMPTS = 100


class SplitMix64:
    """The pinned 64-bit stream; see the module docstring for the algorithm."""

    __slots__ = ("_state", "_cached_normal")

    def __init__(self, seed: int):
        self._state = seed & _MASK64
        self._cached_normal: float | None = None

    def next_uint64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError("bound must be positive")
        cutoff = _MASK64 + 1 - ((_MASK64 + 1) % n)
        while True:
            value = self.next_uint64()
            if value < cutoff:
                return value % n

    def uniform(self) -> float:
        """Uniform double in ``[0, 1)`` using the top 53 bits."""
        return (self.next_uint64() >> 11) * 2.0**-53

    def normal(self) -> float:
        """Standard normal draw (Box-Muller)."""
        if self._cached_normal is not None:
            value = self._cached_normal
            self._cached_normal = None
            return value
        u1 = self.uniform()
        while u1 == 0.0:
            u1 = self.uniform()
        u2 = self.uniform()
        radius = math.sqrt(-2.0 * math.log(u1))
        self._cached_normal = radius * math.sin(2.0 * math.pi * u2)
        return radius * math.cos(2.0 * math.pi * u2)


class DegenerateSpec(ValueError):
    """Every attempt at a nonzero element collapsed to zero."""


@dataclass(frozen=True)
class RandSpec:
    """Parameters for one reproducible random element.

    ``alphabet`` accepts letter indices or letters (a string like
    ``"abc"`` works); both range fields are inclusive.  The defaults
    draw small integer coefficients so test arithmetic stays exact in
    doubles.
    """

    seed: int
    n_terms: int = 5
    alphabet: tuple[int, ...] = (1, 2, 3)
    word_len: tuple[int, int] = (1, 4)
    coeff_range: tuple[int, int] = (1, 9)
    allow_inverse: bool = False

    def __post_init__(self):
        letters = tuple(sorted({letter_index(x) for x in self.alphabet}))
        if not letters:
            raise ValueError("alphabet must not be empty")
        object.__setattr__(self, "alphabet", letters)
        object.__setattr__(self, "word_len", (int(self.word_len[0]), int(self.word_len[1])))
        object.__setattr__(
            self, "coeff_range", (int(self.coeff_range[0]), int(self.coeff_range[1]))
        )
        if self.n_terms < 1:
            raise ValueError("n_terms must be at least 1")
        lo, hi = self.word_len
        if lo < 0 or hi < lo:
            raise ValueError(f"word_len range is empty or negative: {self.word_len}")
        lo, hi = self.coeff_range
        if hi < lo:
            raise ValueError(f"coeff_range is empty: {self.coeff_range}")


def random_element(spec: RandSpec) -> Element:
    """Deterministic random element: equal specs give equal values.

    Draw order, from one SplitMix64 stream seeded with ``spec.seed``:
    for each term, the word length, then per symbol the letter followed
    by one extra flip draw when ``allow_inverse`` is set, then the
    coefficient.  Terms are summed and normalized, so fewer than
    ``n_terms`` distinct terms can survive.  If the whole sum collapses
    to zero the draw is retried on the same stream, at most 100 times,
    after which DegenerateSpec is raised.
    """
    rng = SplitMix64(spec.seed)
    len_lo, len_hi = spec.word_len
    coeff_lo, coeff_hi = spec.coeff_range
    alphabet = spec.alphabet
    for _ in range(_MAX_ATTEMPTS):
        pairs = []
        for _ in range(spec.n_terms):
            length = len_lo + rng.below(len_hi - len_lo + 1)
            symbols = []
            for _ in range(length):
                sym = alphabet[rng.below(len(alphabet))]
                if spec.allow_inverse and rng.below(2) == 1:
                    sym = -sym
                symbols.append(sym)
            coeff = coeff_lo + rng.below(coeff_hi - coeff_lo + 1)
            pairs.append((tuple(symbols), float(coeff)))
        element = Element(pairs)
        if element:
            return element
    raise DegenerateSpec(f"no nonzero element in {_MAX_ATTEMPTS} attempts for {spec!r}")
