"""Symbols and words: the monomial layer of the algebra.

A symbol is a plain ``int``:

* ``1 .. 26``     the generator letters a..z
* ``-1 .. -26``   their group inverses, printed as uppercase A..Z
* ``101 .. 126``  differential tokens, printed ``(da)`` .. ``(dz)``

A word is a tuple of symbols and is kept *reduced*: a letter never sits
next to its own inverse.  Differential tokens are inert; they cancel
with nothing and have no inverse.
"""

from __future__ import annotations

from collections.abc import Iterable

DIFF_BASE = 100

Word = tuple


def letter_index(letter: str | int) -> int:
    """Normalize ``'a'``..``'z'`` or ``1``..``26`` to a letter index."""
    if isinstance(letter, str):
        if len(letter) == 1 and "a" <= letter <= "z":
            return ord(letter) - 96
        raise ValueError(f"not a generator letter: {letter!r}")
    if isinstance(letter, bool) or not isinstance(letter, int):
        raise TypeError(f"letter must be 'a'..'z' or 1..26, got {letter!r}")
    if not 1 <= letter <= 26:
        raise ValueError(f"letter index out of range 1..26: {letter}")
    return letter


def letter(x: str | int) -> int:
    """Symbol code of a generator letter."""
    return letter_index(x)


def inverse(x: str | int) -> int:
    """Symbol code of the group inverse of a letter."""
    return -letter_index(x)


def differential(x: str | int) -> int:
    """Symbol code of the differential token of a letter."""
    return DIFF_BASE + letter_index(x)


def is_letter(sym: int) -> bool:
    return 1 <= sym <= 26


def is_inverse(sym: int) -> bool:
    return -26 <= sym <= -1


def is_differential(sym: int) -> bool:
    return DIFF_BASE < sym <= DIFF_BASE + 26


def base_letter(sym: int) -> int:
    """Letter index behind a symbol of any kind."""
    check_symbol(sym)
    if sym < 0:
        return -sym
    if sym > DIFF_BASE:
        return sym - DIFF_BASE
    return sym


def check_symbol(sym: int) -> int:
    if isinstance(sym, bool) or not isinstance(sym, int):
        raise TypeError(f"symbol must be an int code, got {sym!r}")
    if is_letter(sym) or is_inverse(sym) or is_differential(sym):
        return sym
    raise ValueError(f"invalid symbol code: {sym}")


def symbol_text(sym: int) -> str:
    """Printed form: ``a``, uppercase ``A`` for the inverse, ``(da)`` for the differential."""
    if is_letter(sym):
        return chr(96 + sym)
    if is_inverse(sym):
        return chr(64 - sym)
    if is_differential(sym):
        return f"(d{chr(96 + sym - DIFF_BASE)})"
    raise ValueError(f"invalid symbol code: {sym}")


def symbol_sort_key(sym: int) -> tuple[int, int]:
    """Collation key: ASCII of the printed letter (uppercase inverses come
    first), with each differential token immediately after its own letter."""
    if is_inverse(sym):
        return (64 - sym, 0)
    if is_letter(sym):
        return (96 + sym, 0)
    if is_differential(sym):
        return (96 + sym - DIFF_BASE, 1)
    raise ValueError(f"invalid symbol code: {sym}")


def word_sort_key(word: Word) -> tuple:
    """Lexicographic word key; a proper prefix sorts before its extensions."""
    return tuple(symbol_sort_key(s) for s in word)


def word_text(word: Word) -> str:
    return "".join(symbol_text(s) for s in word)


def reduce_word(symbols: Iterable[int]) -> Word:
    """Fully reduce a raw symbol sequence.

    Adjacent letter/inverse pairs cancel, and cancellation cascades:
    removing one pair may expose another.  Free-group reduction is
    confluent, so a single left-to-right stack pass produces the unique
    reduced word regardless of the order pairs are removed in.
    """
    out: list[int] = []
    for sym in symbols:
        check_symbol(sym)
        # only a letter/inverse pair can be mutual negatives
        if out and out[-1] == -sym:
            out.pop()
        else:
            out.append(sym)
    return tuple(out)


def invert_word(word: Iterable[int]) -> Word:
    """Group inverse of a word: reverse it and invert every symbol."""
    out = []
    for sym in reversed(tuple(word)):
        check_symbol(sym)
        if is_differential(sym):
            raise ValueError("differential tokens have no inverse")
        out.append(-sym)
    return tuple(out)


def word_from_text(text: str) -> Word:
    """Read letters like ``"xxY"`` into a reduced word (no differentials)."""
    syms = []
    for ch in text:
        if "a" <= ch <= "z":
            syms.append(ord(ch) - 96)
        elif "A" <= ch <= "Z":
            syms.append(64 - ord(ch))
        else:
            raise ValueError(f"not a generator letter: {ch!r}")
    return reduce_word(syms)
