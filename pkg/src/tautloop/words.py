"""Words over symbolic generating sets.

A letter is a pair ``(symbol, exponent)`` with exponent +1 or -1; a word is a
tuple of letters.  The empty word is the identity.  Formal-inverse generator
pairs (two symbols declared mutually inverse) are normalised away before any
arithmetic: the lexicographically smaller symbol of a pair is kept and the
other is rewritten as its inverse.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence, Tuple

Letter = Tuple[str, int]
Word = Tuple[Letter, ...]

EMPTY: Word = ()


def word(letters: Iterable[Sequence]) -> Word:
    """Build a word from an iterable of (symbol, exponent) pairs."""
    out = []
    for sym, exp in letters:
        if exp not in (1, -1):
            raise ValueError(f"exponent must be +-1, got {exp!r}")
        out.append((str(sym), int(exp)))
    return tuple(out)


def invert(w: Word) -> Word:
    return tuple((s, -e) for s, e in reversed(w))


def normalize(w: Word, inverse_pairs: Mapping[str, str] | None = None) -> Word:
    """Rewrite formally-inverse symbols onto canonical representatives."""
    if not inverse_pairs:
        return tuple(w)
    out = []
    for s, e in w:
        mate = inverse_pairs.get(s)
        if mate is not None and mate < s:
            out.append((mate, -e))
        else:
            out.append((s, e))
    return tuple(out)


def free_reduce(w: Word) -> Word:
    """Cancel adjacent x x^{-1} pairs until none remain."""
    out: list[Letter] = []
    for let in w:
        if out and out[-1][0] == let[0] and out[-1][1] == -let[1]:
            out.pop()
        else:
            out.append(let)
    return tuple(out)


def cyclic_reduce(w: Word) -> Word:
    w = free_reduce(w)
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = free_reduce(w[1:-1])
    return w


def rotations(w: Word) -> list[Word]:
    return [w[i:] + w[:i] for i in range(max(len(w), 1))]


def canonical_cyclic(w: Word) -> Word:
    """Least rotation of the cyclically reduced word, over both orientations.

    Words that agree up to rotation and inversion share this canonical form,
    which is the deduplication key for relators and loops.
    """
    w = cyclic_reduce(w)
    if not w:
        return EMPTY
    candidates = rotations(w) + rotations(invert(w))
    return min(candidates)


def to_json(w: Word) -> list:
    return [[s, e] for s, e in w]


def from_json(data: Iterable) -> Word:
    return word(data)


def format_word(w: Word) -> str:
    if not w:
        return "1"
    parts = []
    for s, e in w:
        parts.append(s if e == 1 else s + "^-1")
    return " ".join(parts)
