"""Free-group words as tuples of (generator, nonzero exponent) syllables."""
from __future__ import annotations

from typing import Iterable

Word = tuple  # tuple[tuple[str, int], ...]


def letters(word: Word) -> list[tuple[str, int]]:
    """Expand syllables into single letters (g, +1) / (g, -1)."""
    out = []
    for g, e in word:
        s = 1 if e > 0 else -1
        out.extend([(g, s)] * abs(e))
    return out


def from_letters(seq: Iterable[tuple[str, int]]) -> Word:
    """Freely reduce a letter sequence and collect it into syllables."""
    stack: list[list] = []
    for g, e in seq:
        if not e:
            continue
        if stack and stack[-1][0] == g:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([g, e])
    return tuple((g, e) for g, e in stack)


def reduce_word(word: Word) -> Word:
    return from_letters(word)


def invert(word: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


def mul(*words: Word) -> Word:
    return from_letters(syl for w in words for syl in w)


def length(word: Word) -> int:
    return sum(abs(e) for _, e in word)


def cyclic_reduce(word: Word) -> Word:
    w = reduce_word(word)
    while len(w) > 1 and w[0][0] == w[-1][0]:
        g = w[0][0]
        e = w[0][1] + w[-1][1]
        w = ((g, e),) + w[1:-1] if e else w[1:-1]
        w = reduce_word(w)
    return w


def cyclic_canonical(word: Word) -> Word:
    """A fixed representative among rotations of ``word`` and its inverse."""
    w = cyclic_reduce(word)
    if not w:
        return w
    lets = letters(w)
    best = None
    for cand in (lets, letters(invert(w))):
        for i in range(len(cand)):
            rot = from_letters(cand[i:] + cand[:i])
            key = tuple(letters(rot))
            if best is None or key < best[0]:
                best = (key, rot)
    return best[1]


def exponent_sums(word: Word) -> dict[str, int]:
    out: dict[str, int] = {}
    for g, e in word:
        out[g] = out.get(g, 0) + e
    return out


def substitute(word: Word, images: dict[str, Word]) -> Word:
    out = []
    for g, e in word:
        img = images.get(g)
        if img is None:
            out.append((g, e))
        else:
            piece = img if e > 0 else invert(img)
            for _ in range(abs(e)):
                out.extend(piece)
    return from_letters(out)


def format_word(word: Word) -> str:
    if not word:
        return "1"
    return "*".join(g if e == 1 else f"{g}^{e}" for g, e in word)
