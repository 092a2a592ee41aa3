"""Free-group words over letters a, b, c, ... with inverses A, B, C, ...

Shortlex order compares length first, then letters in the order a < A < b < B < ...
"""

from __future__ import annotations

from collections.abc import Iterator


MAX_GENERATORS = 26


def letter(i: int, inverse: bool = False) -> str:
    if not 0 <= i < MAX_GENERATORS:
        raise ValueError(f"generator index {i} outside 0..{MAX_GENERATORS - 1}")
    ch = chr(ord("a") + i)
    return ch.upper() if inverse else ch


def letter_index(ch: str) -> tuple[int, bool]:
    """Generator index and inverse flag of a letter."""
    return ord(ch.lower()) - ord("a"), ch.isupper()


def letters(n_gens: int) -> list[str]:
    """All letters in the fixed order a, A, b, B, ..."""
    if not 1 <= n_gens <= MAX_GENERATORS:
        raise ValueError("between 1 and 26 generators are supported")
    out = []
    for i in range(n_gens):
        out += [letter(i), letter(i, True)]
    return out


def invert(word: str) -> str:
    return word[::-1].swapcase()


def reduce(word: str) -> str:
    """Freely reduce a word."""
    out: list[str] = []
    for ch in word:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def power(word: str, n: int) -> str:
    if n < 0:
        return reduce(invert(word) * (-n))
    return reduce(word * n)


def sort_key(word: str) -> tuple:
    return (len(word), [2 * letter_index(ch)[0] + ch.isupper() for ch in word])


def reduced_words(n_gens: int, max_length: int) -> Iterator[str]:
    """Nonempty reduced words in shortlex order."""
    alphabet = letters(n_gens)
    level = [""]
    for _ in range(max_length):
        nxt = []
        for w in level:
            for ch in alphabet:
                if w and w[-1] == ch.swapcase():
                    continue
                nxt.append(w + ch)
        yield from nxt
        level = nxt
