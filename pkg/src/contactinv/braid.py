"""
Left Garside normal form in the three-strand braid group.

The simple elements of B_3 are the six permutation braids, stored as
permutations of ``(0, 1, 2)``.  Generator ``0`` is ``sigma_1`` and generator
``1`` is ``sigma_2``.  A braid is ``Delta^inf * s_1 ... s_k`` with each
``s_i`` neither trivial nor ``Delta`` and each pair ``(s_i, s_{i+1})``
left-weighted, i.e. ``L(s_{i+1}) <= R(s_i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Perm = tuple[int, ...]

IDENTITY: Perm = (0, 1, 2)
DELTA: Perm = (2, 1, 0)
GENERATORS: tuple[Perm, Perm] = ((1, 0, 2), (0, 2, 1))


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[k] for k in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for k, v in enumerate(p):
        out[v] = k
    return tuple(out)


def length(p: Perm) -> int:
    return sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])


def left_descents(p: Perm) -> frozenset[int]:
    return frozenset(i for i, s in enumerate(GENERATORS) if length(compose(s, p)) < length(p))


def right_descents(p: Perm) -> frozenset[int]:
    return frozenset(i for i, s in enumerate(GENERATORS) if length(compose(p, s)) < length(p))


def tau(p: Perm) -> Perm:
    """Conjugation by Delta, which swaps the two generators."""
    return compose(DELTA, compose(p, DELTA))


def right_complement(p: Perm) -> Perm:
    """The simple ``q`` with ``p q = Delta``."""
    return compose(inverse(p), DELTA)


def reduced_word(p: Perm) -> list[int]:
    """Generator indices of a reduced word, peeling left descents (lowest first)."""
    word = []
    while p != IDENTITY:
        i = min(left_descents(p))
        word.append(i)
        p = compose(GENERATORS[i], p)
    return word


def _left_weight(x: Perm, y: Perm) -> tuple[Perm, Perm]:
    while True:
        move = sorted(left_descents(y) - right_descents(x))
        if not move:
            return x, y
        s = GENERATORS[move[0]]
        x, y = compose(x, s), compose(s, y)


@dataclass(frozen=True)
class BraidNormalForm:
    inf: int
    factors: tuple[Perm, ...]

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    @property
    def sup(self) -> int:
        return self.inf + len(self.factors)

    def exponent_sum(self) -> int:
        return 3 * self.inf + sum(length(f) for f in self.factors)

    def is_positive(self) -> bool:
        return self.inf >= 0

    def letters(self) -> list[tuple[int, int]]:
        """A word ``[(generator, +-1), ...]`` representing this braid.

        For ``inf >= 0`` the word is positive.
        """
        delta_word = reduced_word(DELTA)
        out: list[tuple[int, int]] = []
        if self.inf >= 0:
            out.extend((i, 1) for _ in range(self.inf) for i in delta_word)
        else:
            out.extend((i, -1) for _ in range(-self.inf) for i in reversed(delta_word))
        for f in self.factors:
            out.extend((i, 1) for i in reduced_word(f))
        return out

    def __str__(self) -> str:
        body = " ".join("".join("ab"[i] for i in reduced_word(f)) for f in self.factors)
        return f"Delta^{self.inf}" + (f" . {body}" if body else "")


def normalize(inf: int, factors: Iterable[Perm]) -> BraidNormalForm:
    """Normal form of ``Delta^inf * f_1 ... f_k`` for arbitrary simple ``f_i``."""
    fs = list(factors)
    changed = True
    while changed:
        changed = False
        for k in range(len(fs) - 1):
            x, y = _left_weight(fs[k], fs[k + 1])
            if (x, y) != (fs[k], fs[k + 1]):
                fs[k], fs[k + 1] = x, y
                changed = True
    lead = 0
    while lead < len(fs) and fs[lead] == DELTA:
        lead += 1
    end = len(fs)
    while end > lead and fs[end - 1] == IDENTITY:
        end -= 1
    middle = fs[lead:end]
    assert DELTA not in middle and IDENTITY not in middle
    return BraidNormalForm(inf + lead, tuple(middle))


def normal_form(word: Sequence[tuple[int, int]], delta_power: int = 0) -> BraidNormalForm:
    """Normal form of a word of ``(generator, exponent)`` pairs times ``Delta^delta_power``.

    ``delta_power`` may be used for central factors such as ``Delta^4``; it
    is added to the infimum directly (even powers of Delta are central).
    """
    if delta_power % 2:
        raise ValueError("only central (even) powers of Delta may be passed separately")
    inf = 0
    factors: list[Perm] = []
    for gen, e in word:
        s = GENERATORS[gen]
        for _ in range(abs(e)):
            if e > 0:
                factors.append(s)
            else:
                # s^-1 = (s^-1 Delta) Delta^-1 ; slide Delta^-1 to the front
                factors.append(right_complement(s))
                factors = [tau(f) for f in factors]
                inf -= 1
    nf = normalize(inf, factors)
    return BraidNormalForm(nf.inf + delta_power, nf.factors)
