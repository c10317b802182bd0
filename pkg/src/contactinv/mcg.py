"""
Dehn-twist words on a genus-g surface with one boundary component.

Curves are the standard chain ``a1, b1, ..., ag, bg`` (``a_k`` and ``b_k``
meet once, all other pairs are disjoint) plus the boundary-parallel curve
``c``.  A word is read left to right as a product in the mapping class group:
the word ``w1 w2`` is ``w1 . w2`` and open-book surgery appends on the right.

In genus one the mapping class group is the braid group B_3 via
``a -> sigma_1``, ``b -> sigma_2``, and ``c = (b a)^6 = Delta^4``, so the
word problem and positive-monoid membership are decided exactly by Garside
normal forms.  For higher genus only the symplectic action on first homology
is available, which separates some words but never proves equality.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import braid, linalg


class WordSyntaxError(ValueError):
    """Raised on malformed twist-word text."""


class BoundaryCurveError(ValueError):
    """The operation needs a curve that is not parallel to the boundary."""


@dataclass(frozen=True)
class Letter:
    curve: str  # "a", "b" or "c"
    index: int  # 1..g for a/b, 0 for c
    sense: int = 1  # +1 right-handed, -1 left-handed

    @property
    def name(self) -> str:
        return "c" if self.curve == "c" else f"{self.curve}{self.index}"

    def inverse(self) -> "Letter":
        return Letter(self.curve, self.index, -self.sense)

    def __str__(self) -> str:
        return self.name if self.sense > 0 else f"{self.name}^-1"


@dataclass(frozen=True)
class TwistWord:
    genus: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        for x in self.letters:
            if x.curve not in ("a", "b", "c") or x.sense not in (1, -1):
                raise ValueError(f"bad letter {x!r}")
            if x.curve == "c" and x.index != 0:
                raise ValueError("the boundary curve carries no index")
            if x.curve != "c" and not 1 <= x.index <= self.genus:
                raise ValueError(f"curve {x.name} does not exist in genus {self.genus}")

    def __mul__(self, other: "TwistWord") -> "TwistWord":
        if self.genus != other.genus:
            raise ValueError(f"genus mismatch: {self.genus} vs {other.genus}")
        return TwistWord(self.genus, self.letters + other.letters)

    def __pow__(self, k: int) -> "TwistWord":
        base = self if k >= 0 else self.inverse()
        return TwistWord(self.genus, base.letters * abs(k))

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "TwistWord":
        return TwistWord(self.genus, tuple(x.inverse() for x in reversed(self.letters)))

    def is_syntactically_positive(self) -> bool:
        return all(x.sense > 0 for x in self.letters)

    def append(self, curve: str, sense: int = 1) -> "TwistWord":
        return self * TwistWord(self.genus, (letter(curve, sense),))

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.letters) if self.letters else "1"


def letter(name: str, sense: int = 1) -> Letter:
    m = re.fullmatch(r"([ab])(\d*)|c", name)
    if not m:
        raise WordSyntaxError(f"unknown curve {name!r}")
    if name == "c":
        return Letter("c", 0, sense)
    return Letter(m.group(1), int(m.group(2) or 1), sense)


# --- parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([ab]\d*|c)|(\^\s*-?\d+)|(1))")


def parse_word(text: str, genus: int | None = None) -> TwistWord:
    """Parse ``"a1 b1^-1 (b a)^5 c"`` style text.

    Curve names ``a``/``b`` without an index mean ``a1``/``b1``.  A
    parenthesised group or single curve may carry an integer power; ``1``
    stands for the empty word.  The genus defaults to the largest index used.
    """
    pos = 0
    stack: list[list[Letter]] = [[]]
    last: list[Letter] | None = None
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise WordSyntaxError(f"unexpected character at column {pos + 1}: {text[pos:]!r}")
        pos = m.end()
        opening, closing, name, power, one = m.groups()
        if opening:
            stack.append([])
            last = None
        elif closing:
            if len(stack) == 1:
                raise WordSyntaxError(f"unbalanced ')' at column {pos}")
            group = stack.pop()
            stack[-1].extend(group)
            last = group
        elif name:
            x = letter(name)
            stack[-1].append(x)
            last = [x]
        elif power:
            if last is None:
                raise WordSyntaxError(f"power with nothing to apply to at column {pos}")
            k = int(power[1:].strip())
            del stack[-1][len(stack[-1]) - len(last):]
            block = last if k >= 0 else [x.inverse() for x in reversed(last)]
            stack[-1].extend(block * abs(k))
            last = None
        elif one:
            last = None
    if len(stack) != 1:
        raise WordSyntaxError("unbalanced '('")
    letters = tuple(stack[0])
    used = max((x.index for x in letters), default=0)
    if genus is None:
        genus = used
    elif used > genus:
        raise WordSyntaxError(f"word uses curves of index {used} but genus is {genus}")
    return TwistWord(genus, letters)


# --- homological action ------------------------------------------------------------


def symplectic_form(g: int) -> linalg.Matrix:
    """Intersection form on the basis ``(a1, b1, ..., ag, bg)`` with <a,b> = 1."""
    J = linalg.zeros(2 * g, 2 * g)
    for k in range(g):
        J[2 * k][2 * k + 1] = 1
        J[2 * k + 1][2 * k] = -1
    return J


def _curve_vector(x: Letter, g: int) -> list[int]:
    v = [0] * (2 * g)
    if x.curve == "a":
        v[2 * (x.index - 1)] = 1
    elif x.curve == "b":
        v[2 * (x.index - 1) + 1] = 1
    return v


def transvection(x: Letter, g: int) -> linalg.Matrix:
    """Matrix of ``v -> v + sense * <v, gamma> gamma``; columns are images."""
    n = 2 * g
    M = linalg.identity(n)
    if x.curve == "c":
        return M
    gamma = _curve_vector(x, g)
    J = symplectic_form(g)
    # <e_j, gamma> = (J gamma)_j
    pair = linalg.matvec(J, gamma)
    for j in range(n):
        if pair[j]:
            for i in range(n):
                M[i][j] += x.sense * pair[j] * gamma[i]
    return M


def homological_action(w: TwistWord) -> linalg.Matrix:
    M = linalg.identity(2 * w.genus)
    for x in w.letters:
        M = linalg.matmul(M, transvection(x, w.genus))
    return M


# --- genus one: Garside normal forms -----------------------------------------------


def braid_letters(w: TwistWord) -> tuple[list[tuple[int, int]], int]:
    """Braid word for a genus-one twist word plus the central Delta power from ``c``."""
    if w.genus != 1:
        raise ValueError("braid normal forms are only available in genus 1")
    word, delta = [], 0
    for x in w.letters:
        if x.curve == "c":
            delta += 4 * x.sense
        else:
            word.append((0 if x.curve == "a" else 1, x.sense))
    return word, delta


def braid_normal_form(w: TwistWord) -> braid.BraidNormalForm:
    word, delta = braid_letters(w)
    return braid.normal_form(word, delta)


def word_from_normal_form(nf: braid.BraidNormalForm) -> TwistWord:
    return TwistWord(1, tuple(Letter("ab"[i], 1, e) for i, e in nf.letters()))


class Equality(enum.Enum):
    EQUAL = "EQUAL"
    UNEQUAL = "UNEQUAL"
    UNKNOWN = "UNKNOWN"


def words_equal(w1: TwistWord, w2: TwistWord) -> Equality:
    if w1.genus != w2.genus:
        raise ValueError(f"genus mismatch: {w1.genus} vs {w2.genus}")
    if w1.genus == 0:
        # the mapping class group of a disk is trivial
        return Equality.EQUAL
    if w1.genus == 1:
        same = braid_normal_form(w1) == braid_normal_form(w2)
        return Equality.EQUAL if same else Equality.UNEQUAL
    if homological_action(w1) != homological_action(w2):
        return Equality.UNEQUAL
    return Equality.UNKNOWN


# --- positivity -------------------------------------------------------------------


class Positivity(enum.Enum):
    POSITIVE_SYNTACTIC = "POSITIVE_SYNTACTIC"
    POSITIVE_WITH_WITNESS = "POSITIVE_WITH_WITNESS"
    NOT_POSITIVE = "NOT_POSITIVE"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class PositivityVerdict:
    kind: Positivity
    witness: TwistWord | None = None
    note: str = ""


def is_positive(w: TwistWord) -> PositivityVerdict:
    """Decide whether ``w`` is a product of right-handed twists.

    In genus one "positive" means lying in the monoid generated by the
    standard twists ``a``, ``b`` (and ``c = (b a)^6``), which holds exactly
    when the Garside infimum is nonnegative.
    """
    if w.is_syntactically_positive():
        return PositivityVerdict(Positivity.POSITIVE_SYNTACTIC, w)
    if w.genus == 0:
        return PositivityVerdict(Positivity.POSITIVE_WITH_WITNESS, TwistWord(0), "mapping class group of the disk is trivial")
    if w.genus > 1:
        return PositivityVerdict(Positivity.UNKNOWN, None, "no decision procedure above genus 1")
    nf = braid_normal_form(w)
    if nf.is_positive():
        return PositivityVerdict(Positivity.POSITIVE_WITH_WITNESS, word_from_normal_form(nf))
    if nf.exponent_sum() < 0:
        note = "exponent sum is negative, so no product of right-handed twists about any curves equals it"
    else:
        note = "not a positive word in the standard twists a, b; twists about other curves not ruled out"
    return PositivityVerdict(Positivity.NOT_POSITIVE, None, note)


# --- open books -------------------------------------------------------------------


@dataclass(frozen=True)
class OpenBook:
    page_genus: int
    boundary_components: int
    monodromy: TwistWord

    def __post_init__(self) -> None:
        if self.boundary_components < 1:
            raise ValueError("an open book page needs at least one boundary component")
        if self.monodromy.genus != self.page_genus:
            raise ValueError("monodromy genus differs from page genus")

    @classmethod
    def from_word(cls, w: TwistWord) -> "OpenBook":
        return cls(w.genus, 1, w)

    def lines(self) -> list[str]:
        return [
            f"page_genus: {self.page_genus}",
            f"boundary_components: {self.boundary_components}",
            f"monodromy: {self.monodromy}",
        ]


def _single_boundary(ob: OpenBook) -> None:
    if ob.boundary_components != 1:
        raise ValueError("only pages with one boundary component are supported")


def _shift(w: TwistWord, by: int, genus: int) -> TwistWord:
    if w.genus and any(x.curve == "c" for x in w.letters):
        raise BoundaryCurveError(
            "the boundary twist c of a summand is not a standard curve of the enlarged page"
        )
    kept = tuple(Letter(x.curve, x.index + by, x.sense) for x in w.letters if x.curve != "c")
    return TwistWord(genus, kept)


def giroux_stabilize(ob: OpenBook) -> OpenBook:
    """Attach a handle and compose with the right-handed twist along its core."""
    _single_boundary(ob)
    g = ob.page_genus + 1
    w = _shift(ob.monodromy, 0, g)
    return OpenBook(g, 1, w * TwistWord(g, (Letter("a", g, 1),)))


def boundary_connect_sum(ob1: OpenBook, ob2: OpenBook) -> OpenBook:
    _single_boundary(ob1)
    _single_boundary(ob2)
    g = ob1.page_genus + ob2.page_genus
    w = _shift(ob1.monodromy, 0, g) * _shift(ob2.monodromy, ob1.page_genus, g)
    return OpenBook(g, 1, w)


def identity_open_book(g: int) -> OpenBook:
    return OpenBook(g, 1, TwistWord(g))


@dataclass(frozen=True)
class SurgeryDescriptor:
    base: OpenBook
    curve: str
    coefficient: int
    result: OpenBook

    def lines(self) -> list[str]:
        return [
            f"base: {self.base.monodromy}",
            f"curve: {self.curve}",
            f"coefficient: {self.coefficient:+d}",
            f"result: {self.result.monodromy}",
        ]


def compose_surgery(ob: OpenBook, curve: str, coefficient: int) -> SurgeryDescriptor:
    """Open book after ``coefficient``-surgery on a page curve.

    ``-1`` surgery appends a right-handed twist, ``+1`` a left-handed one.
    """
    if coefficient not in (-1, 1):
        raise ValueError("surgery coefficient must be -1 or +1")
    x = letter(curve, -coefficient)
    if x.curve == "c":
        raise BoundaryCurveError("curve c is parallel to the binding; surgery on it is not supported")
    w = ob.monodromy * TwistWord(ob.page_genus, (x,))
    return SurgeryDescriptor(ob, x.name, coefficient, OpenBook(ob.page_genus, ob.boundary_components, w))


class Certificate(enum.Enum):
    CERTIFIED = "CERTIFIED"
    NOT_CERTIFIED = "NOT_CERTIFIED"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class SteinCertificate:
    kind: Certificate
    witness: TwistWord | None = None
    note: str = ""

    def lines(self) -> list[str]:
        out = [f"certificate: {self.kind.value}"]
        if self.witness is not None:
            out.append(f"witness: {self.witness}")
        if self.note:
            out.append(f"note: {self.note}")
        return out


def stein_certificate(ob: OpenBook) -> SteinCertificate:
    """Certify Stein fillability by writing the monodromy as a positive product."""
    verdict = is_positive(ob.monodromy)
    if verdict.kind in (Positivity.POSITIVE_SYNTACTIC, Positivity.POSITIVE_WITH_WITNESS):
        return SteinCertificate(Certificate.CERTIFIED, verdict.witness)
    if verdict.kind is Positivity.NOT_POSITIVE:
        return SteinCertificate(
            Certificate.NOT_CERTIFIED, None,
            "the word as written is not positive; positivity after stabilization is undecided",
        )
    return SteinCertificate(Certificate.UNKNOWN, None, verdict.note)


def hopf_invariant(c1_squared: int, euler_char: int, signature: int) -> Fraction:
    """``(c1^2 + 2 - 2 chi - 2 sigma) / 4`` for an almost-complex filling."""
    return Fraction(c1_squared + 2 - 2 * euler_char - 2 * signature, 4)


def genus_one_monodromies() -> dict[str, TwistWord]:
    """Monodromies of the genus-one fibered knots in S^3."""
    return {
        "trefoil_right": parse_word("a b", 1),
        "trefoil_left": parse_word("a^-1 b^-1", 1),
        "figure_eight": parse_word("a b^-1", 1),
    }


def product(words: Iterable[TwistWord], genus: int) -> TwistWord:
    out = TwistWord(genus)
    for w in words:
        out = out * w
    return out


def matrix_text(M: Sequence[Sequence[int]]) -> list[str]:
    width = max((len(str(x)) for row in M for x in row), default=1)
    return [" ".join(str(x).rjust(width) for x in row) for row in M]
