"""
Filtered knot Floer complexes supplied as data.

Two shapes of complex are handled:

* :class:`BifilteredComplex` -- the full complex, one generator per
  intersection point placed at its home position ``(i, j)``.  An arrow
  ``x -> y`` carries ``n_w = i_x - i_y`` and ``n_z = j_x - j_y``; arrows to
  ``U``-translates are never written, the translation is implicit.
* :class:`HatFilteredComplex` -- a ``Z``-filtered complex (the ``i = 0``
  column), each generator carrying its Alexander filtration level.

Coefficients are ``Z`` or ``Z/2``.  All operations return new values and
preserve generator order, so their output is deterministic.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence, Union

from . import linalg

Z = "Z"
Z2 = "Z/2"
RINGS = (Z, Z2)


class ComplexError(ValueError):
    """Raised when an operation receives a complex that does not validate."""


class FibrationHypothesisViolated(ValueError):
    """The bottom sublevel does not have homology ``Z``.

    This means the input is not the hat complex of a fibered knot of the
    stated genus.
    """


@dataclass(frozen=True)
class Arrow:
    source: str
    target: str
    coeff: int = 1


@dataclass(frozen=True)
class BiGenerator:
    label: str
    i: int
    j: int
    maslov: int | None = None


@dataclass(frozen=True)
class HatGenerator:
    label: str
    alexander: int
    maslov: int | None = None


class _ComplexBase:
    name: str
    ring: str
    generators: tuple
    arrows: tuple[Arrow, ...]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(g.label for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def index(self) -> dict[str, int]:
        return {g.label: k for k, g in enumerate(self.generators)}

    def generator(self, label: str):
        for g in self.generators:
            if g.label == label:
                return g
        raise KeyError(label)

    def matrix(self) -> linalg.Matrix:
        """Differential as a matrix ``D[target][source]`` over the ring."""
        idx = self.index()
        n = len(self.generators)
        D = linalg.zeros(n, n)
        for a in self.arrows:
            D[idx[a.target]][idx[a.source]] += a.coeff
        if self.ring == Z2:
            D = [[x % 2 for x in row] for row in D]
        return D

    def has_maslov(self) -> bool:
        return bool(self.generators) and all(g.maslov is not None for g in self.generators)


@dataclass(frozen=True)
class BifilteredComplex(_ComplexBase):
    name: str
    ring: str
    generators: tuple[BiGenerator, ...]
    arrows: tuple[Arrow, ...] = ()


@dataclass(frozen=True)
class HatFilteredComplex(_ComplexBase):
    name: str
    ring: str
    generators: tuple[HatGenerator, ...]
    arrows: tuple[Arrow, ...] = ()

    def levels(self) -> list[int]:
        return sorted({g.alexander for g in self.generators})


AnyComplex = Union[BifilteredComplex, HatFilteredComplex]


# --- validation ------------------------------------------------------------


@dataclass
class ValidationReport:
    ok: bool
    problems: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _filtration(g) -> tuple[int, ...]:
    if isinstance(g, BiGenerator):
        return (g.i, g.j)
    return (g.alexander,)


def validate_complex(C: AnyComplex) -> ValidationReport:
    """Check every structural invariant and list the violations found."""
    problems: list[str] = []
    if C.ring not in RINGS:
        problems.append(f"unknown coefficient ring {C.ring!r}")
    seen: set[str] = set()
    for g in C.generators:
        if g.label in seen:
            problems.append(f"duplicate generator label {g.label}")
        seen.add(g.label)
    by_label = {g.label: g for g in C.generators}
    pairs: set[tuple[str, str]] = set()
    arrows_ok = True
    for a in C.arrows:
        where = f"arrow {a.source} -> {a.target}"
        if a.source not in by_label or a.target not in by_label:
            problems.append(f"{where}: unknown generator")
            arrows_ok = False
            continue
        if (a.source, a.target) in pairs:
            problems.append(f"{where}: duplicate arrow")
        pairs.add((a.source, a.target))
        if a.coeff == 0 or (C.ring == Z2 and a.coeff % 2 == 0):
            problems.append(f"{where}: zero coefficient")
        fs, ft = _filtration(by_label[a.source]), _filtration(by_label[a.target])
        if any(s < t for s, t in zip(fs, ft)):
            problems.append(f"{where}: filtration increase {fs} -> {ft}")
        ms, mt = by_label[a.source].maslov, by_label[a.target].maslov
        if ms is not None and mt is not None and ms - mt != 1:
            problems.append(f"{where}: maslov grading drops by {ms - mt}, expected 1")
    if arrows_ok and C.ring in RINGS and len(seen) == len(C.generators):
        D = C.matrix()
        DD = linalg.matmul(D, D)
        if C.ring == Z2:
            DD = [[x % 2 for x in row] for row in DD]
        labels = C.labels
        for t, row in enumerate(DD):
            for s, x in enumerate(row):
                if x:
                    problems.append(f"D^2 != 0: coefficient {x} of {labels[t]} in D^2({labels[s]})")
    return ValidationReport(not problems, problems)


def _require_valid(C: AnyComplex) -> None:
    report = validate_complex(C)
    if not report.ok:
        raise ComplexError(f"complex {C.name!r} is invalid: " + "; ".join(report.problems))


# --- homology ----------------------------------------------------------------


def canonical_sign(v: Sequence[int]) -> list[int]:
    """Flip ``v`` so its first nonzero entry is positive."""
    for x in v:
        if x:
            return list(v) if x > 0 else [-y for y in v]
    return list(v)


@dataclass
class HomologyPresentation:
    """Homology of a complex, with explicit cycle representatives.

    ``free`` holds one chain per free generator, ``torsion`` one
    ``(order, chain)`` pair per cyclic torsion summand.  Chains are integer
    vectors indexed like ``labels``.
    """

    ring: str
    labels: tuple[str, ...]
    free: list[list[int]]
    torsion: list[tuple[int, list[int]]]
    _coord_rows: list[list[int]] = field(repr=False, default_factory=list)
    _moduli: list[int] = field(repr=False, default_factory=list)
    _cycle_test: linalg.Matrix = field(repr=False, default_factory=list)
    _pivot_rows: linalg.Matrix = field(repr=False, default_factory=list)
    _kernel_rows: linalg.Matrix = field(repr=False, default_factory=list)

    @property
    def free_rank(self) -> int:
        return len(self.free)

    @property
    def torsion_orders(self) -> list[int]:
        return [d for d, _ in self.torsion]

    @property
    def basis_map(self) -> list[list[int]]:
        return [list(c) for c in self.free] + [list(c) for _, c in self.torsion]

    def coordinates(self, chain: Sequence[int]) -> tuple[list[int], list[int]]:
        """Coordinates of the class of a cycle: ``(free part, torsion part)``.

        Torsion coordinates are reduced modulo their orders.
        """
        chain = list(chain)
        if len(chain) != len(self.labels):
            raise ValueError("chain length does not match the complex")
        if self.ring == Z2:
            return self._coordinates_mod2(chain)
        if any(linalg.matvec(self._cycle_test, chain)):
            raise ValueError("chain is not a cycle")
        if not self._coord_rows:
            return [], []
        z = linalg.matvec(self._coord_rows, linalg.echelon_coordinates(chain, self._kernel_rows))
        nt = len(self.torsion)
        tors = [x % d for x, d in zip(z[:nt], self._moduli)]
        return z[nt:], tors

    def _coordinates_mod2(self, chain: list[int]) -> tuple[list[int], list[int]]:
        chain = [x & 1 for x in chain]
        if any(x & 1 for x in linalg.matvec(self._cycle_test, chain)):
            raise ValueError("chain is not a cycle")
        # pivot rows: boundary basis then representatives, all in rref-ready form
        rows = self._pivot_rows
        nb = len(rows) - len(self.free)
        aug = [r + [int(k == i) for k in range(len(rows))] for i, r in enumerate(rows)]
        target = chain + [0] * len(rows)
        n = len(chain)
        R, piv = linalg.rref_mod2(aug, n + len(rows))
        for row, p in zip(R, piv):
            if p >= n:
                break
            if target[p]:
                target = [a ^ b for a, b in zip(target, row)]
        if any(target[:n]):
            raise ValueError("cycle not in span; inconsistent homology data")
        combo = target[n:]
        return combo[nb:], []

    def is_zero_class(self, chain: Sequence[int]) -> bool:
        f, t = self.coordinates(chain)
        return not any(f) and not any(t)

    def summary(self) -> str:
        parts = []
        if self.free_rank:
            parts.append(self.ring if self.free_rank == 1 else f"{self.ring}^{self.free_rank}")
        if self.ring == Z:
            parts.extend(f"Z/{d}" for d in self.torsion_orders)
        return " + ".join(parts) if parts else "0"


def homology(C: AnyComplex, coeff: str | None = None) -> HomologyPresentation:
    """Homology of ``(generators, D)`` with explicit representatives."""
    _require_valid(C)
    ring = coeff or C.ring
    if ring not in RINGS:
        raise ValueError(f"unknown coefficient ring {ring!r}")
    if C.ring == Z2 and ring == Z:
        raise ValueError("cannot compute integral homology of a Z/2 complex")
    D = C.matrix()
    if ring == Z2:
        return _homology_mod2(C.labels, D)
    return _homology_z(C.labels, D)


def _homology_z(labels: tuple[str, ...], D: linalg.Matrix) -> HomologyPresentation:
    n = len(labels)
    if n == 0:
        return HomologyPresentation(Z, labels, [], [])
    # Hermite basis of the cycles keeps entries small; boundaries are then
    # rewritten in cycle coordinates and put in Smith form there.
    K = linalg.integer_kernel(D, n)
    k = len(K)
    if k == 0:
        return HomologyPresentation(Z, labels, [], [], _cycle_test=D)
    B = linalg.transpose([linalg.echelon_coordinates(linalg.column(D, s), K) for s in range(n)], k)
    snf = linalg.smith_normal_form(B, n)
    diag = snf.diagonal
    image = linalg.hermite_rows(linalg.transpose(D), n)
    torsion, moduli, tors_rows = [], [], []
    free, free_rows = [], []
    for i in range(k):
        # generator K^T U^-1 e_i, coordinate row e_i U
        col = [snf.U_inv[a][i] for a in range(k)]
        h = [sum(ca * K[a][t] for a, ca in enumerate(col)) for t in range(n)]
        h = linalg.reduce_by_hermite(h, image)
        row = list(snf.U[i])
        canon = canonical_sign(h)
        if canon != h:
            row = [-x for x in row]
            h = canon
        if i < len(diag):
            if diag[i] == 1:
                continue
            torsion.append((diag[i], h))
            moduli.append(diag[i])
            tors_rows.append(row)
        else:
            free.append(h)
            free_rows.append(row)
    return HomologyPresentation(
        Z, labels, free, torsion,
        _coord_rows=tors_rows + free_rows, _moduli=moduli, _cycle_test=D, _kernel_rows=K,
    )


def _homology_mod2(labels: tuple[str, ...], D: linalg.Matrix) -> HomologyPresentation:
    n = len(labels)
    D = [[x & 1 for x in row] for row in D]
    if n == 0:
        return HomologyPresentation(Z2, labels, [], [])
    boundaries, _ = linalg.rref_mod2(linalg.transpose(D), n)
    cycles = linalg.kernel_mod2(D, n)
    span = [list(b) for b in boundaries]
    reps = []
    for z in cycles:
        if linalg.rank_mod2(span + [z], n) > len(span):
            span.append(z)
            reps.append(z)
    # tidy representatives: reduce against boundaries
    tidy = []
    for z in reps:
        v = list(z)
        for b in boundaries:
            p = next(j for j, x in enumerate(b) if x)
            if v[p]:
                v = [a ^ c for a, c in zip(v, b)]
        tidy.append(v)
    return HomologyPresentation(
        Z2, labels, tidy, [],
        _cycle_test=D, _pivot_rows=[list(b) for b in boundaries] + tidy,
    )


# --- filtration operations ----------------------------------------------------


def sublevel(C: HatFilteredComplex, m: int) -> HatFilteredComplex:
    """Subcomplex spanned by generators of Alexander level at most ``m``."""
    keep = [g for g in C.generators if g.alexander <= m]
    names = {g.label for g in keep}
    arrows = tuple(a for a in C.arrows if a.source in names and a.target in names)
    return HatFilteredComplex(f"{C.name}<={m}", C.ring, tuple(keep), arrows)


def _toggle_star(label: str) -> str:
    return label[:-1] if label.endswith("*") else label + "*"


def _toggle_dual(name: str) -> str:
    return name[: -len("_dual")] if name.endswith("_dual") else name + "_dual"


def mirror_dual(C: BifilteredComplex) -> BifilteredComplex:
    """Dual complex: arrows reversed, home positions and gradings negated.

    Labels gain a trailing ``*`` (or lose it), so applying this twice gives
    back ``C`` exactly.
    """
    gens = tuple(
        BiGenerator(_toggle_star(g.label), -g.i, -g.j, None if g.maslov is None else -g.maslov)
        for g in C.generators
    )
    arrows = tuple(Arrow(_toggle_star(a.target), _toggle_star(a.source), a.coeff) for a in C.arrows)
    return BifilteredComplex(_toggle_dual(C.name), C.ring, gens, arrows)


def hat_column(C: BifilteredComplex) -> HatFilteredComplex:
    """The ``i = 0`` column: Alexander level ``j - i``, arrows with ``n_w = 0``."""
    by_label = {g.label: g for g in C.generators}
    gens = tuple(HatGenerator(g.label, g.j - g.i, g.maslov) for g in C.generators)
    arrows = tuple(a for a in C.arrows if by_label[a.source].i == by_label[a.target].i)
    return HatFilteredComplex(f"{C.name}_hat", C.ring, gens, arrows)


def koszul_parity(C: AnyComplex) -> dict[str, int]:
    """Mod 2 grading used for tensor signs.

    Maslov gradings are used when every generator has one.  Otherwise the
    arrow graph is 2-coloured component by component in generator order,
    the first generator of each component being even.
    """
    if C.has_maslov():
        return {g.label: g.maslov % 2 for g in C.generators}
    adj: dict[str, list[str]] = {g.label: [] for g in C.generators}
    for a in C.arrows:
        adj[a.source].append(a.target)
        adj[a.target].append(a.source)
    parity: dict[str, int] = {}
    for g in C.generators:
        if g.label in parity:
            continue
        parity[g.label] = 0
        queue = deque([g.label])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in parity:
                    parity[y] = parity[x] ^ 1
                    queue.append(y)
                elif parity[y] == parity[x]:
                    raise ComplexError(
                        f"cannot infer a Koszul parity for {C.name!r}: arrow graph is not bipartite"
                    )
    return parity


def tensor_label(a: str, b: str) -> str:
    return f"{a}|{b}"


def tensor_filtered(C1: HatFilteredComplex, C2: HatFilteredComplex) -> HatFilteredComplex:
    """Tensor product with the sum filtration and the graded Leibniz rule.

    ``D(x|y) = Dx|y + (-1)^|x| x|Dy``; generators are ordered with ``C1``
    outermost.
    """
    _require_valid(C1)
    _require_valid(C2)
    if C1.ring != C2.ring:
        raise ComplexError(f"coefficient rings differ: {C1.ring} vs {C2.ring}")
    ring = C1.ring
    parity = koszul_parity(C1) if ring == Z else {g.label: 0 for g in C1.generators}
    gens = []
    for x in C1.generators:
        for y in C2.generators:
            m = x.maslov + y.maslov if x.maslov is not None and y.maslov is not None else None
            gens.append(HatGenerator(tensor_label(x.label, y.label), x.alexander + y.alexander, m))
    out1: dict[str, list[Arrow]] = {}
    for a in C1.arrows:
        out1.setdefault(a.source, []).append(a)
    out2: dict[str, list[Arrow]] = {}
    for a in C2.arrows:
        out2.setdefault(a.source, []).append(a)
    arrows = []
    for x in C1.generators:
        for y in C2.generators:
            src = tensor_label(x.label, y.label)
            for a in out1.get(x.label, []):
                arrows.append(Arrow(src, tensor_label(a.target, y.label), a.coeff))
            sign = -1 if parity[x.label] else 1
            for b in out2.get(y.label, []):
                c = sign * b.coeff if ring == Z else b.coeff
                arrows.append(Arrow(src, tensor_label(x.label, b.target), c))
    return HatFilteredComplex(f"{C1.name}__{C2.name}", ring, tuple(gens), tuple(arrows))


@dataclass
class GradedPiece:
    level: int
    complex: HatFilteredComplex
    homology: HomologyPresentation


def associated_graded(C: HatFilteredComplex) -> list[GradedPiece]:
    """Filtration-preserving part of ``C``, level by level from the top."""
    _require_valid(C)
    pieces = []
    for level in reversed(C.levels()):
        gens = tuple(g for g in C.generators if g.alexander == level)
        names = {g.label for g in gens}
        arrows = tuple(a for a in C.arrows if a.source in names and a.target in names)
        piece = HatFilteredComplex(f"{C.name}[{level}]", C.ring, gens, arrows)
        pieces.append(GradedPiece(level, piece, homology(piece)))
    return pieces


# --- basis changes -------------------------------------------------------------


def change_basis(C: HatFilteredComplex, T: Sequence[Sequence[int]]) -> HatFilteredComplex:
    """Rewrite ``C`` in the basis given by the columns of ``T``.

    ``T`` must be unimodular and filtration-respecting: column ``k`` may only
    involve generators whose level is at most that of generator ``k``.  The
    new generator ``k`` keeps the label and level of the old one.
    """
    n = len(C.generators)
    levels = [g.alexander for g in C.generators]
    for k in range(n):
        for i in range(n):
            if T[i][k] and levels[i] > levels[k]:
                raise ComplexError("basis change raises filtration level")
    snf = linalg.smith_normal_form(T, n)
    if snf.rank != n or any(d != 1 for d in snf.diagonal):
        raise ComplexError("basis change is not unimodular")
    T_inv = linalg.matmul(snf.V, snf.U)
    Dn = linalg.matmul(T_inv, linalg.matmul(C.matrix(), T))
    labels = C.labels
    arrows = []
    for s in range(n):
        for t in range(n):
            x = Dn[t][s] % 2 if C.ring == Z2 else Dn[t][s]
            if x:
                arrows.append(Arrow(labels[s], labels[t], x))
    return replace(C, arrows=tuple(arrows))


# --- the contact class -----------------------------------------------------------


class Status(enum.Enum):
    ZERO = "ZERO"
    PRIMITIVE = "PRIMITIVE"
    DIVISIBLE = "DIVISIBLE"
    TORSION = "TORSION"


@dataclass
class ContactClassReport:
    """Image of the bottom-sublevel generator in the homology of the complex.

    The class is only defined up to sign; ``representative`` is normalised
    so that its first nonzero coefficient (in generator order) is positive.
    """

    complex_name: str
    genus: int
    labels: tuple[str, ...]
    sublevel_homology: HomologyPresentation
    homology: HomologyPresentation
    status: Status
    divisor: int
    representative: list[int]
    coordinates: tuple[list[int], list[int]]

    @property
    def status_text(self) -> str:
        if self.status is Status.DIVISIBLE:
            return f"DIVISIBLE({self.divisor})"
        return self.status.value

    def chain_text(self) -> str:
        terms = []
        for c, lab in zip(self.representative, self.labels):
            if c == 0:
                continue
            if c == 1:
                terms.append(f"+ {lab}" if terms else lab)
            elif c == -1:
                terms.append(f"- {lab}" if terms else f"-{lab}")
            else:
                sign = "+" if c > 0 else "-"
                body = f"{abs(c)}*{lab}"
                terms.append(f"{sign} {body}" if terms else (body if c > 0 else f"-{body}"))
        return " ".join(terms) if terms else "0"

    def lines(self) -> list[str]:
        return [
            f"complex: {self.complex_name}",
            f"genus: {self.genus}",
            f"sublevel: {-self.genus}",
            f"sublevel_homology: {self.sublevel_homology.summary()}",
            f"homology: {self.homology.summary()}",
            f"representative: {self.chain_text()}",
            f"status: {self.status_text}",
            "sign: defined up to sign",
        ]


def contact_class(C: HatFilteredComplex, g: int, via: int | None = None) -> ContactClassReport:
    """Classify the image of the generator of ``H(sublevel(C, -g))`` in ``H(C)``.

    ``via`` optionally routes the inclusion through an intermediate sublevel
    ``-g <= via``; the answer does not depend on it.
    """
    if g < 0:
        raise ValueError("genus must be nonnegative")
    _require_valid(C)
    bottom = sublevel(C, -g)
    H0 = homology(bottom)
    if H0.free_rank != 1 or H0.torsion:
        raise FibrationHypothesisViolated(
            f"H(sublevel {-g}) of {C.name!r} is {H0.summary()}, not {C.ring}"
        )
    idx = C.index()
    chain = [0] * len(C.generators)
    for lab, c in zip(bottom.labels, H0.free[0]):
        chain[idx[lab]] = c
    if via is not None:
        if via < -g:
            raise ValueError("intermediate level lies below the bottom sublevel")
        middle = sublevel(C, via)
        Hm = homology(middle)
        midx = middle.index()
        mchain = [0] * len(middle.generators)
        for lab, c in zip(bottom.labels, H0.free[0]):
            mchain[midx[lab]] = c
        fm, tm = Hm.coordinates(mchain)
        # rebuild the class from the intermediate homology basis, then include
        chain = [0] * len(C.generators)
        ordered = [h for _, h in Hm.torsion] + Hm.free
        for a, h in zip(list(tm) + list(fm), ordered):
            for lab, c in zip(middle.labels, h):
                chain[idx[lab]] += a * c
    H = homology(C)
    free, tors = H.coordinates(chain)
    if C.ring == Z2:
        chain = [x & 1 for x in chain]
    chain = canonical_sign(chain)
    if not any(free) and not any(tors):
        status, k = Status.ZERO, 0
    elif not any(free):
        status, k = Status.TORSION, 0
    else:
        k = linalg.content(free)
        status = Status.PRIMITIVE if k == 1 else Status.DIVISIBLE
    return ContactClassReport(C.name, g, C.labels, H0, H, status, k, chain, (free, tors))


def single_generator(name: str = "unknot", ring: str = Z, alexander: int = 0, label: str = "x") -> HatFilteredComplex:
    return HatFilteredComplex(name, ring, (HatGenerator(label, alexander, 0),), ())


def chain_from(labels: Iterable[str], C: AnyComplex, coeffs: Iterable[int] | None = None) -> list[int]:
    """Integer chain in ``C`` from labels (and optional coefficients)."""
    idx = C.index()
    v = [0] * len(C.generators)
    coeffs = list(coeffs) if coeffs is not None else None
    for k, lab in enumerate(labels):
        v[idx[lab]] += coeffs[k] if coeffs else 1
    return v
