"""
Pointed Heegaard diagrams stored as cellular maps on a closed surface.

The attaching curves cut the surface into regions.  Every intersection
point is a 4-valent vertex, each curve is a cycle of edges between
consecutive points, and each region is given by the cycles of darts that
bound it, traversed with the region on the left.  A dart is ``(edge, +1)``
for the curve orientation and ``(edge, -1)`` against it.

Everything else (corner counts, Euler contributions, the four regions at a
point, boundary multiplicities) is derived from this data, so a diagram
cannot be internally inconsistent once it validates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from . import linalg
from .cfk import ValidationReport

Dart = tuple[str, int]
GeneratorTuple = tuple[str, ...]

DEFAULT_CAP = 10**6
DEFAULT_BOX = 3


class DiagramError(ValueError):
    """Raised when a diagram does not validate or data is malformed."""


class EnumerationCapExceeded(RuntimeError):
    """Generator-tuple enumeration would exceed the configured cap."""


def reverse(d: Dart) -> Dart:
    return (d[0], -d[1])


@dataclass(frozen=True)
class Edge:
    curve: str
    tail: str
    head: str


@dataclass(frozen=True)
class Point:
    alpha: str
    beta: str


@dataclass(frozen=True)
class Region:
    cycles: tuple[tuple[Dart, ...], ...]
    chi: int = 1

    @property
    def corners(self) -> int:
        return sum(len(c) for c in self.cycles)

    @property
    def euler_contribution(self) -> Fraction:
        return Fraction(self.chi) - Fraction(self.corners, 4)


@dataclass(frozen=True)
class Meridian:
    """Knot data: the meridian replaces one beta curve and meets one alpha
    curve in a single point.  ``proxy`` is the point of the replaced curve
    that stands in for ``point`` when evaluating Chern classes."""

    curve: str
    point: str
    alpha: str
    replaces: str
    proxy: str


@dataclass
class MeasuredDiagram:
    name: str
    genus: int
    alphas: tuple[str, ...]
    betas: tuple[str, ...]
    points: dict[str, Point]
    edges: dict[str, Edge]
    regions: dict[str, Region]
    w: str
    z: str | None = None
    meridian: Meridian | None = None
    # curves bounding the fiber domain and a point where it is positive
    fiber: tuple[str, ...] = ()
    fiber_anchor: str | None = None
    distinguished: GeneratorTuple | None = None

    # --- derived data -------------------------------------------------------

    @cached_property
    def face_of(self) -> dict[Dart, str]:
        out = {}
        for rid, r in self.regions.items():
            for cyc in r.cycles:
                for d in cyc:
                    out[d] = rid
        return out

    @cached_property
    def _next(self) -> dict[Dart, Dart]:
        nxt = {}
        for r in self.regions.values():
            for cyc in r.cycles:
                for k, d in enumerate(cyc):
                    nxt[d] = cyc[(k + 1) % len(cyc)]
        return nxt

    @cached_property
    def _prev(self) -> dict[Dart, Dart]:
        return {b: a for a, b in self._next.items()}

    def dart_tail(self, d: Dart) -> str:
        e = self.edges[d[0]]
        return e.tail if d[1] > 0 else e.head

    def dart_head(self, d: Dart) -> str:
        e = self.edges[d[0]]
        return e.head if d[1] > 0 else e.tail

    @cached_property
    def region_order(self) -> tuple[str, ...]:
        return tuple(self.regions)

    @cached_property
    def curve_order(self) -> tuple[str, ...]:
        return self.alphas + self.betas

    @cached_property
    def corner_regions(self) -> dict[str, tuple[str, ...]]:
        """The regions at the four corners of each point, counterclockwise."""
        out: dict[str, tuple[str, ...]] = {}
        for p in self.points:
            start = next(
                ((eid, s) for eid, e in self.edges.items() for s in (1, -1)
                 if (e.tail if s > 0 else e.head) == p),
                None,
            )
            if start is None:
                out[p] = ()
                continue
            seq, d = [], start
            for _ in range(8):
                seq.append(self.face_of[d])
                d = reverse(self._prev[d])
                if d == start:
                    break
            out[p] = tuple(seq)
        return out

    def region_boundary(self) -> list[list[int]]:
        """Signed count of boundary darts of each region along each curve."""
        col = {c: k for k, c in enumerate(self.curve_order)}
        M = linalg.zeros(len(self.regions), len(col))
        for i, r in enumerate(self.regions.values()):
            for cyc in r.cycles:
                for eid, s in cyc:
                    M[i][col[self.edges[eid].curve]] += s
        return M

    def euler_characteristic(self) -> int:
        return len(self.points) - len(self.edges) + sum(r.chi for r in self.regions.values())

    def curve_kind(self, c: str) -> str:
        if c in self.alphas:
            return "alpha"
        if c in self.betas:
            return "beta"
        raise KeyError(c)

    def points_between(self, alpha: str, beta: str) -> list[str]:
        return [p for p, pt in self.points.items() if pt.alpha == alpha and pt.beta == beta]


def validate_diagram(d: MeasuredDiagram) -> ValidationReport:
    problems: list[str] = []
    curves = set(d.alphas) | set(d.betas)
    if len(curves) != len(d.alphas) + len(d.betas):
        problems.append("curve names are not distinct")
    if len(d.alphas) != d.genus or len(d.betas) != d.genus:
        problems.append(f"need {d.genus} alpha and {d.genus} beta curves")
    for p, pt in d.points.items():
        if pt.alpha not in d.alphas or pt.beta not in d.betas:
            problems.append(f"point {p} is not on an alpha and a beta curve")
    for eid, e in d.edges.items():
        if e.curve not in curves:
            problems.append(f"edge {eid} lies on unknown curve {e.curve}")
            continue
        for end in (e.tail, e.head):
            pt = d.points.get(end)
            if pt is None:
                problems.append(f"edge {eid} ends at unknown point {end}")
            elif e.curve not in (pt.alpha, pt.beta):
                problems.append(f"edge {eid} on {e.curve} ends at {end}, which is not on that curve")
    if problems:
        return ValidationReport(False, problems)

    seen: dict[Dart, str] = {}
    for rid, r in d.regions.items():
        if not r.cycles:
            problems.append(f"region {rid} has no boundary")
        for cyc in r.cycles:
            for k, dart in enumerate(cyc):
                if dart[0] not in d.edges or dart[1] not in (1, -1):
                    problems.append(f"region {rid} uses unknown dart {dart}")
                    continue
                if dart in seen:
                    problems.append(f"dart {dart} bounds both {seen[dart]} and {rid}")
                seen[dart] = rid
                nxt = cyc[(k + 1) % len(cyc)]
                if nxt[0] not in d.edges:
                    continue
                if d.dart_head(dart) != d.dart_tail(nxt):
                    problems.append(f"region {rid}: darts {dart} and {nxt} do not meet")
                if d.curve_kind(d.edges[dart[0]].curve) == d.curve_kind(d.edges[nxt[0]].curve):
                    problems.append(f"region {rid}: corner between {dart} and {nxt} is not an alpha-beta corner")
    for eid in d.edges:
        for s in (1, -1):
            if (eid, s) not in seen:
                problems.append(f"dart {(eid, s)} bounds no region")
    if problems:
        return ValidationReport(False, problems)

    valence = {p: 0 for p in d.points}
    for e in d.edges.values():
        valence[e.tail] += 1
        valence[e.head] += 1
    for p, n in valence.items():
        if n != 4:
            problems.append(f"point {p} has valence {n}, expected 4")
    for p, regs in d.corner_regions.items():
        if len(regs) != 4:
            problems.append(f"point {p} has {len(regs)} corners, expected 4")
    for c in curves:
        if not any(e.curve == c for e in d.edges.values()):
            problems.append(f"curve {c} meets no curve of the other kind")
        elif not _is_single_cycle(d, c):
            problems.append(f"curve {c} is not a single closed cycle")
    chi = d.euler_characteristic()
    if chi != 2 - 2 * d.genus:
        problems.append(f"Euler characteristic {chi} differs from 2 - 2*genus = {2 - 2 * d.genus}")
    for label, rid in (("w", d.w), ("z", d.z)):
        if rid is not None and rid not in d.regions:
            problems.append(f"basepoint {label} lies in unknown region {rid}")
    for p in (d.fiber_anchor, *(d.distinguished or ())):
        if p is not None and p not in d.points and (d.meridian is None or p != d.meridian.point):
            problems.append(f"unknown point {p}")
    for c in d.fiber:
        if c not in curves:
            problems.append(f"fiber curve {c} is unknown")
    m = d.meridian
    if m is not None:
        if m.alpha not in d.alphas or m.replaces not in d.betas:
            problems.append("meridian data names unknown curves")
        elif d.points.get(m.proxy, Point("", "")) != Point(m.alpha, m.replaces):
            problems.append(f"meridian proxy {m.proxy} is not on {m.alpha} and {m.replaces}")
    return ValidationReport(not problems, problems)


def _is_single_cycle(d: MeasuredDiagram, c: str) -> bool:
    es = [e for e in d.edges.values() if e.curve == c]
    out = {}
    for e in es:
        if e.tail in out:
            return False
        out[e.tail] = e.head
    start = es[0].tail
    p, n = start, 0
    while True:
        p = out.get(p)
        n += 1
        if p is None:
            return False
        if p == start:
            return n == len(es)


def require_valid(d: MeasuredDiagram) -> None:
    rep = validate_diagram(d)
    if not rep.ok:
        raise DiagramError("; ".join(rep.problems))


# --- periodic domains ----------------------------------------------------------------


@dataclass(frozen=True)
class PeriodicDomain:
    multiplicities: tuple[int, ...]
    boundary: tuple[int, ...]
    regions: tuple[str, ...] = field(repr=False, compare=False, default=())
    curves: tuple[str, ...] = field(repr=False, compare=False, default=())

    def __getitem__(self, region: str) -> int:
        return self.multiplicities[self.regions.index(region)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.regions, self.multiplicities))

    def boundary_dict(self) -> dict[str, int]:
        return {c: k for c, k in zip(self.curves, self.boundary) if k}

    def values(self) -> set[int]:
        return set(self.multiplicities)

    def _combine(self, other: "PeriodicDomain", a: int, b: int) -> "PeriodicDomain":
        return PeriodicDomain(
            tuple(a * x + b * y for x, y in zip(self.multiplicities, other.multiplicities)),
            tuple(a * x + b * y for x, y in zip(self.boundary, other.boundary)),
            self.regions, self.curves,
        )

    def __add__(self, other: "PeriodicDomain") -> "PeriodicDomain":
        return self._combine(other, 1, 1)

    def __sub__(self, other: "PeriodicDomain") -> "PeriodicDomain":
        return self._combine(other, 1, -1)

    def __neg__(self) -> "PeriodicDomain":
        return self.scale(-1)

    def scale(self, k: int) -> "PeriodicDomain":
        return self._combine(self, k, 0)

    def is_zero(self) -> bool:
        return not any(self.multiplicities)

    def boundary_text(self) -> str:
        parts = []
        for c, k in self.boundary_dict().items():
            sign = "-" if k < 0 else "+"
            mag = "" if abs(k) == 1 else f"{abs(k)}*"
            parts.append(f"{sign} {mag}{c}")
        text = " ".join(parts) or "0"
        return text[2:] if text.startswith("+ ") else text


def domain_from_multiplicities(d: MeasuredDiagram, mult: Mapping[str, int]) -> PeriodicDomain:
    """Check that ``mult`` is periodic and attach its boundary."""
    m = tuple(int(mult.get(r, 0)) for r in d.region_order)
    if m[d.region_order.index(d.w)]:
        raise DiagramError("a periodic domain has multiplicity 0 at w")
    k = {}
    for eid, e in d.edges.items():
        jump = m[d.region_order.index(d.face_of[(eid, 1)])] - m[d.region_order.index(d.face_of[(eid, -1)])]
        if k.setdefault(e.curve, jump) != jump:
            raise DiagramError(f"boundary is not a union of whole curves along {e.curve}")
    return PeriodicDomain(m, tuple(k.get(c, 0) for c in d.curve_order), d.region_order, d.curve_order)


def periodic_domains(d: MeasuredDiagram, curves: Iterable[str] | None = None) -> list[PeriodicDomain]:
    """Hermite-reduced basis of periodic domains.

    ``curves`` restricts which curves may appear in the boundary; by default
    every alpha and beta curve may.
    """
    require_valid(d)
    allowed = list(d.curve_order) if curves is None else [c for c in d.curve_order if c in set(curves)]
    if curves is not None and len(allowed) != len(set(curves)):
        raise DiagramError(f"unknown curves among {sorted(set(curves))}")
    ridx = {r: k for k, r in enumerate(d.region_order)}
    nreg = len(ridx)
    kidx = {c: nreg + k for k, c in enumerate(allowed)}
    n = nreg + len(allowed)
    rows = []
    for eid, e in d.edges.items():
        row = [0] * n
        row[ridx[d.face_of[(eid, 1)]]] += 1
        row[ridx[d.face_of[(eid, -1)]]] -= 1
        if e.curve in kidx:
            row[kidx[e.curve]] -= 1
        rows.append(row)
    wrow = [0] * n
    wrow[ridx[d.w]] = 1
    rows.append(wrow)
    basis = linalg.integer_kernel(rows, n)
    out = []
    for v in basis:
        bd = {c: v[kidx[c]] for c in allowed}
        out.append(PeriodicDomain(
            tuple(v[:nreg]), tuple(bd.get(c, 0) for c in d.curve_order), d.region_order, d.curve_order,
        ))
    return out


def euler_measure(d: MeasuredDiagram, P: PeriodicDomain) -> Fraction:
    return sum(
        (m * d.regions[r].euler_contribution for r, m in zip(d.region_order, P.multiplicities)),
        Fraction(0),
    )


def local_multiplicity(d: MeasuredDiagram, point: str, P: PeriodicDomain) -> Fraction:
    """Average of the multiplicities at the four corners of ``point``."""
    mult = P.as_dict()
    regs = d.corner_regions[point]
    return Fraction(sum(mult[r] for r in regs), len(regs))


def _resolve(d: MeasuredDiagram, y: Sequence[str]) -> list[str]:
    m = d.meridian
    return [m.proxy if m is not None and p == m.point else p for p in y]


def point_measure(d: MeasuredDiagram, y: Sequence[str], P: PeriodicDomain) -> Fraction:
    """Sum of the local multiplicities at the coordinates of ``y``.

    A meridian point is measured at its proxy on the replaced curve.
    """
    return sum((local_multiplicity(d, p, P) for p in _resolve(d, y)), Fraction(0))


def chern_evaluation(d: MeasuredDiagram, y: Sequence[str], P: PeriodicDomain) -> int:
    """``chi(P) + 2 * nbar_y(P)``; a fractional value signals bad corner data."""
    value = euler_measure(d, P) + 2 * point_measure(d, y, P)
    if value.denominator != 1:
        raise DiagramError(f"Chern evaluation {value} is not an integer; corner data is malformed")
    return int(value)


# --- admissibility -------------------------------------------------------------------


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    box: int
    rank: int
    witness: PeriodicDomain | None = None
    coefficients: tuple[int, ...] | None = None

    def lines(self) -> list[str]:
        out = [f"admissible: {'yes' if self.admissible else 'no'}", f"rank: {self.rank}", f"box: {self.box}"]
        if self.witness is not None:
            out.append("witness_coefficients: " + " ".join(str(c) for c in self.coefficients))
            out.append(f"witness_boundary: {self.witness.boundary_text()}")
            out.append("witness_values: " + " ".join(str(v) for v in sorted(self.witness.values())))
        return out


def _box_vectors(rank: int, box: int) -> Iterator[tuple[int, ...]]:
    """Nonzero vectors in ``[-box, box]^rank`` up to sign, by increasing sup norm."""
    for size in range(1, box + 1):
        for v in itertools.product(range(-size, size + 1), repeat=rank):
            if max(abs(x) for x in v) != size:
                continue
            first = next(x for x in v if x)
            if first > 0:
                yield v


def weak_admissibility(
    d: MeasuredDiagram,
    box: int = DEFAULT_BOX,
    basis: Sequence[PeriodicDomain] | None = None,
) -> AdmissibilityReport:
    """Search lattice combinations with coefficients in ``[-box, box]`` for a
    nonzero domain whose multiplicities all have one sign.

    This is a semi-decision: "admissible" means no violating domain exists
    inside the box.
    """
    import numpy as np

    if basis is None:
        basis = periodic_domains(d)
    r = len(basis)
    if r == 0:
        return AdmissibilityReport(True, box, 0)
    # distinct multiplicity patterns are all that matter
    M = np.unique(np.array([b.multiplicities for b in basis], dtype=np.int64).T, axis=0)
    vecs = list(_box_vectors(r, box))
    chunk = 50_000
    for start in range(0, len(vecs), chunk):
        V = np.array(vecs[start:start + chunk], dtype=np.int64)
        vals = V @ M.T
        one_sign = np.all(vals >= 0, axis=1) | np.all(vals <= 0, axis=1)
        hits = np.nonzero(one_sign)[0]
        if len(hits):
            c = vecs[start + int(hits[0])]
            dom = basis[0].scale(c[0])
            for k in range(1, r):
                dom = dom + basis[k].scale(c[k])
            if min(dom.multiplicities) < 0:
                dom, c = -dom, tuple(-x for x in c)
            return AdmissibilityReport(False, box, r, dom, c)
    return AdmissibilityReport(True, box, r)


# --- generator tuples ----------------------------------------------------------------


def _tuple_space(d: MeasuredDiagram, mode: str) -> tuple[list[str], dict[str, list[tuple[str, str]]]]:
    """Alpha curves in order and, for each, the available (point, beta) pairs."""
    if mode not in ("knot", "surgery"):
        raise ValueError("mode must be 'knot' or 'surgery'")
    options: dict[str, list[tuple[str, str]]] = {a: [] for a in d.alphas}
    skip = None
    if mode == "knot":
        if d.meridian is None:
            raise DiagramError("diagram carries no meridian data; use surgery mode")
        skip = d.meridian.replaces
        options[d.meridian.alpha].append((d.meridian.point, d.meridian.curve))
    for p, pt in d.points.items():
        if pt.beta != skip:
            options[pt.alpha].append((p, pt.beta))
    return list(d.alphas), options


def generator_tuples(d: MeasuredDiagram, mode: str = "knot", cap: int = DEFAULT_CAP) -> list[GeneratorTuple]:
    """All generator tuples, one point per alpha curve on distinct beta curves.

    In ``knot`` mode the meridian replaces its beta curve, so every tuple
    contains the meridian point.  Tuples list points in alpha-curve order.
    """
    alphas, options = _tuple_space(d, mode)
    out: list[GeneratorTuple] = []
    chosen: list[str] = []
    used: set[str] = set()

    def rec(k: int) -> None:
        if k == len(alphas):
            out.append(tuple(chosen))
            if len(out) > cap:
                raise EnumerationCapExceeded(f"more than {cap} generator tuples")
            return
        for p, b in options[alphas[k]]:
            if b not in used:
                used.add(b)
                chosen.append(p)
                rec(k + 1)
                chosen.pop()
                used.discard(b)

    rec(0)
    return out


def chern_spectrum(
    d: MeasuredDiagram, P: PeriodicDomain, mode: str = "knot", cap: int = DEFAULT_CAP
) -> dict[int, list[GeneratorTuple]]:
    """Generator tuples grouped by Chern value, values in increasing order."""
    chi = euler_measure(d, P)
    local = {p: local_multiplicity(d, p, P) for p in d.points}
    groups: dict[int, list[GeneratorTuple]] = {}
    for y in generator_tuples(d, mode, cap):
        value = chi + 2 * sum((local[p] for p in _resolve(d, y)), Fraction(0))
        if value.denominator != 1:
            raise DiagramError(f"Chern evaluation {value} of {y} is not an integer")
        groups.setdefault(int(value), []).append(y)
    return dict(sorted(groups.items()))


def _bounded_tuples(
    d: MeasuredDiagram, P: PeriodicDomain, mode: str, limit: Fraction | None, cap: int
) -> Iterator[tuple[Fraction, GeneratorTuple]]:
    """Tuples whose point measure is at most ``limit`` (all tuples if None),
    pruned by the sum of per-curve minima over the remaining alpha curves.
    ``limit`` shrinks to the best value found when it is the string "min"."""
    alphas, options = _tuple_space(d, mode)
    weight = {p: local_multiplicity(d, p, P) for p in d.points}
    if d.meridian is not None and mode == "knot":
        weight[d.meridian.point] = weight[d.meridian.proxy]
    opts = [sorted(options[a], key=lambda o: weight[o[0]]) for a in alphas]
    floor = [Fraction(0)] * (len(alphas) + 1)
    for k in range(len(alphas) - 1, -1, -1):
        low = min((weight[p] for p, _ in opts[k]), default=None)
        if low is None:
            return
        floor[k] = floor[k + 1] + low
    visited = 0
    chosen: list[str] = []
    used: set[str] = set()

    def rec(k: int, acc: Fraction) -> Iterator[tuple[Fraction, GeneratorTuple]]:
        nonlocal visited
        if k == len(alphas):
            visited += 1
            if visited > cap:
                raise EnumerationCapExceeded(f"more than {cap} generator tuples")
            yield acc, tuple(chosen)
            return
        for p, b in opts[k]:
            if b in used:
                continue
            total = acc + weight[p]
            if limit is not None and total + floor[k + 1] > limit:
                break
            used.add(b)
            chosen.append(p)
            yield from rec(k + 1, total)
            chosen.pop()
            used.discard(b)

    yield from rec(0, Fraction(0))


def _min_measure(d: MeasuredDiagram, P: PeriodicDomain, mode: str, cap: int) -> Fraction | None:
    """Branch and bound for the smallest point measure over all tuples."""
    alphas, options = _tuple_space(d, mode)
    weight = {p: local_multiplicity(d, p, P) for p in d.points}
    if d.meridian is not None and mode == "knot":
        weight[d.meridian.point] = weight[d.meridian.proxy]
    opts = [sorted(options[a], key=lambda o: weight[o[0]]) for a in alphas]
    if any(not o for o in opts):
        return None
    floor = [Fraction(0)] * (len(alphas) + 1)
    for k in range(len(alphas) - 1, -1, -1):
        floor[k] = floor[k + 1] + weight[opts[k][0][0]]
    best: list[Fraction | None] = [None]
    visited = [0]
    used: set[str] = set()

    def rec(k: int, acc: Fraction) -> None:
        if k == len(alphas):
            visited[0] += 1
            if visited[0] > cap:
                raise EnumerationCapExceeded(f"more than {cap} generator tuples")
            if best[0] is None or acc < best[0]:
                best[0] = acc
            return
        for p, b in opts[k]:
            if b in used:
                continue
            total = acc + weight[p]
            if best[0] is not None and total + floor[k + 1] >= best[0]:
                break
            used.add(b)
            rec(k + 1, total)
            used.discard(b)

    rec(0, Fraction(0))
    return best[0]


def _as_chern(d: MeasuredDiagram, P: PeriodicDomain, nbar: Fraction) -> int:
    value = euler_measure(d, P) + 2 * nbar
    if value.denominator != 1:
        raise DiagramError(f"Chern evaluation {value} is not an integer; corner data is malformed")
    return int(value)


def tuples_at_most(
    d: MeasuredDiagram, P: PeriodicDomain, value: int, mode: str = "knot", cap: int = DEFAULT_CAP
) -> dict[int, list[GeneratorTuple]]:
    """Tuples with Chern evaluation at most ``value``, grouped by value.

    Only tuples that can reach the bound are visited, so this stays cheap
    for low values even when the full tuple count is huge.
    """
    limit = (value - euler_measure(d, P)) / 2
    groups: dict[int, list[GeneratorTuple]] = {}
    for nbar, y in _bounded_tuples(d, P, mode, limit, cap):
        groups.setdefault(_as_chern(d, P, nbar), []).append(y)
    return {k: sorted(v) for k, v in sorted(groups.items())}


def minimal_chern_points(
    d: MeasuredDiagram, P: PeriodicDomain, mode: str = "knot", cap: int = DEFAULT_CAP
) -> tuple[int, list[GeneratorTuple]]:
    """The minimal Chern value and every tuple attaining it."""
    low = _min_measure(d, P, mode, cap)
    if low is None:
        raise DiagramError("the diagram has no generator tuples")
    value = _as_chern(d, P, low)
    return value, tuples_at_most(d, P, value, mode, cap).get(value, [])


def relabel_regions(d: MeasuredDiagram, mapping: Mapping[str, str]) -> MeasuredDiagram:
    """Copy of ``d`` with regions renamed (and reordered by new name)."""
    regions = {mapping[r]: reg for r, reg in d.regions.items()}
    regions = dict(sorted(regions.items()))
    return MeasuredDiagram(
        d.name, d.genus, d.alphas, d.betas, dict(d.points), dict(d.edges), regions,
        mapping[d.w], None if d.z is None else mapping[d.z], d.meridian,
        d.fiber, d.fiber_anchor, d.distinguished,
    )


def fiber_domain(d: MeasuredDiagram) -> PeriodicDomain:
    """The periodic domain bounded by the declared fiber curves, signed to be
    positive at the anchor point."""
    if not d.fiber or d.fiber_anchor is None:
        raise DiagramError("diagram declares no fiber curves")
    basis = periodic_domains(d, d.fiber)
    if len(basis) != 1:
        raise DiagramError(f"expected one domain bounded by {' '.join(d.fiber)}, found {len(basis)}")
    P = basis[0]
    if local_multiplicity(d, d.fiber_anchor, P) < 0:
        P = -P
    return P
