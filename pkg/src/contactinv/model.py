"""
The identity-monodromy model diagram for a genus-g fibered knot.

``A`` is a genus-g surface whose boundary is ``alpha1`` and ``lambda``.  Cut
along the 2g arcs ``xi_i`` (ends on ``lambda``) it becomes an annulus whose
outer boundary alternates between pieces of ``lambda`` and copies of the
``xi`` arcs, handle by handle in the pattern ``xi_{2k} xi_{2k+1} xi_{2k}^-1
xi_{2k+1}^-1``.  Each ``eta_i`` runs radially from ``alpha1`` to the middle
``x_i`` of the first copy of ``xi_i`` and back from the second copy, so the
radial arcs cut the annulus into 4g hexagonal sectors.  The mirror ``Abar``
is glued along ``alpha1`` and ``lambda`` and the arcs close up into the
curves ``alpha_i`` and ``beta_i``.

The meridian crosses the last sector.  ``lambda`` is wound along it by
finger moves, first half way (creating ``u``, ``v`` and the region ``D``
holding both basepoints) and then once more (creating ``u'``, ``v'`` and the
bigon ``D'``).  Admissibility comes from winding ``alpha_{2i}`` along a
loop ``tau_i`` in ``A`` across ``beta_{2i+1}``, and ``alpha_{2i+1}`` along a
loop ``sigmabar_i`` in ``Abar`` across ``beta_{2i}``, a few nested laps in
each direction.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .heegaard import (
    Dart,
    DiagramError,
    Edge,
    GeneratorTuple,
    MeasuredDiagram,
    Meridian,
    PeriodicDomain,
    Point,
    Region,
    fiber_domain,
    require_valid,
    reverse,
)


class MapBuilder:
    """Mutable cellular map supporting finger moves."""

    def __init__(self, alphas: list[str], betas: list[str]):
        self.alphas = list(alphas)
        self.betas = list(betas)
        self.points: dict[str, Point] = {}
        self.edges: dict[str, Edge] = {}
        self.faces: dict[str, list[Dart]] = {}
        self._count: dict[str, int] = defaultdict(int)

    def point(self, name: str, c1: str, c2: str) -> str:
        a, b = (c1, c2) if c1 in self.alphas else (c2, c1)
        if a not in self.alphas or b not in self.betas:
            raise DiagramError(f"point {name} must lie on an alpha and a beta curve")
        self.points[name] = Point(a, b)
        return name

    def edge(self, curve: str, tail: str, head: str, name: str | None = None) -> str:
        if name is None:
            name = f"{curve}.{self._count[curve]}"
        self._count[curve] += 1
        self.edges[name] = Edge(curve, tail, head)
        return name

    def tail(self, d: Dart) -> str:
        e = self.edges[d[0]]
        return e.tail if d[1] > 0 else e.head

    def head(self, d: Dart) -> str:
        e = self.edges[d[0]]
        return e.head if d[1] > 0 else e.tail

    def face_with(self, *darts: Dart) -> str:
        for fid, cyc in self.faces.items():
            if all(d in cyc for d in darts):
                return fid
        raise DiagramError(f"no region is bounded by all of {darts}")

    def _replace(self, old: Dart, new: list[Dart]) -> None:
        fid = self.face_with(old)
        cyc = self.faces[fid]
        k = cyc.index(old)
        self.faces[fid] = cyc[:k] + new + cyc[k + 1:]

    def _split(self, d: Dart, p: str, q: str) -> list[Dart]:
        """Split the edge under ``d`` at ``p`` then ``q`` (in the direction of ``d``)."""
        e = self.edges.pop(d[0])
        if d[1] > 0:
            names = [self.edge(e.curve, e.tail, p), self.edge(e.curve, p, q), self.edge(e.curve, q, e.head)]
            return [(n, 1) for n in names]
        names = [self.edge(e.curve, e.tail, q), self.edge(e.curve, q, p), self.edge(e.curve, p, e.head)]
        return [(n, -1) for n in reversed(names)]

    def push(self, e: Dart, f: Dart, p: str, q: str, tip: str, halves: tuple[str, str] | None = None) -> dict[str, Dart]:
        """Push a finger of the curve under dart ``e`` across the region on the
        left of ``e`` and over the edge under dart ``f`` (same region).

        ``p`` and ``q`` name the new points on ``f``, ``p`` nearer the tail of
        ``f``.  The region is split in two (``halves``) and the finger tip
        cuts off a bigon named ``tip`` from the region beyond ``f``.
        """
        F = self.face_with(e, f)
        cyc = self.faces.pop(F)
        k = cyc.index(e)
        cyc = cyc[k:] + cyc[:k]
        j = cyc.index(f)
        side_a, side_b = cyc[1:j], cyc[j + 1:]
        c_curve, f_curve = self.edges[e[0]].curve, self.edges[f[0]].curve
        self.point(p, c_curve, f_curve)
        self.point(q, c_curve, f_curve)
        u0, u1 = self.tail(e), self.head(e)
        c1, c2, c3 = self._split(e, q, p)  # u0 -> q -> p -> u1
        fa, fm, fb = self._split(f, p, q)
        assert self.tail(c1) == u0 and self.head(c3) == u1
        h1, h2 = halves or (f"{F}+", f"{F}-")
        self.faces[h1] = [c3] + side_a + [fa]
        self.faces[h2] = [fb] + side_b + [c1]
        self.faces[tip] = [reverse(fm), reverse(c2)]
        self._replace(reverse(e), [reverse(c3), fm, reverse(c1)])
        self._replace(reverse(f), [reverse(fb), c2, reverse(fa)])
        return {"c1": c1, "c2": c2, "c3": c3, "fa": fa, "fm": fm, "fb": fb}

    def build(self, name: str, genus: int, w: str, z: str | None, **extra) -> MeasuredDiagram:
        regions = {fid: Region((tuple(cyc),)) for fid, cyc in self.faces.items()}
        d = MeasuredDiagram(
            name, genus, tuple(self.alphas), tuple(self.betas), dict(self.points), dict(self.edges),
            regions, w, z, **extra,
        )
        require_valid(d)
        return d


# --- the sector model ----------------------------------------------------------------


def _slots(g: int) -> list[tuple[int, int]]:
    """(xi index, +1/-1) for each copy on the outer boundary of the cut annulus."""
    out = []
    for k in range(g):
        a, b = 2 * k + 2, 2 * k + 3
        out += [(a, 1), (b, 1), (a, -1), (b, -1)]
    return out


def _sector_model(g: int) -> MapBuilder:
    slots = _slots(g)
    n = len(slots)
    alphas = ["alpha1"] + [f"alpha{i}" for i in range(2, 2 * g + 2)]
    betas = ["lambda"] + [f"beta{i}" for i in range(2, 2 * g + 2)]
    mb = MapBuilder(alphas, betas)
    plus = {i: s for s, (i, e) in enumerate(slots) if e > 0}
    minus = {i: s for s, (i, e) in enumerate(slots) if e < 0}
    idx = range(2, 2 * g + 2)

    for s, (i, _) in enumerate(slots):
        mb.point(f"p{s}", "alpha1", f"beta{i}")
    for i in idx:
        mb.point(f"x{i}", f"alpha{i}", f"beta{i}")
        mb.point(f"xbar{i}", f"alpha{i}", f"beta{i}")
        mb.point(f"qs{i}", f"alpha{i}", "lambda")
        mb.point(f"qe{i}", f"alpha{i}", "lambda")

    for i in idx:
        a, b = f"alpha{i}", f"beta{i}"
        mb.edge(a, f"qs{i}", f"x{i}", f"xi{i}-")
        mb.edge(a, f"x{i}", f"qe{i}", f"xi{i}+")
        mb.edge(a, f"qe{i}", f"xbar{i}", f"xibar{i}+")
        mb.edge(a, f"xbar{i}", f"qs{i}", f"xibar{i}-")
        mb.edge(b, f"p{plus[i]}", f"x{i}", f"eta{i}-")
        mb.edge(b, f"x{i}", f"p{minus[i]}", f"eta{i}+")
        mb.edge(b, f"p{minus[i]}", f"xbar{i}", f"etabar{i}+")
        mb.edge(b, f"xbar{i}", f"p{plus[i]}", f"etabar{i}-")

    def upper_end(s: int) -> str:
        i, e = slots[s]
        return f"qe{i}" if e > 0 else f"qs{i}"

    def lower_end(s: int) -> str:
        i, e = slots[s]
        return f"qs{i}" if e > 0 else f"qe{i}"

    for s in range(n):
        mb.edge("alpha1", f"p{s}", f"p{(s + 1) % n}", f"alpha1:{s}")
        mb.edge("lambda", upper_end(s), lower_end((s + 1) % n), f"lambda:{s}")

    def outward(s: int) -> Dart:
        i, e = slots[s]
        return (f"eta{i}-", 1) if e > 0 else (f"eta{i}+", -1)

    def upper_half(s: int) -> Dart:
        i, e = slots[s]
        return (f"xi{i}+", 1) if e > 0 else (f"xi{i}-", -1)

    def lower_half(s: int) -> Dart:
        i, e = slots[s]
        return (f"xi{i}-", 1) if e > 0 else (f"xi{i}+", -1)

    for s in range(n):
        t = (s + 1) % n
        cyc = [
            outward(s), upper_half(s), (f"lambda:{s}", 1), lower_half(t),
            reverse(outward(t)), (f"alpha1:{s}", -1),
        ]
        mb.faces[f"A{s}"] = cyc
        mirror = []
        for eid, sign in reversed(cyc):
            if eid.startswith(("alpha1:", "lambda:")):
                mirror.append((eid, -sign))
            else:
                mirror.append((eid.replace("xi", "xibar", 1).replace("eta", "etabar", 1), sign))
        mb.faces[f"Abar{s}"] = mirror
    return mb


# --- the model diagram ---------------------------------------------------------------


WINDINGS = ("once", "twice")


@dataclass(frozen=True)
class ModelDiagram:
    genus: int  # genus of the fiber; the surface has genus 2g+1
    winding: str
    admissible_windings: bool
    diagram: MeasuredDiagram
    P: PeriodicDomain
    x: GeneratorTuple  # knot tuple x1 x x2 x ... x x_{2g+1}
    x_prime: GeneratorTuple  # x with x1 replaced by its proxy

    @property
    def proxy(self) -> str:
        return self.diagram.meridian.proxy


def wind(mb: MapBuilder, e: Dart, f: Dart, laps: int, prefix: str) -> None:
    """Wind the curve under ``e`` ``laps`` times around a loop that leaves
    across ``f`` and returns to the curve, in both directions.

    Each lap after the first pushes the previous finger tip once more
    around inside the previous finger, so the laps nest.
    """
    n = 0

    def push(e: Dart, f: Dart) -> dict[str, Dart]:
        nonlocal n
        n += 1
        return mb.push(e, f, f"{prefix}.{n}a", f"{prefix}.{n}b", f"{prefix}.{n}", (f"{prefix}.{n}+", f"{prefix}.{n}-"))

    first = step = push(e, f)
    for _ in range(laps - 1):
        step = push(step["c2"], step["fm"])
    # the opposite direction starts from the base of the first finger
    step = push(reverse(first["c3"]), reverse(first["fa"]))
    for _ in range(laps - 1):
        step = push(step["c2"], step["fm"])


def build_model_diagram(g: int, winding: str = "twice", admissible: bool = True, laps: int = 2) -> ModelDiagram:
    """Model diagram for the genus-g fibered knot with identity monodromy.

    ``winding`` is ``"twice"`` (default) or ``"once"`` (the last finger
    move undone).  ``admissible=False`` skips the tau / sigma
    windings and gives the non-admissible variant.
    """
    if g < 1:
        raise ValueError("the model needs fiber genus g >= 1")
    if winding not in WINDINGS:
        raise ValueError(f"winding must be one of {WINDINGS}")
    mb = _sector_model(g)
    last = 4 * g - 1
    # half way along the meridian: lambda through Abar across alpha1
    first = mb.push((f"lambda:{last}", -1), (f"alpha1:{last}", 1), "u", "v", "D",
                    (f"Abar{last}+", f"Abar{last}-"))
    w_region, proxy = "D", "u"
    if winding == "twice":
        # once more around, avoiding the basepoints
        mb.push(first["c2"], first["fm"], "u'", "v'", "D'", (f"A{last}+", f"A{last}-"))
        proxy = "u'"
    if admissible:
        for k in range(g):
            i = k + 1
            a, b = 2 * i, 2 * i + 1
            # alpha_{2i} along tau_i in A, across beta_{2i+1}
            wind(mb, (f"xi{a}+", 1), (f"eta{b}-", -1), laps, f"t{i}")
            # alpha_{2i+1} along sigmabar_i in Abar, across beta_{2i}
            wind(mb, (f"xibar{b}+", 1), (f"etabar{a}+", 1), laps, f"s{i}")
    meridian = Meridian("mu", "x1", "alpha1", "lambda", proxy)
    name = f"model_g{g}" + ("" if winding == "twice" else f"_{winding}") + ("" if admissible else "_prewind")
    x = ("x1",) + tuple(f"x{i}" for i in range(2, 2 * g + 2))
    d = mb.build(
        name, 2 * g + 1, w_region, w_region,
        meridian=meridian, fiber=("alpha1", "lambda"), fiber_anchor="x2", distinguished=x,
    )
    return ModelDiagram(g, winding, admissible, d, fiber_domain(d), x, (proxy,) + x[1:])
