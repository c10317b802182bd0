"""
Text formats for complexes, open books and Heegaard diagrams.

All three are line based.  ``#`` starts a comment, blank lines are ignored
and every file ends with ``end``.  Emitters write the canonical form, so
``parse(emit(x)) == x`` and ``emit(parse(text)) == text`` for canonical text.

Complex files::

    name trefoil_right
    ring Z
    kind bifiltered
    gen x i=-1 j=0
    gen z i=0 j=0 m=0
    arrow z x 1
    end

Hat complexes use ``kind hat`` and ``gen LABEL a=<alexander> [m=<maslov>]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Iterator

from . import cfk, heegaard, mcg
from .cfk import Arrow, BifilteredComplex, BiGenerator, HatFilteredComplex, HatGenerator
from .heegaard import Edge, MeasuredDiagram, Meridian, Point, Region


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Token:
    text: str
    column: int


def _lines(text: str) -> Iterator[tuple[int, list[_Token]]]:
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [_Token(m.group(), m.start() + 1) for m in re.finditer(r"\S+", body)]
        if toks:
            yield n, toks


def _int(tok: _Token, line: int, what: str) -> int:
    try:
        return int(tok.text)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok.text!r}", line, tok.column) from None


def _keyvals(toks: list[_Token], line: int, allowed: tuple[str, ...]) -> dict[str, int]:
    out: dict[str, int] = {}
    for tok in toks:
        key, eq, val = tok.text.partition("=")
        if not eq:
            raise ParseError(f"expected key=value, got {tok.text!r}", line, tok.column)
        if key not in allowed:
            raise ParseError(f"unknown key {key!r} (allowed: {', '.join(allowed)})", line, tok.column)
        if key in out:
            raise ParseError(f"duplicate key {key!r}", line, tok.column)
        try:
            out[key] = int(val)
        except ValueError:
            raise ParseError(f"value of {key} must be an integer, got {val!r}", line, tok.column + len(key) + 1) from None
    return out


class _Reader:
    """Header-then-body reader shared by the formats."""

    def __init__(self, text: str):
        self.items = list(_lines(text))
        self.pos = 0
        self.last_line = len(text.splitlines()) or 1

    def __iter__(self):
        return self

    def __next__(self) -> tuple[int, list[_Token]]:
        if self.pos >= len(self.items):
            raise StopIteration
        self.pos += 1
        return self.items[self.pos - 1]

    def header(self, key: str) -> tuple[int, list[_Token]]:
        item = next(self, None)
        if item is None:
            raise ParseError(f"missing '{key}' line", self.last_line)
        n, toks = item
        if toks[0].text != key:
            raise ParseError(f"expected '{key}', got {toks[0].text!r}", n, toks[0].column)
        return n, toks

    def single(self, key: str) -> tuple[int, _Token]:
        n, toks = self.header(key)
        if len(toks) != 2:
            raise ParseError(f"'{key}' takes exactly one value", n, toks[0].column)
        return n, toks[1]

    def finish(self, n: int) -> None:
        rest = next(self, None)
        if rest is not None:
            raise ParseError("content after 'end'", rest[0], rest[1][0].column)


# --- complexes -----------------------------------------------------------------------


def parse_cfk(text: str) -> cfk.AnyComplex:
    r = _Reader(text)
    _, name = r.single("name")
    n, ring = r.single("ring")
    if ring.text not in cfk.RINGS:
        raise ParseError(f"ring must be one of {', '.join(cfk.RINGS)}", n, ring.column)
    n, kind = r.single("kind")
    if kind.text not in ("bifiltered", "hat"):
        raise ParseError("kind must be 'bifiltered' or 'hat'", n, kind.column)
    hat = kind.text == "hat"
    gens, arrows, labels = [], [], set()
    for n, toks in r:
        head = toks[0].text
        if head == "end":
            if len(toks) > 1:
                raise ParseError("'end' takes no arguments", n, toks[1].column)
            r.finish(n)
            break
        if head == "gen":
            if len(toks) < 2:
                raise ParseError("'gen' needs a label", n, toks[0].column)
            label = toks[1].text
            if label in labels:
                raise ParseError(f"duplicate generator {label!r}", n, toks[1].column)
            if arrows:
                raise ParseError("generators must precede arrows", n, toks[0].column)
            kv = _keyvals(toks[2:], n, ("a", "m") if hat else ("i", "j", "m"))
            need = ("a",) if hat else ("i", "j")
            for key in need:
                if key not in kv:
                    raise ParseError(f"generator {label!r} lacks {key}=", n, toks[1].column)
            labels.add(label)
            if hat:
                gens.append(HatGenerator(label, kv["a"], kv.get("m")))
            else:
                gens.append(BiGenerator(label, kv["i"], kv["j"], kv.get("m")))
        elif head == "arrow":
            if len(toks) != 4:
                raise ParseError("'arrow' needs SOURCE TARGET COEFFICIENT", n, toks[0].column)
            for tok in toks[1:3]:
                if tok.text not in labels:
                    raise ParseError(f"arrow refers to unknown generator {tok.text!r}", n, tok.column)
            coeff = _int(toks[3], n, "arrow coefficient")
            if coeff == 0:
                raise ParseError("arrow coefficient must be nonzero", n, toks[3].column)
            arrows.append(Arrow(toks[1].text, toks[2].text, coeff))
        else:
            raise ParseError(f"unknown directive {head!r}", n, toks[0].column)
    else:
        raise ParseError("missing 'end'", r.last_line)
    cls = HatFilteredComplex if hat else BifilteredComplex
    return cls(name.text, ring.text, tuple(gens), tuple(arrows))


def emit_cfk(C: cfk.AnyComplex) -> str:
    hat = isinstance(C, HatFilteredComplex)
    out = [f"name {C.name}", f"ring {C.ring}", f"kind {'hat' if hat else 'bifiltered'}"]
    for g in C.generators:
        pos = f"a={g.alexander}" if hat else f"i={g.i} j={g.j}"
        m = "" if g.maslov is None else f" m={g.maslov}"
        out.append(f"gen {g.label} {pos}{m}")
    for a in C.arrows:
        out.append(f"arrow {a.source} {a.target} {a.coeff}")
    out.append("end")
    return "\n".join(out) + "\n"


# --- open books ----------------------------------------------------------------------


def parse_open_book(text: str) -> mcg.OpenBook:
    r = _Reader(text)
    r.single("openbook")
    n, g = r.single("genus")
    genus = _int(g, n, "genus")
    n, b = r.single("boundary")
    boundary = _int(b, n, "boundary count")
    n, toks = r.header("monodromy")
    try:
        word = mcg.parse_word(" ".join(t.text for t in toks[1:]), genus)
    except ValueError as exc:
        raise ParseError(str(exc), n, toks[0].column) from None
    n, toks = r.header("end")
    r.finish(n)
    try:
        return mcg.OpenBook(genus, boundary, word)
    except ValueError as exc:
        raise ParseError(str(exc), n) from None


def emit_open_book(ob: mcg.OpenBook, name: str) -> str:
    return "\n".join([
        f"openbook {name}", f"genus {ob.page_genus}", f"boundary {ob.boundary_components}",
        f"monodromy {ob.monodromy}", "end",
    ]) + "\n"


# --- Heegaard diagrams ---------------------------------------------------------------
#
#   diagram NAME
#   genus G
#   alpha A1 A2 ...
#   beta B1 B2 ...
#   point ID ALPHA BETA
#   edge ID CURVE TAIL HEAD
#   region ID [chi=K] : DART DART ... [| DART ...]     (DART is +EDGE or -EDGE)
#   basepoint w REGION
#   basepoint z REGION
#   meridian CURVE POINT ALPHA REPLACES PROXY
#   fiber CURVE ... at POINT
#   tuple POINT ...
#   end


def _dart(tok: _Token, line: int) -> tuple[str, int]:
    if len(tok.text) < 2 or tok.text[0] not in "+-":
        raise ParseError(f"dart must be +EDGE or -EDGE, got {tok.text!r}", line, tok.column)
    return (tok.text[1:], 1 if tok.text[0] == "+" else -1)


def _fmt_dart(d: tuple[str, int]) -> str:
    return ("+" if d[1] > 0 else "-") + d[0]


def parse_diagram(text: str) -> MeasuredDiagram:
    r = _Reader(text)
    _, name = r.single("diagram")
    n, g = r.single("genus")
    genus = _int(g, n, "genus")
    _, atoks = r.header("alpha")
    _, btoks = r.header("beta")
    points: dict[str, Point] = {}
    edges: dict[str, Edge] = {}
    regions: dict[str, Region] = {}
    base: dict[str, str] = {}
    meridian = None
    fiber: tuple[str, ...] = ()
    anchor = None
    distinguished = None
    for n, toks in r:
        head, args = toks[0].text, toks[1:]

        def need(k: int, usage: str) -> None:
            if len(args) != k:
                raise ParseError(f"usage: {usage}", n, toks[0].column)

        if head == "end":
            need(0, "end")
            r.finish(n)
            break
        if head == "point":
            need(3, "point ID ALPHA BETA")
            if args[0].text in points:
                raise ParseError(f"duplicate point {args[0].text!r}", n, args[0].column)
            points[args[0].text] = Point(args[1].text, args[2].text)
        elif head == "edge":
            need(4, "edge ID CURVE TAIL HEAD")
            if args[0].text in edges:
                raise ParseError(f"duplicate edge {args[0].text!r}", n, args[0].column)
            for tok in args[2:]:
                if tok.text not in points:
                    raise ParseError(f"unknown point {tok.text!r}", n, tok.column)
            edges[args[0].text] = Edge(args[1].text, args[2].text, args[3].text)
        elif head == "region":
            if len(args) < 3:
                raise ParseError("usage: region ID [chi=K] : DART ...", n, toks[0].column)
            rid = args[0].text
            if rid in regions:
                raise ParseError(f"duplicate region {rid!r}", n, args[0].column)
            rest = args[1:]
            chi = 1
            if rest[0].text != ":":
                chi = _keyvals([rest[0]], n, ("chi",))["chi"]
                rest = rest[1:]
            if not rest or rest[0].text != ":":
                raise ParseError("expected ':' before the boundary darts", n, (rest or args)[0].column)
            cycles, cur = [], []
            for tok in rest[1:]:
                if tok.text == "|":
                    cycles.append(tuple(cur))
                    cur = []
                    continue
                d = _dart(tok, n)
                if d[0] not in edges:
                    raise ParseError(f"unknown edge {d[0]!r}", n, tok.column + 1)
                cur.append(d)
            cycles.append(tuple(cur))
            if any(not c for c in cycles):
                raise ParseError("empty boundary cycle", n, toks[0].column)
            regions[rid] = Region(tuple(cycles), chi)
        elif head == "basepoint":
            need(2, "basepoint w|z REGION")
            if args[0].text not in ("w", "z"):
                raise ParseError("basepoint must be w or z", n, args[0].column)
            base[args[0].text] = args[1].text
        elif head == "meridian":
            need(5, "meridian CURVE POINT ALPHA REPLACES PROXY")
            meridian = Meridian(*(t.text for t in args))
        elif head == "fiber":
            if len(args) < 3 or args[-2].text != "at":
                raise ParseError("usage: fiber CURVE ... at POINT", n, toks[0].column)
            fiber = tuple(t.text for t in args[:-2])
            anchor = args[-1].text
        elif head == "tuple":
            distinguished = tuple(t.text for t in args)
        else:
            raise ParseError(f"unknown directive {head!r}", n, toks[0].column)
    else:
        raise ParseError("missing 'end'", r.last_line)
    if "w" not in base:
        raise ParseError("missing 'basepoint w'", r.last_line)
    d = MeasuredDiagram(
        name.text, genus, tuple(t.text for t in atoks[1:]), tuple(t.text for t in btoks[1:]),
        points, edges, regions, base["w"], base.get("z"), meridian, fiber, anchor, distinguished,
    )
    rep = heegaard.validate_diagram(d)
    if not rep.ok:
        raise ParseError("diagram does not validate: " + "; ".join(rep.problems), r.last_line)
    return d


def emit_diagram(d: MeasuredDiagram) -> str:
    out = [f"diagram {d.name}", f"genus {d.genus}", "alpha " + " ".join(d.alphas), "beta " + " ".join(d.betas)]
    out += [f"point {p} {pt.alpha} {pt.beta}" for p, pt in d.points.items()]
    out += [f"edge {eid} {e.curve} {e.tail} {e.head}" for eid, e in d.edges.items()]
    for rid, reg in d.regions.items():
        chi = "" if reg.chi == 1 else f" chi={reg.chi}"
        body = " | ".join(" ".join(_fmt_dart(x) for x in cyc) for cyc in reg.cycles)
        out.append(f"region {rid}{chi} : {body}")
    out.append(f"basepoint w {d.w}")
    if d.z is not None:
        out.append(f"basepoint z {d.z}")
    if d.meridian is not None:
        m = d.meridian
        out.append(f"meridian {m.curve} {m.point} {m.alpha} {m.replaces} {m.proxy}")
    if d.fiber:
        out.append(f"fiber {' '.join(d.fiber)} at {d.fiber_anchor}")
    if d.distinguished:
        out.append("tuple " + " ".join(d.distinguished))
    out.append("end")
    return "\n".join(out) + "\n"


# --- files and fixtures --------------------------------------------------------------


def read_file(path: str | Path, parser: Callable[[str], object]):
    return parser(Path(path).read_text())


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("contactinv") / "fixtures" / name))


def load_fixture(name: str):
    text = fixture_path(name).read_text()
    if name.endswith(".cfk"):
        return parse_cfk(text)
    if name.endswith(".ob"):
        return parse_open_book(text)
    if name.endswith(".hd"):
        return parse_diagram(text)
    raise ValueError(f"unknown fixture type: {name}")


def fixture_names() -> list[str]:
    root = Path(str(resources.files("contactinv") / "fixtures"))
    return sorted(p.name for p in root.iterdir() if p.suffix in (".cfk", ".ob", ".hd"))
