"""
Command line entry point.

Exit codes: 0 success, 1 usage or parse error, 2 domain error (for
example an input that is not the complex of a fibered knot of the stated
genus).  Reports are plain ``key: value`` lines.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import cfk, heegaard, io, mcg, model

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


DOMAIN_ERRORS = (
    cfk.ComplexError,
    cfk.FibrationHypothesisViolated,
    heegaard.DiagramError,
    heegaard.EnumerationCapExceeded,
    mcg.BoundaryCurveError,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        raise UsageError(f"{self.prog}: {message}")


# --- input helpers -------------------------------------------------------------------


def _read(path: str) -> str:
    p = Path(path)
    if not p.exists():
        fixture = io.fixture_path(path)
        if fixture.exists():
            return fixture.read_text()
        raise UsageError(f"no such file: {path}")
    return p.read_text()


def _complex(path: str) -> cfk.AnyComplex:
    try:
        return io.parse_cfk(_read(path))
    except io.ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _hat(path: str) -> cfk.HatFilteredComplex:
    C = _complex(path)
    if isinstance(C, cfk.BifilteredComplex):
        _require(C)
        C = cfk.hat_column(C)
    return C


def _require(C: cfk.AnyComplex) -> None:
    rep = cfk.validate_complex(C)
    if not rep.ok:
        raise DomainError("; ".join(rep.problems))


def _word(text: str, genus: int | None) -> mcg.TwistWord:
    if text.endswith(".ob"):
        try:
            ob = io.parse_open_book(_read(text))
        except io.ParseError as exc:
            raise UsageError(f"{text}: {exc}") from None
        if genus is not None and genus != ob.page_genus:
            raise UsageError(f"{text} has page genus {ob.page_genus}, not {genus}")
        return ob.monodromy
    try:
        return mcg.parse_word(text, genus)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _diagram(args) -> tuple[heegaard.MeasuredDiagram, str]:
    if args.model is not None:
        if args.file is not None:
            raise UsageError("give either a diagram file or --model, not both")
        m = model.build_model_diagram(args.model, args.winding, not args.prewind)
        return m.diagram, m.diagram.name
    if args.file is None:
        raise UsageError("a diagram file or --model G is required")
    try:
        d = io.parse_diagram(_read(args.file))
    except io.ParseError as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    return d, d.name


def _fiber(d: heegaard.MeasuredDiagram) -> heegaard.PeriodicDomain:
    try:
        return heegaard.fiber_domain(d)
    except heegaard.DiagramError as exc:
        raise DomainError(str(exc)) from None


def _tuple(d: heegaard.MeasuredDiagram, text: str | None) -> tuple[str, ...]:
    if text is None:
        if not d.distinguished:
            raise UsageError("the diagram has no distinguished tuple; pass --tuple")
        return d.distinguished
    y = tuple(t for t in text.replace(",", " ").split() if t)
    known = set(d.points) | ({d.meridian.point} if d.meridian else set())
    for p in y:
        if p not in known:
            raise UsageError(f"unknown point {p}")
    return y


def _tuple_text(y: Sequence[str]) -> str:
    return "(" + ", ".join(y) + ")"


# --- cfk -----------------------------------------------------------------------------


def cmd_cfk_validate(args) -> list[str]:
    C = _complex(args.file)
    rep = cfk.validate_complex(C)
    if not rep.ok:
        raise DomainError("\n".join(["valid: no"] + [f"problem: {p}" for p in rep.problems]))
    return [f"complex: {C.name}", "valid: yes"]


def cmd_cfk_homology(args) -> list[str]:
    C = _complex(args.file)
    _require(C)
    H = cfk.homology(C, args.coeff)
    out = [f"complex: {C.name}", f"ring: {H.ring}", f"homology: {H.summary()}",
           f"free_rank: {H.free_rank}", "torsion: " + (" ".join(map(str, H.torsion_orders)) or "none")]
    for k, v in enumerate(H.free):
        out.append(f"free_generator_{k + 1}: {_chain(v, H.labels)}")
    for k, (order, v) in enumerate(H.torsion):
        out.append(f"torsion_generator_{k + 1}: {_chain(v, H.labels)} (order {order})")
    return out


def _chain(v: Sequence[int], labels: Sequence[str]) -> str:
    terms = []
    for c, lab in zip(v, labels):
        if c:
            coef = "" if abs(c) == 1 else f"{abs(c)}*"
            terms.append(("- " if c < 0 else "+ ") + coef + lab)
    text = " ".join(terms) or "0"
    return text[2:] if text.startswith("+ ") else "-" + text[2:] if text.startswith("- ") else text


def _emit(C: cfk.AnyComplex) -> list[str]:
    return io.emit_cfk(C).rstrip("\n").split("\n")


def cmd_cfk_hat(args) -> list[str]:
    C = _complex(args.file)
    if not isinstance(C, cfk.BifilteredComplex):
        raise UsageError("hat needs a bifiltered complex")
    _require(C)
    return _emit(cfk.hat_column(C))


def cmd_cfk_mirror(args) -> list[str]:
    C = _complex(args.file)
    if not isinstance(C, cfk.BifilteredComplex):
        raise UsageError("mirror needs a bifiltered complex")
    _require(C)
    return _emit(cfk.mirror_dual(C))


def cmd_cfk_tensor(args) -> list[str]:
    C1, C2 = _hat(args.file1), _hat(args.file2)
    _require(C1)
    _require(C2)
    if C1.ring != C2.ring:
        raise DomainError(f"coefficient rings differ: {C1.ring} vs {C2.ring}")
    return _emit(cfk.tensor_filtered(C1, C2))


def cmd_cfk_sublevel(args) -> list[str]:
    C = _hat(args.file)
    _require(C)
    return _emit(cfk.sublevel(C, args.level))


def cmd_cfk_graded(args) -> list[str]:
    C = _hat(args.file)
    _require(C)
    out = [f"complex: {C.name}"]
    for piece in cfk.associated_graded(C):
        out.append(f"level {piece.level}: generators {len(piece.complex)}, homology {piece.homology.summary()}")
    return out


def cmd_cfk_contact(args) -> list[str]:
    C = _hat(args.file)
    _require(C)
    try:
        return cfk.contact_class(C, args.genus, args.via).lines()
    except cfk.FibrationHypothesisViolated as exc:
        raise DomainError(f"fibration hypothesis violated: {exc}") from None


# --- mcg and open books --------------------------------------------------------------


def cmd_mcg_nf(args) -> list[str]:
    w = _word(args.word, args.genus)
    if w.genus != 1:
        raise DomainError("normal forms are available in genus 1 only")
    nf = mcg.braid_normal_form(w)
    return [f"word: {w}", f"normal_form: {nf}", f"infimum: {nf.inf}", f"canonical_length: {nf.canonical_length}",
            f"exponent_sum: {nf.exponent_sum()}"]


def cmd_mcg_equal(args) -> list[str]:
    w1, w2 = _word(args.word1, args.genus), _word(args.word2, args.genus)
    g = max(w1.genus, w2.genus)
    w1, w2 = mcg.TwistWord(g, w1.letters), mcg.TwistWord(g, w2.letters)
    return [f"genus: {g}", f"result: {mcg.words_equal(w1, w2).value}"]


def cmd_mcg_positive(args) -> list[str]:
    w = _word(args.word, args.genus)
    v = mcg.is_positive(w)
    out = [f"word: {w}", f"status: {v.kind.value}"]
    if v.witness is not None:
        out.append(f"witness: {v.witness}")
    if v.note:
        out.append(f"note: {v.note}")
    return out


def cmd_mcg_action(args) -> list[str]:
    w = _word(args.word, args.genus)
    basis = " ".join(f"a{k} b{k}" for k in range(1, w.genus + 1))
    return [f"word: {w}", f"basis: {basis}"] + [f"row: {r}" for r in mcg.matrix_text(mcg.homological_action(w))]


def cmd_mcg_hopf(args) -> list[str]:
    h = mcg.hopf_invariant(args.c1_squared, args.euler, args.signature)
    return [f"hopf_invariant: {h}"]


def _open_book(text: str, genus: int | None) -> mcg.OpenBook:
    return mcg.OpenBook.from_word(_word(text, genus))


def cmd_ob_stabilize(args) -> list[str]:
    ob = _open_book(args.word, args.genus)
    try:
        return mcg.giroux_stabilize(ob).lines()
    except mcg.BoundaryCurveError as exc:
        raise DomainError(str(exc)) from None


def cmd_ob_sum(args) -> list[str]:
    ob1, ob2 = _open_book(args.word1, args.genus1), _open_book(args.word2, args.genus2)
    try:
        return mcg.boundary_connect_sum(ob1, ob2).lines()
    except mcg.BoundaryCurveError as exc:
        raise DomainError(str(exc)) from None


def cmd_ob_surgery(args) -> list[str]:
    ob = _open_book(args.word, args.genus)
    try:
        return mcg.compose_surgery(ob, args.curve, args.coefficient).lines()
    except mcg.BoundaryCurveError as exc:
        raise DomainError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_ob_stein(args) -> list[str]:
    return mcg.stein_certificate(_open_book(args.word, args.genus)).lines()


# --- Heegaard diagrams ---------------------------------------------------------------


def cmd_hd_model(args) -> list[str]:
    m = model.build_model_diagram(args.genus, args.winding, not args.prewind)
    if args.emit:
        return io.emit_diagram(m.diagram).rstrip("\n").split("\n")
    d, P = m.diagram, m.P
    out = [
        f"diagram: {d.name}",
        f"surface_genus: {d.genus}",
        f"euler_characteristic: {d.euler_characteristic()}",
        f"alpha: {' '.join(d.alphas)}",
        f"beta: {' '.join(d.betas)}",
        f"regions: {len(d.regions)}",
        f"points: {len(d.points)}",
        f"fiber_boundary: {P.boundary_text()}",
        "multiplicities: " + " ".join(str(v) for v in sorted(P.values())),
        f"euler_measure: {heegaard.euler_measure(d, P)}",
        f"x: {_tuple_text(m.x)}",
        f"x': {_tuple_text(m.x_prime)}",
        f"nbar(x'): {heegaard.point_measure(d, m.x_prime, P)}",
    ]
    if args.chern:
        out.append(f"chern(x') = {heegaard.chern_evaluation(d, m.x_prime, P)}")
    return out


def cmd_hd_domains(args) -> list[str]:
    d, name = _diagram(args)
    curves = None if args.curves is None else [c for c in args.curves.replace(",", " ").split() if c]
    try:
        basis = heegaard.periodic_domains(d, curves)
    except heegaard.DiagramError as exc:
        raise DomainError(str(exc)) from None
    out = [f"diagram: {name}", f"rank: {len(basis)}"]
    for k, P in enumerate(basis, start=1):
        out.append(f"domain_{k}_boundary: {P.boundary_text()}")
        out.append(f"domain_{k}_values: " + " ".join(str(v) for v in sorted(P.values())))
        out.append(f"domain_{k}_euler_measure: {heegaard.euler_measure(d, P)}")
    return out


def cmd_hd_chern(args) -> list[str]:
    d, name = _diagram(args)
    P = _fiber(d)
    y = _tuple(d, args.tuple)
    try:
        value = heegaard.chern_evaluation(d, y, P)
    except heegaard.DiagramError as exc:
        raise DomainError(str(exc)) from None
    return [
        f"diagram: {name}",
        f"tuple: {_tuple_text(y)}",
        f"euler_measure: {heegaard.euler_measure(d, P)}",
        f"point_measure: {heegaard.point_measure(d, y, P)}",
        f"chern: {value}",
    ]


def cmd_hd_admissible(args) -> list[str]:
    d, name = _diagram(args)
    return [f"diagram: {name}"] + heegaard.weak_admissibility(d, args.box).lines()


def cmd_hd_minimal(args) -> list[str]:
    d, name = _diagram(args)
    P = _fiber(d)
    try:
        value, tuples = heegaard.minimal_chern_points(d, P, args.mode, args.cap)
        out = [f"diagram: {name}", f"mode: {args.mode}", f"minimum: {value}", f"count: {len(tuples)}"]
        out += [f"tuple: {_tuple_text(y)}" for y in tuples]
        if args.level is not None:
            at = heegaard.tuples_at_most(d, P, args.level, args.mode, args.cap).get(args.level, [])
            out.append(f"count_at_{args.level}: {len(at)}")
            out += [f"tuple_at_{args.level}: {_tuple_text(y)}" for y in at]
    except heegaard.EnumerationCapExceeded as exc:
        raise DomainError(str(exc)) from None
    except heegaard.DiagramError as exc:
        raise DomainError(str(exc)) from None
    return out


# --- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="contactinv", description="Contact invariants, open books and Heegaard diagrams.")
    top = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def group(name: str, help: str):
        g = top.add_parser(name, help=help)
        return g.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(sub, name: str, func: Callable, help: str) -> argparse.ArgumentParser:
        c = sub.add_parser(name, help=help)
        c.set_defaults(func=func)
        return c

    c = group("cfk", "filtered knot Floer complexes")
    x = command(c, "validate", cmd_cfk_validate, "check filtration and d^2 = 0")
    x.add_argument("file")
    x = command(c, "homology", cmd_cfk_homology, "homology over Z or Z/2")
    x.add_argument("file")
    x.add_argument("--coeff", choices=cfk.RINGS)
    x = command(c, "hat", cmd_cfk_hat, "the i = 0 column of a bifiltered complex")
    x.add_argument("file")
    x = command(c, "mirror", cmd_cfk_mirror, "dual complex for the mirror")
    x.add_argument("file")
    x = command(c, "tensor", cmd_cfk_tensor, "tensor product of filtered complexes")
    x.add_argument("file1")
    x.add_argument("file2")
    x = command(c, "sublevel", cmd_cfk_sublevel, "filtration sublevel")
    x.add_argument("file")
    x.add_argument("--level", type=int, required=True)
    x = command(c, "graded", cmd_cfk_graded, "associated graded homology by level")
    x.add_argument("file")
    x = command(c, "contact", cmd_cfk_contact, "classify the contact class")
    x.add_argument("file")
    x.add_argument("--genus", type=int, required=True)
    x.add_argument("--via", type=int, help="route the inclusion through this sublevel")

    m = group("mcg", "Dehn twist words")
    x = command(m, "nf", cmd_mcg_nf, "Garside normal form (genus 1)")
    x.add_argument("word")
    x.add_argument("--genus", type=int)
    x = command(m, "equal", cmd_mcg_equal, "compare two words")
    x.add_argument("word1")
    x.add_argument("word2")
    x.add_argument("--genus", type=int)
    x = command(m, "positive", cmd_mcg_positive, "positivity of a word")
    x.add_argument("word")
    x.add_argument("--genus", type=int)
    x = command(m, "action", cmd_mcg_action, "action on first homology")
    x.add_argument("word")
    x.add_argument("--genus", type=int)
    x = command(m, "hopf", cmd_mcg_hopf, "Hopf invariant of a filling")
    x.add_argument("--c1-squared", type=int, required=True)
    x.add_argument("--euler", type=int, required=True)
    x.add_argument("--signature", type=int, required=True)

    o = group("ob", "open books with one binding component")
    x = command(o, "stabilize", cmd_ob_stabilize, "positive Giroux stabilization")
    x.add_argument("word")
    x.add_argument("--genus", type=int)
    x = command(o, "sum", cmd_ob_sum, "boundary connected sum")
    x.add_argument("word1")
    x.add_argument("word2")
    x.add_argument("--genus1", type=int)
    x.add_argument("--genus2", type=int)
    x = command(o, "surgery", cmd_ob_surgery, "surgery on a page curve")
    x.add_argument("word")
    x.add_argument("--curve", required=True)
    x.add_argument("--coefficient", type=int, required=True, choices=(-1, 1))
    x.add_argument("--genus", type=int)
    x = command(o, "stein", cmd_ob_stein, "Stein fillability certificate")
    x.add_argument("word")
    x.add_argument("--genus", type=int)

    h = group("hd", "Heegaard diagrams")
    x = command(h, "model", cmd_hd_model, "the identity-monodromy model diagram")
    x.add_argument("--genus", type=int, required=True)
    x.add_argument("--winding", choices=model.WINDINGS, default="twice")
    x.add_argument("--prewind", action="store_true", help="skip the admissibility windings")
    x.add_argument("--chern", action="store_true", help="print the Chern evaluation at x'")
    x.add_argument("--emit", action="store_true", help="print the diagram file instead")

    def diagram_args(x: argparse.ArgumentParser) -> None:
        x.add_argument("file", nargs="?")
        x.add_argument("--model", type=int, metavar="G", help="use the model diagram of fiber genus G")
        x.add_argument("--winding", choices=model.WINDINGS, default="twice")
        x.add_argument("--prewind", action="store_true")

    x = command(h, "domains", cmd_hd_domains, "periodic domain lattice")
    diagram_args(x)
    x.add_argument("--curves", help="restrict boundary curves, comma separated")
    x = command(h, "chern", cmd_hd_chern, "Chern evaluation of a generator tuple")
    diagram_args(x)
    x.add_argument("--tuple", help="points, comma separated (default: the distinguished tuple)")
    x = command(h, "admissible", cmd_hd_admissible, "weak admissibility search")
    diagram_args(x)
    x.add_argument("--box", type=int, default=heegaard.DEFAULT_BOX)
    x = command(h, "minimal", cmd_hd_minimal, "tuples of minimal Chern evaluation")
    diagram_args(x)
    x.add_argument("--mode", choices=("knot", "surgery"), default="knot")
    x.add_argument("--cap", type=int, default=heegaard.DEFAULT_CAP)
    x.add_argument("--level", type=int, help="also list tuples at this Chern value")
    return p


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        lines = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except (DomainError, *DOMAIN_ERRORS) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DOMAIN
    except ValueError as exc:  # includes parse and word syntax errors
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    print("\n".join(lines), file=out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
