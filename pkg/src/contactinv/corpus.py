"""
The shipped fixture corpus, rebuilt from first principles.

``build_corpus`` returns file name -> canonical text.  The checked-in files
under ``fixtures/`` must equal it; ``python -m contactinv.corpus`` rewrites
them.
"""

from __future__ import annotations

import sys
from pathlib import Path

from . import cfk, io, mcg, model
from .cfk import Arrow, BifilteredComplex, BiGenerator


def trefoil_right() -> BifilteredComplex:
    gens = (BiGenerator("x", -1, 0), BiGenerator("y", 0, -1), BiGenerator("z", 0, 0))
    return BifilteredComplex("trefoil_right", cfk.Z, gens, (Arrow("z", "x"), Arrow("z", "y")))


def trefoil_left() -> BifilteredComplex:
    gens = (BiGenerator("x", 1, 0), BiGenerator("y", 0, 1), BiGenerator("z", 0, 0))
    return BifilteredComplex("trefoil_left", cfk.Z, gens, (Arrow("x", "z"), Arrow("y", "z")))


def unknot() -> BifilteredComplex:
    return BifilteredComplex("unknot", cfk.Z, (BiGenerator("x", 0, 0),))


def complexes() -> list[cfk.AnyComplex]:
    out: list[cfk.AnyComplex] = []
    for C in (unknot(), trefoil_right(), trefoil_left()):
        D = cfk.mirror_dual(C)
        out += [C, D, cfk.hat_column(C), cfk.hat_column(D)]
    right = cfk.hat_column(cfk.mirror_dual(trefoil_right()))
    left = cfk.hat_column(cfk.mirror_dual(trefoil_left()))
    out += [cfk.tensor_filtered(right, right), cfk.tensor_filtered(left, left), cfk.tensor_filtered(right, left)]
    return out


def file_name(C: cfk.AnyComplex) -> str:
    return C.name + ".cfk"


def build_corpus() -> dict[str, str]:
    files = {file_name(C): io.emit_cfk(C) for C in complexes()}
    for name, w in mcg.genus_one_monodromies().items():
        files[f"{name}.ob"] = io.emit_open_book(mcg.OpenBook.from_word(w), name)
    for g in (1, 2, 3):
        for winding in ("twice", "once"):
            d = model.build_model_diagram(g, winding).diagram
            files[f"{d.name}.hd"] = io.emit_diagram(d)
    d = model.build_model_diagram(1, "twice", admissible=False).diagram
    files[f"{d.name}.hd"] = io.emit_diagram(d)
    return dict(sorted(files.items()))


def main(argv: list[str] | None = None) -> int:
    target = Path(argv[0]) if argv else Path(__file__).parent / "fixtures"
    target.mkdir(parents=True, exist_ok=True)
    for name, text in build_corpus().items():
        (target / name).write_text(text)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
