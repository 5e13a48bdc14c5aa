"""Command-line interface.

Exit codes: 0 when every check passes or a construction succeeds, 1 when a
verification fails, 2 for malformed input, 3 for an internal inconsistency.
Output is collected and written once at the end.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import io
from .algebra import check_jacobi, check_left_dialgebra, check_malcev, check_sagle
from .cohomology import (TwoCochain, ambient_dims, coboundary, extension_from_cocycle,
                         extensions_equivalent, h2, is_cocycle)
from .deformations import (FormalDeformation, check_first_order, check_formal, check_trivial_morphism,
                           is_nijenhuis, nijenhuis_to_deformation, rigidity_report, triple_dims)
from .embedding import EmbeddingTensor, check_embedding_tensor, graph_subalgebra_check, hemi_semidirect, induce_dialgebra
from .errors import (FieldMismatch, InternalInconsistency, InvalidEtRepresentation, MalcevError, NotACocycle,
                     NotAnEmbeddingTensor, NotNijenhuis, ParseError, ShapeError, TooLarge, UnsupportedField,
                     UnverifiedAlgebra, UnverifiedRepresentation)
from .etrep import adjoint_et_representation, check_et_representation, semidirect_et
from .linalg import format_scalar
from .oracle import RNG_ALGORITHM, ShapeSpec, enumerate_ets, enumerate_nijenhuis, random_instances
from .report import VerificationReport
from .representations import check_representation, semidirect_malcev

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

_FAILURES = (UnverifiedAlgebra, UnverifiedRepresentation, NotAnEmbeddingTensor, InvalidEtRepresentation,
             NotACocycle, NotNijenhuis)
_BAD_INPUT = (ParseError, ShapeError, FieldMismatch, TooLarge, UnsupportedField)


@dataclass
class Outcome:
    command: str
    code: int = EXIT_PASS
    sections: list = field(default_factory=list)

    def report(self, rep: VerificationReport, counts: bool = True):
        self.sections.append(("report", rep))
        if counts and not rep.passed:
            self.code = max(self.code, EXIT_FAIL)

    def text(self, line: str):
        self.sections.append(("text", line))

    def data(self, key: str, value):
        self.sections.append(("data", (key, value)))

    def render(self, as_json: bool) -> str:
        if as_json:
            results = []
            for kind, item in self.sections:
                if kind == "report":
                    results.append({"report": item.to_dict()})
                elif kind == "text":
                    results.append({"message": item})
                else:
                    results.append({item[0]: item[1]})
            doc = {"command": self.command, "exit_code": self.code,
                   "status": "pass" if self.code == EXIT_PASS else "fail", "results": results}
            return json.dumps(doc, indent=2, sort_keys=True) + "\n"
        lines = []
        for kind, item in self.sections:
            if kind == "report":
                lines.append(item.to_text())
            elif kind == "text":
                lines.append(item)
            else:
                value = item[1]
                lines.append(f"{item[0]}: {value if isinstance(value, str) else json.dumps(value)}")
        return "\n".join(lines) + "\n" if lines else ""


def _write(path: str, obj, out: Outcome):
    Path(path).write_text(io.emit(obj), encoding="utf-8")
    out.text(f"wrote {path}")


def _same_et(a: EmbeddingTensor, b: EmbeddingTensor) -> bool:
    return a.field == b.field and a.rep.same_as(b.rep) and a.T == b.T


def _coefficients(et: EmbeddingTensor, source: str):
    if source == "adjoint":
        return adjoint_et_representation(et)
    er = io.load(source, "et_representation").value
    if not _same_et(er.base, et):
        raise ParseError("coefficients are attached to a different embedding tensor", source)
    return er


def _cochain(path: str, et, er) -> TwoCochain:
    z = io.load(path, "two_cochain").value
    io.check_field(et.field, z.field, path)
    if z.dims != ambient_dims(et, er):
        raise ShapeError(f"{path}: cochain dims {z.dims} do not match {ambient_dims(et, er)}")
    return z


# -- commands ---------------------------------------------------------------

def cmd_verify(args, out: Outcome):
    doc = io.load(args.file)
    v = doc.value
    if doc.kind == "malcev_algebra":
        rep = VerificationReport("malcev_algebra")
        if v.field.characteristic == 2:
            rep.notes.append("characteristic 2: the Malcev identity check is refused; sagle decides")
        else:
            rep.checks.extend(check_malcev(v).checks)
        rep.checks.extend(check_sagle(v).checks)
        out.report(rep)
        jac = check_jacobi(v)
        jac.subject = "jacobi (informational)"
        jac.notes.append("Malcev algebras need not satisfy the Jacobi identity; it does not affect the exit status")
        out.report(jac, counts=False)
    elif doc.kind == "dialgebra":
        out.report(check_left_dialgebra(v))
    elif doc.kind == "representation":
        out.report(check_representation(v))
    elif doc.kind == "embedding_tensor":
        out.report(check_embedding_tensor(v))
    elif doc.kind == "et_representation":
        out.report(check_et_representation(v))
    else:
        raise ParseError(f"nothing to verify for a {doc.kind} document", args.file)


def cmd_check_et(args, out: Outcome):
    et = io.load(args.file, "embedding_tensor").value
    rep = check_embedding_tensor(et)
    rep.notes.append(f"graph subalgebra criterion: {'pass' if graph_subalgebra_check(et) else 'FAIL'}")
    out.report(rep)


def cmd_check_etrep(args, out: Outcome):
    out.report(check_et_representation(io.load(args.file, "et_representation").value))


def cmd_hemi(args, out: Outcome):
    _write(args.output, hemi_semidirect(io.load(args.file, "representation").value), out)


def cmd_induce(args, out: Outcome):
    _write(args.output, induce_dialgebra(io.load(args.file, "embedding_tensor").value, args.side), out)


def cmd_semidirect(args, out: Outcome):
    doc = io.load(args.file, ("representation", "et_representation"))
    if doc.kind == "representation":
        _write(args.output, semidirect_malcev(doc.value), out)
    else:
        _write(args.output, semidirect_et(doc.value), out)


def cmd_cocycle(args, out: Outcome):
    et = io.load(args.et, "embedding_tensor").value
    er = _coefficients(et, args.etrep)
    out.report(is_cocycle(et, er, _cochain(args.cochain, et, er), strict_printed=args.strict_printed))


def cmd_coboundary(args, out: Outcome):
    et = io.load(args.et, "embedding_tensor").value
    er = _coefficients(et, args.etrep)
    b = io.load(args.b, "one_cochain").value
    io.check_field(et.field, b.field, args.b)
    if b.dims != ambient_dims(et, er):
        raise ShapeError(f"{args.b}: cochain dims {b.dims} do not match {ambient_dims(et, er)}")
    _write(args.output, coboundary(et, er, b, strict_printed=args.strict_printed), out)


def cmd_h2(args, out: Outcome):
    et = io.load(args.et, "embedding_tensor").value
    er = _coefficients(et, args.coeff)
    res = h2(et, er, strict_printed=args.strict_printed)
    out.sections.append(("h2", res))
    if res.dim is None or res.contained is False:
        out.code = EXIT_FAIL


def cmd_extend(args, out: Outcome):
    et = io.load(args.et, "embedding_tensor").value
    er = _coefficients(et, args.etrep)
    _write(args.output, extension_from_cocycle(et, er, _cochain(args.cochain, et, er)), out)


def cmd_equiv(args, out: Outcome):
    et = io.load(args.et, "embedding_tensor").value
    er = _coefficients(et, args.etrep)
    b = extensions_equivalent(et, er, _cochain(args.z1, et, er), _cochain(args.z2, et, er))
    if b is None:
        out.text("inequivalent: the difference is not a coboundary")
        out.code = EXIT_FAIL
        return
    out.text("equivalent")
    out.data("witness", [format_scalar(x) for x in b.coordinates()])
    if args.output:
        _write(args.output, b, out)


def cmd_deform(args, out: Outcome):
    et = io.load(args.et, "embedding_tensor").value
    doc = io.load(args.deformation, ("two_cochain", "formal_deformation"))
    if doc.kind == "two_cochain":
        d = doc.value
        io.check_field(et.field, d.field, args.deformation)
        if d.dims != triple_dims(et):
            raise ShapeError(f"{args.deformation}: triple dims {d.dims} do not match {triple_dims(et)}")
        order = 3 if args.order is None else args.order
        if not 1 <= order <= 3:
            raise ShapeError("--order for a linear triple must be 1, 2 or 3")
        out.report(check_first_order(et, d, orders=range(1, order + 1)))
    else:
        fd = doc.value
        for t in fd.terms:
            io.check_field(et.field, t.field, args.deformation)
            if t.dims != triple_dims(et):
                raise ShapeError(f"{args.deformation}: term dims {t.dims} do not match {triple_dims(et)}")
        if args.order is not None:
            if not 0 <= args.order <= fd.order:
                raise ShapeError(f"--order must lie in 0..{fd.order}")
            fd = FormalDeformation(args.order, fd.terms[:args.order])
        out.report(check_formal(et, fd))


def cmd_nijenhuis(args, out: Outcome):
    et = io.load(args.et, "embedding_tensor").value
    N = io.load(args.pair, "nijenhuis_pair").value
    io.check_field(et.field, N.N0.field, args.pair)
    rep = is_nijenhuis(et, N)
    out.report(rep)
    if not rep.passed:
        return
    d = nijenhuis_to_deformation(et, N)
    out.report(check_first_order(et, d))
    out.report(check_trivial_morphism(et, d, N))
    if args.emit_deformation:
        _write(args.emit_deformation, d, out)


def cmd_rigid(args, out: Outcome):
    out.sections.append(("rigid", rigidity_report(io.load(args.et, "embedding_tensor").value)))


def cmd_enumerate(args, out: Outcome):
    if args.what == "et":
        count, found = enumerate_ets(io.load(args.file, "representation").value)
        out.data("count", count)
        out.data("maps", [[[format_scalar(x) for x in r] for r in t.entries] for t in found])
    else:
        count, found = enumerate_nijenhuis(io.load(args.file, "embedding_tensor").value)
        out.data("count", count)
        out.data("pairs", [{"N0": [[format_scalar(x) for x in r] for r in p.N0.entries],
                            "N1": [[format_scalar(x) for x in r] for r in p.N1.entries]} for p in found])


def cmd_random(args, out: Outcome):
    shape = ShapeSpec.parse(args.shape)
    fld = io._Reader(None).field("Q" if args.field == "Q" else {"Fp": _prime_arg(args.field)}, "--field")
    if args.count < 0:
        raise ShapeError("--count must be non-negative")
    stream = random_instances(args.seed, shape, fld, args.bound)
    items = []
    for _ in range(args.count):
        obj = next(stream)
        if shape.kind == "matrix":
            items.append([[format_scalar(x) for x in r] for r in obj.entries])
        else:
            items.append(io.to_json_obj(obj))
    out.data("algorithm", RNG_ALGORITHM)
    out.data("seed", args.seed)
    out.data("items", items)


def _prime_arg(text: str) -> int:
    digits = text[1:] if text[:1] in ("F", "f") else text
    if not digits.isdigit():
        raise ParseError(f"field must be Q or Fp such as F3, got {text!r}", "--field")
    return int(digits)


# -- wiring -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="malcev-et", description="Exact checks for Malcev algebras and embedding tensors.")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        return sp

    add("verify", cmd_verify, "verify the axioms of a document").add_argument("file")
    add("check-et", cmd_check_et, "check the embedding-tensor identity").add_argument("file")
    add("check-etrep", cmd_check_etrep, "check an ET-representation").add_argument("file")
    sp = add("hemi", cmd_hemi, "hemisemidirect product of a representation")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", required=True)
    sp = add("induce", cmd_induce, "dialgebra induced by an embedding tensor")
    sp.add_argument("file")
    sp.add_argument("--side", choices=("left", "right"), default="left")
    sp.add_argument("-o", "--output", required=True)
    sp = add("semidirect", cmd_semidirect, "semidirect product of a representation or ET-representation")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", required=True)
    sp = add("cocycle", cmd_cocycle, "check the 2-cocycle conditions")
    sp.add_argument("et")
    sp.add_argument("etrep", help='an et_representation file or "adjoint"')
    sp.add_argument("cochain")
    sp.add_argument("--strict-printed", action="store_true")
    sp = add("coboundary", cmd_coboundary, "coboundary of a 1-cochain")
    sp.add_argument("et")
    sp.add_argument("etrep")
    sp.add_argument("b")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--strict-printed", action="store_true")
    sp = add("h2", cmd_h2, "second cohomology")
    sp.add_argument("et")
    sp.add_argument("--coeff", default="adjoint", help='"adjoint" or an et_representation file')
    sp.add_argument("--strict-printed", action="store_true")
    sp = add("extend", cmd_extend, "extension built from a cocycle")
    sp.add_argument("et")
    sp.add_argument("etrep")
    sp.add_argument("cochain")
    sp.add_argument("-o", "--output", required=True)
    sp = add("equiv", cmd_equiv, "whether two cocycles give equivalent extensions")
    sp.add_argument("et")
    sp.add_argument("etrep")
    sp.add_argument("z1")
    sp.add_argument("z2")
    sp.add_argument("-o", "--output", help="write the witnessing 1-cochain")
    sp = add("deform", cmd_deform, "check a deformation triple or a formal deformation")
    sp.add_argument("et")
    sp.add_argument("deformation")
    sp.add_argument("--order", type=int)
    sp = add("nijenhuis", cmd_nijenhuis, "check a Nijenhuis pair and its trivial deformation")
    sp.add_argument("et")
    sp.add_argument("pair")
    sp.add_argument("--emit-deformation", metavar="OUT")
    add("rigid", cmd_rigid, "rigidity from H2 with adjoint coefficients").add_argument("et")
    sp = add("enumerate", cmd_enumerate, "brute-force census over a prime field")
    sp.add_argument("file")
    sp.add_argument("--what", choices=("et", "nijenhuis"), required=True)
    sp = add("random", cmd_random, "deterministic random instances")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--shape", required=True, help="kind:dims, e.g. two_cochain:2,1,1,1")
    sp.add_argument("--field", default="Q", help="Q or Fp such as F3")
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--bound", type=int, default=2)
    return p


def run(argv: Optional[list] = None) -> tuple[int, str, str]:
    """Run a command; returns ``(exit code, stdout text, stderr text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_PASS if exc.code == 0 else EXIT_INPUT), "", ""
    out = Outcome(args.command)
    err = ""
    try:
        args.func(args, out)
    except _BAD_INPUT as exc:
        out.code, err = EXIT_INPUT, f"error: {exc}\n"
    except InternalInconsistency as exc:
        out.code, err = EXIT_INTERNAL, f"internal inconsistency: {exc}\n"
    except _FAILURES as exc:
        out.code = EXIT_FAIL
        out.text(f"failed: {exc}")
    except MalcevError as exc:
        out.code, err = EXIT_INPUT, f"error: {exc}\n"
    if err and args.json:
        out.data("error", err.strip().partition(": ")[2])
        err = ""
    return out.code, _render(out, args.json), err


def _render(out: Outcome, as_json: bool) -> str:
    # h2 and rigid results carry their own text and dict forms
    plain = []
    for kind, item in out.sections:
        if kind in ("h2", "rigid"):
            plain.append(("data", (kind, item.to_dict())) if as_json else ("text", item.to_text()))
        else:
            plain.append((kind, item))
    return Outcome(out.command, out.code, plain).render(as_json)


def main(argv: Optional[list] = None) -> int:
    code, stdout, stderr = run(argv)
    sys.stdout.write(stdout)
    sys.stderr.write(stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
