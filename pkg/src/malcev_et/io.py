"""JSON document formats: parsing with path-qualified errors, and canonical emission.

Every document is an object with a ``"kind"`` tag.  Fields are exact: missing
and unknown keys are both rejected.  Nested objects (the algebra inside a
representation, and so on) are full documents, given inline or as a path
string relative to the referring file.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from .algebra import AlgebraData
from .cohomology import Extension, OneCochain, TwoCochain, index_pairs
from .deformations import FormalDeformation, NijenhuisPair
from .embedding import EmbeddingTensor
from .errors import FieldMismatch, MalcevError, ParseError, ShapeError
from .etrep import EtRepresentation
from .linalg import Field, FpElement, Matrix, Q, GF
from .representations import Representation

_RATIONAL = re.compile(r"-?[0-9]+(/[1-9][0-9]*)?\Z")

KINDS = ("malcev_algebra", "dialgebra", "representation", "embedding_tensor",
         "et_representation", "two_cochain", "one_cochain", "nijenhuis_pair",
         "formal_deformation", "extension")

_KEYS = {
    "malcev_algebra": ("kind", "field", "dim", "bracket"),
    "dialgebra": ("kind", "field", "dim", "bracket"),
    "representation": ("kind", "algebra", "module_dim", "rho"),
    "embedding_tensor": ("kind", "representation", "T"),
    "et_representation": ("kind", "embedding_tensor", "dim_v", "dim_w", "Tprime", "rho1", "rho2", "rho3"),
    "two_cochain": ("kind", "field", "dims", "theta", "omega", "nu"),
    "one_cochain": ("kind", "field", "dims", "b0", "b1"),
    "nijenhuis_pair": ("kind", "field", "dims", "N0", "N1"),
    "formal_deformation": ("kind", "field", "dims", "order", "terms"),
    "extension": ("kind", "base", "hat", "i0", "i1", "p0", "p1"),
}


@dataclass
class Document:
    kind: str
    value: Any


class _Reader:
    def __init__(self, base_dir: Optional[Path]):
        self.base_dir = base_dir

    # -- primitives -------------------------------------------------------

    def keys(self, obj, kind, path):
        if not isinstance(obj, dict):
            raise ParseError("expected an object", path)
        want = set(_KEYS[kind])
        have = set(obj)
        if have - want:
            raise ParseError(f"unknown field(s) {sorted(have - want)}", path)
        if want - have:
            raise ParseError(f"missing field(s) {sorted(want - have)}", path)

    def count(self, x, path) -> int:
        if isinstance(x, bool) or not isinstance(x, int) or x < 0:
            raise ParseError("expected a non-negative integer", path)
        return x

    def field(self, x, path) -> Field:
        if x == "Q":
            return Q
        if isinstance(x, dict) and set(x) == {"Fp"}:
            p = x["Fp"]
            if isinstance(p, bool) or not isinstance(p, int):
                raise ParseError("modulus must be an integer", path)
            try:
                return GF(p)
            except ValueError as exc:
                raise ParseError(str(exc), path) from exc
        raise ParseError('field must be "Q" or {"Fp": p}', path)

    def scalar(self, f: Field, x, path):
        if isinstance(x, bool):
            raise ParseError("booleans are not scalars", path)
        if f.modulus is None:
            if isinstance(x, int):
                return x
            if isinstance(x, str) and _RATIONAL.match(x):
                return f(x)
            raise ParseError(f"malformed rational {x!r}", path)
        if isinstance(x, int):
            return f(x)
        raise ParseError(f"expected an integer residue, got {x!r}", path)

    def vector(self, f, x, length, path) -> tuple:
        if not isinstance(x, list) or len(x) != length:
            raise ParseError(f"expected a list of {length} scalars", path)
        return tuple(self.scalar(f, c, f"{path}[{k}]") for k, c in enumerate(x))

    def matrix(self, f, x, rows, cols, path) -> Matrix:
        if not isinstance(x, list) or len(x) != rows:
            raise ParseError(f"expected a {rows}x{cols} matrix (list of {rows} rows)", path)
        data = [self.vector(f, r, cols, f"{path}[{i}]") for i, r in enumerate(x)]
        return Matrix.from_rows(f, data, cols)

    def matrices(self, f, x, count, rows, cols, path) -> tuple:
        if not isinstance(x, list) or len(x) != count:
            raise ParseError(f"expected a list of {count} matrices", path)
        return tuple(self.matrix(f, a, rows, cols, f"{path}[{i}]") for i, a in enumerate(x))

    def table(self, f, x, dim, width, path, skew=True) -> dict:
        """``[{"i", "j", "c"}]`` entries; with ``skew`` an ``i > j`` entry is
        folded to ``(j, i)`` with its sign flipped."""
        if not isinstance(x, list):
            raise ParseError("expected a list of entries", path)
        out = {}
        for k, ent in enumerate(x):
            p = f"{path}[{k}]"
            if not isinstance(ent, dict) or set(ent) != {"i", "j", "c"}:
                raise ParseError('entries must have exactly the keys "i", "j", "c"', p)
            i, j = ent["i"], ent["j"]
            for name, v in (("i", i), ("j", j)):
                if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < dim:
                    raise ParseError(f"index {name}={v!r} out of range 0..{dim - 1}", p)
            c = self.vector(f, ent["c"], width, f"{p}.c")
            if skew:
                if i == j:
                    raise ParseError("diagonal entry in a skew table", p)
                if i > j:
                    i, j, c = j, i, tuple(-v for v in c)
            if (i, j) in out:
                raise ParseError(f"duplicate entry for ({i}, {j})", p)
            out[(i, j)] = c
        return out

    def nested(self, x, kind, path):
        if isinstance(x, str):
            target = Path(x)
            if not target.is_absolute() and self.base_dir is not None:
                target = self.base_dir / target
            try:
                text = target.read_text(encoding="utf-8")
            except OSError as exc:
                raise ParseError(f"cannot read {x}: {exc.strerror}", path) from exc
            sub = _Reader(target.parent)
            return sub.document(_loads(text, str(target)), f"{target}:$", expect=kind)
        return self.document(x, path, expect=kind)

    # -- documents --------------------------------------------------------

    def document(self, obj, path="$", expect=None):
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ParseError('expected an object with a "kind" field', path)
        kind = obj["kind"]
        if kind not in KINDS:
            raise ParseError(f"unknown kind {kind!r}", path)
        if expect is not None and kind != expect:
            raise ParseError(f"expected a {expect} document, got {kind}", path)
        self.keys(obj, kind, path)
        try:
            return getattr(self, "_" + kind)(obj, path)
        except ParseError:
            raise
        except MalcevError as exc:
            raise ParseError(str(exc), path) from exc

    def _algebra(self, obj, path, skew):
        f = self.field(obj["field"], f"{path}.field")
        n = self.count(obj["dim"], f"{path}.dim")
        tab = self.table(f, obj["bracket"], n, n, f"{path}.bracket", skew=skew)
        return AlgebraData.from_constants(f, n, [(i, j, c) for (i, j), c in tab.items()], skew=skew)

    def _malcev_algebra(self, obj, path):
        return self._algebra(obj, path, True)

    def _dialgebra(self, obj, path):
        return self._algebra(obj, path, False)

    def _representation(self, obj, path):
        a = self.nested(obj["algebra"], "malcev_algebra", f"{path}.algebra")
        m = self.count(obj["module_dim"], f"{path}.module_dim")
        rho = self.matrices(a.field, obj["rho"], a.dim, m, m, f"{path}.rho")
        return Representation(a, m, rho)

    def _embedding_tensor(self, obj, path):
        r = self.nested(obj["representation"], "representation", f"{path}.representation")
        T = self.matrix(r.field, obj["T"], r.algebra.dim, r.module_dim, f"{path}.T")
        return EmbeddingTensor(r, T)

    def _et_representation(self, obj, path):
        et = self.nested(obj["embedding_tensor"], "embedding_tensor", f"{path}.embedding_tensor")
        f = et.field
        n, m = et.n, et.m
        v = self.count(obj["dim_v"], f"{path}.dim_v")
        w = self.count(obj["dim_w"], f"{path}.dim_w")
        return EtRepresentation(
            et, v, w,
            self.matrix(f, obj["Tprime"], w, v, f"{path}.Tprime"),
            self.matrices(f, obj["rho1"], n, v, v, f"{path}.rho1"),
            self.matrices(f, obj["rho2"], n, w, w, f"{path}.rho2"),
            self.matrices(f, obj["rho3"], m, v, w, f"{path}.rho3"),
        )

    def dims(self, x, names, path) -> tuple:
        if not isinstance(x, dict) or set(x) != set(names):
            raise ParseError(f"dims must have exactly the keys {list(names)}", path)
        return tuple(self.count(x[k], f"{path}.{k}") for k in names)

    def _cochain_parts(self, f, obj, dims, path):
        n, m, v, w = dims
        theta = self.matrix(f, obj["theta"], w, m, f"{path}.theta")
        omega = self.table(f, obj["omega"], n, w, f"{path}.omega")
        nu = self.matrices(f, obj["nu"], n, v, m, f"{path}.nu")
        return TwoCochain(f, n, m, v, w, theta, omega, nu)

    def _two_cochain(self, obj, path):
        f = self.field(obj["field"], f"{path}.field")
        dims = self.dims(obj["dims"], ("n", "m", "v", "w"), f"{path}.dims")
        return self._cochain_parts(f, obj, dims, path)

    def _one_cochain(self, obj, path):
        f = self.field(obj["field"], f"{path}.field")
        n, m, v, w = self.dims(obj["dims"], ("n", "m", "v", "w"), f"{path}.dims")
        return OneCochain(f, n, m, v, w, self.matrix(f, obj["b0"], v, m, f"{path}.b0"),
                          self.matrix(f, obj["b1"], w, n, f"{path}.b1"))

    def _nijenhuis_pair(self, obj, path):
        f = self.field(obj["field"], f"{path}.field")
        n, m = self.dims(obj["dims"], ("n", "m"), f"{path}.dims")
        return NijenhuisPair(self.matrix(f, obj["N0"], m, m, f"{path}.N0"),
                             self.matrix(f, obj["N1"], n, n, f"{path}.N1"))

    def _formal_deformation(self, obj, path):
        f = self.field(obj["field"], f"{path}.field")
        n, m = self.dims(obj["dims"], ("n", "m"), f"{path}.dims")
        order = self.count(obj["order"], f"{path}.order")
        terms = obj["terms"]
        if not isinstance(terms, list) or len(terms) != order:
            raise ParseError(f"expected {order} terms", f"{path}.terms")
        out = []
        for k, t in enumerate(terms):
            p = f"{path}.terms[{k}]"
            if not isinstance(t, dict) or set(t) != {"theta", "omega", "nu"}:
                raise ParseError('terms must have exactly the keys "theta", "omega", "nu"', p)
            out.append(self._cochain_parts(f, t, (n, m, m, n), p))
        return FormalDeformation(order, tuple(out))

    def _extension(self, obj, path):
        base = self.nested(obj["base"], "embedding_tensor", f"{path}.base")
        hat = self.nested(obj["hat"], "embedding_tensor", f"{path}.hat")
        f = base.field
        if hat.field != f:
            raise ParseError("base and hat live over different fields", f"{path}.hat")
        v, w = hat.m - base.m, hat.n - base.n
        if v < 0 or w < 0:
            raise ParseError("hat is smaller than base", f"{path}.hat")
        return Extension(base, hat,
                         self.matrix(f, obj["i0"], hat.m, v, f"{path}.i0"),
                         self.matrix(f, obj["i1"], hat.n, w, f"{path}.i1"),
                         self.matrix(f, obj["p0"], base.m, hat.m, f"{path}.p0"),
                         self.matrix(f, obj["p1"], base.n, hat.n, f"{path}.p1"))


def _loads(text: str, where: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", where) from exc


def parse(text: str, base_dir: Optional[Path] = None, source: str = "$") -> Document:
    obj = _loads(text, source)
    value = _Reader(base_dir).document(obj, source)
    return Document(obj["kind"], value)


def load(path, expect: Optional[str] = None) -> Document:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from exc
    doc = parse(text, p.parent, f"{path}:$")
    if expect is not None and doc.kind not in ((expect,) if isinstance(expect, str) else expect):
        raise ParseError(f"expected {expect} document, got {doc.kind}", str(path))
    return doc


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------

def _field_json(f: Field):
    return "Q" if f.modulus is None else {"Fp": f.modulus}


def _scalar_json(x):
    if isinstance(x, FpElement):
        return x.value
    if isinstance(x, int):
        return x
    if x.denominator == 1:
        return int(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _matrix_json(mat: Matrix) -> list:
    return [[_scalar_json(x) for x in r] for r in mat.entries]


def _table_json(entries) -> list:
    return [{"i": i, "j": j, "c": [_scalar_json(x) for x in c]}
            for (i, j), c in sorted(entries.items()) if any(c)]


def _algebra_json(a: AlgebraData) -> dict:
    kind = "malcev_algebra" if a.skew else "dialgebra"
    if a.skew:
        entries = {(i, j): a.bracket_basis(i, j) for i, j in index_pairs(a.dim)}
    else:
        entries = {(i, j): a.bracket_basis(i, j) for i in range(a.dim) for j in range(a.dim)}
    return {"kind": kind, "field": _field_json(a.field), "dim": a.dim, "bracket": _table_json(entries)}


def _rep_json(r: Representation) -> dict:
    return {"kind": "representation", "algebra": _algebra_json(r.algebra),
            "module_dim": r.module_dim, "rho": [_matrix_json(x) for x in r.rho]}


def _et_json(et: EmbeddingTensor) -> dict:
    return {"kind": "embedding_tensor", "representation": _rep_json(et.rep), "T": _matrix_json(et.T)}


def _cochain_body(z: TwoCochain) -> dict:
    return {"theta": _matrix_json(z.theta), "omega": _table_json(z.omega),
            "nu": [_matrix_json(x) for x in z.nu]}


def to_json_obj(obj) -> dict:
    if isinstance(obj, AlgebraData):
        return _algebra_json(obj)
    if isinstance(obj, Representation):
        return _rep_json(obj)
    if isinstance(obj, EmbeddingTensor):
        return _et_json(obj)
    if isinstance(obj, EtRepresentation):
        return {"kind": "et_representation", "embedding_tensor": _et_json(obj.base),
                "dim_v": obj.dim_v, "dim_w": obj.dim_w, "Tprime": _matrix_json(obj.Tprime),
                "rho1": [_matrix_json(x) for x in obj.rho1],
                "rho2": [_matrix_json(x) for x in obj.rho2],
                "rho3": [_matrix_json(x) for x in obj.rho3]}
    if isinstance(obj, TwoCochain):
        n, m, v, w = obj.dims
        return {"kind": "two_cochain", "field": _field_json(obj.field),
                "dims": {"n": n, "m": m, "v": v, "w": w}, **_cochain_body(obj)}
    if isinstance(obj, OneCochain):
        n, m, v, w = obj.dims
        return {"kind": "one_cochain", "field": _field_json(obj.field),
                "dims": {"n": n, "m": m, "v": v, "w": w},
                "b0": _matrix_json(obj.b0), "b1": _matrix_json(obj.b1)}
    if isinstance(obj, NijenhuisPair):
        return {"kind": "nijenhuis_pair", "field": _field_json(obj.N0.field),
                "dims": {"n": obj.N1.rows, "m": obj.N0.rows},
                "N0": _matrix_json(obj.N0), "N1": _matrix_json(obj.N1)}
    if isinstance(obj, FormalDeformation):
        if not obj.terms:
            raise ShapeError("an order-0 formal deformation carries no field or dims to emit")
        t0 = obj.terms[0]
        return {"kind": "formal_deformation", "field": _field_json(t0.field),
                "dims": {"n": t0.n, "m": t0.m}, "order": obj.order,
                "terms": [_cochain_body(t) for t in obj.terms]}
    if isinstance(obj, Extension):
        return {"kind": "extension", "base": _et_json(obj.base), "hat": _et_json(obj.hat),
                "i0": _matrix_json(obj.i0), "i1": _matrix_json(obj.i1),
                "p0": _matrix_json(obj.p0), "p1": _matrix_json(obj.p1)}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _is_flat(value) -> bool:
    """Scalars, lists of scalars and lists of such lists render on one line."""
    if isinstance(value, list):
        return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _is_flat(x))
                   for x in value)
    return not isinstance(value, dict)


def render(value, indent: int = 0) -> str:
    """Canonical text: objects one key per line in emission order, matrices inline."""
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        if all(_is_flat(v) and not isinstance(v, list) for v in value.values()) and len(value) <= 4:
            return json.dumps(value, separators=(", ", ": "))
        items = [f'{pad}  {json.dumps(k)}: {render(v, indent + 1)}' for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list):
        if _is_flat(value):
            return json.dumps(value, separators=(", ", ": "))
        items = [f"{pad}  {render(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(value)


def emit(obj) -> str:
    return render(to_json_obj(obj)) + "\n"


def check_field(expected: Field, actual: Field, what: str):
    if expected != actual:
        raise FieldMismatch(f"{what} is over {actual}, expected {expected}")
