"""Exact scalars (rationals and prime fields) and dense linear algebra.

Vectors are plain tuples of field elements.  Rational elements are ``int``
or ``fractions.Fraction``; prime-field elements are :class:`FpElement`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import FieldMismatch, ShapeError

_RATIONAL_RE = re.compile(r"^-?[0-9]+(/[1-9][0-9]*)?$")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class FpElement:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise FieldMismatch(f"cannot mix F{self.p} and F{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        raise FieldMismatch(f"cannot mix F{self.p} with {type(other).__name__}")

    def __add__(self, other):
        return FpElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FpElement(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FpElement(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return FpElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "FpElement":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F{self.p}")
        return FpElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = FpElement(self._coerce(other), self.p)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return FpElement(self._coerce(other), self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FpElement({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Field:
    """Field descriptor: ``modulus=None`` is Q, otherwise the prime field F_p.

    Rational elements are ``int`` when integral and ``Fraction`` otherwise;
    both compare and hash consistently, and integer arithmetic is much
    cheaper than Fraction arithmetic.
    """

    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None and not _is_prime(self.modulus):
            raise ValueError(f"{self.modulus} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    @property
    def characteristic(self) -> int:
        return 0 if self.modulus is None else self.modulus

    @property
    def name(self) -> str:
        return "Q" if self.modulus is None else f"F{self.modulus}"

    @property
    def zero(self):
        return 0 if self.modulus is None else FpElement(0, self.modulus)

    @property
    def one(self):
        return 1 if self.modulus is None else FpElement(1, self.modulus)

    def __call__(self, x):
        """Coerce ``x`` (int, Fraction, literal string, element) into this field."""
        if self.modulus is None:
            if isinstance(x, FpElement):
                raise FieldMismatch(f"F{x.p} element used over Q")
            if isinstance(x, bool):
                raise TypeError("booleans are not scalars")
            if isinstance(x, int):
                return x
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            if isinstance(x, str):
                return self(parse_rational(x))
            raise TypeError(f"cannot interpret {x!r} as a rational")
        p = self.modulus
        if isinstance(x, FpElement):
            if x.p != p:
                raise FieldMismatch(f"F{x.p} element used over F{p}")
            return x
        if isinstance(x, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(x, int):
            return FpElement(x, p)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in F{p}")
            return FpElement(x.numerator * pow(x.denominator, -1, p), p)
        if isinstance(x, str):
            return self(parse_rational(x))
        raise TypeError(f"cannot interpret {x!r} as an element of F{p}")

    def contains(self, x) -> bool:
        if self.modulus is None:
            return isinstance(x, (int, Fraction)) and not isinstance(x, bool)
        return isinstance(x, FpElement) and x.p == self.modulus

    def div(self, a, b):
        """Exact quotient ``a / b`` (never a float)."""
        if self.modulus is None:
            return self(Fraction(a) / b)
        return self(a) / b

    def elements(self):
        if self.modulus is None:
            raise ValueError("Q is infinite")
        return [FpElement(i, self.modulus) for i in range(self.modulus)]

    def __str__(self):
        return self.name


Q = Field()


def GF(p: int) -> Field:
    return Field(p)


def parse_rational(text: str) -> Fraction:
    """Parse ``-?[0-9]+(/[1-9][0-9]*)?`` into a reduced Fraction."""
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"malformed rational literal {text!r}")
    return Fraction(text)


def format_scalar(x) -> str:
    if isinstance(x, FpElement):
        return str(x.value)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------

def zero_vector(field: Field, n: int) -> tuple:
    z = field.zero
    return (z,) * n


def unit_vector(field: Field, n: int, i: int) -> tuple:
    z, o = field.zero, field.one
    return tuple(o if k == i else z for k in range(n))


def vadd(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u: Sequence) -> tuple:
    return tuple(c * a for a in u)


def vsum(field: Field, n: int, vectors: Iterable[Sequence]) -> tuple:
    acc = [field.zero] * n
    for v in vectors:
        for k, a in enumerate(v):
            if a:
                acc[k] = acc[k] + a
    return tuple(acc)


def is_zero_vector(u: Sequence) -> bool:
    return not any(u)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix over a single field."""

    field: Field
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ShapeError(f"entries do not form a {self.rows}x{self.cols} grid")
        for r in self.entries:
            for x in r:
                if not self.field.contains(x):
                    raise FieldMismatch(f"entry {x!r} is not in {self.field}")

    @classmethod
    def _trusted(cls, field: Field, rows: int, cols: int, entries: tuple) -> "Matrix":
        """Skip validation for entries produced by field arithmetic on valid matrices."""
        m = object.__new__(cls)
        object.__setattr__(m, "field", field)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "entries", entries)
        return m

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        rows = [tuple(field(x) for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise ShapeError("column count required for a matrix with no rows")
            cols = len(rows[0])
        return cls(field, len(rows), cols, tuple(rows))

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], rows: int) -> "Matrix":
        cols = [tuple(field(x) for x in c) for c in columns]
        if any(len(c) != rows for c in cols):
            raise ShapeError("column length mismatch")
        return cls(field, rows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(rows)))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls._trusted(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls._trusted(field, n, n, tuple(unit_vector(field, n, i) for i in range(n)))

    @classmethod
    def block(cls, field: Field, blocks: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a block matrix; every block in a block-row shares its row count."""
        out = []
        cols = sum(b.cols for b in blocks[0]) if blocks else 0
        for brow in blocks:
            if sum(b.cols for b in brow) != cols or len({b.rows for b in brow}) > 1:
                raise ShapeError("inconsistent block shapes")
            for i in range(brow[0].rows):
                out.append(tuple(x for b in brow for x in b.entries[i]))
        return cls(field, len(out), cols, tuple(out))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "Matrix":
        return Matrix._trusted(self.field, self.cols, self.rows,
                               tuple(self.column(j) for j in range(self.cols)))

    def _check_field(self, other: "Matrix"):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch in addition")
        return Matrix._trusted(self.field, self.rows, self.cols,
                               tuple(vadd(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch in subtraction")
        return Matrix._trusted(self.field, self.rows, self.cols,
                               tuple(vsub(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return self.scale(-self.field.one)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._trusted(self.field, self.rows, self.cols, tuple(vscale(c, r) for r in self.entries))

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ShapeError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        z = self.field.zero
        nz = [(j, a) for j, a in enumerate(v) if a]
        out = []
        for r in self.entries:
            acc = z
            for j, a in nz:
                x = r[j]
                if x:
                    acc = acc + x * a
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check_field(other)
            if self.cols != other.rows:
                raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
            z = self.field.zero
            ncols = other.cols
            orows = other.entries
            out = []
            for r in self.entries:
                acc = [z] * ncols
                for k, a in enumerate(r):
                    if not a:
                        continue
                    for j, b in enumerate(orows[k]):
                        if b:
                            acc[j] = acc[j] + a * b
                out.append(tuple(acc))
            return Matrix._trusted(self.field, self.rows, ncols, tuple(out))
        return self.apply(other)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def flat(self) -> tuple:
        return tuple(x for r in self.entries for x in r)

    def tolist(self) -> list:
        return [list(r) for r in self.entries]


def linear_combination(field: Field, coeffs: Sequence, mats: Sequence[Matrix], rows: int, cols: int) -> Matrix:
    """Return sum_i coeffs[i] * mats[i] (a zero matrix of the given shape if empty)."""
    acc = [[field.zero] * cols for _ in range(rows)]
    for c, m in zip(coeffs, mats):
        if not c:
            continue
        for i, r in enumerate(m.entries):
            ai = acc[i]
            for j, x in enumerate(r):
                if x:
                    ai[j] = ai[j] + c * x
    return Matrix._trusted(field, rows, cols, tuple(tuple(r) for r in acc))


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

def _check_uniform(m: Matrix):
    for r in m.entries:
        for x in r:
            if not m.field.contains(x):
                raise FieldMismatch(f"entry {x!r} is not in {m.field}")


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns.

    Pivots are chosen scanning columns left to right and, within a column,
    taking the topmost nonzero entry at or below the current row.
    """
    _check_uniform(m)
    a = [list(r) for r in m.entries]
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pr = next((i for i in range(r, nrows) if a[i][c]), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = m.field.div(1, a[r][c])
        a[r] = [x * inv for x in a[r]]
        pivot_row = a[r]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], pivot_row)]
        pivots.append(c)
        r += 1
    return Matrix(m.field, nrows, ncols, tuple(tuple(x) for x in a)), len(pivots), pivots


def rank(m: Matrix) -> int:
    return rref(m)[1]


def kernel_basis(m: Matrix) -> list[tuple]:
    """Basis of the right null space, one vector per free column (in column order)."""
    red, rk, pivots = rref(m)
    f = m.field
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [f.zero] * m.cols
        v[fc] = f.one
        for i, pc in enumerate(pivots):
            v[pc] = -red.entries[i][fc]
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b: Sequence) -> Optional[tuple]:
    """One solution of ``m x = b`` with free variables zero, or None if inconsistent."""
    if len(b) != m.rows:
        raise ShapeError(f"right-hand side has length {len(b)}, expected {m.rows}")
    b = tuple(b)
    for x in b:
        if not m.field.contains(x):
            raise FieldMismatch(f"right-hand side entry {x!r} is not in {m.field}")
    aug = Matrix(m.field, m.rows, m.cols + 1, tuple(r + (x,) for r, x in zip(m.entries, b)))
    red, rk, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [m.field.zero] * m.cols
    for i, pc in enumerate(pivots):
        x[pc] = red.entries[i][m.cols]
    return tuple(x)


def column_space_basis(m: Matrix) -> list[tuple]:
    """Pivot columns of ``m`` (a basis of its image, chosen deterministically)."""
    _, _, pivots = rref(m)
    return [m.column(c) for c in pivots]
