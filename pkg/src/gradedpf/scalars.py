"""Exact ground fields and dense linear algebra over them.

Two backends are provided: the rationals (elements are :class:`fractions.Fraction`)
and prime fields GF(p) (elements are :class:`GFElement`).  Every routine in this
module is written against the small :class:`Field` protocol, so the same row
reduction serves both.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

FieldElem = Union[Fraction, "GFElement"]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface of the two field backends."""

    characteristic: int = 0

    def __call__(self, value) -> FieldElem:  # pragma: no cover - abstract
        raise NotImplementedError

    @property
    def zero(self) -> FieldElem:
        return self(0)

    @property
    def one(self) -> FieldElem:
        return self(1)

    def format(self, x: FieldElem) -> str:
        return str(x)

    def lift(self, x: FieldElem) -> int:
        raise TypeError(f"{self} has no integer lift")


class RationalField(Field):
    characteristic = 0

    def __call__(self, value) -> Fraction:
        if isinstance(value, GFElement):
            raise TypeError("cannot coerce a GF(p) residue into Q")
        if isinstance(value, str):
            return Fraction(value.strip())
        return Fraction(value)

    def __repr__(self) -> str:
        return "Q"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")

    @property
    def name(self) -> str:
        return "Q"


QQ = RationalField()


class GFElement:
    """A residue class modulo a prime, stored as its representative in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> int | None:
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            den = other.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"{other} has no image in GF({self.p})")
            return other.numerator * pow(den, -1, self.p) % self.p
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return GFElement(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElement(o, self.p) / self

    def __neg__(self):
        return GFElement(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return GFElement(pow(self.value, -1, self.p), self.p) ** (-n)
        return GFElement(pow(self.value, n, self.p), self.p)

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except (ValueError, ZeroDivisionError):
            return False
        if o is None:
            return NotImplemented
        return self.value == o

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"GF{self.p}({self.value})"

    def __str__(self) -> str:
        return str(self.value)


class PrimeField(Field):
    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"GF(p) needs a prime p, got {p!r}")
        self.p = p
        self.characteristic = p

    def __call__(self, value) -> GFElement:
        if isinstance(value, GFElement):
            if value.p != self.p:
                raise ValueError(f"cannot coerce GF({value.p}) into GF({self.p})")
            return value
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"{value} has no image in GF({self.p})")
            return GFElement(value.numerator * pow(den, -1, self.p), self.p)
        if isinstance(value, int):
            return GFElement(value, self.p)
        raise TypeError(f"cannot coerce {value!r} into GF({self.p})")

    def lift(self, x: GFElement) -> int:
        return x.value

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    @property
    def name(self) -> str:
        return f"GF({self.p})"


def GF(p: int) -> PrimeField:
    return PrimeField(p)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


class Matrix:
    """Dense row-major matrix with entries in a fixed field."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data: Sequence[Sequence], cols: int | None = None):
        self.field = field
        self.data = [[field(x) for x in row] for row in data]
        self.rows = len(self.data)
        if cols is None:
            cols = len(self.data[0]) if self.data else 0
        self.cols = cols
        for row in self.data:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")

    @classmethod
    def zero(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> list:
        return list(self.data[i])

    def column(self, j: int) -> list:
        return [r[j] for r in self.data]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [self.column(j) for j in range(self.cols)], self.rows)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch in matrix product")
            ot = other.transpose().data
            z = self.field.zero
            out = []
            for r in self.data:
                out.append([sum((a * b for a, b in zip(r, c) if a and b), z) for c in ot])
            return Matrix(self.field, out, other.cols)
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch in matrix-vector product")
        z = self.field.zero
        return [sum((a * b for a, b in zip(r, vec) if a and b), z) for r in self.data]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def rref(self) -> tuple["Matrix", list[int]]:
        return rref(self)

    def rank(self) -> int:
        return len(rref(self)[1])

    def kernel_basis(self) -> list[list]:
        return kernel_basis(self)

    def solve(self, rhs: Sequence):
        return solve(self, rhs)

    def inverse(self) -> "Matrix":
        return inverse(self)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows


def _rref_rows(field: Field, rows: list[list], cols: int) -> tuple[list[list], list[int]]:
    """In-place Gauss-Jordan elimination on a list of rows."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(cols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.one / rows[r][c]
        if inv != 1:
            rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    rows[i] = [a - f * b if b else a for a, b in zip(ri, prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    rows, pivots = _rref_rows(m.field, [list(r) for r in m.data], m.cols)
    return Matrix(m.field, rows, m.cols), pivots


def row_space_basis(field: Field, vectors: Iterable[Sequence], dim: int) -> list[list]:
    """Reduced echelon basis (nonzero rows only) of the span of ``vectors``."""
    rows = [[field(x) for x in v] for v in vectors]
    rows, pivots = _rref_rows(field, rows, dim)
    return rows[: len(pivots)]


def kernel_basis(m: Matrix) -> list[list]:
    """Basis of the right null space {x : m x = 0}, one vector per free column."""
    red, pivots = rref(m)
    field = m.field
    pivset = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [field.zero] * m.cols
        v[free] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = -red.data[r][free]
        basis.append(v)
    return basis


def solve(m: Matrix, rhs: Sequence):
    """One solution of ``m x = rhs`` or ``None`` when the system is inconsistent."""
    if len(rhs) != m.rows:
        raise ValueError(f"rhs has length {len(rhs)}, matrix has {m.rows} rows")
    field = m.field
    aug = [list(r) + [field(b)] for r, b in zip(m.data, rhs)]
    aug, pivots = _rref_rows(field, aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [field.zero] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = aug[r][m.cols]
    return x


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("only square matrices are invertible")
    n = m.rows
    field = m.field
    aug = [list(r) + [field.one if i == j else field.zero for j in range(n)] for i, r in enumerate(m.data)]
    aug, pivots = _rref_rows(field, aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Matrix(field, [r[n:] for r in aug[:n]], n)


def rank_of(field: Field, vectors: Iterable[Sequence], dim: int) -> int:
    return len(row_space_basis(field, vectors, dim))
