"""Finite-dimensional graded algebras given by a homogeneous basis and structure constants.

Every concrete algebra in the package (presented quotients, skew group
algebras, orbit algebras, quotients by ideals) is a :class:`GradedAlgebra`:
each basis element lives in exactly one piece ``e_i A_h e_j`` and products
are sparse vectors ``{basis index: coefficient}`` over the same basis.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .quiver import Degree, add_degrees, zero_degree
from .scalars import Field, Matrix, kernel_basis, row_space_basis

Sparse = dict  # basis index -> nonzero field element
PieceKey = tuple  # (source vertex, target vertex, degree)


# ---------------------------------------------------------------------------
# sparse vectors
# ---------------------------------------------------------------------------


def sp_add(x: Mapping, y: Mapping, c=1) -> Sparse:
    """``x + c*y``."""
    out = dict(x)
    for k, v in y.items():
        s = out.get(k, 0) + c * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def sp_scale(x: Mapping, c) -> Sparse:
    if not c:
        return {}
    return {k: c * v for k, v in x.items()}


def sp_sum(field: Field, vectors: Iterable[tuple]) -> Sparse:
    """Sum of ``coef * vector`` over ``(coef, vector)`` pairs."""
    acc: dict = {}
    for c, vec in vectors:
        if not c:
            continue
        for k, v in vec.items():
            s = acc.get(k, field.zero) + c * v
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
    return acc


class GradedAlgebra:
    """Abstract finite-dimensional graded algebra with enough idempotents.

    Subclasses set ``field``, ``vertices``, ``grading_rank`` and the per-basis
    lists ``src``, ``tgt``, ``deg``, ``labels``, call :meth:`_index_pieces`, and
    implement :meth:`_compute_product` and :meth:`idempotent`.
    """

    field: Field
    vertices: tuple
    grading_rank: int
    src: list
    tgt: list
    deg: list
    labels: list

    def _index_pieces(self) -> None:
        pieces: dict[PieceKey, list[int]] = {}
        for k in range(len(self.src)):
            pieces.setdefault((self.src[k], self.tgt[k], self.deg[k]), []).append(k)
        self.pieces = {key: pieces[key] for key in sorted(pieces)}
        self.position = [0] * len(self.src)
        self.piece_of = [None] * len(self.src)
        for key, idx in self.pieces.items():
            for pos, k in enumerate(idx):
                self.position[k] = pos
                self.piece_of[k] = key
        self._products: dict[tuple, Sparse] = {}

    # -- interface ---------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.src)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def _compute_product(self, k: int, l: int) -> Sparse:  # pragma: no cover - abstract
        raise NotImplementedError

    def idempotent(self, i: int) -> Sparse:  # pragma: no cover - abstract
        raise NotImplementedError

    def zero_degree(self) -> Degree:
        return zero_degree(self.grading_rank)

    # -- multiplication ----------------------------------------------------
    def product(self, k: int, l: int) -> Sparse:
        """Product of basis elements ``b_k b_l``."""
        if self.tgt[k] != self.src[l]:
            return {}
        key = (k, l)
        res = self._products.get(key)
        if res is None:
            res = self._compute_product(k, l)
            self._products[key] = res
        return res

    def mul(self, x: Mapping, y: Mapping) -> Sparse:
        acc: dict = {}
        z = self.field.zero
        for k, a in x.items():
            tk = self.tgt[k]
            for l, b in y.items():
                if self.src[l] != tk:
                    continue
                ab = a * b
                for m, c in self.product(k, l).items():
                    s = acc.get(m, z) + ab * c
                    if s:
                        acc[m] = s
                    else:
                        acc.pop(m, None)
        return acc

    def basis_vector(self, k: int) -> Sparse:
        return {k: self.field.one}

    def one(self) -> Sparse:
        acc: dict = {}
        for i in range(self.num_vertices):
            acc = sp_add(acc, self.idempotent(i))
        return acc

    # -- pieces ------------------------------------------------------------
    def piece(self, i: int, j: int, h: Degree) -> list[int]:
        return self.pieces.get((i, j, tuple(h)), [])

    def piece_dim(self, key: PieceKey) -> int:
        return len(self.pieces.get(key, ()))

    def pieces_from(self, i: int) -> list[PieceKey]:
        return [key for key in self.pieces if key[0] == i]

    def pieces_to(self, j: int) -> list[PieceKey]:
        return [key for key in self.pieces if key[1] == j]

    def degrees(self) -> list[Degree]:
        return sorted({key[2] for key in self.pieces})

    def dimension_vector(self) -> dict[PieceKey, int]:
        return {key: len(idx) for key, idx in self.pieces.items()}

    def to_piece_coords(self, key: PieceKey, x: Mapping) -> list:
        idx = self.pieces.get(key, [])
        z = self.field.zero
        out = [z] * len(idx)
        for k, v in x.items():
            if self.piece_of[k] != key:
                raise ValueError(f"vector has support outside piece {key}")
            out[self.position[k]] = v
        return out

    def from_piece_coords(self, key: PieceKey, coords: Sequence) -> Sparse:
        idx = self.pieces.get(key, [])
        return {idx[p]: c for p, c in enumerate(coords) if c}

    def split_homogeneous(self, x: Mapping) -> dict[PieceKey, Sparse]:
        out: dict[PieceKey, dict] = {}
        for k, v in x.items():
            out.setdefault(self.piece_of[k], {})[k] = v
        return out

    def element_key(self, x: Mapping):
        """The piece containing a nonzero homogeneous vector, else None."""
        keys = {self.piece_of[k] for k in x}
        return keys.pop() if len(keys) == 1 else None

    def format_vector(self, x: Mapping) -> str:
        if not x:
            return "0"
        parts = []
        for k in sorted(x):
            c = x[k]
            s = self.field.format(c)
            if c == 1:
                parts.append(f"+ {self.labels[k]}")
            elif c == -1:
                parts.append(f"- {self.labels[k]}")
            elif s.startswith("-"):
                parts.append(f"- {s[1:]}*{self.labels[k]}")
            else:
                parts.append(f"+ {s}*{self.labels[k]}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    # -- sanity ------------------------------------------------------------
    def check_associative(self, triples: Iterable[tuple] | None = None) -> tuple | None:
        """First basis triple violating associativity, or None."""
        if triples is None:
            triples = (
                (a, b, c)
                for a in range(self.dim)
                for b in range(self.dim)
                if self.tgt[a] == self.src[b]
                for c in range(self.dim)
                if self.tgt[b] == self.src[c]
            )
        for a, b, c in triples:
            left = self.mul(self.product(a, b), {c: self.field.one})
            right = self.mul({a: self.field.one}, self.product(b, c))
            if left != right:
                return (a, b, c)
        return None

    def check_grading(self) -> tuple | None:
        """First basis pair whose product leaves the expected piece, or None."""
        for a in range(self.dim):
            for b in range(self.dim):
                if self.tgt[a] != self.src[b]:
                    continue
                want = (self.src[a], self.tgt[b], add_degrees(self.deg[a], self.deg[b]))
                for m in self.product(a, b):
                    if self.piece_of[m] != want:
                        return (a, b)
        return None


# ---------------------------------------------------------------------------
# subspace families
# ---------------------------------------------------------------------------


class SubspaceFamily:
    """A homogeneous subspace: per piece, a reduced echelon basis in piece coordinates."""

    def __init__(self, algebra: GradedAlgebra, rows: Mapping[PieceKey, list] | None = None):
        self.algebra = algebra
        self.rows: dict[PieceKey, list] = {}
        for key, rs in (rows or {}).items():
            red = row_space_basis(algebra.field, rs, algebra.piece_dim(key))
            if red:
                self.rows[key] = red
        self.rows = {k: self.rows[k] for k in sorted(self.rows)}

    @classmethod
    def from_vectors(cls, algebra: GradedAlgebra, vectors: Iterable[Mapping]) -> "SubspaceFamily":
        """Span of the homogeneous components of the given sparse vectors."""
        per: dict[PieceKey, list] = {}
        for v in vectors:
            for key, comp in algebra.split_homogeneous(v).items():
                per.setdefault(key, []).append(algebra.to_piece_coords(key, comp))
        return cls(algebra, per)

    @classmethod
    def whole(cls, algebra: GradedAlgebra) -> "SubspaceFamily":
        f = algebra.field
        return cls(
            algebra,
            {
                key: [[f.one if a == b else f.zero for b in range(len(idx))] for a in range(len(idx))]
                for key, idx in algebra.pieces.items()
            },
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubspaceFamily):
            return NotImplemented
        return self.rows == other.rows

    def __repr__(self) -> str:
        return f"SubspaceFamily(dims={self.dims()})"

    def dims(self) -> dict[PieceKey, int]:
        return {k: len(v) for k, v in self.rows.items()}

    @property
    def total_dim(self) -> int:
        return sum(len(v) for v in self.rows.values())

    def piece_rows(self, key: PieceKey) -> list:
        return self.rows.get(key, [])

    def vectors(self) -> list[Sparse]:
        out = []
        for key, rs in self.rows.items():
            for r in rs:
                out.append(self.algebra.from_piece_coords(key, r))
        return out

    def piece_vectors(self, key: PieceKey) -> list[Sparse]:
        return [self.algebra.from_piece_coords(key, r) for r in self.rows.get(key, [])]

    def contains(self, x: Mapping) -> bool:
        alg = self.algebra
        for key, comp in alg.split_homogeneous(x).items():
            if not self._reduce(key, alg.to_piece_coords(key, comp)) == [alg.field.zero] * alg.piece_dim(key):
                return False
        return True

    def _reduce(self, key: PieceKey, coords: list) -> list:
        v = list(coords)
        for r in self.rows.get(key, []):
            c = next(p for p, x in enumerate(r) if x)
            f = v[c]
            if f:
                v = [a - f * b for a, b in zip(v, r)]
        return v

    def reduce(self, key: PieceKey, coords: list) -> list:
        """Canonical representative of ``coords`` modulo this family's piece."""
        return self._reduce(key, coords)

    def pivots(self, key: PieceKey) -> list[int]:
        return [next(p for p, x in enumerate(r) if x) for r in self.rows.get(key, [])]

    def is_subset_of(self, other: "SubspaceFamily") -> bool:
        return all(other.contains(v) for v in self.vectors())

    def sum(self, other: "SubspaceFamily") -> "SubspaceFamily":
        per = {k: list(v) for k, v in self.rows.items()}
        for k, v in other.rows.items():
            per.setdefault(k, []).extend(v)
        return SubspaceFamily(self.algebra, per)

    def is_zero(self) -> bool:
        return not self.rows

    def product_with(self, other: "SubspaceFamily") -> "SubspaceFamily":
        """Span of all products ``x y`` with ``x`` here and ``y`` in ``other``."""
        alg = self.algebra
        prods = []
        xs = self.vectors()
        ys = other.vectors()
        for x in xs:
            for y in ys:
                p = alg.mul(x, y)
                if p:
                    prods.append(p)
        return SubspaceFamily.from_vectors(alg, prods)

    def is_two_sided_ideal(self) -> tuple | None:
        """A basis element and family vector witnessing failure of ideal closure, or None."""
        alg = self.algebra
        one = alg.field.one
        for x in self.vectors():
            for k in range(alg.dim):
                for side, p in (("right", alg.mul(x, {k: one})), ("left", alg.mul({k: one}, x))):
                    if p and not self.contains(p):
                        return (side, k, x)
        return None

    def nilpotency_index(self, bound: int | None = None) -> int | None:
        """Least N with the N-th power zero, or None if not nilpotent within ``bound``."""
        if self.is_zero():
            return 0
        bound = bound if bound is not None else self.algebra.dim + 1
        power = self
        n = 1
        while not power.is_zero():
            if n > bound:
                return None
            power = power.product_with(self)
            n += 1
        return n


# ---------------------------------------------------------------------------
# quotients by homogeneous ideals
# ---------------------------------------------------------------------------


class QuotientAlgebra(GradedAlgebra):
    """``A / I`` for a homogeneous two-sided ideal ``I``, based on non-pivot piece elements."""

    def __init__(self, base: GradedAlgebra, ideal: SubspaceFamily):
        self.base = base
        self.ideal = ideal
        self.field = base.field
        self.vertices = base.vertices
        self.grading_rank = base.grading_rank
        self.src, self.tgt, self.deg, self.labels = [], [], [], []
        self.lift_index: list[int] = []
        self._proj: dict[int, int] = {}
        for key, idx in base.pieces.items():
            piv = set(ideal.pivots(key))
            for pos, k in enumerate(idx):
                if pos in piv:
                    continue
                self._proj[k] = len(self.src)
                self.lift_index.append(k)
                self.src.append(base.src[k])
                self.tgt.append(base.tgt[k])
                self.deg.append(base.deg[k])
                self.labels.append(f"[{base.labels[k]}]")
        self._index_pieces()

    def project(self, x: Mapping) -> Sparse:
        out: dict = {}
        base = self.base
        for key, comp in base.split_homogeneous(x).items():
            red = self.ideal.reduce(key, base.to_piece_coords(key, comp))
            idx = base.pieces[key]
            for pos, c in enumerate(red):
                if c:
                    out[self._proj[idx[pos]]] = c
        return out

    def _compute_product(self, k: int, l: int) -> Sparse:
        one = self.field.one
        return self.project(self.base.mul({self.lift_index[k]: one}, {self.lift_index[l]: one}))

    def idempotent(self, i: int) -> Sparse:
        return self.project(self.base.idempotent(i))


# ---------------------------------------------------------------------------
# ungraded finite-dimensional algebras (dense structure constants)
# ---------------------------------------------------------------------------


class SmallAlgebra:
    """An ungraded unital algebra with dense structure constants ``table[k][l]``."""

    def __init__(self, field: Field, table: list[list[list]], unit: list, labels: Sequence[str] | None = None):
        self.field = field
        self.table = table
        self.unit = unit
        self.n = len(unit)
        self.labels = list(labels) if labels is not None else [f"b{k}" for k in range(self.n)]

    @classmethod
    def from_graded(cls, alg: GradedAlgebra, indices: Sequence[int], unit: Mapping) -> "SmallAlgebra":
        """Restrict to the span of ``indices``; it must be closed under multiplication."""
        pos = {k: p for p, k in enumerate(indices)}
        n = len(indices)
        z = alg.field.zero
        table = []
        for k in indices:
            row = []
            for l in indices:
                vec = [z] * n
                for m, c in alg.product(k, l).items():
                    if m not in pos:
                        raise ValueError("subspace is not closed under multiplication")
                    vec[pos[m]] = c
                row.append(vec)
            table.append(row)
        u = [z] * n
        for m, c in unit.items():
            if m not in pos:
                raise ValueError("unit lies outside the subspace")
            u[pos[m]] = c
        return cls(alg.field, table, u, [alg.labels[k] for k in indices])

    def mul(self, x: Sequence, y: Sequence) -> list:
        z = self.field.zero
        out = [z] * self.n
        for k, a in enumerate(x):
            if not a:
                continue
            for l, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for m, c in enumerate(self.table[k][l]):
                    if c:
                        out[m] = out[m] + ab * c
        return out

    def left_matrix(self, x: Sequence) -> Matrix:
        """Matrix of ``y -> x y`` acting on column coordinate vectors."""
        cols = [self.mul(x, self.basis_vector(l)) for l in range(self.n)]
        return Matrix(self.field, [[cols[c][r] for c in range(self.n)] for r in range(self.n)], self.n)

    def basis_vector(self, k: int) -> list:
        f = self.field
        return [f.one if m == k else f.zero for m in range(self.n)]

    def is_unit(self, x: Sequence) -> bool:
        """Invertibility, decided by solving ``x y = 1`` (one-sided suffices in finite dimension)."""
        return self.left_matrix(x).solve(self.unit) is not None

    def is_commutative(self) -> bool:
        return all(self.table[k][l] == self.table[l][k] for k in range(self.n) for l in range(k + 1, self.n))

    def subspace_kernel(self, rows: list) -> list:
        return kernel_basis(Matrix(self.field, rows, self.n)) if rows else [
            self.basis_vector(k) for k in range(self.n)
        ]
