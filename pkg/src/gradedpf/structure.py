"""Radicals, socles, basicness and Gabriel-quiver extraction for graded algebras."""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import GradedAlgebra, QuotientAlgebra, SmallAlgebra, SubspaceFamily
from .errors import InvariantViolation, NotSplitBasic, UnsupportedField
from .freealg import AlgElement
from .presentation import AlgebraHandle, Presentation, complete, normal_form
from .quiver import GradedQuiver, Path, neg_degree
from .scalars import Matrix, kernel_basis, row_space_basis

# ---------------------------------------------------------------------------
# radicals of ungraded unital algebras
# ---------------------------------------------------------------------------


def _left_traces(S: SmallAlgebra) -> list:
    """``tr(L_{b_m})`` for every basis element."""
    z = S.field.zero
    return [sum((S.table[m][l][l] for l in range(S.n)), z) for m in range(S.n)]


def _dickson_radical(S: SmallAlgebra) -> list:
    tr = _left_traces(S)
    f = S.field
    # T[l][k] = tr(L_{b_k b_l}); the radical is {x : sum_k x_k T[l][k] = 0 for all l}.
    rows = []
    for l in range(S.n):
        rows.append([sum((c * tr[m] for m, c in enumerate(S.table[k][l]) if c), f.zero) for k in range(S.n)])
    return kernel_basis(Matrix(f, rows, S.n))


def _int_matrix(S: SmallAlgebra, x: list, modulus: int):
    f = S.field
    m = S.left_matrix(x)
    dtype = np.int64 if modulus * modulus * max(S.n, 1) < 2**62 else object
    return np.array([[f.lift(v) for v in row] for row in m.data], dtype=dtype)


def _mat_pow_mod(a, e: int, modulus: int):
    result = np.identity(a.shape[0], dtype=a.dtype)
    base = a % modulus
    while e:
        if e & 1:
            result = (result @ base) % modulus
        base = (base @ base) % modulus
        e >>= 1
    return result


def _modular_radical(S: SmallAlgebra) -> list:
    """Iterated trace-form kernels with integer lifts (valid in characteristic p)."""
    f = S.field
    p = f.characteristic
    n = S.n
    current = [S.basis_vector(k) for k in range(n)]
    q = 1
    i = 0
    while q <= n and current:
        modulus = q * p
        conditions = []  # one linear functional on span(current) per basis y
        for y in range(n):
            row = []
            for x in current:
                z = S.mul(x, S.basis_vector(y))
                t = int(np.trace(_mat_pow_mod(_int_matrix(S, z, modulus), q, modulus))) % modulus
                if t % q:
                    raise InvariantViolation("trace of a lifted power is not divisible as expected")
                row.append(f(t // q))
            conditions.append(row)
        coeffs = kernel_basis(Matrix(f, conditions, len(current)))
        current = row_space_basis(
            f,
            [[sum((c * x[m] for c, x in zip(v, current) if c), f.zero) for m in range(n)] for v in coeffs],
            n,
        )
        i += 1
        q *= p
    return current


def ungraded_radical(S: SmallAlgebra) -> list:
    """Echelon basis of the Jacobson radical of a unital finite-dimensional algebra."""
    if S.n == 0:
        return []
    if S.field.characteristic == 0:
        vecs = _dickson_radical(S)
    else:
        vecs = _modular_radical(S)
    return row_space_basis(S.field, vecs, S.n)


def _quotient_small(S: SmallAlgebra, rad: list) -> SmallAlgebra:
    f = S.field
    piv = [next(p for p, x in enumerate(r) if x) for r in rad]
    keep = [k for k in range(S.n) if k not in set(piv)]

    def reduce(v):
        v = list(v)
        for r, c in zip(rad, piv):
            if v[c]:
                fac = v[c]
                v = [a - fac * b for a, b in zip(v, r)]
        return [v[k] for k in keep]

    table = [[reduce(S.table[k][l]) for l in keep] for k in keep]
    return SmallAlgebra(f, table, reduce(S.unit), [S.labels[k] for k in keep])


def _minimal_polynomial(D: SmallAlgebra, x: list) -> list:
    """Coefficients (low to high, monic) of the minimal polynomial of ``x``."""
    f = D.field
    powers = [D.unit]
    while True:
        nxt = D.mul(powers[-1], x)
        m = Matrix(f, [[powers[c][r] for c in range(len(powers))] for r in range(D.n)], len(powers))
        sol = m.solve(nxt)
        if sol is not None:
            return [-c for c in sol] + [f.one]
        powers.append(nxt)


def _is_field_q(D: SmallAlgebra) -> bool:
    import sympy

    for attempt in range(1, 4 * D.n + 5):
        x = [D.field(attempt**k) for k in range(D.n)]
        mp = _minimal_polynomial(D, x)
        if len(mp) - 1 == D.n:
            t = sympy.Symbol("t")
            poly = sum(sympy.Rational(c.numerator, c.denominator) * t**k for k, c in enumerate(mp))
            _, factors = sympy.factor_list(poly, t)
            return len(factors) == 1 and factors[0][1] == 1
    raise UnsupportedField("no primitive element found for a commutative semisimple quotient")


def _is_field_gf(D: SmallAlgebra) -> bool:
    p = D.field.characteristic
    f = D.field
    # Fixed points of x -> x^p on a commutative semisimple algebra: one per simple factor.
    cols = []
    for k in range(D.n):
        v = D.basis_vector(k)
        acc = D.unit
        for _ in range(p):
            acc = D.mul(acc, v)
        cols.append([a - b for a, b in zip(acc, v)])
    m = Matrix(f, [[cols[c][r] for c in range(D.n)] for r in range(D.n)], D.n)
    return len(kernel_basis(m)) == 1


def local_data(S: SmallAlgebra) -> tuple[bool, int, int]:
    """``(is_local, dim radical, dim quotient)`` for a unital finite-dimensional algebra."""
    rad = ungraded_radical(S)
    q = S.n - len(rad)
    if q == 1:
        return True, len(rad), q
    if q == 0:
        return False, len(rad), q
    D = _quotient_small(S, rad)
    if not D.is_commutative():
        if S.field.characteristic:
            return False, len(rad), q  # finite division rings are commutative
        raise UnsupportedField("deciding whether a noncommutative semisimple algebra over Q is a division ring")
    ok = _is_field_gf(D) if S.field.characteristic else _is_field_q(D)
    return ok, len(rad), q


# ---------------------------------------------------------------------------
# graded pieces as ungraded algebras
# ---------------------------------------------------------------------------


def corner_algebra(alg: GradedAlgebra, j: int) -> SmallAlgebra:
    """``e_j A_0 e_j``."""
    idx = alg.piece(j, j, alg.zero_degree())
    return SmallAlgebra.from_graded(alg, idx, alg.idempotent(j))


def degree_zero_algebra(alg: GradedAlgebra) -> tuple[SmallAlgebra, list[int]]:
    """``A_0`` with the global indices of its basis."""
    z = alg.zero_degree()
    idx = [k for k in range(alg.dim) if alg.deg[k] == z]
    return SmallAlgebra.from_graded(alg, idx, alg.one()), idx


def degree_zero_radical(alg: GradedAlgebra) -> SubspaceFamily:
    """Jacobson radical of ``A_0`` computed on ``A_0`` alone, as a subspace family."""
    S, idx = degree_zero_algebra(alg)
    vecs = [{idx[m]: c for m, c in enumerate(v) if c} for v in ungraded_radical(S)]
    return SubspaceFamily.from_vectors(alg, vecs)


# ---------------------------------------------------------------------------
# the graded radical
# ---------------------------------------------------------------------------


def radical_by_criterion(alg: GradedAlgebra, certify: bool = True) -> SubspaceFamily:
    """Graded radical from the invertibility criterion.

    ``x`` in ``e_i A_h e_j`` is radical iff ``e_j - y x`` is a unit of
    ``B = e_j A_0 e_j`` for every ``y`` in ``e_j A_{-h} e_i``.  The products
    ``y x`` form a left ideal of ``B``, and a left ideal of quasi-regular
    elements lies in ``rad B``; so the test is the linear condition
    ``y_b x in rad B`` over a basis ``y_b``.
    """
    f = alg.field
    corner_rad: dict[int, SubspaceFamily] = {}
    z = alg.zero_degree()
    for j in range(alg.num_vertices):
        S = corner_algebra(alg, j)
        key = (j, j, z)
        corner_rad[j] = SubspaceFamily(alg, {key: ungraded_radical(S)} if S.n else {})
    rows = {}
    for key, idx in alg.pieces.items():
        i, j, h = key
        ys = alg.piece(j, i, neg_degree(h))
        ckey = (j, j, z)
        cdim = alg.piece_dim(ckey)
        if not ys:
            rows[key] = [[f.one if a == b else f.zero for b in range(len(idx))] for a in range(len(idx))]
            continue
        # one equation per (y, coordinate of y x modulo rad B)
        crad = corner_rad[j]
        eqs = []
        for y in ys:
            images = []
            for k in idx:
                prod = alg.product(y, k)
                coords = alg.to_piece_coords(ckey, prod) if cdim else []
                images.append(crad.reduce(ckey, coords))
            for r in range(cdim):
                eqs.append([images[c][r] for c in range(len(idx))])
        rows[key] = kernel_basis(Matrix(f, eqs, len(idx))) if eqs else [
            [f.one if a == b else f.zero for b in range(len(idx))] for a in range(len(idx))
        ]
    J = SubspaceFamily(alg, rows)
    if certify:
        certify_radical(alg, J)
    return J


def certify_radical(alg: GradedAlgebra, J: SubspaceFamily) -> None:
    """Raise unless ``J`` is a nilpotent two-sided ideal with radical-free quotient."""
    bad = J.is_two_sided_ideal()
    if bad is not None:
        raise InvariantViolation(f"radical candidate is not a two-sided ideal ({bad[0]} product with {alg.labels[bad[1]]})")
    if J.nilpotency_index() is None:
        raise InvariantViolation("radical candidate is not nilpotent")
    Q = QuotientAlgebra(alg, J)
    if Q.dim and not radical_by_criterion(Q, certify=False).is_zero():
        raise InvariantViolation("quotient by the radical candidate has a nonzero radical")


def radical_arrow_image(alg: GradedAlgebra) -> SubspaceFamily:
    """Span of the images of all paths of positive length, when that ideal is nilpotent.

    Falls back to :func:`radical_by_criterion` for algebras that are not
    presented or whose arrow ideal is not nilpotent.
    """
    if isinstance(alg, AlgebraHandle):
        vecs = [{k: alg.field.one} for k, p in enumerate(alg.paths) if p.length >= 1]
        J = SubspaceFamily.from_vectors(alg, vecs)
        if J.nilpotency_index() is not None:
            return J
    return radical_by_criterion(alg)


def radical(alg: GradedAlgebra) -> SubspaceFamily:
    cached = getattr(alg, "_radical_cache", None)
    if cached is None:
        cached = radical_by_criterion(alg)
        alg._radical_cache = cached
    return cached


# ---------------------------------------------------------------------------
# socles
# ---------------------------------------------------------------------------


def socle(alg: GradedAlgebra, J: SubspaceFamily | None = None, side: str = "right") -> SubspaceFamily:
    """``{x : xJ = 0}`` for ``side='right'``, ``{x : Jx = 0}`` for ``side='left'``."""
    if J is None:
        J = radical(alg)
    return annihilator_modulo(alg, J, SubspaceFamily(alg), side)


def annihilator_modulo(alg: GradedAlgebra, J: SubspaceFamily, S: SubspaceFamily, side: str) -> SubspaceFamily:
    """``{x : xJ in S}`` (right) or ``{x : Jx in S}`` (left), piece by piece."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    f = alg.field
    jvecs = [(alg.element_key(y), y) for y in J.vectors()]
    rows = {}
    for key, idx in alg.pieces.items():
        i, j, _ = key
        eqs = []
        for ky, y in jvecs:
            if side == "right" and ky[0] != j:
                continue
            if side == "left" and ky[1] != i:
                continue
            images = [alg.mul({k: f.one}, y) if side == "right" else alg.mul(y, {k: f.one}) for k in idx]
            per_piece: dict = {}
            for c, v in enumerate(images):
                for pk, comp in alg.split_homogeneous(v).items():
                    per_piece.setdefault(pk, {})[c] = S.reduce(pk, alg.to_piece_coords(pk, comp))
            for pk in sorted(per_piece):
                cols = per_piece[pk]
                zero = [f.zero] * alg.piece_dim(pk)
                for r in range(alg.piece_dim(pk)):
                    eqs.append([cols.get(c, zero)[r] for c in range(len(idx))])
        if eqs:
            rows[key] = kernel_basis(Matrix(f, eqs, len(idx)))
        else:
            rows[key] = [[f.one if a == b else f.zero for b in range(len(idx))] for a in range(len(idx))]
    return SubspaceFamily(alg, rows)


def socle_series(alg: GradedAlgebra, J: SubspaceFamily | None = None, side: str = "right") -> list[SubspaceFamily]:
    """Increasing chain ``0 = S_0 < S_1 = Soc < ...`` until it stabilises."""
    if J is None:
        J = radical(alg)
    chain = [SubspaceFamily(alg)]
    while True:
        nxt = annihilator_modulo(alg, J, chain[-1], side)
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


@dataclass
class Classification:
    weakly_basic: bool
    basic: bool
    split: bool
    connected: bool
    local_dims: list
    local_radical_dims: list
    witnesses: list = dc_field(default_factory=list)


def connected_components(alg: GradedAlgebra) -> list[list[int]]:
    parent = list(range(alg.num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j, _ in alg.pieces:
        a, b = find(i), find(j)
        if a != b:
            parent[max(a, b)] = min(a, b)
    comps: dict[int, list[int]] = {}
    for v in range(alg.num_vertices):
        comps.setdefault(find(v), []).append(v)
    return list(comps.values())


def classify(alg: GradedAlgebra, J: SubspaceFamily | None = None) -> Classification:
    if J is None:
        J = radical(alg)
    z = alg.zero_degree()
    witnesses = []
    local_ok = True
    split = True
    ldims, rdims = [], []
    for i in range(alg.num_vertices):
        S = corner_algebra(alg, i)
        ok, rdim, qdim = local_data(S)
        ldims.append(S.n)
        rdims.append(rdim)
        if not ok:
            local_ok = False
            witnesses.append(f"e_{alg.vertices[i]}A_0e_{alg.vertices[i]} is not local")
        if qdim != 1:
            split = False
    off_ok = True
    diag_ok = True
    for key, idx in alg.pieces.items():
        i, j, h = key
        if len(J.piece_rows(key)) == len(idx):
            continue
        vi, vj = alg.vertices[i], alg.vertices[j]
        if i != j:
            off_ok = False
            witnesses.append(f"e_{vi}A_{list(h)}e_{vj} is not contained in the radical")
        elif h != z:
            diag_ok = False
            witnesses.append(f"e_{vi}A_{list(h)}e_{vi} is not contained in the radical")
    weakly = local_ok and off_ok
    return Classification(
        weakly_basic=weakly,
        basic=weakly and diag_ok,
        split=split and local_ok,
        connected=len(connected_components(alg)) <= 1,
        local_dims=ldims,
        local_radical_dims=rdims,
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# Gabriel quiver and relations
# ---------------------------------------------------------------------------

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


def gabriel_quiver(alg: GradedAlgebra, J: SubspaceFamily | None = None):
    """Arrows lifting a basis of ``J/J^2`` piece by piece; returns ``(quiver, lifts)``."""
    if J is None:
        J = radical(alg)
    J2 = J.product_with(J)
    f = alg.field
    specs, lifts = [], []
    used: set[str] = set()
    counter = 0
    for key in sorted(J.rows):
        i, j, h = key
        base = [list(r) for r in J2.piece_rows(key)]
        for r in J.piece_rows(key):
            if len(row_space_basis(f, base + [r], alg.piece_dim(key))) == len(base):
                continue
            base.append(r)
            vec = alg.from_piece_coords(key, r)
            name = None
            if len(vec) == 1 and next(iter(vec.values())) == 1:
                lab = alg.labels[next(iter(vec))]
                if _NAME.match(lab) and lab not in used:
                    name = lab
            while name is None or name in used:
                counter += 1
                name = f"x{counter}"
            used.add(name)
            specs.append((name, alg.vertices[i], alg.vertices[j], h))
            lifts.append(vec)
    q = GradedQuiver.build(list(alg.vertices), specs, grading_rank=alg.grading_rank)
    return q, lifts


def extract_presentation(alg: GradedAlgebra, J: SubspaceFamily | None = None) -> Presentation:
    """A quiver with homogeneous relations presenting a split basic algebra."""
    if J is None:
        J = radical(alg)
    c = classify(alg, J)
    if not (c.split and c.basic):
        raise NotSplitBasic("extraction needs a split basic algebra: " + "; ".join(c.witnesses or ["not split"]))
    f = alg.field
    q, lifts = gabriel_quiver(alg, J)
    N = J.nilpotency_index()
    # paths of length N already vanish, so they and shorter ones generate the kernel
    layers = q.enumerate_paths(max(N, 2))
    images: dict = {}
    for p in layers[0]:
        images[p] = alg.idempotent(p.source)
    for L in range(1, len(layers)):
        for p in layers[L]:
            prev = Path(p.source, q.arrows[p.arrows[-1]].source, p.arrows[:-1])
            images[p] = alg.mul(images[prev], lifts[p.arrows[-1]])
    groups: dict = {}
    for L in range(2, len(layers)):
        for p in layers[L]:
            groups.setdefault((p.source, p.target, q.path_degree(p)), []).append(p)
    relations = []
    for key in sorted(groups):
        paths = groups[key]
        dim = alg.piece_dim(key)
        if dim == 0:
            relations.extend(AlgElement.from_path(q, f, p) for p in paths)
            continue
        cols = [alg.to_piece_coords(key, images[p]) for p in paths]
        m = Matrix(f, [[cols[c][r] for c in range(len(paths))] for r in range(dim)], len(paths))
        for v in kernel_basis(m):
            relations.append(AlgElement(q, f, {paths[c]: v[c] for c in range(len(paths)) if v[c]}))
    # drop relations already implied by the earlier (smaller) ones
    relations.sort(key=lambda r: r.leading_path().sort_key())
    kept: list = []
    for r in relations:
        if kept and normal_form(complete(Presentation(q, f, kept)), r).is_zero():
            continue
        kept.append(r)
    return Presentation(q, f, kept)
