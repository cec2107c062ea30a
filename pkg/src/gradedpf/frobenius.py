"""Pseudo-Frobenius detection, graded Nakayama forms and the Nakayama automorphism."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from typing import Callable, Mapping

from .algebra import GradedAlgebra, SubspaceFamily
from .errors import BadBasis, FormError, HypothesisFailed, InvariantViolation, NotSplit, NotWeaklyBasic
from .quiver import add_degrees, sub_degrees
from .scalars import Matrix, row_space_basis
from .structure import classify, corner_algebra, degree_zero_radical, radical, socle, socle_series, ungraded_radical

PF_STATEMENT = "pseudo-Frobenius (equivalently quasi-Frobenius in finite dimension)"


@dataclass
class PFReport:
    is_pf: bool
    nakayama: dict | None  # vertex index -> vertex index
    degree_map: dict | None  # vertex index -> default degree h_i
    socle_support: dict  # vertex index -> sorted list of (target vertex, degree)
    left_support: dict  # vertex index -> sorted list of (source vertex, degree)
    witnesses: list = dc_field(default_factory=list)
    statement: str = PF_STATEMENT
    right_socle: SubspaceFamily | None = None
    left_socle: SubspaceFamily | None = None

    def degree_support(self, i: int) -> list:
        return sorted({h for _, h in self.socle_support[i]})


def _cyclic(alg: GradedAlgebra, x: dict, key, side: str, target: int) -> bool:
    """Does the socle element ``x`` generate a ``target``-dimensional submodule over the corner of ``A_0``?"""
    i, j, _ = key
    f = alg.field
    corner = alg.piece(j, j, alg.zero_degree()) if side == "right" else alg.piece(i, i, alg.zero_degree())
    gens = []
    for b in corner:
        v = alg.mul(x, {b: f.one}) if side == "right" else alg.mul({b: f.one}, x)
        gens.append(alg.to_piece_coords(key, v))
    return len(row_space_basis(f, gens, alg.piece_dim(key))) == target


def _simple_quotient_dim(alg: GradedAlgebra, k: int) -> int:
    S = corner_algebra(alg, k)
    return S.n - len(ungraded_radical(S))


def _vertex_check(alg, soc: SubspaceFamily, series_top: SubspaceFamily, i: int, side: str):
    """Analyse the socle of ``e_iA`` (right) or ``Ae_i`` (left); return (partner, degree, witnesses)."""
    name = alg.vertices[i]
    proj = f"e_{name}A" if side == "right" else f"Ae_{name}"
    keys = [k for k in soc.rows if (k[0] if side == "right" else k[1]) == i]
    witnesses = []
    if not keys:
        return None, None, [f"socle of {proj} is zero"]
    partners = sorted({k[1] if side == "right" else k[0] for k in keys})
    if len(keys) > 1:
        detail = ", ".join(f"(e_{alg.vertices[k[0]]}, e_{alg.vertices[k[1]]}, deg {list(k[2])})" for k in keys)
        witnesses.append(f"socle of {proj} is not simple: it meets several pieces {detail}")
        return None, None, witnesses
    key = keys[0]
    partner = partners[0]
    d = len(soc.rows[key])
    expected = _simple_quotient_dim(alg, partner)
    if d != expected:
        witnesses.append(
            f"socle of {proj} is not simple: dimension {d} at vertex {alg.vertices[partner]}, "
            f"a simple module there has dimension {expected}"
        )
    for x in soc.piece_vectors(key):
        if not _cyclic(alg, x, key, side, d):
            witnesses.append(f"socle of {proj} is not cyclic: {alg.format_vector(x)} generates a proper submodule")
            break
    # essential: the socle series exhausts the projective
    for pk, idx in alg.pieces.items():
        if (pk[0] if side == "right" else pk[1]) == i and len(series_top.piece_rows(pk)) != len(idx):
            witnesses.append(f"socle of {proj} is not essential")
            break
    return partner, key[2], witnesses


def pf_check(alg: GradedAlgebra, J: SubspaceFamily | None = None) -> PFReport:
    """Decide the graded pseudo-Frobenius property of a weakly basic finite-dimensional algebra."""
    if J is None:
        J = radical(alg)
    c = classify(alg, J)
    if not c.weakly_basic:
        raise NotWeaklyBasic("not weakly basic: " + "; ".join(c.witnesses))
    rsoc = socle(alg, J, "right")
    lsoc = socle(alg, J, "left")
    rtop = socle_series(alg, J, "right")[-1]
    ltop = socle_series(alg, J, "left")[-1]
    nu, hmap, lnu = {}, {}, {}
    witnesses = []
    support, lsupport = {}, {}
    for i in range(alg.num_vertices):
        support[i] = sorted((k[1], k[2]) for k in rsoc.rows if k[0] == i)
        lsupport[i] = sorted((k[0], k[2]) for k in lsoc.rows if k[1] == i)
        partner, h, w = _vertex_check(alg, rsoc, rtop, i, "right")
        witnesses.extend(w)
        if partner is not None and not w:
            nu[i] = partner
            hmap[i] = h
        lpartner, _, lw = _vertex_check(alg, lsoc, ltop, i, "left")
        witnesses.extend(lw)
        if lpartner is not None and not lw:
            lnu[i] = lpartner
    ok = not witnesses
    if ok:
        if sorted(nu.values()) != list(range(alg.num_vertices)):
            ok = False
            witnesses.append("the socle vertices of the projectives e_iA do not form a permutation")
        elif any(lnu[nu[i]] != i for i in nu):
            ok = False
            bad = next(i for i in nu if lnu[nu[i]] != i)
            witnesses.append(
                f"left and right socle permutations are not inverse at vertex {alg.vertices[bad]}"
            )
    return PFReport(
        is_pf=ok,
        nakayama=dict(sorted(nu.items())) if ok else None,
        degree_map=dict(sorted(hmap.items())) if ok else None,
        socle_support=support,
        left_support=lsupport,
        witnesses=witnesses,
        right_socle=rsoc,
        left_socle=lsoc,
    )


# ---------------------------------------------------------------------------
# bilinear forms
# ---------------------------------------------------------------------------


class BilinearForm:
    """A form given by pairing matrices on ``e_iA_he_j x e_jA_{h_i-h}e_{nu(i)}``; zero elsewhere."""

    def __init__(self, algebra: GradedAlgebra, nakayama: Mapping, degrees: Mapping, blocks: Mapping):
        self.algebra = algebra
        self.nakayama = dict(sorted(nakayama.items()))
        self.degrees = {i: tuple(h) for i, h in sorted(degrees.items())}
        self.blocks = {k: blocks[k] for k in sorted(blocks)}
        self.outside_support: list = []

    @classmethod
    def from_function(cls, algebra: GradedAlgebra, nakayama: Mapping, degrees: Mapping, fn: Callable) -> "BilinearForm":
        """Tabulate ``fn`` on basis pairs; records pairs outside the prescribed blocks that are nonzero."""
        blocks = {}
        for key, idx in algebra.pieces.items():
            i, j, h = key
            partner = (j, nakayama[i], sub_degrees(degrees[i], h))
            pidx = algebra.pieces.get(partner, [])
            blocks[key] = Matrix(algebra.field, [[fn(k, l) for l in pidx] for k in idx], len(pidx))
        form = cls(algebra, nakayama, degrees, blocks)
        for k in range(algebra.dim):
            for l in range(algebra.dim):
                if not form._in_block(k, l) and fn(k, l):
                    form.outside_support.append((k, l))
        return form

    def partner(self, key):
        i, j, h = key
        return (j, self.nakayama[i], sub_degrees(self.degrees[i], h))

    def _in_block(self, k: int, l: int) -> bool:
        a = self.algebra
        key = a.piece_of[k]
        return a.piece_of[l] == self.partner(key)

    def value(self, k: int, l: int):
        a = self.algebra
        if not self._in_block(k, l):
            return a.field.zero
        return self.blocks[a.piece_of[k]][a.position[k], a.position[l]]

    def pair(self, x: Mapping, y: Mapping):
        f = self.algebra.field
        acc = f.zero
        for k, a in x.items():
            for l, b in y.items():
                v = self.value(k, l)
                if v:
                    acc = acc + a * b * v
        return acc

    def canonical(self) -> dict:
        a = self.algebra
        fmt = a.field.format
        return {
            "nakayama": {a.vertices[i]: a.vertices[j] for i, j in self.nakayama.items()},
            "degrees": {a.vertices[i]: list(h) for i, h in self.degrees.items()},
            "blocks": [
                {
                    "piece": [a.vertices[k[0]], a.vertices[k[1]], list(k[2])],
                    "partner": [a.vertices[p[0]], a.vertices[p[1]], list(p[2])],
                    "rows": m.rows,
                    "cols": m.cols,
                    "matrix": [[fmt(x) for x in r] for r in m.data],
                }
                for k, m in self.blocks.items()
                for p in [self.partner(k)]
            ],
        }

    def digest(self) -> str:
        text = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()


def check_form(form: BilinearForm) -> list[str]:
    """Violations of the graded Nakayama form axioms; empty when the form is valid."""
    a = form.algebra
    f = a.field
    out = []
    n = a.num_vertices
    if sorted(form.nakayama) != list(range(n)) or sorted(form.nakayama.values()) != list(range(n)):
        out.append("the vertex assignment is not a bijection")
        return out
    for k, l in form.outside_support[:1]:
        out.append(f"degree condition fails: ({a.labels[k]}, {a.labels[l]}) is nonzero outside the prescribed blocks")
    for key, m in form.blocks.items():
        pdim = a.piece_dim(form.partner(key))
        if m.rows != a.piece_dim(key) or m.cols != pdim or not m.is_invertible():
            i, j, h = key
            out.append(
                f"pairing e_{a.vertices[i]}A_{list(h)}e_{a.vertices[j]} x partner piece is degenerate"
            )
            break
    if set(form.blocks) != set(a.pieces):
        out.append("some graded piece has no pairing block")
    one = f.one
    for x in range(a.dim):
        for y in range(a.dim):
            if a.tgt[x] != a.src[y]:
                continue
            xy = a.product(x, y)
            for z in range(a.dim):
                if a.tgt[y] != a.src[z]:
                    continue
                if form.pair(xy, {z: one}) != form.pair({x: one}, a.product(y, z)):
                    out.append(f"associativity fails on ({a.labels[x]}, {a.labels[y]}, {a.labels[z]})")
                    return out
    return out


def verify_form(form: BilinearForm) -> None:
    problems = check_form(form)
    if problems:
        raise FormError("; ".join(problems))


# ---------------------------------------------------------------------------
# forms from socle-compatible bases
# ---------------------------------------------------------------------------


def default_degrees(report: PFReport) -> dict:
    return {i: report.degree_support(i)[0] for i in range(len(report.socle_support))}


def default_basis(alg: GradedAlgebra, report: PFReport, i: int, h) -> list:
    """Canonical basis of ``e_iA_he_{nu(i)}`` with the socle vector moved to the front."""
    key = (i, report.nakayama[i], tuple(h))
    f = alg.field
    d = alg.piece_dim(key)
    rows = report.right_socle.piece_rows(key)
    if len(rows) != 1:
        raise NotSplit(f"socle piece at vertex {alg.vertices[i]} does not have dimension 1")
    s = rows[0]
    pivot = next(p for p, x in enumerate(s) if x)
    rest = [[f.one if c == r else f.zero for c in range(d)] for r in range(d) if r != pivot]
    return [list(s)] + rest


def _socle_functional(alg, report, i, h, basis) -> list:
    """Coefficients ``phi`` with ``phi . z`` = the socle coordinate of ``z`` in ``basis``."""
    key = (i, report.nakayama[i], tuple(h))
    f = alg.field
    d = alg.piece_dim(key)
    if len(basis) != d or any(len(b) != d for b in basis):
        raise BadBasis(f"basis at vertex {alg.vertices[i]} has the wrong size")
    M = Matrix(f, [[basis[c][r] for c in range(d)] for r in range(d)], d)
    if not M.is_invertible():
        raise BadBasis(f"the vectors chosen at vertex {alg.vertices[i]} are not a basis")
    soc = report.right_socle
    in_soc = [c for c, b in enumerate(basis) if soc.contains(alg.from_piece_coords(key, b))]
    if len(in_soc) != 1:
        raise BadBasis(
            f"basis at vertex {alg.vertices[i]} contains {len(in_soc)} socle elements, exactly one is required"
        )
    inv = M.inverse()
    return inv.row(in_soc[0])


def nakayama_form_from_basis(
    alg: GradedAlgebra, report: PFReport, degrees: Mapping | None = None, bases: Mapping | None = None
) -> BilinearForm:
    """``(a, b)`` = coefficient of the socle basis vector ``w_i`` in ``ab`` expanded over ``B_i``."""
    if not report.is_pf:
        raise FormError("a Nakayama form needs a pseudo-Frobenius algebra")
    c = classify(alg)
    if not c.split:
        raise NotSplit("form construction needs a split algebra")
    degrees = dict(degrees or default_degrees(report))
    nu = report.nakayama
    phis = {}
    for i in range(alg.num_vertices):
        h = tuple(degrees[i])
        if h not in report.degree_support(i):
            raise BadBasis(f"degree {list(h)} is not in the socle support at vertex {alg.vertices[i]}")
        basis = (bases or {}).get(i) or default_basis(alg, report, i, h)
        phis[i] = (alg.piece(i, nu[i], h), _socle_functional(alg, report, i, h, basis))
    f = alg.field

    def fn(k, l):
        i = alg.src[k]
        idx, phi = phis[i]
        prod = alg.product(k, l)
        acc = f.zero
        for p, kk in enumerate(idx):
            v = prod.get(kk)
            if v:
                acc = acc + v * phi[p]
        return acc

    form = BilinearForm.from_function(alg, nu, degrees, fn)
    verify_form(form)
    return form


def basis_variants(alg: GradedAlgebra, report: PFReport, i: int, h) -> list[list]:
    """The default basis together with its single elimination and scaling variants that stay valid."""
    base = default_basis(alg, report, i, h)
    f = alg.field
    out = [base]
    d = len(base)
    for u in range(d):
        for v in range(d):
            if u != v:
                cand = [list(b) for b in base]
                cand[u] = [x + y for x, y in zip(cand[u], cand[v])]
                out.append(cand)
        for s in (2, -1):
            c = f(s)
            if c and c != 1:
                cand = [list(b) for b in base]
                cand[u] = [c * x for x in cand[u]]
                out.append(cand)
    valid = []
    for cand in out:
        try:
            _socle_functional(alg, report, i, h, cand)
        except BadBasis:
            continue
        if cand not in valid:
            valid.append(cand)
    return valid


# ---------------------------------------------------------------------------
# the Nakayama automorphism
# ---------------------------------------------------------------------------


class AlgebraAutomorphism:
    def __init__(self, algebra: GradedAlgebra, images: list, vertex_map: dict):
        self.algebra = algebra
        self.images = images
        self.vertex_map = vertex_map

    def apply(self, x: Mapping) -> dict:
        a = self.algebra
        acc: dict = {}
        for k, c in x.items():
            for m, v in self.images[k].items():
                s = acc.get(m, a.field.zero) + c * v
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        return acc

    def is_multiplicative(self) -> tuple | None:
        a = self.algebra
        for k in range(a.dim):
            for l in range(a.dim):
                if self.apply(a.product(k, l)) != a.mul(self.images[k], self.images[l]):
                    return (k, l)
        return None

    def matrix(self) -> Matrix:
        a = self.algebra
        return Matrix(a.field, [[self.images[c].get(r, a.field.zero) for c in range(a.dim)] for r in range(a.dim)], a.dim)

    def is_bijective(self) -> bool:
        return self.matrix().is_invertible()

    def preserves_degrees(self) -> bool:
        a = self.algebra
        return all(all(a.deg[m] == a.deg[k] for m in img) for k, img in enumerate(self.images))


def nakayama_automorphism(alg: GradedAlgebra, form: BilinearForm) -> AlgebraAutomorphism:
    """``eta`` with ``(x, -) = (-, eta(x))``, solved piece by piece."""
    f = alg.field
    nu = form.nakayama
    images = []
    for x in range(alg.dim):
        i, j, h = alg.piece_of[x]
        zs = [z for z in range(alg.dim) if alg.src[z] == j and alg.tgt[z] == nu[i]]
        ws = [w for w in range(alg.dim) if alg.src[w] == nu[i] and alg.tgt[w] == nu[j]]
        M = Matrix(f, [[form.value(z, w) for w in ws] for z in zs], len(ws))
        rhs = [form.value(x, z) for z in zs]
        if M.rows != M.cols or not M.is_invertible():
            raise InvariantViolation("the system defining the Nakayama automorphism is not uniquely solvable")
        sol = M.solve(rhs)
        img = {ws[c]: v for c, v in enumerate(sol) if v}
        want = add_degrees(sub_degrees(h, form.degrees[i]), form.degrees[j])
        if any(alg.deg[m] != want for m in img):
            raise InvariantViolation(f"image of {alg.labels[x]} is not homogeneous of the expected degree")
        images.append(img)
    eta = AlgebraAutomorphism(alg, images, dict(nu))
    for i in range(alg.num_vertices):
        if eta.apply(alg.idempotent(i)) != alg.idempotent(nu[i]):
            raise InvariantViolation(f"eta does not send e_{alg.vertices[i]} to e_{alg.vertices[nu[i]]}")
    bad = eta.is_multiplicative()
    if bad is not None:
        raise InvariantViolation(f"eta is not multiplicative on ({alg.labels[bad[0]]}, {alg.labels[bad[1]]})")
    if not eta.is_bijective():
        raise InvariantViolation("eta is not bijective")
    return eta


# ---------------------------------------------------------------------------
# constant degree maps for length-graded algebras
# ---------------------------------------------------------------------------


def _generated_in_degree_one(alg: GradedAlgebra):
    f = alg.field
    top = max((d[0] for d in alg.deg), default=0)
    ones = [k for k in range(alg.dim) if alg.deg[k] == (1,)]
    prev = ones
    for n in range(2, top + 1):
        prods = [alg.mul({a: f.one}, {b: f.one}) for a in prev for b in ones]
        fam = SubspaceFamily.from_vectors(alg, [p for p in prods if p])
        cur = [k for k in range(alg.dim) if alg.deg[k] == (n,)]
        got = sum(len(r) for key, r in fam.rows.items() if key[2] == (n,))
        if got != len(cur):
            return n
        prev = cur
    return None


def constant_degree_check(alg: GradedAlgebra, form: BilinearForm) -> int:
    """Verify the hypotheses for a constant degree map and return the constant."""
    from .structure import connected_components

    if alg.grading_rank != 1:
        raise HypothesisFailed("the grading group is Z", f"rank {alg.grading_rank}")
    neg = [k for k in range(alg.dim) if alg.deg[k][0] < 0]
    if neg:
        raise HypothesisFailed("positively graded", alg.labels[neg[0]])
    comps = connected_components(alg)
    if len(comps) > 1:
        names = [[alg.vertices[v] for v in c] for c in comps]
        raise HypothesisFailed("connected", f"components {names}")
    if not degree_zero_radical(alg).is_zero():
        raise HypothesisFailed("A_0 semisimple", "A_0 has a nonzero radical")
    miss = _generated_in_degree_one(alg)
    if miss is not None:
        raise HypothesisFailed("generated in degree 1", f"A_{miss} is not spanned by products of degree-1 elements")
    values = set(form.degrees.values())
    if len(values) != 1:
        raise InvariantViolation(f"degree map is not constant: {sorted(values)}")
    eta = nakayama_automorphism(alg, form)
    for k in range(alg.dim):
        if alg.deg[k] == (1,) and any(alg.deg[m] != (1,) for m in eta.images[k]):
            raise InvariantViolation(f"eta changes the degree of {alg.labels[k]}")
    return values.pop()[0]
