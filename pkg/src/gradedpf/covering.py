"""Finite group actions: skew group algebras, orbit algebras and transfer of Nakayama forms."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .algebra import GradedAlgebra, QuotientAlgebra, Sparse, SubspaceFamily
from .errors import (
    FormError,
    IdealNotStable,
    InvariantViolation,
    NotFreeOnVertices,
    NotGraded,
    NotPF,
    NotSplit,
    OrderCapExceeded,
)
from .freealg import AlgElement
from .frobenius import (
    BilinearForm,
    PFReport,
    check_form,
    default_basis,
    default_degrees,
    nakayama_automorphism,
    nakayama_form_from_basis,
    pf_check,
    verify_form,
)
from .presentation import AlgebraHandle
from .quiver import GradedQuiver, Path
from .scalars import rank_of
from .structure import classify, radical, radical_by_criterion

DEFAULT_ORDER_CAP = 1024


@dataclass(frozen=True)
class QuiverAutomorphism:
    """``e_v -> e_{vertex_map[v]}`` and ``a -> scalars[a] * arrow_map[a]``."""

    vertex_map: tuple
    arrow_map: tuple
    scalars: tuple

    def compose(self, other: "QuiverAutomorphism") -> "QuiverAutomorphism":
        """``self o other``: apply ``other`` first."""
        return QuiverAutomorphism(
            tuple(self.vertex_map[v] for v in other.vertex_map),
            tuple(self.arrow_map[a] for a in other.arrow_map),
            tuple(other.scalars[a] * self.scalars[other.arrow_map[a]] for a in range(len(other.arrow_map))),
        )

    def is_identity(self) -> bool:
        return (
            all(v == i for i, v in enumerate(self.vertex_map))
            and all(a == i for i, a in enumerate(self.arrow_map))
            and all(c == 1 for c in self.scalars)
        )

    def apply_path(self, p: Path):
        """``(scalar, path)`` image of a path."""
        if not p.arrows:
            v = self.vertex_map[p.source]
            return 1, Path(v, v, ())
        c = 1
        for a in p.arrows:
            c = c * self.scalars[a]
        arrows = tuple(self.arrow_map[a] for a in p.arrows)
        return c, Path(self.vertex_map[p.source], self.vertex_map[p.target], arrows)

    def apply(self, x: AlgElement) -> AlgElement:
        terms = []
        for p, c in x.terms.items():
            s, q = self.apply_path(p)
            terms.append((q, c * s))
        return AlgElement(x.quiver, x.field, terms)


def automorphism(quiver: GradedQuiver, field, vertex_map: dict | None = None, arrow_map: dict | None = None):
    """Build from name maps; ``arrow_map`` values are ``(coeff, arrow name)`` or names."""
    vm = {v: v for v in quiver.vertices}
    vm.update(vertex_map or {})
    am = {a.name: (1, a.name) for a in quiver.arrows}
    for k, v in (arrow_map or {}).items():
        am[k] = v if isinstance(v, tuple) else (1, v)
    for v in vm.values():
        if v not in quiver.vertices:
            raise NotGraded(f"vertex image {v} is not a vertex")
    for c, b in am.values():
        if b not in [a.name for a in quiver.arrows]:
            raise NotGraded(f"arrow image {b} is not an arrow")
    return QuiverAutomorphism(
        tuple(quiver.vertex_index(vm[v]) for v in quiver.vertices),
        tuple(quiver.arrow_index(am[a.name][1]) for a in quiver.arrows),
        tuple(field(am[a.name][0]) for a in quiver.arrows),
    )


def _check_graded(quiver: GradedQuiver, g: QuiverAutomorphism) -> None:
    n = quiver.num_vertices
    if sorted(g.vertex_map) != list(range(n)):
        raise NotGraded("the vertex map is not a permutation")
    if sorted(g.arrow_map) != list(range(len(quiver.arrows))):
        raise NotGraded("the arrow map is not a permutation")
    for k, a in enumerate(quiver.arrows):
        b = quiver.arrows[g.arrow_map[k]]
        if not g.scalars[k]:
            raise NotGraded(f"arrow {a.name} is sent to zero")
        if b.source != g.vertex_map[a.source] or b.target != g.vertex_map[a.target]:
            raise NotGraded(f"arrow {a.name} is sent to {b.name}, which has incompatible endpoints")
        if b.degree != a.degree:
            raise NotGraded(f"arrow {a.name} is sent to {b.name} of a different degree")


class GroupAction:
    """A finite group of monomial automorphisms acting on a presented algebra."""

    def __init__(self, algebra: AlgebraHandle, elements: list[QuiverAutomorphism]):
        self.algebra = algebra
        self.elements = elements
        self.index = {g: n for n, g in enumerate(elements)}
        self.order = len(elements)
        self.mult = [[self.index[g.compose(h)] for h in elements] for g in elements]
        self.inverse = [row.index(0) for row in self.mult]
        a = algebra
        self._act = []
        for g in elements:
            imgs = []
            for p in a.paths:
                c, q = g.apply_path(p)
                imgs.append(a.from_element(AlgElement.from_path(a.quiver, a.field, q, c)))
            self._act.append(imgs)

    @property
    def identity(self) -> int:
        return 0

    def vertex(self, g: int, v: int) -> int:
        return self.elements[g].vertex_map[v]

    def act_basis(self, g: int, k: int) -> Sparse:
        return self._act[g][k]

    def act(self, g: int, x: dict) -> Sparse:
        acc: dict = {}
        f = self.algebra.field
        for k, c in x.items():
            for m, v in self._act[g][k].items():
                s = acc.get(m, f.zero) + c * v
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        return acc

    def orbits(self) -> list[list[int]]:
        seen, out = set(), []
        for v in range(self.algebra.num_vertices):
            if v in seen:
                continue
            orb = sorted({self.vertex(g, v) for g in range(self.order)})
            seen.update(orb)
            out.append(orb)
        return out

    def carrier(self, src: int, dst: int) -> int:
        """The unique group element sending vertex ``src`` to ``dst``."""
        for g in range(self.order):
            if self.vertex(g, src) == dst:
                return g
        raise ValueError("vertices lie in different orbits")


def close_group(
    algebra: AlgebraHandle, generators: Sequence[QuiverAutomorphism], order_cap: int = DEFAULT_ORDER_CAP
) -> GroupAction:
    q = algebra.quiver
    n = q.num_vertices
    ident = QuiverAutomorphism(tuple(range(n)), tuple(range(len(q.arrows))), tuple(algebra.field.one for _ in q.arrows))
    for g in generators:
        _check_graded(q, g)
    elements = [ident]
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = g.compose(x)
            if y not in seen:
                seen.add(y)
                elements.append(y)
                queue.append(y)
                if len(elements) > order_cap:
                    raise OrderCapExceeded(f"group order exceeds the cap {order_cap}")
    relations = algebra.presentation.relations
    for g in elements[1:]:
        fixed = [q.vertices[v] for v in range(n) if g.vertex_map[v] == v]
        if fixed:
            raise NotFreeOnVertices(f"a non-identity group element fixes vertex {fixed[0]}")
    for g in elements:
        for r in relations:
            if not algebra.normal_form(g.apply(r)).is_zero():
                raise IdealNotStable(f"the image of relation {r.format()} is not in the ideal")
    return GroupAction(algebra, elements)


# ---------------------------------------------------------------------------
# skew group algebra
# ---------------------------------------------------------------------------


class SkewGroupAlgebra(GradedAlgebra):
    """Basis ``b_k * g`` with ``(a*g)(b*g') = a g(b) * gg'``."""

    def __init__(self, base: AlgebraHandle, group: GroupAction):
        self.base = base
        self.group = group
        self.field = base.field
        self.vertices = base.vertices
        self.grading_rank = base.grading_rank
        G = group.order
        self.src, self.tgt, self.deg, self.labels = [], [], [], []
        for k in range(base.dim):
            for g in range(G):
                self.src.append(base.src[k])
                self.tgt.append(group.vertex(group.inverse[g], base.tgt[k]))
                self.deg.append(base.deg[k])
                self.labels.append(f"{base.labels[k]}*g{g}")
        self._index_pieces()

    def index_of(self, k: int, g: int) -> int:
        return k * self.group.order + g

    def _compute_product(self, x: int, y: int) -> Sparse:
        G = self.group.order
        k, g = divmod(x, G)
        l, h = divmod(y, G)
        prod = self.base.mul({k: self.field.one}, self.group.act_basis(g, l))
        gh = self.group.mult[g][h]
        return {self.index_of(m, gh): c for m, c in prod.items()}

    def idempotent(self, i: int) -> Sparse:
        return {self.index_of(m, 0): c for m, c in self.base.idempotent(i).items()}

    def tensor_family(self, fam: SubspaceFamily) -> SubspaceFamily:
        """``F * G`` for a subspace family ``F`` of the base."""
        vecs = []
        for v in fam.vectors():
            for g in range(self.group.order):
                vecs.append({self.index_of(m, g): c for m, c in v.items()})
        return SubspaceFamily.from_vectors(self, vecs)


def skew_group_algebra(a: AlgebraHandle, g: GroupAction) -> SkewGroupAlgebra:
    return SkewGroupAlgebra(a, g)


# ---------------------------------------------------------------------------
# orbit algebra
# ---------------------------------------------------------------------------


class OrbitAlgebra(GradedAlgebra):
    """``A/G``: basis ``[b]`` for base basis elements ``b`` starting at an orbit representative."""

    def __init__(self, base: AlgebraHandle, group: GroupAction, drop_piece=None):
        self.base = base
        self.group = group
        self.field = base.field
        self.grading_rank = base.grading_rank
        orbits = group.orbits()
        names = base.vertices
        reps = [min(orb, key=lambda v: names[v]) for orb in orbits]
        order = sorted(range(len(orbits)), key=lambda o: names[reps[o]])
        self.orbits = [orbits[o] for o in order]
        self.reps = [reps[o] for o in order]
        self.orbit_of = {}
        for n, orb in enumerate(self.orbits):
            for v in orb:
                self.orbit_of[v] = n
        self.vertices = tuple(f"[{names[r]}]" for r in self.reps)
        self.src, self.tgt, self.deg, self.labels = [], [], [], []
        self.lift_index: list[int] = []
        self._index: dict[int, int] = {}
        repset = set(self.reps)
        for k in range(base.dim):
            if base.src[k] not in repset:
                continue
            key = (self.orbit_of[base.src[k]], self.orbit_of[base.tgt[k]], base.deg[k])
            if drop_piece is not None and key == drop_piece:
                continue
            self._index[k] = len(self.src)
            self.lift_index.append(k)
            self.src.append(key[0])
            self.tgt.append(key[1])
            self.deg.append(key[2])
            self.labels.append(f"[{base.labels[k]}]")
        self._index_pieces()

    def _from_base(self, x: dict) -> Sparse:
        """Coordinates of a base vector supported at representatives."""
        return {self._index[m]: c for m, c in x.items() if m in self._index}

    def _compute_product(self, k: int, l: int) -> Sparse:
        a, b = self.lift_index[k], self.lift_index[l]
        g = self.group.carrier(self.base.src[b], self.base.tgt[a])
        return self._from_base(self.base.mul({a: self.field.one}, self.group.act_basis(g, b)))

    def idempotent(self, i: int) -> Sparse:
        return self._from_base(self.base.idempotent(self.reps[i]))

    def project(self, x: dict) -> Sparse:
        """The canonical projection ``pi : A -> A/G``."""
        acc: dict = {}
        f = self.field
        for m, c in x.items():
            s = self.base.src[m]
            g = self.group.carrier(self.reps[self.orbit_of[s]], s)
            for n, v in self._from_base(self.group.act_basis(self.group.inverse[g], m)).items():
                t = acc.get(n, f.zero) + c * v
                if t:
                    acc[n] = t
                else:
                    acc.pop(n, None)
        return acc


def orbit_algebra(a: AlgebraHandle, g: GroupAction) -> OrbitAlgebra:
    lam = OrbitAlgebra(a, g)
    bad = lam.check_associative()
    if bad is not None:
        raise InvariantViolation("orbit algebra multiplication is not associative")
    return lam


def corrupted_orbit_algebra(a: AlgebraHandle, g: GroupAction) -> OrbitAlgebra:
    """Negative control: the orbit algebra with its last nonzero positive-degree piece removed."""
    lam = OrbitAlgebra(a, g)
    z = lam.zero_degree()
    victims = [k for k in lam.pieces if k[2] != z] or list(lam.pieces)
    return OrbitAlgebra(a, g, drop_piece=victims[-1])


# ---------------------------------------------------------------------------
# covering functor
# ---------------------------------------------------------------------------


def verify_covering(a: AlgebraHandle, g: GroupAction, lam: OrbitAlgebra):
    """``(True, None)`` when both fibre-sum maps are bijective everywhere, else ``(False, witness)``."""
    f = a.field
    degrees = sorted(set(a.degrees()) | set(lam.degrees()))
    for i in range(a.num_vertices):
        oi = lam.orbit_of[i]
        for oj, orb in enumerate(lam.orbits):
            for h in degrees:
                for side in ("right", "left"):
                    if side == "right":
                        dom = [k for j in orb for k in a.piece(i, j, h)]
                        key = (oi, oj, h)
                    else:
                        dom = [k for j in orb for k in a.piece(j, i, h)]
                        key = (oj, oi, h)
                    cod = lam.piece_dim(key)
                    images = [lam.to_piece_coords(key, lam.project({k: f.one})) for k in dom]
                    r = rank_of(f, images, cod) if dom else 0
                    if not (len(dom) == cod == r):
                        witness = {
                            "vertex": a.vertices[i],
                            "orbit": lam.vertices[oj],
                            "degree": list(h),
                            "side": side,
                            "domain_dim": len(dom),
                            "codomain_dim": cod,
                            "rank": r,
                        }
                        return False, witness
    return True, None


# ---------------------------------------------------------------------------
# forms
# ---------------------------------------------------------------------------


def g_invariant_form(a: AlgebraHandle, g: GroupAction, report: PFReport | None = None) -> BilinearForm:
    """Nakayama form built from bases transported along orbits."""
    report = report or pf_check(a)
    if not report.is_pf:
        raise NotPF("the algebra is not pseudo-Frobenius")
    if not classify(a).split:
        raise NotSplit("the algebra is not split")
    nu = report.nakayama
    base_deg = default_degrees(report)
    degrees, bases = {}, {}
    for orb in g.orbits():
        rep = min(orb, key=lambda v: a.vertices[v])
        h = base_deg[rep]
        basis = default_basis(a, report, rep, h)
        key = (rep, nu[rep], h)
        for el in range(g.order):
            v = g.vertex(el, rep)
            target = (v, nu[v], h)
            if target != (v, g.vertex(el, nu[rep]), h):
                raise InvariantViolation("the Nakayama permutation does not commute with the action")
            moved = []
            for vec in basis:
                img = g.act(el, a.from_piece_coords(key, vec))
                moved.append(a.to_piece_coords(target, img))
            degrees[v] = h
            bases[v] = moved
    form = nakayama_form_from_basis(a, report, degrees, bases)
    for el in range(g.order):
        for k in range(a.dim):
            gk = g.act_basis(el, k)
            for l in range(a.dim):
                if form.pair(gk, g.act_basis(el, l)) != form.value(k, l):
                    raise InvariantViolation(
                        f"form is not invariant on ({a.labels[k]}, {a.labels[l]}) under g{el}"
                    )
    return form


def pushdown_form(form: BilinearForm, lam: OrbitAlgebra) -> BilinearForm:
    """``<[a], [b]> = (a, g(b))`` with ``g(source b) = target a``."""
    a, grp = lam.base, lam.group
    nu_bar = {}
    h_bar = {}
    for n, rep in enumerate(lam.reps):
        nu_bar[n] = lam.orbit_of[form.nakayama[rep]]
        h_bar[n] = form.degrees[rep]
    one = a.field.one

    def fn(k, l):
        x, y = lam.lift_index[k], lam.lift_index[l]
        if lam.orbit_of[a.tgt[x]] != lam.orbit_of[a.src[y]]:
            return a.field.zero
        el = grp.carrier(a.src[y], a.tgt[x])
        return form.pair({x: one}, grp.act_basis(el, y))

    out = BilinearForm.from_function(lam, nu_bar, h_bar, fn)
    verify_form(out)
    return out


def lift_form(form_lam: BilinearForm, lam: OrbitAlgebra) -> BilinearForm:
    """Pull a Nakayama form on ``A/G`` back to ``A`` through the projection."""
    a = lam.base
    f = a.field
    one = f.one
    proj = [lam.project({k: one}) for k in range(a.dim)]

    def fn(k, l):
        if a.tgt[k] != a.src[l]:
            return f.zero
        return form_lam.pair(proj[k], proj[l])

    mu, mu_prime = {}, {}
    for k in range(a.dim):
        for l in range(a.dim):
            if fn(k, l):
                i, t = a.src[k], a.tgt[l]
                if mu.setdefault(i, t) != t:
                    raise FormError(f"lifted form pairs e_{a.vertices[i]}A with two different vertices")
                if mu_prime.setdefault(t, i) != i:
                    raise FormError(f"lifted form pairs Ae_{a.vertices[t]} with two different vertices")
    n = a.num_vertices
    if sorted(mu) != list(range(n)) or sorted(mu.values()) != list(range(n)) or any(mu_prime.get(mu[i]) != i for i in mu):
        raise FormError("the lifted vertex maps are not mutually inverse bijections")
    degrees = {i: form_lam.degrees[lam.orbit_of[i]] for i in range(n)}
    out = BilinearForm.from_function(a, mu, degrees, fn)
    verify_form(out)
    return out


# ---------------------------------------------------------------------------
# end-to-end transfer
# ---------------------------------------------------------------------------


def verify_transfer(a: AlgebraHandle, g: GroupAction) -> dict:
    """Run every check relating ``A``, ``A * G`` and ``A/G``; returns a report dictionary."""
    f = a.field
    lam = orbit_algebra(a, g)
    skew = SkewGroupAlgebra(a, g)
    J = radical(a)
    rad_skew = radical_by_criterion(skew)
    report = {
        "group_order": g.order,
        "dim_A": a.dim,
        "dim_skew": skew.dim,
        "dim_orbit": lam.dim,
        "skew_dimension_ok": skew.dim == a.dim * g.order,
        "skew_radical_dim": rad_skew.total_dim,
        "skew_radical_is_J_tensor_G": rad_skew == skew.tensor_family(J),
        "skew_quotient_radical_free": radical_by_criterion(QuotientAlgebra(skew, rad_skew), certify=False).is_zero(),
    }
    cov, witness = verify_covering(a, g, lam)
    report["covering"] = cov
    report["covering_witness"] = witness
    pa = pf_check(a, J)
    pl = pf_check(lam)
    report["A_is_pf"] = pa.is_pf
    report["orbit_is_pf"] = pl.is_pf
    report["pf_agree"] = pa.is_pf == pl.is_pf
    if pa.is_pf and pl.is_pf:
        form = g_invariant_form(a, g, pa)
        report["invariant_form"] = True
        report["nu_commutes"] = all(
            form.nakayama[g.vertex(el, v)] == g.vertex(el, form.nakayama[v])
            for el in range(g.order)
            for v in range(a.num_vertices)
        )
        down = pushdown_form(form, lam)
        report["pushdown_ok"] = not check_form(down)
        report["pushdown_nu_ok"] = all(
            down.nakayama[n] == lam.orbit_of[form.nakayama[rep]] for n, rep in enumerate(lam.reps)
        )
        up = lift_form(down, lam)
        report["lift_ok"] = not check_form(up)
        report["lift_nu"] = dict(up.nakayama)
        eta = nakayama_automorphism(a, form)
        eta_bar = nakayama_automorphism(lam, down)
        one = f.one
        report["eta_commutes_with_group"] = all(
            eta.apply(g.act_basis(el, k)) == g.act(el, eta.images[k])
            for el in range(g.order)
            for k in range(a.dim)
        )
        arrows = [k for k, p in enumerate(a.paths) if p.length == 1]
        report["eta_bar_matches"] = all(
            eta_bar.apply(lam.project({k: one})) == lam.project(eta.images[k]) for k in arrows
        )
    return report
