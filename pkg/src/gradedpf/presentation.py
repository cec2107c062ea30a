"""Quotients ``KQ/<rho>`` by homogeneous relations.

The two-sided ideal is completed to a reduced Gröbner basis under the
(length, lex) path order by resolving overlap ambiguities.  The normal
monomials (paths containing no leading word) then form the basis of the
quotient, and multiplication is concatenation followed by reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import GradedAlgebra, Sparse
from .errors import CapExceeded, InfiniteDimensional, InvalidRelation
from .freealg import ANY, AlgElement, endpoint_components, is_homogeneous
from .quiver import GradedQuiver, Path
from .scalars import Field

DEFAULT_LENGTH_CAP = 64


@dataclass
class Presentation:
    quiver: GradedQuiver
    field: Field
    relations: list = dc_field(default_factory=list)

    def __post_init__(self):
        self.relations = [r for r in self.relations if not r.is_zero()]
        for n, r in enumerate(self.relations):
            if r.quiver != self.quiver:
                raise InvalidRelation(f"relation {n} lives on another quiver")
            h = is_homogeneous(r)
            if h is None:
                ends = {(p.source, p.target) for p in r.terms}
                if len(ends) > 1:
                    raise InvalidRelation(f"relation {n} is not endpoint-pure: {r.format()}")
                raise InvalidRelation(f"relation {n} is not homogeneous: {r.format()}")
            short = [p for p in r.terms if p.length < 2]
            if short:
                raise InvalidRelation(
                    f"relation {n} has a term of length < 2: {self.quiver.path_label(short[0])}"
                )

    @classmethod
    def split(cls, quiver: GradedQuiver, field: Field, relations: Sequence[AlgElement]) -> "Presentation":
        """Replace every relation by its endpoint components before validating."""
        rels = []
        for r in relations:
            rels.extend(endpoint_components(r).values())
        return cls(quiver, field, rels)


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------


class GroebnerBasis:
    """A reduced, monic generating set whose leading words are pairwise non-dividing."""

    def __init__(self, quiver: GradedQuiver, field: Field, elements: Sequence[AlgElement]):
        self.quiver = quiver
        self.field = field
        self.elements = sorted(elements, key=lambda g: g.leading_path().sort_key())
        self._index()

    def _index(self):
        self.leads = {g.leading_path().arrows: g for g in self.elements}
        self.lengths = sorted({len(w) for w in self.leads})

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def find_divisor(self, word: tuple):
        """``(start, element)`` for the first leading word occurring in ``word``."""
        n = len(word)
        for s in range(n):
            for L in self.lengths:
                if s + L > n:
                    break
                g = self.leads.get(word[s : s + L])
                if g is not None:
                    return s, g
        return None

    def is_normal(self, p: Path) -> bool:
        return self.find_divisor(p.arrows) is None

    def leading_words(self) -> list[tuple]:
        return sorted(self.leads, key=lambda w: (len(w), w))


def _reduce(basis_leads: dict, lengths: list, quiver: GradedQuiver, field: Field, x: AlgElement) -> AlgElement:
    terms = dict(x.terms)
    while True:
        hit = None
        for p in sorted(terms, reverse=True):
            w = p.arrows
            n = len(w)
            for s in range(n):
                for L in lengths:
                    if s + L > n:
                        break
                    g = basis_leads.get(w[s : s + L])
                    if g is not None:
                        hit = (p, s, L, g)
                        break
                if hit:
                    break
            if hit:
                break
        if hit is None:
            return AlgElement(quiver, field, terms)
        p, s, L, g = hit
        c = terms[p]
        u, v = p.arrows[:s], p.arrows[s + L :]
        for q, d in g.terms.items():
            word = u + q.arrows + v
            if word:
                r = Path(quiver.arrows[word[0]].source, quiver.arrows[word[-1]].target, word)
            else:  # pragma: no cover - leads have length >= 2
                r = q
            val = terms.get(r, field.zero) - c * d
            if val:
                terms[r] = val
            else:
                terms.pop(r, None)


def normal_form(g: GroebnerBasis, x: AlgElement) -> AlgElement:
    """The reduced representative of ``x`` modulo the ideal generated by ``g``."""
    return _reduce(g.leads, g.lengths, g.quiver, g.field, x)


def _interreduce(quiver, field, elems: list[AlgElement]) -> list[AlgElement]:
    elems = [e.monic() for e in elems if not e.is_zero()]
    while True:
        changed = False
        for idx, g in enumerate(elems):
            others = elems[:idx] + elems[idx + 1 :]
            leads = {o.leading_path().arrows: o for o in others}
            lengths = sorted({len(w) for w in leads})
            r = _reduce(leads, lengths, quiver, field, g)
            if r != g:
                if r.is_zero():
                    elems = others
                else:
                    elems = others + [r.monic()]
                changed = True
                break
        if not changed:
            return sorted(elems, key=lambda e: e.leading_path().sort_key())


def _shift(quiver: GradedQuiver, g: AlgElement, left: tuple, right: tuple) -> AlgElement:
    """``u g v`` for arrow words ``u``, ``v`` (assumed composable)."""
    terms = {}
    for q, c in g.terms.items():
        word = left + q.arrows + right
        terms[Path(quiver.arrows[word[0]].source, quiver.arrows[word[-1]].target, word)] = c
    return AlgElement(quiver, g.field, terms)


def _overlaps(g1: AlgElement, g2: AlgElement):
    """Yield ``(v, u)`` with ``lead(g1) v == u lead(g2)`` as a proper overlap."""
    w1 = g1.leading_path().arrows
    w2 = g2.leading_path().arrows
    for k in range(1, min(len(w1), len(w2))):
        if w1[len(w1) - k :] == w2[:k]:
            yield w2[k:], w1[: len(w1) - k]


def complete(p: Presentation, length_cap: int = DEFAULT_LENGTH_CAP) -> GroebnerBasis:
    """Gröbner completion of the ideal generated by the relations of ``p``."""
    if length_cap < 2:
        raise ValueError("length_cap must be at least 2")
    q, f = p.quiver, p.field
    for r in p.relations:
        if r.leading_path().length > length_cap:
            raise CapExceeded(f"relation longer than length cap {length_cap}")
    elems = _interreduce(q, f, list(p.relations))
    while True:
        leads = {e.leading_path().arrows: e for e in elems}
        lengths = sorted({len(w) for w in leads})
        new = None
        for g1 in elems:
            for g2 in elems:
                for v, u in _overlaps(g1, g2):
                    s = _shift(q, g1, (), v) - _shift(q, g2, u, ())
                    r = _reduce(leads, lengths, q, f, s)
                    if not r.is_zero():
                        new = r
                        break
                if new is not None:
                    break
            if new is not None:
                break
        if new is None:
            return GroebnerBasis(q, f, elems)
        if new.leading_path().length > length_cap:
            raise CapExceeded(
                f"completion produced an element of length {new.leading_path().length} > cap {length_cap}"
            )
        elems = _interreduce(q, f, elems + [new])


# ---------------------------------------------------------------------------
# the quotient algebra
# ---------------------------------------------------------------------------


class AlgebraHandle(GradedAlgebra):
    """``KQ/<rho>`` with the normal monomials as basis, ordered by the path order."""

    def __init__(self, presentation: Presentation, groebner: GroebnerBasis, paths: list[Path]):
        self.presentation = presentation
        self.groebner = groebner
        self.quiver = presentation.quiver
        self.field = presentation.field
        self.vertices = self.quiver.vertices
        self.grading_rank = self.quiver.grading_rank
        self.paths = sorted(paths)
        self.index = {p: k for k, p in enumerate(self.paths)}
        self.src = [p.source for p in self.paths]
        self.tgt = [p.target for p in self.paths]
        self.deg = [self.quiver.path_degree(p) for p in self.paths]
        self.labels = [self.quiver.path_label(p) for p in self.paths]
        self._index_pieces()

    def _compute_product(self, k: int, l: int) -> Sparse:
        p, q = self.paths[k], self.paths[l]
        word = p.arrows + q.arrows
        if not word:
            return {k: self.field.one}
        r = Path(p.source, q.target, word)
        return self.from_element(AlgElement.from_path(self.quiver, self.field, r))

    def idempotent(self, i: int) -> Sparse:
        return {self.index[self.quiver.stationary(i)]: self.field.one}

    def arrow_vector(self, k: int) -> Sparse:
        return self.from_element(AlgElement.arrow(self.quiver, self.field, k))

    def from_element(self, x: AlgElement) -> Sparse:
        nf = normal_form(self.groebner, x)
        return {self.index[p]: c for p, c in nf.terms.items()}

    def to_element(self, x: Sparse) -> AlgElement:
        return AlgElement(self.quiver, self.field, {self.paths[k]: c for k, c in x.items()})

    def normal_form(self, x: AlgElement) -> AlgElement:
        return normal_form(self.groebner, x)

    @property
    def max_length(self) -> int:
        return max(p.length for p in self.paths) if self.paths else 0


def build_algebra(p: Presentation, length_cap: int = DEFAULT_LENGTH_CAP) -> AlgebraHandle:
    gb = complete(p, length_cap)
    q = p.quiver
    layer = [q.stationary(v) for v in range(q.num_vertices)]
    basis = list(layer)
    length = 0
    while layer:
        if length >= length_cap:
            raise InfiniteDimensional(
                f"normal monomials of length {length + 1} exist beyond the length cap {length_cap}"
            )
        nxt = []
        for path in layer:
            for k in q.outgoing(path.target):
                word = path.arrows + (k,)
                # The prefix is normal, so only suffixes can contain a leading word.
                if any(word[len(word) - L :] in gb.leads for L in gb.lengths if L <= len(word)):
                    continue
                nxt.append(Path(path.source, q.arrows[k].target, word))
        layer = nxt
        basis.extend(layer)
        length += 1
    return AlgebraHandle(p, gb, basis)


def graded_piece(a: AlgebraHandle, i: int, j: int, h) -> list[Path]:
    return [a.paths[k] for k in a.piece(i, j, tuple(h))]
