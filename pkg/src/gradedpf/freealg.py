"""Elements of the path algebra KQ."""

from __future__ import annotations

from typing import Iterable, Mapping

from .quiver import Degree, GradedQuiver, Path, compose
from .scalars import Field


class _AnyDegree:
    """Marker returned by :func:`is_homogeneous` for the zero element."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ANY"


ANY = _AnyDegree()


class AlgElement:
    """A finite linear combination of paths; zero coefficients are never stored."""

    __slots__ = ("quiver", "field", "terms")

    def __init__(self, quiver: GradedQuiver, field: Field, terms: Mapping[Path, object] | Iterable = ()):
        self.quiver = quiver
        self.field = field
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Path, object] = {}
        for p, c in items:
            c = field(c)
            if not c:
                continue
            if p in acc:
                s = acc[p] + c
                if s:
                    acc[p] = s
                else:
                    del acc[p]
            else:
                acc[p] = c
        self.terms = acc

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, quiver, field) -> "AlgElement":
        return cls(quiver, field)

    @classmethod
    def from_path(cls, quiver, field, p: Path, coeff=1) -> "AlgElement":
        return cls(quiver, field, {p: coeff})

    @classmethod
    def vertex(cls, quiver, field, v: int) -> "AlgElement":
        return cls.from_path(quiver, field, quiver.stationary(v))

    @classmethod
    def arrow(cls, quiver, field, k: int) -> "AlgElement":
        return cls.from_path(quiver, field, quiver.arrow_path(k))

    def _new(self, terms) -> "AlgElement":
        out = AlgElement.__new__(AlgElement)
        out.quiver = self.quiver
        out.field = self.field
        out.terms = terms
        return out

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "AlgElement"):
        if other.quiver != self.quiver:
            raise ValueError("elements of different path algebras")

    def __add__(self, other):
        if not isinstance(other, AlgElement):
            return NotImplemented
        self._check(other)
        acc = dict(self.terms)
        for p, c in other.terms.items():
            s = acc.get(p, self.field.zero) + c
            if s:
                acc[p] = s
            else:
                acc.pop(p, None)
        return self._new(acc)

    def __neg__(self):
        return self._new({p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "AlgElement":
        c = self.field(c)
        if not c:
            return self._new({})
        return self._new({p: c * x for p, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.quiver == other.quiver and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # inspection ---------------------------------------------------------
    def support(self) -> list[Path]:
        return sorted(self.terms)

    def leading_path(self) -> Path:
        if not self.terms:
            raise ValueError("the zero element has no leading path")
        return max(self.terms)

    def leading_coefficient(self):
        return self.terms[self.leading_path()]

    def monic(self) -> "AlgElement":
        return self.scale(self.field.one / self.leading_coefficient())

    def coefficient(self, p: Path):
        return self.terms.get(p, self.field.zero)

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for p in sorted(self.terms, reverse=True):
            c = self.terms[p]
            lab = self.quiver.path_label(p)
            if c == 1:
                parts.append(f"+ {lab}")
            elif c == -1:
                parts.append(f"- {lab}")
            else:
                s = self.field.format(c)
                if s.startswith("-"):
                    parts.append(f"- {s[1:]}*{lab}")
                else:
                    parts.append(f"+ {s}*{lab}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"AlgElement({self.format()})"


def multiply(x: AlgElement, y: AlgElement) -> AlgElement:
    """Bilinear extension of path concatenation; non-composable pairs vanish."""
    x._check(y)
    acc: dict[Path, object] = {}
    by_source: dict[int, list] = {}
    for q, d in y.terms.items():
        by_source.setdefault(q.source, []).append((q, d))
    for p, c in x.terms.items():
        for q, d in by_source.get(p.target, ()):
            r = compose(p, q)
            s = acc.get(r)
            v = c * d if s is None else s + c * d
            if v:
                acc[r] = v
            else:
                acc.pop(r, None)
    return x._new(acc)


def homogeneous_components(x: AlgElement) -> dict[Degree, AlgElement]:
    comps: dict[Degree, dict] = {}
    for p, c in x.terms.items():
        comps.setdefault(x.quiver.path_degree(p), {})[p] = c
    return {h: x._new(t) for h, t in sorted(comps.items())}


def is_homogeneous(x: AlgElement):
    """The common degree of a degree- and endpoint-pure element.

    Returns ``None`` when the element is not pure and :data:`ANY` for zero.
    """
    if not x.terms:
        return ANY
    degs = {x.quiver.path_degree(p) for p in x.terms}
    ends = {(p.source, p.target) for p in x.terms}
    if len(degs) != 1 or len(ends) != 1:
        return None
    return degs.pop()


def endpoint_components(x: AlgElement) -> dict[tuple, AlgElement]:
    """Split ``x`` into its ``e_i x e_j`` parts."""
    comps: dict[tuple, dict] = {}
    for p, c in x.terms.items():
        comps.setdefault((p.source, p.target), {})[p] = c
    return {k: x._new(t) for k, t in sorted(comps.items())}
