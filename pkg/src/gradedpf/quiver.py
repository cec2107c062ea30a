"""Finite quivers graded by Z^d, and their paths.

Paths compose left to right: ``p q`` is defined when ``target(p) == source(q)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

Degree = tuple  # tuple[int, ...] of fixed length d


def zero_degree(d: int) -> Degree:
    return (0,) * d


def add_degrees(a: Degree, b: Degree) -> Degree:
    return tuple(x + y for x, y in zip(a, b))


def sub_degrees(a: Degree, b: Degree) -> Degree:
    return tuple(x - y for x, y in zip(a, b))


def neg_degree(a: Degree) -> Degree:
    return tuple(-x for x in a)


class Arrow(NamedTuple):
    name: str
    source: int
    target: int
    degree: Degree


class Path(NamedTuple):
    """A path given by its endpoints (vertex indices) and its arrow indices.

    An empty arrow tuple is the stationary path at ``source``.  Comparison uses
    the global monomial order: length first, then the arrow-index word, then
    (for stationary paths) the vertex index.
    """

    source: int
    target: int
    arrows: tuple

    @property
    def length(self) -> int:
        return len(self.arrows)

    def sort_key(self):
        return (len(self.arrows), self.arrows, self.source)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __le__(self, other):
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other):
        return self.sort_key() > other.sort_key()

    def __ge__(self, other):
        return self.sort_key() >= other.sort_key()


def compose(p: Path, q: Path) -> Path | None:
    """Concatenation ``p q``, or None when ``target(p) != source(q)``."""
    if p.target != q.source:
        return None
    return Path(p.source, q.target, p.arrows + q.arrows)


@dataclass(frozen=True)
class GradedQuiver:
    vertices: tuple
    arrows: tuple
    grading_rank: int = 0

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow names")
        n = len(self.vertices)
        for a in self.arrows:
            if not (0 <= a.source < n and 0 <= a.target < n):
                raise ValueError(f"arrow {a.name} has an undeclared endpoint")
            if len(a.degree) != self.grading_rank:
                raise ValueError(
                    f"arrow {a.name} has degree of length {len(a.degree)}, expected {self.grading_rank}"
                )
        vidx = {v: i for i, v in enumerate(self.vertices)}
        aidx = {a.name: i for i, a in enumerate(self.arrows)}
        object.__setattr__(self, "_vidx", vidx)
        object.__setattr__(self, "_aidx", aidx)
        out = [[] for _ in range(n)]
        for k, a in enumerate(self.arrows):
            out[a.source].append(k)
        object.__setattr__(self, "_out", tuple(tuple(x) for x in out))

    @classmethod
    def build(
        cls,
        vertices: Sequence[str],
        arrows: Sequence[tuple],
        grading_rank: int | None = None,
    ) -> "GradedQuiver":
        """Build from vertex names and ``(name, source_name, target_name[, degree])`` tuples."""
        vidx = {v: i for i, v in enumerate(vertices)}
        if grading_rank is None:
            grading_rank = len(arrows[0][3]) if arrows and len(arrows[0]) > 3 else 0
        arr = []
        for spec in arrows:
            name, s, t = spec[:3]
            deg = tuple(spec[3]) if len(spec) > 3 else zero_degree(grading_rank)
            if s not in vidx or t not in vidx:
                raise ValueError(f"arrow {name} has an undeclared endpoint")
            arr.append(Arrow(name, vidx[s], vidx[t], deg))
        return cls(tuple(vertices), tuple(arr), grading_rank)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def vertex_index(self, name: str) -> int:
        return self._vidx[name]

    def arrow_index(self, name: str) -> int:
        return self._aidx[name]

    def outgoing(self, v: int) -> tuple:
        return self._out[v]

    def stationary(self, v: int) -> Path:
        return Path(v, v, ())

    def arrow_path(self, k: int) -> Path:
        a = self.arrows[k]
        return Path(a.source, a.target, (k,))

    def path(self, arrows: Sequence[int], start: int | None = None) -> Path:
        """Path from a word of arrow indices; ``start`` is needed only for the empty word."""
        arrows = tuple(arrows)
        if not arrows:
            if start is None:
                raise ValueError("an empty word needs a start vertex")
            return Path(start, start, ())
        for x, y in zip(arrows, arrows[1:]):
            if self.arrows[x].target != self.arrows[y].source:
                raise ValueError("arrows do not concatenate")
        if start is not None and self.arrows[arrows[0]].source != start:
            raise ValueError("word does not start at the given vertex")
        return Path(self.arrows[arrows[0]].source, self.arrows[arrows[-1]].target, arrows)

    def path_degree(self, p: Path) -> Degree:
        deg = [0] * self.grading_rank
        for k in p.arrows:
            for c, x in enumerate(self.arrows[k].degree):
                deg[c] += x
        return tuple(deg)

    def path_label(self, p: Path) -> str:
        if not p.arrows:
            return f"e_{self.vertices[p.source]}"
        return ".".join(self.arrows[k].name for k in p.arrows)

    def enumerate_paths(self, max_len: int) -> list[list[Path]]:
        """All paths of length <= max_len grouped by length, each group in path order."""
        if max_len < 0:
            raise ValueError("max_len must be non-negative")
        layers = [[self.stationary(v) for v in range(self.num_vertices)]]
        for _ in range(max_len):
            nxt = []
            for p in layers[-1]:
                for k in self.outgoing(p.target):
                    nxt.append(Path(p.source, self.arrows[k].target, p.arrows + (k,)))
            nxt.sort()
            layers.append(nxt)
        layers[0].sort()
        return layers

    def underlying_components(self) -> list[list[int]]:
        """Connected components of the underlying undirected graph."""
        parent = list(range(self.num_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.arrows:
            ra, rb = find(a.source), find(a.target)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        comps: dict[int, list[int]] = {}
        for v in range(self.num_vertices):
            comps.setdefault(find(v), []).append(v)
        return list(comps.values())


def path_degree(q: GradedQuiver, p: Path) -> Degree:
    return q.path_degree(p)


def enumerate_paths(q: GradedQuiver, max_len: int) -> list[list[Path]]:
    return q.enumerate_paths(max_len)
