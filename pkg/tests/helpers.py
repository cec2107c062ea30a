"""Shared builders for the test suite."""

from __future__ import annotations

from functools import lru_cache

from gradedpf.cli import build, corpus_dir, parse
from gradedpf.covering import automorphism, close_group
from gradedpf.freealg import AlgElement
from gradedpf.presentation import Presentation, build_algebra
from gradedpf.quiver import GradedQuiver
from gradedpf.scalars import QQ

CORPUS = sorted(p.stem for p in corpus_dir().glob("*.alg"))
GROUP_CORPUS = ["double_arrow_z2", "cyclic6_z3", "doubled_kronecker_z2"]


def corpus_text(name: str) -> str:
    return (corpus_dir() / f"{name}.alg").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load(name: str, field: str | None = None):
    return build(parse(corpus_text(name)), field)


def algebra(name: str, field: str | None = None):
    return load(name, field).algebra


def group(name: str):
    b = load(name)
    return b.algebra, close_group(b.algebra, b.generators)


def cyclic(n: int, m: int, field=QQ):
    """Cyclic quiver on ``n`` vertices modulo all paths of length ``m``."""
    q = GradedQuiver.build(
        [str(i) for i in range(n)], [(f"a{i}", str(i), str((i + 1) % n), (1,)) for i in range(n)]
    )
    rels = [AlgElement.from_path(q, field, p) for p in q.enumerate_paths(m)[m]]
    return build_algebra(Presentation(q, field, rels))


def rotation(alg, n: int, shift: int):
    q = alg.quiver
    return automorphism(
        q,
        alg.field,
        {str(i): str((i + shift) % n) for i in range(n)},
        {f"a{i}": f"a{(i + shift) % n}" for i in range(n)},
    )
