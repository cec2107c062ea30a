import itertools

import pytest
from hypothesis import given, settings, strategies as st

from gradedpf.errors import CapExceeded, InfiniteDimensional, InvalidRelation
from gradedpf.freealg import AlgElement
from gradedpf.presentation import Presentation, build_algebra, complete, normal_form
from gradedpf.quiver import GradedQuiver
from gradedpf.scalars import GF, QQ

LOOPS = GradedQuiver.build(["v"], [("x", "v", "v", (1,)), ("y", "v", "v", (1,))])


def monomial_count(words, alphabet, cap):
    """Count words over ``alphabet`` avoiding every word in ``words`` as a factor."""
    total, layer = 0, [()]
    for _ in range(cap + 1):
        total += len(layer)
        layer = [
            w + (a,)
            for w in layer
            for a in alphabet
            if not any((w + (a,))[-len(f):] == f for f in words if len(f) <= len(w) + 1)
        ]
        if not layer:
            return total
    return None


@given(st.lists(st.lists(st.sampled_from([0, 1]), min_size=2, max_size=3).map(tuple), min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_monomial_dimension_oracle(words):
    rels = [AlgElement.from_path(LOOPS, QQ, LOOPS.path(w)) for w in words]
    expected = monomial_count(set(words), (0, 1), 12)
    p = Presentation(LOOPS, QQ, rels)
    if expected is None:
        with pytest.raises(InfiniteDimensional):
            build_algebra(p, length_cap=12)
    else:
        assert build_algebra(p, length_cap=12).dim == expected


def _x(*word, field=QQ):
    return AlgElement.from_path(LOOPS, field, LOOPS.path(word))


def test_exterior_and_commutative_dimensions():
    ext = Presentation(LOOPS, QQ, [_x(0, 0), _x(1, 1), _x(0, 1) + _x(1, 0)])
    assert build_algebra(ext).dim == 4
    comm = Presentation(LOOPS, QQ, [_x(0, 1) - _x(1, 0), _x(0, 0, 0), _x(1, 1)])
    # k[x, y]/(x^3, y^2)
    assert build_algebra(comm).dim == 6


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_normal_form_is_well_defined(data):
    for field in (QQ, GF(3)):
        p = Presentation(LOOPS, field, [_x(0, 1, field=field) - _x(1, 0, field=field), _x(0, 0, field=field), _x(1, 1, 1, field=field)])
        g = complete(p)
        words = [w for L in range(5) for w in itertools.product((0, 1), repeat=L) if w]
        u = data.draw(st.sampled_from(words))
        v = data.draw(st.sampled_from(words))
        lhs = normal_form(g, _x(*u, field=field) * _x(*v, field=field))
        rhs = normal_form(g, normal_form(g, _x(*u, field=field)) * normal_form(g, _x(*v, field=field)))
        assert lhs == rhs
        # every generator of the ideal reduces to zero
        for r in p.relations:
            assert normal_form(g, r).is_zero()


def test_algebra_is_associative_and_graded():
    p = Presentation(LOOPS, QQ, [_x(0, 1) + _x(1, 0), _x(0, 0), _x(1, 1)])
    A = build_algebra(p)
    assert A.check_associative() is None
    assert A.check_grading() is None


def test_invalid_relations():
    q = GradedQuiver.build(["1", "2"], [("a", "1", "2", (1,)), ("b", "2", "1", (2,)), ("c", "1", "1", (1,))])
    a, b, c = (AlgElement.arrow(q, QQ, k) for k in range(3))
    with pytest.raises(InvalidRelation):
        Presentation(q, QQ, [a])
    with pytest.raises(InvalidRelation):
        Presentation(q, QQ, [a * b + c * c])
    with pytest.raises(InvalidRelation):
        Presentation(q, QQ, [a * b + b * a])
    split = Presentation.split(q, QQ, [a * b + b * a])
    assert len(split.relations) == 2


def test_caps():
    with pytest.raises(InfiniteDimensional):
        build_algebra(Presentation(LOOPS, QQ, [_x(0, 1)]), length_cap=10)
    with pytest.raises(CapExceeded):
        complete(Presentation(LOOPS, QQ, [_x(0, 0, 0, 0)]), length_cap=3)
