import itertools

import pytest

from gradedpf.covering import (
    OrbitAlgebra,
    SkewGroupAlgebra,
    automorphism,
    close_group,
    orbit_algebra,
    verify_covering,
)
from gradedpf.errors import IdealNotStable, NotFreeOnVertices, NotGraded, OrderCapExceeded
from gradedpf.freealg import AlgElement
from gradedpf.presentation import Presentation, build_algebra
from gradedpf.quiver import GradedQuiver
from gradedpf.scalars import QQ

from helpers import cyclic, group, rotation


def test_group_table_is_a_group():
    A, G = group("cyclic6_z3")
    assert G.order == 3
    for a, b, c in itertools.product(range(3), repeat=3):
        assert G.mult[G.mult[a][b]][c] == G.mult[a][G.mult[b][c]]
    assert all(G.mult[g][G.inverse[g]] == 0 for g in range(3))
    assert G.orbits() == [[0, 2, 4], [1, 3, 5]]


def test_action_is_a_left_action():
    A, G = group("cyclic6_z3")
    for g, h in itertools.product(range(G.order), repeat=2):
        for k in range(A.dim):
            assert G.act(g, G.act_basis(h, k)) == G.act_basis(G.mult[g][h], k)


def test_skew_product_formula_by_hand():
    A, G = group("double_arrow_z2")
    S = SkewGroupAlgebra(A, G)
    a, b = A.labels.index("a"), A.labels.index("b")
    e1, e2 = A.labels.index("e_1"), A.labels.index("e_2")
    # (e_1 * s)(e_1 * 1) = e_1 s(e_1) * s = e_1 e_2 * s = 0
    assert S.product(S.index_of(e1, 1), S.index_of(e1, 0)) == {}
    # (e_1 * s)(e_2 * s) = e_1 e_1 * 1
    assert S.product(S.index_of(e1, 1), S.index_of(e2, 1)) == {S.index_of(e1, 0): 1}
    # (e_1 * s)(b * 1) = e_1 a * s
    assert S.product(S.index_of(e1, 1), S.index_of(b, 0)) == {S.index_of(a, 1): 1}
    assert S.check_associative() is None


def test_invalid_actions():
    A = cyclic(4, 2)
    q = A.quiver
    with pytest.raises(NotGraded):
        # reversing the cycle does not send arrows to arrows between image vertices
        close_group(A, [automorphism(q, QQ, {"0": "0", "1": "3", "2": "2", "3": "1"}, {})])
    assert close_group(A, [rotation(A, 4, 2)]).order == 2
    with pytest.raises(OrderCapExceeded):
        close_group(cyclic(7, 2), [rotation(cyclic(7, 2), 7, 1)], order_cap=3)


def test_fixed_vertex_rejected():
    q = GradedQuiver.build(["1", "2", "3"], [("a", "1", "2", (1,)), ("b", "1", "3", (1,))])
    A = build_algebra(Presentation(q, QQ, []))
    with pytest.raises(NotFreeOnVertices):
        close_group(A, [automorphism(q, QQ, {"2": "3", "3": "2"}, {"a": "b", "b": "a"})])


def test_unstable_ideal_rejected():
    q = GradedQuiver.build(
        ["1", "2", "3", "4"],
        [("a", "1", "2", (1,)), ("b", "2", "3", (1,)), ("c", "3", "4", (1,)), ("d", "4", "1", (1,))],
    )
    a, b, c, d = (AlgElement.arrow(q, QQ, k) for k in range(4))
    A = build_algebra(Presentation(q, QQ, [a * b, c * d, b * c * d * a, d * a * b * c]))
    # rotating by one sends a.b to b.c, which is not a relation
    g = automorphism(q, QQ, {"1": "2", "2": "3", "3": "4", "4": "1"}, {"a": "b", "b": "c", "c": "d", "d": "a"})
    with pytest.raises(IdealNotStable):
        close_group(A, [g])


def test_scalar_twisted_action():
    q = GradedQuiver.build(["1", "2"], [("a", "1", "2", (1,)), ("b", "2", "1", (1,))])
    a, b = (AlgElement.arrow(q, QQ, k) for k in range(2))
    A = build_algebra(Presentation(q, QQ, [a * b, b * a]))
    g = automorphism(q, QQ, {"1": "2", "2": "1"}, {"a": (QQ(-1), "b"), "b": (QQ(-1), "a")})
    G = close_group(A, [g])
    assert G.order == 2
    lam = orbit_algebra(A, G)
    assert verify_covering(A, G, lam)[0]
    assert lam.check_associative() is None


def test_orbit_algebra_dimensions():
    A, G = group("cyclic6_z3")
    lam = orbit_algebra(A, G)
    assert isinstance(lam, OrbitAlgebra)
    assert list(lam.vertices) == ["[0]", "[1]"]
    assert lam.dim * G.order == A.dim
