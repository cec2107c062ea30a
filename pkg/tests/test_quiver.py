import pytest
from hypothesis import given, strategies as st

from gradedpf.quiver import GradedQuiver, compose, path_degree

Q = GradedQuiver.build(
    ["1", "2", "3"],
    [("a", "1", "2", (1, 0)), ("b", "2", "3", (0, 1)), ("c", "3", "1", (-1, 2)), ("d", "2", "2", (1, 1))],
)


def test_validation():
    with pytest.raises(ValueError):
        GradedQuiver.build(["1"], [("a", "1", "2", (1,))])
    with pytest.raises(ValueError):
        Q.path([0, 0])


def test_labels_and_degrees():
    p = Q.path([0, 3, 1])
    assert Q.path_label(p) == "a.d.b"
    assert path_degree(Q, p) == (2, 2)
    assert Q.path_label(Q.stationary(1)) == "e_2"


def test_enumeration_counts():
    layers = Q.enumerate_paths(3)
    # adjacency matrix powers as the oracle
    adj = [[0, 1, 0], [0, 1, 1], [1, 0, 0]]

    def mat_mul(x, y):
        return [[sum(x[i][k] * y[k][j] for k in range(3)) for j in range(3)] for i in range(3)]

    power = [[int(i == j) for j in range(3)] for i in range(3)]
    for L in range(4):
        assert len(layers[L]) == sum(map(sum, power))
        power = mat_mul(power, adj)


@given(st.data())
def test_composition_associative_and_degree_additive(data):
    paths = [p for layer in Q.enumerate_paths(3) for p in layer]
    p, q, r = (data.draw(st.sampled_from(paths)) for _ in range(3))
    pq, qr = compose(p, q), compose(q, r)
    if pq is not None and qr is not None:
        assert compose(pq, r) == compose(p, qr)
    if pq is not None:
        assert path_degree(Q, pq) == tuple(x + y for x, y in zip(path_degree(Q, p), path_degree(Q, q)))
    else:
        assert p.target != q.source


def test_path_order_is_length_first():
    a, ad = Q.path([0]), Q.path([0, 3])
    assert a < ad
    assert Q.stationary(0) < a
