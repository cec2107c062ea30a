from hypothesis import given, settings, strategies as st

from gradedpf.freealg import ANY, AlgElement, endpoint_components, homogeneous_components, is_homogeneous
from gradedpf.quiver import GradedQuiver
from gradedpf.scalars import GF, QQ

Q = GradedQuiver.build(["1", "2"], [("a", "1", "2", (1,)), ("b", "2", "1", (1,)), ("c", "1", "1", (2,))])
PATHS = [p for layer in Q.enumerate_paths(3) for p in layer]

elements = st.lists(
    st.tuples(st.sampled_from(PATHS), st.integers(min_value=-3, max_value=3)), max_size=5
).map(lambda ts: AlgElement(Q, QQ, ts))


@given(elements, elements, elements)
@settings(max_examples=80)
def test_ring_laws(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) - y == x
    assert not (x - x)


def test_no_zero_terms_and_format():
    a = AlgElement.arrow(Q, QQ, 0)
    x = a + a.scale(-1)
    assert x.is_zero() and x.terms == {}
    assert (a.scale(2) - AlgElement.arrow(Q, QQ, 2)).format() in ("2*a - c", "-c + 2*a")


def test_homogeneity_and_components():
    a, b, c = (AlgElement.arrow(Q, QQ, k) for k in range(3))
    assert is_homogeneous(a * b + c) == (2,)
    assert is_homogeneous(a * b + a) is None
    assert is_homogeneous(AlgElement.zero(Q, QQ)) is ANY
    comps = homogeneous_components(a * b + a)
    assert set(comps) == {(1,), (2,)}
    ends = endpoint_components(a * b + b * a)
    assert set(ends) == {(0, 0), (1, 1)}


def test_characteristic_two_cancellation():
    a = AlgElement.arrow(Q, GF(2), 0)
    assert (a + a).is_zero()
