import pytest
from hypothesis import given
from hypothesis import strategies as st

from sfcat.scalar import ONE, Scalar
from sfcat.superlinear import (LinMap, NotNilpotent, SuperSpace, exp_nilpotent, supertrace,
                               tau, tensor_map, tensor_space)

V = SuperSpace.standard(2, 1, "v")
W = SuperSpace.standard(1, 2, "w")


def even_maps(space):
    n = space.dim
    return st.lists(st.integers(-3, 3), min_size=n * n, max_size=n * n).map(
        lambda xs: LinMap(space, space, {
            j: {i: Scalar(xs[i * n + j]) for i in range(n)
                if xs[i * n + j] and space.parities[i] == space.parities[j]}
            for j in range(n)}))


@given(even_maps(V), even_maps(V))
def test_supertrace_is_cyclic(f, g):
    assert supertrace(f @ g) == supertrace(g @ f)


@given(even_maps(V), even_maps(W), even_maps(V), even_maps(W))
def test_tensor_of_even_maps_is_functorial(f, g, f2, g2):
    assert tensor_map(f @ f2, g @ g2) == tensor_map(f, g) @ tensor_map(f2, g2)


@given(even_maps(V), even_maps(W))
def test_flip_is_natural(f, g):
    assert tau(V, W) @ tensor_map(f, g) == tensor_map(g, f) @ tau(V, W)


def test_flip_squares_to_identity_and_signs_odd_pairs():
    t = tau(V, W) @ tau(W, V)
    assert t == LinMap.identity(tensor_space(W, V))
    # odd (x) odd picks up a sign
    sw = tau(V, W)
    j = 2 * W.dim + 1          # v_2 (odd) (x) w_1 (odd)
    i = 1 * V.dim + 2
    assert sw.entry(i, j) == -ONE


def test_supertrace_of_identity_is_sdim():
    assert supertrace(LinMap.identity(V)) == Scalar(V.sdim)


def test_exp_of_non_nilpotent_raises():
    with pytest.raises(NotNilpotent):
        exp_nilpotent(LinMap.identity(V))


def test_exp_nilpotent_truncates():
    n = LinMap(V, V, {1: {0: ONE}})
    e = exp_nilpotent(n)
    assert e == LinMap.identity(V) + n
