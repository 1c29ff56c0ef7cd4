import itertools

from hypothesis import given
from hypothesis import strategies as st

from sfcat.liealg import LieData, UEnv
from sfcat.scalar import ONE, ZERO, Scalar

U1 = UEnv(LieData.symplectic(1))
U2 = UEnv(LieData.symplectic(2))


def elements(U):
    return st.lists(st.integers(-3, 3), min_size=U.dim, max_size=U.dim).map(
        lambda cs: {w: Scalar(c) for w, c in zip(U.words, cs) if c})


def _mul_through(U, pairs):
    out = {}
    for (a, b), c in pairs.items():
        for w, v in U.product({a: ONE}, {b: ONE}).items():
            out[w] = out.get(w, ZERO) + c * v
    return {w: v for w, v in out.items() if v}


@given(elements(U2), elements(U2), elements(U2))
def test_product_is_associative(x, y, z):
    assert U2.product(U2.product(x, y), z) == U2.product(x, U2.product(y, z))


@given(elements(U1))
def test_antipode_axiom(x):
    # m (S (x) id) Delta = eta eps
    pairs = {}
    for (a, b), c in U1.coproduct(x).items():
        for w, v in U1.antipode({a: ONE}).items():
            pairs[(w, b)] = pairs.get((w, b), ZERO) + c * v
    lhs = _mul_through(U1, pairs)
    eps = U1.counit(x)
    assert lhs == ({(): eps} if eps else {})


def test_generators_anticommute_and_square_to_zero():
    for k, l in itertools.product(range(4), repeat=2):
        a, b = U2.generator(k), U2.generator(l)
        s = U2.add(U2.product(a, b), U2.product(b, a))
        assert s == {}


def test_integral_is_two_sided():
    lam = U1.integral()
    for w in U1.words:
        x = {w: ONE}
        eps = U1.counit(x)
        want = {k: eps * v for k, v in lam.items()} if eps else {}
        assert U1.product(x, lam) == want
        assert U1.product(lam, x) == want


def test_symplectic_superdimension():
    for n in (1, 2, 3):
        assert LieData.symplectic(n).sdim == -2 * n
    assert LieData.free_boson().sdim == 1
