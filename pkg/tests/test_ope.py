from hypothesis import given
from hypothesis import strategies as st

from sfcat.ope import (associativity_check, composite_check, gr_dictionary_check,
                       intertwiner_check, mu_hat_ope, named_values_check, omega_hat, product,
                       rescaling_isomorphism_check, unit_check)
from sfcat.scalar import Scalar, ZERO
from sfcat.suites import make_category

CAT1 = make_category(1)[0]
CAT2 = make_category(2)[0]


def elements(cat):
    U = cat.U
    return st.lists(st.integers(-3, 3), min_size=U.dim, max_size=U.dim).map(
        lambda cs: {w: Scalar(c) for w, c in zip(U.words, cs) if c})


def _add(x, y):
    out = dict(x)
    for k, v in y.items():
        out[k] = out.get(k, ZERO) + v
    return {k: v for k, v in out.items() if v}


@given(elements(CAT2), elements(CAT2), elements(CAT2))
def test_mu_hat_associative_on_random_elements(a, b, c):
    assert product(CAT2, product(CAT2, a, b), c) == product(CAT2, a, product(CAT2, b, c))


@given(elements(CAT1), elements(CAT1), elements(CAT1))
def test_mu_hat_bilinear(a, b, c):
    assert product(CAT1, _add(a, b), c) == _add(product(CAT1, a, c), product(CAT1, b, c))


@given(elements(CAT2))
def test_omega_hat_is_the_unit(a):
    Oh = omega_hat(CAT2)
    assert product(CAT2, Oh, a) == a
    assert product(CAT2, a, Oh) == a


def test_algebra_checks_both_ranks():
    for cat in (CAT1, CAT2):
        for rec in (unit_check(cat, False), unit_check(cat, True), associativity_check(cat),
                    intertwiner_check(cat), composite_check(cat),
                    rescaling_isomorphism_check(cat)):
            assert rec.verdict, rec.check


def test_named_values_and_ope_coefficients():
    assert named_values_check(CAT1).verdict
    ope = mu_hat_ope(CAT1)
    assert ope["omega"] == [ZERO, Scalar(-2)]
    assert ope["Omega_hat"] == [ZERO, ZERO, Scalar(-1)]


def test_gr_dictionary():
    assert gr_dictionary_check(CAT1).verdict
