import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sfcat import _pykernels
from sfcat.scalar import ONE, Cyclotomic, LogPoly, NotAUnit, Scalar, exp_i_pi

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
cyclo = st.builds(Cyclotomic, small, small, small, small)
scalars = st.dictionaries(st.integers(-2, 2), st.tuples(small, small, small, small),
                          max_size=3).map(Scalar)


@given(cyclo, cyclo, cyclo)
def test_cyclotomic_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(cyclo)
def test_cyclotomic_inverse(a):
    if not a.coords or not any(a.coords):
        return
    assert a * a.inverse() == Cyclotomic(1)


@given(cyclo, cyclo)
def test_cyclotomic_matches_complex(a, b):
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-9


@given(scalars, scalars, scalars)
def test_scalar_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Scalar(0)


@given(scalars)
def test_scalar_text_and_json_roundtrip(a):
    assert Scalar.from_text(a.to_text()) == a
    assert Scalar.from_json(a.to_json()) == a


@given(scalars, scalars)
def test_scalar_numeric_evaluation(a, b):
    lhs = (a * b).eval_complex()
    assert abs(lhs - a.eval_complex() * b.eval_complex()) <= 1e-8 * max(1.0, abs(lhs))


def test_roots_of_unity():
    z = exp_i_pi(Fraction(1, 4))
    assert z ** 8 == ONE
    assert z ** 4 == -ONE
    assert abs(z.eval_complex() - cmath.exp(1j * cmath.pi / 4)) < 1e-15
    assert exp_i_pi(Fraction(1, 2)) == Scalar.i()


def test_pi_is_a_unit_but_sums_are_not():
    p = Scalar.pi()
    assert p * Scalar.pi(-1) == ONE
    with pytest.raises(NotAUnit):
        (p + ONE).try_invert()


@given(st.lists(st.tuples(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9),
                          st.integers(-9, 9), st.integers(1, 9)), min_size=2, max_size=2))
def test_cython_kernels_agree_with_python(pair):
    ck = pytest.importorskip("sfcat._ckernels")
    a, b = (_pykernels.cyc_norm(*t) for t in pair)
    if a is None or b is None:
        return
    assert ck.cyc_mul(a, b) == _pykernels.cyc_mul(a, b)
    assert ck.cyc_add(a, b) == _pykernels.cyc_add(a, b)
    x, y = {0: a, 1: b}, {-1: b, 0: a}
    assert ck.laurent_mul(x, y) == _pykernels.laurent_mul(x, y)
    assert ck.laurent_add(x, y) == _pykernels.laurent_add(x, y)


def test_logpoly_substitution():
    L, T = LogPoly.symbol("L"), LogPoly.symbol("T")
    p = L * L - L * Scalar(2)
    q = p.substitute("L", L + T)
    assert q == (L + T) * (L + T) - (L + T) * Scalar(2)
    assert q.degree("T") == 2
    assert abs(q.eval_complex({"L": 0.3, "T": 0.2}) - (0.25 - 1.0)) < 1e-12


def test_pure_python_fallback_runs_the_axioms():
    import os
    import subprocess
    import sys
    code = ("import sfcat; from sfcat.suites import make_category, pentagon_records;"
            "cat, zoo = make_category(1);"
            "assert sfcat.BACKEND == 'python';"
            "assert all(r.verdict for r in pentagon_records(cat, zoo, ('1111', '0101')))")
    env = dict(os.environ, SFCAT_PURE_PYTHON="1")
    subprocess.run([sys.executable, "-c", code], env=env, check=True, timeout=300)
