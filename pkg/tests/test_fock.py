import itertools
from fractions import Fraction

import pytest

from sfcat.fock import (ground_L0, induce, induce_tw, mode_algebra_residuals,
                        virasoro_residuals, vertex_op, vo_derivative_residual,
                        vo_mode_exchange_residual, vo_parity_residual)
from sfcat.liealg import LieData
from sfcat.superlinear import LinMap


def brute_grade_dims(n_gen, M, twisted):
    """(even, odd) counts of sets of distinct fermionic modes by total weight.

    Independent of the library: every mode is odd, so parity is the set size mod 2."""
    weights = [Fraction(2 * n - 1, 2) if twisted else Fraction(n)
               for n in range(1, M + 2) for _ in range(n_gen)]
    weights = [w for w in weights if w <= M]
    counts = {}
    for r in range(len(weights) + 1):
        for combo in itertools.combinations(range(len(weights)), r):
            w = sum((weights[i] for i in combo), Fraction(0))
            if w <= M:
                ev, od = counts.get(w, (0, 0))
                counts[w] = (ev, od + 1) if r % 2 else (ev + 1, od)
    return counts


@pytest.mark.parametrize("N,M", [(1, 5), (2, 3)])
def test_vacuum_grade_dims_match_mode_counting(N, M):
    lie = LieData.symplectic(N)
    from sfcat.suites import make_category
    cat = make_category(N)[0]
    dims = induce(cat.unit(), M, lie).grade_dims()
    want = brute_grade_dims(2 * N, M, False)
    assert {Fraction(k): tuple(v) for k, v in dims.items()} == want


def test_single_pair_low_grades(cat1):
    dims = induce(cat1.unit(), 3, cat1.lie).grade_dims()
    assert [sum(dims[k]) for k in sorted(dims)][:3] == [1, 2, 3]


def test_twisted_grade_dims(cat1):
    dims = induce_tw(cat1.T(), 3, cat1.lie).grade_dims()
    want = brute_grade_dims(2, 3, True)
    assert {Fraction(k): tuple(v) for k, v in dims.items()} == want


def test_mode_and_virasoro_relations_exact(cat1, zoo1):
    for X in (zoo1["U"], cat1.T()):
        mod = induce(X, 4, cat1.lie) if X.sector == 0 else induce_tw(X, 4, cat1.lie)
        assert all(r[-1] for r in mode_algebra_residuals(mod, 2))
        assert all(r[-1] for r in virasoro_residuals(mod, 2))
        assert mod.central_charge() == -2


def test_twisted_ground_weights(cat1):
    L0 = ground_L0(induce_tw(cat1.T(), 0, cat1.lie))
    assert L0 == LinMap.identity(L0.src).scale(Fraction(-1, 8))
    from sfcat.superlinear import SuperSpace
    bl = LieData.free_boson()
    L0 = ground_L0(induce_tw(SuperSpace(["t"], [0]), 0, bl))
    assert L0 == LinMap.identity(L0.src).scale(Fraction(1, 16))


def test_ground_L0_on_U_is_nilpotent_and_nonzero(zoo1, cat1):
    L0 = ground_L0(induce(zoo1["U"], 0, cat1.lie))
    assert not L0.is_zero()
    assert L0.power(2).is_zero()


def test_vertex_operator_axioms_small_cutoff(cat1, zoo1):
    U = zoo1["U"]
    UU = cat1.star_obj(U, U)
    src, tgt = induce(U, 6, cat1.lie, True), induce(UU, 6, cat1.lie, True)
    V = vertex_op(U, src, tgt, LinMap.identity(UU.space))
    for a in range(4):
        vec = {(a, (), 0): 1.0 + 0j}
        assert vo_parity_residual(V, 0.4, vec) == 0
        assert vo_derivative_residual(V, 0.4, vec) < 1e-6
        assert max(vo_mode_exchange_residual(V, 0.4, l, k2, vec)
                   for l in range(2) for k2 in (-2, 0, 2)) < 1e-10
