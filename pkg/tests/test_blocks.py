import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import ellipe, ellipk

from sfcat.blocks import (PATTERNS, braid_continuation_check, channel_asymptotics_check,
                          elliptic_E, elliptic_K, free_boson_row111_ratio, k_asymptotics,
                          legendre_residual, nome, nome_series, row111_span_residual)
from sfcat.report import TRUNCATION
from sfcat.suites import (K_COEFF2, STATED_K_BOUND, compose_records, free_boson_records,
                          ground_form_records, make_category)


@given(st.floats(0.0, 0.999))
def test_elliptic_integrals_match_scipy(x):
    assert elliptic_K(x) == pytest.approx(ellipk(x), rel=1e-12)
    assert elliptic_E(x) == pytest.approx(ellipe(x), rel=1e-12)


@given(st.floats(1e-4, 1 - 1e-4))
def test_legendre_relation(x):
    assert legendre_residual(x) <= 1e-10


@pytest.mark.parametrize("x", [0.01, 0.02])
def test_K_small_x_expansion(x):
    a = k_asymptotics(x)
    # the remainder is O(x^2) with coefficient 9 pi / 128
    assert a["K_over_x2"] == pytest.approx(K_COEFF2, abs=0.5 * x)
    assert abs(a["K1m_over"]) < 1.0


@pytest.mark.xfail(strict=True, reason="the quoted 0.05 x^2 bound is below the true x^2 "
                                       "coefficient 9 pi/128 = 0.22")
@pytest.mark.parametrize("x", [0.01, 0.02])
def test_K_small_x_quoted_bound(x):
    assert abs(elliptic_K(x) - math.pi / 2 * (1 + x / 4)) <= STATED_K_BOUND * x * x


@pytest.mark.parametrize("x", [0.01, 0.02])
def test_nome_expansion(x):
    r = x / 16
    assert abs(nome(x) - nome_series(x, 2)) == pytest.approx(84 * r ** 3, rel=0.05)


def test_row111_span(cat1):
    assert row111_span_residual(cat1) <= 1e-8


def test_free_boson_row111_ratio_is_constant():
    vals = free_boson_row111_ratio(1.3)
    assert max(vals) - min(vals) <= 1e-9 * abs(vals[0])


def test_ground_state_forms(cat1):
    assert all(r.verdict for r in ground_form_records(cat1))


@pytest.mark.parametrize("pattern", PATTERNS)
def test_channel_asymptotics_single_pair(cat1, zoo1, pattern):
    pick = {"0": zoo1["U"], "1": cat1.T()}
    A, B, C = (pick[c] for c in pattern)
    rep = channel_asymptotics_check(cat1, pattern, A, B, C, mutations=True)
    assert rep.verdict
    assert rep.mutation_detected


def test_channel_111_two_pairs(cat2):
    T = cat2.T()
    rep = channel_asymptotics_check(cat2, "111", T, T, T, mutations=True)
    assert rep.verdict and rep.mutation_detected


def test_braid_continuation(cat1, zoo1):
    for a in ("U", "xi110", "T", "PiT"):
        for b in ("U", "eta11", "T"):
            A, B = zoo1[a], zoo1[b]
            C = cat1.star_obj(A, B)
            from sfcat.superlinear import LinMap
            assert braid_continuation_check(cat1, A, B, LinMap.identity(C.space), C)


def test_composition_matches_closed_form(cat1):
    recs = compose_records(cat1, (0.25, 0.3), 12, 1e-6)
    assert all(r.verdict for r in recs)
    assert all(r.detail["shrink"] >= 4 for r in recs)


def test_tight_tolerance_is_a_truncation_not_a_failure(cat1):
    recs = compose_records(cat1, (0.25,), 6, 1e-14)
    assert recs and all(r.status == TRUNCATION for r in recs)


def test_free_boson_coulomb_gas():
    recs = free_boson_records((0.25,), 12, 1e-6)
    assert all(r.verdict for r in recs)
