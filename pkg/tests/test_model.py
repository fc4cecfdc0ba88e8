"""Weights, anisotropy, phase classification, and the weight charts."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from mpmath import mp

import sixvertex as sv
from sixvertex.errors import ParameterDomainError

from conftest import CTX256, rel_to


def test_delta_equal_weights_is_half():
    assert sv.delta(sv.Weights(1, 1, 1)) == Fraction(1, 2)


def test_delta_free_fermion_zero():
    with CTX256.guardprec():
        w = sv.Weights(mp.mpf(1), mp.mpf(1), mp.sqrt(2))
    d = sv.delta(w, CTX256)
    assert abs(d) < mp.mpf("1e-70")


def test_delta_ferro_parameterization_gives_cosh2():
    # weights (sinh 1, sinh 3, sinh 2) sit at delta = cosh 2
    with CTX256.guardprec():
        w = sv.Weights(mp.sinh(1), mp.sinh(3), mp.sinh(2))
        ref = mp.cosh(2)
    assert rel_to(sv.delta(w, CTX256), ref) < mp.mpf("1e-70")
    assert rel_to(sv.delta(w, CTX256), mp.mpf("3.7621956910836")) < mp.mpf("1e-12")


@pytest.mark.parametrize(
    "a,b,c,phase",
    [
        (1, 1, 1, sv.Phase.DISORDERED),
        (1, Fraction(5, 2), 1, sv.Phase.FERROELECTRIC),
        (Fraction(3, 10), Fraction(3, 10), 1, sv.Phase.ANTIFERROELECTRIC),
    ],
)
def test_classify_phase_examples(a, b, c, phase):
    assert sv.classify_phase(sv.Weights(a, b, c)) is phase


def test_classify_critical_exact_rational():
    # a + b = c exactly: delta = -1
    res = sv.classify(sv.Weights(Fraction(1, 3), Fraction(2, 3), 1))
    assert res.phase is sv.Phase.CRITICAL_AFD
    assert res.delta == -1
    assert not res.borderline
    # b - a = c exactly: delta = +1
    res = sv.classify(sv.Weights(Fraction(1, 2), Fraction(3, 2), 1))
    assert res.phase is sv.Phase.CRITICAL_FD
    assert res.delta == 1


def test_classify_borderline_flag_on_floats():
    with CTX256.guardprec():
        eps = mp.mpf(2) ** (-200)  # inside the 2^(-128) tolerance band
        w = sv.Weights(mp.mpf(1) / 2 + eps, mp.mpf(3) / 2, mp.mpf(1))
    res = sv.classify(w, CTX256)
    assert res.phase is sv.Phase.CRITICAL_FD
    assert res.borderline


def test_weights_from_params_disordered_pi3():
    with CTX256.guardprec():
        p = sv.PhaseParams(sv.Phase.DISORDERED, t=mp.mpf(0), gamma=mp.pi / 3)
        ref = mp.sqrt(3) / 2
    w = sv.weights_from_params(p, CTX256)
    for x in (w.a, w.b, w.c):
        assert rel_to(x, ref) < mp.mpf("1e-70")


def test_weights_from_params_ferro():
    with CTX256.guardprec():
        p = sv.PhaseParams(sv.Phase.FERROELECTRIC, t=mp.mpf(2), gamma=mp.mpf(1))
    w = sv.weights_from_params(p, CTX256)
    with CTX256.guardprec():
        assert rel_to(w.a, mp.sinh(1)) < mp.mpf("1e-70")
        assert rel_to(w.b, mp.sinh(3)) < mp.mpf("1e-70")
        assert rel_to(w.c, mp.sinh(2)) < mp.mpf("1e-70")


def test_weights_from_params_af():
    with CTX256.guardprec():
        p = sv.PhaseParams(
            sv.Phase.ANTIFERROELECTRIC, t=mp.mpf("0.3"), gamma=mp.mpf(1)
        )
    w = sv.weights_from_params(p, CTX256)
    with CTX256.guardprec():
        assert rel_to(w.a, mp.sinh(mp.mpf("0.7"))) < mp.mpf("1e-70")
        assert rel_to(w.b, mp.sinh(mp.mpf("1.3"))) < mp.mpf("1e-70")
        assert rel_to(w.c, mp.sinh(2)) < mp.mpf("1e-70")


def test_weights_from_params_rejects_critical():
    p = sv.PhaseParams(sv.Phase.CRITICAL_FD, alpha=3)
    with pytest.raises(ParameterDomainError):
        sv.weights_from_params(p)


@pytest.mark.parametrize(
    "phase,kwargs",
    [
        (sv.Phase.DISORDERED, dict(t=1.0, gamma=0.5)),  # |t| >= gamma
        (sv.Phase.DISORDERED, dict(t=0.0, gamma=1.6)),  # gamma >= pi/2
        (sv.Phase.FERROELECTRIC, dict(t=1.0, gamma=2.0)),  # gamma >= t
        (sv.Phase.ANTIFERROELECTRIC, dict(t=2.0, gamma=1.0)),
        (sv.Phase.CRITICAL_FD, dict(alpha=1.0)),
        (sv.Phase.CRITICAL_AFD, dict(alpha=1.0)),
        (sv.Phase.CRITICAL_FD, dict(t=2.0, gamma=1.0)),
    ],
)
def test_phase_params_domain_rejections(phase, kwargs):
    with pytest.raises(ParameterDomainError):
        sv.PhaseParams(phase, **kwargs)


def test_normalize_exact():
    w, scale = sv.normalize(sv.Weights(2, 3, 4))
    assert (w.a, w.b, w.c) == (Fraction(1, 2), Fraction(3, 4), Fraction(1))
    assert scale == 4
    w, scale = sv.normalize(sv.Weights(1, 1, 1))
    assert (w.a, w.b, w.c) == (Fraction(1), Fraction(1), Fraction(1))
    assert scale == 1


def test_normalize_round_trip_via_enumeration():
    # scale^(n^2) * Z(normalized) = Z(original), exactly in rationals
    n = 3
    w = sv.Weights(Fraction(2), Fraction(3), Fraction(4))
    wn, scale = sv.normalize(w)
    z_orig, _ = sv.enumerate_dfs(n, w)
    z_norm, _ = sv.enumerate_dfs(n, wn)
    assert z_orig == scale ** (n * n) * z_norm


def test_swap_ab():
    w = sv.swap_ab(sv.Weights(1, 2, 3))
    assert (w.a, w.b, w.c) == (2, 1, 3)


def test_weights_must_be_positive():
    with pytest.raises(ParameterDomainError):
        sv.Weights(0, 1, 1)
    with pytest.raises(ParameterDomainError):
        sv.Weights(1, -2, 1)


# --- properties -----------------------------------------------------------

small_fractions = st.fractions(
    min_value=Fraction(1, 10), max_value=Fraction(10), max_denominator=20
)


@given(small_fractions, small_fractions, small_fractions, small_fractions)
def test_delta_scale_invariant_exact(a, b, c, lam):
    w = sv.Weights(a, b, c)
    ws = sv.Weights(a * lam, b * lam, c * lam)
    assert sv.delta(w) == sv.delta(ws)


@given(small_fractions, small_fractions, small_fractions)
def test_delta_symmetric_in_a_b(a, b, c):
    assert sv.delta(sv.Weights(a, b, c)) == sv.delta(sv.Weights(b, a, c))


disordered_params = st.tuples(
    st.floats(min_value=0.2, max_value=1.35),
    st.floats(min_value=-0.9, max_value=0.9),
).map(lambda p: (p[0], p[0] * p[1]))


@given(disordered_params)
def test_disordered_delta_identity_and_roundtrip(gt):
    gamma, t = gt
    p = sv.PhaseParams(sv.Phase.DISORDERED, t=t, gamma=gamma)
    w = sv.weights_from_params(p, CTX256)
    d = sv.delta(w, CTX256)
    with CTX256.guardprec():
        assert abs(d + mp.cos(2 * mp.mpf(gamma))) < mp.mpf("1e-70")
    assert sv.classify_phase(w, CTX256) is sv.Phase.DISORDERED


@given(
    st.floats(min_value=0.05, max_value=2.0),
    st.floats(min_value=1.1, max_value=4.0),
)
def test_ferro_delta_identity_and_roundtrip(gamma, ratio):
    t = gamma * ratio
    p = sv.PhaseParams(sv.Phase.FERROELECTRIC, t=t, gamma=gamma)
    w = sv.weights_from_params(p, CTX256)
    d = sv.delta(w, CTX256)
    with CTX256.guardprec():
        assert rel_to(d, mp.cosh(2 * mp.mpf(gamma))) < mp.mpf("1e-70")
    assert sv.classify_phase(w, CTX256) is sv.Phase.FERROELECTRIC


@given(
    st.floats(min_value=0.1, max_value=3.0),
    st.floats(min_value=-0.9, max_value=0.9),
)
def test_af_delta_identity_and_roundtrip(gamma, frac):
    t = gamma * frac
    p = sv.PhaseParams(sv.Phase.ANTIFERROELECTRIC, t=t, gamma=gamma)
    w = sv.weights_from_params(p, CTX256)
    d = sv.delta(w, CTX256)
    with CTX256.guardprec():
        assert rel_to(d, -mp.cosh(2 * mp.mpf(gamma))) < mp.mpf("1e-70")
    assert sv.classify_phase(w, CTX256) is sv.Phase.ANTIFERROELECTRIC
