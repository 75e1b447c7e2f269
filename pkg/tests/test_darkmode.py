import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import oracles
from optodark import NetworkParams
from optodark.darkmode import (
    FIG6_CONFIGURATIONS,
    classify_configuration,
    cm_rel_analysis,
    cm_rel_inverse,
    cm_rel_transform,
    configuration_label,
    configuration_slug,
    dark_mode_conditions,
    switch_off,
    taxonomy_table,
)
from optodark.errors import DegenerateConfigurationError, UnsupportedConfigurationError
from optodark.model import build_drift_diffusion

FIG6 = NetworkParams(g1=0.15, g2=0.15, j_hop=0.05, eta_hop=0.05, gs1=0.1, gs2=0.1, nbar1=100, nbar2=100)

UNBROKEN = {("J",), ("eta",), ("J", "eta"), ("gs1", "gs2"), ("J", "gs1", "gs2"), ("eta", "gs1", "gs2")}


def test_proportional_aux_coupling_is_dark():
    p = NetworkParams(g1=0.15, g2=0.1, gs1=0.06, gs2=0.04)
    r = dark_mode_conditions(p)
    assert r.m1 == 0 and abs(r.m2) < 1e-17 and r.dark_mode_exists


@given(st.floats(-1, 1))
def test_equal_couplings_cancel_phonon_hopping(eta):
    r = dark_mode_conditions(NetworkParams(g1=0.15, g2=0.15, eta_hop=eta))
    assert r.m1 == 0.0


def test_single_aux_coupling_breaks():
    r = dark_mode_conditions(NetworkParams(g1=0.15, g2=0.15, gs1=0.1))
    assert r.m2 == pytest.approx(0.015, rel=1e-14)
    assert not r.dark_mode_exists


def test_degenerate_couplings_raise():
    with pytest.raises(DegenerateConfigurationError):
        dark_mode_conditions(NetworkParams())
    with pytest.raises(DegenerateConfigurationError):
        cm_rel_analysis(0.0, 0.0, 0.1, 1.0, 1.0)


@st.composite
def dark_candidates(draw):
    # a mix of exactly dark and generic points
    g1 = draw(st.floats(0.02, 0.3))
    g2 = draw(st.floats(0.02, 0.3))
    omega2 = draw(st.sampled_from([1.0, 1.0, 1.1]))
    eta = draw(st.sampled_from([0.0, 0.05]))
    gs1 = draw(st.floats(0.0, 0.2))
    gs2 = draw(st.sampled_from([gs1 * g2 / g1, 0.0, 0.07]))
    return NetworkParams(omega2=omega2, g1=g1, g2=g2, eta_hop=eta, gs1=gs1, gs2=gs2, gamma1=1e-3, gamma2=1e-3)


@given(dark_candidates())
def test_verdict_matches_dark_eigenvector_of_drift(p):
    r = dark_mode_conditions(p)
    a = build_drift_diffusion(p).a_matrix
    assert r.dark_mode_exists == oracles.dark_eigenvector_exists(a)


@given(dark_candidates(), st.floats(1e-3, 1e3))
def test_verdict_scale_invariant(p, lam):
    scaled = p.replace(g1=lam * p.g1, g2=lam * p.g2, gs1=lam * p.gs1, gs2=lam * p.gs2, eta_hop=lam * p.eta_hop)
    assert dark_mode_conditions(scaled).dark_mode_exists == dark_mode_conditions(p).dark_mode_exists


@given(dark_candidates())
def test_weights_orthonormal_and_verdict_bounds(p):
    r = dark_mode_conditions(p)
    w = np.array([r.bright_weights, r.dark_weights])
    np.testing.assert_allclose(w @ w.T, np.eye(2), atol=1e-15)
    if r.dark_mode_exists:
        gmax = max(abs(p.g1), abs(p.g2))
        assert abs(r.m1) <= 1e-9 * gmax**2 * max(p.omega1, p.omega2, 1)
        assert abs(r.m2) <= 1e-9 * gmax * max(abs(p.gs1), abs(p.gs2), gmax)


def test_taxonomy_table():
    table = taxonomy_table(FIG6)
    assert len(table) == 14
    for cfg, verdict in zip(FIG6_CONFIGURATIONS, table):
        assert verdict.dark_mode_exists == (cfg in UNBROKEN), cfg


def test_named_taxonomy_examples():
    assert classify_configuration({"eta"}, FIG6).dark_mode_exists
    v = classify_configuration(["J", "eta", "gs2"], FIG6)
    assert not v.dark_mode_exists
    assert v.label == "J=eta=gs2=0" and v.slug == "J_eta_gs2_off"
    assert configuration_label([]) == "all on" and configuration_slug(["g_s1", "j"]) == "J_gs1_off"


def test_taxonomy_preconditions():
    with pytest.raises(UnsupportedConfigurationError):
        classify_configuration({"G1"}, FIG6)
    with pytest.raises(UnsupportedConfigurationError):
        classify_configuration({"bogus"}, FIG6)
    with pytest.raises(UnsupportedConfigurationError):
        classify_configuration({"J"}, FIG6.replace(omega2=1.1))
    with pytest.raises(UnsupportedConfigurationError):
        classify_configuration({"J"}, FIG6.replace(gs2=0.2))
    # one of the mismatched couplings switched off is fine
    assert not classify_configuration({"gs1"}, FIG6.replace(gs2=0.2)).dark_mode_exists


def test_switch_off_zeroes_fields():
    p = switch_off(FIG6, ["J", "gs2"])
    assert p.j_hop == 0 and p.gs2 == 0 and p.eta_hop == FIG6.eta_hop and p.gs1 == FIG6.gs1


# collective coordinates -------------------------------------------------------


def test_degenerate_equal_couplings_relative_dark():
    r = cm_rel_analysis(0.2, 0.2, 0.1, 1.0, 1.0)
    assert r.omega_cm == pytest.approx(1.0) and r.omega_r == pytest.approx(1.0)
    assert r.cross_coupling == 0.0 and r.which_is_dark == "relative"
    assert r.aux_breaks_dark_mode
    assert r.rel_aux_coupling == pytest.approx(-0.1 / np.sqrt(2))


def test_opposite_signs_center_of_mass_dark():
    r = cm_rel_analysis(0.2, -0.2, 0.1, 1.0, 1.0)
    assert r.which_is_dark == "center_of_mass"


def test_mismatched_frequencies_example():
    r = cm_rel_analysis(0.15, 0.1, 0.0, 1.0, 1.2)
    assert r.omega_cm == pytest.approx(0.0345 / 0.0325, rel=1e-14)  # 1.0615...
    assert r.omega_r == pytest.approx(0.037 / 0.0325, rel=1e-14)  # 1.1385...
    assert r.which_is_dark == "none"
    assert not r.aux_breaks_dark_mode


def test_one_coupling_zero_is_not_dark():
    assert cm_rel_analysis(0.2, 0.0, 0.1, 1.0, 1.0).which_is_dark == "none"


finite = st.floats(-2, 2, allow_nan=False).filter(lambda x: abs(x) > 1e-3)


@given(finite, finite)
def test_transform_round_trip(g1, g2):
    t = cm_rel_transform(g1, g2)
    ti = cm_rel_inverse(g1, g2)
    np.testing.assert_allclose(ti @ t, np.eye(4), atol=4e-16)
    np.testing.assert_allclose(t @ t.T, np.eye(4), atol=4e-16)


def _quadratic_form(omega1, omega2):
    # H_mech = sum w_l (q_l^2 + p_l^2)/2 on (q1, p1, q2, p2)
    return 0.5 * np.diag([omega1, omega1, omega2, omega2])


@given(st.floats(0.5, 1.5), st.floats(0.5, 1.5), finite, finite, st.floats(-0.3, 0.3))
def test_quadratic_form_rewrite(omega1, omega2, g1, g2, gs1):
    """Push the resonator Hamiltonian through the numeric transform and read off coefficients."""
    r = cm_rel_analysis(g1, g2, gs1, omega1, omega2)
    ti = cm_rel_inverse(g1, g2)
    h = ti.T @ _quadratic_form(omega1, omega2) @ ti  # in (q_cm, p_cm, q_r, p_r)
    assert h[0, 0] * 2 == pytest.approx(r.omega_cm, rel=1e-12)
    assert h[1, 1] * 2 == pytest.approx(r.omega_cm, rel=1e-12)
    assert h[2, 2] * 2 == pytest.approx(r.omega_r, rel=1e-12)
    # cross term coefficient of (q_cm q_r + p_cm p_r) is 2 h[0, 2]
    assert 2 * h[0, 2] == pytest.approx(r.cross_coupling, rel=1e-10, abs=1e-14)
    assert 2 * h[1, 3] == pytest.approx(r.cross_coupling, rel=1e-10, abs=1e-14)
    # linear couplings: g1 q1 + g2 q2 and gs1 q1 expressed in collective coordinates
    cav = np.array([g1, 0, g2, 0]) @ ti
    aux = np.array([gs1, 0, 0, 0]) @ ti
    assert cav[0] == pytest.approx(r.cm_cavity_coupling, rel=1e-12)
    assert abs(cav[2]) <= 1e-15 * max(1, abs(g1), abs(g2))
    assert aux[0] == pytest.approx(r.cm_aux_coupling, rel=1e-12, abs=1e-15)
    assert aux[2] == pytest.approx(r.rel_aux_coupling, rel=1e-12, abs=1e-15)


@given(st.floats(0.01, 1.0), st.floats(0.5, 1.5))
def test_sign_cases(g, omega):
    assert cm_rel_analysis(g, g, 0.0, omega, omega).which_is_dark == "relative"
    assert cm_rel_analysis(g, -g, 0.0, omega, omega).which_is_dark == "center_of_mass"
