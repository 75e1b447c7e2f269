import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from optodark import NetworkParams
from optodark.errors import ConfigError, ParameterError
from optodark.model import (
    MODES_THREE,
    build_drift_diffusion,
    check_stability,
    classify_max_real,
    load_params,
    read_config_text,
)

coupling = st.floats(-0.3, 0.3, allow_nan=False)
positive = st.floats(1e-4, 2.0, allow_nan=False)


@st.composite
def params(draw, aux=True):
    kw = dict(
        omega1=draw(st.floats(0.5, 1.5)),
        omega2=draw(st.floats(0.5, 1.5)),
        gamma1=draw(positive),
        gamma2=draw(positive),
        kappa=draw(positive),
        kappa_s=draw(positive),
        delta_c=draw(st.floats(-3, 3)),
        delta_s=draw(st.floats(-3, 3)),
        g1=draw(coupling),
        g2=draw(coupling),
        eta_hop=draw(coupling),
        nbar1=draw(st.floats(0, 500)),
        nbar2=draw(st.floats(0, 500)),
        aux_present=aux,
    )
    if aux:
        kw.update(gs1=draw(coupling), gs2=draw(coupling), j_hop=draw(coupling))
    return NetworkParams(**kw)


def test_doc_entries():
    dd = build_drift_diffusion(NetworkParams(g1=0.15, gs1=0.1))
    assert dd.a_matrix[1, 4] == -0.2
    assert dd.a_matrix[7, 0] == -0.3
    assert dd.ordering == ("X_b1", "Y_b1", "X_b2", "Y_b2", "X_as", "Y_as", "X_a", "Y_a")


def test_literal_transcription_fig2(fig2_peak):
    dd = build_drift_diffusion(fig2_peak)
    np.testing.assert_array_equal(dd.a_matrix, oracles.drift_literal(fig2_peak))
    np.testing.assert_array_equal(dd.q_matrix, oracles.diffusion_literal(fig2_peak))


@given(params())
def test_drift_matches_hamiltonian_jacobian(p):
    dd = build_drift_diffusion(p)
    np.testing.assert_allclose(dd.a_matrix, oracles.drift_symbolic(p), rtol=0, atol=1e-15)
    np.testing.assert_array_equal(dd.q_matrix, oracles.diffusion_literal(p))


@given(params(aux=False))
def test_three_mode_drift(p):
    dd = build_drift_diffusion(p)
    assert dd.modes == MODES_THREE and dd.a_matrix.shape == (6, 6)
    np.testing.assert_allclose(dd.a_matrix, oracles.drift_symbolic(p), rtol=0, atol=1e-15)


@given(params())
def test_q_is_diagonal_and_positive(p):
    q = build_drift_diffusion(p).q_matrix
    assert np.all(q == np.diag(np.diag(q)))
    assert np.all(np.diag(q) > 0)


def _swapped(p):
    return p.replace(
        omega1=p.omega2, omega2=p.omega1, gamma1=p.gamma2, gamma2=p.gamma1,
        nbar1=p.nbar2, nbar2=p.nbar1, g1=p.g2, g2=p.g1, gs1=p.gs2, gs2=p.gs1,
    )


@given(params())
def test_resonator_exchange_symmetry(p):
    perm = [2, 3, 0, 1, 4, 5, 6, 7]
    a = build_drift_diffusion(p)
    b = build_drift_diffusion(_swapped(p))
    np.testing.assert_array_equal(b.a_matrix, a.a_matrix[np.ix_(perm, perm)])
    np.testing.assert_array_equal(b.q_matrix, a.q_matrix[np.ix_(perm, perm)])


@given(params())
def test_three_mode_is_submatrix_when_aux_decoupled(p):
    p4 = p.replace(gs1=0.0, gs2=0.0, j_hop=0.0)
    p3 = p4.replace(aux_present=False)
    keep = [0, 1, 2, 3, 6, 7]
    a4 = build_drift_diffusion(p4)
    a3 = build_drift_diffusion(p3)
    np.testing.assert_array_equal(a3.a_matrix, a4.a_matrix[np.ix_(keep, keep)])
    np.testing.assert_array_equal(a3.q_matrix, a4.q_matrix[np.ix_(keep, keep)])


def test_matrices_read_only(fig2_peak):
    dd = build_drift_diffusion(fig2_peak)
    with pytest.raises(ValueError):
        dd.a_matrix[0, 0] = 1.0


@pytest.mark.parametrize(
    "field,value",
    [("kappa", 0.0), ("gamma1", -1e-5), ("nbar2", -1.0), ("omega1", float("nan")), ("g1", "x"), ("delta_c", True)],
)
def test_invalid_fields_named(field, value):
    with pytest.raises(ParameterError) as exc:
        NetworkParams(**{field: value})
    assert exc.value.field == field
    assert field in str(exc.value)


def test_aux_couplings_rejected_without_aux():
    with pytest.raises(ParameterError, match="gs1"):
        NetworkParams(gs1=0.1, aux_present=False)


def test_stable_fig2(fig2_peak):
    v = check_stability(build_drift_diffusion(fig2_peak))
    assert v.stable and v.max_real < 0 and v.spectrum.shape == (8,)


def test_blue_detuned_strong_drive_unstable():
    p = NetworkParams(delta_c=-1.0, g1=0.5, g2=0.15)
    dd = build_drift_diffusion(p)
    verdict = check_stability(dd)
    assert verdict.status == "unstable"
    assert oracles.diverges(dd.a_matrix)


def test_marginal_without_damping():
    # vanishing mechanical damping and no coupling: spectrum sits on the axis
    p = NetworkParams(gamma1=1e-12, gamma2=1e-12)
    assert check_stability(build_drift_diffusion(p)).status == "marginal"
    assert classify_max_real(np.array([-1.0, 0.0, 1.0])).tolist() == ["stable", "marginal", "unstable"]


def test_config_text_parse_and_errors(tmp_path):
    text = "# comment\ng1 = 0.15  # trailing\ngs1: 0.1\naux_present = yes\n"
    assert read_config_text(text) == {"g1": 0.15, "gs1": 0.1, "aux_present": True}
    with pytest.raises(ParameterError) as exc:
        read_config_text("g1 = 0.1\ng_1 = 0.2\n", "run.cfg")
    assert exc.value.field == "g_1" and "run.cfg" in str(exc.value) and "2" in str(exc.value)
    with pytest.raises(ParameterError, match="duplicate"):
        read_config_text("g1 = 0.1\ng1 = 0.2\n")
    with pytest.raises(ConfigError):
        read_config_text("just words\n")
    with pytest.raises(ParameterError, match="real number"):
        read_config_text("kappa = fast\n")
    path = tmp_path / "p.cfg"
    path.write_text("g1 = 0.2\n")
    assert load_params(path).g1 == 0.2


def test_docstring_examples():
    import doctest

    import optodark.model

    assert doctest.testmod(optodark.model).failed == 0
