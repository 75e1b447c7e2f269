"""Analytic dark-mode diagnostics for the two-resonator network.

The mechanical hybrid modes are ``B+ = (G1 b1 + G2 b2)/N`` and
``B- = (G2 b1 - G1 b2)/N`` with ``N = sqrt(G1^2 + G2^2)``. ``B-`` is a dark
mode (decoupled from both cavities) iff

    M1 = (omega1 - omega2) G1 G2 + eta (G2^2 - G1^2) = 0
    M2 = Gs1 G2 - Gs2 G1 = 0
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DegenerateConfigurationError, UnsupportedConfigurationError
from .model import NetworkParams

DEFAULT_DARK_TOL = 1e-9

CHANNELS = ("J", "eta", "gs1", "gs2")
_CHANNEL_FIELD = {"J": "j_hop", "eta": "eta_hop", "gs1": "gs1", "gs2": "gs2"}
_ALIASES = {
    "j": "J", "j_hop": "J",
    "eta": "eta", "eta_hop": "eta",
    "gs1": "gs1", "g_s1": "gs1",
    "gs2": "gs2", "g_s2": "gs2",
}
_FIXED = {"g1", "g2", "g_1", "g_2"}

# the fourteen switch-off cases in the order of the six figure panels
FIG6_CONFIGURATIONS = (
    ("J",), ("eta",), ("gs1",), ("gs2",),
    ("J", "eta"), ("gs1", "gs2"), ("J", "gs1"), ("J", "gs2"), ("eta", "gs1"), ("eta", "gs2"),
    ("J", "gs1", "gs2"), ("eta", "gs1", "gs2"), ("J", "eta", "gs1"), ("J", "eta", "gs2"),
)


@dataclass(frozen=True)
class DarkModeReport:
    m1: float
    m2: float
    dark_mode_exists: bool
    bright_weights: tuple[float, float]
    dark_weights: tuple[float, float]

    def as_dict(self) -> dict:
        return {
            "m1": self.m1,
            "m2": self.m2,
            "dark_mode_exists": self.dark_mode_exists,
            "bright_weights": list(self.bright_weights),
            "dark_weights": list(self.dark_weights),
        }


def dark_mode_values(omega1, omega2, g1, g2, gs1, gs2, eta):
    """``(M1, M2)``; works elementwise on arrays."""
    m1 = (omega1 - omega2) * g1 * g2 + eta * (g2 * g2 - g1 * g1)
    m2 = gs1 * g2 - gs2 * g1
    return m1, m2


def dark_mode_conditions(params: NetworkParams, tol: float = DEFAULT_DARK_TOL) -> DarkModeReport:
    """Evaluate the dark-mode conditions and the hybrid-mode weights.

    The verdict uses scale-aware thresholds
    ``|M1| <= tol * Gmax^2 * max(omega1, omega2, 1)`` and
    ``|M2| <= tol * Gmax * max(|Gs1|, |Gs2|, Gmax)`` where
    ``Gmax = max(|G1|, |G2|)``.
    """
    g1, g2 = params.g1, params.g2
    norm = math.hypot(g1, g2)
    if norm == 0.0:
        raise DegenerateConfigurationError("G1 = G2 = 0: the hybrid mechanical modes are undefined")
    m1, m2 = dark_mode_values(
        params.omega1, params.omega2, g1, g2, params.gs1, params.gs2, params.eta_hop
    )
    gmax = max(abs(g1), abs(g2))
    tol1 = tol * gmax * gmax * max(params.omega1, params.omega2, 1.0)
    tol2 = tol * gmax * max(abs(params.gs1), abs(params.gs2), gmax)
    exists = abs(m1) <= tol1 and abs(m2) <= tol2
    return DarkModeReport(
        m1=float(m1),
        m2=float(m2),
        dark_mode_exists=bool(exists),
        bright_weights=(g1 / norm, g2 / norm),
        dark_weights=(g2 / norm, -g1 / norm),
    )


def normalize_channels(switched_off: Iterable[str]) -> tuple[str, ...]:
    out = set()
    for name in switched_off:
        key = str(name).strip()
        if key.lower() in _FIXED:
            raise UnsupportedConfigurationError(
                f"{key} cannot be switched off: the couplings G1 and G2 are kept on"
            )
        canon = _ALIASES.get(key.lower())
        if canon is None:
            raise UnsupportedConfigurationError(
                f"unknown coupling channel {key!r}; expected a subset of {', '.join(CHANNELS)}"
            )
        out.add(canon)
    return tuple(c for c in CHANNELS if c in out)


def configuration_label(channels: Iterable[str]) -> str:
    """Human label such as ``"J=eta=0"``; ``"all on"`` for the empty set."""
    ch = normalize_channels(channels)
    return "=".join(ch) + "=0" if ch else "all on"


def configuration_slug(channels: Iterable[str]) -> str:
    """Filename-safe label such as ``"J_eta_off"``."""
    ch = normalize_channels(channels)
    return "_".join(ch) + "_off" if ch else "all_on"


def switch_off(params: NetworkParams, channels: Iterable[str]) -> NetworkParams:
    """Copy of ``params`` with the named coupling channels set to zero."""
    ch = normalize_channels(channels)
    return params.replace(**{_CHANNEL_FIELD[c]: 0.0 for c in ch})


@dataclass(frozen=True)
class ConfigurationVerdict:
    label: str
    slug: str
    switched_off: tuple[str, ...]
    dark_mode_exists: bool
    m1: float
    m2: float

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "switched_off": list(self.switched_off),
            "dark_mode_exists": self.dark_mode_exists,
            "m1": self.m1,
            "m2": self.m2,
        }


def classify_configuration(
    switched_off: Iterable[str], params: NetworkParams, tol: float = DEFAULT_DARK_TOL
) -> ConfigurationVerdict:
    """Dark-mode verdict for a coupling configuration of the network.

    Follows the taxonomy convention: degenerate resonators, both ``G1`` and
    ``G2`` nonzero, and ``Gs1 = Gs2`` whenever both auxiliary couplings are
    active.
    """
    channels = normalize_channels(switched_off)
    if not params.aux_present:
        raise UnsupportedConfigurationError("the configuration taxonomy needs the auxiliary cavity")
    if params.g1 == 0.0 or params.g2 == 0.0:
        raise UnsupportedConfigurationError("G1 and G2 must both be nonzero")
    if not math.isclose(params.omega1, params.omega2, rel_tol=1e-12, abs_tol=0.0):
        raise UnsupportedConfigurationError("the taxonomy assumes degenerate resonators (omega1 = omega2)")
    reduced = switch_off(params, channels)
    if reduced.gs1 != 0.0 and reduced.gs2 != 0.0 and not math.isclose(reduced.gs1, reduced.gs2, rel_tol=1e-12):
        raise UnsupportedConfigurationError(
            f"Gs1 = Gs2 is required while both are active (got {reduced.gs1!r}, {reduced.gs2!r})"
        )
    report = dark_mode_conditions(reduced, tol)
    return ConfigurationVerdict(
        label=configuration_label(channels),
        slug=configuration_slug(channels),
        switched_off=channels,
        dark_mode_exists=report.dark_mode_exists,
        m1=report.m1,
        m2=report.m2,
    )


def taxonomy_table(params: NetworkParams, tol: float = DEFAULT_DARK_TOL) -> list[ConfigurationVerdict]:
    """Verdicts for all fourteen switch-off configurations."""
    return [classify_configuration(c, params, tol) for c in FIG6_CONFIGURATIONS]


# ---------------------------------------------------------------------------
# centre-of-mass / relative coordinates
# ---------------------------------------------------------------------------


def cm_rel_transform(g1: float, g2: float) -> np.ndarray:
    """Matrix taking ``(q1, p1, q2, p2)`` to ``(q_cm, p_cm, q_r, p_r)``.

    ``q_cm = (g1 q1 + g2 q2)/N`` and ``q_r = (g1 q2 - g2 q1)/N`` (same for p).
    """
    norm = _norm(g1, g2)
    c1, c2 = g1 / norm, g2 / norm
    return np.array(
        [
            [c1, 0.0, c2, 0.0],
            [0.0, c1, 0.0, c2],
            [-c2, 0.0, c1, 0.0],
            [0.0, -c2, 0.0, c1],
        ]
    )


def cm_rel_inverse(g1: float, g2: float) -> np.ndarray:
    """Matrix taking ``(q_cm, p_cm, q_r, p_r)`` back to ``(q1, p1, q2, p2)``."""
    norm = _norm(g1, g2)
    c1, c2 = g1 / norm, g2 / norm
    # q1 = c1 q_cm - c2 q_r,  q2 = c2 q_cm + c1 q_r
    return np.array(
        [
            [c1, 0.0, -c2, 0.0],
            [0.0, c1, 0.0, -c2],
            [c2, 0.0, c1, 0.0],
            [0.0, c2, 0.0, c1],
        ]
    )


def _norm(g1: float, g2: float) -> float:
    norm = math.hypot(g1, g2)
    if norm == 0.0:
        raise DegenerateConfigurationError("g1 = g2 = 0: centre-of-mass coordinates are undefined")
    return norm


@dataclass(frozen=True)
class CmRelReport:
    """Coefficients of the resonator Hamiltonian in collective coordinates.

    ``cross_coupling`` multiplies ``(p_cm p_r + q_cm q_r)``;
    ``cm_cavity_coupling`` multiplies ``a^dag a q_cm``; ``cm_aux_coupling``
    and ``rel_aux_coupling`` multiply ``a_s^dag a_s q_cm`` and
    ``a_s^dag a_s q_r``.
    """

    omega_cm: float
    omega_r: float
    cross_coupling: float
    cm_cavity_coupling: float
    cm_aux_coupling: float
    rel_aux_coupling: float
    which_is_dark: str
    aux_breaks_dark_mode: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def cm_rel_analysis(
    g1: float,
    g2: float,
    gs1: float,
    omega1: float,
    omega2: float,
    tol: float = 1e-12,
) -> CmRelReport:
    """Rewrite the two-resonator Hamiltonian in centre-of-mass/relative form.

    ``g1, g2`` carry their physical signs: equal signs (capacitive microwave
    coupling, ``x1 + x2``) leave the relative coordinate dark, opposite signs
    (two-mirror cavity, ``x1 - x2``) leave the physical centre of mass dark.
    A frequency mismatch couples the two coordinates, in which case neither is
    dark and ``which_is_dark`` is ``"none"``; it is also ``"none"`` when one
    coupling vanishes (the uncoupled resonator is then trivially isolated).
    ``which_is_dark`` concerns cavity ``a`` only; whether the auxiliary cavity
    reaches the dark coordinate is reported in ``aux_breaks_dark_mode``.
    """
    norm = _norm(g1, g2)
    n2 = norm * norm
    omega_cm = (omega1 * g1 * g1 + omega2 * g2 * g2) / n2
    omega_r = (omega1 * g2 * g2 + omega2 * g1 * g1) / n2
    cross = (omega2 - omega1) * g1 * g2 / n2
    # g1 q1 + g2 q2 = N q_cm exactly
    cm_cav = norm
    cm_aux = gs1 * g1 / norm
    rel_aux = -gs1 * g2 / norm

    if abs(cross) > tol * max(abs(omega1), abs(omega2)) or g1 * g2 == 0.0:
        which = "none"
    elif g1 * g2 > 0.0:
        which = "relative"
    else:
        which = "center_of_mass"
    breaks = which != "none" and abs(rel_aux) > tol * max(abs(gs1), norm)
    return CmRelReport(
        omega_cm=float(omega_cm),
        omega_r=float(omega_r),
        cross_coupling=float(cross),
        cm_cavity_coupling=float(cm_cav),
        cm_aux_coupling=float(cm_aux),
        rel_aux_coupling=float(rel_aux),
        which_is_dark=which,
        aux_breaks_dark_mode=bool(breaks),
    )
