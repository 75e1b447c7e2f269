"""Network parameters and the linearised drift/diffusion matrices.

Quadrature ordering is frozen to ``(X_b1, Y_b1, X_b2, Y_b2, X_as, Y_as, X_a, Y_a)``;
with the auxiliary cavity masked out the ``as`` pair is simply absent. Code
downstream addresses modes by name through :meth:`DriftDiffusion.rows`.

All rates and frequencies are in units of the first mechanical frequency.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from .errors import ConfigError, NumericalError, ParameterError

MODES_FULL = ("b1", "b2", "as", "a")
MODES_THREE = ("b1", "b2", "a")

DEFAULT_STABILITY_MARGIN = 1e-9

_POSITIVE = ("omega1", "omega2", "gamma1", "gamma2", "kappa", "kappa_s")
_NONNEGATIVE = ("nbar1", "nbar2")
_AUX_ONLY = ("gs1", "gs2", "j_hop")


@dataclass(frozen=True)
class NetworkParams:
    """Scaled parameters of the two-cavity, two-resonator network.

    ``delta_c`` and ``delta_s`` are the normalised drive detunings of cavity
    ``a`` and the auxiliary cavity ``a_s``. ``g1, g2`` couple ``a`` to the
    resonators, ``gs1, gs2`` couple ``a_s`` to them, ``j_hop`` is photon
    hopping between the cavities and ``eta_hop`` phonon hopping between the
    resonators. With ``aux_present=False`` the network is the three-mode
    system and every ``a_s`` coupling must be zero.
    """

    omega1: float = 1.0
    omega2: float = 1.0
    gamma1: float = 1e-5
    gamma2: float = 1e-5
    kappa: float = 0.1
    kappa_s: float = 0.1
    delta_c: float = 1.0
    delta_s: float = 1.0
    g1: float = 0.0
    g2: float = 0.0
    gs1: float = 0.0
    gs2: float = 0.0
    j_hop: float = 0.0
    eta_hop: float = 0.0
    nbar1: float = 0.0
    nbar2: float = 0.0
    aux_present: bool = True

    def __post_init__(self):
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if f.name == "aux_present":
                if not isinstance(value, (bool, np.bool_)):
                    raise ParameterError(f.name, f"expected a boolean, got {value!r}")
                object.__setattr__(self, f.name, bool(value))
                continue
            if isinstance(value, (bool, np.bool_)):
                raise ParameterError(f.name, f"expected a real number, got {value!r}")
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ParameterError(f.name, f"expected a real number, got {value!r}") from None
            if not math.isfinite(value):
                raise ParameterError(f.name, f"must be finite, got {value!r}")
            object.__setattr__(self, f.name, value)
        for name in _POSITIVE:
            if not getattr(self, name) > 0.0:
                raise ParameterError(name, f"must be > 0, got {getattr(self, name)!r}")
        for name in _NONNEGATIVE:
            if not getattr(self, name) >= 0.0:
                raise ParameterError(name, f"must be >= 0, got {getattr(self, name)!r}")
        if not self.aux_present:
            for name in _AUX_ONLY:
                if getattr(self, name) != 0.0:
                    raise ParameterError(
                        name, "must be 0 when the auxiliary cavity is absent (aux_present=false)"
                    )

    @property
    def modes(self) -> tuple[str, ...]:
        return MODES_FULL if self.aux_present else MODES_THREE

    def replace(self, **changes) -> "NetworkParams":
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)


FIELD_NAMES = tuple(f.name for f in dataclasses.fields(NetworkParams))
FLOAT_FIELDS = tuple(n for n in FIELD_NAMES if n != "aux_present")


@dataclass(frozen=True)
class DriftDiffusion:
    """Drift matrix ``A`` and diagonal diffusion matrix ``Q`` in a fixed ordering."""

    a_matrix: np.ndarray
    q_matrix: np.ndarray
    modes: tuple[str, ...] = MODES_FULL

    def __post_init__(self):
        a = np.array(self.a_matrix, dtype=np.float64)
        q = np.array(self.q_matrix, dtype=np.float64)
        n = 2 * len(self.modes)
        if a.shape != (n, n) or q.shape != (n, n):
            raise ConfigError(f"expected {n}x{n} matrices for modes {self.modes}, got {a.shape}, {q.shape}")
        a.setflags(write=False)
        q.setflags(write=False)
        object.__setattr__(self, "a_matrix", a)
        object.__setattr__(self, "q_matrix", q)

    @property
    def ordering(self) -> tuple[str, ...]:
        return tuple(f"{c}_{m}" for m in self.modes for c in ("X", "Y"))

    @property
    def size(self) -> int:
        return 2 * len(self.modes)

    def rows(self, mode: str) -> tuple[int, int]:
        return quadrature_rows(self.modes, mode)


def quadrature_rows(modes: tuple[str, ...], mode: str) -> tuple[int, int]:
    """Row indices of ``(X, Y)`` for a named mode."""
    from .errors import ContractError

    try:
        k = modes.index(mode)
    except ValueError:
        raise ContractError(f"mode {mode!r} not present; available: {', '.join(modes)}") from None
    return 2 * k, 2 * k + 1


def drift_diffusion_batch(columns: Mapping[str, np.ndarray], aux_present: bool):
    """Vectorised assembly of ``(A, Q)`` stacks.

    ``columns`` maps every float field of :class:`NetworkParams` to a 1-D
    array of equal length ``P``. Returns arrays of shape ``(P, n, n)`` with
    ``n = 8`` (or 6 without the auxiliary cavity). No validation is done
    here; callers build columns from validated parameters.
    """
    col = {k: np.asarray(columns[k], dtype=np.float64) for k in FLOAT_FIELDS}
    size = col["omega1"].shape[0]
    modes = MODES_FULL if aux_present else MODES_THREE
    n = 2 * len(modes)
    pos = {m: 2 * i for i, m in enumerate(modes)}
    a = np.zeros((size, n, n))
    q = np.zeros((size, n, n))

    def block(mode, freq, decay):
        x = pos[mode]
        a[:, x, x] = -decay
        a[:, x, x + 1] = freq
        a[:, x + 1, x] = -freq
        a[:, x + 1, x + 1] = -decay

    block("b1", col["omega1"], col["gamma1"])
    block("b2", col["omega2"], col["gamma2"])
    block("a", col["delta_c"], col["kappa"])

    # radiation pressure: Y_b <- -2G X_cav and Y_cav <- -2G X_b
    def optomech(mech, cav, g):
        m, c = pos[mech], pos[cav]
        a[:, m + 1, c] = -2.0 * g
        a[:, c + 1, m] = -2.0 * g

    optomech("b1", "a", col["g1"])
    optomech("b2", "a", col["g2"])

    # beam-splitter hopping between two modes of the same kind
    def hop(u, v, strength):
        x, y = pos[u], pos[v]
        a[:, x, y + 1] = strength
        a[:, x + 1, y] = -strength
        a[:, y, x + 1] = strength
        a[:, y + 1, x] = -strength

    hop("b1", "b2", col["eta_hop"])

    qb1 = (2.0 * col["nbar1"] + 1.0) * col["gamma1"]
    qb2 = (2.0 * col["nbar2"] + 1.0) * col["gamma2"]
    for mode, val in (("b1", qb1), ("b2", qb2), ("a", col["kappa"])):
        x = pos[mode]
        q[:, x, x] = val
        q[:, x + 1, x + 1] = val

    if aux_present:
        block("as", col["delta_s"], col["kappa_s"])
        optomech("b1", "as", col["gs1"])
        optomech("b2", "as", col["gs2"])
        hop("as", "a", col["j_hop"])
        x = pos["as"]
        q[:, x, x] = col["kappa_s"]
        q[:, x + 1, x + 1] = col["kappa_s"]
    return a, q


def params_columns(params: NetworkParams) -> dict[str, np.ndarray]:
    return {k: np.array([getattr(params, k)], dtype=np.float64) for k in FLOAT_FIELDS}


def build_drift_diffusion(params: NetworkParams) -> DriftDiffusion:
    """Assemble the drift matrix and diffusion matrix for one parameter set.

    >>> dd = build_drift_diffusion(NetworkParams(g1=0.15, g2=0.15, gs1=0.1))
    >>> float(dd.a_matrix[1, 4]), float(dd.a_matrix[7, 0])
    (-0.2, -0.3)
    """
    if not isinstance(params, NetworkParams):
        raise TypeError(f"expected NetworkParams, got {type(params).__name__}")
    a, q = drift_diffusion_batch(params_columns(params), params.aux_present)
    return DriftDiffusion(a[0], q[0], params.modes)


@dataclass(frozen=True)
class StabilityVerdict:
    status: str  # "stable" | "unstable" | "marginal"
    max_real: float
    spectrum: np.ndarray

    @property
    def stable(self) -> bool:
        return self.status == "stable"


def classify_max_real(max_real, margin: float = DEFAULT_STABILITY_MARGIN):
    """Stability label(s) from the largest real part of the spectrum."""
    mr = np.asarray(max_real, dtype=np.float64)
    out = np.where(mr < -margin, "stable", np.where(np.abs(mr) <= margin, "marginal", "unstable"))
    return out.item() if out.ndim == 0 else out


def max_real_parts(a_stack: np.ndarray) -> np.ndarray:
    """Largest eigenvalue real part of every matrix in a ``(P, n, n)`` stack."""
    try:
        eig = np.linalg.eigvals(a_stack)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigenvalue iteration failed: {exc}", a_stack) from exc
    return eig.real.max(axis=-1)


def check_stability(dd: DriftDiffusion, margin: float = DEFAULT_STABILITY_MARGIN) -> StabilityVerdict:
    """Stability of the linearised dynamics from the spectrum of ``A``.

    ``stable`` iff every eigenvalue has real part below ``-margin``;
    ``marginal`` if the largest real part lies within ``margin`` of zero.
    """
    if margin < 0:
        raise ValueError("margin must be non-negative")
    try:
        spectrum = np.linalg.eigvals(dd.a_matrix)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigenvalue iteration failed: {exc}", dd.a_matrix) from exc
    if not np.all(np.isfinite(spectrum)):
        raise NumericalError("non-finite eigenvalues", dd.a_matrix)
    max_real = float(spectrum.real.max())
    return StabilityVerdict(classify_max_real(max_real, margin), max_real, spectrum)


# ---------------------------------------------------------------------------
# parameter files
# ---------------------------------------------------------------------------

_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


def parse_value(field: str, text: str, position: tuple[str, int] | None = None):
    """Convert the textual value of a config entry to the field's type."""
    if field not in FIELD_NAMES:
        raise ParameterError(field, f"unknown parameter; valid names: {', '.join(FIELD_NAMES)}", position)
    raw = text.strip()
    if field == "aux_present":
        low = raw.lower()
        if low in _TRUE:
            return True
        if low in _FALSE:
            return False
        raise ParameterError(field, f"expected true/false, got {raw!r}", position)
    try:
        return float(raw)
    except ValueError:
        raise ParameterError(field, f"expected a real number, got {raw!r}", position) from None


def read_config_text(text: str, source: str = "<string>") -> dict[str, Any]:
    """Parse a flat ``key = value`` document with ``#`` comments.

    Unknown keys and duplicate keys are errors; the message carries the line.
    """
    values: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" in body:
            key, _, raw = body.partition("=")
        elif ":" in body:
            key, _, raw = body.partition(":")
        else:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line.strip()!r}")
        key = key.strip()
        if key in values:
            raise ParameterError(key, "duplicate key", (source, lineno))
        values[key] = parse_value(key, raw, (source, lineno))
    return values


def read_config(path: str | Path) -> dict[str, Any]:
    """Read parameter overrides from a key-value file or a JSON report.

    JSON input may be a flat object or any object carrying a ``params`` key
    (as written by ``optodark solve --format json``).
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if path.suffix.lower() == ".json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from exc
        if isinstance(doc, dict) and isinstance(doc.get("params"), dict):
            doc = doc["params"]
        if not isinstance(doc, dict):
            raise ConfigError(f"{path}: expected a JSON object")
        out = {}
        for key, value in doc.items():
            if key not in FIELD_NAMES:
                raise ParameterError(key, "unknown parameter", (str(path), 0))
            out[key] = value
        return out
    return read_config_text(text, str(path))


def params_from_mapping(values: Mapping[str, Any], base: NetworkParams | None = None) -> NetworkParams:
    """Apply overrides to ``base`` (defaults if omitted), rejecting unknown keys."""
    for key in values:
        if key not in FIELD_NAMES:
            raise ParameterError(key, f"unknown parameter; valid names: {', '.join(FIELD_NAMES)}")
    return dataclasses.replace(base or NetworkParams(), **dict(values))


def load_params(path: str | Path, base: NetworkParams | None = None) -> NetworkParams:
    return params_from_mapping(read_config(path), base)
