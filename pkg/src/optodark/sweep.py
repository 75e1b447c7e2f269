"""Parameter sweeps over the stability -> Lyapunov -> negativity pipeline.

A :class:`SweepSpec` names a base parameter set, one or two axes and the
requested outputs. Optional *variants* (labelled parameter overrides) run the
same grid several times, e.g. with and without the auxiliary coupling.

Every grid point is evaluated independently, so results do not depend on the
number of workers or on chunking. Unstable points keep ``status="unstable"``
and carry NaN (written as an empty CSV field) for every covariance-derived
output.
"""

from __future__ import annotations

import dataclasses
import io
import json
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Sequence

import numpy as np

from . import __version__, kernels
from .darkmode import FIG6_CONFIGURATIONS, configuration_slug, dark_mode_values, switch_off
from .errors import ConfigError, OptodarkError
from .lyapunov import DEFAULT_RESIDUAL_RTOL
from .model import (
    DEFAULT_STABILITY_MARGIN,
    FIELD_NAMES,
    FLOAT_FIELDS,
    MODES_FULL,
    MODES_THREE,
    NetworkParams,
    classify_max_real,
    drift_diffusion_batch,
    max_real_parts,
)

CSV_FORMAT_VERSION = 1
DEFAULT_1D_POINTS = 201
DEFAULT_2D_POINTS = 101
DEFAULT_CLAMP = 1e-12

# axes that drive more than one field, or a field relative to another
DERIVED_AXES = {
    "nbar": ("nbar1", "nbar2"),
    "gs2_over_gs1": ("gs2",),
}

_SCALAR_OUTPUTS = ("stable", "max_re", "m1", "m2")
_PAIR_OUTPUT = re.compile(r"^(EN|sigma)_(b1|b2|as|a)_(b1|b2|as|a)$")


@dataclass(frozen=True)
class Grid:
    """Sample points along one axis: ``linear``, ``log10`` or ``list``."""

    kind: str
    start: float = 0.0
    stop: float = 0.0
    count: int = 0
    points: tuple[float, ...] = ()

    @classmethod
    def linear(cls, start: float, stop: float, count: int = DEFAULT_1D_POINTS) -> "Grid":
        return cls("linear", float(start), float(stop), int(count))

    @classmethod
    def log10(cls, start_exp: float, stop_exp: float, count: int = DEFAULT_1D_POINTS) -> "Grid":
        """Logarithmic grid from ``10**start_exp`` to ``10**stop_exp``."""
        return cls("log10", float(start_exp), float(stop_exp), int(count))

    @classmethod
    def explicit(cls, values: Sequence[float]) -> "Grid":
        return cls("list", points=tuple(float(v) for v in values))

    @classmethod
    def parse(cls, text: str) -> "Grid":
        """``linear:a:b:n``, ``log10:e0:e1:n`` or ``list:v1,v2,...``."""
        kind, _, rest = text.partition(":")
        kind = kind.strip().lower()
        try:
            if kind == "list":
                return cls.explicit([float(v) for v in rest.split(",") if v.strip()])
            if kind in ("linear", "log10"):
                a, b, n = rest.split(":")
                return cls(kind, float(a), float(b), int(n))
        except ValueError:
            pass
        raise ConfigError(f"cannot parse grid {text!r}; use linear:a:b:n, log10:e0:e1:n or list:v1,v2")

    def validate(self, axis: str):
        if self.kind in ("linear", "log10"):
            if self.count < 2:
                raise ConfigError(f"axis {axis!r}: grid count must be >= 2, got {self.count}")
            if not (np.isfinite(self.start) and np.isfinite(self.stop)):
                raise ConfigError(f"axis {axis!r}: grid bounds must be finite")
        elif self.kind == "list":
            if not self.points:
                raise ConfigError(f"axis {axis!r}: explicit grid is empty")
            if not all(np.isfinite(self.points)):
                raise ConfigError(f"axis {axis!r}: grid values must be finite")
        else:
            raise ConfigError(f"axis {axis!r}: unknown grid kind {self.kind!r}")

    def values(self) -> np.ndarray:
        if self.kind == "linear":
            return np.linspace(self.start, self.stop, self.count)
        if self.kind == "log10":
            return np.logspace(self.start, self.stop, self.count)
        return np.array(self.points, dtype=np.float64)

    def as_dict(self) -> dict:
        if self.kind == "list":
            return {"kind": "list", "values": list(self.points)}
        return {"kind": self.kind, "start": self.start, "stop": self.stop, "count": self.count}

    @classmethod
    def from_dict(cls, doc: Mapping) -> "Grid":
        if doc.get("kind") == "list":
            return cls.explicit(doc["values"])
        return cls(doc["kind"], float(doc["start"]), float(doc["stop"]), int(doc["count"]))


@dataclass(frozen=True)
class Axis:
    name: str
    grid: Grid

    @property
    def fields(self) -> tuple[str, ...]:
        return DERIVED_AXES.get(self.name, (self.name,))


@dataclass(frozen=True)
class Variant:
    label: str
    overrides: Mapping[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep. ``variants`` empty means a single run labelled ``base``."""

    base: NetworkParams
    axes: tuple[Axis, ...]
    outputs: tuple[str, ...] = ("EN_a_b1", "EN_a_b2", "stable")
    variants: tuple[Variant, ...] = ()
    name: str = "sweep"
    notes: str = ""

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(self.axes))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "variants", tuple(self.variants))

    def variant_params(self) -> list[tuple[str, NetworkParams]]:
        if not self.variants:
            return [("base", self.base)]
        out = []
        for var in self.variants:
            for key in var.overrides:
                if key not in FIELD_NAMES:
                    raise ConfigError(f"variant {var.label!r}: unknown parameter {key!r}")
            try:
                out.append((var.label, self.base.replace(**dict(var.overrides))))
            except OptodarkError as exc:
                raise ConfigError(f"variant {var.label!r}: {exc}") from exc
        return out

    def select(self, label: str) -> "SweepSpec":
        """Single-variant spec with the variant's overrides folded into ``base``."""
        for lab, params in self.variant_params():
            if lab == label:
                return dataclasses.replace(self, base=params, variants=())
        raise ConfigError(f"no variant {label!r} in {self.name}; have {[v for v, _ in self.variant_params()]}")

    def validate(self):
        if not 1 <= len(self.axes) <= 2:
            raise ConfigError(f"a sweep needs 1 or 2 axes, got {len(self.axes)}")
        seen: set[str] = set()
        for ax in self.axes:
            if ax.name == "aux_present" or (ax.name not in FLOAT_FIELDS and ax.name not in DERIVED_AXES):
                raise ConfigError(
                    f"invalid axis {ax.name!r}; expected a numeric parameter "
                    f"({', '.join(FLOAT_FIELDS)}) or one of {', '.join(DERIVED_AXES)}"
                )
            if seen & set(ax.fields):
                raise ConfigError(f"axis {ax.name!r} overlaps another axis")
            seen |= set(ax.fields)
            ax.grid.validate(ax.name)
        if not self.outputs:
            raise ConfigError("no outputs requested")
        if len(set(self.outputs)) != len(self.outputs):
            raise ConfigError("duplicate outputs")
        labels = [v.label for v in self.variants]
        if len(set(labels)) != len(labels):
            raise ConfigError("duplicate variant labels")
        for lab in labels:
            if not re.fullmatch(r"[A-Za-z0-9_.+-]+", lab):
                raise ConfigError(f"variant label {lab!r} is not filename-safe")
        for lab, params in self.variant_params():
            modes = params.modes
            for out in self.outputs:
                if out in _SCALAR_OUTPUTS:
                    continue
                m = _PAIR_OUTPUT.match(out)
                if not m:
                    raise ConfigError(
                        f"unknown output {out!r}; expected one of {', '.join(_SCALAR_OUTPUTS)} "
                        "or EN_<mode>_<mode> / sigma_<mode>_<mode>"
                    )
                first, second = m.group(2), m.group(3)
                if first == second or first not in modes or second not in modes:
                    raise ConfigError(f"output {out!r} not available for variant {lab!r} (modes {modes})")
            if "gs2_over_gs1" in (a.name for a in self.axes) and "gs1" not in (a.name for a in self.axes):
                if params.gs1 == 0.0:
                    raise ConfigError("axis gs2_over_gs1 needs a nonzero gs1")
        return self

    @property
    def grid_shape(self) -> tuple[int, ...]:
        return tuple(len(ax.grid.values()) for ax in self.axes)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "base": self.base.as_dict(),
            "axes": [{"name": a.name, "grid": a.grid.as_dict()} for a in self.axes],
            "outputs": list(self.outputs),
            "variants": [{"label": v.label, "overrides": dict(v.overrides)} for v in self.variants],
            "notes": self.notes,
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "SweepSpec":
        try:
            base = NetworkParams(**doc.get("base", {}))
            axes = tuple(Axis(a["name"], Grid.from_dict(a["grid"])) for a in doc["axes"])
            variants = tuple(Variant(v["label"], dict(v.get("overrides", {}))) for v in doc.get("variants", ()))
            return cls(
                base=base,
                axes=axes,
                outputs=tuple(doc.get("outputs", cls.outputs)),
                variants=variants,
                name=doc.get("name", "sweep"),
                notes=doc.get("notes", ""),
            )
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"malformed sweep spec: {exc}") from exc


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def _grid_columns(spec: SweepSpec, params: NetworkParams):
    values = [ax.grid.values() for ax in spec.axes]
    mesh = np.meshgrid(*values, indexing="ij")
    flat = [m.reshape(-1) for m in mesh]
    size = flat[0].shape[0]
    cols = {k: np.full(size, getattr(params, k), dtype=np.float64) for k in FLOAT_FIELDS}
    ratio = None
    for ax, vals in zip(spec.axes, flat):
        if ax.name == "gs2_over_gs1":
            ratio = vals
            continue
        for f in ax.fields:
            cols[f] = vals.copy()
    if ratio is not None:
        cols["gs2"] = ratio * cols["gs1"]
    return flat, cols


def _point_errors(cols: Mapping[str, np.ndarray], aux_present: bool) -> np.ndarray:
    """Per-point validation message ('' when the point is valid)."""
    size = cols["omega1"].shape[0]
    msg = np.full(size, "", dtype=object)
    for k in FLOAT_FIELDS:
        bad = ~np.isfinite(cols[k]) & (msg == "")
        msg[bad] = f"{k}: must be finite"
    for k in ("omega1", "omega2", "gamma1", "gamma2", "kappa", "kappa_s"):
        bad = ~(cols[k] > 0.0) & (msg == "")
        msg[bad] = f"{k}: must be > 0"
    for k in ("nbar1", "nbar2"):
        bad = ~(cols[k] >= 0.0) & (msg == "")
        msg[bad] = f"{k}: must be >= 0"
    if not aux_present:
        for k in ("gs1", "gs2", "j_hop"):
            bad = (cols[k] != 0.0) & (msg == "")
            msg[bad] = f"{k}: must be 0 when the auxiliary cavity is absent"
    return msg


def _solve_stack(a, q, rtol):
    """Solve a stack, refining once; returns (V, ok-mask)."""
    try:
        v = kernels.solve_lyapunov_batch(a, q)
    except np.linalg.LinAlgError:
        v = np.full_like(a, np.nan)
        for p in range(a.shape[0]):
            try:
                v[p] = kernels.solve_lyapunov_batch_numpy(a[p : p + 1], q[p : p + 1])[0]
            except np.linalg.LinAlgError:
                pass
    at = np.swapaxes(a, -1, -2)
    tol = rtol * np.abs(q).max(axis=(-1, -2))
    res = a @ v + v @ at + q
    bad = ~(np.abs(res).max(axis=(-1, -2)) <= tol)
    fixable = bad & np.all(np.isfinite(v), axis=(-1, -2))
    if fixable.any():
        idx = np.nonzero(fixable)[0]
        try:
            v[idx] = v[idx] + kernels.solve_lyapunov_batch(a[idx], res[idx])
        except np.linalg.LinAlgError:
            pass
        res = a @ v + v @ at + q
        bad = ~(np.abs(res).max(axis=(-1, -2)) <= tol)
    return v, ~bad


def _evaluate_chunk(payload):
    cols, aux_present, outputs, margin, rtol, clamp = payload
    size = cols["omega1"].shape[0]
    modes = MODES_FULL if aux_present else MODES_THREE
    result = {out: np.full(size, np.nan) for out in outputs}
    status = np.full(size, "ok", dtype=object)
    message = _point_errors(cols, aux_present)
    status[message != ""] = "error"

    m1, m2 = dark_mode_values(
        cols["omega1"], cols["omega2"], cols["g1"], cols["g2"], cols["gs1"], cols["gs2"], cols["eta_hop"]
    )
    valid = np.nonzero(status == "ok")[0]
    a, q = drift_diffusion_batch({k: c[valid] for k, c in cols.items()}, aux_present)
    max_re = np.full(size, np.nan)
    if valid.size:
        max_re[valid] = max_real_parts(a)
    label = np.full(size, "", dtype=object)
    label[valid] = classify_max_real(max_re[valid], margin) if valid.size else label[valid]
    unstable = valid[label[valid] != "stable"]
    status[unstable] = "unstable"
    message[unstable] = np.where(label[unstable] == "marginal", "marginal stability", "")

    for name, arr in (("max_re", max_re), ("m1", m1), ("m2", m2)):
        if name in result:
            result[name][:] = arr
    if "stable" in result:
        result["stable"][valid] = (label[valid] == "stable").astype(np.float64)

    pair_outputs = [o for o in outputs if _PAIR_OUTPUT.match(o)]
    keep = label[valid] == "stable"
    stable = valid[keep]
    if stable.size and pair_outputs:
        v, ok = _solve_stack(a[keep], q[keep], rtol)
        failed = stable[~ok]
        status[failed] = "error"
        message[failed] = "Lyapunov solve failed or missed its residual tolerance"
        pairs = sorted({_PAIR_OUTPUT.match(o).group(2, 3) for o in pair_outputs})
        idx = np.array([[modes.index(f), modes.index(s)] for f, s in pairs], dtype=np.int64)
        good = stable[ok]
        sigma, log_neg, code = kernels.log_negativity_batch(v[ok], idx, clamp)
        for k, (f, s) in enumerate(pairs):
            for kind, arr in (("EN", log_neg), ("sigma", sigma)):
                name = f"{kind}_{f}_{s}"
                if name in result:
                    result[name][good] = arr[:, k]
            bad = good[code[:, k] != kernels.NEG_OK]
            status[bad] = "error"
            message[bad] = f"unphysical two-mode covariance for pair {f}_{s}"
        bad_points = np.nonzero(status != "ok")[0]
        for name in pair_outputs:
            result[name][bad_points] = np.nan
    return result, status, message


def _chunks(size: int, workers: int) -> list[slice]:
    n = max(1, min(workers, size))
    bounds = np.linspace(0, size, n + 1).astype(int)
    return [slice(bounds[i], bounds[i + 1]) for i in range(n)]


@dataclass
class SweepResult:
    """Per-point outputs for every variant, stored flat in C (row-major) grid order."""

    spec: SweepSpec
    axis_values: tuple[np.ndarray, ...]
    data: dict[str, dict[str, np.ndarray]]
    status: dict[str, np.ndarray]
    message: dict[str, np.ndarray]
    elapsed: float = 0.0
    backend: str = kernels.BACKEND

    @property
    def variants(self) -> list[str]:
        return list(self.data)

    @property
    def grid_shape(self) -> tuple[int, ...]:
        return tuple(len(v) for v in self.axis_values)

    def _variant(self, variant: str | None) -> str:
        if variant is None:
            if len(self.data) != 1:
                raise ConfigError(f"several variants present, pick one of {self.variants}")
            return next(iter(self.data))
        if variant not in self.data:
            raise ConfigError(f"no variant {variant!r}; have {self.variants}")
        return variant

    def values(self, output: str, variant: str | None = None) -> np.ndarray:
        """Output on the grid (shape ``grid_shape``); NaN marks null entries."""
        var = self._variant(variant)
        if output not in self.data[var]:
            raise ConfigError(f"output {output!r} not computed; have {list(self.data[var])}")
        return self.data[var][output].reshape(self.grid_shape)

    def statuses(self, variant: str | None = None) -> np.ndarray:
        return self.status[self._variant(variant)].reshape(self.grid_shape)

    def records(self, variant: str | None = None) -> list[dict]:
        var = self._variant(variant)
        mesh = np.meshgrid(*self.axis_values, indexing="ij")
        flat = [m.reshape(-1) for m in mesh]
        out = []
        for i in range(len(self.status[var])):
            rec = {ax.name: float(vals[i]) for ax, vals in zip(self.spec.axes, flat)}
            for name, arr in self.data[var].items():
                x = arr[i]
                rec[name] = None if np.isnan(x) else float(x)
            rec["status"] = self.status[var][i]
            rec["message"] = self.message[var][i]
            out.append(rec)
        return out

    def to_csv(self, target=None, variant: str | None = None) -> str:
        """Long-form CSV, one row per grid point; returns the text too."""
        var = self._variant(variant)
        outputs = list(self.spec.outputs)
        header = [ax.name for ax in self.spec.axes] + outputs + ["status", "message"]
        buf = io.StringIO(newline="")
        buf.write(",".join(header) + "\n")
        mesh = np.meshgrid(*self.axis_values, indexing="ij")
        flat = [m.reshape(-1) for m in mesh]
        for i in range(len(self.status[var])):
            row = [_fmt(vals[i]) for vals in flat]
            for name in outputs:
                x = self.data[var][name][i]
                if name == "stable" and not np.isnan(x):
                    row.append("1" if x else "0")
                else:
                    row.append(_fmt(x))
            row.append(str(self.status[var][i]))
            row.append(_csv_text(self.message[var][i]))
            buf.write(",".join(row) + "\n")
        text = buf.getvalue()
        if target is not None:
            Path(target).write_bytes(text.encode("utf-8"))
        return text

    def manifest(self, files: Mapping[str, str] | None = None, timing: bool = True) -> dict:
        doc = {
            "format": "optodark-sweep",
            "format_version": CSV_FORMAT_VERSION,
            "artifact_version": __version__,
            "name": self.spec.name,
            "spec": self.spec.as_dict(),
            "grid_shape": list(self.grid_shape),
            "columns": [ax.name for ax in self.spec.axes] + list(self.spec.outputs) + ["status", "message"],
            "variants": self.variants,
            "files": dict(files or {}),
            "counts": {
                v: {s: int((self.status[v] == s).sum()) for s in ("ok", "unstable", "error")}
                for v in self.variants
            },
        }
        if timing:
            doc["timing"] = {"seconds": round(self.elapsed, 6), "backend": self.backend}
        return doc


def _fmt(x) -> str:
    x = float(x)
    if np.isnan(x):
        return ""
    return f"{x:.17g}"


def _csv_text(s: str) -> str:
    s = str(s)
    if any(c in s for c in ',"\n'):
        return '"' + s.replace('"', '""') + '"'
    return s


def run_sweep(
    spec: SweepSpec,
    workers: int = 1,
    margin: float = DEFAULT_STABILITY_MARGIN,
    rtol: float = DEFAULT_RESIDUAL_RTOL,
    clamp: float = DEFAULT_CLAMP,
) -> SweepResult:
    """Evaluate every grid point of every variant.

    The spec is validated before any computation. With ``workers > 1`` the
    flattened grid is split into contiguous chunks evaluated in a process
    pool and merged back in grid order.
    """
    spec.validate()
    if workers < 1:
        raise ConfigError("workers must be >= 1")
    t0 = time.perf_counter()
    data, status, message = {}, {}, {}
    axis_values: tuple[np.ndarray, ...] = ()
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for label, params in spec.variant_params():
            axis_values, cols = _grid_columns(spec, params)
            axis_values = tuple(ax.grid.values() for ax in spec.axes)
            size = cols["omega1"].shape[0]
            payloads = [
                ({k: c[s] for k, c in cols.items()}, params.aux_present, spec.outputs, margin, rtol, clamp)
                for s in _chunks(size, workers)
            ]
            parts = list(pool.map(_evaluate_chunk, payloads)) if pool else [_evaluate_chunk(p) for p in payloads]
            data[label] = {o: np.concatenate([p[0][o] for p in parts]) for o in spec.outputs}
            status[label] = np.concatenate([p[1] for p in parts])
            message[label] = np.concatenate([p[2] for p in parts])
    finally:
        if pool:
            pool.shutdown()
    return SweepResult(spec, axis_values, data, status, message, time.perf_counter() - t0)


def write_result(result: SweepResult, out_dir: str | Path, stem: str | None = None, timing: bool = True) -> list[Path]:
    """Write ``<stem>__<variant>.csv`` files plus ``<stem>.json`` manifest."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = stem or result.spec.name
    files = {}
    written = []
    for var in result.variants:
        path = out_dir / f"{stem}__{var}.csv"
        result.to_csv(path, var)
        files[var] = path.name
        written.append(path)
    manifest = out_dir / f"{stem}.json"
    manifest.write_bytes((json.dumps(result.manifest(files, timing), indent=2) + "\n").encode("utf-8"))
    written.append(manifest)
    return written


# ---------------------------------------------------------------------------
# figure presets
# ---------------------------------------------------------------------------

# caption parameter sets; delta_s doubles as the a_s detuning in both models
FIG2_BASE = NetworkParams(
    omega1=1.0, omega2=1.0, gamma1=1e-5, gamma2=1e-5, kappa=0.1, kappa_s=0.1,
    delta_c=1.0, delta_s=1.0, g1=0.15, g2=0.15, gs1=0.1, nbar1=100.0, nbar2=100.0,
)
FIG3_BASE = FIG2_BASE
FIG4_BASE = FIG2_BASE
FIG5_BASE = NetworkParams(
    omega1=1.0, omega2=1.0, gamma1=0.1, gamma2=0.1, kappa=0.1, kappa_s=0.1,
    delta_c=3.0, delta_s=5.0, g1=0.15, g2=0.15, gs1=0.05, nbar1=0.0, nbar2=0.0,
)
FIG6_BASE = NetworkParams(
    omega1=1.0, omega2=1.0, gamma1=1e-5, gamma2=1e-5, kappa=0.1, kappa_s=0.1,
    delta_c=1.0, delta_s=1.0, g1=0.15, g2=0.15, gs1=0.1, gs2=0.1,
    j_hop=0.05, eta_hop=0.05, nbar1=100.0, nbar2=100.0,
)
FIG7_BASE = FIG6_BASE
FIG11_BASE = FIG2_BASE

_THREE_MODE = {"aux_present": False, "gs1": 0.0, "gs2": 0.0, "j_hop": 0.0}


def _gs1_variants(values):
    return tuple(Variant(f"gs1_{v:g}", {"gs1": v}) for v in values)


def _fig6_variants(group):
    return tuple(
        Variant(configuration_slug(c), _switch_overrides(c)) for c in group
    )


def _switch_overrides(channels):
    reduced = switch_off(FIG6_BASE, channels)
    return {k: getattr(reduced, k) for k in ("j_hop", "eta_hop", "gs1", "gs2") if getattr(reduced, k) != getattr(FIG6_BASE, k)}


def _fig2(pair, two_d):
    if two_d:
        return SweepSpec(
            base=FIG2_BASE,
            axes=(
                Axis("delta_s", Grid.linear(0.5, 1.5, DEFAULT_2D_POINTS)),
                Axis("gs1", Grid.linear(0.0, 0.1, DEFAULT_2D_POINTS)),
            ),
            outputs=(f"EN_{pair}", "stable"),
            notes="axis ranges read from the plot",
        )
    return SweepSpec(
        base=FIG2_BASE,
        axes=(Axis("delta_s", Grid.linear(0.5, 1.5)),),
        outputs=(f"EN_{pair}", "stable"),
        variants=_gs1_variants((0.0, 0.05, 0.1)),
        notes="delta_s range read from the plot",
    )


def _fig3(pair):
    return SweepSpec(
        base=FIG3_BASE,
        axes=(Axis("omega2", Grid.linear(0.8, 1.2)),),
        outputs=(f"EN_{pair}", "stable"),
        variants=_gs1_variants((0.0, 0.02, 0.04, 0.06, 0.08, 0.1)),
        notes="omega2/omega1 range [0.8, 1.2] read from the plot",
    )


def _fig4(axis):
    base = FIG4_BASE
    if axis == "nbar":
        ax = Axis("nbar", Grid.log10(-3.0, 3.0))
    else:
        ax = Axis("kappa", Grid.linear(0.01, 1.0))
    return SweepSpec(
        base=base,
        axes=(ax,),
        outputs=("EN_a_b1", "EN_a_b2", "stable"),
        variants=_gs1_variants((0.0, 0.1)),
        notes="kappa range read from the plot" if axis == "kappa" else "",
    )


def _fig5(axis):
    if axis == "nbar":
        base = FIG5_BASE.replace(delta_c=3.0)
        ax = Axis("nbar", Grid.log10(-4.0, -1.0))
    else:
        base = FIG5_BASE.replace(nbar1=0.0, nbar2=0.0)
        ax = Axis("delta_c", Grid.linear(0.5, 6.0))
    return SweepSpec(
        base=base,
        axes=(ax,),
        outputs=("EN_b1_b2", "stable"),
        variants=_gs1_variants((0.0, 0.05)),
        notes="axis range read from the plot",
    )


def _fig6(pair, group):
    return SweepSpec(
        base=FIG6_BASE,
        axes=(Axis("delta_s", Grid.linear(0.5, 1.5)),),
        outputs=(f"EN_{pair}", "m1", "m2", "stable"),
        variants=_fig6_variants(group),
        notes="delta_s range read from the plot",
    )


def _fig7(pair):
    if pair is None:
        return SweepSpec(
            base=FIG7_BASE.replace(gs1=0.1),
            axes=(Axis("gs2_over_gs1", Grid.linear(0.0, 2.0)),),
            outputs=("EN_a_b1", "EN_a_b2", "m2", "stable"),
            notes="gs1 = 0.1 held fixed; ratio range read from the plot",
        )
    return SweepSpec(
        base=FIG7_BASE,
        axes=(
            Axis("gs1", Grid.linear(0.0, 0.15, DEFAULT_2D_POINTS)),
            Axis("gs2", Grid.linear(0.0, 0.15, DEFAULT_2D_POINTS)),
        ),
        outputs=(f"EN_{pair}", "stable"),
        notes="coupling range 0-0.15 as quoted in the text",
    )


def _fig11(nbar):
    return SweepSpec(
        base=FIG11_BASE.replace(nbar1=nbar, nbar2=nbar),
        axes=(Axis("kappa", Grid.linear(0.05, 1.0)),),
        outputs=("EN_a_b1", "EN_a_b2", "stable"),
        variants=(Variant("three_mode", _THREE_MODE), Variant("four_mode", {"gs1": 0.1})),
        notes="kappa range read from the plot",
    )


_ONE_OFF = FIG6_CONFIGURATIONS[:4]
_TWO_OFF = FIG6_CONFIGURATIONS[4:10]
_THREE_OFF = FIG6_CONFIGURATIONS[10:]

_PRESETS = {
    "fig2a": lambda: _fig2("a_b1", True),
    "fig2b": lambda: _fig2("a_b2", True),
    "fig2c": lambda: _fig2("a_b1", False),
    "fig2d": lambda: _fig2("a_b2", False),
    "fig3a": lambda: _fig3("a_b1"),
    "fig3b": lambda: _fig3("a_b2"),
    "fig4a": lambda: _fig4("nbar"),
    "fig4b": lambda: _fig4("kappa"),
    "fig5a": lambda: _fig5("nbar"),
    "fig5b": lambda: _fig5("delta_c"),
    "fig6a": lambda: _fig6("a_b1", _ONE_OFF),
    "fig6b": lambda: _fig6("a_b2", _ONE_OFF),
    "fig6c": lambda: _fig6("a_b1", _TWO_OFF),
    "fig6d": lambda: _fig6("a_b2", _TWO_OFF),
    "fig6e": lambda: _fig6("a_b1", _THREE_OFF),
    "fig6f": lambda: _fig6("a_b2", _THREE_OFF),
    "fig7a": lambda: _fig7("a_b1"),
    "fig7b": lambda: _fig7("a_b2"),
    "fig7c": lambda: _fig7(None),
    "fig11a": lambda: _fig11(0.0),
    "fig11b": lambda: _fig11(100.0),
}

PRESET_NAMES = tuple(_PRESETS)


def figure_preset(name: str) -> SweepSpec:
    """Sweep spec that regenerates one figure panel, curve variants included."""
    try:
        builder = _PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}") from None
    return dataclasses.replace(builder(), name=name)
