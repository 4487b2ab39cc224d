"""Scenario configuration, dispatch, CSV emission and parameter sweeps.

Configs are flat JSON objects with an explicit per-mode schema; unknown and
misplaced keys are rejected up front so a typo in a physics parameter can
never run silently.  All numeric output is printed with 17 significant
digits, which round-trips float64 exactly and keeps regression diffs
meaningful.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .engine import (
    PhysicsError,
    SimulationTrace,
    SurvivalRecord,
    ZenoSchedule,
    run_tunneling,
    run_unitary,
    run_zeno,
)
from .ghz import entangling_time, run_ghz_protocol
from .models import (
    DEFAULT_ETA,
    DEFAULT_PHI,
    ModelSpec,
    build_three_level,
    build_tunneling,
    build_two_level,
)

__all__ = [
    "ConfigError",
    "ScenarioConfig",
    "SweepResult",
    "MODES",
    "SWEEP_AXES",
    "load_config",
    "validate_config",
    "find_n_crit",
    "sweep",
    "emit_trace_csv",
    "emit_sweep_csv",
    "run_scenario",
]

MODES = (
    "two_level_zeno",
    "three_level_zeno",
    "no_zeno",
    "tunneling",
    "ghz",
    "sweep",
    "ncrit",
)

SWEEP_AXES = ("n", "gamma", "omega", "dt")

_FLOAT_KEYS = {"omega", "phi", "eta", "gamma", "v", "g", "g_tilde", "dt", "t_total"}
_INT_KEYS = {"n", "samples", "steps", "seed", "n_max"}
_STR_KEYS = {"mode", "out", "axis"}
_LIST_KEYS = {"axis_values"}

_COMMON_KEYS = {"mode", "seed"}

# Keys each mode accepts beyond the common ones; ncrit has no file output,
# so it takes no `out`.
_MODE_KEYS = {
    "two_level_zeno": {"v", "n", "dt", "t_total", "out"},
    "three_level_zeno": {"omega", "phi", "eta", "n", "dt", "t_total", "out"},
    "no_zeno": {"omega", "phi", "eta", "t_total", "samples", "out"},
    "tunneling": {"omega", "eta", "gamma", "t_total", "steps", "out"},
    "ghz": {"g", "g_tilde", "out"},
    "sweep": {"axis", "axis_values", "omega", "phi", "eta", "gamma", "n", "t_total", "out"},
    "ncrit": {"omega", "phi", "eta", "t_total", "n_max"},
}

# Hard requirements per mode; zeno modes additionally need exactly one of
# dt / t_total, and sweep needs axis-dependent keys (checked in code).
_MODE_REQUIRED = {
    "two_level_zeno": {"v", "n"},
    "three_level_zeno": {"omega", "n"},
    "no_zeno": {"omega", "t_total"},
    "tunneling": {"omega", "gamma", "t_total"},
    "ghz": {"g", "g_tilde"},
    "sweep": {"axis", "axis_values"},
    "ncrit": {"omega", "t_total", "n_max"},
}

_SWEEP_AXIS_REQUIRED = {
    "n": {"omega", "t_total"},
    "gamma": {"omega", "t_total"},
    "omega": {"t_total"},
    "dt": {"omega", "n"},
}


class ConfigError(ValueError):
    """Invalid scenario configuration."""


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated scenario: mode, physical parameters and output plan."""

    mode: str
    model: ModelSpec
    schedule: ZenoSchedule | None = None
    t_total: float | None = None
    n: int | None = None
    samples: int = 101
    steps: int | None = None
    output_path: str | None = None
    seed: int = 0
    axis: str | None = None
    axis_values: tuple[float, ...] | None = None
    n_max: int | None = None
    provided: frozenset = field(default_factory=frozenset)


@dataclass
class SweepResult:
    """One survival record per grid point, in grid order."""

    axis: str
    grid: tuple
    records: list


def _coerce_float(key: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"key {key!r} must be a number, got {value!r}")
    out = float(value)
    if not math.isfinite(out):
        raise ConfigError(f"key {key!r} must be finite, got {value!r}")
    return out


def _coerce_int(key: str, value) -> int:
    if isinstance(value, bool):
        raise ConfigError(f"key {key!r} must be an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    raise ConfigError(f"key {key!r} must be an integer, got {value!r}")


def _coerce(key: str, value):
    if key in _FLOAT_KEYS:
        return _coerce_float(key, value)
    if key in _INT_KEYS:
        return _coerce_int(key, value)
    if key in _STR_KEYS:
        if not isinstance(value, str):
            raise ConfigError(f"key {key!r} must be a string, got {value!r}")
        return value
    if key in _LIST_KEYS:
        if not isinstance(value, list) or not value:
            raise ConfigError(f"key {key!r} must be a non-empty list of numbers")
        return tuple(_coerce_float(key, x) for x in value)
    raise ConfigError(f"unknown config key: {key!r}")


def _resolve_schedule(mode: str, raw: dict) -> ZenoSchedule:
    has_dt = "dt" in raw
    has_t = "t_total" in raw
    if has_dt == has_t:
        raise ConfigError(f"mode {mode!r} needs exactly one of 'dt' or 't_total'")
    n = raw["n"]
    dt = raw["dt"] if has_dt else raw["t_total"] / n
    try:
        return ZenoSchedule(n=n, dt=dt)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def validate_config(raw: dict) -> ScenarioConfig:
    """Validate a flat key-value mapping against the per-mode schema."""
    if not isinstance(raw, dict):
        raise ConfigError("config must be a flat JSON object")
    if "mode" not in raw:
        raise ConfigError(f"missing required key 'mode'; one of {', '.join(MODES)}")
    mode = raw["mode"]
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}; valid modes: {', '.join(MODES)}")

    allowed = _COMMON_KEYS | _MODE_KEYS[mode]
    for key in raw:
        if key not in _FLOAT_KEYS | _INT_KEYS | _STR_KEYS | _LIST_KEYS:
            raise ConfigError(f"unknown config key: {key!r}")
        if key not in allowed:
            raise ConfigError(f"key {key!r} is not accepted by mode {mode!r}")
    values = {k: _coerce(k, v) for k, v in raw.items()}

    missing = _MODE_REQUIRED[mode] - values.keys()
    if missing:
        raise ConfigError(
            f"mode {mode!r} requires keys {sorted(_MODE_REQUIRED[mode])}; "
            f"missing {sorted(missing)}"
        )

    schedule = None
    t_total = values.get("t_total")
    axis = values.get("axis")
    axis_values = values.get("axis_values")

    if mode in ("two_level_zeno", "three_level_zeno"):
        schedule = _resolve_schedule(mode, values)
        t_total = schedule.t_total
    if mode == "ghz" and values["g"] == values["g_tilde"]:
        raise ConfigError("ghz requires g != g_tilde (entangling time diverges)")
    if mode == "sweep":
        if axis not in SWEEP_AXES:
            raise ConfigError(
                f"invalid sweep axis {axis!r}; valid axes: {', '.join(SWEEP_AXES)}"
            )
        need = _SWEEP_AXIS_REQUIRED[axis] - values.keys()
        if need:
            raise ConfigError(f"sweep over {axis!r} requires keys {sorted(need)}")
        diffs = np.diff(axis_values)
        if not (np.all(diffs > 0) or np.all(diffs < 0)):
            raise ConfigError("axis_values must be strictly monotone")
        _validate_axis_grid(axis, axis_values)

    if values.get("samples", 101) < 2:
        raise ConfigError("samples must be >= 2")
    for key in ("n", "steps", "n_max"):
        if key in values and values[key] < 1:
            raise ConfigError(f"{key} must be >= 1")
    if t_total is not None and t_total <= 0:
        raise ConfigError("t_total must be positive")

    try:
        model = ModelSpec(
            omega=values.get("omega", 0.0),
            phi=values.get("phi", DEFAULT_PHI),
            eta=values.get("eta", DEFAULT_ETA),
            gamma=values.get("gamma", 0.0),
            v=values.get("v", 0.0),
            g=values.get("g", 0.0),
            g_tilde=values.get("g_tilde", 0.0),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    return ScenarioConfig(
        mode=mode,
        model=model,
        schedule=schedule,
        t_total=t_total,
        n=values.get("n"),
        samples=values.get("samples", 101),
        steps=values.get("steps"),
        output_path=values.get("out"),
        seed=values.get("seed", 0),
        axis=axis,
        axis_values=axis_values,
        n_max=values.get("n_max"),
        provided=frozenset(values.keys()),
    )


def _validate_axis_grid(axis: str, grid) -> None:
    for x in grid:
        if axis == "n" and (x < 1 or not float(x).is_integer()):
            raise ConfigError(f"n grid values must be positive integers, got {x!r}")
        if axis == "dt" and x <= 0:
            raise ConfigError(f"dt grid values must be positive, got {x!r}")
        if axis in ("omega", "gamma") and x < 0:
            raise ConfigError(f"{axis} grid values must be >= 0, got {x!r}")


def load_config(path) -> ScenarioConfig:
    """Parse and validate a JSON scenario file."""
    return validate_config(_load_raw(path))


def _load_raw(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path} must be a flat JSON object")
    return raw


def _ground_state(dim: int) -> np.ndarray:
    psi = np.zeros(dim, dtype=complex)
    psi[0] = 1.0
    return psi


def find_n_crit(model: ModelSpec, t_total: float, n_max: int,
                hamiltonian=None) -> int | None:
    """Smallest measurement count whose Zeno survival matches or beats the
    unmeasured single-shot survival at the same total time; None if no
    n <= n_max qualifies.

    Linear scan from n = 1: the survival is not monotone at small n in
    general, so bisection would be unsound.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be a positive integer, got {n_max!r}")
    h = hamiltonian
    if h is None:
        h = build_three_level(model.omega, model.phi, model.eta)
    psi0 = _ground_state(np.asarray(h).shape[0])
    baseline = float(run_unitary(h, psi0, t_total, samples=2).survival[-1])
    for n in range(1, n_max + 1):
        _, record = run_zeno(h, psi0, ZenoSchedule(n=n, dt=t_total / n))
        if record.w_zeno >= baseline:
            return n
    return None


def _sweep_point(cfg: ScenarioConfig, axis: str, value: float) -> SurvivalRecord:
    model = cfg.model
    omega = value if axis == "omega" else model.omega
    gamma = value if axis == "gamma" else (model.gamma if "gamma" in cfg.provided else None)
    n = int(value) if axis == "n" else cfg.n
    t_total = n * value if axis == "dt" else cfg.t_total

    record = SurvivalRecord()
    h = build_three_level(omega, model.phi, model.eta)
    psi0 = _ground_state(3)
    record.w_no_zeno = float(run_unitary(h, psi0, t_total, samples=2).survival[-1])
    if n is not None:
        dt = value if axis == "dt" else t_total / n
        _, zrec = run_zeno(h, psi0, ZenoSchedule(n=n, dt=dt))
        record.w_zeno = zrec.w_zeno
        record.n = n
    if gamma is not None:
        h_nh = build_tunneling(omega, model.eta, gamma)
        _, trec = run_tunneling(h_nh, psi0, t_total, steps=cfg.steps)
        record.w_tunnel = trec.w_tunnel
    return record


def sweep(cfg: ScenarioConfig) -> SweepResult:
    """Run the engine once per grid point along the configured axis.

    Each record carries every survival variant the configuration defines:
    w_no_zeno always, w_zeno when a measurement count is available, w_tunnel
    when a tunneling rate is available.  Points run in grid order.
    """
    if cfg.mode != "sweep":
        raise ConfigError(f"sweep needs a sweep-mode config, got {cfg.mode!r}")
    records = [_sweep_point(cfg, cfg.axis, x) for x in cfg.axis_values]
    return SweepResult(axis=cfg.axis, grid=tuple(cfg.axis_values), records=records)


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _write_lines(path, lines) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"failed writing {path}: {exc}") from exc


def emit_trace_csv(trace: SimulationTrace, path) -> None:
    """Write a trace as `t,p1,p2,p3,W` rows (LF newlines, 17 significant
    digits, no trailing blank line); two-level traces pad p3 with zero."""
    n_rows, dim = trace.populations.shape
    if dim > 3:
        raise ValueError(f"trace CSV holds at most three levels, got dim {dim}")
    lines = ["t,p1,p2,p3,W"]
    for k in range(n_rows):
        pops = list(trace.populations[k]) + [0.0] * (3 - dim)
        lines.append(
            f"{_fmt(trace.times[k])},{_fmt(pops[0])},{_fmt(pops[1])},"
            f"{_fmt(pops[2])},{_fmt(trace.survival[k])}"
        )
    _write_lines(path, lines)


def emit_sweep_csv(result: SweepResult, path) -> None:
    """Write sweep records as `axis_value,w_zeno,w_no_zeno,w_tunnel` rows;
    undefined variants are left empty."""
    lines = ["axis_value,w_zeno,w_no_zeno,w_tunnel"]
    for value, rec in zip(result.grid, result.records):
        cells = [_fmt(value)]
        for w in (rec.w_zeno, rec.w_no_zeno, rec.w_tunnel):
            cells.append("" if w is None else _fmt(w))
        lines.append(",".join(cells))
    _write_lines(path, lines)


def _emit_ghz_csv(psi: np.ndarray, path) -> None:
    lines = ["basis,re,im,p"]
    for k, amp in enumerate(psi):
        lines.append(
            f"{k:03b},{_fmt(amp.real)},{_fmt(amp.imag)},{_fmt(abs(amp) ** 2)}"
        )
    _write_lines(path, lines)


def _dispatch(cfg: ScenarioConfig) -> str:
    model = cfg.model
    if cfg.mode == "two_level_zeno":
        trace, record = run_zeno(build_two_level(model.v), _ground_state(2), cfg.schedule)
        if cfg.output_path:
            emit_trace_csv(trace, cfg.output_path)
        return f"mode=two_level_zeno T={_fmt(cfg.t_total)} W={_fmt(record.w_zeno)}"

    if cfg.mode == "three_level_zeno":
        h = build_three_level(model.omega, model.phi, model.eta)
        trace, record = run_zeno(h, _ground_state(3), cfg.schedule)
        if cfg.output_path:
            emit_trace_csv(trace, cfg.output_path)
        return f"mode=three_level_zeno T={_fmt(cfg.t_total)} W={_fmt(record.w_zeno)}"

    if cfg.mode == "no_zeno":
        h = build_three_level(model.omega, model.phi, model.eta)
        trace = run_unitary(h, _ground_state(3), cfg.t_total, samples=cfg.samples)
        if cfg.output_path:
            emit_trace_csv(trace, cfg.output_path)
        return f"mode=no_zeno T={_fmt(cfg.t_total)} W={_fmt(trace.survival[-1])}"

    if cfg.mode == "tunneling":
        h = build_tunneling(model.omega, model.eta, model.gamma)
        trace, record = run_tunneling(h, _ground_state(3), cfg.t_total, steps=cfg.steps)
        if cfg.output_path:
            emit_trace_csv(trace, cfg.output_path)
        return f"mode=tunneling T={_fmt(cfg.t_total)} W={_fmt(record.w_tunnel)}"

    if cfg.mode == "ghz":
        psi, diag = run_ghz_protocol(model.g, model.g_tilde)
        duration = entangling_time(model.g, model.g_tilde)
        if cfg.output_path:
            _emit_ghz_csv(psi, cfg.output_path)
        return f"mode=ghz T={_fmt(duration)} W={_fmt(diag.fidelity)}"

    if cfg.mode == "sweep":
        result = sweep(cfg)
        if cfg.output_path:
            emit_sweep_csv(result, cfg.output_path)
        last = result.records[-1]
        w = next(
            (x for x in (last.w_zeno, last.w_tunnel, last.w_no_zeno) if x is not None),
            float("nan"),
        )
        t_part = f" T={_fmt(cfg.t_total)}" if cfg.t_total is not None else ""
        return f"mode=sweep axis={result.axis} points={len(result.grid)}{t_part} W={_fmt(w)}"

    if cfg.mode == "ncrit":
        n_crit = find_n_crit(model, cfg.t_total, cfg.n_max)
        if n_crit is None:
            return f"mode=ncrit T={_fmt(cfg.t_total)} n_crit=none"
        h = build_three_level(model.omega, model.phi, model.eta)
        _, record = run_zeno(
            h, _ground_state(3), ZenoSchedule(n=n_crit, dt=cfg.t_total / n_crit)
        )
        return (
            f"mode=ncrit T={_fmt(cfg.t_total)} n_crit={n_crit} W={_fmt(record.w_zeno)}"
        )

    raise ConfigError(f"unknown mode {cfg.mode!r}")


def run_scenario(config_path=None, mode: str | None = None,
                 overrides: dict | None = None) -> int:
    """Run one scenario; returns the process exit status.

    0 success, 1 config error, 2 runtime/physics error, 3 I/O error.
    A config file, CLI-style overrides, or both may be given; overrides win.
    A mode given alongside a config must match the config's own mode.
    """
    try:
        raw = _load_raw(config_path) if config_path is not None else {}
        if mode is not None:
            if "mode" in raw and raw["mode"] != mode:
                raise ConfigError(
                    f"mode mismatch: command says {mode!r}, config says {raw['mode']!r}"
                )
            raw["mode"] = mode
        for key, value in (overrides or {}).items():
            if value is not None:
                raw[key] = value
        cfg = validate_config(raw)
        summary = _dispatch(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except (PhysicsError, ValueError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    print(summary)
    return 0
