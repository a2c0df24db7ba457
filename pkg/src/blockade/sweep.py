"""Parameter-grid evaluation with figure presets.

A sweep evaluates converged steady-state observables over a 1-D or 2-D
linear grid, one row per grid point in row-major order over (axis1, axis2).
Per-point solver failures are recorded in the row status and never abort
the sweep.  Presets bundle the fixed parameters and axes used by the
standard survey figures; ranges the source figures leave unstated are
documented defaults here and remain overridable by the caller.

Grid points are independent solves, so the engine can fan them out over a
process pool; results are always assembled in grid order, making output
independent of the degree of parallelism.  The BLOCKADE_THREADS environment
variable caps the pool size (default: machine CPU count).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from .analytic import DegenerateParametersError, amplitudes_closed_form, g2_analytic
from .model import SystemParams
from .steady import SteadyStateError, converged_steady_state

SWEEPABLE_PARAMS = ("delta", "u", "g", "f", "phi")

_PRESET_IDS = (
    "fig1a",
    "fig1b",
    "fig2a",
    "fig2b",
    "fig2c",
    "fig2d",
    "fig3a",
    "fig3b",
    "fig3c",
    "fig3d",
    "fig3e",
    "fig3f",
    "fig4a",
    "fig4b",
    "fig4c",
    "fig4d",
)


@dataclass(frozen=True)
class GridAxis:
    """One swept parameter: linearly spaced by default, or explicit values.

    min/max/count always describe the grid; when values is set, the points
    are taken verbatim from it (used by presets whose stepped values are not
    evenly spaced).
    """

    param: str
    min: float
    max: float
    count: int
    values: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.param not in SWEEPABLE_PARAMS:
            raise ValueError(
                f"unknown sweep parameter {self.param!r}; expected one of {SWEEPABLE_PARAMS}"
            )
        if not isinstance(self.count, int) or isinstance(self.count, bool):
            raise TypeError(f"count must be an integer, got {self.count!r}")
        if self.count < 2:
            raise ValueError(f"count must be at least 2, got {self.count}")
        if not (math.isfinite(self.min) and math.isfinite(self.max)):
            raise ValueError("axis bounds must be finite")
        if not self.min < self.max:
            raise ValueError(f"min must be below max, got [{self.min}, {self.max}]")
        if self.values is not None:
            values = tuple(float(v) for v in self.values)
            if len(values) != self.count:
                raise ValueError("explicit values must match count")
            if any(b <= a for a, b in zip(values, values[1:])):
                raise ValueError("explicit values must be strictly increasing")
            if values[0] != self.min or values[-1] != self.max:
                raise ValueError("explicit values must span [min, max]")
            object.__setattr__(self, "values", values)

    @classmethod
    def linear(cls, param: str, lo: float, hi: float, count: int) -> "GridAxis":
        return cls(param=param, min=float(lo), max=float(hi), count=count)

    @classmethod
    def explicit(cls, param: str, values) -> "GridAxis":
        values = tuple(float(v) for v in values)
        if len(values) < 2:
            raise ValueError("explicit axis needs at least 2 values")
        return cls(param=param, min=values[0], max=values[-1], count=len(values), values=values)

    def points(self) -> np.ndarray:
        if self.values is not None:
            return np.array(self.values, dtype=float)
        return np.linspace(self.min, self.max, self.count)


@dataclass(frozen=True)
class SweepRow:
    """Observables at one grid point; status FAIL marks a per-point solver failure."""

    axis1_name: str
    axis1_value: float
    axis2_name: str | None
    axis2_value: float | None
    params: SystemParams
    dim: int | None
    n_mean: float | None
    g2: float | None
    lg_n: float | None
    lg_g2: float | None
    g2_analytic: float | None
    status: str


@dataclass(frozen=True)
class SweepResult:
    """All rows of a grid evaluation, row-major over (axis1, axis2)."""

    axes: tuple[GridAxis, ...]
    rows: tuple[SweepRow, ...]
    metadata: dict = field(compare=False)

    def __post_init__(self):
        expected = 1
        for axis in self.axes:
            expected *= axis.count
        if len(self.rows) != expected:
            raise ValueError(f"expected {expected} rows, got {len(self.rows)}")


def _analytic_g2(params: SystemParams) -> float | None:
    try:
        return g2_analytic(amplitudes_closed_form(params))
    except DegenerateParametersError:
        return None


def _evaluate_point(task) -> SweepRow:
    axis1_name, axis1_value, axis2_name, axis2_value, params, tol, max_dim = task
    try:
        _, obs, dim = converged_steady_state(params, tol, max_dim=max_dim)
    except SteadyStateError:
        return SweepRow(
            axis1_name=axis1_name,
            axis1_value=axis1_value,
            axis2_name=axis2_name,
            axis2_value=axis2_value,
            params=params,
            dim=None,
            n_mean=None,
            g2=None,
            lg_n=None,
            lg_g2=None,
            g2_analytic=_analytic_g2(params),
            status="FAIL",
        )
    return SweepRow(
        axis1_name=axis1_name,
        axis1_value=axis1_value,
        axis2_name=axis2_name,
        axis2_value=axis2_value,
        params=params,
        dim=dim,
        n_mean=obs.mean_photon,
        g2=obs.g2,
        lg_n=obs.lg_n,
        lg_g2=obs.lg_g2,
        g2_analytic=_analytic_g2(params),
        status="OK",
    )


def _resolve_workers(workers: int | None) -> int:
    if workers is None:
        env = os.environ.get("BLOCKADE_THREADS", "").strip()
        if env:
            try:
                workers = int(env)
            except ValueError:
                raise ValueError(f"BLOCKADE_THREADS must be an integer, got {env!r}") from None
        else:
            workers = os.cpu_count() or 1
    if workers < 1:
        raise ValueError(f"worker count must be positive, got {workers}")
    return workers


def run_sweep(
    base: SystemParams,
    axes,
    tol: float = 1e-3,
    *,
    max_dim: int = 60,
    workers: int | None = None,
    preset_name: str | None = None,
) -> SweepResult:
    """Evaluate converged steady-state observables over a 1-D or 2-D grid.

    Each grid point overrides base with the axis values and solves at
    growing truncation; rows where the solver fails are marked FAIL instead
    of aborting the sweep.  Rows come back in row-major (axis1, axis2)
    order regardless of worker count.
    """
    axes = tuple(axes)
    if not 1 <= len(axes) <= 2:
        raise ValueError(f"expected one or two axes, got {len(axes)}")
    if any(not isinstance(axis, GridAxis) for axis in axes):
        raise TypeError("axes must be GridAxis instances")
    if len(axes) == 2 and axes[0].param == axes[1].param:
        raise ValueError(f"axes must sweep distinct parameters, both are {axes[0].param!r}")

    # Grid parameters are constructed (and validated) up front so that a bad
    # range, e.g. a negative drive strength, fails fast instead of emitting
    # thousands of FAIL rows.
    tasks = []
    if len(axes) == 1:
        (axis,) = axes
        for value in axis.points():
            params = base.replace(**{axis.param: float(value)})
            tasks.append((axis.param, float(value), None, None, params, tol, max_dim))
    else:
        axis1, axis2 = axes
        for v1 in axis1.points():
            for v2 in axis2.points():
                params = base.replace(**{axis1.param: float(v1), axis2.param: float(v2)})
                tasks.append((axis1.param, float(v1), axis2.param, float(v2), params, tol, max_dim))

    n_workers = _resolve_workers(workers)
    if n_workers == 1 or len(tasks) < 4:
        rows = tuple(_evaluate_point(task) for task in tasks)
    else:
        chunk = max(1, len(tasks) // (8 * n_workers))
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            rows = tuple(pool.map(_evaluate_point, tasks, chunksize=chunk))

    dims_used = sorted({row.dim for row in rows if row.dim is not None})
    metadata = {
        "preset": preset_name,
        "tol": tol,
        "max_dim": max_dim,
        "dims_used": dims_used,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    return SweepResult(axes=axes, rows=rows, metadata=metadata)


def _fig1a_axes() -> list[GridAxis]:
    return [GridAxis.linear("f", 0.01, 0.3, 101), GridAxis.linear("g", -0.05, 0.2, 101)]


def preset(name: str) -> tuple[SystemParams, list[GridAxis]]:
    """Fixed parameters and axes of the standard survey figures.

    Stated fixed parameters follow the source figures; ranges and bases the
    figures leave unstated are documented defaults chosen to bracket the
    optimal-gain curve (2-D maps) or the resonance (detuning scans).  All of
    them can be overridden via run_sweep by passing modified axes or base.
    """
    if name not in _PRESET_IDS:
        raise ValueError(f"unknown preset {name!r}; valid ids: {', '.join(_PRESET_IDS)}")

    pi = math.pi
    if name == "fig1a":
        return SystemParams(delta=0.0, u=0.5, phi=pi / 12), _fig1a_axes()
    if name == "fig1b":
        return SystemParams(delta=0.0, u=0.5, f=0.1), [
            GridAxis.linear("g", -0.05, 0.05, 101),
            GridAxis.linear("phi", 0.0, 2.0 * pi, 101),
        ]
    if name == "fig2a":
        # Linear-cavity base: with any Kerr present the resonance peak is
        # measurably pulled off zero detuning at the stronger drives, which
        # contradicts the claim this preset exists to reproduce.
        return SystemParams(u=0.0, g=0.0, phi=0.0), [
            GridAxis.explicit("f", (0.1, 0.2, 0.3)),
            GridAxis.linear("delta", -3.0, 3.0, 201),
        ]
    if name == "fig2b":
        return SystemParams(delta=0.0, u=0.5, f=0.1), [
            GridAxis.explicit("g", (0.05, 0.1, 0.2)),
            GridAxis.linear("phi", -pi, pi, 201),
        ]
    if name == "fig2c":
        return SystemParams(u=0.5, f=0.1, phi=0.0), [
            GridAxis.explicit("g", (0.05, 0.2, 0.4)),
            GridAxis.linear("delta", -3.0, 3.0, 201),
        ]
    if name == "fig2d":
        return SystemParams(g=0.0, f=0.1, phi=0.0), [
            GridAxis.explicit("u", (0.1, 0.5, 1.0, 2.0)),
            GridAxis.linear("delta", -3.0, 3.0, 201),
        ]
    if name.startswith("fig3"):
        phases = {"a": pi / 12, "b": pi / 6, "c": pi / 4, "d": pi / 3, "e": 5 * pi / 12, "f": pi / 2}
        return SystemParams(delta=0.0, u=0.5, phi=phases[name[-1]]), _fig1a_axes()
    # fig4x: the fig1a map at other Kerr strengths
    kerr = {"a": 0.1, "b": 1.0, "c": 2.0, "d": 5.0}
    return SystemParams(delta=0.0, u=kerr[name[-1]], phi=pi / 12), _fig1a_axes()


def optimal_curve(
    f_axis: GridAxis, phi: float, delta: float, kappa: float = 1.0
) -> list[tuple[float, float]]:
    """Optimal parametric gain sampled along a drive-strength axis."""
    from .analytic import optimal_g

    if f_axis.param != "f":
        raise ValueError(f"curve wants a drive-strength axis, got {f_axis.param!r}")
    return [(float(f), optimal_g(float(f), phi, delta, kappa)) for f in f_axis.points()]
