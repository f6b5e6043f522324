"""Evaluate a :class:`SweepSpec` on its grid and format the CSV table."""

from __future__ import annotations

import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from relres import qmat
from relres.cli.config import SweepSpec
from relres.detectors import (
    OmegaConvention,
    detector_resources_closed,
    equilibrium_state,
    omega_hh,
    omega_unruh,
)
from relres.dynamics import EvolutionConfig, KossakowskiSpec, evolve, trajectory_header, trajectory_rows, with_kappa0
from relres.errors import DomainError, NoRoot, NotConverged
from relres.hawking import GisinParams, HawkingEnv, accessible_state, gisin_hawking_resources
from relres.resources import XState, resource_report, trace_distance_discord_oracle

CSV_FORMAT = ".17g"


@dataclass(frozen=True)
class CsvRow:
    axis: float
    series: str
    coherence: float
    discord: float
    concurrence: float
    bures: float
    flags: str = ""

    def fields(self) -> list[str]:
        nums = (self.axis, self.coherence, self.discord, self.concurrence, self.bures)
        a, ch, dt, c, b = (format(v, CSV_FORMAT) for v in nums)
        return [a, self.series, ch, dt, c, b, self.flags]


@dataclass(frozen=True)
class _Task:
    scenario: str
    axis_value: float
    label: str
    params: dict
    oracle_restarts: int
    seed: int
    index: int
    keep_trajectory: bool = False


def _label(v) -> str:
    return v if isinstance(v, str) else repr(float(v))


def _tasks(spec: SweepSpec, oracle_restarts=0, seed=0, keep_trajectory=False):
    base = spec.params()
    if spec.series:
        name, values = spec.series
        curves = [(_label(v), {name: v}) for v in values]
    else:
        curves = [("", {})]

    # the HH vacuum fans every curve out into both conventions
    expanded = []
    for label, extra in curves:
        p = {**base, **extra}
        if spec.scenario == "static-detectors" and p["vacuum"] == "hh" and p["convention"] == "both":
            for conv in ("tanh", "half"):
                tag = f"{label}:{conv}" if label else conv
                expanded.append((tag, {**extra, "convention": conv}))
        else:
            expanded.append((label, extra))

    out = []
    for x in spec.axis.values():
        for label, extra in expanded:
            params = {**base, **extra, spec.axis.name: x}
            out.append(_Task(spec.scenario, x, label, params, oracle_restarts, seed, len(out), keep_trajectory))
    return out


def _rng(task):
    return np.random.default_rng(np.random.SeedSequence([task.seed, task.index]))


def _oracle(rho, task):
    return trace_distance_discord_oracle(rho, restarts=task.oracle_restarts, rng=_rng(task))


def _gisin_hawking(task):
    p = task.params
    gp = GisinParams(p["alpha"], p["phi"])
    env = HawkingEnv(p["omega"], p["t_hawking"], p["r0"])
    rep = gisin_hawking_resources(gp, env)
    flags = [] if env.rindler_valid else ["rindler_invalid"]
    dt = rep.discord
    if task.oracle_restarts:
        dt = _oracle(accessible_state(gp, env).matrix(), task)
        flags.append("oracle")
    return rep.coherence, dt, rep.concurrence, rep.bures, flags, None


def _detector_oracle(omega_ratio, kappa0, task):
    return _oracle(equilibrium_state(omega_ratio, kappa0).matrix(), task)


def _unruh(task):
    p = task.params
    w = omega_unruh(p["t_unruh"], p["epsilon"])
    rep = detector_resources_closed(w, p["kappa0"])
    flags, dt = [], rep.discord
    if task.oracle_restarts:
        dt = _detector_oracle(w, p["kappa0"], task)
        flags.append("oracle")
    return rep.coherence, dt, rep.concurrence, rep.bures, flags, None


def _static(task):
    p = task.params
    flags = []
    if p["vacuum"] == "boulware":
        w = 1.0
    else:
        conv = OmegaConvention(p["convention"])
        w = omega_hh(p["omega"], p["t_hawking"], p["r0"], conv)
        if p["r0"] - 1.0 > 1.0:
            flags.append("rindler_invalid")
    rep = detector_resources_closed(w, p["kappa0"])
    dt = rep.discord
    if task.oracle_restarts:
        dt = _detector_oracle(w, p["kappa0"], task)
        flags.append("oracle")
    return rep.coherence, dt, rep.concurrence, rep.bures, flags, None


def _dynamics(task):
    p = task.params
    gp = p["gamma_plus"]
    gm = gp * math.tanh(p["epsilon"] / (2.0 * p["t_unruh"]))
    ks = KossakowskiSpec(gp, gm, p["gamma_zero"])
    rng = _rng(task)
    rho0 = with_kappa0(qmat.random_density(rng), p["kappa0"])
    res = evolve(rho0, ks, p["epsilon"], EvolutionConfig(max_time=p["max_time"]))
    x = XState.from_matrix(res.rho, atol=1e-8)
    rep = resource_report(x)
    dt = rep.discord
    flags = ["converged"]
    if task.oracle_restarts:
        dt = _oracle(x.matrix(), task)
        flags.append("oracle")
    traj = list(trajectory_rows(res, ks, p["epsilon"])) if task.keep_trajectory else None
    return rep.coherence, dt, rep.concurrence, rep.bures, flags, traj


_HANDLERS = {
    "gisin-hawking": _gisin_hawking,
    "unruh": _unruh,
    "static-detectors": _static,
    "dynamics": _dynamics,
}


def _evaluate(task: _Task):
    try:
        ch, dt, c, b, flags, traj = _HANDLERS[task.scenario](task)
    except (DomainError, NoRoot, NotConverged) as e:
        where = f"at grid point {task.index} (axis={task.axis_value!r}, series={task.label!r})"
        if isinstance(e, NotConverged):
            raise NotConverged(f"{e} {where}", e.result) from e
        raise type(e)(f"{e} {where}") from e
    row = CsvRow(task.axis_value, task.label, ch, dt, c, b, ";".join(flags))
    return row, traj


def _run(spec, oracle_restarts, seed, threads, keep_trajectory):
    tasks = _tasks(spec, oracle_restarts, seed, keep_trajectory)
    if threads and threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            # map keeps submission order, so the table stays axis-major
            return list(pool.map(_evaluate, tasks, chunksize=max(1, len(tasks) // (4 * threads))))
    return [_evaluate(t) for t in tasks]


def run_sweep(spec: SweepSpec, oracle_restarts: int = 0, seed: int = 0, threads: int = 1) -> list[CsvRow]:
    """Evaluate every grid point, axis-major and series-minor.

    Args:
        spec: validated sweep description.
        oracle_restarts: if positive, the D_T column comes from the
            minimizing oracle with this many restarts instead of the closed
            form, and the row is flagged ``oracle``.
        seed: root seed; each grid point derives its own stream from it.
        threads: worker processes; 1 evaluates in-process.
    """
    return [row for row, _ in _run(spec, oracle_restarts, seed, threads, False)]


def run_dynamics(spec: SweepSpec, oracle_restarts: int = 0, seed: int = 0, threads: int = 1):
    """Like :func:`run_sweep` for the dynamics scenario, also returning trajectories.

    Returns:
        ``(rows, trajectories)`` where ``trajectories[k]`` belongs to ``rows[k]``.
    """
    if spec.scenario != "dynamics":
        raise DomainError(f"run_dynamics needs the dynamics scenario, got {spec.scenario!r}")
    out = _run(spec, oracle_restarts, seed, threads, True)
    return [r for r, _ in out], [t for _, t in out]


def csv_header(spec: SweepSpec) -> list[str]:
    return [spec.axis.name, spec.series_name, "C_H", "D_T", "concurrence", "B_d", "flags"]


def _write_csv(header, body):
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for fields in body:
        buf.write(",".join(fields) + "\n")
    return buf.getvalue()


def format_csv(rows: list[CsvRow], spec: SweepSpec) -> str:
    """CSV text with a header, ``'\\n'`` line endings and 17 significant digits."""
    return _write_csv(csv_header(spec), (r.fields() for r in rows))


def format_trajectories(rows: list[CsvRow], trajectories, spec: SweepSpec) -> str:
    header = [spec.axis.name, spec.series_name, *trajectory_header()]
    body = []
    for row, traj in zip(rows, trajectories):
        for values in traj or ():
            body.append([format(row.axis, CSV_FORMAT), row.series, *(format(v, CSV_FORMAT) for v in values)])
    return _write_csv(header, body)
