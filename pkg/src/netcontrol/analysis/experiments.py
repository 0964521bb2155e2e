"""Seeded Monte-Carlo harnesses for concentration and convergence of the matching ratio."""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Sequence

import numpy as np

from ..errors import InputError
from ..generators import (
    DegreeSequence,
    OffspringDistribution,
    gen_config_total,
    gen_er_directed,
    gen_pa,
    gen_regular_directed,
)
from ..graph import DirectedMultigraph
from ..matching import max_matching_size
from ..rewiring import RewirePlan
from ..seeds import fresh_master_seed, trial_seed
from .limits import azuma_bound

EPS_GRID = (0.001, 0.002, 0.005, 0.01, 0.02, 0.05)
SCHEMA = json.loads(resources.files("netcontrol").joinpath("schema.json").read_text())


@dataclass(frozen=True)
class TrialResult:
    trial: int
    n: int
    matching_size: int
    seconds: float = field(default=0.0, compare=False)

    @property
    def m(self) -> float:
        return self.matching_size / self.n if self.n else 0.0

    @property
    def n_d(self) -> float:
        return 1.0 - self.m


def _summary(values: Sequence[float]) -> dict:
    arr = np.asarray(values, dtype=float)
    return {
        "trials": int(arr.size),
        "mean": float(arr.mean()),
        "sd": float(arr.std(ddof=1)) if arr.size > 1 else 0.0,
        "min": float(arr.min()),
        "max": float(arr.max()),
    }


@dataclass
class ExperimentReport:
    kind: str
    model: dict
    master_seed: int
    trials: list[TrialResult]
    bound_table: list[dict] | None = None
    groups: list[dict] | None = None

    @property
    def ratios(self) -> np.ndarray:
        return np.array([t.m for t in self.trials])

    def summary(self) -> dict:
        return _summary(self.ratios)

    def to_dict(self, timing: bool = True) -> dict:
        data = {
            "schema_version": SCHEMA["version"],
            "kind": self.kind,
            "model": self.model,
            "master_seed": self.master_seed,
            "summary": self.summary(),
            "bound_table": self.bound_table,
            "groups": self.groups,
            "metadata": {},
        }
        if timing:
            data["metadata"]["wall_clock_seconds"] = [t.seconds for t in self.trials]
        return data

    def write_json(self, path, timing: bool = True) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(timing), fh, indent=2)
            fh.write("\n")

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(SCHEMA["trial_csv_columns"])
            for t in self.trials:
                writer.writerow([t.trial, t.n, t.matching_size, repr(t.m), repr(t.n_d)])


def _run(task: Callable, args: list[tuple], jobs: int) -> list:
    if jobs <= 1 or len(args) <= 1:
        return [task(a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(task, args, chunksize=max(1, len(args) // (4 * jobs))))


def _timed_trial(index: int, graph: DirectedMultigraph, start: float) -> TrialResult:
    size = max_matching_size(graph)
    return TrialResult(index, graph.n, size, time.perf_counter() - start)


def _rewire_trial(args) -> TrialResult:
    plan, master, index = args
    start = time.perf_counter()
    return _timed_trial(index, plan.sample(trial_seed(master, index)), start)


def concentration_experiment(
    graph: DirectedMultigraph,
    variant: str,
    trials: int,
    seed: int | None = None,
    jobs: int = 1,
    eps_grid: Sequence[float] = EPS_GRID,
) -> ExperimentReport:
    """Rewire ``graph`` ``trials`` times and compare deviation tails with the Azuma bound.

    The empirical tail at ``eps`` is the share of trials whose ratio differs
    from the trial mean by more than ``eps``.
    """
    if trials < 2:
        raise InputError(f"need at least two trials, got {trials}")
    master = fresh_master_seed() if seed is None else seed
    plan = RewirePlan.from_graph(graph, variant)
    results = _run(_rewire_trial, [(plan, master, i) for i in range(trials)], jobs)
    ratios = np.array([t.m for t in results])
    mean = ratios.mean()
    table = []
    for eps in eps_grid:
        try:
            bound = azuma_bound(eps, plan.degrees, variant)
        except InputError:
            bound = None
        table.append(
            {
                "epsilon": eps,
                "empirical_tail": float(np.mean(np.abs(ratios - mean) > eps)),
                "azuma_bound": bound,
            }
        )
    model = {"name": "rewire", "variant": variant, "n": graph.n, "num_edges": graph.num_edges}
    return ExperimentReport("concentration", model, master, results, bound_table=table)


@dataclass(frozen=True)
class ModelSpec:
    """A named random graph family with its parameters.

    ``er`` takes ``c`` (mean total degree ``2c``); ``regular`` takes ``d`` and
    ``variant``; ``pa`` takes ``r`` and ``alpha``; ``config-total`` takes
    ``offspring`` (``"poisson:<mean>"`` or ``"constant:<k>"``) for i.i.d.
    total degrees; ``empty`` has no parameters.
    """

    name: str
    params: dict = field(default_factory=dict)

    def sample(self, n: int, seed=None) -> DirectedMultigraph:
        p = self.params
        if self.name == "er":
            return gen_er_directed(n, 2 * p["c"], seed)
        if self.name == "regular":
            return gen_regular_directed(n, p["d"], p.get("variant", "exact_inout"), seed)
        if self.name == "pa":
            return gen_pa(n, p["r"], p["alpha"], seed)
        if self.name == "config-total":
            rng = np.random.default_rng(seed)
            degrees = parse_offspring(p["offspring"]).sample(rng, n)
            return gen_config_total(DegreeSequence.total(degrees), rng)
        if self.name == "empty":
            return DirectedMultigraph(n, [], [])
        raise InputError(f"unknown model {self.name!r}")

    def as_dict(self) -> dict:
        return {"name": self.name, **self.params}


def parse_offspring(text: str) -> OffspringDistribution:
    kind, _, value = text.partition(":")
    if kind == "poisson":
        return OffspringDistribution.poisson(float(value))
    if kind == "constant":
        return OffspringDistribution.constant(int(value))
    raise InputError(f"unknown offspring law {text!r}; use poisson:<mean> or constant:<k>")


def _model_trial(args) -> TrialResult:
    model, n, master, index = args
    start = time.perf_counter()
    return _timed_trial(index, model.sample(n, trial_seed(master, index)), start)


def convergence_experiment(
    model: ModelSpec,
    n_list: Sequence[int],
    seeds_per_n: int,
    seed: int | None = None,
    jobs: int = 1,
    reference: float | None = None,
) -> ExperimentReport:
    """Mean and spread of the exact ratio for each size in ``n_list``.

    Trials are numbered consecutively across sizes, and that number selects
    the trial seed. With ``reference`` set, each size also reports the
    absolute error of its mean against it.
    """
    n_list = list(n_list)
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise InputError(f"sizes must be strictly ascending, got {n_list}")
    if seeds_per_n < 1:
        raise InputError(f"need at least one seed per size, got {seeds_per_n}")
    master = fresh_master_seed() if seed is None else seed
    args = [
        (model, n, master, i * seeds_per_n + k) for i, n in enumerate(n_list) for k in range(seeds_per_n)
    ]
    results = _run(_model_trial, args, jobs)
    groups = []
    for i, n in enumerate(n_list):
        chunk = results[i * seeds_per_n : (i + 1) * seeds_per_n]
        row = {"n": n, **_summary([t.m for t in chunk])}
        row["reference"] = reference
        row["abs_error"] = None if reference is None else abs(row["mean"] - reference)
        groups.append(row)
    return ExperimentReport("convergence", model.as_dict(), master, results, groups=groups)
