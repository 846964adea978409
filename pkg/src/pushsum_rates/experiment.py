"""
q-sweeps: simulate push-sum on one graph across a grid of mixing weights
and tabulate the empirical rates next to every applicable bound.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bounds import bound_eta, bound_general, bound_symmetric, bound_transitive
from .errors import InvalidParameters, WeightUnderflow
from .graphgen import (
    Graph,
    gen_barabasi_albert,
    gen_cayley_sym,
    gen_complete,
    gen_cycle,
    gen_directed_ring,
    gen_random_regular,
    read_graph,
    uniform_transition,
)
from .report import RateReport
from .rng import make_rng
from .simulate import default_rows, default_steps, empirical_rate_full, empirical_rate_reduced
from .spectral import is_symmetric, sym_eigenvalues

log = logging.getLogger(__name__)

ALL_BOUNDS = ("general", "symmetric", "transitive", "eta")
DEFAULT_SLACK = 0.02
DEFAULT_ETA_MAX_N = 64
TRANSITIVE_FAMILIES = {"cayley", "complete", "cycle", "ring"}


@dataclass(frozen=True)
class GraphSource:
    """A generator family with its parameters, or a path to an edge-list file."""

    family: str | None = None
    params: dict = field(default_factory=dict)
    path: str | None = None
    seed: int = 0

    def build(self) -> Graph:
        if self.path is not None:
            return read_graph(self.path)
        p = self.params
        f = self.family
        if f == "ba":
            return gen_barabasi_albert(p["n"], p["m"], seed=self.seed)
        if f == "regular":
            return gen_random_regular(p["n"], p["d"], seed=self.seed)
        if f == "cayley":
            return gen_cayley_sym(p["k"], p["gens"], seed=self.seed)
        if f == "complete":
            return gen_complete(p["n"], include_self_loops=p.get("self_loops", False))
        if f == "cycle":
            return gen_cycle(p["n"])
        if f == "ring":
            return gen_directed_ring(p["n"])
        raise InvalidParameters(f"unknown graph family {f!r}")

    @property
    def transitive_by_construction(self) -> bool:
        return self.path is None and self.family in TRANSITIVE_FAMILIES

    @property
    def label(self) -> str:
        if self.path is not None:
            from pathlib import Path

            return Path(self.path).stem
        parts = [self.family] + [f"{k}{int(v)}" for k, v in sorted(self.params.items()) if v is not None]
        if self.family in ("ba", "regular", "cayley"):
            parts.append(f"s{self.seed}")
        return "-".join(parts)


def q_grid(start: float = 0.05, end: float = 0.95, steps: int = 19) -> np.ndarray:
    if steps < 1:
        raise InvalidParameters("q grid needs at least one point")
    grid = np.linspace(start, end, steps) if steps > 1 else np.array([start])
    if np.any(grid < 0) or np.any(grid > 1):
        raise InvalidParameters("q grid must lie in [0, 1]")
    # 10 significant digits, matching what the CSV carries
    return np.array([float(f"{q:.10g}") for q in grid])


@dataclass(frozen=True)
class ExperimentConfig:
    source: GraphSource
    q_start: float = 0.05
    q_end: float = 0.95
    q_steps: int = 19
    t: int | None = None
    m_rows: int | None = None
    repetitions: int = 10
    seed: int = 0
    bounds: tuple[str, ...] = ALL_BOUNDS
    assert_transitive: bool = False
    eta_max_n: int = DEFAULT_ETA_MAX_N
    slack: float = DEFAULT_SLACK
    workers: int = 1

    def grid(self) -> np.ndarray:
        return q_grid(self.q_start, self.q_end, self.q_steps)


def _one_run(args) -> float | None:
    P, q, t, m_rows, seed, stream = args
    rng = make_rng(seed, stream)
    try:
        if m_rows is None:
            return empirical_rate_full(P, q, t, rng)
        return empirical_rate_reduced(P, q, t, M=m_rows, rng=rng)
    except WeightUnderflow:
        return None


def _stream(qi: int, rep: int, reps: int) -> int:
    # stream 0 belongs to graph generation
    return 1 + qi * reps + rep


def run_sweep(cfg: ExperimentConfig, probe: bool = False) -> list[RateReport]:
    """
    One report per grid point, in ascending q.

    With ``probe=True`` the transitive formula is evaluated on any
    symmetric P regardless of transitivity, and rows carry the
    ``conjecture_probe`` flag.
    """
    graph = cfg.source.build()
    Pmat = uniform_transition(graph).matrix
    n = graph.n
    symmetric = is_symmetric(Pmat)
    transitive = cfg.assert_transitive or cfg.source.transitive_by_construction
    if probe and not symmetric:
        raise InvalidParameters("the conjecture probe needs a symmetric message matrix")
    spec = sym_eigenvalues(Pmat) if symmetric else None

    t = cfg.t or default_steps(n)
    m_rows = cfg.m_rows
    if m_rows is None and n > 120:
        m_rows = default_rows(n)
    reps = cfg.repetitions
    grid = cfg.grid()

    tasks, index = [], []
    for qi, q in enumerate(grid):
        if not 0.0 < q < 1.0:
            continue
        for rep in range(reps):
            tasks.append((Pmat, float(q), t, m_rows, cfg.seed, _stream(qi, rep, reps)))
            index.append(qi)
    if cfg.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rates = list(pool.map(_one_run, tasks, chunksize=max(1, len(tasks) // (4 * cfg.workers))))
    else:
        rates = [_one_run(a) for a in tasks]
    per_q: dict[int, list[float | None]] = {}
    for qi, r in zip(index, rates):
        per_q.setdefault(qi, []).append(r)

    label = cfg.source.label
    reports = []
    for qi, q in enumerate(grid):
        flags: list[str] = []
        if probe:
            flags.append("conjecture_probe")
        b: dict[str, float | None] = dict.fromkeys(ALL_BOUNDS)
        if "general" in cfg.bounds:
            b["general"] = _value(bound_general(Pmat, q), "general", flags)
        if "symmetric" in cfg.bounds and symmetric:
            b["symmetric"] = _value(bound_symmetric(float(spec.lambdas[1]), q), "symmetric", flags)
        if ("transitive" in cfg.bounds and symmetric and transitive) or probe:
            b["transitive"] = _value(bound_transitive(spec, q), "transitive", flags)
        if "eta" in cfg.bounds and n <= cfg.eta_max_n:
            b["eta"] = _value(bound_eta(Pmat, q), "eta", flags)

        emp = emp_std = None
        runs = per_q.get(qi)
        if runs is None:
            flags.append("no_sim")
        else:
            ok = [r for r in runs if r is not None]
            if len(ok) < len(runs):
                flags.append("underflow")
            if ok:
                emp = float(np.median(ok))
                emp_std = float(np.std(ok, ddof=1)) if len(ok) > 1 else 0.0
        if emp is not None:
            for kind, v in b.items():
                if v is not None and emp > v + cfg.slack:
                    flags.append(f"viol_{kind}")
                    log.warning("q=%g: empirical %.4g exceeds %s bound %.4g + slack", q, emp, kind, v)
        reports.append(
            RateReport(
                label, n, float(q), emp, emp_std,
                b["general"], b["symmetric"], b["transitive"], b["eta"],
                tuple(flags),
            ).rounded()
        )
    return reports


def _value(bound, kind, flags) -> float:
    if not bound.applicable:
        flags.append(f"noninformative_{kind}")
    return bound.value


def count_violations(reports, kind: str = "transitive") -> int:
    return sum(f"viol_{kind}" in r.flags for r in reports)


def convert_log_base(reports, base: float) -> list[RateReport]:
    """Express every rate column in log-``base`` units (display only)."""
    if base == math.e:
        return list(reports)
    scale = 1.0 / math.log(base)
    out = []
    for r in reports:
        def c(v):
            return None if v is None else v * scale

        out.append(
            RateReport(
                r.graph, r.N, r.q, c(r.emp_rate), c(r.emp_std),
                c(r.b_general), c(r.b_symmetric), c(r.b_transitive), c(r.b_eta), r.flags,
            ).rounded()
        )
    return out
