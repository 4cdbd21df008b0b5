"""Command-line front end.

Commands: evolve | boundary | scan | table1 | surface.  Exit codes:
0 success, 2 configuration error, 3 numeric failure (eigensolver
non-convergence).  Environment variables are never consulted; identical
configurations produce byte-identical output regardless of worker count.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import io
from .channels import DecayModel, default_model
from .config import DEFAULT, Tolerances
from .dynamics import (
    StageSchedule,
    classify,
    death_point_record,
    evolve_two_stage,
    regime_boundaries,
    sweep_surface,
)
from .errors import DomainError, EigensolverError
from .luo import LocalUnitary, valid_ops
from .measures import negativity, realigned_negativity
from .states import FamilyId, StateFamily

DEFAULT_X = {FamilyId.STATE1: 0.25, FamilyId.STATE2: 0.5, FamilyId.TWO_QUTRIT: 0.25}

TABLE1_OPS = [
    ("X", "F01"),
    ("X", "F02"),
    ("X", "F102"),
    ("X", "F201"),
    ("X", "I"),
    ("I", "F01"),
    ("I", "F02"),
    ("I", "F102"),
    ("I", "F201"),
]


@dataclass(frozen=True)
class RunConfig:
    command: str
    family: str = "state1"
    x: float | None = None
    ratio_a: float | None = None
    ratio_b: float | None = None
    op_a: str = "I"
    op_b: str = "I"
    pn: float = 0.0
    pn_step: float = 0.01
    pprime_step: float = 0.01
    tol: float = 5e-4
    zero_threshold: float = 1e-12
    format: str = "csv"
    out: str | None = None
    workers: int = 1
    debug_matrices: bool = False
    grid: int = 21

    def validated(self) -> "ResolvedRun":
        try:
            family_id = FamilyId(self.family)
        except ValueError:
            raise DomainError(
                f"family: must be one of {[f.value for f in FamilyId]}, got {self.family!r}"
            ) from None
        dims = family_id.dims
        x = DEFAULT_X[family_id] if self.x is None else self.x
        try:
            family = StateFamily(family_id, x)
        except DomainError as exc:
            raise DomainError(f"x: {exc}") from None
        base = default_model(dims)
        ratio_a = base.ratio_a if self.ratio_a is None else self.ratio_a
        ratio_b = base.ratio_b if self.ratio_b is None else self.ratio_b
        try:
            model = DecayModel(ratio_a=ratio_a, ratio_b=ratio_b)
        except DomainError as exc:
            raise DomainError(f"ratio-a/ratio-b: {exc}") from None
        for side, name, dim in (("op-a", self.op_a, dims[0]), ("op-b", self.op_b, dims[1])):
            if name not in valid_ops(dim):
                raise DomainError(
                    f"{side}: {name!r} is not valid for dimension {dim}; "
                    f"valid: {list(valid_ops(dim))}"
                )
        op = LocalUnitary(self.op_a, self.op_b)
        if not 0.0 <= self.pn < 1.0:
            raise DomainError(f"pn: must lie in [0, 1), got {self.pn}")
        for name, step in (("pn-step", self.pn_step), ("pprime-step", self.pprime_step)):
            if not 0.0 < step < 0.5:
                raise DomainError(f"{name}: must lie in (0, 0.5), got {step}")
        if not self.tol > 0.0:
            raise DomainError(f"tol: must be positive, got {self.tol}")
        if not self.zero_threshold > 0.0:
            raise DomainError(f"zero-threshold: must be positive, got {self.zero_threshold}")
        if self.workers < 1:
            raise DomainError(f"workers: must be at least 1, got {self.workers}")
        if self.format not in ("csv", "json"):
            raise DomainError(f"format: must be csv or json, got {self.format!r}")
        if self.grid < 2:
            raise DomainError(f"grid: must be at least 2, got {self.grid}")
        tolerances = Tolerances(
            negativity_zero=self.zero_threshold,
            bisection=self.tol,
            pprime_grid_step=self.pprime_step,
        )
        return ResolvedRun(self, family, model, op, tolerances)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, doc: dict) -> "RunConfig":
        return cls(**doc)


@dataclass(frozen=True)
class ResolvedRun:
    config: RunConfig
    family: StateFamily
    model: DecayModel
    op: LocalUnitary
    tolerances: Tolerances

    @property
    def is_two_qutrit(self) -> bool:
        return self.family.family is FamilyId.TWO_QUTRIT

    def config_dict(self) -> dict:
        doc = self.config.to_dict()
        doc["x"] = self.family.x
        doc["ratio_a"] = self.model.ratio_a
        doc["ratio_b"] = self.model.ratio_b
        return doc


def _parallel_map(fn, jobs, workers: int):
    if workers <= 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


# ---------------------------------------------------------------- commands


def _evolve_row(job):
    run, pp = job
    sched = StageSchedule(run.family, run.model, run.op, run.config.pn)
    rho = evolve_two_stage(sched, pp)
    row = {"p_prime": io.round9(pp), "negativity": io.round9(negativity(rho, run.tolerances))}
    if run.is_two_qutrit:
        row["realigned_negativity"] = io.round9(realigned_negativity(rho, run.tolerances))
    if run.config.debug_matrices:
        row["matrix"] = io.matrix_to_pairs(rho.matrix)
    return row


def cmd_evolve(run: ResolvedRun) -> tuple[list[str], list[dict], dict]:
    tol = run.tolerances
    pps = [float(p) for p in np.arange(0.0, tol.death_cap, run.config.pprime_step)]
    pps.append(tol.death_cap)
    rows = _parallel_map(_evolve_row, [(run, pp) for pp in pps], run.config.workers)
    header = ["p_prime", "negativity"] + (
        ["realigned_negativity"] if run.is_two_qutrit else []
    )
    return header, rows, {}


def cmd_boundary(run: ResolvedRun) -> tuple[list[str], list[dict], dict]:
    sched = StageSchedule(run.family, run.model, run.op, run.config.pn)
    record = death_point_record(sched, run.tolerances)
    row = {
        "family": run.family.family.value,
        "x": io.round9(run.family.x),
        "op_a": run.op.op_a,
        "op_b": run.op.op_b,
        "p_n": io.round9(run.config.pn),
        "p_prime_death": io.round9(record.p_prime),
        "iterations": record.iterations,
        "bracket_lo": io.round9(record.bracket[0]) if record.bracket else None,
        "bracket_hi": io.round9(record.bracket[1]) if record.bracket else None,
    }
    header = list(row)
    return header, [row], {}


def _scan_row(job):
    run, pn = job
    verdict = classify(StageSchedule(run.family, run.model, run.op, pn), run.tolerances)
    return {
        "p_n": io.round9(pn),
        "verdict": verdict.outcome.value,
        "baseline_death": io.round9(verdict.baseline_death),
        "manipulated_death": io.round9(verdict.manipulated_death),
    }


def cmd_scan(run: ResolvedRun) -> tuple[list[str], list[dict], dict]:
    bounds = regime_boundaries(run.family, run.model, run.op, run.tolerances)
    pns = [float(p) for p in np.arange(0.0, bounds.baseline_death, run.config.pn_step)]
    rows = _parallel_map(_scan_row, [(run, pn) for pn in pns], run.config.workers)
    summary = {
        "avoid_end": io.round9(bounds.avoid_end),
        "delay_end": io.round9(bounds.delay_end),
        "baseline_death": io.round9(bounds.baseline_death),
        "has_hasten": bounds.has_hasten,
    }
    rows.append(
        {
            "p_n": "summary",
            "verdict": "avoid_end/delay_end",
            "baseline_death": summary["avoid_end"],
            "manipulated_death": summary["delay_end"],
        }
    )
    return ["p_n", "verdict", "baseline_death", "manipulated_death"], rows, {"summary": summary}


def _table1_cell(job):
    family_value, x, op_a, op_b = job
    family = StateFamily(FamilyId(family_value), x)
    model = default_model(family.dims)
    op = LocalUnitary(op_a, op_b)
    bounds = regime_boundaries(family, model, op, DEFAULT)
    has_avoid = bounds.avoid_end > DEFAULT.bisection
    has_delay = bounds.delay_end > bounds.avoid_end + DEFAULT.bisection
    parts = []
    if has_avoid:
        parts.append("A")
    if has_delay:
        parts.append("D")
    if bounds.has_hasten:
        parts.append("H")
    if parts == ["A", "D", "H"]:
        return "A, D, and H"
    return "only " + " and ".join(parts)


def cmd_table1(run: ResolvedRun) -> tuple[list[str], list[dict], dict]:
    families = [("state1", 0.25), ("state2", 0.5)]
    jobs = [
        (fam, x, op_a, op_b)
        for op_a, op_b in TABLE1_OPS
        for fam, x in families
    ]
    cells = _parallel_map(_table1_cell, jobs, run.config.workers)
    rows = []
    for i, (op_a, op_b) in enumerate(TABLE1_OPS):
        rows.append(
            {
                "operation": f"{op_a}*{op_b}",
                "state1": cells[2 * i],
                "state2": cells[2 * i + 1],
            }
        )
    return ["operation", "state1", "state2"], rows, {}


def cmd_surface(run: ResolvedRun) -> tuple[list[str], list[dict], dict]:
    samples, locus = sweep_surface(
        run.family,
        run.model,
        run.op,
        grid=run.config.grid,
        tol=run.tolerances,
        map_fn=lambda fn, jobs: _parallel_map(fn, list(jobs), run.config.workers),
    )
    rows = [
        {
            "p_n": io.round9(pn),
            "p_prime": io.round9(pp),
            "negativity": io.round9(nv),
        }
        for pn, pp, nv in samples
    ]
    locus_doc = [
        {"p_n": io.round9(pn), "p_prime_death": io.round9(d)} for pn, d in locus.samples
    ]
    return ["p_n", "p_prime", "negativity"], rows, {"locus": locus_doc}


# ------------------------------------------------------------------ driver


def _emit(run: ResolvedRun, header: list[str], rows: list[dict], extra: dict) -> str:
    if run.config.format == "json":
        return io.json_document(run.config_dict(), rows, extra)
    return io.csv_lines(header, [[row.get(col) for col in header] for row in rows])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="esdlab",
        description="Damping dynamics and sudden-death manipulation for "
        "qubit-qutrit and qutrit-qutrit entangled states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("evolve", "negativity along the second damping stage"),
        ("boundary", "locate the sudden-death point in p'"),
        ("scan", "classify Avoid/Delay/Hasten over a p_n grid"),
        ("table1", "classification patterns for all nine flip pairs"),
        ("surface", "negativity samples over the (p_n, p') rectangle"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--family", default="state1", help="state1 | state2 | twoqutrit")
        p.add_argument("--x", type=float, default=None, help="family parameter")
        p.add_argument("--ratio-a", type=float, default=None, dest="ratio_a")
        p.add_argument("--ratio-b", type=float, default=None, dest="ratio_b")
        p.add_argument("--op-a", default="I", dest="op_a", help="I | X (qubit) or flips")
        p.add_argument("--op-b", default="I", dest="op_b", help="I | F01 | F02 | F102 | F201")
        p.add_argument("--pn", type=float, default=0.0, help="flip application point")
        p.add_argument("--pn-step", type=float, default=0.01, dest="pn_step")
        p.add_argument("--pprime-step", type=float, default=0.01, dest="pprime_step")
        p.add_argument("--tol", type=float, default=5e-4, help="bisection tolerance")
        p.add_argument(
            "--zero-threshold", type=float, default=1e-12, dest="zero_threshold"
        )
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--grid", type=int, default=21, help="surface grid per axis")
        p.add_argument(
            "--debug-matrices",
            action="store_true",
            dest="debug_matrices",
            help="embed evolved matrices in JSON rows",
        )
    return parser


COMMANDS = {
    "evolve": cmd_evolve,
    "boundary": cmd_boundary,
    "scan": cmd_scan,
    "table1": cmd_table1,
    "surface": cmd_surface,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(**vars(args))
    try:
        run = config.validated()
    except DomainError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        header, rows, extra = COMMANDS[config.command](run)
        text = _emit(run, header, rows, extra)
    except DomainError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except EigensolverError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    if config.out:
        with open(config.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
