"""Two-stage evolution, death-point solving, and manipulation classification.

Pipeline: build the initial state, damp it to strength p_n, apply the
local flip pair, then damp again with a fresh channel of strength p'.
With the identity flip the pipeline is the uninterrupted two-stage
evolution, which serves as the comparison baseline (the "red curve"):
both curves are parameterized by the shared abscissa p_n.

Death points are located by bracketing negativity's zero crossing on a
coarse p' grid and bisecting; regime boundaries bisect over p_n.
"""

from __future__ import annotations

import enum
import functools
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .channels import DecayModel, apply_channel, composite_kraus
from .config import DEFAULT, Tolerances
from .errors import DomainError, NonMonotoneWarning
from .luo import IDENTITY_OP, LocalUnitary, apply_luo
from .measures import negativity
from .qla import DensityMatrix
from .states import FamilyId, StateFamily, build_state


@dataclass(frozen=True)
class StageSchedule:
    """One manipulation experiment: which family, which decay ratios,
    which flip pair, and the damping strength p_n at which it is applied."""

    family: StateFamily
    model: DecayModel
    op: LocalUnitary = IDENTITY_OP
    p_n: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.p_n < 1.0:
            raise DomainError(f"p_n must lie in [0, 1), got {self.p_n}")

    @property
    def dims(self) -> tuple[int, int]:
        return self.family.dims

    def baseline(self) -> "StageSchedule":
        return replace(self, op=IDENTITY_OP)


@functools.lru_cache(maxsize=4096)
def state_after_flip(s: StageSchedule) -> DensityMatrix:
    """The state at the flip instant: rho(0) damped to p_n, then flipped."""
    rho = build_state(s.family)
    rho = apply_channel(rho, composite_kraus(s.dims, s.p_n, s.model))
    if not s.op.is_identity:
        rho = apply_luo(rho, s.op)
    return rho


def evolve_two_stage(s: StageSchedule, p_prime: float) -> DensityMatrix:
    """State after the full pipeline at second-stage strength p_prime."""
    rho = state_after_flip(s)
    return apply_channel(rho, composite_kraus(s.dims, p_prime, s.model))


class Outcome(str, enum.Enum):
    AVOID = "Avoid"
    DELAY = "Delay"
    HASTEN = "Hasten"
    UNCHANGED = "Unchanged"
    NO_BASELINE_DEATH = "NoBaselineDeath"


@dataclass(frozen=True)
class ClassificationVerdict:
    p_n: float
    outcome: Outcome
    baseline_death: float | None
    manipulated_death: float | None


@dataclass(frozen=True)
class BoundaryCurve:
    """Sampled death locus: (p_n, p'-of-death or None when no death)."""

    samples: tuple


@dataclass(frozen=True)
class DeathRecord:
    p_prime: float | None
    iterations: int
    bracket: tuple[float, float] | None


def _negativity_at(s: StageSchedule, p_prime: float, tol: Tolerances) -> float:
    return negativity(evolve_two_stage(s, p_prime), tol=tol)


def death_point_record(s: StageSchedule, tol: Tolerances = DEFAULT) -> DeathRecord:
    """Locate the smallest p' where negativity vanishes, with solver detail.

    Scans a coarse grid (step ``tol.pprime_grid_step``) up to
    ``tol.death_cap``, then bisects the bracketing interval down to
    ``tol.bisection``.  Returns p_prime=None when negativity stays above
    the zero threshold on the whole grid (asymptotic decay / avoidance).
    A verification grid past the death point guards against re-crossing;
    a re-crossing would contradict monotone disentanglement under this
    channel and is reported as NonMonotoneWarning, not silently ignored.
    """
    zero = tol.negativity_zero
    f = lambda pp: _negativity_at(s, pp, tol)
    if f(0.0) <= zero:
        return DeathRecord(p_prime=0.0, iterations=0, bracket=(0.0, 0.0))

    grid = np.arange(0.0, tol.death_cap, tol.pprime_grid_step)
    grid = np.append(grid, tol.death_cap)
    lo = 0.0
    hi = None
    for pp in grid[1:]:
        if f(float(pp)) <= zero:
            hi = float(pp)
            break
        lo = float(pp)
    if hi is None:
        return DeathRecord(p_prime=None, iterations=len(grid) - 1, bracket=None)

    bracket = (lo, hi)
    iterations = 0
    while hi - lo > tol.bisection:
        mid = 0.5 * (lo + hi)
        if f(mid) <= zero:
            hi = mid
        else:
            lo = mid
        iterations += 1
    death = 0.5 * (lo + hi)

    check = np.linspace(min(hi + tol.pprime_grid_step, tol.death_cap), tol.death_cap, 8)
    recross = [float(pp) for pp in check if f(float(pp)) > zero]
    if recross:
        warnings.warn(
            f"negativity re-crossed zero after death at p'={death:.6f} "
            f"(first at p'={recross[0]:.4f})",
            NonMonotoneWarning,
        )
    return DeathRecord(p_prime=death, iterations=iterations, bracket=bracket)


@functools.lru_cache(maxsize=200_000)
def _death_point_cached(s: StageSchedule, tol: Tolerances) -> float | None:
    return death_point_record(s, tol).p_prime


def death_point(s: StageSchedule, tol: Tolerances = DEFAULT) -> float | None:
    """Smallest p' in [0, 1) with vanishing negativity, or None if the
    negativity survives up to the cap (avoidance / asymptotic decay)."""
    return _death_point_cached(s, tol)


def classify(s: StageSchedule, tol: Tolerances = DEFAULT) -> ClassificationVerdict:
    """Compare the manipulated death point against the uninterrupted
    baseline at the same p_n split.

    Avoid: manipulated never dies while the baseline does.  Delay /
    Hasten: both die, later / earlier than baseline by more than the
    solver tolerance.  Unchanged covers ties (in particular the identity
    flip, where both curves coincide).
    """
    baseline = death_point(s.baseline(), tol)
    if baseline is None:
        return ClassificationVerdict(s.p_n, Outcome.NO_BASELINE_DEATH, None, None)
    manipulated = death_point(s, tol)
    if manipulated is None:
        return ClassificationVerdict(s.p_n, Outcome.AVOID, baseline, None)
    if manipulated > baseline + tol.bisection:
        outcome = Outcome.DELAY
    elif manipulated < baseline - tol.bisection:
        outcome = Outcome.HASTEN
    else:
        outcome = Outcome.UNCHANGED
    return ClassificationVerdict(s.p_n, outcome, baseline, manipulated)


@dataclass(frozen=True)
class RegimeBoundaries:
    """Outcome intervals over p_n: Avoid on [0, avoid_end], Delay on
    (avoid_end, delay_end), Hasten on (delay_end, baseline_death) when
    has_hasten; delay_end equals baseline_death otherwise.  For flips
    that only hasten, avoid_end == delay_end == 0."""

    avoid_end: float
    delay_end: float
    baseline_death: float
    has_hasten: bool


def _is_avoid(s: StageSchedule, tol: Tolerances) -> bool:
    return death_point(s, tol) is None


def _is_delayed_or_avoid(s: StageSchedule, tol: Tolerances) -> bool:
    manipulated = death_point(s, tol)
    if manipulated is None:
        return True
    baseline = death_point(s.baseline(), tol)
    return baseline is not None and manipulated > baseline


def regime_boundaries(
    family: StateFamily,
    model: DecayModel,
    op: LocalUnitary,
    tol: Tolerances = DEFAULT,
) -> RegimeBoundaries:
    """Bisect over p_n for the ends of the Avoid and Delay intervals."""
    sched = lambda pn: StageSchedule(family, model, op, pn)
    d0 = death_point(sched(0.0).baseline(), tol)
    if d0 is None:
        raise DomainError("family does not undergo baseline sudden death")
    if op.is_identity:
        # the manipulated and baseline curves coincide
        return RegimeBoundaries(0.0, d0, d0, has_hasten=False)

    # largest p_n whose verdict is Avoid
    if not _is_avoid(sched(0.0), tol):
        avoid_end = 0.0
    else:
        lo, hi = 0.0, d0
        while hi - lo > tol.bisection:
            mid = 0.5 * (lo + hi)
            if _is_avoid(sched(mid), tol):
                lo = mid
            else:
                hi = mid
        avoid_end = 0.5 * (lo + hi)

    # supremum of the Delay interval; equals baseline death when the
    # manipulated curve never dips below the baseline
    probe = d0 * (1.0 - 1e-3)
    if _is_delayed_or_avoid(sched(probe), tol):
        return RegimeBoundaries(avoid_end, d0, d0, has_hasten=False)
    if avoid_end == 0.0 and not _is_delayed_or_avoid(sched(tol.bisection / 2.0), tol):
        # hasten-only flip: no avoidance, no delay anywhere
        return RegimeBoundaries(0.0, 0.0, d0, has_hasten=True)
    lo, hi = avoid_end, probe
    while hi - lo > tol.bisection:
        mid = 0.5 * (lo + hi)
        if _is_delayed_or_avoid(sched(mid), tol):
            lo = mid
        else:
            hi = mid
    return RegimeBoundaries(avoid_end, 0.5 * (lo + hi), d0, has_hasten=True)


def critical_x(
    family_id: FamilyId,
    model: DecayModel,
    tol: Tolerances = DEFAULT,
) -> float | None:
    """Bisect the family parameter for the onset of finite-time death.

    Returns the boundary x: below it the uninterrupted evolution decays
    asymptotically, above it negativity dies at finite p.  Returns None
    when the family dies on its entire parameter range.
    """
    if family_id is FamilyId.STATE2:
        lo, hi = 1.0 / 3.0 + 1e-9, 0.5
    else:
        lo, hi = 0.0, 1.0 / 3.0 - 1e-9

    def dies(x: float) -> bool:
        s = StageSchedule(StateFamily(family_id, x), model)
        return death_point(s, tol) is not None

    if dies(lo):
        return None  # dies everywhere on the range
    if not dies(hi):
        raise DomainError("family never undergoes sudden death on its range")
    while hi - lo > tol.bisection:
        mid = 0.5 * (lo + hi)
        if dies(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def sweep_surface(
    family: StateFamily,
    model: DecayModel,
    op: LocalUnitary = IDENTITY_OP,
    grid: int = 21,
    tol: Tolerances = DEFAULT,
    map_fn=map,
) -> tuple[list[tuple[float, float, float]], BoundaryCurve]:
    """Rectangular negativity samples over (p_n, p') plus the per-column
    death locus.  Columns are independent work items; ``map_fn`` may fan
    them out, results are reassembled in grid order."""
    if grid < 2:
        raise DomainError(f"grid must be at least 2 per axis, got {grid}")
    axis = np.linspace(0.0, tol.death_cap, grid)
    jobs = [(family, model, op, float(pn), tuple(float(v) for v in axis), tol) for pn in axis]
    columns = list(map_fn(_surface_column, jobs))
    rows: list[tuple[float, float, float]] = []
    locus = []
    for col, (pn, values, death) in zip(jobs, columns):
        rows.extend((col[3], pp, nv) for pp, nv in zip(col[4], values))
        locus.append((pn, death))
    return rows, BoundaryCurve(samples=tuple(locus))


def _surface_column(job):
    family, model, op, pn, pps, tol = job
    s = StageSchedule(family, model, op, pn)
    values = [_negativity_at(s, pp, tol) for pp in pps]
    death = death_point(s, tol)
    return pn, values, death
