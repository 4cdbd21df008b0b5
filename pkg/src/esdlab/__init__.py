"""Deterministic simulation of entanglement sudden death and its
manipulation by local flip operations under amplitude damping."""

from .channels import DecayModel, KrausSet, apply_channel, composite_kraus, default_model
from .config import DEFAULT, Tolerances
from .dynamics import (
    BoundaryCurve,
    ClassificationVerdict,
    Outcome,
    RegimeBoundaries,
    StageSchedule,
    classify,
    critical_x,
    death_point,
    death_point_record,
    evolve_two_stage,
    regime_boundaries,
    sweep_surface,
)
from .luo import IDENTITY_OP, LocalUnitary, apply_luo, flip_matrix
from .measures import EntanglementReading, Verdict, assess, negativity, realigned_negativity
from .qla import DensityMatrix, partial_transpose, realign, trace_norm
from .states import FamilyId, StateFamily, build_state, separability_indicator

__version__ = "0.1.0"

__all__ = [
    "DEFAULT",
    "BoundaryCurve",
    "ClassificationVerdict",
    "DecayModel",
    "DensityMatrix",
    "EntanglementReading",
    "FamilyId",
    "IDENTITY_OP",
    "KrausSet",
    "LocalUnitary",
    "Outcome",
    "RegimeBoundaries",
    "StageSchedule",
    "StateFamily",
    "Tolerances",
    "Verdict",
    "apply_channel",
    "apply_luo",
    "assess",
    "build_state",
    "classify",
    "composite_kraus",
    "critical_x",
    "death_point",
    "death_point_record",
    "default_model",
    "evolve_two_stage",
    "flip_matrix",
    "negativity",
    "partial_transpose",
    "realign",
    "realigned_negativity",
    "regime_boundaries",
    "separability_indicator",
    "sweep_surface",
    "trace_norm",
]
