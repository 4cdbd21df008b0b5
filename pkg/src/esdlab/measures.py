"""Entanglement quantifiers: negativity (PPT) and realigned negativity (CCNR).

Negativity is conclusive in 2x3: zero negativity means separable.  In 3x3
it is not; when negativity vanishes there the realignment criterion is
consulted, and a null result is reported as "undetected", never as
"separable".
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import qla
from .config import DEFAULT, Tolerances
from .qla import DensityMatrix


class Verdict(str, enum.Enum):
    ENTANGLED = "Entangled"
    PPT_UNDETECTED = "PPTUndetected"
    SEPARABLE_2X3 = "Separable2x3"


@dataclass(frozen=True)
class EntanglementReading:
    negativity: float
    realigned_negativity: float | None
    verdict: Verdict


def negativity(rho: DensityMatrix, tol: Tolerances = DEFAULT) -> float:
    """Sum of |lambda| over the negative eigenvalues of the partial
    transpose.  The subsystem choice does not affect the value."""
    pt = qla.partial_transpose(rho, "A")
    w = qla.hermitian_eigenvalues(pt, tol=tol)
    return float(-w[w < 0.0].sum()) + 0.0  # avoid -0.0


def realigned_negativity(rho: DensityMatrix, tol: Tolerances = DEFAULT) -> float:
    """max(0, ||realign(rho)||_tr - 1); positive values certify
    entanglement, including some PPT (bound-entangled) states."""
    return max(0.0, qla.trace_norm(qla.realign(rho), tol=tol) - 1.0)


def assess(rho: DensityMatrix, tol: Tolerances = DEFAULT) -> EntanglementReading:
    neg = negativity(rho, tol=tol)
    if (rho.dim_a, rho.dim_b) == (3, 3):
        realigned = realigned_negativity(rho, tol=tol)
        if neg > tol.negativity_zero or realigned > tol.negativity_zero:
            verdict = Verdict.ENTANGLED
        else:
            verdict = Verdict.PPT_UNDETECTED
        return EntanglementReading(neg, realigned, verdict)
    if neg > tol.negativity_zero:
        return EntanglementReading(neg, None, Verdict.ENTANGLED)
    return EntanglementReading(neg, None, Verdict.SEPARABLE_2X3)
