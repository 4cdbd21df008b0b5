"""The three parameterized initial-state families.

Basis ordering is lexicographic |i>_A (x) |j>_B throughout, so for the
qubit-qutrit families the flat index is 3i + j and, in 1-based matrix
element names, rho_34 is the <02|rho|10> coherence.

Families (parameter x):

* ``state1`` (2x3, 0 <= x < 1/3): diagonal x/2 on |00>,|01>,|11>,|12> and
  (1-2x)/2 on |02>,|10>, with coherence (1-2x)/2 between |02> and |10>.
* ``state2`` (2x3, 1/3 < x <= 1/2): diagonal x/2 on |00>,|01>,|11>,|12>
  and (1-2x)/2 on |02>,|10>, with coherence x/2 between |00> and |12>.
* ``twoqutrit`` (3x3, 0 <= x < 1/3): diagonal x/3 on the six |ij>, i != j,
  and (1-2x)/3 on |00>,|11>,|22>, with coherence (1-2x)/3 between |00>
  and |22> (the Hermitian completion of the one-sided source expression).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .channels import DecayModel
from .errors import DomainError
from .qla import DensityMatrix

ONE_THIRD = 1.0 / 3.0


class FamilyId(str, enum.Enum):
    STATE1 = "state1"
    STATE2 = "state2"
    TWO_QUTRIT = "twoqutrit"

    @property
    def dims(self) -> tuple[int, int]:
        return (3, 3) if self is FamilyId.TWO_QUTRIT else (2, 3)


@dataclass(frozen=True)
class StateFamily:
    family: FamilyId
    x: float

    def __post_init__(self):
        f, x = self.family, self.x
        if f is FamilyId.STATE1 and not 0.0 <= x < ONE_THIRD:
            raise DomainError(f"state1 requires 0 <= x < 1/3, got {x}")
        if f is FamilyId.STATE2 and not ONE_THIRD < x <= 0.5:
            raise DomainError(f"state2 requires 1/3 < x <= 1/2, got {x}")
        if f is FamilyId.TWO_QUTRIT and not 0.0 <= x < ONE_THIRD:
            raise DomainError(f"twoqutrit requires 0 <= x < 1/3, got {x}")

    @property
    def dims(self) -> tuple[int, int]:
        return self.family.dims


def build_state(family: StateFamily) -> DensityMatrix:
    x = family.x
    if family.family is FamilyId.STATE1:
        w = (1.0 - 2.0 * x) / 2.0
        m = np.zeros((6, 6), dtype=complex)
        for k in (0, 1, 4, 5):  # |00>, |01>, |11>, |12>
            m[k, k] = x / 2.0
        for k in (2, 3):  # |02>, |10>
            m[k, k] = w
        m[2, 3] = m[3, 2] = w
        return DensityMatrix(2, 3, m)
    if family.family is FamilyId.STATE2:
        m = np.zeros((6, 6), dtype=complex)
        for k in (0, 1, 4, 5):
            m[k, k] = x / 2.0
        for k in (2, 3):
            m[k, k] = (1.0 - 2.0 * x) / 2.0
        m[0, 5] = m[5, 0] = x / 2.0  # |00><12| + |12><00|
        return DensityMatrix(2, 3, m)
    w = (1.0 - 2.0 * x) / 3.0
    m = np.zeros((9, 9), dtype=complex)
    for k in (1, 2, 3, 5, 6, 7):  # the six |ij>, i != j
        m[k, k] = x / 3.0
    for k in (0, 4, 8):  # |00>, |11>, |22>
        m[k, k] = w
    m[0, 8] = m[8, 0] = w  # |00><22| + |22><00|
    return DensityMatrix(3, 3, m)


def separability_indicator(x: float, p: float, model: DecayModel) -> float:
    """Closed-form separability indicator for the state1 family under
    single-stage damping.

    Negative iff the evolved state is entangled; where negative, its
    absolute value equals the negativity (the partial transpose has a
    single potentially-negative eigenvalue).  Serves as the independent
    oracle for the full Kraus pipeline.

    Element evolution laws (ground population grows by feeding, the
    coherence pair and the doubly-excited population decay):

      r11(p) = r11 + r44*p + r22*p1 + r55*p*p1 + r33*p2 + r66*p*p2
      r66(p) = r66 * (1-p)(1-p2)
      r34(p) = r34 * sqrt((1-p)(1-p2))
    """
    if not 0.0 <= x < ONE_THIRD:
        raise DomainError(f"indicator is defined for state1 only: 0 <= x < 1/3, got {x}")
    if not 0.0 <= p < 1.0:
        raise DomainError(f"p must lie in [0, 1), got {p}")
    p1, p2 = model.branch_probabilities(p)
    half_x = x / 2.0
    w = (1.0 - 2.0 * x) / 2.0
    # initial diagonal: (r11, r22, r33, r44, r55, r66) = (x/2, x/2, w, w, x/2, x/2)
    r11 = half_x + w * p + half_x * p1 + half_x * p * p1 + w * p2 + half_x * p * p2
    decay = (1.0 - p) * (1.0 - p2)
    r66 = half_x * decay
    coh2 = w * w * decay
    return 0.5 * (r11 + r66 - math.sqrt((r11 - r66) ** 2 + 4.0 * coh2))
