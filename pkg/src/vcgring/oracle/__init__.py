"""Independent verification engines for the closed-form cohomology tables.

Everything in this subpackage recomputes cohomology groups, induced
actions, and cup products from explicit resolutions and exact integer
linear algebra, sharing no formulas with :mod:`vcgring.closedform`.
"""

from vcgring.oracle.assembly import (
    assembled_cohomology,
    fz_cohomology,
    induced_action,
)
from vcgring.oracle.bar import BarCohomology, TwistedCoefficients, bar_cohomology
from vcgring.oracle.cup import (
    CocycleClassifier,
    aw_cup,
    coboundary_apply,
    cochain_vector,
    is_cocycle,
    paper_cup_oracle,
)
from vcgring.oracle.periodic import cyclic_action_scalar, periodic_cohomology
from vcgring.oracle.resolution import (
    SmallResolution,
    resolution_action,
    resolution_cohomology,
)

__all__ = [
    "BarCohomology",
    "CocycleClassifier",
    "SmallResolution",
    "TwistedCoefficients",
    "assembled_cohomology",
    "aw_cup",
    "bar_cohomology",
    "coboundary_apply",
    "cochain_vector",
    "cyclic_action_scalar",
    "fz_cohomology",
    "induced_action",
    "is_cocycle",
    "paper_cup_oracle",
    "periodic_cohomology",
    "resolution_action",
    "resolution_cohomology",
]
