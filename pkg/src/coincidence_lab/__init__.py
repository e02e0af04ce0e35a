"""Exact coincidence classes for multiple maps, with cross-checking oracle.

Public surface re-exported here: exterior algebra, group rings with the
signed conjugation action, the class computations, the affine solver, and
the verdict engine.  The command line lives in :mod:`coincidence_lab.cli`.
"""

from .errors import (
    ArityMismatch,
    CoincidenceLabError,
    DimensionMismatch,
    EnumerationLimit,
    GroupMismatch,
    IndexOutOfRange,
    IntegerOverflow,
    NonTransverse,
    RankMismatch,
    SchemaError,
    UnknownIdentifier,
)
from .matrices import IntegerMatrix, stack_rows
from .exterior import ExteriorElement, pullback, top_coefficient, wedge
from .group_ring import (
    AbelianGroupSpec,
    GroupElement,
    GroupRingElement,
    Homomorphism,
    HomSystem,
    OrientationCharacter,
    act,
    augment,
    induced_act,
)
from .snf import SnfResult, smith_normal_form
from .solver import (
    MAX_ENUMERATED_POINTS,
    AffineTorusMap,
    CoincidencePoint,
    index_sum,
    solve_coincidences,
    stacked_difference,
)
from .lefschetz import (
    ClassValue,
    CohomologyFact,
    CohomologyGroupVanishes,
    FactContext,
    PairClassZero,
    PullbackOfFundamentalClassVanishes,
    TorusMapModel,
    class_from_facts,
    multi_class_torus,
    pair_class_torus,
    sphere_class,
)
from .decider import (
    DEFORMABLE_FREE,
    INCONCLUSIVE,
    NOT_DEFORMABLE,
    RULE_JIANG,
    RULE_NONZERO_CLASS,
    RULE_PRIMARY_OBSTRUCTION,
    RULE_SIMPLY_CONNECTED,
    HypothesisResult,
    JiangType,
    Scenario,
    SourceManifold,
    TargetManifold,
    Verdict,
    check_hypotheses,
    decide,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroupSpec",
    "AffineTorusMap",
    "ArityMismatch",
    "ClassValue",
    "CohomologyFact",
    "CohomologyGroupVanishes",
    "CoincidenceLabError",
    "CoincidencePoint",
    "DEFORMABLE_FREE",
    "DimensionMismatch",
    "EnumerationLimit",
    "ExteriorElement",
    "FactContext",
    "GroupElement",
    "GroupMismatch",
    "GroupRingElement",
    "HomSystem",
    "Homomorphism",
    "HypothesisResult",
    "INCONCLUSIVE",
    "IndexOutOfRange",
    "IntegerMatrix",
    "IntegerOverflow",
    "JiangType",
    "MAX_ENUMERATED_POINTS",
    "NOT_DEFORMABLE",
    "NonTransverse",
    "OrientationCharacter",
    "PairClassZero",
    "PullbackOfFundamentalClassVanishes",
    "RULE_JIANG",
    "RULE_NONZERO_CLASS",
    "RULE_PRIMARY_OBSTRUCTION",
    "RULE_SIMPLY_CONNECTED",
    "RankMismatch",
    "Scenario",
    "SchemaError",
    "SnfResult",
    "SourceManifold",
    "TargetManifold",
    "TorusMapModel",
    "UnknownIdentifier",
    "Verdict",
    "act",
    "augment",
    "check_hypotheses",
    "class_from_facts",
    "decide",
    "index_sum",
    "induced_act",
    "multi_class_torus",
    "pair_class_torus",
    "pullback",
    "smith_normal_form",
    "solve_coincidences",
    "sphere_class",
    "stack_rows",
    "stacked_difference",
    "top_coefficient",
    "wedge",
]
