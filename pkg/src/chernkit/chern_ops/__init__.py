from .formal import DesignatedIdeal, FormalChernModel, Lattice
from .identities import Dim4Check, dim4_identity
from .schedule import (
    AdamsMove, NoOp, Schedule, ScheduleReport, SteenrodMove, annihilate_schedule, apply_schedule, mi_search,
)
from .steenrod import (
    SteenrodIdentity, class_in_chern, express_cd_via_steenrod, steenrod_component, steenrod_on_chern_ring,
    steenrod_total_on_class, steenrod_total_on_roots,
)
from .vector import (
    AdamsCombination, ChernVector, CoefficientSpec, adams_combination, adams_single, chern_of_roots,
    lift_class_to_chern, whitney_product,
)

__all__ = [
    "AdamsCombination", "AdamsMove", "ChernVector", "CoefficientSpec", "DesignatedIdeal", "Dim4Check",
    "FormalChernModel", "Lattice", "NoOp", "Schedule", "ScheduleReport", "SteenrodIdentity", "SteenrodMove",
    "adams_combination", "adams_single", "annihilate_schedule", "apply_schedule", "chern_of_roots",
    "class_in_chern", "dim4_identity", "express_cd_via_steenrod", "lift_class_to_chern", "mi_search",
    "steenrod_component", "steenrod_on_chern_ring", "steenrod_total_on_class", "steenrod_total_on_roots",
    "whitney_product",
]
