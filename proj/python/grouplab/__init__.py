"""Compact-subgroup laboratory.

Hausdorff geometry of spaces of compact subgroups for concrete compact
groups: tori, semidirect products T^m x| F, SO(3) and SU(2). The heavy
lifting lives in the C++ extension module.
"""

from grouplab._core import (
    Group,
    Subgroup,
    approximation_report,
    center_components,
    exp_coverage,
    h2_trivial,
    hausdorff,
    isolation,
    list_experiments,
    minimality,
    myers_bound,
    ricci_min,
    run_experiment,
    turing_gap,
    __version__,
)

__all__ = [
    "Group",
    "Subgroup",
    "approximation_report",
    "center_components",
    "exp_coverage",
    "h2_trivial",
    "hausdorff",
    "isolation",
    "list_experiments",
    "minimality",
    "myers_bound",
    "ricci_min",
    "run_experiment",
    "turing_gap",
    "__version__",
]
