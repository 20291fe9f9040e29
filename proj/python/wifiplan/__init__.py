"""Access point location and frequency assignment for wireless LANs."""

from ._wifiplan import (
    BudgetExceeded,
    InconsistentDesign,
    Instance,
    InvalidAlpha,
    InvalidConfig,
    IoError,
    NotACover,
    ParseError,
    ScenarioExplosion,
    Topology,
    WifiplanError,
    emit_lp,
    eval_cs,
    eval_design,
    eval_pcs,
    eval_sf,
    generate,
    overlap_edges,
    prune_unused_aps,
    reduce_then_solve,
    reference_instance,
    run_pipeline,
    solve_exact,
    solve_exact_fa,
    solve_local_search,
)

__all__ = [name for name in dir() if not name.startswith("_")]
