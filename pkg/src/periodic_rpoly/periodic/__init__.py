"""Periodic R-polynomials: the semi-infinite path model, the double Bruhat
graph model, and the sweeps that check them against each other."""

from .dbg import (
    BRUHAT,
    QUANTUM,
    DBGEdge,
    DBGSums,
    DBPath,
    build_dbg,
    dbg_edge,
    dbg_to_dot,
    dbg_to_json,
    dbp_deg,
    dbp_len_prime,
    dbp_to_sipath,
    enumerate_dbp,
    format_dbpath,
    periodic_r_dbg,
    sipath_to_dbp,
)
from .descent import apply_psi_L, apply_psi_R, descent_bounds, descent_set
from .paths import (
    REFLECTION,
    TRANSLATION,
    PathError,
    PathSums,
    SIEdge,
    SIPath,
    check_chain_monotone,
    edge_d,
    enumerate_si_paths,
    format_path,
    make_edge,
    path_deg,
    path_len,
    path_sets,
    periodic_r_paths,
    r_restricted,
    si_edge_candidates,
    t_restricted,
)
from .suite import (
    CheckResult,
    Engine,
    Report,
    check_decomposition,
    check_identity_suite,
    interval_count,
    run_suite,
)
