"""Random hyperbolic graphs with bond and bootstrap percolation."""

from ._hyperperc import (
    ChecksumError,
    DecompositionError,
    Error,
    Graph,
    IoError,
    ModelParams,
    ParameterError,
    ResourceError,
    SchemaError,
    ValidationError,
    bond_percolate,
    bootstrap,
    build_graph,
    compute_C,
    csv_header,
    hill_exponent,
    hyperbolic_distance,
    initial_infection,
    largest_component,
    load_graph,
    mean_local_clustering,
    p_from_multiplier,
    r_core,
    run_single,
    sample_radius,
    save_graph,
    solve_band_recurrence,
)

SWEEP_COLUMNS = tuple(csv_header().split(","))

__all__ = [name for name in dir() if not name.startswith("_")]
