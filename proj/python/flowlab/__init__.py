"""Flow-variable (Madelung) analysis of planar wave functions."""

from ._flowlab import (
    FlowlabError,
    Grid2D,
    __version__,
    alpha_fields,
    balance_residual,
    circulation,
    density_drift,
    detect_nodes,
    evolve_density,
    factor_out,
    kinematic_fields,
    laplacian,
    loop_winding,
    penalty_balance_at_core,
    polar_decompose,
    quantum_potential_direct,
    regularize_flow,
    run_cli,
    synth,
)

__all__ = [
    "FlowlabError",
    "Grid2D",
    "__version__",
    "alpha_fields",
    "balance_residual",
    "circulation",
    "density_drift",
    "detect_nodes",
    "evolve_density",
    "factor_out",
    "kinematic_fields",
    "laplacian",
    "loop_winding",
    "penalty_balance_at_core",
    "polar_decompose",
    "quantum_potential_direct",
    "regularize_flow",
    "run_cli",
    "synth",
]
