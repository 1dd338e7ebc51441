"""K-state p-bit engine for Max-K-Cut, with the 2-state one-hot baseline,
an exhaustive oracle and a behavioral VO2 multi-state p-bit model."""

from ._kpbit import (  # noqa: F401
    CircuitError,
    Graph,
    InstanceTooLarge,
    ParseError,
    brute_force_max_k_cut,
    chi_square_uniform,
    current_bounds,
    cut_value,
    energy,
    generate_random_graph,
    parse_graph,
    probcurve,
    retention_probability,
    run_baseline,
    run_trials,
    simulate_cycles,
    synaptic_input,
)

__version__ = "0.1.0"
