"""Resonances of finitely perturbed discrete-time quantum walks on Z."""

from ._core import (
    Coin,
    CoinSequence,
    DomainError,
    NumericalError,
    PoleError,
    WalkState,
    apply_U,
    cutoff_matrix,
    double_barrier,
    evolve,
    expand,
    find_resonances,
    group_product,
    incoming_resonances,
    mean_survival_time,
    perturb,
    predict_evolution,
    random_walk,
    resonant_chain,
    run_acceptance,
    scattering_matrix,
    sigma,
    survival,
    transfer_at,
    triple_barrier,
    upsilon,
)

__all__ = [
    "Coin",
    "CoinSequence",
    "DomainError",
    "NumericalError",
    "PoleError",
    "WalkState",
    "apply_U",
    "cutoff_matrix",
    "double_barrier",
    "evolve",
    "expand",
    "find_resonances",
    "group_product",
    "incoming_resonances",
    "mean_survival_time",
    "perturb",
    "predict_evolution",
    "random_walk",
    "resonant_chain",
    "run_acceptance",
    "scattering_matrix",
    "sigma",
    "survival",
    "transfer_at",
    "triple_barrier",
    "upsilon",
]
