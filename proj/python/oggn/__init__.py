"""Oracle-guided generative networks: invert trained or analytic scorers."""

from ._oggn import (
    OggnError,
    eval_oracle,
    function_gradient,
    function_value,
    invert,
    load_result,
    oracle_value_grad,
    solve_system,
    synth_data,
    train_oracle,
    verify_result,
)

__all__ = [
    "OggnError",
    "eval_oracle",
    "function_gradient",
    "function_value",
    "invert",
    "load_result",
    "oracle_value_grad",
    "solve_system",
    "synth_data",
    "train_oracle",
    "verify_result",
]
