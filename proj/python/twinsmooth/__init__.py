"""Twin smooth integers from the Pell equations x^2 - 2 delta y^2 = 1."""

from ._core import (
    TwinsmoothError,
    chm_expand,
    enumerate_twins,
    factor,
    fundamental_solution,
    is_smooth,
    m_n_from_m1,
    max_m1_bits,
    nth_solution,
    p_coeffs,
    pair_from_triple,
    primes_up_to,
    run_cli,
    sieve_twins,
    triple_from_pair,
    u_coeffs,
    v_coeffs,
    verify_line,
)

__all__ = [
    "TwinsmoothError",
    "chm_expand",
    "enumerate_twins",
    "factor",
    "fundamental_solution",
    "is_smooth",
    "m_n_from_m1",
    "max_m1_bits",
    "nth_solution",
    "p_coeffs",
    "pair_from_triple",
    "primes_up_to",
    "run_cli",
    "sieve_twins",
    "triple_from_pair",
    "u_coeffs",
    "v_coeffs",
    "verify_line",
]
