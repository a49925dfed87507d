"""Ergodic secrecy rate toolkit for dual-user-selection uplink transmission.

An uplink slot serves one of K users while the user with the strongest
base-station channel jams the eavesdropper with a signal the base station
can decode and cancel. This package evaluates the scheme's ergodic secrecy
rate three independent ways — exact closed forms plus one quadrature, a
high-SNR closed form, and reproducible Monte Carlo simulation — and searches
for the served user that maximizes it.

Layout:
    specfun     E1, dilogarithm, adaptive quadrature
    analytic    coefficient tables, CDFs, exact and high-SNR rates
    montecarlo  trial engine with counter-based random streams
    selection   one-dimensional served-user search
    cli         CSV-emitting command line driver
"""

__version__ = "0.1.0"

from .analytic import (
    MAX_USERS,
    CapabilityError,
    EsrValue,
    SystemConfig,
    XiTable,
    cdf_T,
    cdf_T_high_snr,
    cdf_order_stat,
    esr_exact,
    esr_high_snr,
    esr_tdma_exact,
    esr_tdma_high_snr,
    exp_cb,
    exp_ce,
    psi,
    theta,
    theta_corrected,
    upsilon,
    upsilon_from_xi,
    xi_table,
)
from .montecarlo import (
    ChannelRealization,
    EsrEstimate,
    SlotRates,
    draw_realization,
    empirical_cdf_T,
    estimate_esr,
    estimate_esr_tdma,
    ks_distance,
    slot_rates,
)
from .selection import SelectionResult, select_served
from .specfun import (
    EULER_GAMMA,
    QuadratureError,
    QuadratureResult,
    e1,
    e1_scaled,
    li2,
    quad_interval,
    quad_semi_infinite,
)

__all__ = [
    "__version__",
    "MAX_USERS",
    "CapabilityError",
    "EsrValue",
    "SystemConfig",
    "XiTable",
    "cdf_T",
    "cdf_T_high_snr",
    "cdf_order_stat",
    "esr_exact",
    "esr_high_snr",
    "esr_tdma_exact",
    "esr_tdma_high_snr",
    "exp_cb",
    "exp_ce",
    "psi",
    "theta",
    "theta_corrected",
    "upsilon",
    "upsilon_from_xi",
    "xi_table",
    "ChannelRealization",
    "EsrEstimate",
    "SlotRates",
    "draw_realization",
    "empirical_cdf_T",
    "estimate_esr",
    "estimate_esr_tdma",
    "ks_distance",
    "slot_rates",
    "SelectionResult",
    "select_served",
    "EULER_GAMMA",
    "QuadratureError",
    "QuadratureResult",
    "e1",
    "e1_scaled",
    "li2",
    "quad_interval",
    "quad_semi_infinite",
]
