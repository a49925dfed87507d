"""Closed-form ergodic secrecy rate machinery for the dual-selection scheme.

The scheme: out of K uplink users (channel gains to the base station sorted
ascending), the strongest user transmits a jamming signal the base station
can decode and cancel, while user n transmits the secret message, both at
half power. The quantities here are exact expectations over Rayleigh fading:
coefficient tables and the CDF of the jamming-decode SNR, the expected
legitimate and eavesdropper rates, the exact ESR, its high-SNR closed form,
and the TDMA-like single-transmitter baseline.

All rates are in nats. Linear transmit SNR throughout; dB conversions belong
to the presentation layer.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .specfun import EULER_GAMMA, e1_scaled, li2, quad_interval, quad_semi_infinite

__all__ = [
    "MAX_USERS",
    "CapabilityError",
    "SystemConfig",
    "XiTable",
    "EsrValue",
    "xi_table",
    "cdf_T",
    "cdf_T_high_snr",
    "cdf_order_stat",
    "exp_cb",
    "theta",
    "theta_corrected",
    "psi",
    "exp_ce",
    "esr_exact",
    "upsilon",
    "upsilon_from_xi",
    "esr_high_snr",
    "esr_tdma_exact",
    "esr_tdma_high_snr",
]

_LOG2 = math.log(2.0)

#: Largest supported number of users. The alternating sums in the rate
#: formulas lose roughly one decimal digit of precision per two users;
#: beyond 20 users double precision can fail silently, so we refuse.
MAX_USERS = 20


class CapabilityError(ValueError):
    """Parameters outside the numerically certified envelope (e.g. K > 20)."""


def _check_user_count(K):
    if not isinstance(K, (int, np.integer)):
        raise ValueError(f"number of users must be an integer, got {K!r}")
    if K < 2:
        raise ValueError(f"need at least 2 users, got {K}")
    if K > MAX_USERS:
        raise CapabilityError(
            f"K={K} exceeds the supported maximum of {MAX_USERS} users "
            "(alternating-sum cancellation would corrupt the result)"
        )


@dataclass(frozen=True)
class SystemConfig:
    """One scenario: K users, served index n, linear transmit SNR rho.

    The jamming user is always the strongest user (index K); served_index
    may equal K, which denotes the degenerate TDMA-like slot where the best
    user transmits alone at full power and nobody jams.
    """

    num_users: int
    served_index: int
    transmit_snr: float
    jammer_index: int = None

    def __post_init__(self):
        _check_user_count(self.num_users)
        n = self.served_index
        if not isinstance(n, (int, np.integer)) or not (1 <= n <= self.num_users):
            raise ValueError(
                f"served_index must be an integer in [1, {self.num_users}], got {n!r}"
            )
        rho = self.transmit_snr
        if not (isinstance(rho, (int, float, np.floating)) and math.isfinite(rho) and rho > 0):
            raise ValueError(f"transmit_snr must be positive and finite, got {rho!r}")
        if self.jammer_index is None:
            object.__setattr__(self, "jammer_index", self.num_users)
        elif self.jammer_index != self.num_users:
            raise ValueError(
                f"jammer_index is always the strongest user {self.num_users}, "
                f"got {self.jammer_index!r}"
            )


@dataclass(frozen=True)
class XiTable:
    """Signed coefficients of the jamming-decode SNR CDF, indexed [i, j]
    with i in [0, K-n] and j in [0, n-1]."""

    K: int
    n: int
    coefficients: np.ndarray


@dataclass(frozen=True)
class EsrValue:
    """An ergodic secrecy rate in nats: the clamped value and the raw
    difference of expectations it was clamped from."""

    value: float
    unclamped: float


def _clamped(unclamped):
    return EsrValue(value=max(0.0, unclamped), unclamped=unclamped)


@lru_cache(maxsize=None)
def xi_table(K, n):
    """Coefficient table Xi[i, j] = (-1)^(i+j) n C(K,n) C(K-n,i) C(n-1,j).

    Exact in double precision for K <= 20 (all binomials are exact
    integers well below 2^53). Requires 1 <= n <= K-1: the table only
    exists for the dual-selection slot, not for the TDMA case n = K.
    """
    _check_user_count(K)
    if not isinstance(n, (int, np.integer)) or not (1 <= n <= K - 1):
        raise ValueError(f"served index must be in [1, {K - 1}], got {n!r}")
    lead = n * math.comb(K, n)
    coeff = np.empty((K - n + 1, n))
    for i in range(K - n + 1):
        ci = math.comb(K - n, i)
        for j in range(n):
            sign = -1.0 if (i + j) % 2 else 1.0
            coeff[i, j] = sign * lead * ci * math.comb(n - 1, j)
    coeff.setflags(write=False)
    return XiTable(K=int(K), n=int(n), coefficients=coeff)


def _as_float_array(t, name):
    arr = np.asarray(t, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0.0):
        raise ValueError(f"{name} must be >= 0, got {t!r}")
    return arr


def cdf_T(t, cfg):
    """CDF of T = |h_K|^2 / (|h_n|^2 + 2/rho), the base station's SNR for
    decoding the jamming signal.

    Accepts a scalar or array t >= 0. The formula has two branches glued at
    t = 1; the lower branch's extra exponential vanishes as t -> 1-, so the
    CDF is continuous there.
    """
    table = xi_table(cfg.num_users, cfg.served_index)
    K, n, rho = table.K, table.n, cfg.transmit_snr
    scalar = np.ndim(t) == 0
    arr = np.atleast_1d(_as_float_array(t, "t"))
    out = np.zeros_like(arr)
    hi = arr >= 1.0
    lo = ~hi
    th, tl = arr[hi], arr[lo]
    with np.errstate(over="ignore"):
        for i in range(K - n + 1):
            # write the i = 0 term explicitly: i*t would produce nan at t = inf
            e_hi = np.exp(-2.0 * th * i / rho) if i else np.ones_like(th)
            e_lo = np.exp(-2.0 * tl * i / rho) if i else np.ones_like(tl)
            for j in range(n):
                c = table.coefficients[i, j]
                b = K - n + 1 + j
                d_hi = i * (th - 1.0) + b if i else b
                out[hi] += c * e_hi / d_hi
                # exponent -> -inf as t -> 1-, so exp() underflows to 0
                # exactly where the branches meet
                tail = np.exp(-2.0 * tl * b / (rho * (1.0 - tl)))
                out[lo] += c * (e_lo - tail) / (i * (tl - 1.0) + b)
    return float(out[0]) if scalar else out


def cdf_T_high_snr(t, K, n):
    """Limiting CDF of the jamming-decode SNR as rho -> inf: zero below
    t = 1 (the strongest gain can never trail the n-th), rational above."""
    table = xi_table(K, n)
    scalar = np.ndim(t) == 0
    arr = np.atleast_1d(_as_float_array(t, "t"))
    out = np.zeros_like(arr)
    th = arr[arr >= 1.0]
    acc = np.zeros_like(th)
    for i in range(K - n + 1):
        for j in range(n):
            b = K - n + 1 + j
            acc += table.coefficients[i, j] / (i * (th - 1.0) + b if i else b)
    out[arr >= 1.0] = acc
    return float(out[0]) if scalar else out


def _check_order_stat_count(K):
    # K = 1 is a legitimate order-statistic question even though the scheme
    # itself needs two users.
    if not isinstance(K, (int, np.integer)) or K < 1:
        raise ValueError(f"number of users must be a positive integer, got {K!r}")
    if K > MAX_USERS:
        raise CapabilityError(
            f"K={K} exceeds the supported maximum of {MAX_USERS} users"
        )


def cdf_order_stat(x, K, n):
    """CDF of the n-th smallest of K i.i.d. unit-mean exponential gains."""
    _check_order_stat_count(K)
    if not (1 <= n <= K):
        raise ValueError(f"order index must be in [1, {K}], got {n!r}")
    scalar = np.ndim(x) == 0
    arr = np.atleast_1d(_as_float_array(x, "x"))
    q = np.exp(-arr)
    p = -np.expm1(-arr)
    out = np.zeros_like(arr)
    for i in range(n, K + 1):
        out += math.comb(K, i) * p**i * q ** (K - i)
    return float(out[0]) if scalar else out


def _require_dual_slot(cfg):
    if cfg.served_index > cfg.num_users - 1:
        raise ValueError(
            "served_index = K is the TDMA-like slot; use esr_tdma_exact / "
            "esr_tdma_high_snr for it"
        )


def exp_cb(cfg):
    """Expected legitimate rate E[log(1 + (rho/2)|h_n|^2)] in nats.

    Closed form: two alternating sums of e^x E1(x) terms, equal to the
    defining integral of the order-statistic survival function against the
    SNR kernel.
    """
    _require_dual_slot(cfg)
    K, n, rho = cfg.num_users, cfg.served_index, cfg.transmit_snr
    first = [
        (-1.0) ** (i + 1) * math.comb(K, i) * e1_scaled(2.0 * i / rho)
        for i in range(1, K + 1)
    ]
    second = [
        (-1.0) ** j * math.comb(K, i) * math.comb(i, j) * e1_scaled(2.0 * (K + j - i) / rho)
        for i in range(n, K)
        for j in range(0, i + 1)
    ]
    return math.fsum(first) - math.fsum(second)


def theta(u, rho):
    """Eavesdropper-rate kernel with the substituted inner integral taken
    over v in (0, inf).

    This is the weight against which the jamming-decode CDF is integrated.
    Extending the inner integral to v = 0 reaches outside the image of the
    positive-gain quadrant; theta_corrected restricts it to the exact image.
    Both are kept: this one for reference, the corrected one for results.

    Vanishes at both ends: ~ (rho - 1) u as u -> 0+ (the e^x E1(x) factor
    decays like 1/x against the 1/u pole, so no overflow), ~ -log(u)/u^2 as
    u -> inf.
    """
    u = float(u)
    if not (math.isfinite(u) and u > 0.0):
        raise ValueError(f"u must be positive and finite, got {u!r}")
    phi = e1_scaled(2.0 * (u + 1.0) / (rho * u))
    first = (phi + 1.0 - math.log1p(u)) / ((u + 1.0) * (u + 1.0))
    second = (2.0 / rho) * phi / (u * (u + 1.0))
    return first - second


def theta_corrected(u, rho):
    """Eavesdropper-rate kernel with the inner integral restricted to
    v > 2u/rho, the exact image of the positive-gain quadrant under
    (z, y) -> (u, v) = (y/(z + 2/rho), y).

    Closed form (the boundary terms cancel because 1 + (rho/2)(2u/rho)
    equals 1 + u exactly):

        e^(-2(u+1)/rho) * [ 1/(u+1)^2
                            + e^w E1(w) * (1/(u+1)^2 - 2/(rho u (u+1))) ],
        w = 2 (u+1)^2 / (rho u).

    Decays like e^(-2u/rho)/u^2 for large u, so the tail integral converges
    much faster than for the uncorrected kernel.
    """
    u = float(u)
    if not (math.isfinite(u) and u > 0.0):
        raise ValueError(f"u must be positive and finite, got {u!r}")
    up1 = u + 1.0
    w = 2.0 * up1 * up1 / (rho * u)
    phi = e1_scaled(w)
    bracket = 1.0 / (up1 * up1) + phi * (1.0 / (up1 * up1) - 2.0 / (rho * u * up1))
    return math.exp(-2.0 * up1 / rho) * bracket


def psi(cfg, tol=1e-9, variant="corrected"):
    """Integral of the eavesdropper kernel against the jamming-decode CDF,
    Psi = int_0^inf kernel(u) F_T(u) du, to absolute tolerance tol.

    variant selects the kernel: "corrected" (default) integrates over the
    exact image of the positive-gain quadrant and is the one that matches
    simulation; "printed" keeps the v-from-0 kernel for comparison. The
    domain is split at u = 1 where the CDF switches branches.
    """
    _require_dual_slot(cfg)
    kernel = _select_kernel(variant)
    rho = cfg.transmit_snr

    def f(u):
        return kernel(u, rho) * cdf_T(u, cfg)

    left = quad_interval(f, 0.0, 1.0, tol=0.5 * tol)
    right = quad_semi_infinite(f, 1.0, tol=0.5 * tol)
    return left.value + right.value


def _select_kernel(variant):
    if variant == "corrected":
        return theta_corrected
    if variant == "printed":
        return theta
    raise ValueError(f"variant must be 'corrected' or 'printed', got {variant!r}")


def exp_ce(cfg, tol=1e-9, variant="corrected"):
    """Expected eavesdropper rate E[C_e] in nats.

    Sum of the no-jamming-knowledge baseline 1 - (2/rho) e^x E1(x) at
    x = 2/rho and the decode-probability-weighted correction e^(2/rho) Psi.
    """
    rho = cfg.transmit_snr
    a = 2.0 / rho
    re1 = 1.0 - a * e1_scaled(a)
    return re1 + math.exp(a) * psi(cfg, tol=tol, variant=variant)


def esr_exact(cfg, tol=1e-9, variant="corrected"):
    """Exact ergodic secrecy rate of the dual-selection slot, in nats.

    Difference of the expected legitimate and eavesdropper rates, clamped
    at zero (the clamp applies to the difference of expectations, not per
    realization).
    """
    unclamped = exp_cb(cfg) - exp_ce(cfg, tol=tol, variant=variant)
    return _clamped(unclamped)


def upsilon_from_xi(xi, rho):
    """High-SNR tail integral
    int_1^inf [log(rho/2) + 1 - gamma + log(u/(u+1)^2)] / ((u+1)^2 (u+xi)) du
    as a closed form in the partial-fraction parameter xi > 0.

    The xi = 1 case is a separate closed form; the xi != 1 branches are
    continuous across it (the apparent 1/(1-xi)^2 poles cancel against the
    dilogarithm combination).
    """
    if not (math.isfinite(xi) and xi > 0.0):
        raise ValueError(f"xi must be positive and finite, got {xi!r}")
    lead = math.log(0.5 * rho) + 1.0 - EULER_GAMMA
    if xi == 1.0:
        return lead / 8.0 + _LOG2 / 4.0 - 3.0 / 8.0
    om = 1.0 - xi
    nu = (
        lead * (xi - 1.0 + 2.0 * math.log(2.0 / (1.0 + xi))) / (2.0 * om * om)
        + 1.0 / om
        - (math.pi**2 + 12.0 * _LOG2**2) / (12.0 * om * om)
    )
    if xi < 1.0:
        zeta = 2.0 * _LOG2 * math.log((xi + 1.0) / xi) - _LOG2**2
    else:
        zeta = (
            2.0 * _LOG2 * math.log((xi + 1.0) / (xi - 1.0))
            + math.log((xi - 1.0) / xi) ** 2
            - math.log((xi - 1.0) / (2.0 * xi)) ** 2
        )
    mu = (
        2.0 * (li2((xi - 1.0) / xi) - li2((xi - 1.0) / (2.0 * xi)))
        - li2(-xi)
        + zeta
    ) / (om * om)
    return nu + mu


def upsilon(i, j, K, n, rho):
    """Closed-form tail integral for table entry (i, j); i >= 1 only, the
    i = 0 row integrates to the constant absorbed in the leading term."""
    if not (isinstance(i, (int, np.integer)) and i >= 1):
        raise ValueError(f"i must be an integer >= 1, got {i!r}")
    if not (isinstance(j, (int, np.integer)) and 0 <= j <= n - 1):
        raise ValueError(f"j must be an integer in [0, {n - 1}], got {j!r}")
    if i > K - n:
        raise ValueError(f"i must be <= K - n = {K - n}, got {i}")
    xi = (K - n + 1 + j) / i - 1.0
    return upsilon_from_xi(xi, rho)


def _varpi(K, n):
    # Multiuser-diversity constant of the high-SNR legitimate rate.
    first = [
        (-1.0) ** j * math.comb(K, i) * math.comb(i, j) * math.log(K + j - i)
        for i in range(n, K)
        for j in range(0, i + 1)
    ]
    second = [(-1.0) ** i * math.comb(K, i) * math.log(i) for i in range(1, K + 1)]
    return math.fsum(first) + math.fsum(second)


def esr_high_snr(cfg):
    """High-SNR closed-form ESR of the dual-selection slot, in nats.

    (log(rho/2) - 1 - gamma)/2 + varpi - sum_{i>=1, j} (Xi_ij / i) Upsilon_ij,
    clamped at zero. Grows like c * log(rho/2) with c = 1/2 minus the
    limiting decode probability weight carried by the Upsilon terms.
    """
    _require_dual_slot(cfg)
    table = xi_table(cfg.num_users, cfg.served_index)
    K, n, rho = table.K, table.n, cfg.transmit_snr
    tail = [
        table.coefficients[i, j] / i * upsilon(i, j, K, n, rho)
        for i in range(1, K - n + 1)
        for j in range(n)
    ]
    unclamped = (
        (math.log(0.5 * rho) - 1.0 - EULER_GAMMA) / 2.0
        + _varpi(K, n)
        - math.fsum(tail)
    )
    return _clamped(unclamped)


def esr_tdma_exact(K, rho):
    """Exact ESR of the TDMA-like baseline: the strongest user transmits
    alone at full power, the eavesdropper overhears through an independent
    unit-mean gain. In nats."""
    _check_order_stat_count(K)
    if not (math.isfinite(rho) and rho > 0):
        raise ValueError(f"rho must be positive and finite, got {rho!r}")
    best = math.fsum(
        (-1.0) ** (i + 1) * math.comb(K, i) * e1_scaled(i / rho)
        for i in range(1, K + 1)
    )
    return _clamped(best - e1_scaled(1.0 / rho))


def esr_tdma_high_snr(K, variant="corrected"):
    """High-SNR limit of the TDMA-like ESR: an alternating binomial-log sum,
    independent of transmit power.

    Two sign conventions of this series are in circulation. "corrected"
    (default) evaluates sum_i (-1)^i C(K,i) log(i), which equals
    E[log max of K exponentials] - E[log exponential] and matches
    simulation; "printed" evaluates the flipped-sign form, which is
    negative for every K >= 2 and therefore clamps to zero.
    """
    if not isinstance(K, (int, np.integer)) or K < 1:
        raise ValueError(f"K must be a positive integer, got {K!r}")
    if variant == "corrected":
        unclamped = math.fsum(
            (-1.0) ** i * math.comb(K, i) * math.log(i) for i in range(1, K + 1)
        )
    elif variant == "printed":
        unclamped = math.fsum(
            (-1.0) ** (i + 1) * math.comb(K, i) * math.log(i) for i in range(1, K + 1)
        )
    else:
        raise ValueError(f"variant must be 'corrected' or 'printed', got {variant!r}")
    return _clamped(unclamped)
