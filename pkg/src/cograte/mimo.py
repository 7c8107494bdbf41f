"""MIMO cognitive pair under a single-antenna primary: dual zero-forcing.

The cognitive transmitter projects onto the complement of its vector toward
the primary receiver (h23); the cognitive receiver projects onto the
complement of the primary's vector toward it (h14). What remains is an
(M-1) x (M-1) effective channel with unit-variance noise preserved by the
orthonormal rows, and both states reduce to water-filling over parallel
modes. A degrees-of-freedom bound for the four-node interference network is
included for reference values.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .channel import ChannelRealization, SystemParams
from .cxla import hermitian, orthonormal_complement, singular_values

__all__ = [
    "WaterfillResult",
    "MimoEval",
    "waterfill",
    "effective_channel",
    "rate_zf_mimo",
    "dof_sum_bound",
]

# all effective singular values at or below this are treated as a singular channel
SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class WaterfillResult:
    """Water level, per-mode powers (input order) and the resulting rate."""

    water_level: float
    powers: np.ndarray
    rate: float
    all_modes_zero: bool = False


@dataclass(frozen=True)
class MimoEval:
    """Projections, effective channel and the two per-state allocations."""

    q_t: np.ndarray
    q_r: np.ndarray
    h24_eff: np.ndarray
    singular_flag: bool
    state1: WaterfillResult | None = None
    state2: WaterfillResult | None = None

    def total(self, p: float) -> float:
        r1 = self.state1.rate if self.state1 is not None else 0.0
        r2 = self.state2.rate if self.state2 is not None else 0.0
        return p * r1 + (1.0 - p) * r2


def waterfill(lambdas: np.ndarray, budget: float) -> WaterfillResult:
    """Water-filling over modes with singular values ``lambdas``.

    Exact active-set solution: sort modes by gain, grow the active set while
    the implied water level exceeds the next inverse gain 1/lambda^2. Zero
    budget or all-zero gains return zero powers and zero rate (the latter
    flagged) rather than erroring, so optimizers can probe endpoints.
    """
    lam = np.asarray(lambdas, dtype=float).reshape(-1)
    if lam.size == 0:
        return WaterfillResult(0.0, np.zeros(0), 0.0, all_modes_zero=budget > 0.0)
    if not np.isfinite(budget) or budget < 0.0:
        raise ValueError("budget must be finite and nonnegative")
    if np.any(lam < 0.0):
        raise ValueError("singular values must be nonnegative")
    order = np.argsort(-lam, kind="stable")
    sorted_lam = lam[order]
    n_pos = int(np.count_nonzero(sorted_lam > 0.0))
    powers = np.zeros(lam.size)
    if n_pos == 0:
        return WaterfillResult(0.0, powers, 0.0, all_modes_zero=budget > 0.0)
    inv = 1.0 / sorted_lam[:n_pos] ** 2  # ascending
    k = n_pos
    for j in range(1, n_pos + 1):
        mu = (budget + inv[:j].sum()) / j
        if j == n_pos or mu <= inv[j]:
            k = j
            break
    mu = (budget + inv[:k].sum()) / k
    active = np.maximum(mu - inv[:k], 0.0)
    powers[order[:k]] = active
    rate = float(np.log2(1.0 + active * sorted_lam[:k] ** 2).sum())
    return WaterfillResult(float(mu), powers, rate, False)


def effective_channel(
    h24: np.ndarray, h14: np.ndarray, h23: np.ndarray
) -> MimoEval:
    """Transmit/receive projections and the (M-1) x (M-1) effective channel.

    Q_t spans the complement of h23 (columns), Q_r the complement of h14
    (rows). Power allocations are left unset; ``rate_zf_mimo`` fills them.
    """
    h24 = np.asarray(h24, dtype=complex)
    q_t = orthonormal_complement(h23)
    q_r = hermitian(orthonormal_complement(h14))
    h24_eff = q_r @ h24 @ q_t
    flag = bool(np.all(singular_values(h24_eff) <= SINGULAR_TOL))
    return MimoEval(q_t=q_t, q_r=q_r, h24_eff=h24_eff, singular_flag=flag)


def rate_zf_mimo(ch: ChannelRealization, params: SystemParams, t: float) -> MimoEval:
    """Dual zero-forcing rates at power split t.

    Idle state: water-filling over the full M x M channel with budget
    P(1-t)/p (zero budget when p = 0). Active state: water-filling over the
    effective channel with budget P t / (1-p).
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must be within [0, 1]")
    proj = effective_channel(ch.h24, ch.h14, ch.h23)
    budget1 = params.P * (1.0 - t) / params.p if params.p > 0.0 else 0.0
    state1 = waterfill(singular_values(ch.h24), budget1)
    budget2 = params.P * t / (1.0 - params.p) if params.p < 1.0 else 0.0
    state2 = waterfill(singular_values(proj.h24_eff), budget2)
    return replace(proj, state1=state1, state2=state2)


def dof_sum_bound(m1: int, m2: int, m3: int, m4: int) -> int:
    """Sum-rate degrees of freedom of the four-node interference network.

    Antenna counts are per node (1 and 3 primary, 2 and 4 cognitive).
    """
    for m in (m1, m2, m3, m4):
        if not (isinstance(m, int) and m >= 1):
            raise ValueError("antenna counts must be positive integers")
    return min(m1 + m2, m3 + m4, max(m1, m4), max(m2, m3))
