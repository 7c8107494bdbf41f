"""Single-antenna schemes: decode-forward plus dirty-paper coding.

During idle blocks the cognitive pair uses the channel alone. During active
blocks the cognitive transmitter first decodes the primary message (a
fraction alpha of the block), then spends a fraction u of its power on its
own dirty-paper-coded signal and relays the primary signal with the rest,
with u chosen so the primary link sees exactly its unperturbed rate
log2(1 + |h13|^2 beta P / (1-p)).

The coexistence equation is quadratic in sqrt((1-u) t / (1-alpha)); both
roots are exposed and the feasible, cognitive-rate-maximizing one (always
the larger u) is selected. The non-causal variant skips decoding
(alpha = 0). ``asymptotic_gain`` is the high-power rate offset of the
non-causal scheme over the classical idle-only approach.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import ChannelRealization, SystemParams
from .errors import DegenerateDenominator, NonPositiveLogArgument, NoValidRoot

__all__ = [
    "SisoStateRates",
    "alpha_siso",
    "power_split_u",
    "primary_rate_rp",
    "rate_df_dpc",
    "rate_f_dpc_noncausal",
    "asymptotic_gain",
]

# roots this far outside [0, 1] are clamped; anything worse aborts
ROOT_CLAMP_TOL = 1e-9


@dataclass(frozen=True)
class SisoStateRates:
    """Per-state rates and the diagnostics behind them.

    ``u`` is present only when the active state is actually used (decodable
    and t > 0); ``branch`` records which closed-form root it came from.
    ``rp_check`` is the primary rate actually seen (the unperturbed rate
    when the cognitive user stays silent in state 2).
    """

    alpha: float
    u: float | None
    delta: float
    r1: float
    r2: float
    rp_check: float
    weak_interference: bool
    decodable: bool
    branch: str | None = None

    def total(self, p: float) -> float:
        return p * self.r1 + (1.0 - p) * self.r2


def alpha_siso(h13: complex, h12: complex, params: SystemParams) -> float:
    """Listening fraction: primary-rate bits over decode-link bits per use.

    0 when the primary is silent in effect (h13 = 0 or beta*P = 0); may
    exceed 1, in which case decoding never finishes.
    """
    if params.p >= 1.0:
        raise ValueError("listening fraction undefined for p = 1")
    g13 = abs(h13) ** 2
    g12 = abs(h12) ** 2
    q = params.beta * params.P / (1.0 - params.p)
    if q == 0.0 or g13 == 0.0:
        return 0.0
    if g12 == 0.0:
        raise DegenerateDenominator("h12 = 0 while h13 != 0: nothing can be decoded")
    return math.log2(1.0 + g13 * q) / math.log2(1.0 + g12 * q)


def _u_roots(
    a: float, b: float, alpha: float, t: float, p: float, P: float
) -> tuple[float, float, float]:
    """Both closed-form roots (larger first) and the discriminant.

    ``a`` = |h13| sqrt(beta), ``b`` = |h23|. The larger root is evaluated
    through a cancellation-free rearrangement of 1 - ratio so it stays
    accurate at large P where ratio -> 1.
    """
    big_d = (1.0 - p) + a * a * P
    s = math.sqrt(1.0 - alpha) * (1.0 - p)
    delta = (1.0 - alpha) * (1.0 - p) ** 2 + P * b * b * t * big_d
    sq = math.sqrt(delta)
    den = b * math.sqrt(t) * big_d
    ratio = a * (sq - s) / den
    one_minus = (
        a * s + (1.0 - p) * (b * b * t * big_d - a * a * (1.0 - alpha) * (1.0 - p)) / (den + a * sq)
    ) / den
    u_plus = one_minus * (1.0 + ratio)
    r_minus = a * (sq + s) / den
    u_minus = 1.0 - r_minus * r_minus
    return u_plus, u_minus, delta


def _select_u(
    a: float, b: float, alpha: float, t: float, p: float, P: float
) -> tuple[float, str, float]:
    """Feasible root with the larger cognitive rate: (u, branch, delta)."""
    if a == 0.0 or b == 0.0:
        # zero target rate, or no interference path: every u preserves the
        # primary rate, and the cognitive rate grows with u
        return 1.0, "plus", math.nan
    u_plus, u_minus, delta = _u_roots(a, b, alpha, t, p, P)
    candidates = []
    for u, branch in ((u_plus, "plus"), (u_minus, "minus")):
        if -ROOT_CLAMP_TOL <= u <= 1.0 + ROOT_CLAMP_TOL:
            candidates.append((min(max(u, 0.0), 1.0), branch))
    if not candidates:
        raise NoValidRoot(
            f"no power-split root within [0, 1] (got {u_plus!r} and {u_minus!r})"
        )
    # the cognitive rate is strictly increasing in u
    return max(candidates, key=lambda c: c[0]) + (delta,)


def power_split_u(
    h13: complex, h23: complex, alpha: float, t: float, params: SystemParams
) -> float:
    """Power fraction u in [0, 1] preserving the primary rate at split t."""
    if not 0.0 <= alpha < 1.0:
        raise ValueError("alpha must be within [0, 1)")
    if not 0.0 < t <= 1.0:
        raise ValueError("t must be within (0, 1]")
    if params.P <= 0.0:
        raise ValueError("P must be positive")
    a = abs(h13) * math.sqrt(params.beta)
    b = abs(h23)
    u, _, _ = _select_u(a, b, alpha, t, params.p, params.P)
    return u


def primary_rate_rp(
    h13: complex,
    h23: complex,
    u: float,
    t: float,
    alpha: float,
    params: SystemParams,
) -> float:
    """Primary rate with the cognitive user relaying (1-u) of its power."""
    if not 0.0 <= u <= 1.0:
        raise ValueError("u must be within [0, 1]")
    if not 0.0 <= alpha < 1.0:
        raise ValueError("alpha must be within [0, 1)")
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must be within [0, 1]")
    a = abs(h13) * math.sqrt(params.beta)
    b = abs(h23)
    if params.P == 0.0:
        return 0.0
    num = (a + b * math.sqrt((1.0 - u) * t / (1.0 - alpha))) ** 2
    den = b * b * u * t / (1.0 - alpha) + (1.0 - params.p) / params.P
    return math.log2(1.0 + num / den)


def _target_primary_rate(h13: complex, params: SystemParams) -> float:
    if params.p >= 1.0 or params.P == 0.0:
        return 0.0
    return math.log2(1.0 + abs(h13) ** 2 * params.active_primary_power())


def _rate_states(
    ch: ChannelRealization, params: SystemParams, t: float, alpha: float
) -> SisoStateRates:
    p, P = params.p, params.P
    g24 = abs(ch.h24) ** 2
    weak = abs(ch.h23) <= abs(ch.h24)
    r1 = math.log2(1.0 + g24 * P * (1.0 - t) / p) if p > 0.0 else 0.0
    decodable = alpha < 1.0
    target = _target_primary_rate(ch.h13, params)

    if p >= 1.0:
        return SisoStateRates(alpha, None, math.nan, r1, 0.0, 0.0, weak, decodable)
    if not decodable or t == 0.0:
        return SisoStateRates(alpha, None, math.nan, r1, 0.0, target, weak, decodable)
    if P == 0.0:
        # nothing to transmit and nothing to protect
        return SisoStateRates(alpha, 1.0, math.nan, r1, 0.0, target, weak, decodable, "plus")

    a = abs(ch.h13) * math.sqrt(params.beta)
    b = abs(ch.h23)
    u, branch, delta = _select_u(a, b, alpha, t, p, P)
    r2 = (1.0 - alpha) * math.log2(1.0 + g24 * P * t * u / ((1.0 - p) * (1.0 - alpha)))
    rp = primary_rate_rp(ch.h13, ch.h23, u, t, alpha, params)
    return SisoStateRates(alpha, u, delta, r1, r2, rp, weak, decodable, branch)


def rate_df_dpc(ch: ChannelRealization, params: SystemParams, t: float) -> SisoStateRates:
    """Causal decode-forward rate record at power split t."""
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must be within [0, 1]")
    alpha = alpha_siso(ch.h13, ch.h12, params) if params.p < 1.0 else 0.0
    return _rate_states(ch, params, t, alpha)


def rate_f_dpc_noncausal(
    ch: ChannelRealization, params: SystemParams, t: float
) -> SisoStateRates:
    """Non-causal (genie-aided) variant: no listening, alpha = 0."""
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must be within [0, 1]")
    return _rate_states(ch, params, t, 0.0)


def asymptotic_gain(ch: ChannelRealization, params: SystemParams, t: float) -> float:
    """High-power offset G(t) of the non-causal scheme over classical.

    Uses the additive branch, the large-P limit of the selected
    power-split root. Defined for t in (0, 1).
    """
    if not 0.0 < t < 1.0:
        raise ValueError("t must be within (0, 1)")
    a13 = abs(ch.h13)
    b = abs(ch.h23)
    g24 = abs(ch.h24) ** 2
    if a13 == 0.0 or b == 0.0 or params.beta <= 0.0:
        raise ValueError("asymptotic gain needs |h13|, |h23| and beta positive")
    arg1 = 1.0 - t
    arg2 = 1.0 + g24 * (b * t + 2.0 * a13 * math.sqrt(params.beta * t)) / (
        b * a13 * a13 * params.beta
    )
    if arg1 <= 0.0 or arg2 <= 0.0:
        raise NonPositiveLogArgument(f"log arguments {arg1}, {arg2} at t={t}")
    return params.p * math.log2(arg1) + (1.0 - params.p) * math.log2(arg2)
