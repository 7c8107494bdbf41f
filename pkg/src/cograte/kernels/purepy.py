"""Pure-numpy rate-curve kernels.

Reference implementation of the hot loops: evaluating a scheme's total rate
over a dense grid of power splits t. The compiled twin in ``_native.pyx``
implements the same contracts; tests hold the two within 1e-12 of each other.

Conventions shared by both backends:
  * t <= 0 contributes no active-state rate (the 0*log(1+x/0) convention);
  * the power-split u is the larger closed-form root, clipped to [0, 1];
  * alpha >= 1 or p >= 1 zeroes the active-state term;
  * modes with zero gain receive no water-filling power.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "siso_power_split_curve",
    "siso_total_rate_curve",
    "two_state_log_curve",
    "waterfill_rate_curve",
]


def siso_power_split_curve(
    t: np.ndarray, p: float, P: float, a: float, b: float, alpha: float
) -> np.ndarray:
    """Power fraction u(t) keeping the primary single-antenna rate fixed.

    ``a`` is |h13|*sqrt(beta), ``b`` is |h23|. Entries with t <= 0 come back
    NaN (u is undefined there). Requires alpha < 1 and p < 1.
    """
    t = np.asarray(t, dtype=float)
    out = np.full(t.shape, np.nan)
    mask = t > 0.0
    if not mask.any():
        return out
    if a == 0.0 or b == 0.0:
        # no primary rate to protect, or no interference path: all power to
        # the cognitive signal
        out[mask] = 1.0
        return out
    tt = t[mask]
    big_d = (1.0 - p) + a * a * P
    s = math.sqrt(1.0 - alpha) * (1.0 - p)
    delta = (1.0 - alpha) * (1.0 - p) ** 2 + P * b * b * tt * big_d
    sq = np.sqrt(delta)
    den = b * np.sqrt(tt) * big_d
    ratio = a * (sq - s) / den
    # 1 - ratio rearranged so every term is positive (no cancellation at
    # large P, where ratio -> 1)
    one_minus = (
        a * s
        + (1.0 - p) * (b * b * tt * big_d - a * a * (1.0 - alpha) * (1.0 - p)) / (den + a * sq)
    ) / den
    u = one_minus * (1.0 + ratio)
    np.clip(u, 0.0, 1.0, out=u)
    out[mask] = u
    return out


def siso_total_rate_curve(
    t: np.ndarray, p: float, P: float, g24: float, a: float, b: float, alpha: float
) -> np.ndarray:
    """Total decode-forward/dirty-paper rate p*r1 + (1-p)*r2 over a t grid.

    ``g24`` is |h24|^2. Pass alpha = 0 for the non-causal variant.
    """
    t = np.asarray(t, dtype=float)
    rate = np.zeros(t.shape)
    if p > 0.0:
        rate += p * np.log2(1.0 + g24 * P * (1.0 - t) / p)
    if p >= 1.0 or alpha >= 1.0 or P == 0.0:
        return rate
    mask = t > 0.0
    if mask.any():
        u = siso_power_split_curve(t[mask], p, P, a, b, alpha)
        r2 = (1.0 - alpha) * np.log2(
            1.0 + g24 * P * t[mask] * u / ((1.0 - p) * (1.0 - alpha))
        )
        rate[mask] += (1.0 - p) * r2
    return rate


def two_state_log_curve(
    t: np.ndarray, p: float, c1: float, w: float, c2: float
) -> np.ndarray:
    """p*log2(1 + c1*(1-t)) + (1-p)*w*log2(1 + c2*t) over a t grid.

    Covers the multi-antenna schemes whose per-state rates are single logs:
    c1 carries the idle-state beamforming gain, w the listening weight
    (1-alpha, or 1 when nothing is decoded) and c2 the active-state gain.
    """
    t = np.asarray(t, dtype=float)
    rate = np.zeros(t.shape)
    if p > 0.0:
        rate += p * np.log2(1.0 + c1 * (1.0 - t))
    if p < 1.0 and w > 0.0 and c2 > 0.0:
        rate += (1.0 - p) * w * np.log2(1.0 + c2 * t)
    return rate


def waterfill_rate_curve(lam_sq: np.ndarray, budgets: np.ndarray) -> np.ndarray:
    """Water-filling rate over modes with gains ``lam_sq`` for each budget.

    Vectorized closed form: with the inverse gains sorted ascending, mode
    k+1 joins the active set once the budget exceeds
    theta_k = k*inv[k] - sum(inv[:k]); the water level for k active modes is
    (budget + sum(inv[:k])) / k.
    """
    budgets = np.asarray(budgets, dtype=float)
    lam_sq = np.asarray(lam_sq, dtype=float)
    pos = np.sort(lam_sq[lam_sq > 0.0])[::-1]
    if pos.size == 0:
        return np.zeros(budgets.shape)
    inv = 1.0 / pos  # ascending
    csum = np.cumsum(inv)
    ks = np.arange(1, inv.size)
    theta = ks * inv[1:] - csum[:-1]
    k = 1 + np.searchsorted(theta, budgets, side="right")
    mu = (budgets + csum[k - 1]) / k
    logsum = np.cumsum(np.log2(inv))
    return k * np.log2(mu) - logsum[k - 1]
