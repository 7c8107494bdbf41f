"""Multi-antenna-transmitter schemes (M antennas at both transmitters).

Idle blocks use matched beamforming toward the cognitive receiver. For
active blocks two schemes are implemented:

* decode / dirty-paper / zero-forcing: decode the primary message (listening
  fraction alpha from the vector listening channel), then transmit through a
  projection orthogonal to the transmitter-to-primary-receiver vector h23,
  so nothing needs to be relayed;
* plain zero-forcing: same transmit projection but no decoding, with the
  primary transmission absorbed as noise at the cognitive receiver.

The primary covariance is fixed at (beta P / ((1-p) M)) I, the isotropic
codebook of a transmitter without channel knowledge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelRealization, SystemParams
from .cxla import log_det_identity_plus, orthonormal_complement
from .errors import DegenerateDenominator

__all__ = [
    "MisoEval",
    "rate_miso_state1",
    "alpha_miso",
    "transmit_projection",
    "rate_d_dpc_zf",
    "rate_zf_miso",
]


@dataclass(frozen=True)
class MisoEval:
    """Rates plus the transmit projection that produced them."""

    scheme: str
    alpha: float
    q_t: np.ndarray
    h24_tilde: np.ndarray
    r1: float
    r2: float

    def total(self, p: float) -> float:
        return p * self.r1 + (1.0 - p) * self.r2


def rate_miso_state1(h24: np.ndarray, params: SystemParams, t: float) -> float:
    """Idle-state matched-beamforming rate log2(1 + P(1-t)/p * sum |h24_i|^2)."""
    if params.p <= 0.0:
        return 0.0
    gain = float(np.sum(np.abs(np.asarray(h24)) ** 2))
    return math.log2(1.0 + params.P * (1.0 - t) * gain / params.p)


def alpha_miso(h12: np.ndarray, h13: np.ndarray, params: SystemParams) -> float:
    """Listening fraction with an M-antenna listener.

    Numerator: primary-link bits per use; denominator: log-det rate of the
    M x M listening channel under the isotropic primary covariance.
    """
    if params.p >= 1.0:
        raise ValueError("listening fraction undefined for p = 1")
    c = params.beta * params.P / ((1.0 - params.p) * params.M)
    g13 = float(np.sum(np.abs(np.asarray(h13)) ** 2))
    if c == 0.0 or g13 == 0.0:
        return 0.0
    num = math.log2(1.0 + c * g13)
    h12 = np.asarray(h12, dtype=complex)
    den = log_det_identity_plus(c, h12 @ h12.conj().T)
    if den == 0.0:
        raise DegenerateDenominator("zero listening channel while h13 != 0")
    return num / den


def transmit_projection(ch: ChannelRealization) -> tuple[np.ndarray, np.ndarray]:
    """Q_t orthogonal to h23 and the projected gains h24^H Q_t.

    Channels act in the conjugated (beamforming) convention, y = h^H x, so
    the gain row seen by the cognitive receiver is h24^H Q_t; its squared
    norm is the projection of h24 onto the complement of h23, which
    vanishes when the two are parallel.
    """
    h24 = np.asarray(ch.h24, dtype=complex)
    m = h24.size
    if m < 2:
        # a single antenna leaves no null space to transmit in
        return np.zeros((m, 0), dtype=complex), np.zeros(0, dtype=complex)
    q_t = orthonormal_complement(ch.h23)
    return q_t, np.conj(h24) @ q_t


def rate_d_dpc_zf(
    ch: ChannelRealization, params: SystemParams, t: float, *, noncausal: bool = False
) -> MisoEval:
    """Decode / dirty-paper / zero-forcing rates at power split t.

    ``noncausal=True`` skips the listening phase (alpha forced to 0).
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must be within [0, 1]")
    p, P = params.p, params.P
    r1 = rate_miso_state1(ch.h24, params, t)
    if noncausal or p >= 1.0:
        alpha = 0.0
    else:
        alpha = alpha_miso(ch.h12, ch.h13, params)
    q_t, h24t = transmit_projection(ch)
    gain = float(np.sum(np.abs(h24t) ** 2))
    if p >= 1.0 or alpha >= 1.0:
        # alpha = 1 zeroes the rate by continuity of (1-a) log(1 + x/(1-a))
        r2 = 0.0
    else:
        r2 = (1.0 - alpha) * math.log2(1.0 + P * t * gain / ((1.0 - alpha) * (1.0 - p)))
    scheme = "d_dpc_zf_nc" if noncausal else "d_dpc_zf"
    return MisoEval(scheme, alpha, q_t, h24t, r1, r2)


def rate_zf_miso(ch: ChannelRealization, params: SystemParams, t: float) -> MisoEval:
    """Zero-forcing without decoding: primary interference treated as noise."""
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must be within [0, 1]")
    p, P = params.p, params.P
    r1 = rate_miso_state1(ch.h24, params, t)
    q_t, h24t = transmit_projection(ch)
    gain = float(np.sum(np.abs(h24t) ** 2))
    if p >= 1.0:
        r2 = 0.0
    else:
        g14 = float(np.sum(np.abs(np.asarray(ch.h14)) ** 2))
        interference = 1.0 + params.beta * P * g14 / ((1.0 - p) * params.M)
        r2 = math.log2(1.0 + P * t * gain / ((1.0 - p) * interference))
    return MisoEval("zf_miso", 0.0, q_t, h24t, r1, r2)
