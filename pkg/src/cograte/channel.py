"""Node geometry, path-loss gains and Rayleigh fading for the four-node link.

Nodes sit on a line: primary transmitter (node 1), cognitive transmitter
(node 2), cognitive receiver (node 4) and primary receiver (node 3). The
magnitude-squared gain of every link follows the path-loss model
|h_ij|^2 = d_ij^(-gamma) with receiver noise normalized to unit variance,
so the cognitive power P is the SNR scale.

Fading draws are keyed by an explicit (seed, stream_index) pair and are a
pure function of that pair: one counter-based generator per call, entries
consumed in the fixed order h12, h13, h14, h23, h24 (row-major within a
link), each complex coefficient built from two uniform variates as
sqrt(-var * ln(1 - u1)) * exp(2j*pi*u2). Reruns, call order and thread
count therefore cannot change a realization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ZeroDistance

__all__ = [
    "SISO_SISO",
    "MISO_MISO",
    "SISO_MIMO",
    "SCENARIOS",
    "SystemParams",
    "LinearTopology",
    "Seed",
    "ChannelRealization",
    "deterministic_gains",
    "sample_rayleigh",
]

SISO_SISO = "siso_siso"
MISO_MISO = "miso_miso"
SISO_MIMO = "siso_mimo"
SCENARIOS = (SISO_SISO, MISO_MISO, SISO_MIMO)

LINK_ORDER = ("h12", "h13", "h14", "h23", "h24")

_U64_MAX = 2**64 - 1


@dataclass(frozen=True)
class SystemParams:
    """Scenario-wide scalars.

    p: probability of the idle state; beta: primary/secondary average power
    ratio; P: cognitive average power (linear, noise-normalized); M:
    antennas per multi-antenna node; pathloss_exponent: gamma in
    |h|^2 = d^(-gamma).
    """

    p: float
    beta: float
    P: float
    M: int = 1
    pathloss_exponent: float = 2.0

    def __post_init__(self):
        for name in ("p", "beta", "P", "pathloss_exponent"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must be within [0, 1], got {self.p}")
        if self.beta < 0.0:
            raise ValueError("beta must be nonnegative")
        if self.P < 0.0:
            raise ValueError("P must be nonnegative")
        if not (isinstance(self.M, int) and self.M >= 1):
            raise ValueError("M must be an integer >= 1")
        if self.pathloss_exponent <= 0.0:
            raise ValueError("pathloss_exponent must be positive")

    def active_primary_power(self) -> float:
        """Primary transmit power during active blocks, beta*P/(1-p).

        Defined as 0 for p = 1 (the active state never occurs).
        """
        if self.p >= 1.0:
            return 0.0
        return self.beta * self.P / (1.0 - self.p)


@dataclass(frozen=True)
class LinearTopology:
    """Coordinates of the four nodes on a line.

    Default layout puts the transmitters t_d apart, the cognitive pair d_24
    apart and the receivers r_d apart: tx1 = -t_d, tx2 = 0, rx2 = d_24,
    rx1 = d_24 + r_d.
    """

    pos_tx1: float
    pos_tx2: float
    pos_rx2: float
    pos_rx1: float

    def __post_init__(self):
        coords = (self.pos_tx1, self.pos_tx2, self.pos_rx2, self.pos_rx1)
        if not all(math.isfinite(c) for c in coords):
            raise ValueError("coordinates must be finite")
        names = ("tx1", "tx2", "rx2", "rx1")
        for i in range(4):
            for j in range(i + 1, 4):
                if coords[i] == coords[j]:
                    raise ZeroDistance(f"nodes {names[i]} and {names[j]} coincide")

    @classmethod
    def from_spacings(cls, t_d: float, r_d: float, d_24: float = 1.0) -> "LinearTopology":
        return cls(pos_tx1=-t_d, pos_tx2=0.0, pos_rx2=d_24, pos_rx1=d_24 + r_d)

    def distances(self) -> dict[str, float]:
        """Distances of the five channel links, keyed like the coefficients."""
        return {
            "h12": abs(self.pos_tx2 - self.pos_tx1),
            "h13": abs(self.pos_rx1 - self.pos_tx1),
            "h14": abs(self.pos_rx2 - self.pos_tx1),
            "h23": abs(self.pos_rx1 - self.pos_tx2),
            "h24": abs(self.pos_rx2 - self.pos_tx2),
        }


@dataclass(frozen=True)
class Seed:
    """Base seed plus a stream index; distinct streams are independent."""

    seed: int
    stream_index: int = 0

    def __post_init__(self):
        for name in ("seed", "stream_index"):
            v = getattr(self, name)
            if not (isinstance(v, int) and 0 <= v <= _U64_MAX):
                raise ValueError(f"{name} must be an unsigned 64-bit integer")


def _link_shapes(scenario: str, m: int) -> dict[str, tuple[int, ...]]:
    if scenario == SISO_SISO:
        return {name: () for name in LINK_ORDER}
    if scenario == MISO_MISO:
        return {"h12": (m, m), "h13": (m,), "h14": (m,), "h23": (m,), "h24": (m,)}
    if scenario == SISO_MIMO:
        return {"h12": (m,), "h13": (), "h14": (m,), "h23": (m,), "h24": (m, m)}
    raise ValueError(f"unknown scenario {scenario!r}")


@dataclass(frozen=True)
class ChannelRealization:
    """All five link coefficients for one scenario.

    Scalar links are stored as complex numbers, multi-antenna links as
    complex ndarrays shaped per the scenario (see :func:`_link_shapes`).
    """

    scenario: str
    h12: complex | np.ndarray
    h13: complex | np.ndarray
    h14: complex | np.ndarray
    h23: complex | np.ndarray
    h24: complex | np.ndarray

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ValueError(f"unknown scenario {self.scenario!r}")
        m = self.M
        shapes = _link_shapes(self.scenario, m)
        for name in LINK_ORDER:
            value = getattr(self, name)
            want = shapes[name]
            if want == ():
                value = complex(value)
                if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                    raise ValueError(f"{name} must be finite")
            else:
                value = np.asarray(value, dtype=complex)
                if value.shape != want:
                    raise ValueError(f"{name} must have shape {want}, got {value.shape}")
                if not np.isfinite(value).all():
                    raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, value)

    @property
    def M(self) -> int:
        """Antenna count of the multi-antenna nodes (1 for SISO-SISO)."""
        if self.scenario == SISO_SISO:
            return 1
        h24 = np.asarray(self.h24)
        return int(h24.shape[0])


def _link_distances(topology: LinearTopology) -> dict[str, float]:
    dists = topology.distances()
    for name, d in dists.items():
        if d <= 0.0:
            raise ZeroDistance(f"zero distance on link {name}")
    return dists


def deterministic_gains(
    topology: LinearTopology, params: SystemParams, scenario: str
) -> ChannelRealization:
    """Pure path-loss coefficients d^(-gamma/2), zero phase.

    Multi-antenna links replicate the scalar across all antenna entries.
    """
    dists = _link_distances(topology)
    shapes = _link_shapes(scenario, params.M)
    values: dict[str, complex | np.ndarray] = {}
    for name in LINK_ORDER:
        coeff = dists[name] ** (-params.pathloss_exponent / 2.0)
        if shapes[name] == ():
            values[name] = complex(coeff, 0.0)
        else:
            values[name] = np.full(shapes[name], coeff, dtype=complex)
    return ChannelRealization(scenario=scenario, **values)


def _generator(seed: Seed) -> np.random.Generator:
    # Philox keyed by the seed; streams live 2^192 counter steps apart.
    bitgen = np.random.Philox(key=seed.seed, counter=seed.stream_index << 192)
    return np.random.Generator(bitgen)


def _complex_gaussian(uniforms: np.ndarray, variance: float) -> np.ndarray:
    """Circularly symmetric CN(0, variance) from uniform pairs.

    ``uniforms`` has shape (n, 2); amplitude from the first column
    (|h|^2 = -variance * ln(1-u1) is Exp with mean ``variance``), phase from
    the second.
    """
    amp = np.sqrt(-variance * np.log1p(-uniforms[:, 0]))
    return amp * np.exp(2j * np.pi * uniforms[:, 1])


def sample_rayleigh(
    topology: LinearTopology, params: SystemParams, scenario: str, seed: Seed
) -> ChannelRealization:
    """One i.i.d. Rayleigh-fading realization with path-loss variances.

    Every coefficient is CN(0, d^(-gamma)); real and imaginary parts are
    independent with variance d^(-gamma)/2 each. Deterministic in ``seed``.
    """
    dists = _link_distances(topology)
    shapes = _link_shapes(scenario, params.M)
    sizes = [int(np.prod(shapes[name], dtype=int)) if shapes[name] else 1 for name in LINK_ORDER]
    total = sum(sizes)
    uniforms = _generator(seed).random(2 * total).reshape(total, 2)
    values: dict[str, complex | np.ndarray] = {}
    offset = 0
    for name, size in zip(LINK_ORDER, sizes):
        variance = dists[name] ** (-params.pathloss_exponent)
        entries = _complex_gaussian(uniforms[offset : offset + size], variance)
        offset += size
        if shapes[name] == ():
            values[name] = complex(entries[0])
        else:
            values[name] = entries.reshape(shapes[name])
    return ChannelRealization(scenario=scenario, **values)
