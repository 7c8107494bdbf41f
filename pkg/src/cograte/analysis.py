"""Power-split optimization, multiplexing-gain slopes and Monte Carlo sweeps.

``optimize_t`` is a deterministic dense-grid scan over [0, 1] followed by a
golden-section polish of the winning bracket. ``evaluate_scheme`` builds the
vectorized rate curve for one scheme and one channel realization, optimizes
it and re-derives the full diagnostic record at the winner.

Monte Carlo averaging uses common random numbers: trial k always maps to
fading stream k, so every power point of a sweep sees the same channel set.
Trials may be evaluated on a thread pool; the reduction runs in trial-index
order, so results are bit-identical for any worker count.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from . import kernels, mimo, miso, siso
from .channel import (
    MISO_MISO,
    SISO_MIMO,
    SISO_SISO,
    ChannelRealization,
    LinearTopology,
    Seed,
    SystemParams,
    deterministic_gains,
    sample_rayleigh,
)
from .cxla import singular_values

__all__ = [
    "DEFAULT_T_GRID",
    "SCHEMES",
    "SCHEME_SCENARIO",
    "SchemeEval",
    "SweepPoint",
    "optimize_t",
    "evaluate_scheme",
    "max_asymptotic_gain",
    "multiplexing_slope",
    "slope_reference",
    "monte_carlo_sweep",
]

log = logging.getLogger(__name__)

DEFAULT_T_GRID = 2001
REFINE_WIDTH = 1e-9

SCHEMES = ("classical", "df_dpc", "f_dpc_nc", "d_dpc_zf", "d_dpc_zf_nc", "zf_miso", "zf_mimo")

# scenario each scheme requires; classical runs everywhere
SCHEME_SCENARIO = {
    "classical": None,
    "df_dpc": SISO_SISO,
    "f_dpc_nc": SISO_SISO,
    "d_dpc_zf": MISO_MISO,
    "d_dpc_zf_nc": MISO_MISO,
    "zf_miso": MISO_MISO,
    "zf_mimo": SISO_MIMO,
}


@dataclass(frozen=True)
class SchemeEval:
    """One scheme's optimized operating point and diagnostics."""

    scheme: str
    total_rate: float
    t_star: float
    alpha: float | None
    u: float | None
    rate1: float
    rate2: float
    diagnostics: dict

    def __post_init__(self):
        object.__setattr__(self, "diagnostics", dict(self.diagnostics))


@dataclass(frozen=True)
class SweepPoint:
    """Per-scheme averaged evaluations at one power point."""

    p_db: float
    trials: int
    seed: int
    evals: dict[str, SchemeEval]


def optimize_t(
    rate_fn: Callable,
    grid_size: int = DEFAULT_T_GRID,
    *,
    vectorized: bool = False,
) -> tuple[float, float]:
    """Maximize ``rate_fn`` over t in [0, 1]; returns (t_star, rate).

    A uniform grid of ``grid_size`` points is scanned, then the bracket
    around the best point is refined by golden section down to width 1e-9.
    With ``vectorized=True`` the function is called once on the whole grid
    (and on length-1 arrays during refinement). Failures (exceptions or
    NaN) at scanned points count as rate 0 and are logged; ties keep the
    smallest t.
    """
    if grid_size < 3:
        raise ValueError("grid_size must be at least 3")
    ts = np.linspace(0.0, 1.0, grid_size)
    failures = 0

    if vectorized:
        def evaluate(x: float) -> float:
            return float(np.asarray(rate_fn(np.array([x])), dtype=float)[0])

        values = np.asarray(rate_fn(ts), dtype=float).copy()
    else:
        def evaluate(x: float) -> float:
            try:
                return float(rate_fn(x))
            except Exception:
                return math.nan

        values = np.array([evaluate(t) for t in ts])

    bad = ~np.isfinite(values) & ~np.isneginf(values)
    if bad.any():
        failures += int(bad.sum())
        values[bad] = 0.0

    i = int(np.argmax(values))
    best_t, best_v = float(ts[i]), float(values[i])

    lo = float(ts[max(i - 1, 0)])
    hi = float(ts[min(i + 1, grid_size - 1)])
    invphi = (math.sqrt(5.0) - 1.0) / 2.0

    def probe(x: float) -> float:
        v = evaluate(x)
        if math.isnan(v):
            nonlocal failures
            failures += 1
            return 0.0
        return v

    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = probe(c), probe(d)
    while b - a > REFINE_WIDTH:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = probe(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = probe(d)
        for x, v in ((c, fc), (d, fd)):
            if v > best_v:
                best_t, best_v = x, v
    if failures:
        log.warning("optimize_t: %d rate evaluations failed and counted as 0", failures)
    return best_t, best_v


def _siso_profile(ch: ChannelRealization, params: SystemParams, noncausal: bool):
    a = abs(ch.h13) * math.sqrt(params.beta)
    b = abs(ch.h23)
    g24 = abs(ch.h24) ** 2
    if noncausal or params.p >= 1.0:
        alpha = 0.0
    else:
        alpha = siso.alpha_siso(ch.h13, ch.h12, params)
    return a, b, g24, alpha


def _rate_curve(
    scheme: str, ch: ChannelRealization, params: SystemParams
) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorized t -> total rate for one realization (profile precomputed)."""
    p, P = params.p, params.P
    if scheme in ("df_dpc", "f_dpc_nc"):
        a, b, g24, alpha = _siso_profile(ch, params, scheme == "f_dpc_nc")
        return lambda ts: kernels.siso_total_rate_curve(ts, p, P, g24, a, b, alpha)
    if scheme in ("d_dpc_zf", "d_dpc_zf_nc", "zf_miso"):
        gain24 = float(np.sum(np.abs(np.asarray(ch.h24)) ** 2))
        c1 = P * gain24 / p if p > 0.0 else 0.0
        _, h24t = miso.transmit_projection(ch)
        gain_t = float(np.sum(np.abs(h24t) ** 2))
        if scheme == "zf_miso":
            g14 = float(np.sum(np.abs(np.asarray(ch.h14)) ** 2))
            w = 1.0
            c2 = 0.0
            if p < 1.0:
                noise = 1.0 + params.beta * P * g14 / ((1.0 - p) * params.M)
                c2 = P * gain_t / ((1.0 - p) * noise)
        else:
            alpha = 0.0
            if scheme == "d_dpc_zf" and p < 1.0:
                alpha = miso.alpha_miso(ch.h12, ch.h13, params)
            w = max(1.0 - alpha, 0.0)
            c2 = P * gain_t / ((1.0 - alpha) * (1.0 - p)) if (alpha < 1.0 and p < 1.0) else 0.0
        return lambda ts: kernels.two_state_log_curve(ts, p, c1, w, c2)
    if scheme == "zf_mimo":
        lam_sq = singular_values(ch.h24) ** 2
        proj = mimo.effective_channel(ch.h24, ch.h14, ch.h23)
        lam_sq_eff = singular_values(proj.h24_eff) ** 2

        def curve(ts: np.ndarray) -> np.ndarray:
            ts = np.asarray(ts, dtype=float)
            out = np.zeros(ts.shape)
            if p > 0.0:
                out += p * kernels.waterfill_rate_curve(lam_sq, P * (1.0 - ts) / p)
            if p < 1.0:
                out += (1.0 - p) * kernels.waterfill_rate_curve(lam_sq_eff, P * ts / (1.0 - p))
            return out

        return curve
    raise ValueError(f"unknown scheme {scheme!r}")


def _classical_eval(ch: ChannelRealization, params: SystemParams) -> SchemeEval:
    p, P = params.p, params.P
    if ch.scenario == SISO_SISO:
        r1 = math.log2(1.0 + abs(ch.h24) ** 2 * P / p) if p > 0.0 else 0.0
    elif ch.scenario == MISO_MISO:
        r1 = miso.rate_miso_state1(ch.h24, params, 0.0)
    else:
        budget = P / p if p > 0.0 else 0.0
        r1 = mimo.waterfill(singular_values(ch.h24), budget).rate
    return SchemeEval(
        scheme="classical",
        total_rate=p * r1,
        t_star=0.0,
        alpha=None,
        u=None,
        rate1=r1,
        rate2=0.0,
        diagnostics={},
    )


def evaluate_scheme(
    scheme: str,
    ch: ChannelRealization,
    params: SystemParams,
    t_grid_size: int = DEFAULT_T_GRID,
) -> SchemeEval:
    """Optimize the power split for one scheme on one realization."""
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    required = SCHEME_SCENARIO[scheme]
    if required is not None and ch.scenario != required:
        raise ValueError(f"scheme {scheme} needs scenario {required}, got {ch.scenario}")
    if scheme == "classical":
        return _classical_eval(ch, params)

    t_star, _ = optimize_t(_rate_curve(scheme, ch, params), t_grid_size, vectorized=True)

    if scheme in ("df_dpc", "f_dpc_nc"):
        detail = (
            siso.rate_df_dpc(ch, params, t_star)
            if scheme == "df_dpc"
            else siso.rate_f_dpc_noncausal(ch, params, t_star)
        )
        diagnostics = {
            "decodable": detail.decodable,
            "weak_interference": detail.weak_interference,
        }
        if detail.branch is not None:
            diagnostics["branch"] = detail.branch
        return SchemeEval(
            scheme, detail.total(params.p), t_star, detail.alpha, detail.u,
            detail.r1, detail.r2, diagnostics,
        )
    if scheme in ("d_dpc_zf", "d_dpc_zf_nc", "zf_miso"):
        if scheme == "zf_miso":
            detail = miso.rate_zf_miso(ch, params, t_star)
            alpha = None
            diagnostics = {}
        else:
            detail = miso.rate_d_dpc_zf(ch, params, t_star, noncausal=scheme.endswith("_nc"))
            alpha = detail.alpha
            diagnostics = {"decodable": detail.alpha < 1.0}
        return SchemeEval(
            scheme, detail.total(params.p), t_star, alpha, None,
            detail.r1, detail.r2, diagnostics,
        )
    detail = mimo.rate_zf_mimo(ch, params, t_star)
    diagnostics = {"singular_channel": detail.singular_flag}
    return SchemeEval(
        scheme, detail.total(params.p), t_star, None, None,
        detail.state1.rate, detail.state2.rate, diagnostics,
    )


def max_asymptotic_gain(
    ch: ChannelRealization, params: SystemParams, grid_size: int = DEFAULT_T_GRID
) -> tuple[float, float]:
    """Maximize the high-power offset G(t) over t; returns (t_star, gain)."""

    def g_safe(t: float) -> float:
        if t <= 0.0:
            return 0.0
        if t >= 1.0:
            return -math.inf
        return siso.asymptotic_gain(ch, params, t)

    return optimize_t(g_safe, grid_size)


def _realizations(
    topology: LinearTopology,
    params: SystemParams,
    scenario: str,
    trials: int,
    seed: int,
) -> list[ChannelRealization]:
    """Trial channel set: fading streams 0..trials-1, or the pure path-loss
    realization when trials = 0."""
    if trials == 0:
        return [deterministic_gains(topology, params, scenario)]
    return [
        sample_rayleigh(topology, params, scenario, Seed(seed, k)) for k in range(trials)
    ]


def multiplexing_slope(
    scheme: str,
    topology: LinearTopology,
    params: SystemParams,
    p_db_low: float,
    p_db_high: float,
    trials: int,
    seed: int,
    t_grid_size: int = DEFAULT_T_GRID,
    scenario: str | None = None,
) -> float:
    """Rate growth per log2(P) between two power points.

    Expectations are Monte Carlo means over common random numbers: the same
    trial index sees the same realization at both powers. ``scenario`` is
    only needed for the classical scheme, which runs in any scenario.
    """
    if not p_db_high > p_db_low:
        raise ValueError("p_db_high must exceed p_db_low")
    required = SCHEME_SCENARIO[scheme]
    if scenario is None:
        scenario = required or SISO_SISO
    if required is not None and scenario != required:
        raise ValueError(f"scheme {scheme} needs scenario {required}")
    reals = _realizations(topology, params, scenario, trials, seed)
    means = []
    for p_db in (p_db_low, p_db_high):
        pr = replace(params, P=10.0 ** (p_db / 10.0))
        means.append(
            math.fsum(evaluate_scheme(scheme, ch, pr, t_grid_size).total_rate for ch in reals)
            / len(reals)
        )
    dlog = (p_db_high - p_db_low) / 10.0 * math.log2(10.0)
    return (means[1] - means[0]) / dlog


def slope_reference(scheme: str, params: SystemParams, scenario: str | None = None) -> float:
    """Theoretical multiplexing gain of a scheme at the given p and M.

    Classical needs the scenario: its idle-state channel has M parallel
    modes only when the cognitive receiver is multi-antenna.
    """
    p, m = params.p, params.M
    if scheme in ("df_dpc", "f_dpc_nc", "zf_miso"):
        # decoding time, or interference floor, erases the active-state slope
        return p
    if scheme == "d_dpc_zf":
        return p + (1.0 - p) * (1.0 - 1.0 / m)
    if scheme == "d_dpc_zf_nc":
        # no listening phase: the full active state carries one stream
        return 1.0
    if scheme == "zf_mimo":
        return p * m + (1.0 - p) * (m - 1)
    if scheme == "classical":
        return p * m if scenario == SISO_MIMO else p
    raise ValueError(f"unknown scheme {scheme!r}")


def monte_carlo_sweep(cfg, workers: int = 1) -> list[SweepPoint]:
    """Averaged optimized rates for every (P_dB, scheme) of a run config.

    Deterministic in (config, seed) and independent of ``workers``: trial k
    always uses fading stream k and the reduction follows trial order.
    """
    reals = _realizations(cfg.topology, cfg.params, cfg.scenario, cfg.trials, cfg.seed)
    powers = [(p_db, replace(cfg.params, P=10.0 ** (p_db / 10.0))) for p_db in cfg.p_db]

    def run_trial(ch: ChannelRealization) -> list[dict[str, SchemeEval]]:
        return [
            {s: evaluate_scheme(s, ch, pr, cfg.t_grid_size) for s in cfg.schemes}
            for _, pr in powers
        ]

    if workers > 1 and len(reals) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_trial = list(pool.map(run_trial, reals))
    else:
        per_trial = [run_trial(ch) for ch in reals]

    points = []
    for ip, (p_db, _) in enumerate(powers):
        evals = {}
        for s in cfg.schemes:
            series = [per_trial[k][ip][s] for k in range(len(reals))]
            evals[s] = _average_evals(s, series)
        points.append(SweepPoint(p_db=p_db, trials=cfg.trials, seed=cfg.seed, evals=evals))
    return points


def _average_evals(scheme: str, series: list[SchemeEval]) -> SchemeEval:
    """Arithmetic means in trial order; alpha/u only when every trial has one."""
    if len(series) == 1:
        return series[0]
    n = len(series)

    def mean(values):
        return math.fsum(values) / n

    def mean_optional(values):
        if any(v is None for v in values):
            return None
        return mean(values)

    flags: dict = {"averaged_trials": n}
    for key in series[0].diagnostics:
        vals = [e.diagnostics.get(key) for e in series]
        if all(isinstance(v, bool) for v in vals):
            flags[f"{key}_count"] = sum(vals)
    return SchemeEval(
        scheme=scheme,
        total_rate=mean([e.total_rate for e in series]),
        t_star=mean([e.t_star for e in series]),
        alpha=mean_optional([e.alpha for e in series]),
        u=mean_optional([e.u for e in series]),
        rate1=mean([e.rate1 for e in series]),
        rate2=mean([e.rate2 for e in series]),
        diagnostics=flags,
    )
