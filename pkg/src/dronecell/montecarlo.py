"""Monte Carlo simulation oracle.

Places one TsUE and one AsUE per run, draws fading (and optionally ATG
LOS states), forms both uplink SINRs, and estimates coverage with binomial
standard errors. Runs are split into batches; each batch owns a
counter-based Philox stream keyed by (seed, batch index), so results are
bit-identical for a given seed regardless of worker count.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .channel import AtgParams, asue_tx_power, atg_loss
from .config import ScenarioConfig
from .geometry import sample_asue, sample_tsue


class AerialModel(str, enum.Enum):
    POWER_LAW = "powerlaw"
    ATG = "atg"


class Station(str, enum.Enum):
    TBS = "T"
    ABS = "A"


@dataclass(frozen=True)
class SimSettings:
    runs: int = 1_000_000
    seed: int = 0
    aerial_model: AerialModel = AerialModel.POWER_LAW
    batch_size: int = 1 << 17
    workers: int = 1
    atg: AtgParams = AtgParams()

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1 (got {self.runs})")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1 (got {self.batch_size})")
        if isinstance(self.aerial_model, str) and not isinstance(self.aerial_model, AerialModel):
            object.__setattr__(self, "aerial_model", AerialModel(self.aerial_model))

    def replace(self, **kwargs) -> "SimSettings":
        return replace(self, **kwargs)


@dataclass(frozen=True)
class SimEstimate:
    p_hat: float
    std_err: float
    runs: int


def _batch_rng(seed: int, batch_index: int) -> np.random.Generator:
    key = np.array([np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(batch_index)])
    return np.random.Generator(np.random.Philox(key=key))


def _batch_sizes(runs: int, batch_size: int) -> list[int]:
    full, rest = divmod(runs, batch_size)
    return [batch_size] * full + ([rest] if rest else [])


def _map_batches(fn, n_batches: int, workers: int) -> list:
    """Run fn(batch_index) for every batch, returning results in batch order."""
    if workers <= 1:
        return [fn(i) for i in range(n_batches)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(n_batches)))


def _draw_scene(rng: np.random.Generator, cfg: ScenarioConfig, n: int, atg_mode: bool,
                atg: AtgParams):
    """One batch of network realizations; returns both SINR sample vectors."""
    asue = sample_asue(rng, cfg, n)
    tsue = sample_tsue(rng, cfg, n)

    d_a = np.hypot(asue[:, 0], asue[:, 1])          # AsUE -> TBS, ground
    r_a = np.hypot(asue[:, 0] - cfg.d, asue[:, 1])  # AsUE -> stadium center
    d_t = np.hypot(tsue[:, 0], tsue[:, 1])          # TsUE -> TBS
    r_t = np.hypot(tsue[:, 0] - cfg.d, tsue[:, 1])  # TsUE -> stadium center
    z_d = np.hypot(r_a, cfg.h)                      # AsUE -> ABS
    z_c = np.hypot(r_t, cfg.h)                      # TsUE -> ABS

    p_t = cfg.rho_b_mw * d_t**cfg.alpha_b
    p_a = asue_tx_power(z_d, cfg)

    h_t = rng.exponential(1.0, n)
    h_a = rng.exponential(1.0, n)
    g_a = rng.gamma(cfg.m_dd, 1.0 / cfg.m_dd, n)
    g_t = rng.gamma(cfg.m_cd, 1.0 / cfg.m_cd, n)

    if atg_mode:
        loss_d = atg_loss(rng, r_a, cfg.h, cfg.alpha_dd, atg)
        loss_c = atg_loss(rng, r_t, cfg.h, cfg.alpha_cd, atg)
    else:
        loss_d = z_d ** (-cfg.alpha_dd)
        loss_c = z_c ** (-cfg.alpha_cd)

    sig2 = cfg.sigma2_mw
    sinr_t = cfg.rho_b_mw * h_t / (p_a * h_a * d_a ** (-cfg.alpha_b) + sig2)
    sinr_a = p_a * g_a * loss_d / (p_t * g_t * loss_c + sig2)
    return sinr_t, sinr_a


def coverage_counts(
    cfg: ScenarioConfig,
    sim: SimSettings,
    gammas_t: np.ndarray,
    gammas_a: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Exceedance counts of both SINRs over vectors of linear thresholds.

    Sharing one set of SINR draws across thresholds is exact: the draws do
    not depend on the thresholds, so per-threshold counts coincide with
    what separate same-seed runs would produce.
    """
    gammas_t = np.atleast_1d(np.asarray(gammas_t, dtype=float))
    gammas_a = np.atleast_1d(np.asarray(gammas_a, dtype=float))
    sizes = _batch_sizes(sim.runs, sim.batch_size)
    atg_mode = sim.aerial_model == AerialModel.ATG

    def one(batch_index: int):
        rng = _batch_rng(sim.seed, batch_index)
        sinr_t, sinr_a = _draw_scene(rng, cfg, sizes[batch_index], atg_mode, sim.atg)
        ct = np.array([np.count_nonzero(sinr_t > g) for g in gammas_t], dtype=np.int64)
        ca = np.array([np.count_nonzero(sinr_a > g) for g in gammas_a], dtype=np.int64)
        return ct, ca

    results = _map_batches(one, len(sizes), sim.workers)
    counts_t = sum(r[0] for r in results)
    counts_a = sum(r[1] for r in results)
    return counts_t, counts_a


def _estimate(count: int, runs: int) -> SimEstimate:
    p = count / runs
    return SimEstimate(p_hat=p, std_err=math.sqrt(p * (1.0 - p) / runs), runs=runs)


def simulate_coverage(cfg: ScenarioConfig, sim: SimSettings) -> tuple[SimEstimate, SimEstimate]:
    """Coverage estimates (TBS, ABS) at the configured SINR thresholds."""
    counts_t, counts_a = coverage_counts(cfg, sim, [cfg.gamma_t], [cfg.gamma_a])
    return _estimate(int(counts_t[0]), sim.runs), _estimate(int(counts_a[0]), sim.runs)


def simulate_interference_laplace(
    cfg: ScenarioConfig, sim: SimSettings, station: Station, s: float
) -> SimEstimate:
    """Empirical E[exp(-s I)] of the interference power at one station.

    Validation oracle for the analytic transforms; always uses the
    power-law aerial model those transforms assume.
    """
    if s < 0:
        raise ValueError(f"s must be nonnegative (got {s})")
    station = Station(station)
    sizes = _batch_sizes(sim.runs, sim.batch_size)

    def one(batch_index: int):
        rng = _batch_rng(sim.seed, batch_index)
        n = sizes[batch_index]
        if station is Station.TBS:
            asue = sample_asue(rng, cfg, n)
            d_a = np.hypot(asue[:, 0], asue[:, 1])
            z_d = np.hypot(np.hypot(asue[:, 0] - cfg.d, asue[:, 1]), cfg.h)
            h_a = rng.exponential(1.0, n)
            interference = asue_tx_power(z_d, cfg) * h_a * d_a ** (-cfg.alpha_b)
        else:
            tsue = sample_tsue(rng, cfg, n)
            d_t = np.hypot(tsue[:, 0], tsue[:, 1])
            z_c = np.hypot(np.hypot(tsue[:, 0] - cfg.d, tsue[:, 1]), cfg.h)
            g_t = rng.gamma(cfg.m_cd, 1.0 / cfg.m_cd, n)
            interference = cfg.rho_b_mw * d_t**cfg.alpha_b * g_t * z_c ** (-cfg.alpha_cd)
        x = np.exp(-s * interference)
        return float(np.sum(x)), float(np.sum(x * x))

    results = _map_batches(one, len(sizes), sim.workers)
    total = sum(r[0] for r in results)
    total_sq = sum(r[1] for r in results)
    mean = total / sim.runs
    var = max(total_sq / sim.runs - mean**2, 0.0)
    return SimEstimate(p_hat=mean, std_err=math.sqrt(var / sim.runs), runs=sim.runs)
