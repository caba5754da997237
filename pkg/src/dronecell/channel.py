"""Fading draws, path loss, AsUE power control, and the simulation-only
air-to-ground (ATG) channel.

All fading power gains have unit mean: terrestrial links are Rayleigh
(exponential gain), aerial links Nakagami-m (Gamma(m, 1/m) gain).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import ScenarioConfig


@dataclass(frozen=True)
class RayleighExp:
    """Rayleigh fading: exponential power gain with unit mean."""


@dataclass(frozen=True)
class NakagamiGamma:
    """Nakagami-m fading: Gamma(m, 1/m) power gain with unit mean."""

    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"Nakagami order must be >= 1 (got {self.m})")


FadingKind = RayleighExp | NakagamiGamma


@dataclass(frozen=True)
class FadingDraw:
    gain: float
    kind: FadingKind


@dataclass(frozen=True)
class AtgParams:
    """Sigmoid LOS-probability model: P_LOS(theta_deg) = 1/(1 + C e^{-B(theta-C)}),
    with a flat excess loss eta (dB) on NLOS links."""

    c_const: float = 4.88
    b_const: float = 0.43
    eta_db: float = -20.0

    def __post_init__(self):
        if self.c_const <= 0 or self.b_const <= 0:
            raise ValueError("ATG constants C and B must be positive")

    @property
    def eta_linear(self) -> float:
        return 10.0 ** (self.eta_db / 10.0)


def path_loss(ell, alpha: float):
    """Power-law attenuation ell^(-alpha)."""
    return np.asarray(ell, dtype=float) ** (-alpha) if np.ndim(ell) else float(ell) ** (-alpha)


def asue_tx_power(z, cfg: ScenarioConfig):
    """AsUE transmit power at 3-D distance z from the ABS, in mW.

    Channel inversion toward the receive threshold rho_D, capped at P_max;
    the three regime cases of the piecewise law collapse to
    min(rho_D * z^alpha_DD, P_max).
    """
    inv = cfg.rho_d_mw * np.asarray(z, dtype=float) ** cfg.alpha_dd
    out = np.minimum(inv, cfg.p_max_mw)
    return out if np.ndim(out) else float(out)


def draw_fading(rng: np.random.Generator, kind: FadingKind) -> FadingDraw:
    """One unit-mean power-gain draw from the named fading distribution."""
    if isinstance(kind, RayleighExp):
        gain = float(rng.exponential(1.0))
    elif isinstance(kind, NakagamiGamma):
        gain = float(rng.gamma(kind.m, 1.0 / kind.m))
    else:
        raise TypeError(f"unknown fading kind: {kind!r}")
    return FadingDraw(gain=gain, kind=kind)


def fading_gains(rng: np.random.Generator, kind: FadingKind, size: int) -> np.ndarray:
    """Vectorized power-gain draws (same distributions as draw_fading)."""
    if isinstance(kind, RayleighExp):
        return rng.exponential(1.0, size)
    if isinstance(kind, NakagamiGamma):
        return rng.gamma(kind.m, 1.0 / kind.m, size)
    raise TypeError(f"unknown fading kind: {kind!r}")


def atg_p_los(horizontal, height, params: AtgParams):
    """LOS probability at the elevation angle seen from the ground terminal."""
    theta_deg = np.degrees(np.arctan2(height, horizontal))
    return 1.0 / (1.0 + params.c_const * np.exp(-params.b_const * (theta_deg - params.c_const)))


def atg_loss(rng: np.random.Generator, horizontal, height, alpha: float, params: AtgParams):
    """Random ATG attenuation: ell^(-alpha), scaled by eta on NLOS draws.

    The LOS state is an independent Bernoulli per element with probability
    atg_p_los; ell is the 3-D distance sqrt(horizontal^2 + height^2).
    """
    horizontal = np.asarray(horizontal, dtype=float)
    ell = np.hypot(horizontal, height)
    p_los = atg_p_los(horizontal, height, params)
    los = rng.random(ell.shape if ell.ndim else None) < p_los
    base = ell ** (-alpha)
    out = np.where(los, base, params.eta_linear * base)
    return out if np.ndim(out) else float(out)
