"""Region geometry: distance/angle densities and uniform point sampling.

Coordinates put the TBS at the origin and the stadium center at (d, 0);
the ABS hovers at (d, 0, h). "Ground radius" always means distance to the
stadium center, i.e. to the ABS foot point.
"""

from __future__ import annotations

import math

import numpy as np

from .config import ScenarioConfig

_ARCSEC_TOL = 1e-9


class GeometryError(ValueError):
    """Signals an inconsistent geometric quantity (arcsec argument out of range)."""


def z_support_asue(cfg: ScenarioConfig) -> tuple[float, float]:
    """Support of the AsUE->ABS 3-D distance: [h, sqrt(h^2 + r2^2)]."""
    return cfg.h, math.hypot(cfg.h, cfg.r2)


def z_support_tsue(cfg: ScenarioConfig) -> tuple[float, float, float]:
    """Support endpoints and interior knot of the TsUE->ABS 3-D distance.

    Returns (lo, knot, hi) with the near/far region boundary at
    knot = sqrt((r1-d)^2 + h^2).
    """
    lo = math.hypot(cfg.r2, cfg.h)
    knot = math.hypot(cfg.r1 - cfg.d, cfg.h)
    hi = math.hypot(cfg.r1 + cfg.d, cfg.h)
    return lo, knot, hi


def omega_hat_ground(r, cfg: ScenarioConfig):
    """Half-width of the admissible angle at ground radius r (far region).

    Computed as arcsec(2 d r / (d^2 + r^2 - r1^2)) on its principal branch
    [0, pi], i.e. arccos of the reciprocal; the reciprocal is negative for
    r < sqrt(r1^2 - d^2), which lands the angle in (pi/2, pi] and keeps the
    density continuous at r = r1 - d.
    """
    r = np.asarray(r, dtype=float)
    if cfg.d == 0.0:
        raise GeometryError("omega_hat is undefined for d = 0 (no far region)")
    inv = (cfg.d**2 + r**2 - cfg.r1**2) / (2.0 * cfg.d * r)
    if np.any(np.abs(inv) > 1.0 + _ARCSEC_TOL):
        bad = np.max(np.abs(inv))
        raise GeometryError(
            f"arcsec argument below 1 in magnitude (reciprocal {bad}): "
            "point outside the far-region support"
        )
    return np.arccos(np.clip(inv, -1.0, 1.0))


def omega_hat(z, cfg: ScenarioConfig):
    """omega_hat as a function of the 3-D distance z (far region)."""
    z = np.asarray(z, dtype=float)
    return omega_hat_ground(np.sqrt(z**2 - cfg.h**2), cfg)


def pdf_z_asue(z, cfg: ScenarioConfig):
    """Density 2z/r2^2 of the AsUE->ABS distance on [h, sqrt(h^2+r2^2)]."""
    z = np.asarray(z, dtype=float)
    lo, hi = z_support_asue(cfg)
    out = np.where((z >= lo) & (z <= hi), 2.0 * z / cfg.r2**2, 0.0)
    return out if out.ndim else float(out)


def cdf_z_asue(z, cfg: ScenarioConfig):
    z = np.asarray(z, dtype=float)
    lo, hi = z_support_asue(cfg)
    out = np.clip((z**2 - lo**2) / cfg.r2**2, 0.0, 1.0)
    out = np.where(z < lo, 0.0, np.where(z > hi, 1.0, out))
    return out if out.ndim else float(out)


def pdf_r_tsue_ground(r, cfg: ScenarioConfig):
    """Density of the TsUE ground radius (distance to the stadium center).

    2r/(r1^2-r2^2) on [r2, r1-d]; in the outer band [r1-d, r1+d] only the
    angular arc inside the network disk contributes, scaling the annulus
    density by omega_hat/pi.
    """
    scalar = np.ndim(r) == 0
    r = np.atleast_1d(np.asarray(r, dtype=float))
    norm = cfg.r1**2 - cfg.r2**2
    out = np.zeros_like(r)
    near = (r >= cfg.r2) & (r <= cfg.r1 - cfg.d)
    out[near] = 2.0 * r[near] / norm
    if cfg.d > 0.0:
        far = (r > cfg.r1 - cfg.d) & (r <= cfg.r1 + cfg.d)
        if np.any(far):
            out[far] = 2.0 * r[far] * omega_hat_ground(r[far], cfg) / (math.pi * norm)
    return float(out[0]) if scalar else out


def pdf_z_tsue(z, cfg: ScenarioConfig):
    """Density of the TsUE->ABS 3-D distance (pushforward of the ground law).

    2z/(r1^2-r2^2) on the near region, 2 z omega_hat / (pi (r1^2-r2^2)) on
    the far region; zero outside [sqrt(r2^2+h^2), sqrt((r1+d)^2+h^2)].
    """
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=float))
    lo, knot, hi = z_support_tsue(cfg)
    norm = cfg.r1**2 - cfg.r2**2
    out = np.zeros_like(z)
    near = (z >= lo) & (z <= knot)
    out[near] = 2.0 * z[near] / norm
    if cfg.d > 0.0:
        far = (z > knot) & (z <= hi)
        if np.any(far):
            out[far] = 2.0 * z[far] * omega_hat(z[far], cfg) / (math.pi * norm)
    return float(out[0]) if scalar else out


def pdf_omega_given_z(omega, z: float, cfg: ScenarioConfig):
    """Conditional density of the angle between the TsUE ground radius and
    the stadium-center->TBS axis, given the 3-D distance z.

    Uniform on the circle (1/2pi) in the near region; uniform on
    [-omega_hat, omega_hat] in the far region. Angles are taken mod 2pi.
    """
    omega = np.asarray(omega, dtype=float)
    lo, knot, hi = z_support_tsue(cfg)
    if not (lo <= z <= hi):
        raise GeometryError(f"z = {z} outside the TsUE distance support [{lo}, {hi}]")
    if z <= knot or cfg.d == 0.0:
        out = np.full_like(omega, 1.0 / (2.0 * math.pi))
    else:
        w_hat = float(omega_hat(z, cfg))
        wrapped = np.mod(omega + math.pi, 2.0 * math.pi) - math.pi
        out = np.where(np.abs(wrapped) <= w_hat, 1.0 / (2.0 * w_hat), 0.0)
    return out if out.ndim else float(out)


def sample_asue(rng: np.random.Generator, cfg: ScenarioConfig, size: int | None = None):
    """Uniform ground point(s) in the stadium disk; shape (size, 2) or (2,)."""
    n = 1 if size is None else size
    r = cfg.r2 * np.sqrt(rng.random(n))
    ang = 2.0 * math.pi * rng.random(n)
    pts = np.column_stack((cfg.d + r * np.cos(ang), r * np.sin(ang)))
    return pts[0] if size is None else pts


def sample_tsue(rng: np.random.Generator, cfg: ScenarioConfig, size: int | None = None):
    """Uniform ground point(s) in the network disk excluding the stadium.

    Rejection from uniform-in-network-disk; acceptance probability is
    1 - r2^2/r1^2 (>= 0.96 at default parameters).
    """
    n = 1 if size is None else size
    pts = np.empty((n, 2))
    pending = np.arange(n)
    while pending.size:
        m = pending.size
        r = cfg.r1 * np.sqrt(rng.random(m))
        ang = 2.0 * math.pi * rng.random(m)
        x = r * np.cos(ang)
        y = r * np.sin(ang)
        accept = (x - cfg.d) ** 2 + y**2 >= cfg.r2**2
        pts[pending[accept], 0] = x[accept]
        pts[pending[accept], 1] = y[accept]
        pending = pending[~accept]
    return pts[0] if size is None else pts
