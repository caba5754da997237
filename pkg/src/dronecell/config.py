"""Scenario parameters, validation, and dB/linear unit conversion.

All internal computation uses linear units (milliwatts, meters); dBm/dB
appears only at the configuration boundary.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, fields, replace
from pathlib import Path


class ConfigError(ValueError):
    """Raised when a scenario configuration violates an invariant."""


def dbm_to_mw(x_dbm: float) -> float:
    return 10.0 ** (x_dbm / 10.0)


def mw_to_dbm(x_mw: float) -> float:
    return 10.0 * math.log10(x_mw)


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


@dataclass(frozen=True)
class ScenarioConfig:
    """Physical and network parameters of the two-cell uplink scenario.

    Geometry: the terrestrial base station (TBS) sits at the origin of a
    disk of radius ``r1``; the stadium is a disk of radius ``r2`` centered
    ``d`` meters away; the aerial base station (ABS) hovers ``h`` meters
    above the stadium center.
    """

    r1: float = 500.0           # network region radius, m
    r2: float = 100.0           # stadium radius, m
    d: float = 200.0            # TBS to stadium-center ground distance, m
    h: float = 200.0            # ABS altitude, m
    p_max_dbm: float = 20.0     # AsUE max transmit power
    rho_b_dbm: float = -75.0    # TBS power-control receive threshold
    rho_d_dbm: float = -50.0    # ABS power-control receive threshold
    alpha_b: float = 4.0        # terrestrial path-loss exponent
    alpha_cd: float = 3.0       # TsUE->ABS aerial path-loss exponent
    alpha_dd: float = 2.5       # AsUE->ABS aerial path-loss exponent
    m_dd: int = 5               # Nakagami order, AsUE->ABS link
    m_cd: int = 3               # Nakagami order, TsUE->ABS link
    sigma2_dbm: float = -100.0  # AWGN power
    gamma_t_db: float = 0.0     # TBS SINR threshold
    gamma_a_db: float = 0.0     # ABS SINR threshold

    def __post_init__(self):
        if self.r1 <= 0:
            raise ConfigError(f"r1 must be positive (got {self.r1})")
        if self.r2 <= 0:
            raise ConfigError(f"r2 must be positive (got {self.r2})")
        if self.h < 0:
            raise ConfigError(f"h must be nonnegative (got {self.h})")
        if self.d < 0:
            raise ConfigError(f"d must be nonnegative (got {self.d})")
        if self.d + self.r2 > self.r1:
            raise ConfigError(
                f"stadium must lie inside the network region: "
                f"d + r2 = {self.d + self.r2} exceeds r1 = {self.r1}"
            )
        for name in ("alpha_b", "alpha_cd", "alpha_dd"):
            val = getattr(self, name)
            if val <= 0:
                raise ConfigError(f"{name} must be positive (got {val})")
        for name in ("m_dd", "m_cd"):
            val = getattr(self, name)
            if isinstance(val, float):
                if not val.is_integer():
                    raise ConfigError(
                        f"{name} must be a positive integer Nakagami order (got {val})"
                    )
                object.__setattr__(self, name, int(val))
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1 (got {val})")
        if self.d < self.r2:
            warnings.warn(
                f"d = {self.d} < r2 = {self.r2}: the TBS lies inside the "
                "stadium footprint; geometry is still valid but unusual",
                stacklevel=2,
            )

    # Linear-unit views used by every formula.
    @property
    def p_max_mw(self) -> float:
        return dbm_to_mw(self.p_max_dbm)

    @property
    def rho_b_mw(self) -> float:
        return dbm_to_mw(self.rho_b_dbm)

    @property
    def rho_d_mw(self) -> float:
        return dbm_to_mw(self.rho_d_dbm)

    @property
    def sigma2_mw(self) -> float:
        return dbm_to_mw(self.sigma2_dbm)

    @property
    def gamma_t(self) -> float:
        return db_to_linear(self.gamma_t_db)

    @property
    def gamma_a(self) -> float:
        return db_to_linear(self.gamma_a_db)

    def replace(self, **kwargs) -> "ScenarioConfig":
        return replace(self, **kwargs)


class PowerRegime(enum.Enum):
    """Which case of the AsUE power-control law applies at the configured h."""

    ALWAYS_MAX = "AlwaysMax"
    MIXED = "Mixed"
    ALWAYS_INVERSION = "AlwaysInversion"


@dataclass(frozen=True)
class PowerControlBoundaries:
    z_cap: float   # distance at which channel inversion saturates, m
    h_low: float   # below this altitude every AsUE can invert, m
    regime: PowerRegime


def boundaries(cfg: ScenarioConfig) -> PowerControlBoundaries:
    """Power-control case boundaries for the configured altitude.

    z_cap = (P_max / rho_D)^(1/alpha_DD); inversion covers the whole
    stadium iff the farthest AsUE distance sqrt(h^2 + r2^2) stays below
    z_cap, i.e. h <= h_low = sqrt(z_cap^2 - r2^2). Boundary ties resolve
    to ALWAYS_MAX at h = z_cap and ALWAYS_INVERSION at h = h_low.
    """
    z_cap = (cfg.p_max_mw / cfg.rho_d_mw) ** (1.0 / cfg.alpha_dd)
    full_inversion_possible = z_cap >= cfg.r2
    h_low = math.sqrt(z_cap**2 - cfg.r2**2) if full_inversion_possible else 0.0
    if cfg.h >= z_cap:
        regime = PowerRegime.ALWAYS_MAX
    elif full_inversion_possible and cfg.h <= h_low:
        regime = PowerRegime.ALWAYS_INVERSION
    else:
        regime = PowerRegime.MIXED
    return PowerControlBoundaries(z_cap=z_cap, h_low=h_low, regime=regime)


_FIELD_TYPES = {f.name: f.type for f in fields(ScenarioConfig)}


def _parse_value(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"value for '{key}' is not numeric: {raw!r}") from exc


def parse_overrides(pairs: list[str]) -> dict[str, float]:
    """Parse repeatable ``key=value`` override strings."""
    out: dict[str, float] = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"override must look like key=value (got {pair!r})")
        key, raw = (part.strip() for part in pair.split("=", 1))
        if key not in _FIELD_TYPES:
            raise ConfigError(f"unknown parameter '{key}'")
        out[key] = _parse_value(key, raw)
    return out


def load_config(path: str | Path, overrides: dict[str, float] | None = None) -> ScenarioConfig:
    """Load a flat key=value config file, apply overrides, validate.

    Unrecognized keys are rejected rather than ignored; omitted keys fall
    back to the defaults above. ``#`` starts a comment.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"config file not found: {path}")
    values: dict[str, float] = {}
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line:
            key, raw = (part.strip() for part in line.split("=", 1))
        else:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        if key not in _FIELD_TYPES:
            raise ConfigError(f"{path}:{lineno}: unknown parameter '{key}'")
        values[key] = _parse_value(key, raw)
    if overrides:
        values.update(overrides)
    return ScenarioConfig(**values)
