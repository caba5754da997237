import math

import numpy as np
import pytest

from dronecell.config import (
    ConfigError,
    PowerRegime,
    ScenarioConfig,
    boundaries,
    dbm_to_mw,
    load_config,
    mw_to_dbm,
    parse_overrides,
)

# Direct evaluations of the power-law saturation thresholds with
# P_max/rho_D = 10^((20 - (-50))/10) = 10^7 and alpha_DD = 2.5.
Z_CAP_DEFAULT = 10.0 ** (7.0 / 2.5)
H_LOW_DEFAULT = math.sqrt(Z_CAP_DEFAULT**2 - 100.0**2)


def test_load_default_config_file(tmp_path):
    cfg = load_config("configs/default.cfg")
    assert cfg == ScenarioConfig()
    assert cfg.p_max_mw == pytest.approx(100.0, rel=1e-15)
    assert cfg.rho_d_mw == pytest.approx(1e-5, rel=1e-15)
    assert cfg.gamma_t == 1.0


def test_partial_config_file_uses_defaults(tmp_path):
    path = tmp_path / "partial.cfg"
    path.write_text("h = 500  # altitude only\n")
    cfg = load_config(path)
    assert cfg.h == 500.0
    assert cfg.r1 == 500.0


def test_stadium_outside_network_rejected():
    with pytest.raises(ConfigError, match="r1"):
        ScenarioConfig(d=450.0, r2=100.0, r1=500.0)


def test_non_integer_nakagami_rejected():
    with pytest.raises(ConfigError, match="m_dd"):
        ScenarioConfig(m_dd=2.5)


def test_float_valued_integer_nakagami_accepted():
    cfg = ScenarioConfig(m_dd=5.0)
    assert cfg.m_dd == 5 and isinstance(cfg.m_dd, int)


def test_unknown_key_rejected(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("p_max = 20\n")  # correct key is p_max_dbm
    with pytest.raises(ConfigError, match="unknown parameter"):
        load_config(path)


def test_missing_file_raises():
    with pytest.raises(FileNotFoundError, match="nope.cfg"):
        load_config("nope.cfg")


def test_overrides():
    over = parse_overrides(["h=700", "gamma_t_db = -5"])
    assert over == {"h": 700.0, "gamma_t_db": -5.0}
    with pytest.raises(ConfigError):
        parse_overrides(["nonsense"])
    with pytest.raises(ConfigError):
        parse_overrides(["zap=1"])


def test_tbs_inside_stadium_warns():
    with pytest.warns(UserWarning, match="stadium"):
        ScenarioConfig(d=50.0)


def test_dbm_round_trip_identity():
    rng = np.random.default_rng(7)
    for x in rng.uniform(-200.0, 60.0, 200):
        back = mw_to_dbm(dbm_to_mw(x))
        assert abs(back - x) <= 1e-12 * max(1.0, abs(x))


def test_boundaries_default_values(default_cfg):
    b = boundaries(default_cfg)
    assert b.z_cap == pytest.approx(Z_CAP_DEFAULT, rel=1e-12)
    assert b.z_cap == pytest.approx(630.96, abs=0.01)
    assert b.h_low == pytest.approx(H_LOW_DEFAULT, rel=1e-12)
    assert b.h_low == pytest.approx(622.98, abs=0.01)
    assert b.regime is PowerRegime.ALWAYS_INVERSION  # h = 200 < h_low


def test_boundaries_regimes(default_cfg):
    assert boundaries(default_cfg.replace(h=700.0)).regime is PowerRegime.ALWAYS_MAX
    assert boundaries(default_cfg.replace(h=630.0)).regime is PowerRegime.MIXED
    assert boundaries(default_cfg.replace(h=200.0)).regime is PowerRegime.ALWAYS_INVERSION
    # Inclusive ties.
    b = boundaries(default_cfg)
    assert boundaries(default_cfg.replace(h=b.z_cap)).regime is PowerRegime.ALWAYS_MAX
    assert boundaries(default_cfg.replace(h=b.h_low)).regime is PowerRegime.ALWAYS_INVERSION


_REGIME_RANK = {
    PowerRegime.ALWAYS_INVERSION: 0,
    PowerRegime.MIXED: 1,
    PowerRegime.ALWAYS_MAX: 2,
}


def test_regime_monotone_in_p_max(default_cfg):
    rng = np.random.default_rng(11)
    for _ in range(200):
        h = float(rng.uniform(0.0, 1000.0))
        ranks = [
            _REGIME_RANK[boundaries(default_cfg.replace(h=h, p_max_dbm=p)).regime]
            for p in sorted(rng.uniform(-20.0, 40.0, 3))
        ]
        assert ranks == sorted(ranks, reverse=True)


def test_exactly_one_regime_everywhere(default_cfg):
    b = boundaries(default_cfg)
    for h in np.linspace(0.0, 1000.0, 101):
        cfg = default_cfg.replace(h=float(h))
        regime = boundaries(cfg).regime
        cases = [
            h >= b.z_cap,
            b.h_low < h < b.z_cap,
            h <= b.h_low,
        ]
        assert sum(cases) == 1
        assert regime is [PowerRegime.ALWAYS_MAX, PowerRegime.MIXED,
                          PowerRegime.ALWAYS_INVERSION][cases.index(True)]
