import numpy as np
import pytest

from spinqrc.errors import ConfigError
from spinqrc.esn import (HISTORY_DEPTH, EsnConfig, EsnState, esn_step,
                         esn_weights, run_esn)


def small_config(**kw):
    defaults = dict(n_nodes=6, n_pre=20, n_fb=40, n_test=20)
    defaults.update(kw)
    return EsnConfig(**defaults)


class TestConfig:
    def test_defaults(self):
        cfg = EsnConfig()
        assert cfg.variant == 1
        assert cfg.w_scale == 0.4
        assert cfg.total_steps == 440

    @pytest.mark.parametrize("kw", [
        dict(variant=2),
        dict(n_nodes=0),
        dict(w_scale=0.0),
        dict(n_test=0),
    ])
    def test_validation(self, kw):
        with pytest.raises(ConfigError):
            small_config(**kw)


class TestWeights:
    def test_deterministic_and_in_range(self):
        a_w, a_in = esn_weights(small_config(weight_seed=3))
        b_w, b_in = esn_weights(small_config(weight_seed=3))
        assert np.all(a_w == b_w) and np.all(a_in == b_in)
        assert a_w.shape == (6, 6) and a_in.shape == (6,)
        assert a_w.min() >= 0 and a_w.max() <= 0.4
        assert a_in.min() >= 0 and a_in.max() <= 0.4

    def test_variants_share_weights(self):
        # differences between variants must come from history depth alone
        w1, in1 = esn_weights(small_config(variant=1, weight_seed=9))
        w5, in5 = esn_weights(small_config(variant=5, weight_seed=9))
        assert np.all(w1 == w5) and np.all(in1 == in5)


class TestStep:
    def test_input_drive_without_recurrence(self):
        cfg = small_config()
        w = np.zeros((6, 6))
        w_in = np.zeros(6)
        w_in[0] = 1.0
        state = EsnState.zeros(6)
        _, x = esn_step(state, 0.1, cfg, w, w_in)
        assert x[0] == pytest.approx(np.tanh(0.1))
        assert np.all(x[1:] == 0.0)

    def test_history_mixing_per_variant(self):
        rng = np.random.default_rng(5)
        history = [rng.normal(size=4) for _ in range(HISTORY_DEPTH)]
        w = rng.uniform(0, 0.4, (4, 4))
        w_in = rng.uniform(0, 0.4, 4)
        s = 0.3
        for variant, lags in ((1, [1]), (3, [1, 3]), (5, [1, 3, 5])):
            cfg = small_config(n_nodes=4, variant=variant)
            state = EsnState(history=[h.copy() for h in history])
            _, x = esn_step(state, s, cfg, w, w_in)
            mixed = sum(history[lag - 1] for lag in lags)
            assert np.allclose(x, np.tanh(w @ mixed + w_in * s), atol=1e-14)

    def test_history_rolls(self):
        cfg = small_config(n_nodes=2)
        w, w_in = esn_weights(cfg)
        state = EsnState.zeros(2)
        new, x = esn_step(state, 0.5, cfg, w, w_in)
        assert np.all(new.history[0] == x)
        assert np.all(new.history[1] == state.history[0])
        assert len(new.history) == HISTORY_DEPTH

    def test_rejects_short_history(self):
        cfg = small_config()
        w, w_in = esn_weights(cfg)
        with pytest.raises(ConfigError):
            esn_step(EsnState(history=[np.zeros(6)]), 0.0, cfg, w, w_in)


class TestRunEsn:
    def test_zero_input_stays_at_origin(self):
        cfg = small_config()
        traj = run_esn(cfg, np.zeros(cfg.total_steps))
        assert np.all(traj.states == 0.0)

    def test_states_bounded_by_tanh(self):
        cfg = small_config(variant=5)
        rng = np.random.default_rng(1)
        traj = run_esn(cfg, rng.uniform(0, 0.2, cfg.total_steps))
        assert np.abs(traj.states).max() <= 1.0

    def test_deterministic(self):
        cfg = small_config(variant=3)
        inputs = np.linspace(0, 0.2, cfg.total_steps)
        a = run_esn(cfg, inputs)
        b = run_esn(cfg, inputs)
        assert a.states.tobytes() == b.states.tobytes()

    def test_length_validation(self):
        cfg = small_config()
        with pytest.raises(ConfigError):
            run_esn(cfg, np.zeros(cfg.total_steps + 1))

    def test_slices_cover_phases(self):
        cfg = small_config()
        traj = run_esn(cfg, np.zeros(cfg.total_steps))
        assert traj.states[traj.train_slice].shape == (cfg.n_fb, cfg.n_nodes)
        assert traj.states[traj.test_slice].shape == (cfg.n_test, cfg.n_nodes)


@pytest.mark.parametrize("variant", [1, 3, 5])
def test_fading_memory(variant):
    # two different initial histories forget each other under shared input
    cfg = small_config(variant=variant)
    w, w_in = esn_weights(cfg)
    rng = np.random.default_rng(13)
    inputs = rng.uniform(0, 0.2, 100)
    a = EsnState.zeros(cfg.n_nodes)
    b = EsnState(history=[rng.normal(size=cfg.n_nodes)
                          for _ in range(HISTORY_DEPTH)])
    xa = xb = None
    for s in inputs:
        a, xa = esn_step(a, float(s), cfg, w, w_in)
        b, xb = esn_step(b, float(s), cfg, w, w_in)
    assert np.linalg.norm(xa - xb) < 1e-6
