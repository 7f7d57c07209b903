import math
import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.append(str(ROOT / "src"))

import montecarlo  # noqa: E402
from bounds import ub_iud_iud  # noqa: E402
from errors import InvalidParameterError, UnknownAxisError  # noqa: E402
from geometry import as_points, distance, nearest  # noqa: E402
from montecarlo import Estimate, Scenario, estimate, run_trial, sample_trial, sweep, trial_indicators, with_axis  # noqa: E402
from placement import parse_process_spec  # noqa: E402
from secrecy_core import ChannelParams  # noqa: E402
from strategies import Strategy, StrategyConfig  # noqa: E402


def _scenario(tx: str, eve: str, strategy: Strategy = Strategy.COOP_TRANSMIT) -> Scenario:
    return Scenario(parse_process_spec(tx), parse_process_spec(eve), StrategyConfig(strategy))


def test_run_trial_is_a_pure_function_of_its_id():
    scenario = _scenario("iud:4", "iud:3")
    first = [run_trial(scenario, t, 42) for t in range(50)]
    again = [run_trial(scenario, t, 42) for t in reversed(range(50))][::-1]
    assert first == again
    friendly_a, eaves_a, rx_a = sample_trial(scenario, 17, 42)
    friendly_b, eaves_b, rx_b = sample_trial(scenario, 17, 42)
    assert np.array_equal(friendly_a, friendly_b)
    assert np.array_equal(eaves_a, eaves_b)
    assert rx_a == rx_b


def test_roles_draw_from_separate_streams():
    friendly, eaves, rx = sample_trial(_scenario("iud:1", "iud:1"), 0, 7)
    assert not np.array_equal(friendly, eaves)
    assert tuple(friendly[0]) != tuple(rx)


def test_estimate_is_reproducible_and_seed_dependent():
    scenario = _scenario("iud:3", "iud:3")
    a = estimate(scenario, 2000, 11)
    b = estimate(scenario, 2000, 11)
    assert a == b
    assert a.master_seed == 11
    other = trial_indicators(scenario, range(2000), 12)
    assert not np.array_equal(trial_indicators(scenario, range(2000), 11), other)


def test_estimate_rejects_empty_runs():
    with pytest.raises(InvalidParameterError):
        estimate(_scenario("iud:1", "iud:1"), 0, 1)
    with pytest.raises(InvalidParameterError):
        estimate(_scenario("iud:1", "iud:1"), 10, 1, threads=0)


def test_thread_count_never_changes_the_result(monkeypatch):
    monkeypatch.setattr(montecarlo, "TRIAL_BLOCK", 97)
    scenario = _scenario("poisson:4", "iud:2", Strategy.BEST_JAMMER)
    single = estimate(scenario, 1500, 2024, threads=1)
    for threads in (2, 3, 8):
        assert estimate(scenario, 1500, 2024, threads=threads) == single


def test_single_transmitter_against_single_eavesdropper_is_a_coin_flip():
    est = estimate(_scenario("iud:1", "iud:1"), 20_000, 1)
    assert est.p_hat == pytest.approx(0.5, abs=0.015)
    assert abs(est.p_hat - 0.5) <= est.ci_half_width + 0.005


def test_single_transmitter_against_poisson_eavesdroppers():
    est = estimate(_scenario("iud:1", "poisson:1"), 20_000, 3)
    assert est.p_hat == pytest.approx(1 - math.exp(-1), abs=0.015)


def test_degenerate_scenarios():
    assert estimate(_scenario("iud:0", "iud:2"), 200, 5).p_hat == 0.0
    assert estimate(_scenario("poisson:0", "iud:2"), 200, 5).p_hat == 0.0
    full = estimate(_scenario("iud:2", "iud:0"), 200, 5)
    assert full.p_hat == 1.0
    assert full.ci_half_width == 0.0


def _brute_force(friendly, eaves, rx) -> bool:
    eave_points = as_points(eaves)
    for t in as_points(friendly):
        radius = nearest(t, eave_points)[1] if eave_points else math.inf
        if distance(t, rx) < radius:
            return True
    return False


def test_estimate_matches_a_brute_force_count():
    scenario = _scenario("iud:5", "poisson:3")
    expected = sum(_brute_force(*sample_trial(scenario, t, 99)) for t in range(400))
    assert estimate(scenario, 400, 99).successes == expected


def test_block_kernel_agrees_with_the_per_trial_predicate():
    for tx, eve in (("iud:4", "iud:3"), ("poisson:3", "poisson:2"), ("hex:5", "iud:5")):
        scenario = _scenario(tx, eve)
        ids = [0, 5, 1023, 1024, 3000, 5000]
        indicators = trial_indicators(scenario, ids, 21)
        assert indicators.tolist() == [run_trial(scenario, t, 21) for t in ids]
        assert indicators.tolist() == [_brute_force(*sample_trial(scenario, t, 21)) for t in ids]


def test_coupled_indicators_are_pointwise_monotone():
    ids = range(10_000)
    previous = None
    for n_t in range(1, 11):
        current = trial_indicators(_scenario(f"iud:{n_t}", "iud:3"), ids, 17)
        if previous is not None:
            assert not np.any(previous & ~current)
        previous = current
    previous = None
    for n_e in range(1, 11):
        current = trial_indicators(_scenario("iud:4", f"iud:{n_e}"), ids, 18)
        if previous is not None:
            assert not np.any(current & ~previous)
        previous = current


def test_coupled_trials_are_monotone_in_transmitters():
    rows = sweep(_scenario("iud:1", "iud:3"), "n_T", [1, 2, 3, 4, 6, 8], 3000, 8)
    successes = [row.estimate.successes for row in rows]
    assert successes == sorted(successes)
    assert [row.scenario.tx_process.count for row in rows] == [1, 2, 3, 4, 6, 8]


def test_coupled_trials_are_monotone_in_eavesdroppers():
    rows = sweep(_scenario("iud:4", "iud:1"), "n_E", [1, 2, 3, 5, 8], 3000, 9)
    successes = [row.estimate.successes for row in rows]
    assert successes == sorted(successes, reverse=True)


def test_upper_bound_dominates_the_estimate():
    for n_t, n_e in ((2, 1), (4, 2), (6, 5)):
        est = estimate(_scenario(f"iud:{n_t}", f"iud:{n_e}"), 4000, 13)
        assert est.p_hat <= ub_iud_iud(n_t, n_e).value + est.ci_half_width


def test_sweep_edge_cases():
    base = _scenario("iud:2", "iud:2")
    assert sweep(base, "n_T", [], 100, 1) == []
    with pytest.raises(UnknownAxisError) as excinfo:
        sweep(base, "gamma", [1.0], 100, 1)
    assert "n_T" in str(excinfo.value)


def test_with_axis_updates_the_channel():
    base = _scenario("iud:2", "iud:2", Strategy.BEST_JAMMER)
    updated = with_axis(base, "beta", 3)
    assert updated.strategy.channel.beta == 3.0
    assert updated.strategy.strategy is Strategy.BEST_JAMMER
    assert with_axis(base, "lambda_E", 4).eve_process.param == 4.0
    assert base.strategy.channel == ChannelParams()


def test_confidence_half_width_scales_with_trials():
    small = Estimate.from_counts(50, 100, 0)
    large = Estimate.from_counts(200, 400, 0)
    assert small.ci_half_width == pytest.approx(3 * math.sqrt(0.25 / 100))
    assert large.ci_half_width == pytest.approx(small.ci_half_width / 2)
    assert Estimate.from_counts(50, 100, 0, z=1.96).ci_half_width == pytest.approx(1.96 * 0.05)


def test_wilson_interval():
    low, high = Estimate.from_counts(30, 100, 0).wilson_interval()
    assert 0.0 < low < 0.3 < high < 1.0
    low, high = Estimate.from_counts(0, 50, 0).wilson_interval()
    assert low == 0.0
    assert high > 0.0
    low, high = Estimate.from_counts(50, 50, 0).wilson_interval()
    assert high == pytest.approx(1.0)
    assert low < 1.0
