"""
Seeded Monte Carlo estimation of P{Cs > 0} for any scenario.

Trials are sampled in fixed blocks of ``TRIAL_BLOCK``. Each block draws from its own
streams, keyed by (master_seed, block, role), so a trial's outcome is a pure function of
its id. Block counts are summed as integers, which keeps the success count identical
for any number of worker threads.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

import _kernels
import strategies
import telemetry
from errors import InvalidParameterError, UnknownAxisError
from geometry import UNIT_SQUARE, Point, Region
from placement import ProcessFamily, ProcessSpec, SeedStream, sample_block
from secrecy_core import ChannelParams
from strategies import Strategy, StrategyConfig

DEFAULT_Z = float(os.getenv("SECRECY_SIM_Z", "3.0"))

# part of the stream layout: changing it changes every result
TRIAL_BLOCK = 1024

STREAMS_PER_BLOCK = 4
TX_STREAM = 0
EVE_STREAM = 1
RECEIVER_STREAM = 2
PRESECRET_STREAM = 3

tracer = telemetry.get_tracer(__name__)


@dataclass(frozen=True)
class Scenario:
    tx_process: ProcessSpec
    eve_process: ProcessSpec
    strategy: StrategyConfig = field(default_factory=StrategyConfig)
    region: Region = UNIT_SQUARE


@dataclass(frozen=True)
class Estimate:
    p_hat: float
    trials: int
    successes: int
    ci_half_width: float
    master_seed: int
    z: float = DEFAULT_Z

    @classmethod
    def from_counts(cls, successes: int, trials: int, master_seed: int, z: float = DEFAULT_Z) -> "Estimate":
        p_hat = successes / trials
        return cls(
            p_hat=p_hat,
            trials=trials,
            successes=successes,
            ci_half_width=z * math.sqrt(p_hat * (1.0 - p_hat) / trials),
            master_seed=master_seed,
            z=z,
        )

    def wilson_interval(self) -> tuple[float, float]:
        n, z, p = self.trials, self.z, self.p_hat
        denom = 1.0 + z * z / n
        centre = (p + z * z / (2 * n)) / denom
        half = z * math.sqrt(p * (1.0 - p) / n + z * z / (4 * n * n)) / denom
        return max(0.0, centre - half), min(1.0, centre + half)


@dataclass(frozen=True)
class SweepRow:
    axis: str
    value: float
    scenario: Scenario
    estimate: Estimate


@dataclass(frozen=True, eq=False)
class TrialBlock:
    """Sampled deployments for one block; point arrays are padded past each trial's count."""

    friendly: np.ndarray
    friendly_counts: np.ndarray
    eaves: np.ndarray
    eave_counts: np.ndarray
    receivers: np.ndarray

    def trial(self, j: int) -> tuple[np.ndarray, np.ndarray, Point]:
        friendly = np.ascontiguousarray(self.friendly[j, : self.friendly_counts[j]])
        eaves = np.ascontiguousarray(self.eaves[j, : self.eave_counts[j]])
        return friendly, eaves, Point(float(self.receivers[j, 0]), float(self.receivers[j, 1]))


def block_stream(master_seed: int, block: int, role: int) -> SeedStream:
    return SeedStream(master_seed, block * STREAMS_PER_BLOCK + role)


def sample_trial_block(scenario: Scenario, block: int, master_seed: int) -> TrialBlock:
    region = scenario.region
    friendly, friendly_counts = sample_block(scenario.tx_process, region, block_stream(master_seed, block, TX_STREAM), TRIAL_BLOCK)
    eaves, eave_counts = sample_block(scenario.eve_process, region, block_stream(master_seed, block, EVE_STREAM), TRIAL_BLOCK)
    receivers, _ = sample_block(ProcessSpec(ProcessFamily.IUD, 1), region, block_stream(master_seed, block, RECEIVER_STREAM), TRIAL_BLOCK)
    return TrialBlock(friendly, friendly_counts, eaves, eave_counts, np.ascontiguousarray(receivers[:, 0, :]))


def block_indicators(scenario: Scenario, block: int, master_seed: int) -> np.ndarray:
    sampled = sample_trial_block(scenario, block, master_seed)
    if scenario.strategy.strategy is Strategy.COOP_TRANSMIT:
        return _kernels.covered_block(sampled.friendly, sampled.friendly_counts, sampled.eaves, sampled.eave_counts, sampled.receivers)
    return np.fromiter(
        (strategies.evaluate(scenario.strategy, *sampled.trial(j)) for j in range(TRIAL_BLOCK)),
        dtype=np.bool_,
        count=TRIAL_BLOCK,
    )


def sample_trial(scenario: Scenario, trial_id: int, master_seed: int) -> tuple[np.ndarray, np.ndarray, Point]:
    """Friendly nodes, eavesdroppers and receiver for one trial."""
    block, j = divmod(trial_id, TRIAL_BLOCK)
    return sample_trial_block(scenario, block, master_seed).trial(j)


def run_trial(scenario: Scenario, trial_id: int, master_seed: int) -> bool:
    friendly, eaves, receiver = sample_trial(scenario, trial_id, master_seed)
    return strategies.evaluate(scenario.strategy, friendly, eaves, receiver)


def trial_indicators(scenario: Scenario, trial_ids: Iterable[int], master_seed: int) -> np.ndarray:
    ids = np.fromiter(trial_ids, dtype=np.int64)
    out = np.empty(ids.shape[0], dtype=np.bool_)
    blocks, offsets = np.divmod(ids, TRIAL_BLOCK)
    for block in np.unique(blocks):
        mask = blocks == block
        out[mask] = block_indicators(scenario, int(block), master_seed)[offsets[mask]]
    return out


def _count_block(scenario: Scenario, block: int, trials: int, master_seed: int) -> int:
    used = min(TRIAL_BLOCK, trials - block * TRIAL_BLOCK)
    return int(np.count_nonzero(block_indicators(scenario, block, master_seed)[:used]))


def estimate(scenario: Scenario, trials: int, master_seed: int, *, threads: int = 1, z: float = DEFAULT_Z) -> Estimate:
    if trials < 1:
        raise InvalidParameterError(f"trials must be >= 1, got {trials}")
    if threads < 1:
        raise InvalidParameterError(f"threads must be >= 1, got {threads}")

    with tracer.start_as_current_span("montecarlo.estimate") as span:
        span.set_attribute("scenario.tx_process", str(scenario.tx_process))
        span.set_attribute("scenario.eve_process", str(scenario.eve_process))
        span.set_attribute("scenario.strategy", scenario.strategy.strategy.value)
        span.set_attribute("trials", trials)
        span.set_attribute("threads", threads)
        span.set_attribute("seed", str(master_seed))

        blocks = range(-(-trials // TRIAL_BLOCK))
        if threads == 1:
            counts = [_count_block(scenario, b, trials, master_seed) for b in blocks]
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                counts = list(pool.map(lambda b: _count_block(scenario, b, trials, master_seed), blocks))
        successes = sum(counts)
        span.set_attribute("successes", successes)
    return Estimate.from_counts(successes, trials, master_seed, z)


_TX_AXES = {"tx_param", "n_T", "lambda_T"}
_EVE_AXES = {"eve_param", "n_E", "lambda_E"}
_CHANNEL_AXES = {"beta", "power", "noise_var", "jammer_power"}
VALID_AXES = sorted(_TX_AXES | _EVE_AXES | _CHANNEL_AXES)


def with_axis(base: Scenario, axis: str, value: float) -> Scenario:
    if axis in _TX_AXES:
        return replace(base, tx_process=base.tx_process.with_param(value))
    if axis in _EVE_AXES:
        return replace(base, eve_process=base.eve_process.with_param(value))
    if axis in _CHANNEL_AXES:
        channel: ChannelParams = replace(base.strategy.channel, **{axis: float(value)})
        return replace(base, strategy=replace(base.strategy, channel=channel))
    raise UnknownAxisError(axis, VALID_AXES)


def sweep(
    base: Scenario,
    axis: str,
    values: Sequence[float],
    trials: int,
    master_seed: int,
    *,
    threads: int = 1,
    z: float = DEFAULT_Z,
) -> list[SweepRow]:
    """
    One estimate per value, all on the same master seed so that neighbouring
    rows are evaluated on coupled trials.
    """
    if axis not in VALID_AXES:
        raise UnknownAxisError(axis, VALID_AXES)
    rows: list[SweepRow] = []
    with tracer.start_as_current_span("montecarlo.sweep") as span:
        span.set_attribute("axis", axis)
        span.set_attribute("values", len(values))
        for value in values:
            scenario = with_axis(base, axis, value)
            rows.append(SweepRow(axis, float(value), scenario, estimate(scenario, trials, master_seed, threads=threads, z=z)))
    return rows
