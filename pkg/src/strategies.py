"""
Positive-secrecy predicates for the four ways a set of friendly nodes can cooperate.

Relay and jammer use the simplest models consistent with the verbal description of
single-helper cooperation:

* best jammer: one helper j emits noise at P_j; secrecy exists if the receiver's SINR
  beats every eavesdropper's SINR for some j.
* best relay: decode-and-forward through one helper j; the end-to-end rate
  min(C(t->j), C(j->r)) must beat every eavesdropper hearing either hop.

Both also succeed whenever direct transmission already has positive secrecy.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from errors import EmptyInputError
from geometry import Point, as_array
from secrecy_core import ChannelParams, covered_arrays


class Strategy(str, Enum):
    DIRECT = "direct"
    COOP_TRANSMIT = "coop-tx"
    BEST_RELAY = "best-relay"
    BEST_JAMMER = "best-jammer"


@dataclass(frozen=True)
class StrategyConfig:
    strategy: Strategy = Strategy.COOP_TRANSMIT
    channel: ChannelParams = field(default_factory=ChannelParams)


@dataclass(frozen=True, eq=False)
class FriendlyRoles:
    designated_tx: Point
    helpers: np.ndarray


def assign_roles(friendly: Sequence[Point] | np.ndarray) -> FriendlyRoles:
    """The first sampled friendly node transmits; the rest are relay or jammer candidates."""
    points = as_array(friendly)
    if points.shape[0] == 0:
        raise EmptyInputError("assign_roles() needs at least one friendly node")
    return FriendlyRoles(Point(float(points[0, 0]), float(points[0, 1])), points[1:])


def _distances(p: Sequence[float], points: np.ndarray) -> np.ndarray:
    return np.hypot(points[:, 0] - p[0], points[:, 1] - p[1])


def eval_direct(roles: FriendlyRoles, eaves: Sequence[Point] | np.ndarray, receiver: Point, cfg: StrategyConfig | None = None) -> bool:
    tx = np.array([roles.designated_tx], dtype=np.float64)
    return covered_arrays(tx, as_array(eaves), receiver)


def eval_coop_transmit(friendly: Sequence[Point] | np.ndarray, eaves: Sequence[Point] | np.ndarray, receiver: Point) -> bool:
    return covered_arrays(as_array(friendly), as_array(eaves), receiver)


def _sinr(signal: np.ndarray, noise_var: float, interference: np.ndarray) -> np.ndarray:
    # a jammer on top of a node saturates it; that dominates even an infinite signal
    out = np.empty(np.broadcast(signal, interference).shape, dtype=np.float64)
    signal, interference = np.broadcast_arrays(signal, interference)
    saturated = np.isinf(interference)
    with np.errstate(invalid="ignore"):
        out[~saturated] = signal[~saturated] / (noise_var + interference[~saturated])
    out[saturated] = 0.0
    return out


def eval_best_jammer(roles: FriendlyRoles, eaves: Sequence[Point] | np.ndarray, receiver: Point, cfg: StrategyConfig) -> bool:
    eve = as_array(eaves)
    if eval_direct(roles, eve, receiver):
        return True
    helpers = as_array(roles.helpers)
    if helpers.shape[0] == 0:
        return False
    ch = cfg.channel
    tx = roles.designated_tx

    signal_r = ch.received(ch.power, np.array([math.hypot(tx[0] - receiver[0], tx[1] - receiver[1])]))
    signal_e = ch.received(ch.power, _distances(tx, eve))

    for j in helpers:
        jam_r = ch.received(ch.jammer_power, np.array([math.hypot(j[0] - receiver[0], j[1] - receiver[1])]))
        jam_e = ch.received(ch.jammer_power, _distances(j, eve))
        sinr_r = _sinr(signal_r, ch.noise_var, jam_r)[0]
        sinr_e = _sinr(signal_e, ch.noise_var, jam_e)
        if sinr_r > sinr_e.max():
            return True
    return False


def _capacities(ch: ChannelParams, dists: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        snr = ch.power * np.power(dists, -ch.beta) / ch.noise_var
    return 0.5 * np.log2(1.0 + snr)


def eval_best_relay(roles: FriendlyRoles, eaves: Sequence[Point] | np.ndarray, receiver: Point, cfg: StrategyConfig) -> bool:
    eve = as_array(eaves)
    if eval_direct(roles, eve, receiver):
        return True
    helpers = as_array(roles.helpers)
    if helpers.shape[0] == 0:
        return False
    ch = cfg.channel
    tx = roles.designated_tx

    first_hop = _capacities(ch, _distances(tx, helpers))
    second_hop = _capacities(ch, _distances(receiver, helpers))
    leak_tx = _capacities(ch, _distances(tx, eve)).max()
    for k, j in enumerate(helpers):
        leak = max(leak_tx, _capacities(ch, _distances(j, eve)).max())
        if min(first_hop[k], second_hop[k]) > leak:
            return True
    return False


def evaluate(cfg: StrategyConfig, friendly: np.ndarray, eaves: np.ndarray, receiver: Point) -> bool:
    """Positive-secrecy indicator for one deployment; no friendly nodes means no secrecy."""
    friendly = as_array(friendly)
    if friendly.shape[0] == 0:
        return False
    if cfg.strategy is Strategy.COOP_TRANSMIT:
        return eval_coop_transmit(friendly, eaves, receiver)
    roles = assign_roles(friendly)
    if cfg.strategy is Strategy.DIRECT:
        return eval_direct(roles, eaves, receiver, cfg)
    if cfg.strategy is Strategy.BEST_RELAY:
        return eval_best_relay(roles, eaves, receiver, cfg)
    return eval_best_jammer(roles, eaves, receiver, cfg)
