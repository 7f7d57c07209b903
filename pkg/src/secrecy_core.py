"""
Channel capacities, secrecy capacity, secrecy disks and the cooperative coverage predicate.

With one shared transmit power the sign of C_{t,r} - C_{t,e} depends on distances only,
so the coverage predicate is evaluated on distances; the capacity functions exist for
rate values and for the relay model.
"""

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

import _kernels
from errors import InvalidParameterError, SingularityError
from geometry import Point, as_array, as_points


@dataclass(frozen=True)
class ChannelParams:
    power: float = 1.0
    noise_var: float = 1.0
    beta: float = 4.0
    jammer_power: float | None = None

    def __post_init__(self):
        if not self.power > 0:
            raise InvalidParameterError(f"power must be > 0, got {self.power!r}")
        if not self.noise_var > 0:
            raise InvalidParameterError(f"noise_var must be > 0, got {self.noise_var!r}")
        if not 2.0 <= self.beta <= 6.0:
            raise InvalidParameterError(f"beta must lie in [2, 6], got {self.beta!r}")
        if self.jammer_power is None:
            object.__setattr__(self, "jammer_power", self.power)
        elif not self.jammer_power >= 0:
            raise InvalidParameterError(f"jammer_power must be >= 0, got {self.jammer_power!r}")

    def received(self, power: float, dists: np.ndarray) -> np.ndarray:
        """Received power P * d^-beta per distance; +inf at zero distance, 0 for a silent source."""
        dists = np.asarray(dists, dtype=np.float64)
        if power == 0:
            return np.zeros_like(dists)
        with np.errstate(divide="ignore"):
            return power * np.power(dists, -self.beta)


@dataclass(frozen=True, eq=False)
class Deployment:
    transmitters: np.ndarray
    eavesdroppers: np.ndarray
    receiver: Point = field(default=Point(0.5, 0.5))

    def __post_init__(self):
        object.__setattr__(self, "transmitters", as_array(self.transmitters))
        object.__setattr__(self, "eavesdroppers", as_array(self.eavesdroppers))
        object.__setattr__(self, "receiver", Point(float(self.receiver[0]), float(self.receiver[1])))

    @classmethod
    def of(cls, transmitters: Sequence[Sequence[float]], eavesdroppers: Sequence[Sequence[float]], receiver: Sequence[float]) -> "Deployment":
        return cls(as_array(transmitters), as_array(eavesdroppers), Point(*receiver))

    def transmitter_points(self) -> list[Point]:
        return as_points(self.transmitters)


def capacity(params: ChannelParams, dist: float) -> float:
    """(1/2) log2(1 + P d^-beta / sigma^2), in bits per channel use."""
    if dist == 0:
        raise SingularityError("capacity diverges at zero distance")
    return 0.5 * math.log2(1.0 + params.power * dist ** (-params.beta) / params.noise_var)


def secrecy_capacity(c_main: float, c_eve: float) -> float:
    return max(c_main - c_eve, 0.0)


def secrecy_disk_radius(t: Point, eavesdroppers: Sequence[Point] | np.ndarray) -> float:
    """Distance from t to its nearest eavesdropper; +inf when there are none."""
    return float(_kernels.nearest_distance(float(t[0]), float(t[1]), as_array(eavesdroppers)))


def covered_arrays(transmitters: np.ndarray, eavesdroppers: np.ndarray, receiver: Sequence[float]) -> bool:
    return bool(_kernels.covered(transmitters, eavesdroppers, float(receiver[0]), float(receiver[1])))


def covered(d: Deployment) -> bool:
    """True iff the receiver lies strictly inside at least one transmitter's secrecy disk."""
    return covered_arrays(d.transmitters, d.eavesdroppers, d.receiver)


def coop_secrecy_capacity(params: ChannelParams, d: Deployment) -> float:
    """
    Secrecy capacity of the cooperating set: the best single-transmitter secrecy capacity.

    A transmitter co-located with the receiver contributes +inf.
    """
    best = 0.0
    radii = _kernels.disk_radii(d.transmitters, d.eavesdroppers)
    for (tx, ty), radius in zip(d.transmitters, radii):
        d_tr = math.hypot(tx - d.receiver.x, ty - d.receiver.y)
        if d_tr == 0:
            return math.inf
        if radius == 0:
            continue
        c_eve = 0.0 if math.isinf(radius) else capacity(params, float(radius))
        best = max(best, secrecy_capacity(capacity(params, d_tr), c_eve))
    return best


def secrecy_region_fraction(transmitters: np.ndarray, eavesdroppers: np.ndarray, resolution: int = 256) -> float:
    """
    Area fraction F_s(A) of the unit square covered by the union of secrecy disks,
    for one fixed placement, evaluated on a resolution x resolution grid of cell centres.
    """
    if resolution < 1:
        raise InvalidParameterError(f"resolution must be >= 1, got {resolution}")
    tx = as_array(transmitters)
    if tx.shape[0] == 0:
        return 0.0
    radii = _kernels.disk_radii(tx, as_array(eavesdroppers))
    hits = _kernels.grid_coverage(tx, radii, int(resolution))
    return hits / float(resolution * resolution)
