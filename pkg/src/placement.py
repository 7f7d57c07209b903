"""
Spatial point-process samplers for transmitters and eavesdroppers.

Random families draw from a ``SeedStream``: a Philox counter-based generator keyed by
(master_seed, stream_id), so any trial's points can be regenerated without replaying
earlier trials. IUD points are drawn row by row, which makes sampling prefix-stable:
n + 1 points from a stream start with the same n points as a draw of n.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from errors import InvalidParameterError
from geometry import UNIT_SQUARE, Region

_MASK64 = (1 << 64) - 1

_HEX_ROW_RATIO = math.sqrt(3.0) / 2.0


class ProcessFamily(str, Enum):
    IUD = "iud"
    POISSON = "poisson"
    HEX = "hex"
    SQUARE = "square"


@dataclass(frozen=True)
class ProcessSpec:
    family: ProcessFamily
    param: float

    def __post_init__(self):
        if not math.isfinite(self.param) or self.param < 0:
            raise InvalidParameterError(f"process parameter must be finite and >= 0, got {self.param!r}")
        if self.family is not ProcessFamily.POISSON and float(self.param) != int(self.param):
            raise InvalidParameterError(f"{self.family.value} needs an integer count, got {self.param!r}")

    @property
    def count(self) -> int:
        return int(self.param)

    @property
    def is_random(self) -> bool:
        return self.family in (ProcessFamily.IUD, ProcessFamily.POISSON)

    def with_param(self, param: float) -> "ProcessSpec":
        return ProcessSpec(self.family, float(param))

    def __str__(self) -> str:
        if self.family is ProcessFamily.POISSON:
            return f"{self.family.value}:{self.param:g}"
        return f"{self.family.value}:{self.count}"


def parse_process_spec(text: str) -> ProcessSpec:
    """Parse ``iud:<n>``, ``poisson:<rate>``, ``hex:<n>`` or ``square:<n>``."""
    family_text, sep, param_text = (text or "").strip().partition(":")
    if not sep:
        raise InvalidParameterError(f"malformed process spec {text!r}: expected <family>:<param>")
    try:
        family = ProcessFamily(family_text.lower())
    except ValueError:
        raise InvalidParameterError(f"unknown process family {family_text!r} in {text!r}") from None
    try:
        param = float(param_text)
    except ValueError:
        raise InvalidParameterError(f"malformed process parameter {param_text!r} in {text!r}") from None
    return ProcessSpec(family, param)


@dataclass(frozen=True)
class SeedStream:
    master_seed: int
    stream_id: int

    @property
    def key(self) -> int:
        return ((self.master_seed & _MASK64) << 64) | (self.stream_id & _MASK64)

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(key=self.key))


def sample_iud(n: int, region: Region, seed: SeedStream) -> np.ndarray:
    if n < 0:
        raise InvalidParameterError(f"IUD count must be >= 0, got {n}")
    if n == 0:
        return np.empty((0, 2), dtype=np.float64)
    return _iud_points(seed.generator(), n, region)


def sample_poisson(rate: float, region: Region, seed: SeedStream) -> np.ndarray:
    """Two-stage recipe: l ~ Poisson(rate * area), then l IUD points, all from one stream."""
    if rate < 0:
        raise InvalidParameterError(f"Poisson rate must be >= 0, got {rate}")
    if rate == 0:
        return np.empty((0, 2), dtype=np.float64)
    rng = seed.generator()
    count = int(rng.poisson(rate * region.area))
    if count == 0:
        return np.empty((0, 2), dtype=np.float64)
    return _iud_points(rng, count, region)


def _iud_points(rng: np.random.Generator, n: int, region: Region) -> np.ndarray:
    side = math.sqrt(region.area)
    return np.ascontiguousarray(rng.random((n, 2)) * side)


def hex_lattice(n: int, region: Region = UNIT_SQUARE) -> np.ndarray:
    """
    n points on a triangular (hexagonal-packing) lattice, row-major from the bottom row.

    Odd rows are shifted right by half a pitch and rows are sqrt(3)/2 pitches apart.
    Of all row counts that leave no row empty, the one allowing the largest pitch wins
    (fewest rows on ties); the block is centred.
    """
    if n <= 0:
        return np.empty((0, 2), dtype=np.float64)
    rows, cols, pitch = _hex_factor(n)
    offset = 0.5 if rows > 1 else 0.0
    side = math.sqrt(region.area)
    pitch *= side
    row_pitch = pitch * _HEX_ROW_RATIO
    x0 = (side - pitch * (cols + offset)) / 2.0
    y0 = (side - row_pitch * rows) / 2.0

    points = np.empty((n, 2), dtype=np.float64)
    for k in range(n):
        i, j = divmod(k, cols)
        shift = 0.5 if i % 2 == 1 else 0.0
        points[k, 0] = x0 + (j + 0.5 + shift) * pitch
        points[k, 1] = y0 + (i + 0.5) * row_pitch
    return points


def square_lattice(n: int, region: Region = UNIT_SQUARE) -> np.ndarray:
    """n cell centres of a rows x cols grid; a perfect square n gives the m x m grid of pitch 1/m."""
    if n <= 0:
        return np.empty((0, 2), dtype=np.float64)
    rows, cols = _square_factor(n)
    side = math.sqrt(region.area)
    points = np.empty((n, 2), dtype=np.float64)
    for k in range(n):
        i, j = divmod(k, cols)
        points[k, 0] = side * (j + 0.5) / cols
        points[k, 1] = side * (i + 0.5) / rows
    return points


def _hex_factor(n: int) -> tuple[int, int, float]:
    best = (1, n, 0.0)
    for rows in range(1, n + 1):
        cols = -(-n // rows)
        if (rows - 1) * cols >= n:
            continue
        offset = 0.5 if rows > 1 else 0.0
        pitch = min(1.0 / (cols + offset), 1.0 / (rows * _HEX_ROW_RATIO))
        if pitch > best[2] + 1e-12:
            best = (rows, cols, pitch)
    return best


def _square_factor(n: int) -> tuple[int, int]:
    # rows = round(sqrt(n)), cols = ceil(n / rows); surplus is cut from the last row
    rows = max(1, min(n, int(round(math.sqrt(n)))))
    cols = -(-n // rows)
    return rows, cols


def sample(spec: ProcessSpec, region: Region, seed: SeedStream) -> np.ndarray:
    if spec.family is ProcessFamily.IUD:
        return sample_iud(spec.count, region, seed)
    if spec.family is ProcessFamily.POISSON:
        return sample_poisson(spec.param, region, seed)
    if spec.family is ProcessFamily.HEX:
        return hex_lattice(spec.count, region)
    return square_lattice(spec.count, region)


def sample_block(spec: ProcessSpec, region: Region, seed: SeedStream, size: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Points for ``size`` trials from one stream: a (size, k, 2) array padded past each
    trial's count, and the (size,) counts.

    Random families fill point slot by slot across all trials, so trial j's first n
    points are the same whether the process asks for n or more.
    """
    side = math.sqrt(region.area)
    if spec.family is ProcessFamily.POISSON:
        rng = seed.generator()
        counts = rng.poisson(spec.param * region.area, size).astype(np.int64) if spec.param > 0 else np.zeros(size, dtype=np.int64)
        width = int(counts.max()) if size else 0
        points = rng.random((width, size, 2)) * side
    elif spec.family is ProcessFamily.IUD:
        counts = np.full(size, spec.count, dtype=np.int64)
        points = seed.generator().random((spec.count, size, 2)) * side if spec.count else np.empty((0, size, 2))
    else:
        lattice = hex_lattice(spec.count, region) if spec.family is ProcessFamily.HEX else square_lattice(spec.count, region)
        counts = np.full(size, spec.count, dtype=np.int64)
        return np.ascontiguousarray(np.broadcast_to(lattice, (size, spec.count, 2))), counts
    return np.ascontiguousarray(points.transpose(1, 0, 2)), counts
