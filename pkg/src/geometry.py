"""Planar primitives: points, the unit-square study region, distances and nearest-neighbour queries."""

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from errors import EmptyInputError


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Region:
    """The study region A. Only the unit square is modelled; L(A) = 1, no wrap-around."""

    kind: str = "unit-square"
    area: float = 1.0

    def contains(self, p: Point) -> bool:
        return 0.0 <= p.x <= 1.0 and 0.0 <= p.y <= 1.0


UNIT_SQUARE = Region()


def distance(p: Point, q: Point) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def nearest(query: Point, candidates: Sequence[Point]) -> tuple[int, float]:
    """Index and distance of the closest candidate; ties go to the lowest index."""
    if len(candidates) == 0:
        raise EmptyInputError("nearest() needs at least one candidate")
    best_index = 0
    best = distance(query, candidates[0])
    for index in range(1, len(candidates)):
        d = distance(query, candidates[index])
        if d < best:
            best_index, best = index, d
    return best_index, best


def as_array(points: Sequence[Point] | np.ndarray) -> np.ndarray:
    """Contiguous float64 array of shape (n, 2); empty input gives shape (0, 2)."""
    arr = np.ascontiguousarray(np.asarray(points, dtype=np.float64))
    return arr.reshape(-1, 2)


def as_points(arr: np.ndarray) -> list[Point]:
    return [Point(float(x), float(y)) for x, y in np.asarray(arr, dtype=np.float64).reshape(-1, 2)]
