import math
import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.append(str(ROOT / "src"))

from errors import EmptyInputError  # noqa: E402
from geometry import UNIT_SQUARE, Point, as_array, distance, nearest  # noqa: E402


def test_distance_examples():
    assert distance(Point(0, 0), Point(0, 0)) == 0
    assert distance(Point(0, 0), Point(3, 4)) == 5
    assert distance(Point(0.2, 0.1), Point(0.7, 0.1)) == pytest.approx(0.5, abs=1e-15)


def test_nearest_examples():
    assert nearest(Point(0, 0), [Point(1, 0), Point(0.5, 0)]) == (1, 0.5)
    assert nearest(Point(0, 0), [Point(1, 0), Point(1, 0)]) == (0, 1.0)
    index, dist = nearest(Point(0.5, 0.5), [Point(0, 0)])
    assert index == 0
    assert dist == pytest.approx(math.sqrt(0.5), abs=1e-12)


def test_nearest_rejects_empty_candidates():
    with pytest.raises(EmptyInputError):
        nearest(Point(0, 0), [])


def test_distance_is_a_metric_on_random_triples():
    rng = np.random.default_rng(11)
    for p, q, r in rng.random((500, 3, 2)):
        p, q, r = Point(*p), Point(*q), Point(*r)
        assert distance(p, q) == distance(q, p)
        assert distance(p, r) <= distance(p, q) + distance(q, r) + 1e-12


def test_nearest_matches_linear_scan():
    rng = np.random.default_rng(12)
    for _ in range(200):
        query = Point(*rng.random(2))
        candidates = [Point(*c) for c in rng.random((int(rng.integers(1, 30)), 2))]
        index, dist = nearest(query, candidates)
        assert dist == min(distance(query, c) for c in candidates)
        assert distance(query, candidates[index]) == dist


def test_region_and_array_helpers():
    assert UNIT_SQUARE.area == 1.0
    assert UNIT_SQUARE.contains(Point(1.0, 0.0))
    assert not UNIT_SQUARE.contains(Point(1.1, 0.5))
    assert as_array([]).shape == (0, 2)
    assert as_array([Point(0.1, 0.2)]).tolist() == [[0.1, 0.2]]
