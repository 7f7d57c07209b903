"""
Compiled inner loops shared by the coverage predicate and the key-exchange model.

Arrays are float64 of shape (n, 2). Linear scans only; the counts involved are small.
"""

import math

import numpy as np
from numba import njit


@njit(nogil=True)
def nearest_distance(px, py, points):
    best = np.inf
    for k in range(points.shape[0]):
        d = math.hypot(points[k, 0] - px, points[k, 1] - py)
        if d < best:
            best = d
    return best


@njit(nogil=True)
def disk_radii(transmitters, eavesdroppers):
    out = np.empty(transmitters.shape[0], dtype=np.float64)
    for i in range(transmitters.shape[0]):
        out[i] = nearest_distance(transmitters[i, 0], transmitters[i, 1], eavesdroppers)
    return out


@njit(nogil=True)
def covered(transmitters, eavesdroppers, rx, ry):
    for i in range(transmitters.shape[0]):
        tx = transmitters[i, 0]
        ty = transmitters[i, 1]
        if math.hypot(tx - rx, ty - ry) < nearest_distance(tx, ty, eavesdroppers):
            return True
    return False


@njit(nogil=True)
def intercepted(transmitters, eavesdroppers, rx, ry):
    out = np.empty(transmitters.shape[0], dtype=np.bool_)
    for i in range(transmitters.shape[0]):
        tx = transmitters[i, 0]
        ty = transmitters[i, 1]
        out[i] = nearest_distance(tx, ty, eavesdroppers) <= math.hypot(tx - rx, ty - ry)
    return out


@njit(nogil=True)
def grid_coverage(transmitters, radii, resolution):
    hits = 0
    for a in range(resolution):
        ry = (a + 0.5) / resolution
        for b in range(resolution):
            rx = (b + 0.5) / resolution
            for i in range(transmitters.shape[0]):
                if math.hypot(transmitters[i, 0] - rx, transmitters[i, 1] - ry) < radii[i]:
                    hits += 1
                    break
    return hits


@njit(nogil=True)
def covered_block(transmitters, tx_counts, eavesdroppers, eve_counts, receivers):
    """Coverage for a block of trials; point arrays are (trials, k, 2), padded past each count."""
    out = np.zeros(receivers.shape[0], dtype=np.bool_)
    for b in range(receivers.shape[0]):
        eve = eavesdroppers[b, : eve_counts[b]]
        rx = receivers[b, 0]
        ry = receivers[b, 1]
        for i in range(tx_counts[b]):
            tx = transmitters[b, i, 0]
            ty = transmitters[b, i, 1]
            if math.hypot(tx - rx, ty - ry) < nearest_distance(tx, ty, eve):
                out[b] = True
                break
    return out
