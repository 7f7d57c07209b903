"""
Closed-form values and upper bounds for P{Cs > 0}.

The upper bounds ignore the overlap between secrecy disks, so the gap to the true
value grows with the number of transmitters.

The Poisson-transmitter bound is also available as its defining expectation series.
Truncating that series after ``terms`` summands drops at most
P{L_T >= terms} <= (lambda^terms / terms!) * e^-lambda * terms / (terms - lambda)
for terms > lambda, which is far below 1e-10 at 200 terms for any rate up to 20.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import stats

from errors import InvalidParameterError
from placement import ProcessFamily, ProcessSpec
from strategies import Strategy


class BoundKind(str, Enum):
    EXACT = "exact"
    UPPER_BOUND = "upper-bound"
    ASYMPTOTIC = "asymptotic"


@dataclass(frozen=True)
class BoundResult:
    value: float
    kind: BoundKind

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise InvalidParameterError(f"probability out of range: {self.value!r}")


def _non_negative(name: str, value: float) -> None:
    if value < 0:
        raise InvalidParameterError(f"{name} must be >= 0, got {value!r}")


def exact_single_tx_iud_eve(n_E: int) -> BoundResult:
    """One transmitter, n_E IUD eavesdroppers: the receiver wins the nearest-point race with odds 1/(1 + n_E)."""
    _non_negative("n_E", n_E)
    return BoundResult(1.0 / (1.0 + n_E), BoundKind.EXACT)


def ub_iud_iud(n_T: int, n_E: int) -> BoundResult:
    if n_T < 1:
        raise InvalidParameterError(f"n_T must be >= 1, got {n_T!r}")
    _non_negative("n_E", n_E)
    return BoundResult(1.0 - (n_E / (1.0 + n_E)) ** n_T, BoundKind.UPPER_BOUND)


def ub_asymptotic(k: float) -> BoundResult:
    """Limit of the IUD bound as n_T, n_E grow with n_T / n_E = k."""
    _non_negative("k", k)
    return BoundResult(-math.expm1(-k), BoundKind.ASYMPTOTIC)


def ub_poisson_tx_iud_eve(lambda_T: float, n_E: int) -> BoundResult:
    _non_negative("lambda_T", lambda_T)
    _non_negative("n_E", n_E)
    return BoundResult(-math.expm1(-lambda_T / (1.0 + n_E)), BoundKind.UPPER_BOUND)


def exact_single_tx_poisson_eve(lambda_E: float) -> BoundResult:
    """E[1 / (1 + L_E)] for L_E ~ Poisson(lambda_E); 1 at lambda_E = 0 by continuity."""
    _non_negative("lambda_E", lambda_E)
    if lambda_E == 0:
        return BoundResult(1.0, BoundKind.EXACT)
    return BoundResult(min(1.0, -math.expm1(-lambda_E) / lambda_E), BoundKind.EXACT)


def series_poisson_tx_iud_eve(lambda_T: float, n_E: int, terms: int = 200) -> float:
    """Expectation of the per-count bound over L_T ~ Poisson(lambda_T), summed to ``terms``."""
    _non_negative("lambda_T", lambda_T)
    _non_negative("n_E", n_E)
    counts = np.arange(terms + 1)
    pmf = stats.poisson.pmf(counts, lambda_T)
    per_count = 1.0 - (n_E / (1.0 + n_E)) ** counts
    return float(np.sum(per_count * pmf))


def relative_gap(bound: float, p_hat: float) -> float:
    if bound == 0:
        return 0.0
    return (bound - p_hat) / bound


def bound_for(tx: ProcessSpec, eve: ProcessSpec, strategy: Strategy = Strategy.COOP_TRANSMIT) -> BoundResult | None:
    """The closed form matching a scenario, if one exists."""
    if strategy is not Strategy.COOP_TRANSMIT:
        return None
    if tx.family is ProcessFamily.IUD and eve.family is ProcessFamily.IUD:
        if tx.count == 0:
            return None
        if tx.count == 1:
            return exact_single_tx_iud_eve(eve.count)
        return ub_iud_iud(tx.count, eve.count)
    if tx.family is ProcessFamily.POISSON and eve.family is ProcessFamily.IUD:
        return ub_poisson_tx_iud_eve(tx.param, eve.count)
    if tx.family is ProcessFamily.IUD and tx.count == 1 and eve.family is ProcessFamily.POISSON:
        return exact_single_tx_poisson_eve(eve.param)
    return None


def asymptotic_for(tx: ProcessSpec, eve: ProcessSpec, strategy: Strategy = Strategy.COOP_TRANSMIT) -> BoundResult | None:
    """The large-network bound at k = n_T / n_E for IUD/IUD cooperative transmitting."""
    if strategy is not Strategy.COOP_TRANSMIT:
        return None
    if tx.family is ProcessFamily.IUD and eve.family is ProcessFamily.IUD and eve.count >= 1 and tx.count >= 1:
        return ub_asymptotic(tx.count / eve.count)
    return None
