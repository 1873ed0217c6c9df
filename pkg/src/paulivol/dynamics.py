"""Eigenvalue dynamics under piecewise-constant generator rates.

A time-local generator with rates (g1(t), g2(t), g3(t)) moves the map
eigenvalues along

    lambda_a(t) = exp(Gamma_a(t) - Gamma_0(t)),

where Gamma_a(t) is the integral of g_a up to t and Gamma_0 is the sum
of the three.  Schedules are piecewise constant, so the integrals have
closed forms and no ODE solver enters; a semigroup is the special case
of a single segment with nonnegative rates.

Every map with strictly positive eigenvalues is reachable this way:
``rates_for_target`` inverts the flow, and negative rates are allowed
exactly so that targets with some Gamma_a < 0 stay reachable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .channel import EigenvalueTriple
from .regions import (
    is_cp,
    is_cp_divisible,
    is_ebc,
    is_p_divisible,
    is_positive,
    is_tlg,
)

__all__ = [
    "RateTriple",
    "RateSchedule",
    "IntegratedRates",
    "TrajectoryPoint",
    "schedule_from_json",
    "integrate_rates",
    "evolve",
    "rates_for_target",
    "is_semigroup_reachable",
    "classify_trajectory",
]


@dataclass(frozen=True)
class RateTriple:
    """Generator rates (g1, g2, g3); negative values are allowed."""

    g1: float
    g2: float
    g3: float

    def __post_init__(self):
        for name in ("g1", "g2", "g3"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"rate {name} must be finite, got {v!r}")
            object.__setattr__(self, name, float(v))

    def __iter__(self):
        yield self.g1
        yield self.g2
        yield self.g3


@dataclass(frozen=True)
class RateSchedule:
    """Ordered piecewise-constant rate segments (duration, rates)."""

    segments: tuple

    def __init__(self, segments: Iterable[tuple]):
        parsed = []
        for duration, rates in segments:
            duration = float(duration)
            if not math.isfinite(duration) or duration <= 0.0:
                raise ValueError(f"segment duration must be positive, got {duration!r}")
            if not isinstance(rates, RateTriple):
                rates = RateTriple(*rates)
            parsed.append((duration, rates))
        if not parsed:
            raise ValueError("schedule needs at least one segment")
        object.__setattr__(self, "segments", tuple(parsed))

    @property
    def total_duration(self) -> float:
        return math.fsum(d for d, _r in self.segments)


def schedule_from_json(obj) -> RateSchedule:
    """Build a schedule from parsed JSON: a list of segment objects.

    Each segment is ``{"duration": number, "rates": [g1, g2, g3]}``.
    """
    if not isinstance(obj, list):
        raise ValueError("schedule JSON must be a list of segments")
    segments = []
    for i, seg in enumerate(obj):
        if not isinstance(seg, Mapping) or set(seg) != {"duration", "rates"}:
            raise ValueError(
                f"segment {i} must be an object with keys 'duration' and 'rates'"
            )
        rates = seg["rates"]
        if not isinstance(rates, list) or len(rates) != 3:
            raise ValueError(f"segment {i} rates must be a list of three numbers")
        segments.append((seg["duration"], RateTriple(*rates)))
    return RateSchedule(segments)


@dataclass(frozen=True)
class IntegratedRates:
    """Accumulated rate integrals (Gamma_1, Gamma_2, Gamma_3)."""

    G1: float
    G2: float
    G3: float

    @property
    def total(self) -> float:
        """Gamma_0, the sum of the three integrals."""
        return self.G1 + self.G2 + self.G3


def integrate_rates(schedule: RateSchedule, t: float) -> IntegratedRates:
    """Integrate the rates over [0, t], exactly segment by segment."""
    if not 0.0 <= t <= schedule.total_duration:
        raise ValueError(
            f"time {t!r} outside the schedule range [0, {schedule.total_duration}]"
        )
    G1 = G2 = G3 = 0.0
    remaining = t
    for duration, rates in schedule.segments:
        if remaining <= 0.0:
            break
        dt = min(remaining, duration)
        G1 += rates.g1 * dt
        G2 += rates.g2 * dt
        G3 += rates.g3 * dt
        remaining -= duration
    return IntegratedRates(G1, G2, G3)


def evolve(schedule: RateSchedule, t: float) -> EigenvalueTriple:
    """Eigenvalues at time t: lambda_a = exp(Gamma_a - Gamma_0).

    The exponent Gamma_a - Gamma_0 equals minus the sum of the other
    two integrals, which is how it is evaluated; outputs are therefore
    always strictly positive, and lambda(0) = (1, 1, 1).
    """
    G = integrate_rates(schedule, t)
    return EigenvalueTriple(
        math.exp(-(G.G2 + G.G3)),
        math.exp(-(G.G1 + G.G3)),
        math.exp(-(G.G1 + G.G2)),
    )


def _mu(l: EigenvalueTriple) -> tuple:
    if not (l.l1 > 0.0 and l.l2 > 0.0 and l.l3 > 0.0):
        raise ValueError(
            f"target {(l.l1, l.l2, l.l3)} is not reachable by a time-local"
            " generator: all eigenvalues must be strictly positive"
        )
    return (-math.log(l.l1), -math.log(l.l2), -math.log(l.l3))


def rates_for_target(l: EigenvalueTriple, t_star: float) -> RateTriple:
    """Constant rates that reach the target eigenvalues at time t_star.

    With mu_a = -log(lambda_a), the integrals must come out as
    Gamma_a = (mu_b + mu_c - mu_a)/2 for {a, b, c} = {1, 2, 3}; constant
    rates gamma_a = Gamma_a / t_star realize that, so
    evolve([(t_star, rates)], t_star) returns the target up to rounding.
    Rejects targets with any eigenvalue <= 0.
    """
    if not t_star > 0.0:
        raise ValueError(f"t_star must be positive, got {t_star!r}")
    m1, m2, m3 = _mu(l)
    return RateTriple(
        0.5 * (m2 + m3 - m1) / t_star,
        0.5 * (m1 + m3 - m2) / t_star,
        0.5 * (m1 + m2 - m3) / t_star,
    )


def is_semigroup_reachable(l: EigenvalueTriple) -> bool:
    """Whether constant nonnegative rates reach the given eigenvalues.

    True iff all eigenvalues are strictly positive and each required
    integral (mu_b + mu_c - mu_a)/2 is nonnegative.  Boundary zeros are
    reported unreachable: they are only limits of the flow.
    """
    if not (l.l1 > 0.0 and l.l2 > 0.0 and l.l3 > 0.0):
        return False
    m1, m2, m3 = _mu(l)
    return m2 + m3 >= m1 and m1 + m3 >= m2 and m1 + m2 >= m3


@dataclass(frozen=True)
class TrajectoryPoint:
    """One classified step of an eigenvalue trajectory."""

    t: float
    eigenvalues: EigenvalueTriple
    regions: dict


def classify_trajectory(schedule: RateSchedule, steps: int) -> list:
    """Classify the trajectory at equally spaced times over the schedule.

    Evaluates all six region predicates at ``steps`` times from 0 to
    the schedule's total duration inclusive.
    """
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    total = schedule.total_duration
    points = []
    for i in range(steps):
        t = total * i / (steps - 1)
        lam = evolve(schedule, t)
        regions = {
            "PT": is_positive(lam),
            "CPT": is_cp(lam),
            "EBC": is_ebc(lam),
            "TLG": is_tlg(lam),
            "PDIV": is_p_divisible(lam),
            "CPDIV": is_cp_divisible(lam),
        }
        points.append(TrajectoryPoint(t, lam, regions))
    return points
