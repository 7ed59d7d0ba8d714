"""Random access tests: average success probabilities, bounds, certificates.

A random access test of measurements M^(1), ..., M^(k) asks a sender to
encode a uniformly random outcome tuple (x_1, ..., x_k) into one state so
that a receiver, told a uniformly random index i and measuring M^(i),
recovers x_i.  With the best encoding for each tuple the average success is

    P = (1 / (k prod_i m_i)) * sum_tuples || M^(1)_{x_1} + ... + M^(k)_{x_k} ||,

which equals the decoding power of the harmonic approximate joint divided by
the harmonic mean of the outcome counts.  That identity powers a simple
incompatibility certificate: a compatible pair can never beat
(1/2) (1 + storability / (m_1 m_2)).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod

import numpy as np

from .core import Measurement, Theory, norm_with_argmax, require_valid_measurement
from .errors import InputError
from .jointness import harmonic_joint
from .storability import decoding_power, information_storability
from .linalg import EPS


@dataclass(frozen=True)
class RatReport:
    p_bar: float
    per_tuple: dict  # outcome tuple -> (norm of summed effect, argmax descriptor)
    k: int
    outcome_counts: tuple[int, ...]


@dataclass(frozen=True)
class CertificateVerdict:
    lhs: float
    threshold: float
    useful: bool
    verdict: str  # "certified_incompatible" or "inconclusive"


def _checked(measurements, theory: Theory):
    ms = list(measurements)
    if not ms:
        raise InputError("need at least one measurement")
    for m in ms:
        require_valid_measurement(m, theory)
    return ms


def rat_success(measurements, theory: Theory) -> RatReport:
    """Optimal average success probability of the random access test."""
    ms = _checked(measurements, theory)
    counts = tuple(m.num_outcomes for m in ms)
    k = len(ms)
    per_tuple = {}
    total = 0.0
    for combo in product(*(range(c) for c in counts)):
        summed = sum(ms[i].effects[x] for i, x in enumerate(combo))
        norm, arg = norm_with_argmax(summed, theory)
        labels = tuple(ms[i].outcomes[x] for i, x in enumerate(combo))
        per_tuple[labels] = (norm, arg)
        total += norm
    p_bar = total / (k * prod(counts))
    return RatReport(p_bar, per_tuple, k, counts)


def rat_success_given_states(measurements, encoding) -> float:
    """Average success with a fixed encoding of outcome tuples into states.

    encoding maps each outcome-label tuple to a state vector; always a lower
    bound on rat_success.
    """
    ms = list(measurements)
    if not ms:
        raise InputError("need at least one measurement")
    counts = tuple(m.num_outcomes for m in ms)
    k = len(ms)
    total = 0.0
    for combo in product(*(range(c) for c in counts)):
        labels = tuple(ms[i].outcomes[x] for i, x in enumerate(combo))
        if labels not in encoding:
            raise InputError(f"encoding is missing outcome tuple {labels}")
        state = np.asarray(encoding[labels], dtype=float)
        summed = sum(ms[i].effects[x] for i, x in enumerate(combo))
        total += float(summed @ state)
    return total / (k * prod(counts))


def connection_check(measurements, theory: Theory) -> tuple[float, float, float]:
    """(p_bar, decoding power of the harmonic joint, identity residual).

    The residual |p_bar - power / h| with h the harmonic mean of the outcome
    counts is zero up to rounding; it is returned for auditability.
    """
    ms = _checked(measurements, theory)
    if len(ms) < 2:
        raise InputError("need at least two measurements")
    counts = [m.num_outcomes for m in ms]
    h = len(counts) / sum(1.0 / c for c in counts)
    p_bar = rat_success(ms, theory).p_bar
    power = decoding_power(harmonic_joint(ms), theory)
    return p_bar, power, abs(p_bar - power / h)


def compatible_bound(m1_outcomes: int, m2_outcomes: int, storability: float) -> float:
    """Upper bound on the pair RAT success of any compatible pair."""
    if m1_outcomes < 2 or m2_outcomes < 2:
        raise InputError("outcome counts must be at least 2")
    if storability < 1.0 - EPS:
        raise InputError("information storability is at least 1")
    return 0.5 * (1.0 + storability / (m1_outcomes * m2_outcomes))


def certify_incompatibility(m1: Measurement, m2: Measurement, theory: Theory) -> CertificateVerdict:
    """Decoding-power certificate of incompatibility for a pair.

    Certifies when the harmonic joint's decoding power exceeds
    (storability + m1 m2) / (m1 + m2); the certificate can only ever fire
    when storability > m1 m2 / (m1 + m2 - 1) (the "useful" flag).
    """
    require_valid_measurement(m1, theory)
    require_valid_measurement(m2, theory)
    c1, c2 = m1.num_outcomes, m2.num_outcomes
    lhs = decoding_power(harmonic_joint([m1, m2]), theory)
    storability = information_storability(theory).value
    threshold = (storability + c1 * c2) / (c1 + c2)
    useful = storability > c1 * c2 / (c1 + c2 - 1)
    certified = useful and lhs > threshold + EPS
    return CertificateVerdict(
        lhs=lhs,
        threshold=threshold,
        useful=useful,
        verdict="certified_incompatible" if certified else "inconclusive",
    )


def classical_rac_value(n: int, d: int) -> tuple[float, float | None]:
    """Best classical random access code value for n digits of size d.

    Returns (value of the best classical strategy, known optimum).  The
    optimum is known for n = 2, where the classical strategy is optimal;
    for n >= 3 it is open and None is returned.
    """
    if n < 1 or d < 2:
        raise InputError("need n >= 1 digits of alphabet size d >= 2")
    value = (d + n - 1) / (n * d)
    optimal = 0.5 * (1.0 + 1.0 / d) if n == 2 else None
    return value, optimal
