"""Shared random-object generators for the test suite.

All generators take an explicit numpy Generator so every test is seeded and
reproducible.
"""

from __future__ import annotations

import numpy as np

from gptrat import (
    Measurement,
    Theory,
    dichotomic_measurement,
    mix,
    post_process,
    trivial_measurement,
)


def random_stochastic(rng: np.random.Generator, n_in: int, n_out: int) -> np.ndarray:
    return rng.dirichlet(np.ones(n_out), size=n_in)


def uniform_ray_measurement(theory: Theory) -> Measurement:
    """Measurement proportional to the full set of dual rays.

    Valid on theories whose rays sum to a multiple of the unit (all stock
    polytopes); serves as a maximally informative common parent.
    """
    rays = theory.backend.dual_rays
    total = rays.sum(axis=0)
    s0 = theory.vertices.mean(axis=0)
    scale = 1.0 / float(total @ s0)
    return Measurement(tuple(range(rays.shape[0])), scale * rays)


def random_post_processing(parent: Measurement, rng: np.random.Generator, n_out: int) -> Measurement:
    nu = random_stochastic(rng, parent.num_outcomes, n_out)
    return post_process(parent, nu)


def random_compatible_pair(theory: Theory, rng: np.random.Generator, outs=(2, 2)):
    """Two post-processings of one parent, compatible by construction."""
    parent = uniform_ray_measurement(theory)
    return (
        random_post_processing(parent, rng, outs[0]),
        random_post_processing(parent, rng, outs[1]),
    )


def random_extreme_dichotomic(theory: Theory, rng: np.random.Generator) -> Measurement:
    """(r, u - r) for a random dual ray r; valid on all stock polytopes."""
    rays = theory.backend.dual_rays
    k = int(rng.integers(rays.shape[0]))
    return dichotomic_measurement(theory, rays[k])


def random_noisy_dichotomic(theory: Theory, rng: np.random.Generator, lam=None) -> Measurement:
    if lam is None:
        lam = float(rng.uniform(0.5, 1.0))
    sharp = random_extreme_dichotomic(theory, rng)
    noise = trivial_measurement(theory, rng.dirichlet(np.ones(2)), ("+", "-"))
    return mix([sharp, noise], [lam, 1.0 - lam])


def random_measurement(theory: Theory, rng: np.random.Generator, n_out: int) -> Measurement:
    """Generic valid measurement: post-processing of the ray parent mixed
    with a trivial measurement."""
    base = random_post_processing(uniform_ray_measurement(theory), rng, n_out)
    noise = trivial_measurement(theory, rng.dirichlet(np.ones(n_out)), tuple(range(n_out)))
    lam = float(rng.uniform(0.0, 1.0))
    return mix([base, noise], [lam, 1.0 - lam])
