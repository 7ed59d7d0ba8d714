"""Approximate and exact joint measurements, compatibility, and its degree.

The harmonic approximation to a joint measurement of M^(1), ..., M^(k) with
m_1, ..., m_k outcomes is

    H_x = (M^(1)_{x_1} + ... + M^(k)_{x_k}) / kappa,
    kappa = (prod_i m_i) * (sum_i 1 / m_i),

always a valid measurement; its i-th marginal is the noisy version
lam_i M^(i) + (1 - lam_i) (u / m_i) with lam_i = h / (k m_i), h the harmonic
mean of the outcome counts.

Exact compatibility of finitely many measurements on a polytope theory is a
feasibility LP over the dual-ray cone; the degree of incompatibility is found
by bisecting the largest noise parameter lam for which the uniformly smeared
versions lam M + (1 - lam) p(x) u stay compatible (the trivial parts p, q are
free LP variables, so the degree is with respect to the worst trivial noise).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod

import numpy as np

from .core import (
    Measurement,
    Polytope,
    Theory,
    require_valid_measurement,
)
from .errors import InputError, UnsupportedBackendError
from .linalg import EPS, LpProblem, solve_lp


@dataclass(frozen=True)
class JointWitness:
    joint: Measurement
    marginal_residuals: tuple[float, ...]


@dataclass(frozen=True)
class DegreeReport:
    degree: float
    optimal_trivials: tuple[np.ndarray, np.ndarray]
    bisection_iters: int


def harmonic_joint(measurements) -> Measurement:
    """Harmonic approximate joint measurement on the product outcome set."""
    ms = list(measurements)
    if len(ms) < 2:
        raise InputError("need at least two measurements")
    counts = [m.num_outcomes for m in ms]
    dim = ms[0].effects.shape[1]
    if any(m.effects.shape[1] != dim for m in ms):
        raise InputError("measurements live in different ambient spaces")
    kappa = prod(counts) * sum(1.0 / c for c in counts)
    outcomes = []
    effects = np.empty((prod(counts), dim))
    for row, combo in enumerate(product(*(range(c) for c in counts))):
        outcomes.append(tuple(ms[i].outcomes[x] for i, x in enumerate(combo)))
        effects[row] = sum(ms[i].effects[x] for i, x in enumerate(combo)) / kappa
    return Measurement(tuple(outcomes), effects)


def harmonic_smearing_weights(outcome_counts) -> list[float]:
    """Noise weights lam_i = h / (k m_i) of the harmonic joint's marginals."""
    counts = list(outcome_counts)
    k = len(counts)
    h = k / sum(1.0 / c for c in counts)
    return [h / (k * c) for c in counts]


def _product_tuples(counts):
    return list(product(*(range(c) for c in counts)))


def check_compatible(measurements, theory: Theory, tol: float = EPS) -> JointWitness | None:
    """Exact joint measurement via LP, or None when provably incompatible.

    Variables are cone coefficients of the joint effects over the dual rays;
    constraints force every marginal to reproduce its measurement.  The joint
    then sums to the unit automatically because each marginal does.
    """
    if not isinstance(theory.backend, Polytope):
        raise UnsupportedBackendError("compatibility LP needs a polytope state space")
    ms = list(measurements)
    if len(ms) < 2:
        raise InputError("need at least two measurements")
    for m in ms:
        require_valid_measurement(m, theory, tol)
    counts = [m.num_outcomes for m in ms]
    rays = theory.backend.dual_rays
    R = rays.shape[0]
    d = theory.ambient_dim
    tuples = _product_tuples(counts)
    ntup = len(tuples)

    rows = d * sum(counts)
    A = np.zeros((rows, ntup * R))
    b = np.zeros(rows)
    base = 0
    for axis, m in enumerate(ms):
        for outcome in range(counts[axis]):
            block = slice(base, base + d)
            for t_idx, combo in enumerate(tuples):
                if combo[axis] == outcome:
                    A[block, t_idx * R : (t_idx + 1) * R] = rays.T
            b[base : base + d] = m.effects[outcome]
            base += d
    res = solve_lp(LpProblem(np.zeros(ntup * R), A, b))
    if res.status != "optimal":
        return None

    beta = res.solution.reshape(ntup, R)
    joint_effects = beta @ rays
    outcomes = tuple(
        tuple(ms[i].outcomes[x] for i, x in enumerate(combo)) for combo in tuples
    )
    joint = Measurement(outcomes, joint_effects)
    residuals = []
    for axis, m in enumerate(ms):
        worst = 0.0
        for outcome in range(counts[axis]):
            marg = sum(
                joint_effects[t_idx]
                for t_idx, combo in enumerate(tuples)
                if combo[axis] == outcome
            )
            worst = max(worst, float(np.max(np.abs(marg - m.effects[outcome]))))
        residuals.append(worst)
    return JointWitness(joint, tuple(residuals))


def _degree_feasible(m1, m2, theory, lam):
    """Joint for (lam M + (1-lam) p u, lam N + (1-lam) q u) with free p, q."""
    rays = theory.backend.dual_rays
    R = rays.shape[0]
    d = theory.ambient_dim
    u = theory.unit
    c1, c2 = m1.num_outcomes, m2.num_outcomes
    tuples = _product_tuples([c1, c2])
    nbeta = len(tuples) * R
    nvar = nbeta + c1 + c2
    rows = d * (c1 + c2) + 2
    A = np.zeros((rows, nvar))
    b = np.zeros(rows)
    base = 0
    for x in range(c1):
        block = slice(base, base + d)
        for t_idx, (i, _) in enumerate(tuples):
            if i == x:
                A[block, t_idx * R : (t_idx + 1) * R] = rays.T
        A[block, nbeta + x] = -(1.0 - lam) * u
        b[base : base + d] = lam * m1.effects[x]
        base += d
    for y in range(c2):
        for t_idx, (_, j) in enumerate(tuples):
            if j == y:
                A[base : base + d, t_idx * R : (t_idx + 1) * R] = rays.T
        A[base : base + d, nbeta + c1 + y] = -(1.0 - lam) * u
        b[base : base + d] = lam * m2.effects[y]
        base += d
    A[base, nbeta : nbeta + c1] = 1.0
    b[base] = 1.0
    A[base + 1, nbeta + c1 :] = 1.0
    b[base + 1] = 1.0
    res = solve_lp(LpProblem(np.zeros(nvar), A, b))
    if res.status != "optimal":
        return None
    p = res.solution[nbeta : nbeta + c1]
    q = res.solution[nbeta + c1 :]
    return p, q


def incompatibility_degree(m1: Measurement, m2: Measurement, theory: Theory) -> DegreeReport:
    """Largest lam in [1/2, 1] keeping the smeared pair compatible.

    lam = 1 is tested first so compatible pairs report exactly 1.0; otherwise
    the feasible set is bisected to a bracket below 1e-6 and the lower end is
    returned, so the result never overstates the degree.
    """
    if not isinstance(theory.backend, Polytope):
        raise UnsupportedBackendError("incompatibility degree needs a polytope state space")
    require_valid_measurement(m1, theory)
    require_valid_measurement(m2, theory)
    exact = _degree_feasible(m1, m2, theory, 1.0)
    if exact is not None:
        return DegreeReport(1.0, exact, 1)
    lo, hi = 0.5, 1.0
    trivials = _degree_feasible(m1, m2, theory, lo)
    iters = 2
    if trivials is None:
        raise RuntimeError("uniform-noise mixture at lam = 1/2 must be compatible")
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        sol = _degree_feasible(m1, m2, theory, mid)
        iters += 1
        if sol is None:
            hi = mid
        else:
            lo = mid
            trivials = sol
    return DegreeReport(lo, trivials, iters)


def maximally_incompatible_dichotomic(m1: Measurement, m2: Measurement, theory: Theory) -> bool:
    """Does the pair reach the universal degree floor of one half?

    Happens exactly when four states t1..t4 exist with M(+) certain on t1, t2
    and impossible on t3, t4, N(+) certain on t1, t4 and impossible on t2, t3,
    and t1 + t3 = t2 + t4 (an affine parallelogram).  Each t_i is searched as
    a convex combination of the vertices lying on the corresponding faces.
    """
    if not isinstance(theory.backend, Polytope):
        raise UnsupportedBackendError("needs a polytope state space")
    if m1.num_outcomes != 2 or m2.num_outcomes != 2:
        raise InputError("both measurements must be dichotomic")
    require_valid_measurement(m1, theory)
    require_valid_measurement(m2, theory)
    V = theory.backend.extreme_states
    d = theory.ambient_dim
    e_vals = V @ m1.effects[0]
    f_vals = V @ m2.effects[0]
    e_on, e_off = np.abs(e_vals - 1.0) <= EPS, np.abs(e_vals) <= EPS
    f_on, f_off = np.abs(f_vals - 1.0) <= EPS, np.abs(f_vals) <= EPS
    faces = [
        np.nonzero(e_on & f_on)[0],  # t1
        np.nonzero(e_off & f_on)[0],  # t2
        np.nonzero(e_off & f_off)[0],  # t3
        np.nonzero(e_on & f_off)[0],  # t4
    ]
    if any(idx.size == 0 for idx in faces):
        return False
    sizes = [idx.size for idx in faces]
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    nvar = int(offsets[-1])
    # rows: parallelogram t1 - t2 + t3 - t4 = 0, plus one normalization per state
    A = np.zeros((d + 4, nvar))
    b = np.zeros(d + 4)
    signs = [1.0, -1.0, 1.0, -1.0]
    for i, idx in enumerate(faces):
        cols = slice(offsets[i], offsets[i + 1])
        A[:d, cols] = signs[i] * V[idx].T
        A[d + i, cols] = 1.0
        b[d + i] = 1.0
    res = solve_lp(LpProblem(np.zeros(nvar), A, b))
    return res.status == "optimal"
