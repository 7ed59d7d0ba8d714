"""State spaces, effects, measurements, and the order-unit norm.

A theory couples an ambient vector space with a unit functional u and a
backend describing the state space.  States and effects are plain float64
vectors; an effect f is evaluated on a state s by the dot product f . s, and
validity means 0 <= f(s) <= 1 over the whole state space.

Three backends are supported:

* Polytope: finitely many extreme states plus the extreme rays of the dual
  cone (each normalized so its maximum over the state space is 1), optionally
  a finite list of nontrivial extreme effects.
* Rebit: the disc state space {(cos t, sin t, 1)}, with closed-form norms.
* Qubit2: two-level quantum systems in the Pauli basis (x, y, z, unit), with
  closed-form norms.

Validity checks are explicit operations rather than construction-time gates,
so intentionally invalid objects can be built for negative tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Union

import numpy as np

from .errors import InputError, UnsupportedBackendError
from .linalg import EPS, LpProblem, solve_lp, enumerate_facets

Vec = np.ndarray
EffectVec = np.ndarray
StochasticMatrix = np.ndarray


@dataclass(frozen=True)
class Polytope:
    extreme_states: np.ndarray  # (N, d), one state per row
    dual_rays: np.ndarray  # (R, d), extreme rays of the dual cone, max over states = 1
    extreme_effects: np.ndarray | None = None  # nontrivial extreme effects when known

    def __post_init__(self) -> None:
        object.__setattr__(self, "extreme_states", np.asarray(self.extreme_states, dtype=float))
        object.__setattr__(self, "dual_rays", np.asarray(self.dual_rays, dtype=float))
        if self.extreme_effects is not None:
            object.__setattr__(self, "extreme_effects", np.asarray(self.extreme_effects, dtype=float))


@dataclass(frozen=True)
class Rebit:
    """Disc state space; angles parametrize pure states (cos t, sin t, 1)."""

    grid_resolution: int = 10_000


@dataclass(frozen=True)
class Qubit2:
    """Qubit in Pauli coordinates (x, y, z, a) with the unit component last."""


Backend = Union[Polytope, Rebit, Qubit2]


@dataclass(frozen=True)
class Theory:
    name: str
    ambient_dim: int
    unit: np.ndarray
    backend: Backend

    def __post_init__(self) -> None:
        object.__setattr__(self, "unit", np.asarray(self.unit, dtype=float))
        if self.unit.shape != (self.ambient_dim,):
            raise InputError("unit functional has the wrong dimension")

    @property
    def is_polytope(self) -> bool:
        return isinstance(self.backend, Polytope)

    @property
    def vertices(self) -> np.ndarray:
        if not isinstance(self.backend, Polytope):
            raise UnsupportedBackendError(f"{self.name}: no vertex list for this backend")
        return self.backend.extreme_states


@dataclass(frozen=True)
class Measurement:
    """Finite-outcome measurement: one effect row per outcome label."""

    outcomes: tuple
    effects: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "outcomes", tuple(self.outcomes))
        object.__setattr__(self, "effects", np.asarray(self.effects, dtype=float))
        if self.effects.ndim != 2:
            raise InputError("effects must be a 2-D array, one row per outcome")
        if len(self.outcomes) != self.effects.shape[0]:
            raise InputError("number of outcome labels does not match number of effects")

    @property
    def num_outcomes(self) -> int:
        return len(self.outcomes)


def validate_theory(theory: Theory, tol: float = EPS) -> None:
    """Raise InputError unless the theory satisfies its structural invariants."""
    if isinstance(theory.backend, Polytope):
        V = theory.backend.extreme_states
        if V.ndim != 2 or V.shape[1] != theory.ambient_dim:
            raise InputError("extreme states have the wrong shape")
        unit_vals = V @ theory.unit
        if np.max(np.abs(unit_vals - 1.0)) > 1e-12:
            raise InputError("unit must evaluate to 1 on every extreme state")
        R = theory.backend.dual_rays
        if R.ndim != 2 or R.shape[1] != theory.ambient_dim:
            raise InputError("dual rays have the wrong shape")
        vals = V @ R.T  # (N, R)
        if vals.min() < -tol:
            raise InputError("a dual ray is negative on an extreme state")
        if np.max(np.abs(vals.max(axis=0) - 1.0)) > tol:
            raise InputError("dual rays must be normalized to maximum value 1")
    elif isinstance(theory.backend, Rebit):
        if theory.ambient_dim != 3:
            raise InputError("rebit lives in a 3-dimensional ambient space")
    elif isinstance(theory.backend, Qubit2):
        if theory.ambient_dim != 4:
            raise InputError("qubit lives in a 4-dimensional ambient space")
    else:
        raise UnsupportedBackendError(f"unknown backend {type(theory.backend).__name__}")


def evaluate(effect: EffectVec, state: Vec, theory: Theory, tol: float = EPS) -> float:
    """Outcome probability f(s).  The state must be normalized: unit(s) = 1."""
    f = np.asarray(effect, dtype=float)
    s = np.asarray(state, dtype=float)
    if f.shape != (theory.ambient_dim,) or s.shape != (theory.ambient_dim,):
        raise InputError("effect/state dimension mismatch")
    if abs(float(theory.unit @ s) - 1.0) > tol:
        raise InputError("state is not normalized: unit(s) != 1")
    return float(f @ s)


def order_unit_norm(f: EffectVec, theory: Theory) -> float:
    """sup over states of |f(s)|."""
    return norm_with_argmax(f, theory)[0]


def norm_with_argmax(f: EffectVec, theory: Theory):
    """Order-unit norm together with a maximizing state descriptor.

    The descriptor is a vertex index (Polytope), an angle in [0, 2pi)
    (Rebit), or a Bloch vector (Qubit2).  Polytope ties resolve to the lowest
    vertex index.
    """
    f = np.asarray(f, dtype=float)
    if f.shape != (theory.ambient_dim,):
        raise InputError("effect dimension mismatch")
    backend = theory.backend
    if isinstance(backend, Polytope):
        vals = backend.extreme_states @ f
        idx = int(np.argmax(np.abs(vals)))
        return float(abs(vals[idx])), idx
    if isinstance(backend, Rebit):
        a, b, c = f
        rho = float(np.hypot(a, b))
        hi = c + rho  # value at angle atan2(b, a)
        lo = c - rho
        theta0 = float(np.arctan2(b, a)) % (2 * np.pi)
        if abs(hi) >= abs(lo):
            return abs(hi), theta0
        return abs(lo), (theta0 + np.pi) % (2 * np.pi)
    if isinstance(backend, Qubit2):
        w = f[:3]
        a = float(f[3])
        rho = float(np.linalg.norm(w))
        if rho == 0.0:
            return abs(a), np.array([0.0, 0.0, 0.0])
        bloch = w / rho if a >= 0 else -w / rho
        return max(abs(a + rho), abs(a - rho)), bloch
    raise UnsupportedBackendError(f"no norm rule for backend {type(backend).__name__}")


def is_valid_effect(f: EffectVec, theory: Theory, tol: float = EPS) -> bool:
    """True when 0 <= f(s) <= 1 over the whole state space (within tol)."""
    f = np.asarray(f, dtype=float)
    if f.shape != (theory.ambient_dim,):
        raise InputError("effect dimension mismatch")
    backend = theory.backend
    if isinstance(backend, Polytope):
        vals = backend.extreme_states @ f
        return bool(vals.min() >= -tol and vals.max() <= 1.0 + tol)
    if isinstance(backend, Rebit):
        a, b, c = f
        rho = float(np.hypot(a, b))
        return c - rho >= -tol and c + rho <= 1.0 + tol
    if isinstance(backend, Qubit2):
        rho = float(np.linalg.norm(f[:3]))
        a = float(f[3])
        return a - rho >= -tol and a + rho <= 1.0 + tol
    raise UnsupportedBackendError(f"no effect test for backend {type(backend).__name__}")


def is_valid_measurement(m: Measurement, theory: Theory, tol: float = EPS) -> bool:
    """All effects valid and summing to the unit within tol per coordinate."""
    if m.effects.shape[1] != theory.ambient_dim:
        raise InputError("measurement dimension mismatch")
    total = m.effects.sum(axis=0)
    if np.max(np.abs(total - theory.unit)) > tol:
        return False
    return all(is_valid_effect(f, theory, tol) for f in m.effects)


def require_valid_measurement(m: Measurement, theory: Theory, tol: float = EPS) -> None:
    if not is_valid_measurement(m, theory, tol):
        raise InputError("not a valid measurement on this theory")


def trivial_measurement(theory: Theory, probs, outcomes=None) -> Measurement:
    """Measurement p_x * u that ignores the state entirely."""
    p = np.asarray(probs, dtype=float)
    if p.ndim != 1 or p.min() < -1e-12 or abs(p.sum() - 1.0) > 1e-12:
        raise InputError("probs must be a probability distribution")
    if outcomes is None:
        outcomes = tuple(range(len(p)))
    return Measurement(tuple(outcomes), np.outer(p, theory.unit))


def dichotomic_measurement(theory: Theory, effect: EffectVec, outcomes=("+", "-")) -> Measurement:
    """Two-outcome measurement (f, u - f)."""
    f = np.asarray(effect, dtype=float)
    return Measurement(tuple(outcomes), np.vstack([f, theory.unit - f]))


def _check_stochastic(nu: np.ndarray, n_in: int) -> np.ndarray:
    nu = np.asarray(nu, dtype=float)
    if nu.ndim != 2 or nu.shape[0] != n_in:
        raise InputError("post-processing matrix must have one row per input outcome")
    if nu.min() < -1e-12:
        raise InputError("post-processing matrix has a negative entry")
    if np.max(np.abs(nu.sum(axis=1) - 1.0)) > 1e-12:
        raise InputError("post-processing matrix rows must sum to 1")
    return nu


def post_process(m: Measurement, nu: StochasticMatrix, outcomes=None) -> Measurement:
    """Classical relabeling: the y-th output effect is sum_x nu[x, y] * M_x."""
    nu = _check_stochastic(nu, m.num_outcomes)
    effects = nu.T @ m.effects
    if outcomes is None:
        outcomes = tuple(range(nu.shape[1]))
    if len(tuple(outcomes)) != nu.shape[1]:
        raise InputError("outcome labels do not match the post-processing width")
    return Measurement(tuple(outcomes), effects)


def mix(measurements, weights) -> Measurement:
    """Convex mixture of measurements sharing one outcome set."""
    ms = list(measurements)
    w = np.asarray(weights, dtype=float)
    if len(ms) == 0 or w.shape != (len(ms),):
        raise InputError("need one weight per measurement")
    if w.min() < -1e-12 or abs(w.sum() - 1.0) > 1e-12:
        raise InputError("weights must form a probability distribution")
    outcomes = ms[0].outcomes
    for m in ms[1:]:
        if m.outcomes != outcomes:
            raise InputError("mixture requires identical outcome sets")
    effects = sum(wi * m.effects for wi, m in zip(w, ms))
    return Measurement(outcomes, effects)


def distinguishable(states, theory: Theory, tol: float = EPS) -> bool:
    """Can a single measurement identify each of the given states perfectly?

    Feasibility LP over the dual-ray cone: effects e_i = sum_r beta_ir ray_r
    with sum_i e_i = u and e_i(s_j) = delta_ij.
    """
    if not isinstance(theory.backend, Polytope):
        raise UnsupportedBackendError("distinguishability test needs a polytope state space")
    S = np.asarray(states, dtype=float)
    if S.ndim != 2 or S.shape[1] != theory.ambient_dim:
        raise InputError("states must be rows of ambient dimension")
    n = S.shape[0]
    if n < 2:
        raise InputError("need at least two states")
    rays = theory.backend.dual_rays
    R = rays.shape[0]
    d = theory.ambient_dim
    nvar = n * R
    rows = d + n * n
    A = np.zeros((rows, nvar))
    b = np.zeros(rows)
    # sum of all effects equals the unit
    for i in range(n):
        A[:d, i * R : (i + 1) * R] = rays.T
    b[:d] = theory.unit
    # delta pattern on the target states
    vals = rays @ S.T  # (R, n): ray_r evaluated on s_j
    row = d
    for i in range(n):
        for j in range(n):
            A[row, i * R : (i + 1) * R] = vals[:, j]
            b[row] = 1.0 if i == j else 0.0
            row += 1
    res = solve_lp(LpProblem(np.zeros(nvar), A, b))
    return res.status == "optimal"


def operational_dimension(theory: Theory) -> int:
    """Largest number of jointly perfectly distinguishable extreme states."""
    if isinstance(theory.backend, (Rebit, Qubit2)):
        # antipodal pure states are distinguishable; no third state joins them
        return 2
    if not isinstance(theory.backend, Polytope):
        raise UnsupportedBackendError("operational dimension needs a polytope state space")
    V = theory.backend.extreme_states
    n = V.shape[0]
    if n > 16:
        raise InputError("vertex count too large for exhaustive subset search")
    best = 1
    k = 2
    while k <= n:
        hit = False
        for subset in combinations(range(n), k):
            if distinguishable(V[list(subset)], theory):
                hit = True
                break
        if not hit:
            break
        best = k
        k += 1
    return best


def dual_rays_from_vertices(vertices: np.ndarray, unit: np.ndarray, tol: float = EPS) -> np.ndarray:
    """Extreme rays of the dual cone of a polytope state space.

    Each facet of the state polytope yields the functional
    r(x) = offset * u(x) - normal . x, nonnegative on the polytope and zero
    exactly on the facet; rays are normalized to maximum value 1.
    """
    V = np.asarray(vertices, dtype=float)
    u = np.asarray(unit, dtype=float)
    if np.max(np.abs(V @ u - 1.0)) > tol:
        raise InputError("unit must evaluate to 1 on every vertex")
    rays = []
    for facet in enumerate_facets(V, tol):
        r = facet.offset * u - facet.normal
        top = float((V @ r).max())
        if top <= tol:
            continue  # functional vanishes on the whole polytope
        rays.append(r / top)
    return np.array(rays)
