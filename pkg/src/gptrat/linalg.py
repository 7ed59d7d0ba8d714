"""Dense simplex LP solver and polytope facet enumeration.

Everything downstream works with small, well-scaled problems (tens of
variables, coefficients of order one), so a two-phase tableau simplex with
Bland's anti-cycling rule is both sufficient and easy to audit.  All arrays
are float64 numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import InputError

# Global tolerance for feasibility and equality decisions.
EPS = 1e-9

_PIVOT_TOL = 1e-10
_MAX_PIVOTS = 50_000


@dataclass(frozen=True)
class LpProblem:
    """maximize objective . x  subject to  eq_matrix @ x = eq_rhs, x[nonneg] >= 0.

    Variables with nonneg False are free.  By default every variable is
    sign-constrained.
    """

    objective: np.ndarray
    eq_matrix: np.ndarray
    eq_rhs: np.ndarray
    nonneg: np.ndarray | None = None

    def __post_init__(self) -> None:
        c = np.asarray(self.objective, dtype=float)
        A = np.asarray(self.eq_matrix, dtype=float)
        b = np.asarray(self.eq_rhs, dtype=float)
        if A.ndim != 2:
            raise InputError("eq_matrix must be two-dimensional")
        m, n = A.shape
        if c.shape != (n,):
            raise InputError(f"objective has length {c.shape}, expected ({n},)")
        if b.shape != (m,):
            raise InputError(f"eq_rhs has length {b.shape}, expected ({m},)")
        if not (np.isfinite(c).all() and np.isfinite(A).all() and np.isfinite(b).all()):
            raise InputError("LP data must be finite")
        nn = self.nonneg
        if nn is not None:
            nn = np.asarray(nn, dtype=bool)
            if nn.shape != (n,):
                raise InputError(f"nonneg mask has shape {nn.shape}, expected ({n},)")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "eq_matrix", A)
        object.__setattr__(self, "eq_rhs", b)
        object.__setattr__(self, "nonneg", nn)


@dataclass(frozen=True)
class LpResult:
    """Outcome of solve_lp.

    status is one of "optimal", "infeasible", "unbounded".  For an optimal
    result, value == objective . solution and duals holds one multiplier per
    equality row (zero for rows detected as redundant).
    """

    status: str
    value: float
    solution: np.ndarray | None
    duals: np.ndarray | None


def _pivot(T: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row])
    # kill round-off residue in the pivot column
    T[:, col] = 0.0
    T[row, col] = 1.0
    basis[row] = col


def _set_objective_row(T: np.ndarray, basis: np.ndarray, cost: np.ndarray) -> None:
    m = T.shape[0] - 1
    c_basic = cost[basis]
    T[-1, :-1] = cost - c_basic @ T[:m, :-1]
    T[-1, -1] = -(c_basic @ T[:m, -1])


def _bland(T: np.ndarray, basis: np.ndarray, allowed: np.ndarray) -> str:
    m = T.shape[0] - 1
    for _ in range(_MAX_PIVOTS):
        reduced = T[-1, :-1]
        candidates = np.nonzero(allowed & (reduced > EPS))[0]
        if candidates.size == 0:
            return "optimal"
        col = candidates[0]
        column = T[:m, col]
        rows = np.nonzero(column > _PIVOT_TOL)[0]
        if rows.size == 0:
            return "unbounded"
        ratios = T[rows, -1] / column[rows]
        best = ratios.min()
        ties = rows[ratios <= best + 1e-12]
        row = ties[np.argmin(basis[ties])]
        _pivot(T, basis, row, col)
    raise RuntimeError("simplex failed to terminate")


def solve_lp(problem: LpProblem) -> LpResult:
    """Solve an equality-form LP by the two-phase tableau simplex method.

    Bland's rule (smallest eligible index enters, smallest basic index breaks
    ratio ties) guarantees termination.  Redundant equality rows are detected
    in phase one and dropped, so degenerate constraint systems are fine.
    """
    c0 = problem.objective
    A0 = problem.eq_matrix
    b0 = problem.eq_rhs
    m, n = A0.shape
    nonneg = problem.nonneg if problem.nonneg is not None else np.ones(n, dtype=bool)

    # split free variables x = x+ - x-
    free_idx = np.nonzero(~nonneg)[0]
    if free_idx.size:
        A_ext = np.hstack([A0, -A0[:, free_idx]])
        c_ext = np.concatenate([c0, -c0[free_idx]])
    else:
        A_ext = A0
        c_ext = c0
    n_ext = A_ext.shape[1]

    # orient rows so the right-hand side is nonnegative
    row_sign = np.where(b0 < 0, -1.0, 1.0)
    width = n_ext + m + 1
    T = np.zeros((m + 1, width))
    T[:m, :n_ext] = A_ext * row_sign[:, None]
    T[:m, n_ext : n_ext + m] = np.eye(m)
    T[:m, -1] = b0 * row_sign
    basis = np.arange(n_ext, n_ext + m)
    allowed = np.ones(width - 1, dtype=bool)
    allowed[n_ext:] = False  # artificials never re-enter

    # phase one: maximize minus the sum of artificials
    cost1 = np.zeros(width - 1)
    cost1[n_ext:] = -1.0
    _set_objective_row(T, basis, cost1)
    _bland(T, basis, allowed)
    if -T[-1, -1] < -1e-8:
        return LpResult("infeasible", float("nan"), None, None)

    # drive leftover artificials out of the basis; a row whose artificial
    # cannot be replaced is redundant and gets dropped
    orig_row = list(range(m))
    drop: list[int] = []
    for i in range(T.shape[0] - 1):
        if basis[i] >= n_ext:
            pivot_cols = np.nonzero(np.abs(T[i, :n_ext]) > 1e-8)[0]
            if pivot_cols.size:
                _pivot(T, basis, i, pivot_cols[0])
            else:
                drop.append(i)
    if drop:
        keep = [i for i in range(T.shape[0] - 1) if i not in set(drop)]
        orig_row = [orig_row[i] for i in keep]
        T = T[keep + [T.shape[0] - 1]]
        basis = basis[keep]

    # phase two with the real objective
    cost2 = np.zeros(width - 1)
    cost2[:n_ext] = c_ext
    _set_objective_row(T, basis, cost2)
    status = _bland(T, basis, allowed)
    if status == "unbounded":
        return LpResult("unbounded", float("nan"), None, None)

    m_live = T.shape[0] - 1
    x_ext = np.zeros(n_ext)
    for i in range(m_live):
        if basis[i] < n_ext:
            x_ext[basis[i]] = T[i, -1]
    x = x_ext[:n].copy()
    if free_idx.size:
        x[free_idx] -= x_ext[n:]

    # reduced cost under artificial column i is -y_i
    duals = np.zeros(m)
    for i, orig in enumerate(orig_row):
        duals[orig] = -T[-1, n_ext + orig] * row_sign[orig]

    value = float(c0 @ x)
    return LpResult("optimal", value, x, duals)


@dataclass(frozen=True)
class Facet:
    """A facet of a polytope: normal . v <= offset for every vertex, with
    equality exactly on incident_vertices."""

    normal: np.ndarray
    offset: float
    incident_vertices: tuple[int, ...]


def enumerate_facets(vertices: np.ndarray, tol: float = EPS) -> list[Facet]:
    """Enumerate the facets of conv(vertices) by exhaustive hyperplane search.

    Works inside the affine hull of the input, so lower-dimensional polytopes
    embedded in a larger ambient space are handled.  Intended for small vertex
    counts (tens); every affinely independent subset of size equal to the
    affine dimension is tested, and facets are deduplicated by incident set,
    which copes with non-simplicial facets.
    """
    V = np.asarray(vertices, dtype=float)
    if V.ndim != 2 or V.shape[0] < 2:
        raise InputError("need at least two vertices in a 2-D array")
    if not np.isfinite(V).all():
        raise InputError("vertices must be finite")
    N = V.shape[0]

    centroid = V.mean(axis=0)
    M = V - centroid
    _, svals, Vt = np.linalg.svd(M, full_matrices=False)
    scale = max(1.0, float(svals[0]) if svals.size else 0.0)
    k = int(np.sum(svals > tol * scale))
    if k == 0:
        raise InputError("degenerate vertex set: all points coincide")
    B = Vt[:k].T  # ambient basis of the direction space, shape (d, k)
    L = M @ B  # local coordinates, shape (N, k)

    found: dict[tuple[int, ...], tuple[np.ndarray, float]] = {}
    for subset in combinations(range(N), k):
        P = L[list(subset)]
        if k == 1:
            w = np.array([1.0])
            beta = float(P[0, 0])
        else:
            D = P[1:] - P[0]
            _, s2, vt2 = np.linalg.svd(D)
            if s2[-1] <= tol * max(1.0, s2[0]):
                continue  # affinely dependent subset
            w = vt2[-1]
            beta = float(P[0] @ w)
        vals = L @ w - beta
        if np.all(vals <= tol):
            pass
        elif np.all(vals >= -tol):
            w, beta, vals = -w, -beta, -vals
        else:
            continue  # not a supporting hyperplane
        incident = tuple(np.nonzero(np.abs(vals) <= tol)[0])
        if len(incident) == N:
            continue  # not a proper face
        if incident not in found:
            found[incident] = (w, beta)

    facets = []
    for incident in sorted(found):
        w, beta = found[incident]
        normal = B @ w
        offset = float(beta + normal @ centroid)
        facets.append(Facet(normal=normal, offset=offset, incident_vertices=incident))
    return facets
