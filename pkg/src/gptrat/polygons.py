"""Closed-form polygon results for the pair random access test, with checks.

For two dichotomic measurements built from extreme effects on the regular
n-gon, the optimal average success probability has a closed form that splits
into six parity classes (r = sqrt(sec(pi/n)), R = sqrt(sec(pi/2n))):

    n = 4m,   m odd     (1/2) (1 + r^2 / sqrt(2))
    n = 4m,   m even    (1/2) (1 + 1 / sqrt(2))
    n = 4m+2, m odd     (1/4) (2 + r^2 cos(m pi / n) + sin(m pi / n))
    n = 4m+2, m even    (1/4) (2 + cos(m pi / n) + r^2 sin(m pi / n))
    n = 4m+1            (1/4) (2 + cos(m pi / n) + R^2 sin(m pi / n))
    n = 4m+3            (1/4) (2 + cos((m+1) pi / n) + R^2 sin((m+1) pi / n))

An independent brute force maximizes over all pairs of stored extreme
effects and all vertex encodings; an explicit table of optimal effect and
state labels per class is replayed by verify_table.  Compatible pairs can
reach 3/4 on even polygons and (1/2)(1 + (1 + r^2)/4) on odd ones, where
the odd-polygon value is achieved by two relabelings of one three-outcome
parent measurement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .core import (
    Measurement,
    Polytope,
    Rebit,
    Theory,
    dichotomic_measurement,
    post_process,
)
from .errors import InputError, UnsupportedBackendError
from .rat import rat_success_given_states
from .storability import information_storability
from .zoo import polygon, polygon_effect_label, polygon_order, polygon_ray, polygon_state


def parity_class(n: int) -> str:
    """One of 4m-odd, 4m-even, 4m+2-odd, 4m+2-even, 4m+1, 4m+3."""
    if n < 4:
        raise InputError("parity classes start at n = 4")
    if n % 4 == 0:
        return "4m-odd" if (n // 4) % 2 == 1 else "4m-even"
    if n % 2 == 0:
        return "4m+2-odd" if ((n - 2) // 4) % 2 == 1 else "4m+2-even"
    return "4m+1" if n % 4 == 1 else "4m+3"


def polygon_rat_closed_form(n: int) -> float:
    """Optimal pair-RAT success on the n-gon with dichotomic measurements."""
    if n < 4:
        raise InputError("closed forms start at n = 4")
    sec_n = 1.0 / math.cos(math.pi / n)
    if n % 4 == 0:
        m = n // 4
        if m % 2 == 1:
            return 0.5 * (1.0 + sec_n / math.sqrt(2.0))
        return 0.5 * (1.0 + 1.0 / math.sqrt(2.0))
    if n % 2 == 0:
        m = (n - 2) // 4
        ang = m * math.pi / n
        if m % 2 == 1:
            return 0.25 * (2.0 + sec_n * math.cos(ang) + math.sin(ang))
        return 0.25 * (2.0 + math.cos(ang) + sec_n * math.sin(ang))
    sec_2n = 1.0 / math.cos(math.pi / (2 * n))
    m = (n - 1) // 4 if n % 4 == 1 else (n - 3) // 4
    ang = (m if n % 4 == 1 else m + 1) * math.pi / n
    return 0.25 * (2.0 + math.cos(ang) + sec_2n * math.sin(ang))


def polygon_rat_upper_bound(n: int) -> float:
    """Algebraic bound the closed form never exceeds."""
    if n < 4:
        raise InputError("bounds start at n = 4")
    if n % 2 == 0:
        return 0.5 * (1.0 + 1.0 / (math.sqrt(2.0) * math.cos(math.pi / n)))
    return 0.5 * (1.0 + math.sqrt(2.0) / (1.0 + math.cos(math.pi / n)))


def polygon_compatible_max(n: int) -> float:
    """Best pair-RAT success reachable with compatible dichotomic pairs."""
    if n < 4:
        raise InputError("compatible maxima start at n = 4")
    if n % 2 == 0:
        return 0.75
    return 0.5 * (1.0 + (1.0 + 1.0 / math.cos(math.pi / n)) / 4.0)


def odd_polygon_compatible_pair(theory: Theory):
    """Compatible dichotomic pair beating 3/4 on an odd polygon.

    Returns (parent, m1, m2): a three-outcome parent C with effects
    (g_1, (r^2/2) g_{(n+1)/2}, (r^2/2) g_{(n+3)/2}) and the two dichotomic
    relabelings m1 = (C_1, C_2 + C_3), m2 = (C_1 + C_2, C_3).
    """
    n = polygon_order(theory)
    if n % 2 == 0 or n < 5:
        raise InputError("construction needs an odd polygon with n >= 5")
    r2 = 1.0 / math.cos(math.pi / n)
    effects = np.vstack(
        [
            polygon_ray(theory, 1),
            0.5 * r2 * polygon_ray(theory, (n + 1) // 2),
            0.5 * r2 * polygon_ray(theory, (n + 3) // 2),
        ]
    )
    parent = Measurement((1, 2, 3), effects)
    m1 = post_process(parent, np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 1.0]]), ("+", "-"))
    m2 = post_process(parent, np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]]), ("+", "-"))
    return parent, m1, m2


@dataclass(frozen=True)
class BruteForceResult:
    value: float
    e_label: str
    f_label: str
    states: tuple  # argmax descriptors for the tuples (+,+), (-,+), (-,-), (+,-)


def brute_force_rat_max(theory: Theory, scan_all_pairs: bool = False) -> BruteForceResult:
    """Independent maximization of the pair RAT over extreme effect pairs.

    On polytope theories the outer maximization runs over pairs of stored
    extreme effects; by default the first effect is pinned to index 0, which
    is exact whenever the symmetry group acts transitively on the extreme
    effects modulo complement (true for all stock polygons).  States report
    the per-sum argmax vertex, ties resolved to the lowest index.  On the
    rebit the angle of the second effect is scanned on the configured grid
    and refined by golden-section search.
    """
    if isinstance(theory.backend, Rebit):
        return _rebit_brute_force(theory)
    if not isinstance(theory.backend, Polytope):
        raise UnsupportedBackendError("brute force needs polytope or rebit backend")
    E = theory.backend.extreme_effects
    if E is None:
        raise InputError("theory does not carry a finite extreme effect list")
    V = theory.backend.extreme_states
    u = theory.unit
    VE = V @ E.T  # (N, K): effect values on vertices
    Vu = V @ u
    e_indices = range(E.shape[0]) if scan_all_pairs else range(1)
    best = (-1.0, 0, 0)
    for ei in e_indices:
        ve = VE[:, ei]
        sup1 = (ve[:, None] + VE).max(axis=0)
        sup2 = ((Vu - ve)[:, None] + VE).max(axis=0)
        sup3 = ((2.0 * Vu - ve)[:, None] - VE).max(axis=0)
        sup4 = ((Vu + ve)[:, None] - VE).max(axis=0)
        vals = (sup1 + sup2 + sup3 + sup4) / 8.0
        fi = int(np.argmax(vals))
        if vals[fi] > best[0]:
            best = (float(vals[fi]), ei, fi)
    value, ei, fi = best
    ve, vf = VE[:, ei], VE[:, fi]
    states = (
        int(np.argmax(ve + vf)),
        int(np.argmax(Vu - ve + vf)),
        int(np.argmax(2.0 * Vu - ve - vf)),
        int(np.argmax(Vu + ve - vf)),
    )
    try:
        e_label = polygon_effect_label(theory, ei)
        f_label = polygon_effect_label(theory, fi)
    except (InputError, UnsupportedBackendError):
        e_label, f_label = f"effect_{ei}", f"effect_{fi}"
    return BruteForceResult(value, e_label, f_label, states)


def _pair_rat_value_rebit(theta: float) -> tuple[float, tuple]:
    """Success of the pair (e_0, u - e_0), (e_theta, u - e_theta) on the disc.

    Each inner supremum of an effect sum (a, b, c) over pure states equals
    c + hypot(a, b), attained at the angle of (a, b).
    """
    e = 0.5 * np.array([1.0, 0.0, 1.0])
    f = 0.5 * np.array([math.cos(theta), math.sin(theta), 1.0])
    u = np.array([0.0, 0.0, 1.0])
    sums = (e + f, u - e + f, 2.0 * u - e - f, e + u - f)
    total = 0.0
    angles = []
    for g in sums:
        total += g[2] + math.hypot(g[0], g[1])
        angles.append(math.atan2(g[1], g[0]) % (2.0 * math.pi))
    return total / 8.0, tuple(angles)


def _rebit_brute_force(theory: Theory) -> BruteForceResult:
    res = theory.backend.grid_resolution
    thetas = np.linspace(0.0, 2.0 * np.pi, res, endpoint=False)
    vals = np.array([_pair_rat_value_rebit(t)[0] for t in thetas])
    i = int(np.argmax(vals))
    lo = thetas[i] - 2.0 * np.pi / res
    hi = thetas[i] + 2.0 * np.pi / res
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc = _pair_rat_value_rebit(c)[0]
    fd = _pair_rat_value_rebit(d)[0]
    for _ in range(80):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = _pair_rat_value_rebit(c)[0]
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = _pair_rat_value_rebit(d)[0]
    theta = 0.5 * (a + b)
    value, angles = _pair_rat_value_rebit(theta)
    return BruteForceResult(value, "e(0)", f"e({theta:.12f})", angles)


# Optimal effect and state labels for e = first extreme effect, one entry per
# admissible second effect: (f index, per-sum lists of candidate state labels).
def _table_entries(n: int):
    def fr(num, den=1):
        return Fraction(num, den)

    if n % 4 == 0:
        m = n // 4
        if m % 2 == 1:
            specs = [
                (m + 1, [[fr(m + 1, 2)], [fr(3 * m + 1, 2)], [fr(5 * m + 1, 2)], [fr(7 * m + 1, 2)]]),
            ]
        else:
            specs = [
                (m, [[fr(m, 2)], [fr(3 * m, 2)], [fr(5 * m, 2)], [fr(7 * m, 2)]]),
                (
                    m + 1,
                    [
                        [fr(m + 2, 2), fr(m, 2)],
                        [fr(3 * m + 2, 2), fr(3 * m, 2)],
                        [fr(5 * m + 2, 2), fr(5 * m, 2)],
                        [fr(7 * m + 2, 2), fr(7 * m, 2)],
                    ],
                ),
                (m + 2, [[fr(m, 2) + 1], [fr(3 * m, 2) + 1], [fr(5 * m, 2) + 1], [fr(7 * m, 2) + 1]]),
            ]
        return m, specs
    if n % 2 == 0:
        m = (n - 2) // 4
        if m % 2 == 1:
            specs = [
                (
                    m + 1,
                    [
                        [fr(m + 1, 2)],
                        [fr(3 * m + 1, 2) + 1, fr(3 * m - 1, 2) + 1],
                        [fr(5 * m + 1, 2) + 1],
                        [fr(7 * m + 1, 2) + 2, fr(7 * m - 1, 2) + 2],
                    ],
                ),
                (
                    m + 2,
                    [
                        [fr(m + 1, 2) + 1, fr(m - 1, 2) + 1],
                        [fr(3 * m + 1, 2) + 1],
                        [fr(5 * m + 1, 2) + 2, fr(5 * m - 1, 2) + 2],
                        [fr(7 * m + 1, 2) + 2],
                    ],
                ),
            ]
        else:
            specs = [
                (
                    m + 1,
                    [
                        [fr(m + 2, 2), fr(m, 2)],
                        [fr(3 * m, 2) + 1],
                        [fr(5 * m + 2, 2) + 1, fr(5 * m, 2) + 1],
                        [fr(7 * m, 2) + 2],
                    ],
                ),
                (
                    m + 2,
                    [
                        [fr(m, 2) + 1],
                        [fr(3 * m + 2, 2) + 1, fr(3 * m, 2) + 1],
                        [fr(5 * m, 2) + 2],
                        [fr(7 * m + 2, 2) + 2, fr(7 * m, 2) + 2],
                    ],
                ),
            ]
        return m, specs
    if n % 4 == 1:
        m = (n - 1) // 4
        if m % 2 == 1:
            specs = [
                (
                    m + 1,
                    [
                        [fr(m + 1, 2) + 1, fr(m - 1, 2) + 1],
                        [fr(3 * m + 1, 2) + 1],
                        [fr(5 * m + 1, 2) + 1],
                        [fr(7 * m + 1, 2) + 1],
                    ],
                ),
            ]
        else:
            specs = [
                (
                    m + 1,
                    [
                        [fr(m, 2) + 1],
                        [fr(3 * m, 2) + 1],
                        [fr(5 * m + 2, 2) + 1, fr(5 * m, 2) + 1],
                        [fr(7 * m, 2) + 2],
                    ],
                ),
            ]
        return m, specs
    m = (n - 3) // 4
    if m % 2 == 1:
        specs = [
            (
                m + 2,
                [
                    [fr(m + 1, 2) + 1],
                    [fr(3 * m + 1, 2) + 2],
                    [fr(5 * m + 1, 2) + 3, fr(5 * m - 1, 2) + 3],
                    [fr(7 * m + 1, 2) + 3],
                ],
            ),
        ]
    else:
        specs = [
            (
                m + 2,
                [
                    [fr(m + 2, 2) + 1, fr(m, 2) + 1],
                    [fr(3 * m, 2) + 2],
                    [fr(5 * m, 2) + 3],
                    [fr(7 * m, 2) + 4],
                ],
            ),
        ]
    return m, specs


@dataclass(frozen=True)
class TableVariant:
    f_label: str
    state_labels: tuple[int, ...]
    value: float
    ok: bool


@dataclass(frozen=True)
class TableReport:
    n: int
    m: int
    parity: str
    expected: float
    variants: tuple[TableVariant, ...]
    skipped: tuple[str, ...] = field(default=())
    discrepancies: tuple[str, ...] = field(default=())

    @property
    def all_ok(self) -> bool:
        return (
            bool(self.variants)
            and all(v.ok for v in self.variants)
            and not self.discrepancies
        )


def verify_table(n: int) -> TableReport:
    """Replay the tabulated optimal effects and states against the closed form.

    Every combination of the listed candidate states is evaluated with a
    fixed-encoding RAT; labels above n wrap around, labels below 1 are
    reported as discrepancies, and non-integer label expressions are skipped
    with a note.
    """
    if n < 4:
        raise InputError("tables start at n = 4")
    theory = polygon(n)
    expected = polygon_rat_closed_form(n)
    m, specs = _table_entries(n)
    family = "e" if n % 2 == 0 else "g"
    e = polygon_ray(theory, 1)
    m_first = dichotomic_measurement(theory, e)
    variants: list[TableVariant] = []
    skipped: list[str] = []
    discrepancies: list[str] = []
    for f_index, columns in specs:
        f_label = f"{family}_{f_index}"
        f = polygon_ray(theory, f_index)
        m_second = dichotomic_measurement(theory, f)
        options: list[list[int]] = []
        for slot, exprs in enumerate(columns, start=1):
            usable = []
            for expr in exprs:
                if expr.denominator != 1:
                    skipped.append(f"{f_label}: t{slot} label {expr} is not an integer")
                    continue
                j = int(expr)
                if j < 1:
                    discrepancies.append(f"{f_label}: t{slot} label {j} is below range")
                    continue
                usable.append(j)
            if not usable:
                discrepancies.append(f"{f_label}: no usable state for t{slot}")
            options.append(usable)
        if any(not opts for opts in options):
            continue
        for combo in product(*options):
            encoding = {
                ("+", "+"): polygon_state(theory, combo[0]),
                ("-", "+"): polygon_state(theory, combo[1]),
                ("-", "-"): polygon_state(theory, combo[2]),
                ("+", "-"): polygon_state(theory, combo[3]),
            }
            value = rat_success_given_states([m_first, m_second], encoding)
            ok = abs(value - expected) <= 1e-9
            variants.append(TableVariant(f_label, tuple(combo), value, ok))
    return TableReport(
        n=n,
        m=m,
        parity=parity_class(n),
        expected=expected,
        variants=tuple(variants),
        skipped=tuple(skipped),
        discrepancies=tuple(discrepancies),
    )


@dataclass(frozen=True)
class SweepRow:
    n: int
    parity: str
    closed_form: float
    brute_force: float
    compatible_max: float
    lmax: float


def sweep(n_min: int, n_max: int) -> list[SweepRow]:
    """Closed form, brute force, compatible maximum, and storability per n."""
    if not 4 <= n_min <= n_max <= 60:
        raise InputError("sweep range must satisfy 4 <= n_min <= n_max <= 60")
    rows = []
    for n in range(n_min, n_max + 1):
        theory = polygon(n)
        rows.append(
            SweepRow(
                n=n,
                parity=parity_class(n),
                closed_form=polygon_rat_closed_form(n),
                brute_force=brute_force_rat_max(theory).value,
                compatible_max=polygon_compatible_max(n),
                lmax=information_storability(theory).value,
            )
        )
    return rows
