import numpy as np
import pytest

import util

from gptrat import (
    InputError,
    Measurement,
    check_compatible,
    dichotomic_measurement,
    harmonic_joint,
    harmonic_smearing_weights,
    incompatibility_degree,
    is_valid_measurement,
    maximally_incompatible_dichotomic,
    mix,
    post_process,
    trivial_measurement,
)
from gptrat.polygons import odd_polygon_compatible_pair
from gptrat.zoo import hypercube, polygon, polygon_ray, simplex


def _ray_pair(theory, k1, k2):
    return (
        dichotomic_measurement(theory, polygon_ray(theory, k1)),
        dichotomic_measurement(theory, polygon_ray(theory, k2)),
    )


# ------------------------------------------------------------ harmonic joint


def test_harmonic_joint_two_dichotomics():
    t = polygon(4)
    m, n = _ray_pair(t, 1, 2)
    h = harmonic_joint([m, n])
    assert h.num_outcomes == 4
    assert h.outcomes[0] == ("+", "+")
    np.testing.assert_allclose(
        h.effects[0], (m.effects[0] + n.effects[0]) / 4.0, atol=1e-15
    )
    assert is_valid_measurement(h, t)


def test_harmonic_joint_marginals_are_smearings():
    rng = np.random.default_rng(5)
    t = polygon(5)
    m1 = util.random_measurement(t, rng, 2)
    m2 = util.random_measurement(t, rng, 3)
    h = harmonic_joint([m1, m2])
    lam1, lam2 = harmonic_smearing_weights([2, 3])
    np.testing.assert_allclose([lam1, lam2], [0.6, 0.4], atol=1e-15)

    marg1 = np.stack([
        sum(h.effects[i] for i, o in enumerate(h.outcomes) if o[0] == m1.outcomes[x])
        for x in range(2)
    ])
    expected1 = lam1 * m1.effects + (1 - lam1) * t.unit / 2.0
    np.testing.assert_allclose(marg1, expected1, atol=1e-12)

    marg2 = np.stack([
        sum(h.effects[i] for i, o in enumerate(h.outcomes) if o[1] == m2.outcomes[y])
        for y in range(3)
    ])
    expected2 = lam2 * m2.effects + (1 - lam2) * t.unit / 3.0
    np.testing.assert_allclose(marg2, expected2, atol=1e-12)


def test_harmonic_joint_three_measurements():
    rng = np.random.default_rng(6)
    t = hypercube(3)
    ms = [util.random_measurement(t, rng, 2) for _ in range(3)]
    h = harmonic_joint(ms)
    assert h.num_outcomes == 8
    assert is_valid_measurement(h, t)
    lam = harmonic_smearing_weights([2, 2, 2])[0]
    np.testing.assert_allclose(lam, 1.0 / 3.0, atol=1e-15)


def test_harmonic_joint_validation():
    t = polygon(4)
    m = dichotomic_measurement(t, polygon_ray(t, 1))
    with pytest.raises(InputError):
        harmonic_joint([m])
    other = Measurement(("a", "b"), np.eye(2))
    with pytest.raises(InputError):
        harmonic_joint([m, other])


# -------------------------------------------------------------- check joint


def test_square_ray_pair_is_incompatible():
    t = polygon(4)
    m, n = _ray_pair(t, 1, 2)
    assert check_compatible([m, n], t) is None


def test_anything_with_trivial_is_compatible():
    t = polygon(4)
    m = dichotomic_measurement(t, polygon_ray(t, 1))
    witness = check_compatible([m, trivial_measurement(t, [0.4, 0.6])], t)
    assert witness is not None
    assert is_valid_measurement(witness.joint, t)
    assert max(witness.marginal_residuals) <= 1e-9


def test_odd_polygon_construction_is_compatible():
    for n in (5, 7, 9):
        t = polygon(n)
        parent, m1, m2 = odd_polygon_compatible_pair(t)
        assert is_valid_measurement(parent, t)
        witness = check_compatible([m1, m2], t)
        assert witness is not None
        assert max(witness.marginal_residuals) <= 1e-9


def test_post_processings_of_common_parent_are_compatible():
    rng = np.random.default_rng(7)
    t = polygon(6)
    parent = util.uniform_ray_measurement(t)
    children = [util.random_post_processing(parent, rng, 2) for _ in range(3)]
    witness = check_compatible(children, t)
    assert witness is not None
    assert max(witness.marginal_residuals) <= 1e-7


def test_harmonic_smearings_are_compatible():
    t = polygon(4)
    m, n = _ray_pair(t, 1, 2)
    lam1, lam2 = harmonic_smearing_weights([2, 2])
    sm = mix([m, trivial_measurement(t, [0.5, 0.5], ("+", "-"))], [lam1, 1 - lam1])
    sn = mix([n, trivial_measurement(t, [0.5, 0.5], ("+", "-"))], [lam2, 1 - lam2])
    assert check_compatible([sm, sn], t) is not None


def test_check_compatible_validation():
    t = polygon(4)
    m = dichotomic_measurement(t, polygon_ray(t, 1))
    with pytest.raises(InputError):
        check_compatible([m], t)
    bad = Measurement(("+", "-"), np.vstack([2.0 * t.unit, -t.unit]))
    with pytest.raises(InputError):
        check_compatible([m, bad], t)


# -------------------------------------------------------------------- degree


def test_square_ray_pair_degree_is_one_half():
    t = polygon(4)
    m, n = _ray_pair(t, 1, 2)
    report = incompatibility_degree(m, n, t)
    np.testing.assert_allclose(report.degree, 0.5, atol=1e-6)
    assert report.bisection_iters >= 20
    p, q = report.optimal_trivials
    np.testing.assert_allclose(p.sum(), 1.0, atol=1e-9)
    np.testing.assert_allclose(q.sum(), 1.0, atol=1e-9)
    assert p.min() >= -1e-9 and q.min() >= -1e-9


def test_compatible_pair_degree_is_exactly_one():
    t = polygon(4)
    m = dichotomic_measurement(t, polygon_ray(t, 1))
    report = incompatibility_degree(m, trivial_measurement(t, [0.5, 0.5]), t)
    assert report.degree == 1.0
    assert report.bisection_iters == 1


def test_noisy_pair_degree_scales_inversely():
    # pre-smearing by mu rescales the critical noise to 1/(2 mu)
    t = polygon(4)
    m, n = _ray_pair(t, 1, 2)
    mu = 0.8
    noisy_m = mix([m, trivial_measurement(t, [0.5, 0.5], ("+", "-"))], [mu, 1 - mu])
    noisy_n = mix([n, trivial_measurement(t, [0.5, 0.5], ("+", "-"))], [mu, 1 - mu])
    report = incompatibility_degree(noisy_m, noisy_n, t)
    np.testing.assert_allclose(report.degree, 0.5 / mu, atol=1e-6)


def test_degree_never_below_one_half():
    rng = np.random.default_rng(8)
    for t in (polygon(4), polygon(5), hypercube(2)):
        for _ in range(2):
            m = util.random_noisy_dichotomic(t, rng)
            n = util.random_noisy_dichotomic(t, rng)
            report = incompatibility_degree(m, n, t)
            assert report.degree >= 0.5 - 1e-6
            assert report.degree <= 1.0


# ------------------------------------------------------ maximal incompatibility


def test_square_ray_pair_is_maximally_incompatible():
    t = polygon(4)
    m, n = _ray_pair(t, 1, 2)
    assert maximally_incompatible_dichotomic(m, n, t)


def test_noisy_pair_is_not_maximally_incompatible():
    t = polygon(4)
    m, n = _ray_pair(t, 1, 2)
    noisy = mix([n, trivial_measurement(t, [0.5, 0.5], ("+", "-"))], [0.9, 0.1])
    assert not maximally_incompatible_dichotomic(m, noisy, t)


def test_hypercube_face_pair_is_maximally_incompatible():
    t = hypercube(3)
    rays = t.backend.dual_rays
    m = dichotomic_measurement(t, rays[0])  # depends on coordinate 1 only
    n = dichotomic_measurement(t, rays[2])  # depends on coordinate 2 only
    assert maximally_incompatible_dichotomic(m, n, t)


def test_tetrahedron_pair_is_not_maximally_incompatible():
    t = simplex(4)
    m = dichotomic_measurement(t, np.array([1.0, 1.0, 0.0, 0.0]))
    n = dichotomic_measurement(t, np.array([1.0, 0.0, 1.0, 0.0]))
    assert not maximally_incompatible_dichotomic(m, n, t)
    assert incompatibility_degree(m, n, t).degree == 1.0


def test_maximal_incompatibility_requires_dichotomic():
    t = polygon(4)
    m = dichotomic_measurement(t, polygon_ray(t, 1))
    three = trivial_measurement(t, [0.2, 0.3, 0.5])
    with pytest.raises(InputError):
        maximally_incompatible_dichotomic(m, three, t)
