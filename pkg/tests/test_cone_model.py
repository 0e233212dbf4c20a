import json
from fractions import Fraction

import numpy as np
import pytest

from cone_gamma.cone_model import (
    catalog,
    catalog_names,
    check_condition_41,
    derived_vectors,
    exact_int_inverse,
    from_descriptor,
    measure_exponents,
    new_cone,
    orbit_signs,
    tau,
    tau_star,
    to_descriptor,
)


def test_catalog_names():
    assert catalog_names() == ("orthant2", "orthant3", "sym2", "vinberg3", "quat4")


def test_orthant_derived_data():
    cone = catalog("orthant3").cone
    p, q, d = derived_vectors(cone)
    assert p == (0, 0, 0) and q == (0, 0, 0)
    assert d == (Fraction(1), Fraction(1), Fraction(1))
    m, m_star = measure_exponents(cone)
    assert m == (Fraction(1), Fraction(1), Fraction(1))
    assert m == m_star
    assert cone.dim == 3


def test_sym2_derived_data():
    cone = catalog("sym2").cone
    assert cone.n_value(2, 1) == 1
    assert np.array_equal(cone.sigma, [[1, 0], [1, 1]])
    assert np.array_equal(cone.sigma_star, [[1, 1], [0, 1]])
    p, q, d = derived_vectors(cone)
    assert p == (0, 1) and q == (1, 0)
    assert d == (Fraction(3, 2), Fraction(3, 2))
    m, m_star = measure_exponents(cone)
    assert m == (Fraction(0), Fraction(3, 2))
    assert m_star == (Fraction(3, 2), Fraction(0))
    assert cone.dim == 3


def test_vinberg3_derived_data():
    cone = catalog("vinberg3").cone
    assert cone.n_value(2, 1) == 1 and cone.n_value(3, 1) == 1 and cone.n_value(3, 2) == 0
    p, q, d = derived_vectors(cone)
    assert p == (0, 1, 1) and q == (2, 0, 0)
    assert d == (Fraction(2), Fraction(3, 2), Fraction(3, 2))
    m, _ = measure_exponents(cone)
    assert m == (Fraction(-1), Fraction(3, 2), Fraction(3, 2))
    assert cone.dim == 5


def test_quat4_derived_data():
    cone = catalog("quat4").cone
    p, q, d = derived_vectors(cone)
    assert p == (0, 4, 8) and q == (8, 4, 0)
    assert d == (Fraction(5), Fraction(5), Fraction(5))
    assert cone.dim == 15


def test_tau_involution_through_dual():
    # tau* of the dual data undoes tau: tau*(tau(s)) = s
    for name in catalog_names():
        cone = catalog(name).cone
        rng = np.random.default_rng(7)
        s = rng.uniform(-2, 2, cone.rank) + 1j * rng.uniform(-2, 2, cone.rank)
        ts = tau(cone, s)
        back = tau_star(cone, ts)
        assert np.max(np.abs(back - s)) < 1e-12


def test_tau_orthant_is_reflection():
    cone = catalog("orthant2").cone
    s = np.array([0.3 + 0.4j, 1.2 - 0.1j])
    assert np.allclose(tau(cone, s), 1.0 - s, atol=1e-14)


def test_descriptor_round_trip():
    for name in catalog_names():
        cone = catalog(name).cone
        desc = to_descriptor(cone)
        text = json.dumps(desc)
        back = from_descriptor(json.loads(text))
        assert back.rank == cone.rank
        assert back.n == cone.n
        assert np.array_equal(back.sigma, cone.sigma)
        assert np.array_equal(back.sigma_star, cone.sigma_star)


def test_new_cone_rejects_bad_sigma():
    eye = np.eye(2, dtype=np.int64)
    with pytest.raises(ValueError):
        new_cone(2, {}, 2 * eye, eye)  # det 4, not unimodular
    with pytest.raises(ValueError):
        new_cone(2, {}, np.array([[1, 0], [-1, 1]]), eye)  # negative entry
    with pytest.raises(ValueError):
        new_cone(2, {(2, 1): -1}, eye, eye)  # negative structure constant


def test_exact_int_inverse():
    M = np.array([[1, 0, 0], [1, 1, 0], [1, 1, 1]], dtype=np.int64)
    inv = exact_int_inverse(M)
    assert np.array_equal(M @ inv, np.eye(3, dtype=np.int64))


def test_condition_values_on_catalog():
    assert check_condition_41(catalog("orthant2").cone) == 0
    assert check_condition_41(catalog("orthant3").cone) == 0
    assert check_condition_41(catalog("sym2").cone) is None
    assert check_condition_41(catalog("vinberg3").cone) is None
    assert check_condition_41(catalog("quat4").cone) == 1


def test_condition_exhaustive_matches_parity_criterion():
    # random structure constants; the mod-8 sweep must agree with the
    # divisibility characterization (all n even, p and q divisible by 4)
    rng = np.random.default_rng(11)
    eye = lambda r: np.eye(r, dtype=np.int64)
    for _ in range(60):
        r = int(rng.integers(2, 6))
        n = {}
        for k in range(2, r + 1):
            for j in range(1, k):
                v = int(rng.integers(0, 5))
                if v:
                    n[(k, j)] = v
        cone = new_cone(r, n, eye(r), eye(r))
        p, q, _ = derived_vectors(cone)
        even = all(v % 2 == 0 for v in n.values())
        div4 = all(v % 4 == 0 for v in p) and all(v % 4 == 0 for v in q)
        got = check_condition_41(cone)
        if even and div4:
            assert got == (sum(n.values()) % 8) // 4
        else:
            assert got is None


def test_orbit_signs_follow_sigma_rows():
    cone = catalog("sym2").cone
    # row_1(sigma) = (1,0): sign eps_1; row_2 = (1,1): sign eps_1 eps_2
    assert orbit_signs(cone, (1, -1)) == (1, -1)
    assert orbit_signs(cone, (-1, -1)) == (-1, 1)


def test_group_action_scales_minors_consistently():
    # Delta_j(T x) / Delta_j(x) must be a positive constant on the cone
    for name in ("sym2", "vinberg3"):
        ent = catalog(name)
        rng = np.random.default_rng(5)
        T = ent.chart.sample_group(rng)
        pts = rng.uniform(0.5, 1.5, size=(40, ent.chart.dim))
        # push points into the positive orbit: bump the diagonal coordinates
        if name == "sym2":
            pts[:, 0] += 2.0
            pts[:, 2] += 2.0
        else:
            pts[:, 0] += 2.0
            pts[:, 2] += 2.0
            pts[:, 4] += 2.0
        before = ent.chart.delta(pts)
        after = ent.chart.delta(pts @ T.T)
        for bj, aj in zip(before, after):
            assert np.all(bj > 0)
            ratios = aj / bj
            assert np.max(np.abs(ratios - ratios[0])) < 1e-9 * abs(ratios[0])
            assert ratios[0] > 0


def test_measure_exponents_are_exact_fractions():
    for name in catalog_names():
        m, m_star = measure_exponents(catalog(name).cone)
        assert all(isinstance(v, Fraction) for v in m)
        assert all(isinstance(v, Fraction) for v in m_star)
