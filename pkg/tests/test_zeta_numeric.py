import json
import math

import numpy as np
import pytest

from cone_gamma.cone_model import catalog
from cone_gamma.zeta_numeric import (
    TestFunction,
    completion_residual,
    distribution_matrix,
    basis_change_residual,
    fe_distribution_residual,
    fe_residual,
    fourier,
    gaussian,
    graded_half_line_rule,
    hermite_product,
    local_zeta_closed,
    local_zeta_quadrature,
    make_test_function,
    measure_invariance_check,
    mellin_half,
    parse_complex,
    parse_function,
    psi,
    run_fe_config,
    run_fe_suite,
    run_invariance_suite,
    run_quadrature_suite,
    sign_vector_from_distribution,
    function_from_json,
    uniform_rule,
    zeta_distribution,
    zeta_distribution_direct,
    zeta_distribution_vector,
    zeta_local_vector,
)
from cone_gamma.special_functions import PoleError

scipy_integrate = pytest.importorskip("scipy.integrate")


def test_psi_base_and_recurrence():
    x = np.linspace(-2, 2, 41)
    assert np.allclose(psi(0, x), np.exp(-np.pi * x**2), atol=1e-15)
    t = np.sqrt(2 * np.pi) * x
    assert np.allclose(psi(1, x), 2 * t * np.exp(-np.pi * x**2), atol=1e-13)
    # three-term recurrence H_(n+1) = 2 t H_n - 2 n H_(n-1)
    for n in range(1, 6):
        lhs = psi(n + 1, x)
        rhs = 2 * t * psi(n, x) - 2 * n * psi(n - 1, x)
        assert np.max(np.abs(lhs - rhs)) < 1e-10 * max(1.0, np.max(np.abs(rhs)))


def test_psi_parity():
    x = np.linspace(0.1, 2.5, 13)
    for n in range(5):
        assert np.allclose(psi(n, -x), (-1) ** n * psi(n, x), atol=1e-12)


def test_hermite_functions_are_fourier_eigenvectors():
    # numeric check of F[psi_n](y) = i^n psi_n(y) with kernel exp(+2 pi i x y)
    x, w = uniform_rule(-6.0, 6.0, 240)
    for n in range(5):
        vals = psi(n, x)
        for y in (0.3, 0.9, 1.7):
            ft = np.sum(w * vals * np.exp(2j * np.pi * x * y))
            assert abs(ft - (1j**n) * psi(n, y)) < 1e-10


def test_mellin_half_against_quadrature():
    for n in range(5):
        for s in (0.7, 1.3 + 0.4j, 2.1 - 0.8j):
            def re_part(x):
                return (x ** (complex(s).real - 1) * np.cos(complex(s).imag * np.log(x))) * psi(n, x)

            def im_part(x):
                return (x ** (complex(s).real - 1) * np.sin(complex(s).imag * np.log(x))) * psi(n, x)

            re, _ = scipy_integrate.quad(re_part, 0, 8, limit=300, epsabs=1e-12, epsrel=1e-12)
            im, _ = scipy_integrate.quad(im_part, 0, 8, limit=300, epsabs=1e-12, epsrel=1e-12)
            ref = complex(re, im)
            # the reference carries scipy's own quadrature error
            assert abs(mellin_half(n, s) - ref) < 3e-9 * (1 + abs(ref))


def test_mellin_half_pole():
    with pytest.raises(PoleError):
        mellin_half(0, 0.0)
    with pytest.raises(PoleError):
        mellin_half(1, -1.0)  # (s+1)/2 = 0 on the only contributing monomial
    # n = 1 at s = 0 is fine: only the odd monomial contributes
    val = mellin_half(1, 1e-9)
    assert np.isfinite(val.real)


def test_make_test_function_validation():
    with pytest.raises(ValueError):
        make_test_function("orthant2", [(1.0, (0,))])  # wrong arity
    with pytest.raises(ValueError):
        make_test_function("quat4", [(1.0, (0, 0, 0))])  # no chart
    f = make_test_function("sym2", [(0.5, (0, 1, 2)), (1j, (1, 0, 0))])
    assert f.dim == 3


def test_function_json_round_trip():
    f = make_test_function("sym2", [(0.5 + 0.25j, (0, 1, 2))], label="probe")
    back = function_from_json(json.dumps(f.to_json()))
    assert back == f


def test_parse_function_shorthands():
    ent = catalog("orthant2")
    assert parse_function(ent, "gaussian").terms == ((1.0 + 0j, (0, 0)),)
    f = parse_function(ent, "psi:1,2")
    assert f.terms == ((1.0 + 0j, (1, 2)),)
    g = parse_function(ent, {"terms": [[[0.5, 0.0], [1, 0]]]})
    assert g.terms == ((0.5 + 0j, (1, 0)),)
    with pytest.raises(ValueError):
        parse_function(ent, "nope")


def test_parse_complex_forms():
    assert parse_complex("0.4+0.2i") == 0.4 + 0.2j
    assert parse_complex("1.8") == 1.8 + 0j
    assert parse_complex("-0.3i") == -0.3j
    assert parse_complex([1.5, -0.5]) == 1.5 - 0.5j
    assert parse_complex(2) == 2 + 0j
    with pytest.raises(ValueError):
        parse_complex("abc")


def test_fourier_weights_sym2_gaussian():
    # tr(y^2) quadratic form has weights (1, 2, 1): transform scalar 1/sqrt(2)
    g = gaussian("sym2")
    gf = fourier(g)
    coeff = gf.terms[0][0]
    assert abs(coeff - 1.0 / math.sqrt(2.0)) < 1e-15
    # applying the weighted transform twice gives the parity scalar: here 1/2
    gff = fourier(gf)
    assert abs(gff.terms[0][0] - 0.5) < 1e-15


def test_fourier_orthant_hermite_phases():
    f = hermite_product("orthant2", (1, 2))
    coeff = fourier(f).terms[0][0]
    assert abs(coeff - (1j) ** 3) < 1e-15


def test_evaluate_matches_manual_product():
    f = make_test_function("sym2", [(1.0, (0, 1, 0))])
    pts = np.array([[0.5, 0.2, 1.1], [1.0, -0.3, 0.7]])
    vals = f.evaluate(pts)
    manual = psi(0, pts[:, 0]) * psi(1, math.sqrt(2) * pts[:, 1]) * psi(0, pts[:, 2])
    assert np.max(np.abs(vals - manual)) < 1e-14


def test_closed_vs_quadrature_orthant():
    ent = catalog("orthant2")
    f = hermite_product(ent, (1, 2))
    s = np.array([0.55 + 0.2j, 0.7 - 0.3j])
    for eps in ((1, 1), (1, -1), (-1, 1)):
        closed = local_zeta_closed(ent, eps, f, s)
        quad = local_zeta_quadrature(ent, eps, f, s)
        assert abs(closed.value - quad.value) < 1e-8 * (1 + abs(closed.value))
        assert quad.method == "graded-quadrature"
        assert quad.error_estimate is not None


def test_closed_form_requires_orthant():
    with pytest.raises(ValueError):
        local_zeta_closed("sym2", (1, 1), gaussian("sym2"), np.array([0.6, 1.9]))


def test_quadrature_self_convergence_sym2():
    ent = catalog("sym2")
    g = gaussian(ent)
    s = np.array([0.6 + 0.2j, 1.9 - 0.1j])
    v1 = local_zeta_quadrature(ent, (1, 1), g, s, panels=1)
    v2 = local_zeta_quadrature(ent, (1, 1), g, s, panels=2)
    assert v2.error_estimate < v1.error_estimate / 4.0
    assert abs(v1.value - v2.value) < 4 * v1.error_estimate


def test_quadrature_sym2_against_scipy():
    ent = catalog("sym2")
    s = np.array([0.6, 1.9])
    ours = local_zeta_quadrature(ent, (1, 1), gaussian(ent), s, panels=4).value

    def integrand(c, b, a):
        d1 = a
        d2 = a * c - b * b
        if d1 <= 0 or d2 <= 0:
            return 0.0
        f = np.exp(-np.pi * (a * a + 2 * b * b + c * c))
        return f * d1**0.6 * d2**0.4  # s_2 - 3/2 = 0.4

    ref, err = scipy_integrate.tplquad(
        integrand, 0, 5, lambda a: -5, lambda a: 5, lambda a, b: 0, lambda a, b: 5, epsabs=1e-9, epsrel=1e-9
    )
    assert abs(ours.real - ref) < 1e-6 * (1 + abs(ref))
    assert abs(ours.imag) < 1e-10


def test_quadrature_negative_component_sym2():
    # eps = (1, -1): det sheet negative; value differs from the positive orbit
    ent = catalog("sym2")
    g = gaussian(ent)
    s = np.array([0.7, 1.8])
    pos = local_zeta_quadrature(ent, (1, 1), g, s, panels=3).value
    neg = local_zeta_quadrature(ent, (1, -1), g, s, panels=3).value
    assert abs(pos - neg) > 1e-4


def test_zeta_vector_and_distribution_round_trip():
    ent = catalog("orthant2")
    f = make_test_function(ent, [(1.0, (1, 0)), (0.5j, (0, 2))])
    s = np.array([0.45 + 0.15j, 0.6 - 0.25j])
    vec = zeta_local_vector(ent, f, s)
    K = distribution_matrix(ent.cone)
    assert np.array_equal(K @ K.T, 4 * np.eye(4))
    za = zeta_distribution_vector(ent, f, s)
    assert np.max(np.abs(K @ vec - za)) == 0.0
    back = sign_vector_from_distribution(ent, za)
    assert np.max(np.abs(back - vec)) < 1e-13
    # single-component accessor agrees with the vector (up to summation order)
    assert abs(zeta_distribution(ent, (1, 0), f, s) - za[2]) < 1e-13 * (1 + abs(za[2]))


def test_sign_to_digit_change_of_basis():
    for name in ("orthant2", "sym2"):
        ent = catalog(name)
        f = (
            make_test_function(ent, [(1.0, (1, 0)), (0.3, (0, 1))])
            if name == "orthant2"
            else make_test_function(ent, [(1.0, (1, 0, 1))])
        )
        s = (
            np.array([0.5 + 0.1j, 0.6 - 0.2j])
            if name == "orthant2"
            else np.array([0.6 + 0.1j, 1.9 - 0.2j])
        )
        assert basis_change_residual(ent, f, s) < 1e-12


def test_direct_distribution_route():
    ent = catalog("orthant2")
    f = hermite_product(ent, (1, 0))
    s = np.array([0.45 + 0.2j, 0.65 - 0.1j])
    closed = zeta_distribution(ent, (1, 0), f, s)
    direct = zeta_distribution_direct(ent, (1, 0), f, s)
    assert abs(closed) > 1e-3  # non-vacuous: parity-aligned digits
    assert abs(closed - direct.value) < 1e-8
    # parity mismatch kills the integral on both routes
    assert abs(zeta_distribution(ent, (0, 0), f, s)) < 1e-13
    assert abs(zeta_distribution_direct(ent, (0, 0), f, s).value) < 1e-13


def test_direct_distribution_requires_orthant():
    with pytest.raises(ValueError):
        zeta_distribution_direct("sym2", (0, 0), gaussian("sym2"), np.array([0.6, 1.9]))


def test_fe_residuals_orthants():
    rng = np.random.default_rng(0)
    for name in ("orthant2", "orthant3"):
        ent = catalog(name)
        r = ent.cone.rank
        funcs = [gaussian(ent), hermite_product(ent, tuple([1] + [0] * (r - 1)))]
        for f in funcs:
            s = rng.uniform(0.25, 0.75, r) + 1j * rng.uniform(-1, 1, r)
            assert fe_residual(ent, f, s).passed
            assert fe_distribution_residual(ent, f, s).passed
            assert completion_residual(ent, f, s).passed


def test_fe_requires_orthant():
    with pytest.raises(ValueError):
        fe_residual("sym2", gaussian("sym2"), np.array([0.6, 1.9]))
    with pytest.raises(ValueError):
        completion_residual("sym2", gaussian("sym2"), np.array([0.6, 1.9]))


def test_fe_suite_and_config(tmp_path):
    reports = run_fe_suite("orthant2", count=2, seed=5)
    assert len(reports) == 6
    assert all(r.passed for r in reports)
    cfg = {
        "cone": "orthant2",
        "s_points": [["0.4+0.2i", "1.6-0.1i"], [0.55, [0.6, 0.3]]],
        "functions": ["gaussian", "psi:1,0"],
        "tolerances": {"fe": 1e-9, "distribution": 1e-9, "completion": 1e-9},
    }
    reports = run_fe_config(cfg)
    assert len(reports) == 12
    assert all(r.passed for r in reports)
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    again = run_fe_config(path)
    assert [r.residual for r in again] == [r.residual for r in reports]


def test_measure_invariance_all_charts():
    for name, tol in (("orthant2", 1e-10), ("sym2", 1e-6), ("vinberg3", 1e-4)):
        rep = measure_invariance_check(name, trials=2, seed=3)
        assert rep.passed, (name, rep.residual)
        assert rep.residual < tol


def test_measure_invariance_negative_control():
    rep = measure_invariance_check("sym2", trials=1, seed=3, exponents=(1.0, 1.0))
    assert rep.residual > 1e-2
    assert not rep.passed


def test_invariance_requires_chart():
    with pytest.raises(ValueError):
        measure_invariance_check("quat4")


def test_run_quadrature_suite_reports():
    reports = run_quadrature_suite("sym2", count=2, seed=0)
    assert all(r.passed for r in reports)
    assert all(r.identity_name == "quadrature-self-convergence" for r in reports)
    with pytest.raises(ValueError):
        run_quadrature_suite("orthant2")


def test_run_invariance_suite_names():
    reports = run_invariance_suite(("orthant2",), seed=0)
    assert len(reports) == 1 and reports[0].passed


def test_graded_rule_integrates_power_singularity():
    # int_0^1 t^(-0.5) dt = 2 needs the dyadic grading near 0
    # truncation below t_max 2^-levels leaves mass 2 (2^-levels)^(1/2)
    t, w = graded_half_line_rule(1.0, 90, 4, order=8)
    val = np.sum(w * t**-0.5)
    assert abs(val - 2.0) < 1e-12
