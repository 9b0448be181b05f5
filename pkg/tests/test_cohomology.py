"""Action matrices: form preservation, exact char polys, spectral data."""

import random

import pytest

from siegelcert.balls import ComplexBall
from siegelcert.cohomology import (ActionMatrix, delta_eigen_check,
                                   fixed_point_bound, quad_action_matrix,
                                   spectral_data, tl_action_matrix)
from siegelcert.errors import MixedFactor
from siegelcert.intpoly import IntPolynomial, strip_cyclotomic
from siegelcert.salem import is_salem
from siegelcert.threelines import OrbitData, lambda_by_bisection, salem_from_orbit

PERMS = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (1, 0, 2), (2, 1, 0)]


def test_form_preserved_random_quad_matrices():
    rng = random.Random(17)
    for _ in range(12):
        ns = [rng.randint(0, 7) for _ in range(3)]
        sigma = PERMS[rng.randrange(6)]
        m = quad_action_matrix(*ns, sigma=sigma)  # constructor checks the form
        assert m.preserves_form()
        assert m.dim == 1 + sum(ns) + 3


def test_form_violation_rejected():
    with pytest.raises(ValueError):
        ActionMatrix(((2, 0), (0, 1)), ("H", "E"))


def test_quad_888_charpoly_and_entropy(salem8):
    m = quad_action_matrix(8, 8, 8)
    assert m.dim == 28
    assert m.trace() == 2
    assert fixed_point_bound(m) == 4
    rest, cyclo = strip_cyclotomic(m.char_poly)
    assert rest == salem8
    sd = spectral_data(m)
    assert abs(sd.entropy - 0.6901) < 1e-3
    assert sd.lam.contains(1.994004199185754)
    assert sd.salem_part == salem8
    assert tuple(sorted(sd.cyclo_parts)) == tuple(sd.cyclo_parts)


def test_quad_fixes_canonical_class():
    for sigma in PERMS:
        m = quad_action_matrix(3, 5, 2, sigma=sigma)
        assert m.apply(m.canonical_vector) == m.canonical_vector


def test_tl_matrices_match_bisection_and_bound():
    for orbit in (OrbitData((2,), (1,)), OrbitData((1, 2), (1, 1))):
        m = tl_action_matrix(orbit)
        assert m.dim == 1 + orbit.blowup_count
        assert m.trace() == orbit.N + 1
        assert fixed_point_bound(m) == orbit.N + 3
        assert m.apply(m.canonical_vector) == m.canonical_vector
        sd = spectral_data(m)
        assert abs(sd.lam.center.real - lambda_by_bisection(orbit)) < 1e-9
        assert sd.salem_part == salem_from_orbit(orbit)


def test_charpoly_reciprocal_up_to_sign():
    mats = [quad_action_matrix(8, 8, 8), quad_action_matrix(2, 3, 4, (1, 2, 0)),
            tl_action_matrix(OrbitData((2,), (1,))),
            tl_action_matrix(OrbitData((1, 2), (1, 1)))]
    for m in mats:
        cp = m.char_poly
        assert cp.reversed() in (cp, -cp)


def test_identity_matrix_spectral_data():
    ident = ActionMatrix(
        tuple(tuple(1 if i == j else 0 for j in range(4)) for i in range(4)),
        ("H", "E1", "E2", "E3"))
    sd = spectral_data(ident)
    assert sd.entropy == 0.0
    assert sd.lam.contains(1.0)
    assert sd.salem_part == IntPolynomial((1,))
    assert fixed_point_bound(ident) == 6
    one = ActionMatrix(((1,),), ("H",))
    assert fixed_point_bound(one) == 3


def test_delta_eigen_check_quad_roots(salem8, salem8_cert):
    m = quad_action_matrix(8, 8, 8)
    for b in (salem8_cert.lam,) + salem8_cert.circle_roots:
        val = delta_eigen_check(m, b)
        assert val.contains_zero()
    # a non-eigenvalue stays certified away from zero
    val = delta_eigen_check(m, ComplexBall.exact(1.5))
    assert not val.contains_zero()


def test_delta_eigen_check_identity_exact():
    ident = ActionMatrix(
        tuple(tuple(1 if i == j else 0 for j in range(3)) for i in range(3)),
        ("H", "E1", "E2"))
    val = delta_eigen_check(ident, ComplexBall.exact(1))
    assert val.center == 0 and val.contains_zero()


def test_delta_eigen_check_tl_root():
    orbit = OrbitData((2,), (1,))
    m = tl_action_matrix(orbit)
    cert = is_salem(salem_from_orbit(orbit))
    assert delta_eigen_check(m, cert.circle_roots[0]).contains_zero()


def test_delta_eigen_check_large_matrix_ball_lu():
    orbit = OrbitData((30,), (3,))
    m = tl_action_matrix(orbit)
    assert m.dim > 96  # forces the ball-LU path
    cert = is_salem(salem_from_orbit(orbit))
    assert delta_eigen_check(m, cert.lam).contains_zero()
    assert not delta_eigen_check(m, ComplexBall.exact(2.5 + 0.1j)).contains_zero()


def test_spectral_data_dim_cap():
    m = tl_action_matrix(OrbitData((30,), (3,)))
    with pytest.raises(MixedFactor):
        spectral_data(m)


def test_matrix_text_export_stable():
    m = quad_action_matrix(1, 1, 1)
    text = m.to_text()
    lines = text.strip().split("\n")
    assert lines[0].split() == ["H", "E1.0", "E1.1", "E2.0", "E2.1", "E3.0", "E3.1"]
    assert len(lines) == 1 + m.dim
    assert text == m.to_text()
    # round-trip: the grid parses back to the entries
    grid = [tuple(int(v) for v in row.split()) for row in lines[1:]]
    assert tuple(grid) == m.entries


def test_quad_sigma_changes_matrix_but_not_form():
    a = quad_action_matrix(2, 3, 4, (0, 1, 2))
    b = quad_action_matrix(2, 3, 4, (1, 2, 0))
    assert a.entries != b.entries
    assert a.char_poly.degree == b.char_poly.degree
