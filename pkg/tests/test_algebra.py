import cmath
import itertools
import random

import pytest
from hypothesis import given, strategies as st

from trackforms import from_triangulation, sigma_matrix, standard_triangulation, weight_lattice_basis
from trackforms.algebra import (
    AlgebraParams,
    BalancedAlgebra,
    chebyshev_coefficients,
    chebyshev_value,
    frobenius,
    omega_candidates,
    ordered_product_normal_form,
    params_from_omega,
    phase_eval,
    solve_chebyshev,
)
from trackforms.traintrack import ParityViolation, switch_sums

from conftest import random_weight


@pytest.fixture(scope="module")
def torus_setup():
    tri = standard_triangulation(1, 1)
    track = from_triangulation(tri)
    params = omega_candidates(3, epsilon=1)[0]
    algebra = BalancedAlgebra(track, params)
    basis = weight_lattice_basis(track)
    return track, algebra, basis


def random_element(algebra, basis, rng, n_terms=3):
    out = algebra.zero()
    for _ in range(n_terms):
        w = random_weight(algebra.track, basis, rng, span=1)
        term = algebra.monomial(w).scaled(rng.randint(1, 3)).scaled_by_root(
            rng.randrange(algebra.params.phase_order))
        out = out + term
    return out


# --- parameters --------------------------------------------------------------

def test_params_validation():
    with pytest.raises(ValueError):
        AlgebraParams(4, 1)  # even N
    with pytest.raises(ValueError):
        AlgebraParams(3, 3)  # omega^4 not primitive
    p = AlgebraParams(3, 2)
    assert p.phase_order == 12
    assert abs(p.q - cmath.exp(2j * cmath.pi / 3 * 2)) < 1e-12


def test_epsilon_partition():
    plus = omega_candidates(5, epsilon=1)
    minus = omega_candidates(5, epsilon=-1)
    assert len(plus) == len(minus) == len(omega_candidates(5)) / 2
    for p in plus:
        assert abs(p.omega ** (-2 * 5) - 1) < 1e-12
    for p in minus:
        assert abs(p.omega ** (-2 * 5) + 1) < 1e-12


def test_params_from_omega_round_trip():
    for p in omega_candidates(3):
        assert params_from_omega(3, p.omega) == p
    with pytest.raises(ValueError):
        params_from_omega(3, 2.0 + 0j)
    with pytest.raises(ValueError):
        params_from_omega(3, cmath.exp(0.3j))


def test_iota_params_are_order_four():
    p = omega_candidates(5, epsilon=-1)[0]
    iota = p.iota_params()
    assert iota.N == 1
    assert abs(iota.omega - p.omega ** 25) < 1e-12
    assert abs(iota.omega ** 4 - 1) < 1e-12


# --- monomials and products ---------------------------------------------------

def test_monomial_unit_coefficient(torus_setup):
    track, algebra, basis = torus_setup
    for vec in basis:
        elem = algebra.monomial(vec)
        assert elem.terms == {vec: {0: 1}}
    assert algebra.one().terms == {(0,) * 6: {0: 1}}


def test_puncture_element_is_eta_monomial(torus_setup):
    track, algebra, basis = torus_setup
    h1 = algebra.puncture_element(0)
    assert set(h1.terms) == {(1,) * 6}


def test_inverse_monomials(torus_setup):
    track, algebra, basis = torus_setup
    for vec in basis:
        minus = tuple(-x for x in vec)
        assert algebra.mul(algebra.monomial(vec), algebra.monomial(minus)) == algebra.one()


def test_commutation_phase_exact(torus_setup):
    track, algebra, basis = torus_setup
    for a, b in itertools.product(basis, repeat=2):
        lhs = algebra.mul(algebra.monomial(a), algebra.monomial(b))
        rhs = algebra.mul(algebra.monomial(b), algebra.monomial(a)).scaled_by_root(
            4 * algebra.theta(a, b))
        assert lhs == rhs


def test_associativity_exhaustive_on_torus(torus_setup):
    track, algebra, basis = torus_setup
    zs = [algebra.monomial(v) for v in basis]
    for x, y, z in itertools.product(zs, repeat=3):
        assert algebra.mul(algebra.mul(x, y), z) == algebra.mul(x, algebra.mul(y, z))


def test_associativity_random_four_punctures():
    track = from_triangulation(standard_triangulation(0, 4))
    algebra = BalancedAlgebra(track, omega_candidates(5, epsilon=-1)[0])
    basis = weight_lattice_basis(track)
    rng = random.Random(17)
    for _ in range(15):
        x = random_element(algebra, basis, rng)
        y = random_element(algebra, basis, rng)
        z = random_element(algebra, basis, rng)
        assert algebra.mul(algebra.mul(x, y), z) == algebra.mul(x, algebra.mul(y, z))


def test_power_is_scaled_monomial(torus_setup):
    track, algebra, basis = torus_setup
    N = algebra.params.N
    w = tuple(a + b for a, b in zip(basis[0], basis[1]))
    assert algebra.power(algebra.monomial(w), N) == algebra.monomial(tuple(N * x for x in w))
    assert algebra.power(algebra.monomial(w), 0) == algebra.one()
    h = algebra.puncture_element(0)
    assert algebra.power(h, N) == algebra.monomial(tuple(N for _ in range(6)))


def test_central_elements_commute(torus_setup):
    track, algebra, basis = torus_setup
    rng = random.Random(23)
    N = algebra.params.N
    h = algebra.puncture_element(0)
    for _ in range(10):
        x = random_element(algebra, basis, rng)
        zn = algebra.power(algebra.monomial(basis[0]), N)
        assert algebra.mul(x, zn) == algebra.mul(zn, x)
        assert algebra.mul(x, h) == algebra.mul(h, x)


def test_commutative_at_iota(torus_setup):
    track, algebra, basis = torus_setup
    iota = BalancedAlgebra(track, algebra.params.iota_params())
    for a, b in itertools.product(basis, repeat=2):
        x, y = iota.monomial(a), iota.monomial(b)
        assert iota.mul(x, y) == iota.mul(y, x)


def test_exact_matches_numeric(torus_setup):
    track, algebra, basis = torus_setup
    rng = random.Random(29)
    omega = algebra.params.omega
    for _ in range(10):
        a = random_weight(track, basis, rng)
        b = random_weight(track, basis, rng)
        prod = algebra.mul(algebra.monomial(a), algebra.monomial(b))
        (w, phase), = prod.terms.items()
        numeric = omega ** (2 * algebra.theta(a, b))
        assert abs(phase_eval(phase, algebra.params) - numeric) < 1e-12


# --- symmetrized ordered products ---------------------------------------------

def test_weyl_exponent_single_generator(torus_setup):
    track, algebra, basis = torus_setup
    # a vector supported on one switch has an empty symmetrizing sum
    assert algebra.weyl_exponent((2, 0, 0)) == 0


def test_weyl_exponent_two_generators(torus_setup):
    track, algebra, basis = torus_setup
    sigma = sigma_matrix(track.tri)
    k = switch_sums(track, basis[0])
    expected = -sum(k[u] * k[v] * sigma[u][v]
                    for u in range(3) for v in range(u + 1, 3))
    assert algebra.weyl_exponent(k) == expected % algebra.params.phase_order


def test_weyl_exponent_rejects_unbalanced(torus_setup):
    track, algebra, basis = torus_setup
    with pytest.raises(ParityViolation):
        algebra.weyl_exponent((1, 0, 0))


@given(st.randoms(use_true_random=False))
def test_ordered_product_permutation_invariant(rnd):
    tri = standard_triangulation(1, 1)
    sigma = sigma_matrix(tri)
    length = rnd.randint(2, 5)
    seq = [(rnd.randrange(3), rnd.randint(-2, 2)) for _ in range(length)]
    reference = ordered_product_normal_form(sigma, seq, 12)
    for _ in range(6):
        shuffled = list(seq)
        rnd.shuffle(shuffled)
        assert ordered_product_normal_form(sigma, shuffled, 12) == reference


def test_ordered_product_sorted_vector():
    sigma = sigma_matrix(standard_triangulation(1, 1))
    vec, _ = ordered_product_normal_form(sigma, [(2, 1), (0, 3), (2, -1)], 12)
    assert vec == (3, 0, 0)


# --- frobenius -----------------------------------------------------------------

def test_frobenius_on_basis(torus_setup):
    track, algebra, basis = torus_setup
    iota = BalancedAlgebra(track, algebra.params.iota_params())
    N = algebra.params.N
    for vec in basis:
        lifted = frobenius(iota.monomial(vec), algebra)
        assert lifted == algebra.monomial(tuple(N * x for x in vec))
    assert frobenius(iota.one(), algebra) == algebra.one()


def test_frobenius_multiplicative(torus_setup):
    track, algebra, basis = torus_setup
    iota = BalancedAlgebra(track, algebra.params.iota_params())
    rng = random.Random(31)
    for _ in range(25):
        x = random_element(iota, basis, rng)
        y = random_element(iota, basis, rng)
        assert frobenius(iota.mul(x, y), algebra) == algebra.mul(
            frobenius(x, algebra), frobenius(y, algebra))


def test_frobenius_rejects_wrong_parameters(torus_setup):
    track, algebra, basis = torus_setup
    with pytest.raises(ValueError):
        frobenius(algebra.one(), algebra)


def test_element_json_round_trip(torus_setup):
    track, algebra, basis = torus_setup
    rng = random.Random(37)
    x = random_element(algebra, basis, rng)
    again = algebra.element_from_json_dict(x.to_json_dict())
    assert again == x


# --- chebyshev ------------------------------------------------------------------

def test_chebyshev_small_coefficients():
    assert chebyshev_coefficients(0) == [2]
    assert chebyshev_coefficients(1) == [0, 1]
    assert chebyshev_coefficients(2) == [-2, 0, 1]
    assert chebyshev_coefficients(3) == [0, -3, 0, 1]


def test_chebyshev_value_matches_coefficients():
    rng = random.Random(41)
    for n in range(8):
        coeffs = chebyshev_coefficients(n)
        for _ in range(5):
            x = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            direct = sum(c * x ** k for k, c in enumerate(coeffs))
            assert abs(chebyshev_value(n, x) - direct) < 1e-9


def test_chebyshev_trig_identity():
    rng = random.Random(43)
    for n in range(1, 8):
        for _ in range(5):
            t = rng.uniform(0, 2 * cmath.pi)
            assert abs(chebyshev_value(n, 2 * cmath.cos(t)) - 2 * cmath.cos(n * t)) < 1e-9


def test_chebyshev_fixed_point_two():
    for n in (1, 3, 5, 7, 11):
        assert chebyshev_value(n, 2) == 2


@given(st.randoms(use_true_random=False))
def test_chebyshev_composition(rnd):
    n = rnd.choice([3, 5, 7])
    b = cmath.rect(0.5 + 1.5 * rnd.random(), 2 * cmath.pi * rnd.random())
    lhs = chebyshev_value(n, b + 1 / b)
    rhs = b ** n + b ** (-n)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))


def test_solve_chebyshev_counts_and_residuals():
    rng = random.Random(47)
    for n in (1, 3, 5, 7):
        for _ in range(10):
            y = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            sols = solve_chebyshev(y, n)
            assert len(sols) == n
            for x in sols:
                assert abs(chebyshev_value(n, x) - y) < 1e-9


def test_solve_chebyshev_odd_negative_two():
    sols = solve_chebyshev(-2, 3)
    assert any(abs(x + 2) < 1e-9 for x in sols)


def test_solve_chebyshev_rejects_bad_n():
    with pytest.raises(ValueError):
        solve_chebyshev(1.0, 0)
