import random

import pytest

from tameauto.automorphism import (
    Auto,
    JacobianMatrix,
    classify,
    compose,
    invert,
    is_automorphism_over_R,
    jacobian,
)
from tameauto.bipoly import BiPoly
from tameauto.coefficients import RatFunc, TPoly
from tameauto.generators import random_diff_affine, random_tame
from tameauto.nagata import SigmaParams, make_sigma

from conftest import ring_vars


def sigma_params(p):
    x, y, t = ring_vars(p, "R")
    return SigmaParams(TPoly([0, 0, 1], p), y + t * y ** 2, y - t * y ** 2)


def test_compose_identity():
    rng = random.Random(1)
    phi, _ = random_tame(rng, 3)
    ident = Auto.identity(3)
    assert compose(ident, phi) == phi
    assert compose(phi, ident) == phi


def test_compose_convention_first_phi_then_psi():
    x, y, t = ring_vars(3, "K")
    phi, psi = Auto(x + y ** 2, y), Auto(y, x)
    # psi's components with phi's substituted in
    assert compose(phi, psi) == Auto(y, x + y ** 2)
    assert compose(psi, phi) == Auto(y + x ** 2, x)


def test_compose_reproduces_sigma_formula():
    s = sigma_params(3)
    sigma, word = make_sigma(s)
    x, y, t = ring_vars(3, "R")
    inner = t ** 2 * x + s.P
    q_inner = s.Q.substitute(x, inner) - y
    expected_f1 = q_inner.scale(RatFunc.from_tpoly(s.a).inverse())
    assert sigma.f2 == inner
    assert sigma.f1 == expected_f1
    b1, tau, b2 = (l.payload for l in word)
    assert compose(compose(b1, tau), b2) == sigma


def test_jacobian_identity():
    jac = jacobian(Auto.identity(5))
    one, zero = BiPoly.const(1, 5), BiPoly.zero(5)
    assert (jac.a11, jac.a12, jac.a21, jac.a22) == (one, zero, zero, one)


def test_jacobian_frobenius_term_vanishes():
    x, y, t = ring_vars(2)
    jac = jacobian(Auto(x + y ** 2, y))
    assert jac == jacobian(Auto.identity(2))


@pytest.mark.parametrize("p", [2, 3])
def test_jacobian_of_sigma_entrywise(p):
    s = sigma_params(p)
    sigma, _ = make_sigma(s)
    x, y, t = ring_vars(p, "R")
    a = BiPoly.const(s.a, p, "R")
    inner = a * x + s.P
    dP = s.P.partial_derivative("y")
    dQ_inner = s.Q.partial_derivative("y").substitute(x, inner)
    jac = jacobian(sigma)
    assert jac.a11 == dQ_inner
    assert jac.a12 == (dP * dQ_inner - 1).scale(RatFunc.from_tpoly(s.a).inverse())
    assert jac.a21 == a
    assert jac.a22 == dP
    assert jac.det().is_constant()


def test_classify_geometrically_affine():
    x, y, t = ring_vars(3, "R")
    flags = classify(Auto(x + y ** 3 + 1, y))
    assert flags.geom_affine and not flags.affine and not flags.additive


def test_classify_diff_affine_not_geom():
    x, y, t = ring_vars(3, "R")
    flags = classify(Auto(x + y ** 6, y))
    assert flags.diff_affine and not flags.geom_affine


def test_classify_swap():
    flags = classify(Auto.swap(5))
    assert flags.affine and flags.linear and not flags.translation
    assert not flags.triangular


def test_classify_elementary_and_triangular():
    x, y, t = ring_vars(5, "R")
    flags = classify(Auto(x + t * y ** 2, y))
    assert flags.elementary and flags.triangular
    flags = classify(Auto(2 * x + y ** 2, 3 * y + 1))
    assert flags.triangular and not flags.elementary


def test_classify_respects_ring_units():
    x, y, t = ring_vars(3, "K")
    phi = Auto(t * x, y)
    assert classify(phi).linear
    assert not classify(phi.to_ring("R")).affine


def check_flag_implications(flags, p):
    if flags.translation:
        assert flags.affine
    if flags.linear:
        assert flags.affine and flags.additive
    if flags.affine:
        assert flags.geom_affine
    if flags.additive:
        assert flags.geom_affine
    if flags.geom_affine and p > 0:
        assert flags.diff_affine


@pytest.mark.parametrize("p", [2, 3, 5])
def test_flag_implications_on_random_maps(p):
    rng = random.Random(p * 7)
    for _ in range(40):
        phi, letters = random_tame(rng, p)
        check_flag_implications(classify(phi), p)
        for l in letters:
            check_flag_implications(classify(l.payload), p)


@pytest.mark.parametrize("p", [2, 3])
def test_flag_implications_on_named_examples(p):
    x, y, t = ring_vars(p)
    for phi in [Auto(x + 1, y + t), Auto(y, x), Auto(x + y ** p, y), Auto(x + t * y ** (2 * p), y),
                Auto(x, y + x ** (p * p)), Auto(x + y ** 2, y)]:
        check_flag_implications(classify(phi), p)


def test_invert_examples():
    x, y, t = ring_vars(3, "R")
    assert invert(Auto.swap(3)) == Auto.swap(3)
    assert invert(Auto(x + y ** 2, y)) == Auto(x - y ** 2, y)


@pytest.mark.parametrize("p", [2, 3])
def test_invert_sigma_over_K(p):
    sigma, _ = make_sigma(sigma_params(p))
    sk = sigma.to_ring("K")
    inv = invert(sk)
    ident = Auto.identity(p)
    assert compose(sk, inv) == ident
    assert compose(inv, sk) == ident
    assert is_automorphism_over_R(sigma)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_invert_random_tame(p):
    rng = random.Random(100 + p)
    ident = Auto.identity(p)
    for _ in range(17):
        phi, _ = random_tame(rng, p, max_degree=6)
        inv = invert(phi)
        assert compose(phi, inv) == ident
        assert compose(inv, phi) == ident


def test_not_automorphism_over_R():
    x, y, t = ring_vars(3, "R")
    assert not is_automorphism_over_R(Auto(t * x, y))
    assert is_automorphism_over_R(Auto(x + t * y ** 2, y))


def apply_entrywise(phi, jac):
    return JacobianMatrix(*(phi.apply(e) for e in (jac.a11, jac.a12, jac.a21, jac.a22)))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_chain_rule(p):
    rng = random.Random(200 + p)
    for _ in range(10):
        phi, _ = random_tame(rng, p, max_letters=3, max_degree=6)
        psi, _ = random_tame(rng, p, max_letters=3, max_degree=6)
        lhs = jacobian(compose(phi, psi))
        rhs = apply_entrywise(phi, jacobian(psi)) @ jacobian(phi)
        assert lhs == rhs


@pytest.mark.parametrize("p", [2, 3])
def test_diff_affine_closed_under_composition(p):
    rng = random.Random(300 + p)
    for _ in range(10):
        phi = random_diff_affine(rng, p, max_degree=9)
        psi = random_diff_affine(rng, p, max_degree=9)
        assert classify(phi).diff_affine and classify(psi).diff_affine
        assert classify(compose(phi, psi)).diff_affine


@pytest.mark.parametrize("p", [2, 3, 5])
def test_jacobian_determinant_is_unit(p):
    rng = random.Random(400 + p)
    for _ in range(20):
        phi, _ = random_tame(rng, p)
        det = jacobian(phi).det()
        assert det.is_constant() and not det.is_zero()


def test_characteristic_zero_sanity():
    x, y = BiPoly.x(0), BiPoly.y(0)
    phi = Auto(x + y ** 2, y)
    assert classify(phi).diff_affine is False
    assert compose(phi, invert(phi)) == Auto.identity(0)
    flags = classify(Auto(x * 2 + y, y))
    assert flags.linear and flags.additive
