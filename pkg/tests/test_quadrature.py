"""Quadrature rules against scipy's roots_legendre and the exactness
degree they are supposed to carry."""

import math

import numpy as np
import pytest
from scipy.special import roots_legendre

from scarfcs import quadrature, scarf
from scarfcs.errors import DomainError


@pytest.mark.parametrize("order", [1, 2, 5, 40, 400])
def test_nodes_and_weights_match_scipy(order):
    rule = quadrature.gauss_legendre(order)
    ref_x, ref_w = roots_legendre(order)
    assert rule.order == order
    assert float(np.max(np.abs(rule.nodes - math.pi / 2 * ref_x))) < 1e-13
    assert float(np.max(np.abs(rule.weights - math.pi / 2 * ref_w))) < 1e-13


@pytest.mark.parametrize("order", [1, 3, 17, 400])
def test_weights_sum_to_interval_length(order):
    rule = quadrature.gauss_legendre(order)
    assert math.fsum(rule.weights) == pytest.approx(math.pi, rel=1e-14)


def test_polynomial_exactness_boundary():
    # order 6 integrates degree 10 exactly but must miss at degree 12
    rule = quadrature.gauss_legendre(6)
    want10 = 2.0 * (math.pi / 2) ** 11 / 11.0
    assert rule.integrate(rule.nodes ** 10) == pytest.approx(want10, rel=1e-14)
    want12 = 2.0 * (math.pi / 2) ** 13 / 13.0
    assert abs(rule.integrate(rule.nodes ** 12) / want12 - 1.0) > 1e-10


def test_rules_are_cached_and_read_only():
    rule = quadrature.gauss_legendre(10)
    assert quadrature.gauss_legendre(10) is rule
    with pytest.raises(ValueError):
        rule.nodes[0] = 0.0
    with pytest.raises(ValueError):
        rule.weights[0] = 0.0


@pytest.mark.parametrize("order", [0, -3])
def test_order_validation(order):
    with pytest.raises(DomainError):
        quadrature.gauss_legendre(order)


def test_inner_product_trig():
    rule = quadrature.gauss_legendre(64)
    f = lambda x: np.sin(2.0 * x)
    g = lambda x: np.cos(2.0 * x)
    assert quadrature.inner_product(f, g, rule) == pytest.approx(0.0, abs=1e-15)
    assert quadrature.inner_product(f, f, rule) == pytest.approx(
        math.pi / 2, rel=1e-13)


def test_inner_product_conjugates_first_argument():
    rule = quadrature.gauss_legendre(32)
    f = lambda x: np.exp(1j * x)
    g = lambda x: np.exp(2j * x)
    got = quadrature.inner_product(f, g, rule)
    assert isinstance(got, complex)
    # integral of e^{ix} over (-pi/2, pi/2) is 2
    assert got == pytest.approx(2.0 + 0.0j, abs=1e-13)


def test_doubling_order_leaves_converged_norm_alone():
    p = scarf.PotentialParams(12.0, 10.9)
    state = scarf.EigenstateId(scarf.ModelKind.RATIONAL, p, 3)
    f = lambda x: scarf.eigenfunction(state, x)
    i400 = quadrature.inner_product(f, f, quadrature.gauss_legendre(400))
    i800 = quadrature.inner_product(f, f, quadrature.gauss_legendre(800))
    assert abs(i400 - i800) < 1e-10


def test_schrodinger_residual_validation():
    p = scarf.PotentialParams(3.0, 1.2)
    state = scarf.EigenstateId(scarf.ModelKind.CONVENTIONAL, p, 0)
    with pytest.raises(DomainError):
        quadrature.schrodinger_residual(state, grid_points=5)
    with pytest.raises(DomainError):
        quadrature.schrodinger_residual(state, margin=0.0)
