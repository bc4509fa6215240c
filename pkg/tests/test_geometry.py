import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critlat.geometry import (
    P_MAX,
    BallClass,
    DyadicDomain,
    Point2,
    boundary_parameter,
    boundary_point,
    circumradius,
    classify,
    contains,
    log_gamma,
    p_functional,
    polar_boundary_point,
    validate_exponent,
    volume,
)

from oracles import area_by_quadrature

P0 = 2.5724951543301966
exponents = st.floats(1.0, P_MAX)
angles = st.floats(0.0, 2 * math.pi, exclude_max=True)


@pytest.mark.parametrize("bad", [0.5, 0.999, 64.5, math.inf, math.nan, -2.0])
def test_exponent_range(bad):
    with pytest.raises(ValueError):
        validate_exponent(bad)
    with pytest.raises(ValueError):
        DyadicDomain(bad)


def test_domain_level_validation():
    with pytest.raises(ValueError):
        DyadicDomain(2.0, -1)
    with pytest.raises(ValueError):
        DyadicDomain(2.0, 1.5)
    with pytest.raises(ValueError):
        DyadicDomain(2.0).halved()


def test_point_rejects_non_finite():
    with pytest.raises(ValueError):
        Point2(math.nan, 0.0)


@pytest.mark.parametrize(
    "pt, p",
    [((1.0, 0.0), 2.0), ((2**-0.5, 2**-0.5), 2.0), ((0.5, 0.5 * 3**0.5), 2.0)],
)
def test_p_functional_unit(pt, p):
    assert p_functional(Point2(*pt), p) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("p", [1.0, 2.0, 3.0, 5.0, 17.5])
def test_p_functional_sigma_point(p):
    # (1/2)^p + (sigma_p/2)^p = (1 + 2^p - 1) / 2^p
    s = (2**p - 1) ** (1 / p)
    assert p_functional(Point2(0.5, 0.5 * s), p) == pytest.approx(1.0, abs=1e-14)


def test_p_functional_zero_coordinates():
    assert p_functional(Point2(0.0, 0.0), 64.0) == 0.0
    assert p_functional(Point2(0.0, -0.5), 3.0) == pytest.approx(0.125, rel=1e-15)


def test_contains_examples():
    assert contains(DyadicDomain(2.0, 0), Point2(0.0, 0.0), strict=True)
    assert not contains(DyadicDomain(2.0, 1), Point2(2.0, 0.0), strict=True)
    assert contains(DyadicDomain(2.0, 1), Point2(2.0, 0.0), strict=False)
    assert contains(DyadicDomain(1.0, 2), Point2(1.5, 1.5), strict=True)


def test_boundary_point_examples():
    b = boundary_point(DyadicDomain(2.0), 0.0)
    assert (b.x, b.y) == (1.0, 0.0)
    b = boundary_point(DyadicDomain(4.0), math.pi / 4)
    assert b.x == pytest.approx(2**-0.25, rel=1e-15)
    assert b.y == pytest.approx(2**-0.25, rel=1e-15)
    b = boundary_point(DyadicDomain(2.0, 1), math.pi / 2)
    assert b.x == pytest.approx(0.0, abs=1e-15)
    assert b.y == 2.0


@pytest.mark.parametrize(
    "p, m, expected",
    [(2.0, 0, 1.0), (1.0, 0, 1.0), (64.0, 0, 2 ** (0.5 - 1 / 64)), (3.0, 2, 4 * 2 ** (0.5 - 1 / 3))],
)
def test_circumradius(p, m, expected):
    assert circumradius(DyadicDomain(p, m)) == pytest.approx(expected, rel=1e-15)


def test_circumradius_large_p_value():
    assert circumradius(DyadicDomain(64.0)) == pytest.approx(1.3989, abs=1e-4)


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0, 8.0, 64.0])
def test_circumradius_is_farthest_boundary_point(p):
    dom = DyadicDomain(p)
    far = max(boundary_point(dom, 2 * math.pi * k / 4000).norm() for k in range(4000))
    assert far <= circumradius(dom) * (1 + 1e-14)
    assert far >= circumradius(dom) * (1 - 1e-6)


def test_log_gamma_examples():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-14)
    assert log_gamma(2.0) == pytest.approx(0.0, abs=1e-14)
    assert log_gamma(1.5) == pytest.approx(math.log(math.sqrt(math.pi) / 2), abs=1e-14)
    assert log_gamma(1.5) == pytest.approx(-0.1207822, abs=1e-7)


def test_log_gamma_against_stdlib():
    for k in range(3501):
        x = 0.5 + k * 1e-3
        assert abs(log_gamma(x) - math.lgamma(x)) <= 1e-12, x


@pytest.mark.parametrize("x", [1e-3, 0.1, 0.3, 7.5, 20.0])
def test_log_gamma_outside_core_range(x):
    assert log_gamma(x) == pytest.approx(math.lgamma(x), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("x", [0.0, -1.0])
def test_log_gamma_rejects_nonpositive(x):
    with pytest.raises(ValueError):
        log_gamma(x)


def test_volume_examples():
    assert volume(DyadicDomain(1.0)) == pytest.approx(2.0, rel=1e-12)
    assert volume(DyadicDomain(2.0)) == pytest.approx(math.pi, rel=1e-12)
    assert volume(DyadicDomain(2.0, 1)) == pytest.approx(4 * math.pi, rel=1e-12)


@pytest.mark.parametrize("p", [1.0, 1.3, 2.0, 2.5725, 4.0, 10.0])
def test_volume_against_quadrature(p):
    assert volume(DyadicDomain(p)) == pytest.approx(area_by_quadrature(p), rel=1e-7)


def test_volume_monotone_and_bounded():
    vs = [volume(DyadicDomain(1.0 + 63.0 * k / 500)) for k in range(501)]
    assert all(a < b for a, b in zip(vs, vs[1:]))
    assert vs[0] == pytest.approx(2.0, rel=1e-12)
    assert vs[-1] < 4.0


@pytest.mark.parametrize("m", range(0, 17))
def test_volume_scaling(m):
    v0 = volume(DyadicDomain(2.7))
    assert volume(DyadicDomain(2.7, m)) == pytest.approx(4**m * v0, rel=1e-12)


@pytest.mark.parametrize(
    "p, cls",
    [
        (1.0, BallClass.MINKOWSKI),
        (1.5, BallClass.MINKOWSKI),
        (1.999999, BallClass.MINKOWSKI),
        (2.0, BallClass.DAVIS),
        (2.57, BallClass.DAVIS),
        (P0, BallClass.CHEBYSHEV_COHN),
        (3.0, BallClass.CHEBYSHEV_COHN),
    ],
)
def test_classify(p, cls):
    assert classify(p, P0) is cls


@settings(max_examples=300)
@given(exponents, angles, st.integers(0, 16))
def test_boundary_point_on_boundary(p, t, m):
    dom = DyadicDomain(p, m)
    b = boundary_point(dom, t)
    assert abs(p_functional(b.ldexp(-m), p) - 1.0) <= 1e-12


@settings(max_examples=300)
@given(exponents, angles)
def test_polar_boundary_point(p, phi):
    dom = DyadicDomain(p)
    b = polar_boundary_point(dom, phi)
    assert abs(p_functional(b, p) - 1.0) <= 1e-12
    assert math.remainder(math.atan2(b.y, b.x) - phi, 2 * math.pi) == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=200)
@given(st.floats(1.0, 8.0), st.floats(0.05, 2 * math.pi - 0.05))
def test_boundary_parameter_inverts(p, t):
    # away from the axes the parameterization is well conditioned
    if min(abs(math.sin(t)), abs(math.cos(t))) < 0.05:
        return
    b = boundary_point(DyadicDomain(p), t)
    assert math.remainder(boundary_parameter(b, p) - t, 2 * math.pi) == pytest.approx(0.0, abs=1e-9)


@settings(max_examples=300)
@given(exponents, st.floats(-3, 3), st.floats(-3, 3), st.integers(0, 3), st.booleans())
def test_membership_symmetry_and_consistency(p, x, y, m, strict):
    dom = DyadicDomain(p, m)
    pt = Point2(x, y)
    assert contains(dom, pt, strict) == contains(dom, -pt, strict)
    if contains(dom, pt, strict=True):
        assert contains(dom, pt, strict=False)


def test_convexity_spot_check():
    import random

    rng = random.Random(1234)
    for _ in range(1000):
        p = rng.uniform(1.0, P_MAX)
        dom = DyadicDomain(p)
        a = boundary_point(dom, rng.uniform(0, 2 * math.pi))
        b = boundary_point(dom, rng.uniform(0, 2 * math.pi))
        lam = rng.random()
        mid = Point2(lam * a.x + (1 - lam) * b.x, lam * a.y + (1 - lam) * b.y)
        assert p_functional(mid, p) <= 1 + 1e-12
        # doubled body stays convex and symmetric
        d2 = DyadicDomain(p, 1)
        assert p_functional(mid.ldexp(1).ldexp(-d2.m), p) <= 1 + 1e-12
