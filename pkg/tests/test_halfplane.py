from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from k3walls import (K3Config, MukaiVector, Ordering, StabilityPoint,
                     expected_shift, find_holes_on_ray, is_valid_point,
                     numerical_wall, ray_intersection, realpart_vanishing_alpha2,
                     reduced_charge, slope_compare, slope_mu_beta)

ints = st.integers(min_value=-20, max_value=20)
vectors = st.builds(MukaiVector, ints, ints, ints)
rationals = st.fractions(min_value=-3, max_value=3, max_denominator=24)
positive_rationals = st.fractions(min_value=F(1, 64), max_value=4, max_denominator=64)


def test_point_validation():
    with pytest.raises(ValueError):
        StabilityPoint(F(0), F(0))
    with pytest.raises(ValueError):
        StabilityPoint(F(0), F(-1))
    with pytest.raises(TypeError):
        StabilityPoint(0.5, F(1))


def test_reduced_charge_values(cfg16, v213):
    z = reduced_charge(cfg16, StabilityPoint(F(0), F(1)), v213)
    assert (z.re, z.im_over_alpha) == (13, 16)
    z = reduced_charge(cfg16, StabilityPoint(F(1, 3), F(1, 72)), MukaiVector(3, 1, 3))
    assert (z.re, z.im_over_alpha) == (0, 0)


@given(beta=rationals, alpha2=positive_rationals, s=ints)
def test_vertical_locus_kills_imaginary_part(beta, alpha2, s):
    cfg = K3Config(16)
    u = MukaiVector(beta.denominator, beta.numerator, s)  # slope exactly beta
    z = reduced_charge(cfg, StabilityPoint(beta, alpha2), u)
    assert z.im_over_alpha == 0


def test_slope_mu_beta(v213):
    assert slope_mu_beta(v213, F(1, 2)) == 0
    assert slope_mu_beta(MukaiVector(3, 1, 3), F(1, 4)) == F(1, 12)
    assert slope_mu_beta(MukaiVector(0, 1, 0), F(7, 3)) is None


def test_expected_shift(v213):
    assert expected_shift(v213, F(1, 4)) == 0
    assert expected_shift(v213, F(3, 4)) == 1
    assert expected_shift(v213, F(1, 2)) == 1  # slope zero sits in the shifted part


def test_slope_compare_brute_force(cfg16, v213):
    pt = StabilityPoint(F(1, 4), F(1))
    u = MukaiVector(3, 1, 3)
    zu = reduced_charge(cfg16, pt, u)
    zv = reduced_charge(cfg16, pt, v213)
    # independent rational evaluation of -re/im for both classes
    mu_u = -zu.re / zu.im_over_alpha
    mu_v = -zv.re / zv.im_over_alpha
    assert mu_u < mu_v
    assert slope_compare(cfg16, pt, u, v213) is Ordering.LESS
    assert slope_compare(cfg16, pt, v213, u) is Ordering.GREATER
    assert slope_compare(cfg16, pt, u, u) is Ordering.EQUAL


def test_slope_compare_on_wall_is_equal(cfg16, v213):
    wall = numerical_wall(cfg16, v213, MukaiVector(3, 1, 3))
    beta = F(1, 8)
    alpha2 = ray_intersection(wall, beta)
    pt = StabilityPoint(beta, alpha2)
    assert slope_compare(cfg16, pt, MukaiVector(3, 1, 3), v213) is Ordering.EQUAL


@given(k=st.integers(min_value=1, max_value=9))
def test_slope_compare_scaling_invariance(k):
    cfg = K3Config(16)
    pt = StabilityPoint(F(1, 4), F(2))
    u = MukaiVector(3, 1, 3)
    v = MukaiVector(2, 1, 3)
    assert slope_compare(cfg, pt, k * u, v) is slope_compare(cfg, pt, u, v)


def test_slope_compare_rejects_nonpositive_imaginary(cfg16, v213):
    pt = StabilityPoint(F(3, 4), F(1))  # Im Z(v) < 0 here
    with pytest.raises(ValueError):
        slope_compare(cfg16, pt, v213, MukaiVector(1, 1, 8))


def test_holes_on_quarter_ray_empty(cfg16):
    assert find_holes_on_ray(cfg16, F(1, 4)) == []


def test_holes_on_two_thirds_ray(cfg16):
    holes = find_holes_on_ray(cfg16, F(2, 3))
    assert [(h.delta, h.alpha2_threshold) for h in holes] == [
        (MukaiVector(3, 2, 11), F(1, 72))
    ]


def test_holes_on_one_third_ray(cfg16):
    holes = find_holes_on_ray(cfg16, F(1, 3))
    assert [(h.delta, h.alpha2_threshold) for h in holes] == [
        (MukaiVector(3, 1, 3), F(1, 72))
    ]


@given(beta=rationals)
def test_hole_roots_satisfy_defining_equations(beta):
    cfg = K3Config(16)
    for hole in find_holes_on_ray(cfg, beta):
        d = hole.delta
        assert d.r > 0
        assert 16 * d.c * d.c - 2 * d.r * d.s == -2
        assert F(d.c, d.r) == beta
        # closed form of the threshold for a slope-zero root
        assert hole.alpha2_threshold == F(2, 16 * d.r * d.r)


@given(beta=rationals)
def test_hole_points_lie_on_the_root_wall(beta):
    cfg = K3Config(16)
    v = MukaiVector(2, 1, 3)
    for hole in find_holes_on_ray(cfg, beta):
        if (v.r * hole.delta.c - v.c * hole.delta.r == 0
                or hole.delta == v):
            continue
        wall = numerical_wall(cfg, v, hole.delta)
        assert wall is not None
        assert ray_intersection(wall, beta) == hole.alpha2_threshold


def test_validity(cfg16):
    assert is_valid_point(cfg16, StabilityPoint(F(0), F(1)))
    assert not is_valid_point(cfg16, StabilityPoint(F(1, 3), F(1, 72)))
    assert not is_valid_point(cfg16, StabilityPoint(F(1, 3), F(1, 100)))
    assert is_valid_point(cfg16, StabilityPoint(F(1, 3), F(1, 71)))
    # alpha^2 * H^2 >= 2 is always enough
    assert is_valid_point(cfg16, StabilityPoint(F(1, 3), F(1, 8)))
    assert is_valid_point(cfg16, StabilityPoint(F(-7, 13), F(1, 8)))


def test_structure_sheaf_hole_at_origin(cfg16):
    # the trivial-bundle class (1,0,1) obstructs small alpha on the beta=0 ray
    holes = find_holes_on_ray(cfg16, F(0))
    assert [(h.delta, h.alpha2_threshold) for h in holes] == [
        (MukaiVector(1, 0, 1), F(1, 8))
    ]
    assert not is_valid_point(cfg16, StabilityPoint(F(0), F(1, 8) - F(1, 1000)))


@given(u=vectors, w=vectors, beta=rationals, alpha2=positive_rationals)
def test_charge_additivity(u, w, beta, alpha2):
    cfg = K3Config(16)
    pt = StabilityPoint(beta, alpha2)
    zu = reduced_charge(cfg, pt, u)
    zw = reduced_charge(cfg, pt, w)
    zs = reduced_charge(cfg, pt, u + w)
    assert zs.re == zu.re + zw.re
    assert zs.im_over_alpha == zu.im_over_alpha + zw.im_over_alpha


def test_threshold_requires_positive_rank(cfg16):
    with pytest.raises(ValueError):
        realpart_vanishing_alpha2(cfg16, MukaiVector(0, 1, 0), F(1, 2))
