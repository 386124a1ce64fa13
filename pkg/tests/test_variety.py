import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import kernel_vectors
from tangentcodes.codes import LinearCode, direct_sum_code, hamming_code
from tangentcodes.gf import Field
from tangentcodes.poly import parse_poly
from tangentcodes.suites import loci_varieties
from tangentcodes.variety import (AffineVariety, EnumerationBudgetError, GraphSection, NotOnVarietyError,
                                  VarietyError, deformation_family, deformation_sample, extend_variety,
                                  fibered_product_variety, original_parameters, product_variety, puncture_variety,
                                  shorten_variety, variety_operation)

F3 = Field(3, 1)
F4 = Field(2, 2)
F9 = Field(3, 2)


def V(F, gens, n, e=1, **kw):
    return AffineVariety(F, e, [parse_poly(F, g, n) for g in gens], **kw)


def circle(F=F3):
    return V(F, ["x1^2 + x2^2 - 1"], 2, dim_hint=1)


# --- points and tangent codes ------------------------------------------------------------------

def test_circle_over_gf3():
    X = circle()
    assert sorted(X.rational_points()) == [(0, 1), (0, 2), (1, 0), (2, 0)]
    assert X.jacobian_at((1, 0)) == [[2, 0]]
    T = X.tangent_code((1, 0))
    assert T.delta == 1 and T.code.H == [[1, 0]]
    assert T.code.generator_matrix() == [[0, 1]]


def test_points_off_the_variety_are_rejected():
    X = circle()
    with pytest.raises(NotOnVarietyError):
        X.tangent_code((1, 1))
    with pytest.raises(NotOnVarietyError):
        X.locus_membership("rank_leq", (1, 1), r=0)


def test_tangent_code_is_defined_over_the_point_field():
    X = circle(F9)
    pts = X.rational_points(2)
    deg2 = [a for a in pts if X.delta(a) == 2]
    assert deg2
    for a in deg2[:5]:
        T = X.tangent_code(a).code
        assert T.m == 2
        assert set(kernel_vectors(F9, T.H, 2, 2)) == {tuple(int(x) for x in w) for w in T.codewords()}


def test_gradient_code_is_the_dual():
    X = circle(F9)
    for a in X.rational_points(2)[:6]:
        assert X.gradient_code(a).code == X.tangent_code(a).code.dual()


def test_section_enumeration_matches_brute_force():
    F = Field(2, 3)
    gens = ["x2 - x1^2", "x3 - x1^3"]
    sec = GraphSection((0,), {1: parse_poly(F, "x1^2", 3), 2: parse_poly(F, "x1^3", 3)})
    A = V(F, gens, 3, section=sec)
    B = V(F, gens, 3)
    assert sorted(A.rational_points(3)) == sorted(B.rational_points(3))
    assert len(A.rational_points(3)) == 8


def test_enumeration_budget():
    X = V(F4, ["x1 + x2 + x3 + x4"], 4)
    with pytest.raises(EnumerationBudgetError):
        X.rational_points(2, budget=100)


def test_generators_must_be_defined_over_gf_q():
    with pytest.raises(VarietyError):
        V(F4, ["g*x1"], 1)
    with pytest.raises(VarietyError):
        AffineVariety(F4, 1, [])


def test_sample_points_lie_on_the_variety():
    X = circle(F9)
    pts = X.sample_points(2, 10, np.random.default_rng(0))
    assert len(pts) == 10 and all(X.contains(a) for a in pts)


# --- smoothness, dimension, puncturing ---------------------------------------------------------

def test_double_point_is_singular():
    X = V(F3, ["x1^2"], 1, dim_hint=0)
    assert not X.is_smooth((0,))


def test_sampled_dimension():
    X = circle()
    assert X.dimension() == (1, "hint")
    Y = V(F3, ["x1^2 + x2^2 - 1"], 2)
    assert Y.dimension() == (1, "sampled-dimension")


def test_puncturing_etale_examples():
    X = V(F3, ["x3"], 3)
    a = (0, 0, 0)
    assert not X.puncturing_etale_at([0], a)
    assert X.puncturing_etale_at([2], a)


def test_puncture_twisted_cubic():
    X = V(F3, ["x2 - x1^2", "x3 - x1^3"], 3)
    Y = puncture_variety(X, [0])
    assert Y.n == 2
    assert Y.F == [parse_poly(F3, "x1^3 - x2^2", 2)]
    Z = variety_operation("shorten", X, [0])
    assert Z.F == [parse_poly(F3, "x1", 2), parse_poly(F3, "x2", 2)]


def test_shorten_drops_vanishing_generators():
    X = V(F3, ["x1*x2", "x2 - x3"], 3)
    Y = shorten_variety(X, [0])
    assert Y.F == [parse_poly(F3, "x1 - x2", 2)]


# --- operations and their tangent codes -----------------------------------------------------------

def test_extension_and_product_tangent_codes():
    X = circle(F9)
    pts = X.rational_points(1)
    E, P = extend_variety(X), product_variety(X, X)
    for a, b in itertools.product(pts, repeat=2):
        T = X.tangent_code(a).code
        s = F9.neg(F9.add(*a))
        assert E.tangent_code(list(a) + [s]).code == T.extend()
        assert P.tangent_code(a + b).code == direct_sum_code(T, X.tangent_code(b).code)
    assert P.dim_hint == 2


def test_fibered_product_on_the_diagonal():
    X = circle(F9)
    g = [parse_poly(F9, "x1", 2)]
    Z = fibered_product_variety(X, g)
    for a in X.rational_points(1):
        assert Z.contains(a + a)
    with pytest.raises(VarietyError):
        variety_operation("blowup", X)


def test_product_needs_matching_fields():
    with pytest.raises(VarietyError):
        product_variety(circle(F3), circle(F9))


# --- loci ---------------------------------------------------------------------------------------

@pytest.mark.parametrize("idx", range(4))
def test_min_distance_locus_matches_definition(idx):
    X = loci_varieties()[idx]
    for a in X.rational_points(2):
        for d in (1, 2):
            assert X.locus_membership("min_dist_leq", a, d=d) == X.locus_by_definition("min_dist_leq", a, d=d)


def test_min_distance_locus_bounds():
    X = loci_varieties()[1]
    a = X.rational_points(1)[0]
    assert X.locus_membership("min_dist_leq", a, d=2)  # d > m
    with pytest.raises(VarietyError):
        X.locus_membership("min_dist_leq", a, d=4)
    with pytest.raises(VarietyError):
        X.locus_membership("min_dist_leq", a, d=0)


def test_singleton_bound_makes_every_point_a_member():
    X = V(F4, ["x1*x2 + x3", "x2*x3 + x4"], 4, dim_hint=2)
    for a in X.rational_points(1):
        assert X.locus_membership("min_dist_leq", a, d=X.n - 2 + 1)


@pytest.mark.parametrize("kind,params", [("rank_leq", {"r": 0}), ("rank_leq", {"r": 1}), ("nmds", {})])
def test_other_loci_match_definitions(kind, params):
    for X in loci_varieties():
        for a in X.rational_points(1):
            assert X.locus_membership(kind, a, **params) == X.locus_by_definition(kind, a, **params)


def test_constant_code_locus():
    X = V(F4, ["x1 + x2*x3", "x2 + x3^2"], 3)
    C = LinearCode(F4, 3, [[1, 0, 0], [0, 1, 0]])
    for a in X.rational_points(2):
        assert X.locus_membership("constant_code", a, code=C) == X.locus_by_definition("constant_code", a, code=C)
    assert X.locus_membership("constant_code", (0, 0, 0), code=C)
    with pytest.raises(VarietyError):
        X.locus_membership("unknown", (0, 0, 0))


def test_hamming_constant_code_locus():
    F = Field(2, 1)
    C = hamming_code(F, 2, 3)
    X = AffineVariety(F, 1, [parse_poly(F, " + ".join(f"x{j + 1}" for j in range(7) if r[j]), 7) for r in C.H])
    assert all(X.locus_membership("constant_code", a, code=C) for a in X.rational_points()[:4])


# --- deformations ---------------------------------------------------------------------------------

def test_deformation_family_at_original_parameters():
    F = Field(5, 2)
    X = V(F, ["x1^2 + x2^2 - 1"], 2, dim_hint=1)
    a = X.rational_points(1)[0]
    G = deformation_family(X, a, original_parameters(X))
    assert G == X.F


@given(seed=st.integers(0, 1000))
def test_deformations_keep_the_point(seed):
    F = Field(5, 2)
    X = V(F, ["x1^2 + x2^2 - 1"], 2, dim_hint=1)
    a = next(b for b in X.rational_points(2) if all(b))
    s = deformation_sample(X, a, seed, 5, 2, d=2, k=1)
    assert s.on_variety == 5
    assert s.all_ok <= min(s.full_rank, s.distance_ok)


def test_deformation_parameter_mismatch():
    X = circle()
    with pytest.raises(VarietyError):
        deformation_family(X, (1, 0), [[1]])

