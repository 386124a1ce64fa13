import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import kernel_vectors
from tangentcodes import linalg as la
from tangentcodes.codes import LinearCode, cyclic_code, hamming_code, is_cyclic, random_code
from tangentcodes.construct import (CodeFamily, ConstructionError, constant_tangent_variety, cyclic_assembly,
                                    cyclic_plus_noncyclic, interpolate_code_family, interpolate_isometries,
                                    interpolated_variety, is_hamming_matrix, is_monomial_matrix,
                                    isometry_morphism, random_monomial_matrix, variety_from_code, hamming_variety)
from tangentcodes.gf import Field
from tangentcodes.poly import PolyCapError, jacobian_at, parse_poly

F2 = Field(2, 1)
F3 = Field(3, 1)
F4 = Field(2, 2)
F5 = Field(5, 1)


def min_weight_supports(C):
    d = C.min_distance()
    words = C.words_of_weight(d)
    return d, sorted({tuple(i for i, x in enumerate(w) if x) for w in words})


def ternary_code():
    # [6,3] over GF(3) with d <= n - k
    C = random_code(Field(3, 2), 6, 3, np.random.default_rng(1), 1)
    assert C.min_distance() <= 3
    return C


# --- from a code ----------------------------------------------------------------------------------

def test_from_code_over_gf5_keeps_the_word_everywhere():
    rng = np.random.default_rng(3)
    C = random_code(F5, 5, 2, rng)
    d, supports = min_weight_supports(C)
    assert d <= C.n - C.k
    for sigma in supports[:3]:
        X = variety_from_code(C, sigma)
        v = X.meta["word"]
        assert [i for i, x in enumerate(v) if x] == list(sigma)
        assert X.tangent_code([0] * 5).code == C
        pts = X.rational_points(1)
        assert len(pts) == 5 ** C.k
        for a in pts:
            assert X.tangent_code(a).code.contains(v)


def test_dependent_column_relation():
    C = ternary_code()
    _, supports = min_weight_supports(C)
    X = variety_from_code(C, supports[0])
    nu, lam = X.meta["sigma_nu"], X.meta["lambda"]
    for a in X.rational_points(2)[:40]:
        J = X.jacobian_at(a)
        for row in J:
            rhs = 0
            for s, l in lam.items():
                rhs = X.field.add(rhs, X.field.mul(l, row[s]))
            assert row[nu] == rhs


def test_from_code_without_higher_terms_is_linear():
    C = ternary_code()
    _, supports = min_weight_supports(C)
    X = variety_from_code(C, supports[0], higher_terms={})
    assert all(f.degree() == 1 for f in X.F)
    assert all(X.tangent_code(a).code == C for a in X.rational_points(1))


def test_from_code_rejections():
    C = ternary_code()
    with pytest.raises(ConstructionError):
        variety_from_code(C, [0, 5, 4, 3, 2][:C.min_distance() + 1])
    with pytest.raises(ConstructionError):
        variety_from_code(LinearCode.full(C.field, 3), [0])
    _, supports = min_weight_supports(C)
    sigma = supports[0]
    X = variety_from_code(C, sigma)
    restricted = set(sigma) - set(X.meta["alpha"]) - {X.meta["sigma_nu"]}
    if restricted:
        s = min(restricted)
        with pytest.raises(ConstructionError):
            variety_from_code(C, sigma, higher_terms={(0, s): {2: 1}})
    s = next(j for j in range(6) if j not in X.meta["alpha"] and j != X.meta["sigma_nu"])
    with pytest.raises(ConstructionError):
        variety_from_code(C, sigma, higher_terms={(0, s): {1: 1}})


def test_from_code_hamming_gf2_support():
    C = hamming_code(F2, 2, 3)
    X = variety_from_code(C, [1, 2, 3])
    assert X.meta["word"] == [0, 1, 1, 1, 0, 0, 0]
    assert np.all(X.meta["normalized_parity"] == jacobian_at(X.F, [0] * 7))


# --- interpolation -------------------------------------------------------------------------------

def _random_family(F, q, n, r, count, rng):
    e = {2: 1, 4: 2, 3: 1}[q]
    elems = F.subfield_elements(e)
    pts = rng.permutation(list(itertools.product(elems, repeat=n)))[:count]
    mats = []
    for _ in pts:
        while True:
            H = [[elems[int(rng.integers(len(elems)))] for _ in range(n)] for _ in range(r)]
            if la.rank(F, H) == r:
                mats.append(H)
                break
    return CodeFamily(F, q, [tuple(int(x) for x in a) for a in pts], mats)


@settings(max_examples=15)
@given(seed=st.integers(0, 10 ** 6))
def test_interpolated_jacobians(seed):
    rng = np.random.default_rng(seed)
    fam = _random_family(F4, 4, 3, 1 + seed % 2, 5, rng)
    X = interpolated_variety(fam)
    for a, H in zip(fam.points, fam.matrices):
        assert X.contains(a)
        assert X.jacobian_at(a) == H
    # every point of GF(q)^n lies on X
    assert len(X.rational_points(1)) == 4 ** 3


def test_family_validation():
    with pytest.raises(ConstructionError):
        CodeFamily(F4, 4, [(0, 0)], [[[1, 1]], [[1, 0]]])
    with pytest.raises(ConstructionError):
        CodeFamily(F4, 2, [(F4.generator, 0)], [[[1, 1]]])
    with pytest.raises(ConstructionError):
        CodeFamily(F4, 4, [(0, 0)], [[[0, 0]]])
    with pytest.raises(ConstructionError):
        CodeFamily(F4, 4, [(0, 0), (0, 0)], [[[1, 0]], [[1, 0]]])


def test_interpolation_degree_cap():
    F = Field(2, 4)
    fam = CodeFamily(F, 16, [(0, 0, 0)], [[[1, 0, 0]]])
    with pytest.raises(PolyCapError):
        interpolate_code_family(fam)


def test_cyclic_plus_noncyclic_small():
    F = Field(2, 2)
    fam, gens = cyclic_plus_noncyclic(F, 2, 3, 1, 1)
    assert fam.q == 4 and len(fam.points) == 4
    assert max(g.degree() for g in gens) == 22
    cyc = [is_cyclic(LinearCode(F, 3, H, 2)) for H in fam.matrices]
    assert sum(cyc) == 3 and not cyc[-1]
    for a, H in zip(fam.points, fam.matrices):
        assert jacobian_at(gens, a) == H
    with pytest.raises(ConstructionError):
        cyclic_plus_noncyclic(F, 2, 3, 1, 40)


# --- constant tangent codes -----------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(4))
def test_constant_tangent_code_everywhere(seed):
    C = hamming_code(F4, 2, 3)
    X = constant_tangent_variety(C, seed=seed)
    pts = X.rational_points(1)
    assert len(pts) == 2 ** 4
    for a in X.rational_points(2)[:50]:
        assert X.tangent_code(a).code.with_field(1) == C


def test_constant_tangent_with_explicit_g():
    C = LinearCode(F3, 3, [[1, 1, 0]])
    X = constant_tangent_variety(C, g=[parse_poly(F3, "x1^2*x3", 3)])
    assert X.F == [parse_poly(F3, "x1 + x2 + x1^6*x3^3", 3)]
    assert X.section is None
    assert all(X.tangent_code(a).code == C for a in X.rational_points(1))
    with pytest.raises(ConstructionError):
        constant_tangent_variety(C, g=[])


def test_section_points_match_brute_force():
    C = LinearCode(F3, 3, [[1, 0, 2]])
    X = constant_tangent_variety(C, seed=5)
    brute = [a for a in itertools.product(range(3), repeat=3) if X.contains(a)]
    assert sorted(X.rational_points(1)) == sorted(brute)


def test_cyclic_assembly():
    F = Field(2, 2)
    out = cyclic_assembly(F, 2, 3)
    assert len(out) == 8
    for spec, X in out:
        C = cyclic_code(F, spec)
        for a in X.rational_points(1)[:4]:
            assert X.tangent_code(a).code.with_field(C.m) == C


# --- Hamming varieties -----------------------------------------------------------------------------

def test_hamming_variety_binary():
    X = hamming_variety(F2, 2, 3)
    C = hamming_code(F2, 2, 3)
    pts = X.rational_points(1)
    assert len(pts) == 16
    assert all(X.tangent_code(a).code == C for a in pts)


def test_hamming_variety_ternary_counts():
    X = hamming_variety(F3, 3, 2)
    pts = X.rational_points(1)
    ham = [a for a in pts if is_hamming_matrix(F3, X.jacobian_at(a), 2)]
    assert len(pts) == 9 and len(ham) == 6
    w = X.meta["universal_word"]
    assert all(X.tangent_code(a).code.contains(w) for a in pts)


def test_hamming_variety_over_gf9():
    F9 = Field(3, 2)
    X = hamming_variety(F9, 3, 2)
    pts = X.rational_points(2)
    ham = [a for a in pts if is_hamming_matrix(F9, X.jacobian_at(a), 2)]
    assert len(pts) == 81 and len(ham) == 9 * 8


def test_is_hamming_matrix():
    assert is_hamming_matrix(F2, hamming_code(F2, 2, 3).H, 3)
    assert not is_hamming_matrix(F3, [[1, 2], [0, 0]], 2)
    assert not is_hamming_matrix(F3, [[1, 0, 0], [0, 1, 0]], 2)


# --- isometries --------------------------------------------------------------------------------

def test_isometry_differential():
    F = F5
    psis = [parse_poly(F, s, 3) for s in ["x1 + 1", "2", "x3^2 + x2"]]
    sigma = [2, 0, 1]
    mor = isometry_morphism(psis, sigma)
    for a in itertools.product(range(5), repeat=3):
        ap = [F.frobenius(x) for x in a]
        D = mor.differential(a)
        want = [[0] * 3 for _ in range(3)]
        for i in range(3):
            want[i][sigma[i]] = psis[sigma[i]].evaluate(ap)
        if not mor.defined_at(a):
            continue
        assert D == want
        assert is_monomial_matrix(F, D)
    with pytest.raises(ConstructionError):
        isometry_morphism(psis, [0, 0, 1])


def test_isometries_preserve_weights():
    psis = [parse_poly(F5, "x1 + 1", 2), parse_poly(F5, "3", 2)]
    mor = isometry_morphism(psis, [1, 0])
    C = LinearCode(F5, 2, [[1, 2]])
    for a in itertools.product(range(5), repeat=2):
        if not mor.defined_at(a):
            continue
        D = mor.differential(a)
        image = {tuple(la.matvec(F5, D, v)) for v in kernel_vectors(F5, C.H, 2, 1)}
        assert sorted(sum(1 for x in v if x) for v in image) == [0, 2, 2, 2, 2]


@pytest.mark.parametrize("seed", range(3))
def test_interpolate_isometries(seed):
    rng = np.random.default_rng(seed)
    pts = [tuple(int(x) for x in rng.integers(0, 4, 2)) for _ in range(6)]
    pts = list(dict.fromkeys(pts))
    mats = [random_monomial_matrix(F4, 2, 2, rng) for _ in pts]
    mor = interpolate_isometries(F4, 4, pts, mats)
    for a, A in zip(pts, mats):
        assert mor.differential(a) == A
    with pytest.raises(ConstructionError):
        interpolate_isometries(F4, 4, pts[:1], [[[1, 1], [1, 1]]])
