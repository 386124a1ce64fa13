from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import kernel_vectors, min_weight, span_vectors
from tangentcodes import linalg as la
from tangentcodes.codes import (CodeError, LinearCode, ZeroCodeError, cyclic_code, direct_sum_code, divisor_counts,
                                divisors_of, equal_up_to_extension, hamming_code, hamming_parity, is_cyclic,
                                is_near_mds, near_mds_rank_criterion, projective_points, random_code, u_u_plus_v)
from tangentcodes.gf import Field

F2 = Field(2, 1)
F4 = Field(2, 2)
F3 = Field(3, 1)


def params(C):
    return C.n, C.k, C.min_distance()


def codeword_set(C):
    return {tuple(int(x) for x in r) for r in C.codewords()}


# --- basics and enumeration ------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(6))
def test_codewords_match_kernel_search(seed):
    rng = np.random.default_rng(seed)
    F = [F2, F3, F4][seed % 3]
    n = 5
    C = random_code(F, n, 2 + seed % 2, rng, F.M)
    brute = set(kernel_vectors(F, C.H, n, C.m))
    assert codeword_set(C) == brute
    assert C.min_distance() == min_weight(brute)
    assert C.min_distance_by_columns() == C.min_distance_by_enumeration()
    assert len(brute) == C.q ** C.k


def test_generator_spans_the_code():
    C = hamming_code(F2, 2, 3)
    assert span_vectors(F2, C.generator_matrix(), 1) == codeword_set(C)


def test_rref_normal_form_makes_equality_literal():
    H1 = [[1, 1, 0, 1], [0, 1, 1, 1]]
    H2 = [[1, 0, 1, 0], [0, 1, 1, 1]]
    assert LinearCode(F2, 4, H1) == LinearCode(F2, 4, H2)


def test_ragged_and_out_of_field_entries():
    with pytest.raises(CodeError):
        LinearCode(F2, 3, [[1, 0]])
    with pytest.raises(CodeError):
        LinearCode(F4, 2, [[1, F4.generator]], 1)


def test_zero_code_distance():
    with pytest.raises(ZeroCodeError):
        LinearCode(F2, 2, [[1, 0], [0, 1]]).min_distance()


def test_scalar_extension_keeps_row_space():
    C = hamming_code(F4, 2, 3)
    D = C.with_field(2)
    assert D.q == 4 and D.k == C.k
    assert equal_up_to_extension(C, D)
    assert C != D


# --- Hamming codes and operations -------------------------------------------------------------

def test_hamming_parameters():
    assert params(hamming_code(F2, 2, 3)) == (7, 4, 3)
    assert params(hamming_code(F3, 3, 2)) == (4, 2, 3)
    assert params(hamming_code(F4, 4, 2)) == (5, 3, 3)


def test_hamming_column_layout():
    H = hamming_parity(F2, 2, 3)
    cols = la.transpose(H)
    assert cols[:4] == [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, 1]]
    assert len(projective_points(F3, 3, 2)) == 4


def test_dual_extend_shorten_of_hamming():
    C = hamming_code(F2, 2, 3)
    assert params(C.dual()) == (7, 3, 4)
    assert params(C.extend()) == (8, 4, 4)
    assert params(C.shorten([0])) == (6, 3, 3)


def test_extend_small_example():
    C = LinearCode.from_generator(F2, [[1, 1]], 2)
    assert codeword_set(C.extend()) == {(0, 0, 0), (1, 1, 0)}


def test_puncture_and_shorten_by_brute_force():
    C = hamming_code(F3, 3, 2)
    words = codeword_set(C)
    assert codeword_set(C.puncture([1])) == {w[:1] + w[2:] for w in words}
    assert codeword_set(C.shorten([1])) == {w[:1] + w[2:] for w in words if w[1] == 0}
    with pytest.raises(CodeError):
        C.puncture(range(4))


@given(seed=st.integers(0, 10 ** 6), g=st.integers(0, 4))
def test_duality_of_puncturing_and_shortening(seed, g):
    rng = np.random.default_rng(seed)
    C = random_code(F3, 5, 1 + seed % 3, rng)
    assert C.puncture([g]).dual() == C.dual().shorten([g])
    assert C.dual().dual() == C


def test_direct_sum_and_u_u_plus_v():
    R = LinearCode.from_generator(F2, [[1, 1, 1, 1]], 4)
    E = LinearCode(F2, 4, [[1, 1, 1, 1]])
    S = direct_sum_code(R, E)
    assert params(S) == (8, 4, 2)
    U = u_u_plus_v(E, R)
    assert U.n == 8 and U.k == E.k + R.k
    assert U.min_distance() == min(2 * E.min_distance(), R.min_distance())


@given(seed=st.integers(0, 10 ** 6))
def test_u_u_plus_v_distance(seed):
    rng = np.random.default_rng(seed)
    C1 = random_code(F2, 4, 1 + seed % 3, rng)
    C2 = random_code(F2, 4, 1 + (seed // 3) % 3, rng)
    assert u_u_plus_v(C1, C2).min_distance() == min(2 * C1.min_distance(), C2.min_distance())


# --- near MDS ------------------------------------------------------------------------------------

def test_near_mds_examples():
    assert is_near_mds(LinearCode(F2, 4, [[1, 1, 0, 0], [0, 0, 1, 1]]))
    rep = LinearCode.from_generator(F2, [[1, 1, 1]], 3)
    assert not is_near_mds(rep)
    assert not near_mds_rank_criterion(rep)
    with pytest.raises(CodeError):
        is_near_mds(LinearCode.full(F2, 3))


@given(seed=st.integers(0, 10 ** 6))
def test_near_mds_criteria_agree(seed):
    rng = np.random.default_rng(seed)
    C = random_code(F4, 5, 2 + seed % 2, rng, 2)
    assert is_near_mds(C) == near_mds_rank_criterion(C)


# --- cyclic codes ----------------------------------------------------------------------------------

def test_divisors_of_t3_minus_one():
    specs = divisors_of(F4, 2, 3)
    assert len(specs) == 8
    assert divisor_counts(specs) == {v: comb(3, v) for v in range(4)}
    g = next(s for s in specs if s.g == (1, 1))  # t - 1 = t + 1
    C = cyclic_code(F4, g)
    assert (C.n, C.k) == (3, 2)
    words = codeword_set(C.with_field(1))
    assert len(words) == 4 and all(sum(w) % 2 == 0 for w in words)
    assert C.with_field(1) == LinearCode(F2, 3, [[1, 1, 1]])


def test_cyclic_codes_are_cyclic():
    F16 = Field(2, 4)
    for spec in divisors_of(F16, 2, 5):
        C = cyclic_code(F16, spec)
        assert is_cyclic(C)
        assert C.k == 5 - spec.degree


def test_divisor_errors():
    with pytest.raises(CodeError):
        divisors_of(F4, 2, 4)
    with pytest.raises(CodeError):
        divisors_of(F2, 2, 3)
