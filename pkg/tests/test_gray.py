"""Gray map, the gamma/rho permutations and the tau unmapping.

The frozen tables for p=3, s=3 (all 27 Gray rows and tau values) pin the
conventions; the property tests then cover other p and s.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghcodes.errors import InputError, NotAGrayImage
from ghcodes.gray import (
    Permutation,
    block_lift,
    build_y_matrix,
    gamma,
    gamma_extended,
    gray,
    gray_inverse,
    gray_matrix,
    gray_vector,
    identity_permutation,
    phi_table,
    rho,
    tau,
    tau_tilde,
)
from ghcodes.ring import RingParams, digits, ring_vector, vec_add, vec_scale

from goldens import PHI3, TAU3

PS = RingParams(3, 3)


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------


def test_permutation_validation():
    Permutation(np.array([1, 0, 2]))
    with pytest.raises(InputError):
        Permutation(np.array([0, 0, 2]))
    with pytest.raises(InputError):
        Permutation(np.array([0, 3, 1]))
    with pytest.raises(InputError):
        Permutation(np.array([-1, 1, 0]))
    with pytest.raises(InputError):
        Permutation(np.array([], dtype=np.int64))


def test_apply_moves_k_to_image_k():
    # "moves coordinate k to pi(k)": result[pi(k)] = input[k]
    pi = Permutation(np.array([1, 2, 0]))
    x = np.array([10, 20, 30])
    assert pi(x).tolist() == [30, 10, 20]
    assert pi.apply_inverse(pi(x)).tolist() == x.tolist()


def test_compose_is_apply_after():
    rng = np.random.default_rng(7)
    f = Permutation(rng.permutation(12))
    g = Permutation(rng.permutation(12))
    x = rng.integers(0, 100, size=12)
    assert np.array_equal(f.compose(g)(x), f(g(x)))
    assert np.array_equal(f.compose(f.inverse())(x), x)


def test_one_based_roundtrip():
    pi = Permutation(np.array([2, 0, 1, 3]))
    assert pi.one_based() == (3, 1, 2, 4)
    assert Permutation.from_one_based(pi.one_based()) == pi


def test_block_lift():
    pi = Permutation(np.array([1, 0]))  # swap two blocks
    lifted = block_lift(pi, 3)
    x = np.arange(6)
    assert lifted(x).tolist() == [3, 4, 5, 0, 1, 2]


def test_gamma3_golden():
    g = gamma(3, 3)
    assert g.one_based() == (1, 4, 7, 2, 5, 8, 3, 6, 9)
    assert g.cycle_string() == "(2,4)(3,7)(6,8)"


def test_gamma4_golden():
    g = gamma(3, 4)
    assert g.one_based() == (
        1, 4, 7, 10, 13, 16, 19, 22, 25,
        2, 5, 8, 11, 14, 17, 20, 23, 26,
        3, 6, 9, 12, 15, 18, 21, 24, 27,
    )
    assert g.cycle_string() == (
        "(2,4,10)(3,7,19)(5,13,11)(6,16,20)(8,22,12)(9,25,21)(15,17,23)(18,26,24)"
    )


def test_gamma2_is_identity():
    assert gamma(3, 2) == identity_permutation(3)
    assert gamma(2, 2) == identity_permutation(2)


def test_gamma_extended_golden():
    g = gamma_extended(3, 3, 9)
    assert g.size == 81
    assert g.cycle_string() == (
        "(2,4)(3,7)(6,8)(11,13)(12,16)(15,17)(20,22)(21,25)(24,26)"
        "(29,31)(30,34)(33,35)(38,40)(39,43)(42,44)(47,49)(48,52)"
        "(51,53)(56,58)(57,61)(60,62)(65,67)(66,70)(69,71)(74,76)(75,79)(78,80)"
    )


def test_rho_golden():
    assert rho(3, 2).one_based() == (1, 4, 2, 5, 3, 6)
    assert rho(3, 4).one_based() == (1, 4, 7, 10, 2, 5, 8, 11, 3, 6, 9, 12)
    assert rho(3, 9).one_based() == (
        1, 4, 7, 10, 13, 16, 19, 22, 25,
        2, 5, 8, 11, 14, 17, 20, 23, 26,
        3, 6, 9, 12, 15, 18, 21, 24, 27,
    )


# ---------------------------------------------------------------------------
# Y matrix and the Gray map
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("p,s", [(2, 2), (2, 4), (3, 2), (3, 4), (5, 3)])
def test_y_matrix_columns_are_base_p_digits(p, s):
    y = build_y_matrix(p, s)
    assert y.shape == (s, p**s)
    for c in range(p**s):
        col = tuple(int(v) for v in y[:, c])
        assert col == digits(c, RingParams(p, s))


def test_phi3_golden_all_rows():
    for u, row in PHI3.items():
        assert tuple(int(v) for v in gray(u, PS).entries) == row


def test_phi_table_matches_gray():
    table = phi_table(PS)
    assert table.shape == (27, 9)
    for u in range(27):
        assert tuple(int(v) for v in table[u]) == PHI3[u]


def test_phi1_is_identity():
    params = RingParams(5, 1)
    for u in range(5):
        assert gray(u, params).tolist() == [u]


def test_gray_matrix_batches():
    rows = np.array([[0, 13, 26], [9, 4, 1]], dtype=np.uint8)
    out = gray_matrix(PS, rows)
    assert out.shape == (2, 27)
    assert tuple(out[0]) == PHI3[0] + PHI3[13] + PHI3[26]
    assert tuple(out[1]) == PHI3[9] + PHI3[4] + PHI3[1]


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)]), st.data())
def test_gray_inverse_roundtrip(ps, data):
    p, s = ps
    params = RingParams(p, s)
    u = data.draw(st.integers(0, params.modulus - 1))
    w = gray(u, params)
    v = gray_inverse(w, params)
    assert v.tolist() == [u]


def test_gray_inverse_rejects_non_image():
    w = gray(5, PS)
    bad = np.array(w.entries, copy=True)
    bad[0] = (bad[0] + 1) % 3
    from ghcodes.gray import GrayWord

    with pytest.raises(NotAGrayImage):
        gray_inverse(GrayWord(3, bad), PS)


# lemma: phi_s(lambda * p^(s-1)) is the constant word
@pytest.mark.parametrize("p,s", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)])
def test_top_order_residues_map_to_constants(p, s):
    params = RingParams(p, s)
    for lam in range(p):
        w = gray(lam * p ** (s - 1), params)
        assert set(w.tolist()) == {lam}


# gamma_s sends the constant-block pattern to the repeating (0..p-1) pattern;
# the reverse direction needs the inverse except at s <= 3 where gamma is an
# involution on these two words.
@pytest.mark.parametrize("p,s", [(2, 3), (2, 4), (3, 3), (3, 4), (5, 3)])
def test_gamma_on_block_patterns(p, s):
    n = p ** (s - 1)
    u = np.repeat(np.arange(p, dtype=np.uint8), n // p)
    v = np.tile(np.arange(p, dtype=np.uint8), n // p)
    g = gamma(p, s)
    assert np.array_equal(g(u), v)
    assert np.array_equal(g.apply_inverse(v), u)
    if s <= 3:
        assert np.array_equal(g(v), u)


# digitwise additivity of phi_s: sum of lambda_i*phi(p^i) = phi(sum lambda_i p^i)
@settings(max_examples=150, deadline=None)
@given(st.sampled_from([(2, 2), (2, 4), (3, 2), (3, 3), (5, 2)]), st.data())
def test_gray_additive_on_digit_decomposition(p_s, data):
    p, s = p_s
    params = RingParams(p, s)
    lams = [data.draw(st.integers(0, p - 1)) for _ in range(s - 1)]
    u = sum(lam * p**i for i, lam in enumerate(lams))
    acc = np.zeros(p ** (s - 1), dtype=np.int64)
    for i, lam in enumerate(lams):
        acc = (acc + lam * gray(p**i, params).entries.astype(np.int64)) % p
    assert np.array_equal(acc.astype(np.uint8), gray(u, params).entries)


# ---------------------------------------------------------------------------
# tau and tau_tilde
# ---------------------------------------------------------------------------


def test_tau3_golden_all_entries():
    for u, want in TAU3.items():
        assert tau(u, PS).tolist() == list(want)


def test_phi_factors_through_tau():
    # phi_s(u) = gamma_s(Phi_{s-1}(tau_s(u))) for every residue
    g = gamma(3, 3)
    for u in range(27):
        inner = gray_vector(tau(u, PS))
        assert tuple(int(v) for v in g(inner.entries)) == PHI3[u]


@pytest.mark.parametrize("p,s", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4), (5, 2)])
def test_tau_of_one_and_towers(p, s):
    params = RingParams(p, s)
    if s >= 2:
        want = [j * p ** (s - 2) for j in range(p)]
        assert tau(1, params).tolist() == want
        for i in range(1, s):
            for u in range(p ** (s - 1)):
                got = tau(p**i * u % params.modulus, params)
                want_i = [(p ** (i - 1) * u) % p ** (s - 1)] * p
                assert got.tolist() == want_i


# tau is additive over digit decompositions
@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(2, 3), (3, 3), (3, 4), (5, 2)]), st.data())
def test_tau_additive_on_digit_decomposition(p_s, data):
    p, s = p_s
    params = RingParams(p, s)
    inner = RingParams(p, s - 1)
    lams = [data.draw(st.integers(0, p - 1)) for _ in range(s)]
    u = sum(lam * p**i for i, lam in enumerate(lams)) % params.modulus
    acc = ring_vector(inner, [0] * p)
    for i, lam in enumerate(lams):
        acc = vec_add(acc, vec_scale(lam, tau(p**i % params.modulus, params)))
    assert tau(u, params) == acc


def test_tau_tilde_basis_examples():
    z27 = RingParams(3, 3)
    ones = ring_vector(z27, [1] * 9)
    assert tau_tilde(ones).tolist() == [0] * 9 + [3] * 9 + [6] * 9
    assert tau_tilde(vec_scale(3, ones)).tolist() == [1] * 27
    assert tau_tilde(vec_scale(9, ones)).tolist() == [3] * 27
    w2 = ring_vector(z27, [0, 3, 6, 9, 12, 15, 18, 21, 24])
    assert tau_tilde(w2).tolist() == [0, 1, 2, 3, 4, 5, 6, 7, 8] * 3
    assert tau_tilde(vec_scale(3, w2)).tolist() == [0, 3, 6] * 9


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 2), (2, 3), (2, 5), (3, 2), (3, 3), (3, 4), (5, 2)]), st.data())
def test_gray_factors_through_tau_tilde(p_s, data):
    # Phi_s(u) = gamma_ext(Phi_{s-1}(rho(tau_tilde(u)))) for vectors u
    p, s = p_s
    params = RingParams(p, s)
    n = data.draw(st.integers(1, 6))
    entries = [data.draw(st.integers(0, params.modulus - 1)) for _ in range(n)]
    u = ring_vector(params, entries)
    lhs = gray_vector(u).entries

    tt = tau_tilde(u)
    r = rho(p, n)
    reordered = ring_vector(tt.params, r(tt.entries))
    rhs = gamma_extended(p, s, n)(gray_vector(reordered).entries)
    assert np.array_equal(lhs, rhs)
