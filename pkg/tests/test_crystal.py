from __future__ import annotations

from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from tlzero import crystal as cr
from tlzero import semisimple as ss
from tlzero.errors import BoundExceeded
from tlzero.verify import crystal_multiplicities_match

bitstrings = st.lists(st.integers(0, 1), min_size=1, max_size=10).map(tuple)


def r(n, k):
    """Number of highest-weight-k components of B^(n), from the ballot formula."""
    if (n - k) % 2 or k > n:
        return 0
    j = (n - k) // 2
    return comb(n, j) - (comb(n, j - 1) if j else 0)


def test_examples():
    assert cr.f_op("00") == (1, 0)
    assert cr.f_op("10") == (1, 1)
    assert cr.f_op("11") is None
    assert cr.e_op("01") is None and cr.f_op("01") is None
    assert cr.e_op("10") == (0, 0)
    assert cr.kashiwara("f", "") is None
    with pytest.raises(ValueError):
        cr.kashiwara("g", "0")
    with pytest.raises(ValueError):
        cr.to_bits("012")


def test_eps_phi_weight():
    assert (cr.epsilon("0"), cr.phi("0"), cr.weight("0")) == (0, 1, 1)
    assert (cr.epsilon("1"), cr.phi("1"), cr.weight("1")) == (1, 0, -1)
    assert (cr.epsilon("01"), cr.phi("01")) == (0, 0)
    assert (cr.epsilon("10"), cr.phi("10")) == (1, 1)
    assert cr.epsilon("") == cr.phi("") == 0


def test_bracket_rule_oracle():
    for n in range(1, 9):
        for x in cr.all_bits(n):
            assert cr.f_op(x) == oracles.bracket_f(x)
            assert cr.e_op(x) == oracles.bracket_e(x)
            ones, zeros = oracles.bracket_unmatched(x)
            assert cr.epsilon(x) == len(ones) and cr.phi(x) == len(zeros)


@given(bitstrings)
def test_crystal_axioms(x):
    y = cr.f_op(x)
    if y is not None:
        assert cr.e_op(y) == x
        assert cr.weight(y) == cr.weight(x) - 2
        assert cr.epsilon(y) == cr.epsilon(x) + 1
    z = cr.e_op(x)
    if z is not None:
        assert cr.f_op(z) == x
    assert cr.weight(x) == cr.phi(x) - cr.epsilon(x)
    # eps and phi count how often e and f apply
    k, w = 0, x
    while (w := cr.e_op(w)) is not None:
        k += 1
    assert k == cr.epsilon(x)
    k, w = 0, x
    while (w := cr.f_op(w)) is not None:
        k += 1
    assert k == cr.phi(x)


def test_components_small():
    comps = cr.components(2)
    assert [str(c) for c in comps] == ["B_2[00,10,11]", "B_0[01]"]
    assert comps[0].top == (0, 0) and (1, 0) in comps[0]
    assert cr.locate("11") == (comps[0], 2)
    assert cr.component_of("01") == comps[1]


@pytest.mark.parametrize("n", range(1, 9))
def test_multiplicities(n):
    mult = cr.multiplicities(n)
    assert mult == {k: r(n, k) for k in range(n, -1, -2) if r(n, k)}
    assert crystal_multiplicities_match(n)
    assert dict(ss.end_block_decomposition(n)) == {k: r(n, k) for k in range(n, -1, -2)}


def test_components_partition():
    for n in range(1, 9):
        seen = [x for c in cr.components(n) for x in c.chain]
        assert sorted(seen) == cr.all_bits(n)


def test_bound():
    with pytest.raises(BoundExceeded):
        cr.components(5, bound=4)
    for n in range(1, 8):
        assert len(cr.crystal_edges(n)) == sum(k * r(n, k) for k in range(n + 1))


def test_edges():
    assert cr.crystal_edges(2) == ["00 -f-> 10", "10 -f-> 11"]


def test_tensor_decompose():
    assert cr.tensor_decompose(2, 3) == [5, 3, 1]
    for lam in range(6):
        for mu in range(6):
            assert cr.tensor_decompose(lam, mu) == list(range(lam + mu, abs(lam - mu) - 1, -2))
            comps = cr.path_tensor_components(lam, mu)
            assert sorted(len(c) - 1 for c in comps) == sorted(cr.tensor_decompose(lam, mu))
            assert sum(len(c) for c in comps) == (lam + 1) * (mu + 1)


def test_xi():
    assert cr.xi("00") == (1, 1)
    assert cr.xi("10") == (1, 0)
    assert cr.xi("01") == (0, 1)
    with pytest.raises(ValueError):
        cr.xi("01", 3)
    for n in range(1, 8):
        for x in cr.all_bits(n):
            assert cr.xi(cr.xi(x)) == x
            assert cr.weight(cr.xi(x)) == -cr.weight(x)
            y = cr.f_op(x)
            if y is not None:
                assert cr.xi(y) == cr.e_op(cr.xi(x))


def test_hk_commutor_examples():
    # B (x) B: the top component is reversed twice, the trivial one stays
    assert cr.hk_commutor(1, 1, "00") == (0, 0)
    assert cr.hk_commutor(1, 1, "01") == (0, 1)
    assert cr.hk_commutor(0, 3, "010") == (0, 1, 0)
    with pytest.raises(ValueError):
        cr.hk_commutor(1, 1, "0")


def test_hk_symmetry_and_morphism():
    for total in range(1, 8):
        for m in range(total + 1):
            n = total - m
            perm = cr.hk_permutation(m, n)
            back = cr.hk_permutation(n, m)
            assert sorted(perm.values()) == cr.all_bits(total)
            for x, y in perm.items():
                assert back[y] == x
                assert cr.weight(y) == cr.weight(x)
                fx = cr.f_op(x)
                assert cr.f_op(y) == (None if fx is None else perm[fx])


def test_interval_reversal_crystal():
    assert cr.hk_interval_reversal(1, 2, "01") == (0, 1)
    assert cr.hk_interval_reversal(1, 2, "00") == (0, 0)
    with pytest.raises(ValueError):
        cr.hk_interval_reversal(2, 2, "010")
    for n in range(2, 6):
        for p in range(1, n + 1):
            for q in range(p + 1, n + 1):
                perm = cr.hk_cactus_permutation([(p, q)], n)
                twice = cr.hk_cactus_permutation([(p, q), (p, q)], n)
                assert all(twice[x] == x for x in twice)
                assert all(cr.weight(y) == cr.weight(x) for x, y in perm.items())
        full = cr.hk_cactus_permutation([(1, n)], n)
        assert all(cr.weight(full[x]) == cr.weight(x) for x in full)


def test_cactus_relations_on_crystals():
    for n in range(2, 6):
        iv = [(p, q) for p in range(1, n + 1) for q in range(p + 1, n + 1)]
        for p, q in iv:
            for k, l in iv:
                a = cr.hk_cactus_permutation([(k, l), (p, q)], n)
                if q < k or l < p:
                    assert a == cr.hk_cactus_permutation([(p, q), (k, l)], n)
                if p <= k and l <= q:
                    assert a == cr.hk_cactus_permutation([(p, q), (p + q - l, p + q - k)], n)


def test_index():
    assert cr.bits_index((1, 0, 1)) == 5
    assert cr.all_bits(2) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert cr.bits_str(None) == "0" and cr.bits_str(()) == "()"


def test_tensor_examples():
    assert cr.tensor_decompose(2, 2) == [4, 2, 0]
    assert cr.multiplicities(4) == {4: 1, 2: 3, 0: 2}
