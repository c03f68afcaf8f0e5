from __future__ import annotations

from fractions import Fraction

import pytest

import oracles
from tlzero import diagrams as dg
from tlzero.errors import NotApt
from tlzero.jones_wenzl import AptSubset, apt_subsets, c_diagram, is_apt, jw, jw_recursive, nested_caps, nested_cups
from tlzero.linalg import solve_linear
from tlzero.morphisms import Morphism, compose, tensor
from tlzero.verify import jw_annihilated, jw_idempotent, jw_unitriangular


def C(I, n):
    return c_diagram(I, n)


def test_apt_counts_are_fibonacci():
    fib = [1, 1]
    while len(fib) < 14:
        fib.append(fib[-1] + fib[-2])
    for n in range(1, 12):
        assert len(apt_subsets(n)) == fib[n]
        assert sorted(tuple(I.sorted()) for I in apt_subsets(n)) == sorted(oracles.apt_sets(n))


def test_apt_validation():
    assert is_apt({1, 3}, 4)
    assert not is_apt({1, 2}, 4)
    assert not is_apt({4}, 4)
    with pytest.raises(NotApt):
        AptSubset(4, {2, 3})
    with pytest.raises(NotApt):
        c_diagram([3], 3)
    assert str(AptSubset(5, {3, 1})) == "{1,3}"


def test_small_projectors():
    assert jw(0) == Morphism.identity(0)
    assert jw(1) == Morphism.identity(1)
    assert jw(2) == Morphism.identity(2) - C([1], 2)


def test_jw4_five_terms():
    want = C([1, 3], 4) - C([3], 4) - C([2], 4) - C([1], 4) + Morphism.identity(4)
    assert jw(4) == want and len(jw(4)) == 5


@pytest.mark.parametrize("n", range(0, 9))
def test_projector_laws(n):
    assert jw_idempotent(n)
    assert jw_annihilated(n)
    assert jw_unitriangular(n)
    assert jw(n) == jw_recursive(n)


def test_recursion_step_by_hand():
    n = 3
    prev = tensor(jw(2), Morphism.identity(1))
    step = prev - compose(prev, compose(C([2], 3), prev))
    assert step == jw(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_unique_solution_of_defining_system(n):
    # unknown coefficients on every non-identity diagram; ask for annihilation by all basic caps
    rest = [d for d in dg.hom(n, n) if not d.is_identity()]
    rows_by_key = {}
    rhs_by_key = {}
    for i in range(1, n):
        cap = dg.placed(i - 1, "cap", n - i - 1)
        for j, d in enumerate(rest + [dg.identity(n)]):
            out, z, loops = dg.compose_raw(cap, d)
            if z:
                continue
            key = (i, out)
            rows_by_key.setdefault(key, [Fraction(0)] * len(rest))
            rhs_by_key.setdefault(key, Fraction(0))
            if j < len(rest):
                rows_by_key[key][j] += 1
            else:
                rhs_by_key[key] -= 1
    keys = sorted(rows_by_key, key=lambda k: (k[0], dg._sort_key(k[1])))
    sol = solve_linear([rows_by_key[k] for k in keys], [rhs_by_key[k] for k in keys])
    assert sol is not None and len(sol) == 1
    got = Morphism.identity(n)
    for d, c in zip(rest, sol[0]):
        if c:
            got = got + Morphism.of(d, coeff=c)
    assert got == jw(n)


def test_partial_projector_absorbed():
    for n in range(2, 7):
        for k in range(1, n):
            for left in (True, False):
                part = tensor(jw(k), Morphism.identity(n - k)) if left else tensor(Morphism.identity(n - k), jw(k))
                assert compose(part, jw(n)) == jw(n)
                assert compose(jw(n), part) == jw(n)


def test_nested_contraction_of_double_projector():
    # closing the last 2l strands of j_{k+2l} against nested caps and cups
    for k in range(0, 4):
        for l in range(1, 4):
            caps = Morphism.of(dg.tensor(dg.identity(k), nested_caps(l)))
            cups = Morphism.of(dg.tensor(dg.identity(k), nested_cups(l)))
            closed = compose(caps, compose(jw(k + 2 * l), cups))
            assert closed.is_zero()


def test_nested_shapes():
    assert nested_caps(2) == dg.make_diagram(4, 0, [("s1", "s4"), ("s2", "s3")])
    assert nested_cups(1) == dg.cup()


def test_coefficients_are_signs():
    for n in range(1, 9):
        for d, c in jw(n).items():
            assert c in (1, -1)


def test_apt_examples():
    assert [I.sorted() for I in apt_subsets(2)] == [[], [1]]
    assert [I.sorted() for I in apt_subsets(4)] == [[], [1], [2], [3], [1, 3]]


def test_c_diagram_examples():
    e = dg.make_diagram(2, 2, [("s1", "s2"), ("t1", "t2")])
    assert C([1], 2) == Morphism.of(e)
    both = dg.make_diagram(4, 4, [("s1", "s2"), ("s3", "s4"), ("t1", "t2"), ("t3", "t4")])
    assert C([1, 3], 4) == Morphism.of(both)
    assert c_diagram(AptSubset(4, {1, 3})) == Morphism.of(both)


def test_recursive_small():
    e = dg.make_diagram(2, 2, [("s1", "s2"), ("t1", "t2")])
    assert jw_recursive(2) == Morphism.identity(2) - Morphism.of(e)
