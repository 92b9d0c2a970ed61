from itertools import product
from math import comb

import numpy as np
import pytest

from reslie import cochain, linalg
from reslie.cochain import (
    cochain_labels,
    cohomology,
    d1,
    d1_matrix,
    d2,
    d2_full,
    d2_matrix,
    eval2,
    wedge2_basis,
    wedge3_basis,
)
from reslie.families import (
    corpus,
    expected_sdim_h1_even_family,
    expected_sdim_h1_odd_family,
    expected_sdim_h2_even_family,
    expected_sdim_h2_odd_family,
    heisenberg_even,
    heisenberg_odd,
)
from reslie.superalgebra import abelian


def unit(k, i):
    v = np.zeros(k, dtype=np.int64)
    v[i] = 1
    return v


def multichoose(n, k):
    return 1 if k == 0 else comb(n + k - 1, k)


@pytest.fixture
def h11():
    return heisenberg_even(1, 1, 3).algebra


def test_wedge_dimensions():
    for m, n in product(range(4), range(4)):
        assert len(wedge2_basis(m, n)) == comb(m, 2) + m * n + comb(n + 1, 2)
        expected3 = sum(comb(m, a) * multichoose(n, 3 - a) for a in range(4))
        assert len(wedge3_basis(m, n)) == expected3


def test_labels(h11):
    assert cochain_labels(h11, 1) == ["x^1", "x^2", "x^3", "y^1"]
    assert cochain_labels(h11, 2) == ["x^{1,2}", "x^{1,3}", "x^{2,3}", "x^1∧y^1", "x^2∧y^1", "x^3∧y^1", "y^{1,1}"]
    assert cochain_labels(h11, 2, restricted=True)[-3:] == ["bar(x^1)", "bar(x^2)", "bar(x^3)"]


def test_eval2_conventions(h11):
    labels = cochain_labels(h11, 2)
    k = len(labels)
    x1, x2, _, y1 = (h11.basis(i) for i in range(4))
    assert eval2(h11, unit(k, labels.index("x^{1,2}")), x2, x1) == 2  # -1 mod 3
    assert eval2(h11, unit(k, labels.index("y^{1,1}")), y1, y1) == 1
    assert eval2(h11, unit(k, labels.index("x^1∧y^1")), y1, x1) == 2


def test_d1_examples(h11):
    labels = cochain_labels(h11, 2)
    out = d1(h11, unit(4, 2))
    assert {labels[i] for i in np.nonzero(out)[0]} == {"x^{1,2}", "y^{1,1}"}
    assert all(out[labels.index(x)] == 1 for x in ("x^{1,2}", "y^{1,1}"))
    for n in (1, 2, 3):
        A = heisenberg_odd(n, 5).algebra
        labels = cochain_labels(A, 2)
        out = d1(A, unit(A.dim, A.dim - 1))
        assert {labels[i] for i in np.nonzero(out)[0]} == {f"x^{i}∧y^{i}" for i in range(1, n + 1)}
        assert set(out[np.nonzero(out)[0]].tolist()) == {1}
    A = abelian(2, 2, 3)
    assert not d1_matrix(A).any()
    assert not d2_matrix(A).any()


def test_d2_of_central_pairing_vanishes(h11):
    assert not d2(h11, unit(7, 0)).any()


@pytest.mark.parametrize("p", [3, 5, 7])
def test_d2_d1_zero_on_corpus(p):
    for name, A, _ in corpus(p):
        assert not (d2_matrix(A) @ d1_matrix(A) % p).any(), name


@pytest.mark.parametrize("p", [3, 5])
def test_d2_full_is_super_alternating(p):
    for name, A, _ in corpus(p):
        T = d2_full(A)
        par = A.parities
        sign = np.where(np.outer(par, par) % 2 == 1, 1, -1)
        # swapping the first two arguments
        assert np.array_equal(T % p, (sign[:, :, None, None] * np.transpose(T, (1, 0, 2, 3))) % p), name
        # swapping the last two arguments
        assert np.array_equal(T % p, (sign[None, :, :, None] * np.transpose(T, (0, 2, 1, 3))) % p), name


def test_eval3_matches_d2(h11):
    rng = np.random.default_rng(0)
    phi = rng.integers(0, 3, 7)
    z = d2(h11, phi)
    for t, (u, v, w) in enumerate(wedge3_basis(h11.m, h11.n)):
        assert cochain.eval3(h11, phi, u, v, w) == z[t]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_family_cohomology_dimensions(p):
    for m, n in product((1, 2), (1, 2, 3)):
        A = heisenberg_even(m, n, p).algebra
        assert cohomology(A, 1).sdim == expected_sdim_h1_even_family(m, n)
        assert cohomology(A, 2).sdim == expected_sdim_h2_even_family(m, n)
    for n in (1, 2, 3):
        A = heisenberg_odd(n, p).algebra
        assert cohomology(A, 1).sdim == expected_sdim_h1_odd_family(n)
        assert cohomology(A, 2).sdim == expected_sdim_h2_odd_family(n)


def test_ba1_h2():
    rep = cohomology(heisenberg_odd(1, 3).algebra, 2)
    assert rep.sdim == (1, 1)


def test_h2_representatives_are_cocycles_and_independent():
    A = heisenberg_even(2, 2, 5).algebra
    rep = cohomology(A, 2)
    B = linalg.stack([cochain.coboundaries(A, 0), cochain.coboundaries(A, 1)], len(wedge2_basis(2 * 2 + 1, 2)))
    reps = linalg.stack([rep.representatives[0], rep.representatives[1]], B.shape[1])
    assert not (d2_matrix(A) @ reps.T % 5).any()
    assert linalg.rank(np.vstack([B, reps]), 5) == linalg.rank(B, 5) + reps.shape[0]


def test_report_dict_shape(h11):
    d = cohomology(h11, 1).as_dict()
    assert d["sdim"] == [2, 1]
    assert d["representatives"]["even"] == [{"x^1": 1}, {"x^2": 1}]


def test_degree_guard(h11):
    with pytest.raises(ValueError):
        cohomology(h11, 3)
