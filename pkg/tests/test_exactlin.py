from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hlk.exactlin import (
    DenseMatrix,
    Scalar,
    Subspace,
    determinant,
    hermitian_definiteness,
    kernel_image,
    quotient_cohomology,
    rref,
    solve,
    symmetric_signature,
)

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=3)
scalars = st.builds(Scalar, rationals, rationals)


def small_matrices(max_dim=4):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(scalars, min_size=c, max_size=c),
                min_size=r, max_size=r).map(DenseMatrix.from_rows)))


def test_scalar_arithmetic():
    a = Scalar(1, 2)
    b = Scalar(Fraction(1, 2), -1)
    assert a * b == Scalar(Fraction(5, 2), 0)
    assert (a / b) * b == a
    assert a.conjugate().conjugate() == a
    assert Scalar(0, 1) * Scalar(0, 1) == -1


def test_solve_identity():
    m = DenseMatrix.identity(3)
    b = (Scalar(2), Scalar(0, 1), Scalar(-1))
    assert solve(m, b) == b


def test_solve_inconsistent():
    m = DenseMatrix.zero(2, 2)
    assert solve(m, (Scalar(1), Scalar(0))) is None


def test_solve_canonical_free_vars():
    m = DenseMatrix.from_rows([[Scalar(1), Scalar(0, 1)],
                               [Scalar(0), Scalar(0)]])
    assert solve(m, (Scalar(1), Scalar(0))) == (Scalar(1), Scalar(0))


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve(DenseMatrix.identity(2), (Scalar(1),))


def test_kernel_image_examples():
    k, im = kernel_image(DenseMatrix.zero(3, 3))
    assert (k.dim, im.dim) == (3, 0)
    k, im = kernel_image(DenseMatrix.identity(3))
    assert (k.dim, im.dim) == (0, 3)
    k, im = kernel_image(DenseMatrix.from_rows([[1, 1], [1, 1]]))
    assert (k.dim, im.dim) == (1, 1)


@given(small_matrices())
@settings(max_examples=60, deadline=None)
def test_rank_nullity(m):
    k, im = kernel_image(m)
    assert k.dim + im.dim == m.cols


@given(st.lists(st.lists(scalars, min_size=3, max_size=3),
                min_size=1, max_size=4), st.randoms())
@settings(max_examples=60, deadline=None)
def test_echelon_canonical(rows, rng):
    shuffled = list(rows)
    rng.shuffle(shuffled)
    assert Subspace.from_vectors(3, rows) == Subspace.from_vectors(3, shuffled)
    once, _ = rref(rows)
    twice, _ = rref(once)
    assert list(once) == list(twice)


def test_quotient_examples():
    z33 = DenseMatrix.zero(3, 3)
    assert quotient_cohomology(z33, z33).dim == 3
    # exact pair: im = ker in the middle of 0 -> Q -> Q^2 -> Q -> 0
    d_in = DenseMatrix.from_rows([[1], [0]])
    d_out = DenseMatrix.from_rows([[0, 1]])
    assert quotient_cohomology(d_in, d_out).dim == 0
    # rank-1 differential out of a 2-dim space
    d_in0 = DenseMatrix.zero(2, 0)
    d_rank1 = DenseMatrix.from_rows([[1, 1], [1, 1]])
    assert quotient_cohomology(d_in0, d_rank1).dim == 1
    assert quotient_cohomology(d_rank1, DenseMatrix.zero(0, 2)).dim == 1


def test_quotient_rejects_nonzero_composition():
    ident = DenseMatrix.identity(2)
    with pytest.raises(ValueError):
        quotient_cohomology(ident, ident)


def test_signature_examples():
    assert symmetric_signature(DenseMatrix.diagonal([1, 1, -1])) == (2, 1, 0)
    assert symmetric_signature(
        DenseMatrix.from_rows([[0, 1], [1, 0]])) == (1, 1, 0)
    assert symmetric_signature(DenseMatrix.zero(2, 2)) == (0, 0, 2)


def test_signature_k3_intersection_form():
    # middle intersection Gram of the K3 mock: the (2,0)+(0,2) real plane
    # contributes diag(2, 2), omega gives +1, nineteen classes give -1
    diag = [2, 2, 1] + [-1] * 19
    assert symmetric_signature(DenseMatrix.diagonal(diag)) == (3, 19, 0)


def test_signature_rejects_bad_input():
    with pytest.raises(ValueError):
        symmetric_signature(DenseMatrix.from_rows([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        symmetric_signature(DenseMatrix.from_rows([[Scalar(0, 1)]]))


@given(st.integers(2, 4), st.randoms())
@settings(max_examples=40, deadline=None)
def test_signature_congruence_invariant(n, rng):
    g_rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = rng.randint(-3, 3)
            g_rows[i][j] = v
            g_rows[j][i] = v
    g = DenseMatrix.from_rows(g_rows)
    # random integer unimodular-style P: unit triangular times permutation
    p_rows = [[0] * n for _ in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    for i in range(n):
        p_rows[i][perm[i]] = 1
        for j in range(perm[i] + 1, n):
            p_rows[i][j] += rng.randint(-2, 2)
    p = DenseMatrix.from_rows(p_rows)
    if determinant(p).is_zero():
        return
    assert symmetric_signature(p.transpose().mul(g).mul(p)) == \
        symmetric_signature(g)


def test_hermitian_examples():
    assert hermitian_definiteness(DenseMatrix.identity(3))
    assert not hermitian_definiteness(DenseMatrix.diagonal([1, -1]))
    m = DenseMatrix.from_rows([[Scalar(2), Scalar(0, 1)],
                               [Scalar(0, -1), Scalar(2)]])
    assert hermitian_definiteness(m)
    # the two leading principal minors, computed independently
    assert determinant(m.submatrix([0], [0])) == Scalar(2)
    assert determinant(m) == Scalar(3)
    with pytest.raises(ValueError):
        hermitian_definiteness(DenseMatrix.from_rows([[Scalar(0, 1)]]))


@given(small_matrices(), st.lists(scalars, min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_solve_is_a_solution_or_inconsistent(m, xs):
    xs = (xs + [Scalar(0)] * m.cols)[:m.cols]
    b = m.apply(tuple(xs))
    sol = solve(m, b)
    assert sol is not None
    assert m.apply(sol) == b


@given(small_matrices())
@settings(max_examples=40, deadline=None)
def test_solve_none_means_outside_image(m):
    b = tuple(Scalar(1) for _ in range(m.rows))
    sol = solve(m, b)
    _, image = kernel_image(m)
    if sol is None:
        assert not image.contains(b)
    else:
        assert m.apply(sol) == b


@given(small_matrices())
@settings(max_examples=40, deadline=None)
def test_quotient_dimension_formula(m):
    # build a complex: d_in = m, d_out = a matrix with rows spanning the
    # left kernel of m, so that d_out . d_in = 0 by construction
    left_kernel, _ = kernel_image(m.transpose())
    if left_kernel.dim:
        d_out = DenseMatrix.from_rows(list(left_kernel.basis))
    else:
        d_out = DenseMatrix.zero(0, m.rows)
    quotient = quotient_cohomology(m, d_out)
    kernel, _ = kernel_image(d_out)
    _, image = kernel_image(m)
    assert quotient.dim == kernel.dim - image.dim
    for rep in quotient.basis:
        assert kernel.contains(rep)


def test_determinant():
    m = DenseMatrix.from_rows([[Scalar(1), Scalar(2)], [Scalar(3), Scalar(4)]])
    assert determinant(m) == Scalar(-2)
    assert determinant(DenseMatrix.zero(2, 2)).is_zero()
