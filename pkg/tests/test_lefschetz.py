from fractions import Fraction

import pytest

from hlk import lefschetz as lz
from hlk.algebra import BigradedAlgebra, validate_algebra
from hlk.exactlin import (
    DenseMatrix,
    Scalar,
    ZERO,
    ONE,
    determinant,
    hermitian_definiteness,
    vec_add,
    vec_is_zero,
    vec_scale,
)


def half_i():
    return Scalar(0, Fraction(1, 2))


# -- L, cone membership -------------------------------------------------------


def test_lefschetz_operator_zero_class(torus):
    zero = tuple(ZERO for _ in range(torus.n))
    assert lz.lefschetz_operator(torus, zero).is_zero_matrix()


def test_lefschetz_operator_torus(torus):
    gen = torus.basis_vector("dz1^dzb1")
    l_op = lz.lefschetz_operator(torus, gen)
    assert l_op.apply(torus.unit) == gen
    assert vec_is_zero(l_op.apply(gen))


def test_lefschetz_operator_k3_rank(k3):
    l_op = lz.lefschetz_operator(k3, k3.kahler)
    assert l_op.apply(k3.unit) == k3.kahler
    deg2 = k3.degree_indices(2)
    images = [l_op.apply(k3.basis_vector(i)) for i in deg2]
    nonzero = [v for v in images if not vec_is_zero(v)]
    assert len(nonzero) == 1   # only omega itself pairs into the top class


def test_lefschetz_operator_postconditions(abelian):
    # real (1,1) class: L commutes with conjugation and shifts bidegree
    l_op = lz.lefschetz_operator(abelian, abelian.kahler)
    c = abelian.conj_matrix
    assert l_op.mul(c) == c.mul(l_op.conj())
    for j in range(abelian.n):
        p, q = abelian.bidegrees[j]
        for k, entry in enumerate(l_op.column(j)):
            if not entry.is_zero():
                assert abelian.bidegrees[k] == (p + 1, q + 1)


def test_cone_zero_class_fails(torus):
    zero = tuple(ZERO for _ in range(torus.n))
    assert not lz.kahler_cone_membership(torus, zero)


def test_cone_torus_generator(torus):
    assert lz.kahler_cone_membership(torus, torus.basis_vector("dz1^dzb1"))


def test_cone_even_mode_square_zero(g2k2):
    # omega + f1 squares to zero, so it fails the even-mode test
    w = vec_add(g2k2.basis_vector("om"), g2k2.basis_vector("f1"))
    assert vec_is_zero(g2k2.mulvec(w, w))
    assert not lz.kahler_cone_membership(g2k2, w, "even")
    assert lz.kahler_cone_membership(g2k2, g2k2.kahler, "even")


def test_cone_matches_square_criterion(g2k3):
    # on an even g=2 dense model, K_even = {w : w^2 != 0}
    omega = g2k3.kahler
    candidates = [g2k3.basis_vector(k) for k in g2k3.degree_indices(2)]
    candidates += [vec_add(omega, c) for c in candidates]
    for w in candidates:
        square_nonzero = not vec_is_zero(g2k3.mulvec(w, w))
        assert lz.kahler_cone_membership(g2k3, w, "even") == square_nonzero


# -- primitive theory ---------------------------------------------------------


def test_primitive_subspace_examples(torus, k3):
    assert lz.primitive_subspace(torus, torus.kahler, 0).dim == 1
    assert lz.primitive_subspace(torus, torus.kahler, torus.g + 1).dim == 0
    assert lz.primitive_subspace(k3, k3.kahler, 2).dim == 21


def test_primitive_decompose_primitive_input(k3):
    e = k3.basis_vector("f1")
    dec = lz.primitive_decompose(k3, k3.kahler, e)
    assert dec == [(0, e)]


def test_primitive_decompose_omega(k3):
    dec = lz.primitive_decompose(k3, k3.kahler, k3.kahler)
    assert len(dec) == 1
    s, piece = dec[0]
    assert s == 1 and piece == k3.unit


def test_primitive_decompose_mixed(k3):
    x = vec_add(k3.kahler, k3.basis_vector("f1"))
    dec = lz.primitive_decompose(k3, k3.kahler, x)
    assert dec == [(1, k3.unit), (0, k3.basis_vector("f1"))]


def test_primitive_decompose_roundtrip(abelian):
    omega = abelian.kahler
    l_op = lz.lefschetz_operator(abelian, omega)
    for k in range(abelian.n):
        x = abelian.basis_vector(k)
        total = tuple(ZERO for _ in range(abelian.n))
        for s, piece in lz.primitive_decompose(abelian, omega, x):
            lifted = piece
            for _ in range(s):
                lifted = l_op.apply(lifted)
            total = vec_add(total, lifted)
        assert total == x


# -- sl2 triples --------------------------------------------------------------


def test_dual_lefschetz_explicit_g2_values(g2k2, k3, abelian):
    for alg in (g2k2, k3, abelian):
        tri = lz.dual_lefschetz(alg, alg.kahler)
        omega = alg.kahler
        # Lambda(omega) = 2 . unit and Lambda(omega^2) = 2 omega
        assert tri.Lambda.apply(omega) == vec_scale(Scalar(2), alg.unit)
        omega2 = alg.mulvec(omega, omega)
        assert tri.Lambda.apply(omega2) == vec_scale(Scalar(2), omega)
        # no degree -2 below H^0
        assert vec_is_zero(tri.Lambda.apply(alg.unit))


def test_sl2_relations_and_solve_agreement(torus, g2k2, abelian):
    for alg in (torus, g2k2, abelian):
        for w in lz.cone_check_family(alg, alg.kahler):
            tri = lz.dual_lefschetz(alg, w)
            assert tri.relations_hold()
            assert tri.Lambda == tri.lambda_solve


def test_counting_operator_torus(torus):
    b = lz.counting_operator(torus)
    degrees = [torus.degree_of_index(k) for k in range(torus.n)]
    for k, d in enumerate(degrees):
        assert b.at(k, k) == Scalar(torus.g - d)


def test_dual_lefschetz_rejects_non_cone(g2k2):
    w = vec_add(g2k2.basis_vector("om"), g2k2.basis_vector("f1"))
    with pytest.raises(lz.ConeError):
        lz.dual_lefschetz(g2k2, w, mode="even")


# -- Weil operator ------------------------------------------------------------


def test_weil_operator_values(abelian):
    j = lz.weil_operator(abelian)
    one_one = abelian.index_of("dz1^dzb1")
    assert j.at(one_one, one_one) == ONE
    ten = abelian.index_of("dz1")
    assert j.at(ten, ten) == Scalar(0, 1)
    two_zero = abelian.index_of("dz1^dz2")
    assert j.at(two_zero, two_zero) == Scalar(-1)


def test_weil_square_and_conjugation(abelian):
    j = lz.weil_operator(abelian)
    j2 = j.mul(j)
    for k in range(abelian.n):
        r = abelian.degree_of_index(k)
        assert j2.at(k, k) == Scalar(-1 if r % 2 else 1)
    # J conj = conj J^{-1}: with conj acting as x -> C conj(x), the
    # matrix identity is J C = C conj(J), and conj(J) = J^{-1}
    c = abelian.conj_matrix
    assert j.mul(c) == c.mul(j.conj())
    assert j.mul(j.conj()) == DenseMatrix.identity(abelian.n)


# -- polarization -------------------------------------------------------------


def test_polarization_unit_value(k3):
    omega = k3.kahler
    q = lz.polarization_form(k3, omega, k3.unit, k3.unit)
    omega_g = k3.mulvec(omega, omega)
    assert q == k3.nu_of(omega_g) == ONE


def test_polarization_levels_orthogonal(k3):
    omega = k3.kahler
    # f1 is primitive (level 0), omega is L(unit) (level 1)
    assert lz.polarization_form(k3, omega, k3.basis_vector("f1"),
                                omega).is_zero()


def test_polarization_torus_value(torus):
    omega = torus.kahler
    x = torus.basis_vector("dz1")
    y = vec_scale(half_i(), torus.basis_vector("dzb1"))
    assert torus.pairing(x, y) == ONE
    assert lz.polarization_form(torus, omega, x, y) == Scalar(-1)


def test_polarization_symmetry_sign(abelian):
    omega = abelian.kahler
    for r in sorted(abelian.by_degree):
        sign = Scalar(-1 if r % 2 else 1)
        idxs = abelian.degree_indices(r)
        for i in idxs:
            for j in idxs:
                a, b = abelian.basis_vector(i), abelian.basis_vector(j)
                assert lz.polarization_form(abelian, omega, a, b) == \
                    sign * lz.polarization_form(abelian, omega, b, a)


def test_polarization_j_invariance(abelian):
    omega = abelian.kahler
    j = lz.weil_operator(abelian)
    for i in abelian.degree_indices(2):
        for k in abelian.degree_indices(2):
            a, b = abelian.basis_vector(i), abelian.basis_vector(k)
            assert lz.polarization_form(abelian, omega, j.apply(a),
                                        j.apply(b)) == \
                lz.polarization_form(abelian, omega, a, b)


def test_polarization_rejects_mixed_degrees(torus):
    x = vec_add(torus.unit, torus.basis_vector("dz1"))
    with pytest.raises(ValueError):
        lz.polarization_form(torus, torus.kahler, x, x)


# -- Hodge inner product ------------------------------------------------------


def test_hodge_inner_product_values(torus):
    omega = torus.kahler
    dz = torus.basis_vector("dz1")
    assert lz.hodge_inner_product(torus, omega, dz, dz) == Scalar(2)
    assert lz.hodge_inner_product(torus, omega, torus.unit,
                                  torus.unit) == ONE
    zero = tuple(ZERO for _ in range(torus.n))
    assert lz.hodge_inner_product(torus, omega, zero, zero).is_zero()


def test_hodge_inner_level_orthogonality(k3):
    # T(L^s xi, L^t eta) = 0 for primitives of different Lefschetz levels
    omega = k3.kahler
    for name in ("f1", "sigma", "sigmabar"):
        prim = k3.basis_vector(name)
        assert lz.hodge_inner_product(k3, omega, omega, prim).is_zero()
        assert lz.hodge_inner_product(k3, omega, prim, omega).is_zero()


def test_hodge_inner_bidegree_orthogonality(abelian):
    omega = abelian.kahler
    for i in abelian.degree_indices(2):
        for j in abelian.degree_indices(2):
            if abelian.bidegrees[i] != abelian.bidegrees[j]:
                assert lz.hodge_inner_product(
                    abelian, omega, abelian.basis_vector(i),
                    abelian.basis_vector(j)).is_zero()


def test_hodge_gram_positive_definite(torus, abelian, g2k2):
    for alg in (torus, abelian, g2k2):
        for r in sorted(alg.by_degree):
            assert hermitian_definiteness(lz.hodge_gram(alg, alg.kahler, r))


def test_primitive_gram_positive_definite(k3):
    omega = k3.kahler
    prim = lz.primitive_subspace(k3, omega, 2)
    rows = [[lz.hodge_inner_product(k3, omega, a, b) for b in prim.basis]
            for a in prim.basis]
    assert hermitian_definiteness(DenseMatrix.from_rows(rows))


# -- signature ----------------------------------------------------------------


def test_hodge_signature_k3(k3):
    sig = lz.hodge_signature(k3)
    assert sig.formula == -16
    assert sig.diagonalization == (3, 19, 0)
    assert sig.agree


def test_hodge_signature_abelian(abelian):
    sig = lz.hodge_signature(abelian)
    assert sig.formula == 0
    assert sig.diagonalization == (3, 3, 0)
    assert sig.agree


def test_hodge_signature_two_point_model():
    # only H^(0,0) and H^(g,g), g = 2: the formula gives 1 + 1 = 2 while
    # the middle pairing is empty (no Kahler class exists here)
    names = ["one", "top"]
    products = {(0, 0): {0: ONE}, (0, 1): {1: ONE}, (1, 0): {1: ONE}}
    alg = BigradedAlgebra(2, names, [(0, 0), (2, 2)], products,
                          DenseMatrix.identity(2), [ZERO, ONE])
    assert validate_algebra(alg).ok
    sig = lz.hodge_signature(alg)
    assert sig.formula == 2
    assert sig.diagonalization == (0, 0, 0)
    assert not sig.agree


def test_hodge_signature_rejects_odd_g(torus):
    with pytest.raises(ValueError):
        lz.hodge_signature(torus)


# -- filtration and Serre -----------------------------------------------------


def test_hodge_filtration_torus(torus):
    filt = lz.hodge_filtration(torus, 1)
    assert filt.step(0).dim == 2
    assert filt.step(1).dim == 1
    assert filt.step(2).dim == 0
    assert filt.step(1).contains(torus.basis_vector("dz1"))
    assert lz.filtration_opposed(torus, filt)


def test_hodge_filtration_opposed_all_catalog(abelian, k3, g2k2):
    for alg in (abelian, k3, g2k2):
        for n in sorted(alg.by_degree):
            assert lz.filtration_opposed(alg, lz.hodge_filtration(alg, n))


def test_serre_pairing(torus, k3):
    assert lz.serre_pairing_check(torus).ok
    assert lz.serre_pairing_check(k3).ok


def test_serre_pairing_degenerate():
    names = ["one", "x", "y", "t"]
    bidegrees = [(0, 0), (1, 0), (0, 1), (1, 1)]
    products = {(0, j): {j: ONE} for j in range(4)}
    for j in range(1, 4):
        products[(j, 0)] = {j: ONE}
    conj = DenseMatrix.from_rows(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    alg = BigradedAlgebra(1, names, bidegrees, products, conj,
                          [ZERO, ZERO, ZERO, ONE])
    report = lz.serre_pairing_check(alg)
    assert not report.ok
    assert any(p == 1 and q == 0 for p, q, _ in report.failures)


# -- Frobenius ----------------------------------------------------------------


def _torus_frobenius(torus):
    diag = []
    for k in range(torus.n):
        p, q = torus.bidegrees[k]
        diag.append(Scalar(1, 1) if (p, q) == (1, 0)
                    else Scalar(1, -1) if (p, q) == (0, 1)
                    else Scalar(2) if (p, q) == (1, 1) else ONE)
    return DenseMatrix.diagonal(diag)


def test_frobenius_identity(torus):
    rep = lz.frobenius_check(torus, torus.kahler,
                             DenseMatrix.identity(torus.n), 1)
    assert rep.ok and not rep.precondition_violations


def test_frobenius_torus_passes(torus):
    rep = lz.frobenius_check(torus, torus.kahler, _torus_frobenius(torus), 2)
    assert rep.ok, (rep.precondition_violations, rep.degree_pass)


def test_frobenius_violator_fails_degree_one(torus):
    diag = [Scalar(2) if torus.degree_of_index(k) == 2 else ONE
            for k in range(torus.n)]
    rep = lz.frobenius_check(torus, torus.kahler,
                             DenseMatrix.diagonal(diag), 2)
    assert rep.failing_degrees() == [1]
    assert rep.precondition_violations   # not multiplicative


def test_frobenius_determinant_consequence(torus):
    # |det f*|^2 on degree n equals q^(n dim) when the check passes
    f = _torus_frobenius(torus)
    idxs = list(torus.degree_indices(1))
    block = f.submatrix(idxs, idxs)
    det = determinant(block)
    assert det.norm_sq() == Fraction(2) ** (1 * len(idxs))
