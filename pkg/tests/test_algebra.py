from hlk.algebra import BigradedAlgebra, validate_algebra
from hlk.exactlin import DenseMatrix, Scalar, ZERO, ONE


def test_catalog_models_are_valid(torus, abelian, k3, g2k2):
    for alg in (torus, abelian, k3, g2k2):
        report = validate_algebra(alg)
        assert report.ok, f"{alg.name}: {report.summary()}"


def test_unit_of_torus(torus):
    assert torus.unit == torus.basis_vector("1")


def test_nu_vanishes_is_reported(g2k2):
    broken = BigradedAlgebra(
        g2k2.g, g2k2.names, g2k2.bidegrees, g2k2._products,
        g2k2.conj_matrix, [ZERO] * g2k2.n, name="broken")
    report = validate_algebra(broken)
    assert not report.ok
    assert "nu-vanishes" in report.codes()


def test_hodge_asymmetry_is_reported():
    # dim H^(1,0) = 1 but dim H^(0,1) = 2
    names = ["one", "x", "y1", "y2"]
    bidegrees = [(0, 0), (1, 0), (0, 1), (0, 1)]
    products = {(0, j): {j: ONE} for j in range(4)}
    for j in range(1, 4):
        products[(j, 0)] = {j: ONE}
    conj = DenseMatrix.identity(4)
    nu = [ZERO] * 4
    alg = BigradedAlgebra(1, names, bidegrees, products, conj, nu)
    report = validate_algebra(alg)
    assert "hodge-symmetry" in report.codes()


def test_graded_commutativity_violation():
    # two degree-1 classes that commute instead of anticommuting
    names = ["one", "x", "y", "t"]
    bidegrees = [(0, 0), (1, 0), (0, 1), (1, 1)]
    products = {(0, j): {j: ONE} for j in range(4)}
    for j in range(1, 4):
        products[(j, 0)] = {j: ONE}
    products[(1, 2)] = {3: ONE}
    products[(2, 1)] = {3: ONE}
    conj = DenseMatrix.from_rows([
        [1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]])
    nu = [ZERO, ZERO, ZERO, Scalar(0, -2)]
    alg = BigradedAlgebra(1, names, bidegrees, products, conj, nu)
    report = validate_algebra(alg)
    assert "graded-commutativity" in report.codes()


def test_missing_unit_is_reported():
    names = ["a"]
    alg = BigradedAlgebra(1, names, [(0, 0)], {}, DenseMatrix.identity(1),
                          [ZERO])
    report = validate_algebra(alg)
    assert "unit" in report.codes()


def test_degenerate_pairing_is_reported():
    # a torus with the top product removed: nu pairing degenerates
    names = ["one", "x", "y", "t"]
    bidegrees = [(0, 0), (1, 0), (0, 1), (1, 1)]
    products = {(0, j): {j: ONE} for j in range(4)}
    for j in range(1, 4):
        products[(j, 0)] = {j: ONE}
    conj = DenseMatrix.from_rows([
        [1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    nu = [ZERO, ZERO, ZERO, ONE]
    alg = BigradedAlgebra(1, names, bidegrees, products, conj, nu)
    report = validate_algebra(alg)
    assert "pairing-degenerate" in report.codes()


def test_conjugation_involution_checked(torus):
    bad_conj = torus.conj_matrix.scale(Scalar(2))
    alg = BigradedAlgebra(torus.g, torus.names, torus.bidegrees,
                          torus._products, bad_conj, torus.nu)
    report = validate_algebra(alg)
    assert "conjugation-involution" in report.codes()


def test_real_degree_basis_is_fixed_by_conjugation(k3):
    for r in sorted(k3.by_degree):
        for v in k3.real_degree_basis(r):
            assert k3.conj_vec(v) == v


def test_mulvec_matches_structure_constants(torus):
    x = torus.basis_vector("dz1")
    y = torus.basis_vector("dzb1")
    assert torus.mulvec(x, y) == torus.basis_vector("dz1^dzb1")
    assert torus.mulvec(y, x) == tuple(-c for c in torus.basis_vector("dz1^dzb1"))
