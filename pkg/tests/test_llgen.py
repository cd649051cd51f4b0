import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hlk import lefschetz as lz
from hlk import llgen
from hlk.exactlin import DenseMatrix, Scalar, kernel_image


def even_triples(alg, mode="even"):
    family, _ = lz.spanning_cone_family(alg, alg.kahler, mode=mode)
    gens = []
    for w in family:
        tri = lz.dual_lefschetz(alg, w, mode=mode)
        gens.extend([tri.L, tri.Lambda])
    return family, gens


def test_counting_operator_values(torus):
    b = llgen.counting_operator(torus)
    expected = {0: 1, 1: 0, 2: -1}
    for k in range(torus.n):
        assert b.at(k, k) == Scalar(expected[torus.degree_of_index(k)])


def test_closure_single_triple_is_sl2(g2k2):
    tri = lz.dual_lefschetz(g2k2, g2k2.kahler, mode="even")
    closed = llgen.lie_closure([tri.L, tri.Lambda])
    assert closed.closed and closed.dim == 3
    assert llgen.is_sl2_block(closed)
    assert closed.contains(tri.B)


def test_closure_zero_generator(g2k2):
    n = g2k2.n
    closed = llgen.lie_closure([DenseMatrix.zero(n, n)])
    assert closed.dim == 0 and closed.closed


def test_closure_g2_k3_is_so5(g2k3):
    _, gens = even_triples(g2k3)
    closed = llgen.lie_closure(gens)
    assert closed.closed and closed.dim == 10


def test_closure_respects_cap(g2k3):
    _, gens = even_triples(g2k3)
    partial = llgen.lie_closure(gens, cap=4)
    assert not partial.closed


@given(st.randoms())
@settings(max_examples=8, deadline=None)
def test_closure_order_independent(rng):
    from hlk.catalog import g2_family_algebra

    alg = g2_family_algebra(2)
    _, gens = even_triples(alg)
    shuffled = list(gens)
    rng.shuffle(shuffled)
    a = llgen.lie_closure(gens)
    b = llgen.lie_closure(shuffled)
    assert a.basis == b.basis


def test_phi_form_values(g2k2):
    phi = llgen.phi_form(g2k2)
    pos = {g_idx: t for t, g_idx in enumerate(phi.indices)}
    om = pos[g2k2.index_of("om")]
    one = pos[g2k2.index_of("one")]
    top = pos[g2k2.index_of("top")]
    assert phi.matrix.at(om, om) == Scalar(-1)      # -integral of om^2
    assert phi.matrix.at(top, one) == Scalar(1)
    assert phi.matrix.at(one, om).is_zero()         # degrees 0 + 2 != 4
    assert phi.nondegenerate


def test_phi_rejects_wrong_dimension(torus):
    with pytest.raises(ValueError):
        llgen.phi_form(torus)


def test_so_phi_equality_small_models(g2k2, g2k3):
    for alg, so_dim in ((g2k2, 6), (g2k3, 10)):
        _, gens = even_triples(alg)
        closed = llgen.lie_closure(gens)
        verdict = llgen.so_phi_equality(alg, closed)
        assert verdict.annihilators
        assert verdict.dim == so_dim == verdict.so_dim
        assert verdict.equal


def test_single_triple_is_proper_subalgebra(g2k2):
    tri = lz.dual_lefschetz(g2k2, g2k2.kahler, mode="even")
    closed = llgen.lie_closure([tri.L, tri.Lambda])
    verdict = llgen.so_phi_equality(g2k2, closed)
    assert verdict.annihilators and not verdict.equal
    assert verdict.dim == 3 < verdict.so_dim


def test_generators_annihilate_phi(g2k3):
    phi = llgen.phi_form(g2k3)
    _, gens = even_triples(g2k3)
    for x in gens:
        assert x.transpose().mul(phi.matrix).add(
            phi.matrix.mul(x)).is_zero_matrix()


def test_ideal_probe_simple_model(g2k2):
    _, gens = even_triples(g2k2)
    closed = llgen.lie_closure(gens)
    for seed in closed.basis:
        assert llgen.ideal_probe(closed, seed).dim == closed.dim


def test_ideal_probe_zero_seed(g2k2):
    _, gens = even_triples(g2k2)
    closed = llgen.lie_closure(gens)
    n = closed.ambient
    assert llgen.ideal_probe(closed, DenseMatrix.zero(n, n)).dim == 0


def test_ideal_probe_rejects_outside_span(g2k2):
    _, gens = even_triples(g2k2)
    closed = llgen.lie_closure(gens)
    outside = DenseMatrix.identity(closed.ambient)
    if not closed.contains(outside):
        with pytest.raises(ValueError):
            llgen.ideal_probe(closed, outside)


def test_killing_nondegenerate_dense_models(g2k2, g2k3):
    for alg in (g2k2, g2k3):
        _, gens = even_triples(alg)
        assert llgen.killing_nondegenerate(llgen.lie_closure(gens))


def test_jacobi_on_closure_basis(g2k2):
    _, gens = even_triples(g2k2)
    closed = llgen.lie_closure(gens)
    for a in closed.basis:
        for b in closed.basis:
            ab = a.commutator(b)
            for c in closed.basis:
                jac = ab.commutator(c).add(
                    b.commutator(c).commutator(a)).add(
                    c.commutator(a).commutator(b))
                assert jac.is_zero_matrix()


def test_lambda_kernel_property(g2k3):
    family, _ = even_triples(g2k3)
    for w in family:
        tri = lz.dual_lefschetz(g2k3, w, mode="even")
        deg2 = [t for t, g_idx in enumerate(tri.indices)
                if g2k3.degree_of_index(g_idx) == 2]
        lker, _ = kernel_image(tri.L.submatrix(range(tri.L.rows), deg2))
        mker, _ = kernel_image(tri.Lambda.submatrix(range(tri.L.rows), deg2))
        assert lker == mker


def test_product_model_dimensions():
    for n in (1, 2, 3):
        alg, family = llgen.product_model(n)
        gens = []
        for w in family:
            tri = lz.dual_lefschetz(alg, w)
            gens.extend([tri.L, tri.Lambda])
        closed = llgen.lie_closure(gens)
        assert closed.closed and closed.dim == 3 * n
        ideals = llgen.minimal_ideals(closed)
        assert len(ideals) == n
        assert all(llgen.is_sl2_block(i) for i in ideals)
        assert llgen.center_dimension(closed) == 0


def test_product_model_factor_ideal_is_proper():
    alg, family = llgen.product_model(3)
    gens = []
    for w in family:
        tri = lz.dual_lefschetz(alg, w)
        gens.extend([tri.L, tri.Lambda])
    closed = llgen.lie_closure(gens)
    ideals = llgen.minimal_ideals(closed)
    assert all(i.dim == 3 for i in ideals)
    assert all(i.dim < closed.dim for i in ideals)


def test_spanning_family_stable_under_enlargement(g2k2):
    family, _ = lz.spanning_cone_family(g2k2, g2k2.kahler, mode="even")
    gens = []
    for w in family:
        tri = lz.dual_lefschetz(g2k2, w, mode="even")
        gens.extend([tri.L, tri.Lambda])
    base = llgen.lie_closure(gens)
    # add one more cone class: 3 omega + f1
    from hlk.exactlin import vec_add, vec_scale

    extra = vec_add(vec_scale(Scalar(3), g2k2.kahler),
                    g2k2.basis_vector("f1"))
    tri = lz.dual_lefschetz(g2k2, extra, mode="even")
    enlarged = llgen.lie_closure(gens + [tri.L, tri.Lambda])
    assert enlarged.basis == base.basis
