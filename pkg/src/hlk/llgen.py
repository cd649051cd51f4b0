"""Operator Lie algebras generated by Lefschetz sl2 triples.

Bracket closures of {L_w, Lambda_w} families, the symmetric form phi on
the even part of a g=2 dense-leaf model together with the so(phi)
identification, ideal probes, and the finite stand-in for the
product-foliation phenomenon (N commuting sl2 blocks).
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import BigradedAlgebra
from .exactlin import (
    DenseMatrix,
    Scalar,
    SpanBuilder,
    ZERO,
    ONE,
    kernel_image,
    rref,
)
from .lefschetz import counting_operator  # noqa: F401  (re-exported here)

__all__ = [
    "OperatorLieAlgebra",
    "PhiForm",
    "SoPhiVerdict",
    "counting_operator",
    "lie_closure",
    "ideal_probe",
    "phi_form",
    "so_phi_equality",
    "product_model",
    "structure_constants",
    "killing_form",
    "killing_nondegenerate",
    "center_dimension",
    "minimal_ideals",
    "is_sl2_block",
    "bracket_table_digest",
]


@dataclass(frozen=True)
class OperatorLieAlgebra:
    """A span of endomorphisms with echelon-canonical basis."""

    ambient: int
    basis: tuple            # DenseMatrix members, canonical order
    closed: bool

    @property
    def dim(self) -> int:
        return len(self.basis)

    def span(self) -> SpanBuilder:
        sb = SpanBuilder(self.ambient * self.ambient)
        for m in self.basis:
            sb.add(m.entries)
        return sb

    def contains(self, mat: DenseMatrix) -> bool:
        return self.span().contains(mat.entries)


def lie_closure(generators, cap: int = 2000) -> OperatorLieAlgebra:
    """Smallest bracket-closed span containing the generators.

    Span growth by pairwise commutators until stable; the echelon span
    makes the result independent of generator enumeration order.  When
    the basis would exceed ``cap`` the partial result is returned with
    ``closed=False``.
    """
    generators = list(generators)
    if not generators:
        raise ValueError("lie_closure needs at least one generator")
    n = generators[0].rows
    for g in generators:
        if g.rows != n or g.cols != n:
            raise ValueError("generators must share one ambient dimension")
    sb = SpanBuilder(n * n)
    members = []
    frontier = []
    for g in generators:
        if sb.add(g.entries):
            members.append(g)
            frontier.append(g)
    while frontier:
        if sb.dim > cap:
            return OperatorLieAlgebra(
                ambient=n,
                basis=tuple(DenseMatrix(n, n, row) for row in sb.basis),
                closed=False)
        new_frontier = []
        for x in frontier:
            for y in members:
                c = x.commutator(y)
                if sb.add(c.entries):
                    members.append(c)
                    new_frontier.append(c)
        frontier = new_frontier
    return OperatorLieAlgebra(
        ambient=n,
        basis=tuple(DenseMatrix(n, n, row) for row in sb.basis),
        closed=True)


def ideal_probe(lie: OperatorLieAlgebra, seed: DenseMatrix) -> OperatorLieAlgebra:
    """Smallest ideal of ``lie`` containing ``seed``."""
    if seed.rows != lie.ambient or seed.cols != lie.ambient:
        raise ValueError("seed has the wrong shape")
    if not lie.contains(seed):
        raise ValueError("seed is not in the span of the algebra")
    n = lie.ambient
    sb = SpanBuilder(n * n)
    frontier = []
    if sb.add(seed.entries):
        frontier.append(seed)
    members = list(frontier)
    while frontier:
        new_frontier = []
        for x in frontier:
            for b in lie.basis:
                c = x.commutator(b)
                if sb.add(c.entries):
                    members.append(c)
                    new_frontier.append(c)
        frontier = new_frontier
    return OperatorLieAlgebra(
        ambient=n,
        basis=tuple(DenseMatrix(n, n, row) for row in sb.basis),
        closed=True)


# -- structure constants, Killing form, ideals -----------------------------


def structure_constants(lie: OperatorLieAlgebra):
    """c[i][j] = coordinates of [b_i, b_j] in the canonical basis."""
    sb = lie.span()
    dim = lie.dim
    table = {}
    for i in range(dim):
        for j in range(dim):
            coords = sb.coordinates(lie.basis[i].commutator(lie.basis[j]).entries)
            if coords is None:
                raise ValueError("algebra is not bracket closed")
            table[(i, j)] = coords
    return table


def killing_form(lie: OperatorLieAlgebra) -> DenseMatrix:
    dim = lie.dim
    table = structure_constants(lie)
    ad = []
    for i in range(dim):
        ad.append(DenseMatrix.from_columns(
            [table[(i, j)] for j in range(dim)], rows=dim))
    entries = []
    for i in range(dim):
        for j in range(dim):
            prod = ad[i].mul(ad[j])
            tr = ZERO
            for k in range(dim):
                tr = tr + prod.at(k, k)
            entries.append(tr)
    return DenseMatrix(dim, dim, entries)


def killing_nondegenerate(lie: OperatorLieAlgebra) -> bool:
    k = killing_form(lie)
    rows, _ = rref(k.row_lists())
    return len(rows) == lie.dim


def center_dimension(lie: OperatorLieAlgebra) -> int:
    """Dimension of {x in L : [x, L] = 0}."""
    dim = lie.dim
    if dim == 0:
        return 0
    table = structure_constants(lie)
    rows = []
    for j in range(dim):          # bracket against b_j
        for t in range(dim):      # component t of the result
            rows.append([table[(k, j)][t] for k in range(dim)])
    kernel, _ = kernel_image(DenseMatrix.from_rows(rows))
    return kernel.dim


def minimal_ideals(lie: OperatorLieAlgebra):
    """Distinct minimal ideals among those generated by basis seeds."""
    probed = {}
    for b in lie.basis:
        ideal = ideal_probe(lie, b)
        probed[ideal.basis] = ideal
    ideals = list(probed.values())
    minimal = []
    for cand in ideals:
        sb = cand.span()
        proper_sub = any(
            other.dim < cand.dim and all(sb.contains(m.entries)
                                         for m in other.basis)
            for other in ideals)
        if not proper_sub:
            minimal.append(cand)
    return minimal


def is_sl2_block(sub: OperatorLieAlgebra) -> bool:
    """dim 3 with nondegenerate Killing form, i.e. a copy of sl2 over C."""
    return sub.dim == 3 and killing_nondegenerate(sub)


def bracket_table_digest(lie: OperatorLieAlgebra) -> str:
    """Stable hash of the structure constants, for reports."""
    import hashlib

    table = structure_constants(lie)
    h = hashlib.sha256()
    for i in range(lie.dim):
        for j in range(lie.dim):
            for c in table[(i, j)]:
                h.update(str(c).encode())
                h.update(b",")
            h.update(b";")
    return h.hexdigest()


# -- the form phi and Theorem-5.2-style identification ---------------------


@dataclass(frozen=True)
class PhiForm:
    """Symmetric pairing on the even part of a g=2 dense-leaf model."""

    indices: tuple          # global basis indices of the even part, ascending
    matrix: DenseMatrix

    @property
    def nondegenerate(self) -> bool:
        rows, _ = rref(self.matrix.row_lists())
        return len(rows) == self.matrix.rows


def phi_form(a: BigradedAlgebra) -> PhiForm:
    """phi pairs H^k with H^(4-k); on H^2 x H^2 it is minus the cup pairing."""
    if a.g != 2:
        raise ValueError("phi is defined for g = 2 models")
    idx = sorted(k for k in range(a.n) if a.degree_of_index(k) % 2 == 0)
    entries = []
    for i in idx:
        di = a.degree_of_index(i)
        row = []
        for j in idx:
            dj = a.degree_of_index(j)
            if di + dj != 4:
                row.append(ZERO)
                continue
            val = a.pairing(a.basis_vector(i), a.basis_vector(j))
            row.append(-val if di == 2 else val)
        entries.append(row)
    return PhiForm(indices=tuple(idx), matrix=DenseMatrix.from_rows(entries))


@dataclass(frozen=True)
class SoPhiVerdict:
    annihilators: bool      # every basis member X satisfies X^t phi + phi X = 0
    dim: int
    so_dim: int

    @property
    def equal(self) -> bool:
        return self.annihilators and self.dim == self.so_dim


def so_phi_equality(a: BigradedAlgebra, lie: OperatorLieAlgebra) -> SoPhiVerdict:
    """Compare a closed algebra on H^even with so(H^even, phi)."""
    phi = phi_form(a)
    if lie.ambient != len(phi.indices):
        raise ValueError("algebra does not act on the even part")
    ann = all(x.transpose().mul(phi.matrix).add(phi.matrix.mul(x)).is_zero_matrix()
              for x in lie.basis)
    n = len(phi.indices)
    return SoPhiVerdict(annihilators=ann, dim=lie.dim, so_dim=n * (n - 1) // 2)


# -- product model (no dense leaf) -----------------------------------------


def product_model(n_factors: int):
    """N independent copies of the 2-sphere algebra over N leaf-space points.

    Returns the graded algebra (``dense_leaf=False``) and a family of
    cone classes, tuples with a nonzero coefficient in every factor,
    whose L and Lambda operators generate N commuting sl2 blocks.
    """
    if n_factors < 1:
        raise ValueError("need at least one factor")
    names = [f"e{k + 1}" for k in range(n_factors)] + \
            [f"t{k + 1}" for k in range(n_factors)]
    bidegrees = [(0, 0)] * n_factors + [(1, 1)] * n_factors
    products = {}
    for kf in range(n_factors):
        e, t = kf, n_factors + kf
        products[(e, e)] = {e: ONE}
        products[(e, t)] = {t: ONE}
        products[(t, e)] = {t: ONE}
    conj = DenseMatrix.identity(2 * n_factors)
    nu = [ZERO] * (2 * n_factors)
    alg = BigradedAlgebra(1, names, bidegrees, products, conj, nu,
                          dense_leaf=False, name=f"s1s2-N{n_factors}")
    family = []
    for j in range(n_factors):
        coeffs = [ZERO] * (2 * n_factors)
        for k in range(n_factors):
            coeffs[n_factors + k] = Scalar(2 if k == j else 1)
        family.append(tuple(coeffs))
    return alg, family
