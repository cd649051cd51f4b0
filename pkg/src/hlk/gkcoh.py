"""Relative Lie algebra cohomology with its Hodge bigrading.

Symmetric pairs (g1, k1) with invariant complex structure ad z0, split
p1C = p+ (+) p-, weight-windowed unitary modules, the equivariant
cochain complex Hom_{K1}(Lambda^p p+ (x) Lambda^q p-, V), its bigraded
cohomology, the Casimir scalar and the vanishing dichotomy, and the
invariant Lefschetz operator on the d = 0 branch.

Modules are stored over a finite weight window.  Weights inside the
window that carry no space are genuinely zero; weights outside are
unknown, and any operation that would need them raises WindowError
instead of silently truncating.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .algebra import ValidationReport
from .exactlin import (
    DenseMatrix,
    Scalar,
    SpanBuilder,
    Subspace,
    ZERO,
    ONE,
    hermitian_definiteness,
    kernel_image,
    quotient_cohomology,
    rref,
    solve,
    vec_is_zero,
    zero_vector,
)

__all__ = [
    "WindowError",
    "ReductivePair",
    "PSplit",
    "ModuleGenerator",
    "AdmissibleModule",
    "RelativeComplex",
    "CasimirResult",
    "DichotomyResult",
    "ModuleAnalysis",
    "validate_pair",
    "split_p",
    "validate_module",
    "build_complex",
    "cohomology_bigraded",
    "ungraded_cohomology_dims",
    "laplacian_kernel_dims",
    "casimir_action",
    "vanishing_dichotomy",
    "lefschetz_on_complex",
    "analyze_module",
]


class WindowError(ValueError):
    """An operation needed module data beyond the stored weight window."""


# -- reductive pairs --------------------------------------------------------


class ReductivePair:
    """Structure constants of g1 with Cartan split k1 (+) p1.

    ``brackets`` maps (i, j) -> coefficient vector of [e_i, e_j]; only
    nonzero pairs need to be given, antisymmetry is filled in.
    """

    def __init__(self, names, brackets, k_indices, p_indices, b_form, z0,
                 name=""):
        self.names = tuple(names)
        self.dim = len(self.names)
        self.k_indices = tuple(k_indices)
        self.p_indices = tuple(p_indices)
        self.b_form = b_form
        self.z0 = tuple(Scalar.of(x) for x in z0)
        self.name = name
        table = {}
        for (i, j), vec in brackets.items():
            table[(i, j)] = tuple(Scalar.of(x) for x in vec)
        for (i, j), vec in list(table.items()):
            if (j, i) not in table:
                table[(j, i)] = tuple(-x for x in vec)
        self.brackets = table

    def bracket_basis(self, i: int, j: int) -> tuple:
        return self.brackets.get((i, j), zero_vector(self.dim))

    def bracket(self, x, y) -> tuple:
        out = [ZERO] * self.dim
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            for j, yj in enumerate(y):
                if yj.is_zero():
                    continue
                c = xi * yj
                for k, v in enumerate(self.bracket_basis(i, j)):
                    if not v.is_zero():
                        out[k] = out[k] + c * v
        return tuple(out)

    def ad(self, x) -> DenseMatrix:
        cols = [self.bracket(x, tuple(ONE if t == j else ZERO
                                      for t in range(self.dim)))
                for j in range(self.dim)]
        return DenseMatrix.from_columns(cols, rows=self.dim)

    def basis_vector(self, i: int) -> tuple:
        return tuple(ONE if t == i else ZERO for t in range(self.dim))


def validate_pair(pair: ReductivePair) -> ValidationReport:
    """Check the symmetric-pair axioms, B-definiteness and z0 exactly."""
    rep = ValidationReport()
    n = pair.dim
    k_set, p_set = set(pair.k_indices), set(pair.p_indices)
    if k_set | p_set != set(range(n)) or k_set & p_set:
        rep.add("cartan-partition", "k and p indices do not partition the basis")
        return rep

    for i in range(n):
        for j in range(n):
            lhs = pair.bracket_basis(i, j)
            rhs = tuple(-x for x in pair.bracket_basis(j, i))
            if lhs != rhs:
                rep.add("antisymmetry",
                        f"[{pair.names[i]},{pair.names[j]}] != "
                        f"-[{pair.names[j]},{pair.names[i]}]")

    for i in range(n):
        ei = pair.basis_vector(i)
        for j in range(n):
            ej = pair.basis_vector(j)
            for k in range(n):
                ek = pair.basis_vector(k)
                total = [ZERO] * n
                for term in (pair.bracket(pair.bracket(ei, ej), ek),
                             pair.bracket(pair.bracket(ej, ek), ei),
                             pair.bracket(pair.bracket(ek, ei), ej)):
                    total = [a + b for a, b in zip(total, term)]
                if not vec_is_zero(tuple(total)):
                    rep.add("jacobi",
                            f"Jacobi fails on ({pair.names[i]},"
                            f"{pair.names[j]},{pair.names[k]})")

    def support_in(vec, allowed):
        return all(x.is_zero() for t, x in enumerate(vec) if t not in allowed)

    for i in pair.k_indices:
        for j in pair.k_indices:
            if not support_in(pair.bracket_basis(i, j), k_set):
                rep.add("cartan-kk", "[k,k] leaves k")
        for j in pair.p_indices:
            if not support_in(pair.bracket_basis(i, j), p_set):
                rep.add("cartan-kp", "[k,p] leaves p")
    for i in pair.p_indices:
        for j in pair.p_indices:
            if not support_in(pair.bracket_basis(i, j), k_set):
                rep.add("cartan-pp", "[p,p] leaves k")

    b = pair.b_form
    if b.rows != n or b.cols != n:
        rep.add("b-shape", "B has the wrong shape")
        return rep
    for x in b.entries:
        if not x.is_real():
            rep.add("b-real", "B has non-real entries")
            break
    if b.transpose() != b:
        rep.add("b-symmetric", "B is not symmetric")
    for i in range(n):
        ei = pair.basis_vector(i)
        for j in range(n):
            ej = pair.basis_vector(j)
            for k in range(n):
                ek = pair.basis_vector(k)
                lhs = _bilinear(b, pair.bracket(ei, ej), ek)
                rhs = _bilinear(b, ej, pair.bracket(ei, ek))
                if lhs + rhs != ZERO:
                    rep.add("b-invariance",
                            f"B([{pair.names[i]},{pair.names[j]}],"
                            f"{pair.names[k]}) + ... != 0")
    for i in pair.k_indices:
        for j in pair.p_indices:
            if b.at(i, j) != ZERO:
                rep.add("b-kp-orthogonal", "B does not see k and p orthogonally")
    k_idx = list(pair.k_indices)
    p_idx = list(pair.p_indices)
    if k_idx:
        neg_k = b.submatrix(k_idx, k_idx).scale(Scalar(-1))
        try:
            if not hermitian_definiteness(neg_k):
                rep.add("b-k-negative", "B restricted to k is not negative definite")
        except ValueError:
            rep.add("b-k-negative", "B restricted to k is not symmetric")
    if p_idx:
        try:
            if not hermitian_definiteness(b.submatrix(p_idx, p_idx)):
                rep.add("b-p-positive", "B restricted to p is not positive definite")
        except ValueError:
            rep.add("b-p-positive", "B restricted to p is not symmetric")

    if not support_in(pair.z0, k_set):
        rep.add("z0-location", "z0 is not in k")
    for i in pair.k_indices:
        if not vec_is_zero(pair.bracket(pair.z0, pair.basis_vector(i))):
            rep.add("z0-central", f"[z0, {pair.names[i]}] != 0")
    ad_z0 = pair.ad(pair.z0)
    sq = ad_z0.mul(ad_z0)
    for i in p_idx:
        col = sq.column(i)
        expect = tuple(Scalar(-1) if t == i else ZERO for t in range(n))
        if col != expect:
            rep.add("z0-square", "(ad z0)^2 is not -id on p")
            break
    return rep


def _bilinear(b: DenseMatrix, x, y) -> Scalar:
    acc = ZERO
    for i, xi in enumerate(x):
        if xi.is_zero():
            continue
        for j, yj in enumerate(y):
            if not yj.is_zero():
                acc = acc + xi * b.at(i, j) * yj
    return acc


@dataclass(frozen=True)
class PSplit:
    """Exact eigenbases of J = ad z0 on the complexified p1."""

    plus: tuple      # vectors in g1_C coordinates, +i eigenvectors
    minus: tuple     # -i eigenvectors

    @property
    def dim(self) -> int:
        return len(self.plus)


def split_p(pair: ReductivePair) -> PSplit:
    ad_z0 = pair.ad(pair.z0)
    n = pair.dim
    p_idx = list(pair.p_indices)
    block = ad_z0.submatrix(p_idx, p_idx)
    d2 = len(p_idx)
    plus, minus = [], []
    for sign, out in ((Scalar(0, 1), plus), (Scalar(0, -1), minus)):
        shifted = block.sub(DenseMatrix.diagonal([sign] * d2))
        kernel, _ = kernel_image(shifted)
        for v in kernel.basis:
            full = [ZERO] * n
            for val, t in zip(v, p_idx):
                full[t] = val
            out.append(tuple(full))
    if len(plus) != len(minus) or 2 * len(plus) != d2:
        raise ValueError("ad z0 does not define a complex structure on p")
    return PSplit(plus=tuple(plus), minus=tuple(minus))


# -- admissible weight-windowed modules -------------------------------------


@dataclass(frozen=True)
class ModuleGenerator:
    name: str
    coords: tuple    # coordinates in the pair basis, complex
    shift: int       # weight shift of the action


class AdmissibleModule:
    """K-weight graded module data over a finite window."""

    def __init__(self, name, pair_name, window, weights, forms, generators,
                 actions, unitary=True):
        self.name = name
        self.pair_name = pair_name
        self.window = int(window)
        # the adjoint-type test modules are not unitarizable; skewness
        # is only enforced when this flag is set
        self.unitary = bool(unitary)
        self.weights = {int(w): int(d) for w, d in weights.items() if d}
        self.forms = dict(forms)
        self.generators = tuple(generators)
        self.actions = dict(actions)
        self.sorted_weights = sorted(self.weights)
        self.offsets = {}
        off = 0
        for w in self.sorted_weights:
            self.offsets[w] = off
            off += self.weights[w]
        self.total_dim = off
        self.gen_by_name = {g.name: g for g in self.generators}

    def dim_at(self, w: int) -> int:
        if abs(w) > self.window:
            raise WindowError(f"weight {w} is outside the stored window")
        return self.weights.get(w, 0)

    def slice_of(self, w: int):
        off = self.offsets[w]
        return off, off + self.weights[w]

    def action_block(self, gen_name: str, from_w: int) -> DenseMatrix:
        gen = self.gen_by_name[gen_name]
        to_w = from_w + gen.shift
        rows = self.dim_at(to_w)
        cols = self.dim_at(from_w)
        block = self.actions.get((gen_name, from_w))
        if block is None:
            if rows == 0 or cols == 0:
                return DenseMatrix.zero(rows, cols)
            raise WindowError(
                f"action block ({gen_name}, from weight {from_w}) is missing")
        if block.rows != rows or block.cols != cols:
            raise ValueError(
                f"action block ({gen_name}, {from_w}) has shape "
                f"{block.rows}x{block.cols}, expected {rows}x{cols}")
        return block

    def shifts(self):
        return sorted({g.shift for g in self.generators})


class ModuleOps:
    """Operator calculus for a module over a fixed pair and split."""

    def __init__(self, pair: ReductivePair, split: PSplit,
                 module: AdmissibleModule):
        self.pair = pair
        self.split = split
        self.module = module
        gamma = DenseMatrix.from_columns(
            [g.coords for g in module.generators], rows=pair.dim)
        if gamma.cols != pair.dim:
            raise ValueError("module generators must form a basis of g1_C")
        self.gamma_inv = _invert_or_none(gamma)
        if self.gamma_inv is None:
            raise ValueError("module generators are linearly dependent")

    def expand(self, x) -> tuple:
        """Coefficients of a g1_C vector in the module's generator basis."""
        return self.gamma_inv.apply(tuple(Scalar.of(v) for v in x))

    def apply_gen(self, gen: ModuleGenerator, vec):
        """Apply one generator to a flat windowed vector."""
        m = self.module
        out = [ZERO] * m.total_dim
        for w in m.sorted_weights:
            lo, hi = m.slice_of(w)
            piece = vec[lo:hi]
            if all(x.is_zero() for x in piece):
                continue
            target = w + gen.shift
            if abs(target) > m.window:
                raise WindowError(
                    f"applying {gen.name} from weight {w} exits the window")
            if m.weights.get(target, 0) == 0:
                continue
            block = m.action_block(gen.name, w)
            tlo, thi = m.slice_of(target)
            img = block.apply(tuple(piece))
            for t, val in enumerate(img):
                if not val.is_zero():
                    out[tlo + t] = out[tlo + t] + val
        return tuple(out)

    def apply(self, x, vec):
        """Apply rho(x) for any x in g1_C to a flat windowed vector."""
        coeffs = self.expand(x)
        out = [ZERO] * self.module.total_dim
        for c, gen in zip(coeffs, self.module.generators):
            if c.is_zero():
                continue
            img = self.apply_gen(gen, vec)
            for t, val in enumerate(img):
                if not val.is_zero():
                    out[t] = out[t] + c * val
        return tuple(out)

    def matrix(self, x) -> DenseMatrix:
        d = self.module.total_dim
        cols = [self.apply(x, tuple(ONE if t == j else ZERO for t in range(d)))
                for j in range(d)]
        return DenseMatrix.from_columns(cols, rows=d)

    def gram(self) -> DenseMatrix:
        """Block-diagonal Gram of the stored weight-space forms."""
        m = self.module
        d = m.total_dim
        entries = [[ZERO] * d for _ in range(d)]
        for w in m.sorted_weights:
            lo, _ = m.slice_of(w)
            g = m.forms[w]
            for i in range(g.rows):
                for j in range(g.cols):
                    entries[lo + i][lo + j] = g.at(i, j)
        return DenseMatrix.from_rows(entries)


def _invert_or_none(m: DenseMatrix):
    if m.rows != m.cols:
        return None
    aug = [list(m.row(i)) + list(DenseMatrix.identity(m.rows).row(i))
           for i in range(m.rows)]
    rows, pivots = rref(aug)
    if len(rows) != m.rows or pivots[:m.rows] != list(range(m.rows)):
        return None
    return DenseMatrix.from_rows([row[m.rows:] for row in rows])


def _span_coords(vectors, target):
    sb = SpanBuilder(len(target))
    for v in vectors:
        sb.add(v)
    return sb


def validate_module(pair: ReductivePair, split: PSplit,
                    module: AdmissibleModule) -> ValidationReport:
    """Exact checks: purity and span of the generators, presence and
    shapes of the interior action blocks, bracket compatibility on
    two-step interior weights, positive forms, and skew-Hermitian
    action of the real form (unitarity)."""
    rep = ValidationReport()
    n = pair.dim
    for g in module.generators:
        if len(g.coords) != n:
            rep.add("generator-shape", f"{g.name} has wrong coordinate length")
            return rep

    k_span = SpanBuilder(n)
    for i in pair.k_indices:
        k_span.add(pair.basis_vector(i))
    plus_span = _span_coords(split.plus, zero_vector(n))
    minus_span = _span_coords(split.minus, zero_vector(n))

    for g in module.generators:
        in_k = k_span.contains(g.coords)
        in_plus = plus_span.contains(g.coords)
        in_minus = minus_span.contains(g.coords)
        if not (in_k or in_plus or in_minus):
            rep.add("generator-purity",
                    f"{g.name} is not of pure type (k, p+ or p-)")
        if in_k and g.shift != 0:
            rep.add("generator-shift", f"k-type generator {g.name} must have shift 0")

    gamma = DenseMatrix.from_columns([g.coords for g in module.generators],
                                     rows=n)
    rows, _ = rref(gamma.row_lists())
    if gamma.cols != n or len(rows) != n:
        rep.add("generator-span", "generators do not form a basis of g1_C")
        return rep

    for w, d in module.weights.items():
        if abs(w) > module.window:
            rep.add("window", f"weight {w} declared outside the window")
        g = module.forms.get(w)
        if g is None or g.rows != d or g.cols != d:
            rep.add("form-shape", f"weight {w} lacks a {d}x{d} form")
            continue
        try:
            if not hermitian_definiteness(g):
                rep.add("form-positive", f"form at weight {w} is not positive")
        except ValueError:
            rep.add("form-hermitian", f"form at weight {w} is not Hermitian")

    # required action blocks
    for g in module.generators:
        for w, d in module.weights.items():
            target = w + g.shift
            if abs(target) > module.window:
                continue
            if module.weights.get(target, 0) == 0:
                continue
            block = module.actions.get((g.name, w))
            if block is None:
                rep.add("action-missing",
                        f"missing block ({g.name}, from weight {w})")
            elif (block.rows, block.cols) != (module.weights[target], d):
                rep.add("action-shape",
                        f"block ({g.name}, {w}) has the wrong shape")
    if not rep.ok:
        return rep

    ops = ModuleOps(pair, split, module)
    shifts = [g.shift for g in module.generators]

    def two_step_interior(w):
        return all(abs(w + s) <= module.window for s in shifts) and \
            all(abs(w + s + t) <= module.window for s in shifts for t in shifts)

    interior = [w for w in module.sorted_weights if two_step_interior(w)]

    # bracket compatibility on interior weights
    for gi in module.generators:
        for gj in module.generators:
            lie = pair.bracket(gi.coords, gj.coords)
            for w in interior:
                lo, hi = module.slice_of(w)
                for t in range(lo, hi):
                    basis_vec = tuple(ONE if u == t else ZERO
                                      for u in range(module.total_dim))
                    lhs = ops.apply(gi.coords, ops.apply(gj.coords, basis_vec))
                    rhs = ops.apply(gj.coords, ops.apply(gi.coords, basis_vec))
                    com = tuple(a - b for a, b in zip(lhs, rhs))
                    target = ops.apply(lie, basis_vec)
                    if com != target:
                        rep.add("bracket-compatibility",
                                f"rho([{gi.name},{gj.name}]) mismatch at "
                                f"weight {w}")
                        break

    # unitarity: rho(x)* = -rho(conj x), blockwise against the stored forms
    if not module.unitary:
        return rep
    for g in module.generators:
        conj_coords = tuple(c.conjugate() for c in g.coords)
        coeffs = ops.expand(conj_coords)
        for w in module.sorted_weights:
            target = w + g.shift
            if abs(target) > module.window or module.weights.get(target, 0) == 0:
                continue
            m_block = module.action_block(g.name, w)
            # block of rho(conj x) from target back to w
            n_block = DenseMatrix.zero(module.weights[w],
                                       module.weights[target])
            for c, gen2 in zip(coeffs, module.generators):
                if c.is_zero() or gen2.shift != -g.shift:
                    continue
                piece = module.action_block(gen2.name, target)
                n_block = n_block.add(piece.scale(c))
            lhs = m_block.conj_transpose().mul(module.forms[target])
            rhs = module.forms[w].mul(n_block).scale(Scalar(-1))
            if lhs != rhs:
                rep.add("unitarity",
                        f"{g.name} is not skew-adjoint from weight {w}")
    return rep


# -- the relative complex ---------------------------------------------------


def _sort_sign(seq):
    """Sort a tuple of indices; returns (sorted tuple, sign) or None."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] == seq[j + 1]:
                return None
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return tuple(seq), sign


@dataclass
class RelativeComplex:
    """Equivariant cochains C^(p,q) with the two differential components."""

    p_dim: int                      # d = dim p+
    wedges: dict                    # (p,q) -> list of (I, J)
    bases: dict                     # (p,q) -> tuple of flat cochain vectors
    d_plus: dict                    # (p,q) -> matrix into (p+1, q)
    d_minus: dict                   # (p,q) -> matrix into (p, q+1)
    v_total: int

    def dim(self, p: int, q: int) -> int:
        return len(self.bases.get((p, q), ()))

    def dims(self) -> dict:
        d = self.p_dim
        return {(p, q): self.dim(p, q)
                for p in range(d + 1) for q in range(d + 1)}

    def differential_is_zero(self) -> bool:
        mats = list(self.d_plus.values()) + list(self.d_minus.values())
        return all(m.is_zero_matrix() for m in mats)

    def total_dims(self) -> dict:
        out = {}
        for (p, q), basis in self.bases.items():
            out[p + q] = out.get(p + q, 0) + len(basis)
        return out


def build_complex(pair: ReductivePair, split: PSplit,
                  module: AdmissibleModule) -> RelativeComplex:
    """Equivariant cochain bases and the bigraded differential.

    K1-invariance of a cochain is k1-equivariance, a linear system per
    bidegree; the differential is the action-only alternating sum, the
    bracket terms being absent for a symmetric pair.
    """
    ops = ModuleOps(pair, split, module)
    d = split.dim
    dv = module.total_dim
    n = pair.dim

    # ad-action of each k-basis element on the p+/- bases
    k_plus, k_minus = {}, {}
    for ki in pair.k_indices:
        h = pair.basis_vector(ki)
        kp_cols, km_cols = [], []
        for u in split.plus:
            coords = _coords_in(split.plus, pair.bracket(h, u))
            if coords is None:
                raise ValueError("[k, p+] is not contained in p+")
            kp_cols.append(coords)
        for v in split.minus:
            coords = _coords_in(split.minus, pair.bracket(h, v))
            if coords is None:
                raise ValueError("[k, p-] is not contained in p-")
            km_cols.append(coords)
        k_plus[ki] = kp_cols     # column j = coeffs of [h, u_j] in u-basis
        k_minus[ki] = km_cols

    rho_k = {ki: ops.matrix(pair.basis_vector(ki)) for ki in pair.k_indices}

    wedges = {}
    bases = {}
    for p in range(d + 1):
        for q in range(d + 1):
            wl = [(ii, jj)
                  for ii in combinations(range(d), p)
                  for jj in combinations(range(d), q)]
            wedges[(p, q)] = wl
            ambient = len(wl) * dv
            if ambient == 0 or dv == 0:
                bases[(p, q)] = ()
                continue
            rows = []
            wpos = {w: t for t, w in enumerate(wl)}
            for ki in pair.k_indices:
                rk = rho_k[ki]
                for wt, (ii, jj) in enumerate(wl):
                    # ad_h moves the wedge; collect coefficients per target
                    moved = {}
                    for a, idx in enumerate(ii):
                        for b in range(d):
                            c = k_plus[ki][idx][b]
                            if c.is_zero():
                                continue
                            res = _sort_sign(tuple(ii[:a]) + (b,) + tuple(ii[a + 1:]))
                            if res is None:
                                continue
                            new_ii, sgn = res
                            key = (new_ii, jj)
                            moved[key] = moved.get(key, ZERO) + Scalar(sgn) * c
                    for a, idx in enumerate(jj):
                        for b in range(d):
                            c = k_minus[ki][idx][b]
                            if c.is_zero():
                                continue
                            res = _sort_sign(tuple(jj[:a]) + (b,) + tuple(jj[a + 1:]))
                            if res is None:
                                continue
                            new_jj, sgn = res
                            key = (ii, new_jj)
                            moved[key] = moved.get(key, ZERO) + Scalar(sgn) * c
                    # rho(h) f(xi) - f(ad_h xi) = 0, one row per V-coordinate
                    for vout in range(dv):
                        row = [ZERO] * ambient
                        for vin in range(dv):
                            c = rk.at(vout, vin)
                            if not c.is_zero():
                                row[wt * dv + vin] = row[wt * dv + vin] + c
                        for key, c in moved.items():
                            if c.is_zero():
                                continue
                            row[wpos[key] * dv + vout] = \
                                row[wpos[key] * dv + vout] - c
                        if any(not x.is_zero() for x in row):
                            rows.append(row)
            if rows:
                kernel, _ = kernel_image(DenseMatrix.from_rows(rows))
                bases[(p, q)] = kernel.basis
            else:
                bases[(p, q)] = Subspace.full(ambient).basis

    # differentials
    builders = {}
    for key, basis in bases.items():
        sb = SpanBuilder(len(wedges[key]) * dv if wedges[key] else 0)
        for vec in basis:
            sb.add(vec)
        builders[key] = sb

    d_plus, d_minus = {}, {}
    for p in range(d + 1):
        for q in range(d + 1):
            src = bases[(p, q)]
            for (tp, tq), store in (((p + 1, q), d_plus), ((p, q + 1), d_minus)):
                if tp > d or tq > d:
                    store[(p, q)] = DenseMatrix.zero(0, len(src))
                    continue
                cols = []
                for f in src:
                    img = _apply_d(ops, split, wedges, f, (p, q), (tp, tq), dv)
                    coords = builders[(tp, tq)].coordinates(img)
                    if coords is None:
                        raise ArithmeticError(
                            "differential left the equivariant subspace")
                    cols.append(coords)
                store[(p, q)] = DenseMatrix.from_columns(
                    cols, rows=len(bases[(tp, tq)]))
    return RelativeComplex(p_dim=d, wedges=wedges, bases=bases,
                           d_plus=d_plus, d_minus=d_minus, v_total=dv)


def _coords_in(vectors, target):
    """Coordinates of ``target`` in the span of ``vectors``, or None."""
    if not vectors:
        return None if any(not x.is_zero() for x in target) else ()
    m = DenseMatrix.from_columns(list(vectors), rows=len(vectors[0]))
    return solve(m, target)


def _apply_d(ops: ModuleOps, split: PSplit, wedges, f, src_key, dst_key, dv):
    """Evaluate the relative differential of a flat cochain vector."""
    p, q = src_key
    tp, tq = dst_key
    src_w = wedges[src_key]
    dst_w = wedges[dst_key]
    spos = {w: t for t, w in enumerate(src_w)}
    out = [ZERO] * (len(dst_w) * dv)
    for wt, (ii, jj) in enumerate(dst_w):
        acc = [ZERO] * dv
        if tp == p + 1:
            for a in range(len(ii)):
                rest = (tuple(ii[:a]) + tuple(ii[a + 1:]), jj)
                st = spos.get(rest)
                if st is None:
                    continue
                piece = f[st * dv:(st + 1) * dv]
                if all(x.is_zero() for x in piece):
                    continue
                img = ops.apply(split.plus[ii[a]], tuple(piece))
                sgn = Scalar(-1 if a % 2 else 1)
                for t, val in enumerate(img):
                    if not val.is_zero():
                        acc[t] = acc[t] + sgn * val
        else:
            for b in range(len(jj)):
                rest = (ii, tuple(jj[:b]) + tuple(jj[b + 1:]))
                st = spos.get(rest)
                if st is None:
                    continue
                piece = f[st * dv:(st + 1) * dv]
                if all(x.is_zero() for x in piece):
                    continue
                img = ops.apply(split.minus[jj[b]], tuple(piece))
                sgn = Scalar(-1 if (len(ii) + b) % 2 else 1)
                for t, val in enumerate(img):
                    if not val.is_zero():
                        acc[t] = acc[t] + sgn * val
        for t, val in enumerate(acc):
            if not val.is_zero():
                out[wt * dv + t] = val
    return tuple(out)


# -- cohomology --------------------------------------------------------------


def complex_sanity(cx: RelativeComplex) -> bool:
    """d has pure (1,0) and (0,1) parts squaring and anticommuting to 0."""
    d = cx.p_dim
    for p in range(d + 1):
        for q in range(d + 1):
            dp = cx.d_plus[(p, q)]
            dm = cx.d_minus[(p, q)]
            if p + 1 <= d:
                if not cx.d_plus[(p + 1, q)].mul(dp).is_zero_matrix():
                    return False
            if q + 1 <= d:
                if not cx.d_minus[(p, q + 1)].mul(dm).is_zero_matrix():
                    return False
            if p + 1 <= d and q + 1 <= d:
                anti = cx.d_minus[(p + 1, q)].mul(dp).add(
                    cx.d_plus[(p, q + 1)].mul(dm))
                if not anti.is_zero_matrix():
                    return False
    return True


def cohomology_bigraded(cx: RelativeComplex) -> dict:
    """dim H^(p,q) per bidegree, via the (0,1)-component column complexes.

    For fixed p the cochains (C^(p,.), d'') form an honest complex; its
    cohomology models the Dolbeault-type groups carrying the bigrading.
    """
    out = {}
    d = cx.p_dim
    for p in range(d + 1):
        for q in range(d + 1):
            d_out = cx.d_minus[(p, q)]
            if q == 0:
                d_in = DenseMatrix.zero(cx.dim(p, q), 0)
            else:
                d_in = cx.d_minus[(p, q - 1)]
            out[(p, q)] = quotient_cohomology(d_in, d_out).dim
    return out


def _total_blocks(cx: RelativeComplex, n: int):
    """Ordered (p,q) keys of total degree n."""
    return [(p, n - p) for p in range(max(0, n - cx.p_dim),
                                      min(cx.p_dim, n) + 1)]


def total_differential(cx: RelativeComplex, n: int) -> DenseMatrix:
    """Matrix of d: C^n -> C^(n+1) in the block bases."""
    src = _total_blocks(cx, n)
    dst = _total_blocks(cx, n + 1)
    src_off, off = {}, 0
    for key in src:
        src_off[key] = off
        off += cx.dim(*key)
    src_dim = off
    dst_off, off = {}, 0
    for key in dst:
        dst_off[key] = off
        off += cx.dim(*key)
    dst_dim = off
    entries = [[ZERO] * src_dim for _ in range(dst_dim)]
    for (p, q) in src:
        for mat, tkey in ((cx.d_plus[(p, q)], (p + 1, q)),
                          (cx.d_minus[(p, q)], (p, q + 1))):
            if tkey not in dst_off:
                continue
            ro, co = dst_off[tkey], src_off[(p, q)]
            for i in range(mat.rows):
                for j in range(mat.cols):
                    v = mat.at(i, j)
                    if not v.is_zero():
                        entries[ro + i][co + j] = v
    return DenseMatrix.from_rows(entries) if dst_dim and src_dim else \
        DenseMatrix.zero(dst_dim, src_dim)


def ungraded_cohomology_dims(cx: RelativeComplex) -> dict:
    """dim H^n of the total complex, per degree n."""
    out = {}
    top = 2 * cx.p_dim
    for n in range(top + 1):
        d_out = total_differential(cx, n)
        if n == 0:
            d_in = DenseMatrix.zero(d_out.cols, 0)
        else:
            d_in = total_differential(cx, n - 1)
        out[n] = quotient_cohomology(d_in, d_out).dim
    return out


def _cochain_grams(pair: ReductivePair, split: PSplit,
                   module: AdmissibleModule, cx: RelativeComplex) -> dict:
    """Positive Hermitian Gram on each C^(p,q) basis.

    The V side pairs values with the stored weight-space forms; the
    wedge coordinate basis is declared orthonormal, which is enough for
    finite-dimensional Hodge theory (any exact positive form gives
    dim ker(Laplacian) = dim H).
    """
    ops = ModuleOps(pair, split, module)
    vg = ops.gram()
    dv = cx.v_total
    grams = {}
    for key, basis in cx.bases.items():
        if not basis:
            grams[key] = DenseMatrix.zero(0, 0)
            continue
        size = len(cx.wedges[key])
        entries = []
        for fa in basis:
            row = []
            for fb in basis:
                acc = ZERO
                for slot in range(size):
                    va = fa[slot * dv:(slot + 1) * dv]
                    vb = fb[slot * dv:(slot + 1) * dv]
                    for i, xa in enumerate(va):
                        if xa.is_zero():
                            continue
                        for j, xb in enumerate(vb):
                            if not xb.is_zero():
                                acc = acc + xa.conjugate() * vg.at(i, j) * xb
                row.append(acc)
            entries.append(row)
        grams[key] = DenseMatrix.from_rows(entries)
    return grams


def laplacian_kernel_dims(pair: ReductivePair, split: PSplit,
                          module: AdmissibleModule,
                          cx: RelativeComplex) -> dict:
    """dim ker(dd* + d*d) per total degree, for the induced inner products."""
    grams = _cochain_grams(pair, split, module, cx)
    top = 2 * cx.p_dim
    total_gram = {}
    for n in range(top + 1):
        keys = _total_blocks(cx, n)
        size = sum(cx.dim(*k) for k in keys)
        entries = [[ZERO] * size for _ in range(size)]
        off = 0
        for k in keys:
            g = grams[k]
            for i in range(g.rows):
                for j in range(g.cols):
                    entries[off + i][off + j] = g.at(i, j)
            off += g.rows
        total_gram[n] = DenseMatrix.from_rows(entries) if size else \
            DenseMatrix.zero(0, 0)
    out = {}
    for n in range(top + 1):
        d_n = total_differential(cx, n)
        lap = DenseMatrix.zero(d_n.cols, d_n.cols)
        if d_n.rows and d_n.cols:
            gn_inv = _invert_or_none(total_gram[n])
            dn_star = gn_inv.mul(d_n.conj_transpose()).mul(total_gram[n + 1])
            lap = lap.add(dn_star.mul(d_n))
        if n > 0:
            d_prev = total_differential(cx, n - 1)
            if d_prev.rows and d_prev.cols:
                gp_inv = _invert_or_none(total_gram[n - 1])
                dp_star = gp_inv.mul(d_prev.conj_transpose()).mul(total_gram[n])
                lap = lap.add(d_prev.mul(dp_star))
        if lap.rows == 0:
            out[n] = 0
        else:
            kernel, _ = kernel_image(lap)
            out[n] = kernel.dim
    return out


# -- Casimir and the dichotomy ----------------------------------------------


@dataclass
class CasimirResult:
    scalars: dict            # interior present weight -> Scalar
    non_scalar: list         # weights where C is not a scalar
    interior: list

    @property
    def is_scalar(self) -> bool:
        if self.non_scalar or not self.scalars:
            return False
        vals = list(self.scalars.values())
        return all(v == vals[0] for v in vals)

    @property
    def scalar(self) -> Scalar:
        if not self.is_scalar:
            raise ValueError("Casimir does not act by a single scalar")
        return next(iter(self.scalars.values()))


def casimir_action(pair: ReductivePair, split: PSplit,
                   module: AdmissibleModule) -> CasimirResult:
    """Scalar of C = sum_i rho(e_i) rho(e^i) on each interior weight space.

    e^i is the B-dual basis.  A weight is interior when every 2-step
    composition of generator shifts stays inside the window; if no
    present weight is interior the window is too small.
    """
    ops = ModuleOps(pair, split, module)
    b_inv = _invert_or_none(pair.b_form)
    if b_inv is None:
        raise ValueError("B is degenerate")
    shifts = [g.shift for g in module.generators]
    w = module.window

    def interior(n):
        return all(abs(n + s) <= w for s in shifts) and \
            all(abs(n + s + t) <= w for s in shifts for t in shifts)

    interior_weights = [n for n in module.sorted_weights if interior(n)]
    if module.sorted_weights and not interior_weights:
        raise WindowError("window too small for any Casimir composition")
    scalars = {}
    non_scalar = []
    m = module
    for n in interior_weights:
        lo, hi = m.slice_of(n)
        dim_n = hi - lo
        cols = []
        for t in range(dim_n):
            vec = [ZERO] * m.total_dim
            vec[lo + t] = ONE
            total = [ZERO] * m.total_dim
            for i in range(pair.dim):
                dual = b_inv.column(i)
                step = ops.apply(dual, tuple(vec))
                step = ops.apply(pair.basis_vector(i), step)
                total = [a + bb for a, bb in zip(total, step)]
            cols.append(tuple(total))
        # off-weight components must cancel (C is central)
        ok = True
        for col in cols:
            for t, v in enumerate(col):
                if not v.is_zero() and not (lo <= t < hi):
                    ok = False
        diag = None
        if ok:
            first = None
            for t in range(dim_n):
                val = cols[t][lo + t]
                if first is None:
                    first = val
                for s in range(dim_n):
                    expected = first if s == t else ZERO
                    if cols[t][lo + s] != expected:
                        ok = False
            diag = first
        if ok and diag is not None:
            scalars[n] = diag
        else:
            non_scalar.append(n)
    return CasimirResult(scalars=scalars, non_scalar=non_scalar,
                         interior=interior_weights)


@dataclass
class DichotomyResult:
    branch: str          # "casimir-zero" | "casimir-nonzero" | "not-applicable"
    holds: bool
    detail: str


def vanishing_dichotomy(pair: ReductivePair, split: PSplit,
                        module: AdmissibleModule, cx: RelativeComplex,
                        casimir: CasimirResult) -> DichotomyResult:
    """Either d vanishes identically (Casimir 0) or H vanishes entirely."""
    if not casimir.is_scalar:
        return DichotomyResult(
            branch="not-applicable", holds=False,
            detail="Casimir is not a single scalar; module is not "
                   "irreducible-typed")
    c = casimir.scalar
    if c.is_zero():
        holds = cx.differential_is_zero()
        return DichotomyResult(
            branch="casimir-zero", holds=holds,
            detail="d vanishes identically" if holds
            else "d is nonzero despite Casimir 0")
    dims = ungraded_cohomology_dims(cx)
    holds = all(v == 0 for v in dims.values())
    return DichotomyResult(
        branch="casimir-nonzero", holds=holds,
        detail="all cohomology vanishes" if holds
        else f"nonzero cohomology {dims} despite Casimir {c}")


# -- invariant Lefschetz operator -------------------------------------------


def lefschetz_on_complex(pair: ReductivePair, split: PSplit,
                         module: AdmissibleModule,
                         cx: RelativeComplex) -> dict:
    """Wedge with omega0(x, y) = -1/2 B(x, [z0, y]): C^(p,q) -> C^(p+1,q+1).

    Only meaningful when the cochains already are the cohomology, so
    this raises off the d = 0 branch.
    """
    if not cx.differential_is_zero():
        raise ValueError("Lefschetz operator requires the d = 0 branch")
    d = cx.p_dim
    dv = cx.v_total
    basis_all = list(split.plus) + list(split.minus)
    z0 = pair.z0
    half = Scalar(Fraction(-1, 2))

    def omega0(x, y):
        return half * _bilinear(pair.b_form, x, pair.bracket(z0, y))

    w_gram = [[omega0(x, y) for y in basis_all] for x in basis_all]

    builders = {}
    for key, basis in cx.bases.items():
        sb = SpanBuilder(len(cx.wedges[key]) * dv if cx.wedges[key] else 0)
        for vec in basis:
            sb.add(vec)
        builders[key] = sb

    out = {}
    for p in range(d + 1):
        for q in range(d + 1):
            src = cx.bases[(p, q)]
            tkey = (p + 1, q + 1)
            if p + 1 > d or q + 1 > d:
                out[(p, q)] = DenseMatrix.zero(0, len(src))
                continue
            spos = {wdg: t for t, wdg in enumerate(cx.wedges[(p, q)])}
            cols = []
            for f in src:
                img = [ZERO] * (len(cx.wedges[tkey]) * dv)
                for wt, (ii, jj) in enumerate(cx.wedges[tkey]):
                    args = list(ii) + [d + t for t in jj]
                    acc = [ZERO] * dv
                    for a in range(len(args)):
                        for b in range(a + 1, len(args)):
                            c = w_gram[args[a]][args[b]]
                            if c.is_zero():
                                continue
                            rest = args[:a] + args[a + 1:b] + args[b + 1:]
                            rest_ii = tuple(t for t in rest if t < d)
                            rest_jj = tuple(t - d for t in rest if t >= d)
                            st = spos.get((rest_ii, rest_jj))
                            if st is None:
                                continue
                            piece = f[st * dv:(st + 1) * dv]
                            # wedge-with-a-2-form sign (-1)^(a+b+1), 0-based
                            sgn = Scalar(-1 if (a + b + 1) % 2 else 1)
                            coef = sgn * c
                            for t, val in enumerate(piece):
                                if not val.is_zero():
                                    acc[t] = acc[t] + coef * val
                    for t, val in enumerate(acc):
                        if not val.is_zero():
                            img[wt * dv + t] = val
                coords = builders[tkey].coordinates(tuple(img))
                if coords is None:
                    raise ArithmeticError(
                        "Lefschetz image left the equivariant subspace")
                cols.append(coords)
            out[(p, q)] = DenseMatrix.from_columns(
                cols, rows=len(cx.bases[tkey]))
    return out


# -- one-stop analysis bundle ------------------------------------------------


@dataclass
class ModuleAnalysis:
    name: str
    window: int
    complex_dims: dict           # (p,q) -> dim C^(p,q)
    hodge_dims: dict             # (p,q) -> dim H^(p,q)
    casimir: CasimirResult
    dichotomy: DichotomyResult
    lefschetz: dict | None       # (p,q) -> matrix, on the d = 0 branch

    @property
    def contributes(self) -> bool:
        return self.dichotomy.branch == "casimir-zero" and self.dichotomy.holds


def analyze_module(pair: ReductivePair, split: PSplit,
                   module: AdmissibleModule) -> ModuleAnalysis:
    cx = build_complex(pair, split, module)
    cas = casimir_action(pair, split, module)
    dich = vanishing_dichotomy(pair, split, module, cx, cas)
    lef = None
    if dich.branch == "casimir-zero" and dich.holds:
        lef = lefschetz_on_complex(pair, split, module, cx)
    return ModuleAnalysis(
        name=module.name,
        window=module.window,
        complex_dims={k: len(v) for k, v in cx.bases.items()},
        hodge_dims=cohomology_bigraded(cx),
        casimir=cas,
        dichotomy=dich,
        lefschetz=lef)
