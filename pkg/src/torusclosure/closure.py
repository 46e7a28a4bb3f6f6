"""Topological closure of connected complex Lie subgroups.

The identity component of the closure of V + Gamma corresponds to the
smallest lattice-rational real subspace containing V (Kronecker-type
closure description).  It is computed exactly: the rational annihilator of
the real span of V is the space of rational linear forms vanishing on V,
and the closure is its saturated integer kernel.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .errors import InputError, InternalError
from .torus import RationalSubspace, subgroup_real_span


class ClosureResult:
    """Closure of a complex subgroup: rational subspace, dimension, complexity
    verdict, and the annihilating rational forms."""

    __slots__ = ("subspace", "real_dim", "is_complex", "codim_forms")

    def __init__(self, subspace, real_dim, is_complex, codim_forms):
        self.subspace = subspace
        self.real_dim = real_dim
        self.is_complex = is_complex
        self.codim_forms = codim_forms

    def __repr__(self):
        return (f"ClosureResult(real_dim={self.real_dim}, "
                f"is_complex={self.is_complex}, forms={list(self.codim_forms)})")


def _mult_i_int_vector(torus, w):
    """J applied to an integer coordinate vector (cheap column combination)."""
    out = None
    for j, wj in enumerate(w):
        if wj:
            col = torus.mult_i_column(j)
            if out is None:
                out = [wj * e for e in col]
            else:
                out = [acc + wj * e for acc, e in zip(out, col)]
    if out is None:
        return [torus.field.zero] * (2 * torus.n)
    return out


def closure(torus, subgroup):
    """Identity component of the closure of the image of the subgroup in T."""
    two_n = 2 * torus.n
    if subgroup.dim == 0:
        forms = tuple(tuple(int(i == j) for j in range(two_n)) for i in range(two_n))
        return ClosureResult(RationalSubspace(two_n, []), 0, True, forms)
    span_cols = subgroup_real_span(torus, subgroup)
    # rational forms vanishing on the real span of V
    ann = linalg.rational_kernel(span_cols, side="right")
    forms = tuple(linalg.primitive_vector(r) for r in ann)
    vectors = linalg.int_kernel(ann, two_n) if ann else \
        [tuple(int(i == j) for j in range(two_n)) for i in range(two_n)]
    subspace = RationalSubspace(two_n, vectors, _trusted=True)
    return ClosureResult(subspace, subspace.dim, is_complex_subspace(torus, subspace),
                         forms)


def is_complex_subspace(torus, subspace):
    """True iff the rational subspace is invariant under multiplication by i."""
    if subspace.dim == 0:
        return True
    rows = []
    jw = [_mult_i_int_vector(torus, w) for w in subspace.vectors]
    for i in range(2 * torus.n):
        row = [torus.field.from_rational(w[i]) for w in subspace.vectors]
        row += [col[i] for col in jw]
        rows.append(row)
    return linalg.field_rank(rows) == subspace.dim


class MultiplierMatrix:
    """Matrix of scalar multiplication on C^n in lattice coordinates."""

    __slots__ = ("scalar", "rows", "is_rational")

    def __init__(self, scalar, rows, is_rational):
        self.scalar = scalar
        self.rows = rows
        self.is_rational = is_rational

    def rational_rows(self):
        if not self.is_rational:
            raise InputError("irrational_multiplier",
                             "multiplier matrix has irrational entries")
        return [[e.as_fraction() for e in row] for row in self.rows]


def multiplier_matrix(torus, scalar):
    """Multiplication by a field scalar written in lattice coordinates.

    The flag reports whether all entries are rational, i.e. whether the
    scalar acts as an endomorphism of the rational span of the lattice.
    """
    if not scalar:
        raise InputError("zero_multiplier", "multiplier must be nonzero")
    cols = []
    for gen in torus.generators:
        cols.append(torus.real_coordinates([scalar * e for e in gen]))
    rows = [[cols[j][i] for j in range(2 * torus.n)] for i in range(2 * torus.n)]
    rational = all(e.is_rational() for row in rows for e in row)
    return MultiplierMatrix(scalar, rows, rational)


def lambda_invariance_check(torus, subgroup, scalar):
    """Whether the closure of the subgroup is carried into itself by the
    (rational) multiplier.  Requires the multiplier to act rationally."""
    mm = multiplier_matrix(torus, scalar)
    if not mm.is_rational:
        raise InputError("irrational_multiplier",
                         "lambda is not a rational endomorphism of the rational "
                         "span of the lattice")
    w = closure(torus, subgroup).subspace
    if w.dim == 0:
        return True
    m = mm.rational_rows()
    stacked = [list(v) for v in w.vectors]
    for v in w.vectors:
        stacked.append([sum(m[i][j] * v[j] for j in range(len(v)))
                        for i in range(len(v))])
    return linalg.rank(stacked) == w.dim


def closure_of_hyperplane_core(torus, form):
    """Closure of the core of the rational hyperplane with coefficient vector
    ``form``; algebraically equal to closure(hyperplane_core(form)) but uses
    the two defining functionals of the core directly.

    The real span of the core is cut out by the functionals r and J^T r, so
    the rational annihilator is the set of rational vectors inside the real
    plane they span.
    """
    two_n = 2 * torus.n
    field = torus.field
    r = [int(e) for e in form]
    q = [field.zero] * two_n
    for j, rj in enumerate(r):
        if rj:
            row = torus.mult_i_matrix[j]
            q = [acc + rj * e for acc, e in zip(q, row)]
    r_field = [field.from_rational(e) for e in r]
    red, pivots = linalg.field_rref([r_field, q])
    if len(pivots) != 2:
        raise InternalError("hyperplane functionals r and J^T r are dependent")
    row1, row2 = red
    # rational vectors x*row1 + y*row2: non-constant power coordinates vanish
    constraints = []
    for j in range(two_n):
        if j in pivots:
            continue
        c1, c2 = row1[j].coeffs, row2[j].coeffs
        for t in range(1, len(c1)):
            if c1[t] or c2[t]:
                constraints.append([c1[t], c2[t]])
    kernel = linalg.nullspace(constraints, 2)
    ann = []
    for x, y in kernel:
        ann.append([x * row1[j].coeffs[0] + y * row2[j].coeffs[0] for j in range(two_n)])
    canon, _ = linalg.rref(ann)
    forms = tuple(linalg.primitive_vector(row) for row in canon)
    vectors = linalg.int_kernel(canon, two_n)
    subspace = RationalSubspace(two_n, vectors, _trusted=True)
    # J-invariance via the annihilator: span(W) = {x : ann . x = 0}
    complex_flag = True
    for w in subspace.vectors:
        jw = _mult_i_int_vector(torus, w)
        for row in canon:
            acc = field.zero
            for coef, e in zip(row, jw):
                if coef:
                    acc = acc + coef * e
            if acc:
                complex_flag = False
                break
        if not complex_flag:
            break
    return ClosureResult(subspace, subspace.dim, complex_flag, forms)
