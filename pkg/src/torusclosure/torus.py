"""Complex tori C^n / Gamma with exact lattice coordinates.

A torus is given by 2n period generators with number-field entries.  All
coordinate work happens in the generator basis: a point of C^n is described
by the 2n real coefficients expressing it over the generators, and
multiplication by i becomes an exact matrix with real field entries.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .errors import InputError, InternalError
from .numberfield import AlgebraicNumber, FieldSpec


def field_matrix_inverse(rows):
    """Inverse of a square matrix over the field; None if singular."""
    n = len(rows)
    zero = rows[0][0] * 0
    one = zero + 1
    aug = [list(rows[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    red, pivots = linalg.field_rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in red]


def field_matvec(rows, vec):
    out = []
    for row in rows:
        acc = row[0] * vec[0]
        for a, b in zip(row[1:], vec[1:]):
            acc = acc + a * b
        out.append(acc)
    return out


class ComplexSubgroupSpec:
    """Connected complex Lie subgroup of a torus: a C-subspace of C^n given
    by a C-independent basis with field entries."""

    def __init__(self, field, n, basis):
        self.field = field
        self.n = n
        vectors = []
        for v in basis:
            v = tuple(e if isinstance(e, AlgebraicNumber) else field.from_rational(e)
                      for e in v)
            if len(v) != n:
                raise InputError("invalid_subgroup", "basis vector of wrong length")
            vectors.append(v)
        self.basis = tuple(vectors)
        if vectors and linalg.field_rank(list(map(list, vectors))) != len(vectors):
            raise InputError("invalid_subgroup", "subgroup basis is not C-independent")

    @property
    def dim(self):
        return len(self.basis)

    def __repr__(self):
        return f"ComplexSubgroupSpec(dim={self.dim}, n={self.n})"


class RationalSubspace:
    """Rational subspace of the lattice coordinates: the identity component
    of a closed real subtorus.  Basis vectors form a primitive integer HNF."""

    def __init__(self, ambient_dim, vectors, _trusted=False):
        self.ambient_dim = ambient_dim
        vectors = [tuple(int(e) for e in v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise InputError("invalid_subspace", "basis vector of wrong length")
        if not _trusted:
            canon = linalg.saturate(vectors, ambient_dim) if vectors else []
            if [tuple(v) for v in canon] != vectors:
                raise InputError("invalid_subspace",
                                 "basis is not a saturated HNF basis; use from_vectors")
        self.vectors = tuple(vectors)

    @classmethod
    def from_vectors(cls, ambient_dim, vectors):
        canon = linalg.saturate([list(v) for v in vectors], ambient_dim) if vectors else []
        return cls(ambient_dim, canon)

    @property
    def dim(self):
        return len(self.vectors)

    def __eq__(self, other):
        return (isinstance(other, RationalSubspace)
                and self.ambient_dim == other.ambient_dim
                and self.vectors == other.vectors)

    def __repr__(self):
        return f"RationalSubspace(dim={self.dim}, ambient={self.ambient_dim})"


class EllipticCurveSpec:
    """One-dimensional torus C / (Z omega1 + Z omega2)."""

    def __init__(self, omega1, omega2):
        if not isinstance(omega1, AlgebraicNumber) or not isinstance(omega2, AlgebraicNumber):
            raise InputError("invalid_curve", "curve periods must be field elements")
        if not omega1 or not omega2:
            raise InputError("degenerate_lattice", "curve period is zero")
        if (omega2 / omega1).is_real():
            raise InputError("degenerate_lattice",
                             "period ratio is real; the periods do not span a lattice")
        self.omega1 = omega1
        self.omega2 = omega2
        self.field = omega1.field

    def __repr__(self):
        return f"EllipticCurveSpec({self.omega1!r}, {self.omega2!r})"


class ComplexTorus:
    """Torus C^n / Gamma; use build_torus to construct one."""

    def __init__(self, field, n, generators, mult_i_matrix, coord_solver):
        self.field = field
        self.n = n
        self.generators = generators
        self.mult_i_matrix = mult_i_matrix  # 2n x 2n, real field entries
        self._coord_solver = coord_solver   # inverse of the conjugate-stacked matrix
        self._mult_i_columns = [[mult_i_matrix[i][j] for i in range(2 * n)]
                                for j in range(2 * n)]

    def real_coordinates(self, v):
        """Coefficients c (real field elements) with sum c_j gamma_j = v."""
        v = [e if isinstance(e, AlgebraicNumber) else self.field.from_rational(e)
             for e in v]
        if len(v) != self.n:
            raise InputError("dimension_mismatch", "point has wrong complex dimension")
        stacked = list(v) + [e.conjugate() for e in v]
        c = field_matvec(self._coord_solver, stacked)
        for e in c:
            if not e.is_real():
                raise InternalError("real coordinates came out non-real")
        return tuple(c)

    def mult_i_column(self, j):
        return self._mult_i_columns[j]

    def apply_mult_i(self, coords):
        """Multiply-by-i in lattice coordinates (exact)."""
        return field_matvec(self.mult_i_matrix, coords)

    def subgroup(self, basis):
        return ComplexSubgroupSpec(self.field, self.n, basis)

    def __repr__(self):
        return f"ComplexTorus(n={self.n})"


def build_torus(field, generators):
    """Validate generators, derive the multiplication-by-i matrix, build the torus.

    The field must contain the imaginary unit: otherwise multiplication by i
    cannot be written with field entries in lattice coordinates at all.
    """
    gens = []
    for g in generators:
        g = tuple(e if isinstance(e, AlgebraicNumber) else field.from_rational(e)
                  for e in g)
        gens.append(g)
    if not gens:
        raise InputError("dimension_mismatch", "no generators given")
    n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise InputError("dimension_mismatch", "generators of unequal length")
    if len(gens) != 2 * n:
        raise InputError("dimension_mismatch",
                         f"need {2 * n} generators for complex dimension {n}, got {len(gens)}")

    # stacked matrix: column j holds gamma_j over conj(gamma_j)
    stacked = [[gens[j][i] for j in range(2 * n)] for i in range(n)]
    stacked += [[gens[j][i].conjugate() for j in range(2 * n)] for i in range(n)]
    solver = field_matrix_inverse(stacked)
    if solver is None:
        raise InputError("degenerate_lattice",
                         "generators are R-linearly dependent; not a lattice")

    try:
        i_unit = field.imaginary_unit()
    except InputError as exc:
        raise InputError("no_imaginary_unit",
                         f"cannot build torus: {exc.message}") from exc

    cols = []
    for j in range(2 * n):
        iv = [i_unit * e for e in gens[j]]
        target = iv + [e.conjugate() for e in iv]
        col = field_matvec(solver, target)
        for e in col:
            if not e.is_real():
                raise InternalError("multiplication-by-i matrix has non-real entries")
        cols.append(col)
    mult_i = [[cols[j][i] for j in range(2 * n)] for i in range(2 * n)]

    # J^2 = -I, exactly
    for i in range(2 * n):
        for j in range(2 * n):
            acc = field.zero
            for k in range(2 * n):
                acc = acc + mult_i[i][k] * mult_i[k][j]
            if acc != (field.from_rational(-1) if i == j else field.zero):
                raise InternalError("multiplication-by-i matrix fails J^2 = -I")

    return ComplexTorus(field, n, tuple(gens), mult_i, solver)


def torus_from_curves(field, curves):
    """Product torus of elliptic curves, one complex coordinate per factor."""
    n = len(curves)
    if n == 0:
        raise InputError("dimension_mismatch", "empty product")
    gens = []
    for k, curve in enumerate(curves):
        for omega in (curve.omega1, curve.omega2):
            v = [field.zero] * n
            v[k] = omega
            gens.append(tuple(v))
    # interleave to the conventional order: factor k contributes columns 2k, 2k+1
    return build_torus(field, gens)


def subgroup_real_span(torus, subgroup):
    """Columns spanning the real span of the subgroup in lattice coordinates:
    real coordinates of v and of i*v for every basis vector v."""
    cols = []
    for v in subgroup.basis:
        c = torus.real_coordinates(v)
        cols.append(list(c))
        cols.append(torus.apply_mult_i(c))
    if cols and linalg.field_rank(cols) != len(cols):
        raise InternalError("real span of a complex subgroup has the wrong rank")
    return cols  # list of 2k column vectors, each of length 2n


def _real_rank(field, vectors):
    """Rank over R of vectors in C^m, via the conjugate-stacked field matrix."""
    if not vectors:
        return 0
    m = len(vectors[0])
    rows = [[v[i] for v in vectors] for i in range(m)]
    rows += [[v[i].conjugate() for v in vectors] for i in range(m)]
    return linalg.field_rank(rows)


def field_rational_solve(cols, target):
    """Rational x with sum x_j col_j = target (field vectors); None if none."""
    rows = [[c[i] for c in cols] + [target[i]] for i in range(len(target))]
    kernel = linalg.rational_kernel(rows, side="right")
    for v in kernel:
        if v[-1] != 0:
            return tuple(-x / v[-1] for x in v[:-1])
    return None


def commensurable(field, l1_vectors, l2_vectors):
    """Decide commensurability of two full-rank lattices in C^m.

    Vectors carry field entries.  Returns None when the intersection has
    deficient real rank; otherwise (index1, index2) with
    index1 = [L1 v L2 : L1] = [L2 : L1 cap L2] and index2 = [L1 v L2 : L2].
    """
    def coerce(vs):
        return [tuple(e if isinstance(e, AlgebraicNumber) else field.from_rational(e)
                      for e in v) for v in vs]

    l1, l2 = coerce(l1_vectors), coerce(l2_vectors)
    if not l1 or not l2:
        raise InputError("dimension_mismatch", "empty lattice basis")
    m = len(l1[0])
    if any(len(v) != m for v in l1 + l2):
        raise InputError("dimension_mismatch", "lattices live in different ambients")
    if _real_rank(field, l1) != 2 * m or len(l1) != 2 * m:
        raise InputError("degenerate_lattice", "first lattice is not full rank")
    if _real_rank(field, l2) != 2 * m or len(l2) != 2 * m:
        raise InputError("degenerate_lattice", "second lattice is not full rank")

    rows = [[v[i] for v in l1] + [-w[i] for w in l2] for i in range(m)]
    constraints = []
    for row in rows:
        constraints.extend(linalg.expand_to_rational_rows(row))
    kernel = linalg.int_kernel(constraints, len(l1) + len(l2))
    inter = []
    for k in kernel:
        vec = [field.zero] * m
        for t, a in enumerate(k[: len(l1)]):
            if a:
                vec = [acc + a * e for acc, e in zip(vec, l1[t])]
        inter.append(tuple(vec))
    if _real_rank(field, inter) != 2 * m:
        return None

    def index_in(basis):
        coords = []
        for v in inter:
            x = field_rational_solve(basis, v)
            if x is None or any(c.denominator != 1 for c in x):
                raise InternalError("intersection escaped one of the lattices")
            coords.append([int(c) for c in x])
        d = linalg.det(coords)
        if d == 0:
            raise InternalError("intersection coordinate matrix is singular")
        return abs(int(d))

    return index_in(l2), index_in(l1)
