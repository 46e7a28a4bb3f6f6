"""Exact rational and integer linear algebra.

Matrices are lists of rows; a basis of a subspace or lattice is kept as a
list of vectors (tuples).  Everything is exact: rational work uses
``fractions.Fraction``, integer work uses Python ints.  Canonical outputs
(reduced row echelon form for rational bases, Hermite normal form for
integer bases) make results byte-stable across runs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import InputError, InternalError


def _frac_rows(rows):
    return [[e if type(e) is Fraction else Fraction(e) for e in row] for row in rows]


def rref(rows):
    """Reduced row echelon form.  Returns (rows, pivot_column_indices)."""
    m = _frac_rows(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [e * inv for e in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    m = m[:r]
    return m, pivots


def rank(rows):
    return len(rref(rows)[1])


def nullspace(constraint_rows, ncols):
    """Canonical (RREF) basis of {x in Q^ncols : row . x = 0 for all rows}."""
    red, pivots = rref(constraint_rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    if not basis:
        return []
    canon, _ = rref(basis)
    return [tuple(row) for row in canon]


def solve_columns(col_vectors, target):
    """Solve sum x_i * col_i = target over Q.  None if inconsistent.

    Assumes the columns are linearly independent (a basis of their span).
    """
    cols = [list(v) for v in col_vectors]
    n = len(list(target))
    aug = [[Fraction(cols[j][i]) for j in range(len(cols))] + [Fraction(list(target)[i])]
           for i in range(n)]
    red, pivots = rref(aug)
    k = len(cols)
    if k in pivots:
        return None  # target outside the span
    if len(pivots) != k:
        raise InternalError("solve_columns: columns are not independent")
    x = [Fraction(0)] * k
    for i, p in enumerate(pivots):
        x[p] = red[i][k]
    return tuple(x)


def det(rows):
    """Exact determinant of a square rational matrix."""
    m = _frac_rows(rows)
    n = len(m)
    if any(len(r) != n for r in m):
        raise InputError("dimension_mismatch", "determinant of a non-square matrix")
    sign = 1
    d = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        d *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d * sign


# ---------------------------------------------------------------------------
# Integer lattices: Hermite normal form, kernels, saturation, indices.

class IntegerMatrixHNF:
    """A canonical integer basis together with the unimodular witness.

    ``rows`` are the basis vectors in Hermite normal form (pivots positive,
    entries above each pivot reduced into [0, pivot), pivot columns strictly
    increasing).  ``transform`` satisfies rows = transform . original_rows
    whenever the object was produced by ``row_hnf`` from integer input.
    """

    __slots__ = ("rows", "transform")

    def __init__(self, rows, transform):
        self.rows = tuple(tuple(r) for r in rows)
        self.transform = tuple(tuple(r) for r in transform) if transform is not None else None

    def __eq__(self, other):
        return isinstance(other, IntegerMatrixHNF) and self.rows == other.rows

    def __repr__(self):
        return f"IntegerMatrixHNF(rows={list(map(list, self.rows))})"


def _xgcd(a, b):
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return g, x, y


def row_hnf(rows, ncols=None):
    """Row-style Hermite normal form with unimodular transform.

    Returns (hnf_rows_without_zero_rows, full_transform, n_nonzero) where
    full_transform . rows has the nonzero HNF rows first and zero rows last.
    """
    m = [list(map(int, r)) for r in rows]
    k = len(m)
    if k and ncols is None:
        ncols = len(m[0])
    u = [[int(i == j) for j in range(k)] for i in range(k)]
    r = 0
    for c in range(ncols or 0):
        # clear column c below row r using gcd row operations
        piv = None
        for i in range(r, k):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, k):
            while m[i][c] != 0:
                g, s, t = _xgcd(m[r][c], m[i][c])
                a, b = m[r][c] // g, m[i][c] // g
                m[r], m[i] = (
                    [s * p + t * q for p, q in zip(m[r], m[i])],
                    [-b * p + a * q for p, q in zip(m[r], m[i])],
                )
                u[r], u[i] = (
                    [s * p + t * q for p, q in zip(u[r], u[i])],
                    [-b * p + a * q for p, q in zip(u[r], u[i])],
                )
        if m[r][c] < 0:
            m[r] = [-e for e in m[r]]
            u[r] = [-e for e in u[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [p - q * s for p, s in zip(m[i], m[r])]
                u[i] = [p - q * s for p, s in zip(u[i], u[r])]
        r += 1
        if r == k:
            break
    return [tuple(row) for row in m[:r]], [tuple(row) for row in u], r


def hnf_basis(vectors, ncols=None):
    """Canonical HNF basis (list of vectors) of the lattice they generate."""
    if not vectors:
        return []
    h, _, _ = row_hnf(vectors, ncols)
    return h


def int_kernel(constraint_rows, ncols):
    """Canonical basis of {x in Z^ncols : C x = 0}; saturated by construction."""
    rows = []
    for row in constraint_rows:
        fr = [Fraction(e) for e in row]
        den = lcm(*[f.denominator for f in fr]) if fr else 1
        ints = [int(f * den) for f in fr]
        if any(ints):
            rows.append(ints)
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    # transpose: row i of the transpose is coordinate i across constraints
    at = [[rows[j][i] for j in range(len(rows))] for i in range(ncols)]
    h, u, nz = row_hnf(at, len(rows))
    kernel = [u[i] for i in range(nz, ncols)]
    return hnf_basis(kernel, ncols)


def saturate(vectors, dim):
    """Primitive HNF basis of span_Q(vectors) intersected with Z^dim."""
    ann = nullspace(vectors, dim) if vectors else nullspace([], dim)
    if not vectors:
        return []
    return int_kernel(ann, dim)


def hnf_saturate(vectors, dim):
    """Saturation packaged with the HNF witness of its final reduction."""
    basis = saturate(vectors, dim)
    if not basis:
        return IntegerMatrixHNF([], None)
    h, u, nz = row_hnf(basis, dim)
    return IntegerMatrixHNF(h, [u[i] for i in range(nz)])


def lattice_index(l1_vectors, l2_vectors):
    """Index of the lattice generated by l2 inside the lattice l1 (a basis).

    l2 must be a finite-index sublattice of the l1 lattice.
    """
    if len(l1_vectors) != len(l2_vectors):
        raise InputError("lattice_rank_mismatch",
                         "sublattice has different rank than the ambient lattice basis")
    coords = []
    for j, v in enumerate(l2_vectors):
        x = solve_columns(l1_vectors, v)
        if x is None:
            raise InputError("not_a_sublattice",
                             f"vector {j} lies outside the span of the first lattice")
        if any(c.denominator != 1 for c in x):
            raise InputError("not_a_sublattice",
                             f"vector {j} is not an integer combination of the first basis")
        coords.append([int(c) for c in x])
    d = det(coords)
    if d == 0:
        raise InputError("not_a_sublattice", "second lattice does not have full rank")
    return abs(int(d))


def content(vector):
    g = 0
    for e in vector:
        g = gcd(g, abs(int(e)))
    return g


def primitive_vector(row):
    """Scale a rational vector to a primitive integer vector, first nonzero > 0."""
    fr = [Fraction(e) for e in row]
    den = lcm(*[f.denominator for f in fr]) if fr else 1
    ints = [int(f * den) for f in fr]
    g = content(ints)
    if g == 0:
        return tuple(0 for _ in ints)
    ints = [e // g for e in ints]
    lead = next(e for e in ints if e)
    if lead < 0:
        ints = [-e for e in ints]
    return tuple(ints)


# ---------------------------------------------------------------------------
# Linear algebra over a number field (entries support exact +,-,*,/ and == 0).

def field_rref(rows):
    """RREF over an exact field; entries must support arithmetic and zero test."""
    m = [list(row) for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c].inverse() if hasattr(m[r][c], "inverse") else 1 / m[r][c]
        m[r] = [e * inv for e in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def field_rank(rows):
    return len(field_rref(rows)[1])


def field_nullspace(constraint_rows, ncols):
    """Basis (not canonicalized) of the right kernel over the field."""
    red, pivots = field_rref(constraint_rows)
    if not constraint_rows:
        return []
    zero = constraint_rows[0][0] * 0
    one = zero + 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def expand_to_rational_rows(field_row):
    """Expand one row of field entries to power-basis coordinate rows.

    A row (a_1 ... a_k) with entries of degree d becomes d rational rows;
    row t holds the theta^t coordinate of every entry.  Plain rationals are
    treated as degree-1 entries (constant coordinate only).
    """
    coord_vectors = []
    width = 1
    for e in field_row:
        c = tuple(e.coeffs) if hasattr(e, "coeffs") else (Fraction(e),)
        coord_vectors.append(c)
        width = max(width, len(c))
    rows = []
    for t in range(width):
        rows.append([c[t] if t < len(c) else Fraction(0) for c in coord_vectors])
    return rows


def rational_kernel(field_rows, side="right"):
    """Canonical basis of the rational left or right kernel of a field matrix.

    Each field entry is expanded into its power-basis coordinates, turning
    the field-linear condition into a purely rational homogeneous system.
    """
    if side == "left":
        if not field_rows:
            return []
        cols = [[row[j] for row in field_rows] for j in range(len(field_rows[0]))]
        return rational_kernel(cols, side="right")
    if side != "right":
        raise InputError("bad_side", f"unknown kernel side {side!r}")
    if not field_rows:
        return []
    ncols = len(field_rows[0])
    constraints = []
    for row in field_rows:
        constraints.extend(expand_to_rational_rows(row))
    return nullspace(constraints, ncols)
