"""Torus-level decisions: endomorphism algebra, classification, hyperplane
censuses, quotient tori and the isogeny onto a product of elliptic curves.

The classification criterion is dimensional: the rational endomorphism
algebra of a torus with the closure property has the maximal dimension
2 n^2, and conversely.  The criterion is cross-checked against the product
oracle (all factors CM and pairwise isogenous) and against a bounded-height
witness search; disagreements are surfaced, never resolved silently.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iter_product
from math import gcd

from . import linalg
from .closure import closure, closure_of_hyperplane_core, is_complex_subspace
from .elliptic import cm_check, is_isogenous, tau_invariant
from .errors import InputError, InternalError
from .torus import RationalSubspace, build_torus, field_matrix_inverse, field_matvec


class EndAlgebra:
    """Rational matrices commuting with multiplication by i, canonical basis."""

    __slots__ = ("basis", "dim")

    def __init__(self, basis):
        self.basis = basis
        self.dim = len(basis)

    def __repr__(self):
        return f"EndAlgebra(dim={self.dim})"


def endomorphism_algebra(torus):
    """Solve M J = J M for rational M in lattice coordinates."""
    two_n = 2 * torus.n
    field = torus.field
    jmat = torus.mult_i_matrix
    zero = field.zero
    rows = []
    for r in range(two_n):
        for s in range(two_n):
            row = [zero] * (two_n * two_n)
            for k in range(two_n):
                row[r * two_n + k] = row[r * two_n + k] + jmat[k][s]
                row[k * two_n + s] = row[k * two_n + s] - jmat[r][k]
            rows.append(row)
    kernel = linalg.rational_kernel(rows, side="right")
    basis = []
    for v in kernel:
        basis.append(tuple(tuple(v[i * two_n + j] for j in range(two_n))
                           for i in range(two_n)))
    if len(basis) > 2 * torus.n**2:
        raise InternalError("endomorphism algebra exceeds the complex-representation bound")
    return EndAlgebra(tuple(basis))


# ---------------------------------------------------------------------------
# Hyperplane machinery.

def hyperplane_form(vector):
    """Canonical primitive integer coefficient vector, first nonzero positive."""
    v = [int(e) for e in vector]
    if not any(v):
        raise InputError("invalid_hyperplane", "zero vector is not a hyperplane form")
    g = 0
    for e in v:
        g = gcd(g, e)
    v = [e // g for e in v]
    lead = next(e for e in v if e)
    if lead < 0:
        v = [-e for e in v]
    return tuple(v)


def hyperplane_forms(dim, height):
    """All canonical forms with max-norm <= height: increasing max-norm,
    lexicographic inside a shell, canonical sign, content one."""
    for h in range(1, height + 1):
        for t in iter_product(range(-h, h + 1), repeat=dim):
            if max(abs(e) for e in t) != h:
                continue
            lead = next((e for e in t if e), None)
            if lead is None or lead < 0:
                continue
            g = 0
            for e in t:
                g = gcd(g, e)
            if g != 1:
                continue
            yield t


def hyperplane_core(torus, form):
    """The maximal complex subspace H cap iH inside the real hyperplane H.

    H is the kernel of the rational functional with coefficient vector
    ``form`` in lattice coordinates; the core is cut out by that functional
    together with its twist by multiplication by i.
    """
    form = hyperplane_form(form)
    two_n = 2 * torus.n
    field = torus.field
    twisted = [field.zero] * two_n
    for j, rj in enumerate(form):
        if rj:
            row = torus.mult_i_matrix[j]
            twisted = [acc + rj * e for acc, e in zip(twisted, row)]
    r_field = [field.from_rational(e) for e in form]
    coords = linalg.field_nullspace([r_field, twisted], two_n)
    candidates = []
    for c in coords:
        v = [field.zero] * torus.n
        for j, cj in enumerate(c):
            if cj:
                v = [acc + cj * e for acc, e in zip(v, torus.generators[j])]
        candidates.append(v)
    chosen = []
    chosen_rows = []
    for v in candidates:
        if len(chosen) == torus.n - 1:
            break
        if linalg.field_rank(chosen_rows + [list(v)]) > len(chosen):
            chosen.append(v)
            chosen_rows.append(list(v))
    if len(chosen) != torus.n - 1:
        raise InternalError("hyperplane core has unexpected complex dimension")
    return torus.subgroup(chosen)


class CensusResult:
    __slots__ = ("total", "complex_count", "non_complex_examples")

    def __init__(self, total, complex_count, non_complex_examples):
        self.total = total
        self.complex_count = complex_count
        self.non_complex_examples = non_complex_examples

    def __repr__(self):
        return (f"CensusResult(total={self.total}, complex={self.complex_count}, "
                f"examples={list(self.non_complex_examples)})")


_MAX_CENSUS_EXAMPLES = 10


def census(torus, height):
    """Closure verdicts for every hyperplane core up to the given height."""
    if height < 1:
        raise InputError("bad_height", "height must be at least 1")
    total = 0
    complex_count = 0
    examples = []
    for form in hyperplane_forms(2 * torus.n, height):
        res = closure_of_hyperplane_core(torus, form)
        total += 1
        if res.is_complex:
            complex_count += 1
        elif len(examples) < _MAX_CENSUS_EXAMPLES:
            examples.append((form, res.real_dim))
    return CensusResult(total, complex_count, tuple(examples))


def witness_search(torus, height):
    """First hyperplane (canonical order) whose core has a non-complex closure.

    Absence up to a height refutes nothing; presence refutes the closure
    property outright.
    """
    if height < 1:
        raise InputError("bad_height", "height must be at least 1")
    for form in hyperplane_forms(2 * torus.n, height):
        res = closure_of_hyperplane_core(torus, form)
        if not res.is_complex:
            return form, res
    return None


# ---------------------------------------------------------------------------
# Classification.

def product_form_classify(curves):
    """True iff every curve has CM and all pairs are isogenous."""
    if not curves:
        raise InputError("invalid_product_form", "empty curve list")
    taus = [tau_invariant(c) for c in curves]
    if not all(cm_check(t).has_cm for t in taus):
        return False
    return all(is_isogenous(taus[0], taus[k]).isogenous for k in range(1, len(taus)))


class ClassificationReport:
    __slots__ = ("condition_ii", "end_dim", "witness", "oracle", "diagnostics")

    def __init__(self, condition_ii, end_dim, witness, oracle, diagnostics):
        self.condition_ii = condition_ii
        self.end_dim = end_dim
        self.witness = witness
        self.oracle = oracle
        self.diagnostics = diagnostics

    @property
    def consistent(self):
        return self.diagnostics["consistent"]

    def __repr__(self):
        return (f"ClassificationReport(condition_ii={self.condition_ii}, "
                f"end_dim={self.end_dim}, witness={self.witness is not None}, "
                f"oracle={self.oracle}, consistent={self.consistent})")


def classify(torus, product_curves=None, height=3):
    """Decide the closure property via the endomorphism dimension criterion,
    with the product oracle and the witness search as cross-checks."""
    end_dim = endomorphism_algebra(torus).dim
    condition_ii = end_dim == 2 * torus.n**2
    witness = witness_search(torus, height)
    oracle = product_form_classify(product_curves) if product_curves else None
    consistent = True
    if witness is not None and condition_ii:
        consistent = False
    if oracle is not None and oracle != condition_ii:
        consistent = False
    diagnostics = {
        "end_dim_criterion": condition_ii,
        "witness_found": witness is not None,
        "search_height": height,
        "oracle": oracle,
        "consistent": consistent,
    }
    return ClassificationReport(condition_ii, end_dim, witness, oracle, diagnostics)


# ---------------------------------------------------------------------------
# Quotients and the isogeny onto a product.

class QuotientResult:
    """Quotient torus plus the integer map of lattice coordinates.

    lattice_map rows express, for each original generator, its image's
    coordinates over the quotient generators.  core_basis spans the complex
    subspace that was divided out; complement_indices are the coordinates
    kept (the echelon complement choice).
    """

    __slots__ = ("torus", "lattice_map", "core_basis", "complement_indices")

    def __init__(self, torus, lattice_map, core_basis, complement_indices):
        self.torus = torus
        self.lattice_map = lattice_map
        self.core_basis = core_basis
        self.complement_indices = complement_indices


def quotient_torus(torus, subspace):
    """Quotient of the torus by the complex subtorus spanned by ``subspace``."""
    two_n = 2 * torus.n
    field = torus.field
    if subspace.ambient_dim != two_n:
        raise InputError("dimension_mismatch", "subspace has the wrong ambient dimension")
    if not is_complex_subspace(torus, subspace):
        raise InputError("not_complex", "cannot quotient by a non-complex subspace")
    s = subspace.dim
    if s % 2 != 0:
        raise InternalError("complex subspace with odd real dimension")
    k = s // 2
    n = torus.n

    # complex basis of the divided subspace
    core_basis = []
    core_rows = []
    for c in subspace.vectors:
        v = [field.zero] * n
        for j, cj in enumerate(c):
            if cj:
                v = [acc + cj * e for acc, e in zip(v, torus.generators[j])]
        if len(core_basis) < k and linalg.field_rank(core_rows + [list(v)]) > len(core_basis):
            core_basis.append(tuple(v))
            core_rows.append(list(v))
    if len(core_basis) != k:
        raise InternalError("complex rank of a complex rational subspace is off")

    # echelon complement: first standard coordinates that extend the basis
    complement = []
    rows = list(core_rows)
    for j in range(n):
        if len(complement) == n - k:
            break
        e = [field.zero] * n
        e[j] = field.one
        if linalg.field_rank(rows + [e]) > len(rows):
            complement.append(j)
            rows.append(e)
    if len(complement) != n - k:
        raise InternalError("echelon complement construction failed")

    # change of basis [core | complement]; quotient = last n-k coordinates
    bmat = [[core_basis[t][i] for t in range(k)]
            + [field.one if i == complement[t] else field.zero for t in range(n - k)]
            for i in range(n)]
    binv = field_matrix_inverse(bmat)
    if binv is None:
        raise InternalError("change-of-basis matrix is singular")

    def project(v):
        coords = field_matvec(binv, list(v))
        return coords[k:]

    # unimodular completion of the (saturated) subspace basis
    if s:
        mat = [[subspace.vectors[t][i] for t in range(s)] for i in range(two_n)]
        h, u, nz = linalg.row_hnf(mat, s)
        if nz != s or list(h) != [tuple(int(i == j) for j in range(s)) for i in range(s)]:
            raise InternalError("saturated basis did not reduce to the identity")
        uinv = _int_matrix_inverse(u)
        completion = [[uinv[i][j] for i in range(two_n)] for j in range(s, two_n)]
        coord_rows = [u[t] for t in range(s, two_n)]
    else:
        completion = [[int(i == j) for i in range(two_n)] for j in range(two_n)]
        coord_rows = completion

    new_gens = []
    for comp in completion:
        v = [field.zero] * n
        for j, cj in enumerate(comp):
            if cj:
                v = [acc + cj * e for acc, e in zip(v, torus.generators[j])]
        new_gens.append(project(v))
    try:
        quotient = build_torus(field, new_gens)
    except InputError as exc:
        raise InternalError(f"projected lattice is degenerate: {exc.message}") from exc
    lattice_map = tuple(tuple(row) for row in coord_rows)
    return QuotientResult(quotient, lattice_map, tuple(core_basis), tuple(complement))


def _int_matrix_inverse(rows):
    n = len(rows)
    aug = [[Fraction(rows[i][j]) for j in range(n)]
           + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, pivots = linalg.rref(aug)
    if pivots != list(range(n)):
        raise InternalError("unimodular matrix is singular")
    inv = []
    for i in range(n):
        row = red[i][n:]
        if any(f.denominator != 1 for f in row):
            raise InternalError("inverse of a unimodular matrix is not integral")
        inv.append([int(f) for f in row])
    return inv


class IsogenyToProduct:
    __slots__ = ("kernel_order", "factors")

    def __init__(self, kernel_order, factors):
        self.kernel_order = kernel_order
        self.factors = factors

    def __repr__(self):
        return f"IsogenyToProduct(kernel_order={self.kernel_order})"


def isogeny_to_product(torus, subspaces):
    """Map onto the product of the n one-dimensional quotients; kernel order.

    Each subspace must be a complex codimension-one subtorus and together
    they must intersect trivially (discretely).
    """
    n = torus.n
    two_n = 2 * n
    if len(subspaces) != n:
        raise InputError("dimension_mismatch", f"need {n} codimension-one subtori")
    stacked = []
    for sub in subspaces:
        if sub.dim != two_n - 2:
            raise InputError("not_codimension_one",
                             "subspace is not of complex codimension one")
        if not is_complex_subspace(torus, sub):
            raise InputError("not_complex", "subspace is not complex")
        stacked.extend(linalg.nullspace([list(v) for v in sub.vectors], two_n))
    if linalg.rank([list(r) for r in stacked]) != two_n:
        raise InputError("subtori_not_separating", "subtori do not separate")

    rows = []
    factors = []
    for sub in subspaces:
        qr = quotient_torus(torus, sub)
        factors.append(qr.torus)
        rows.extend(qr.lattice_map)
    d = linalg.det(rows)
    if d == 0:
        raise InternalError("separating subtori produced a singular product map")
    return IsogenyToProduct(abs(int(d)), tuple(factors))


class LineVerdict:
    __slots__ = ("slope", "is_subtorus", "real_dim")

    def __init__(self, slope, is_subtorus, real_dim):
        self.slope = slope
        self.is_subtorus = is_subtorus
        self.real_dim = real_dim

    def __repr__(self):
        return f"LineVerdict(slope={self.slope!r}, subtorus={self.is_subtorus})"


def line_census(torus, slopes):
    """Closure verdicts for the lines w = slope * z (None means the vertical
    line) in a two-dimensional torus."""
    if torus.n != 2:
        raise InputError("dimension_mismatch", "line census needs a two-dimensional torus")
    field = torus.field
    verdicts = []
    for mu in slopes:
        if mu is None:
            basis = [(field.zero, field.one)]
        else:
            basis = [(field.one, mu if not isinstance(mu, (int, Fraction))
                      else field.from_rational(mu))]
        res = closure(torus, torus.subgroup(basis))
        verdicts.append(LineVerdict(mu, res.real_dim == 2, res.real_dim))
    return verdicts
