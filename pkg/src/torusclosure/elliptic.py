"""Elliptic curve decisions: lattice normalization, complex multiplication,
isogeny existence, endomorphism denominators.

Everything reduces to rational kernels of small field matrices: CM is a
rational quadratic relation on the normalized period ratio, an isogeny is a
rational fractional-linear relation between two ratios.
"""

from __future__ import annotations

from math import lcm

from . import linalg
from .errors import InputError, InternalError


class TauInvariant:
    """Normalized period ratio with positive imaginary part."""

    __slots__ = ("tau",)

    def __init__(self, tau):
        if tau.is_real():
            raise InputError("degenerate_lattice", "period ratio is real")
        if tau.imag_sign() <= 0:
            raise InputError("invalid_tau", "tau must have positive imaginary part")
        self.tau = tau

    def __repr__(self):
        return f"TauInvariant({self.tau!r})"


def tau_invariant(curve):
    """omega2/omega1 or omega1/omega2, whichever lies in the upper half plane."""
    ratio = curve.omega2 / curve.omega1
    if ratio.is_real():
        raise InputError("degenerate_lattice", "period ratio is real")
    if ratio.imag_sign() < 0:
        ratio = curve.omega1 / curve.omega2
    return TauInvariant(ratio)


class CmVerdict:
    __slots__ = ("has_cm", "quadratic", "discriminant")

    def __init__(self, has_cm, quadratic=None, discriminant=None):
        self.has_cm = has_cm
        self.quadratic = quadratic
        self.discriminant = discriminant

    def __repr__(self):
        if not self.has_cm:
            return "CmVerdict(has_cm=False)"
        return f"CmVerdict(has_cm=True, quadratic={self.quadratic}, disc={self.discriminant})"


def cm_check(tau):
    """Complex multiplication iff 1, tau, tau^2 are Q-linearly dependent."""
    t = tau.tau
    field = t.field
    kernel = linalg.rational_kernel([[t * t, t, field.one]], side="right")
    if not kernel:
        return CmVerdict(False)
    if len(kernel) != 1:
        raise InternalError("non-real tau satisfies two independent rational quadratics")
    a, b, c = linalg.primitive_vector(kernel[0])
    if a == 0:
        raise InternalError("non-real tau satisfies a rational linear relation")
    disc = b * b - 4 * a * c
    if disc >= 0:
        raise InternalError("CM quadratic of a non-real tau has nonnegative discriminant")
    return CmVerdict(True, (a, b, c), disc)


class IsogenyVerdict:
    __slots__ = ("isogenous", "witness")

    def __init__(self, isogenous, witness=None):
        self.isogenous = isogenous
        self.witness = witness

    def __repr__(self):
        return f"IsogenyVerdict({self.isogenous}, witness={self.witness})"


def _det_form(v):
    a, b, c, d = v
    return a * d - b * c


def is_isogenous(tau1, tau2):
    """Isogeny existence between C/(Z+Z tau1) and C/(Z+Z tau2).

    Solves the rational relation c*tau1*tau2 + d*tau2 - a*tau1 - b = 0 and
    looks for a solution with nonzero determinant ad - bc.
    """
    t1, t2 = tau1.tau, tau2.tau
    if t1.field is not t2.field and t1.field != t2.field:
        raise InputError("field_mismatch", "the two ratios live in different fields")
    field = t1.field
    row = [-t1, -field.one, t1 * t2, t2]  # unknowns (a, b, c, d)
    kernel = linalg.rational_kernel([row], side="right")
    if not kernel:
        return IsogenyVerdict(False)
    if len(kernel) == 1:
        v = kernel[0]
        if _det_form(v) != 0:
            return IsogenyVerdict(True, linalg.primitive_vector(v))
        return IsogenyVerdict(False)
    if len(kernel) == 2:
        v1, v2 = kernel
        vsum = tuple(x + y for x, y in zip(v1, v2))
        for v in (v1, v2, vsum):
            if _det_form(v) != 0:
                return IsogenyVerdict(True, linalg.primitive_vector(v))
        # the determinant form vanishes at e1, e2, e1+e2, hence identically
        return IsogenyVerdict(False)
    raise InternalError("isogeny relation space has dimension > 2")


def verify_isogeny_witness(tau1, tau2, witness):
    """Exact check of a returned witness: relation holds and ad - bc != 0."""
    a, b, c, d = witness
    t1, t2 = tau1.tau, tau2.tau
    relation = c * (t1 * t2) + d * t2 - a * t1 - b
    return (not relation) and _det_form(witness) != 0


def endo_clear_denominator(curve, scalar):
    """Minimal m >= 1 with m * scalar mapping the period lattice into itself.

    Requires the scalar to act rationally on the rational span of the lattice.
    """
    actions = []
    for omega in (curve.omega1, curve.omega2):
        kernel = linalg.rational_kernel(
            [[curve.omega1, curve.omega2, -(scalar * omega)]], side="right")
        solutions = [v for v in kernel if v[2] != 0]
        if not solutions:
            raise InputError("irrational_action",
                             "the scalar does not act rationally on the period lattice")
        x, y, t = solutions[0]
        actions.extend((x / t, y / t))
    return lcm(*[f.denominator for f in actions])
