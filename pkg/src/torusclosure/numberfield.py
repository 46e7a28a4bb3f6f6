"""Exact arithmetic in a conjugation-closed number field Q(theta).

A field is described by the minimal polynomial of theta, an isolating
rectangle in C selecting one of its complex roots (the embedding), and the
power-basis image of theta under complex conjugation.  Elements are stored
as integer coordinate vectors over the power basis with a common positive
denominator, so equality is a pure coefficient comparison.  Intervals enter
only when a sign of a provably nonzero real quantity is needed, or when a
numeric enclosure of an embedded value is requested.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import mpmath

from .errors import InputError, InternalError
from .intervals import Box, Interval, eval_poly_box

_MAX_REFINE = 48  # precision doublings before giving up on a certification


# ---------------------------------------------------------------------------
# Polynomials over Q, ascending coefficient lists.

def poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(p, q):
    n = max(len(p), len(q))
    p = list(p) + [Fraction(0)] * (n - len(p))
    q = list(q) + [Fraction(0)] * (n - len(q))
    return poly_trim([a + b for a, b in zip(p, q)])


def poly_sub(p, q):
    n = max(len(p), len(q))
    p = list(p) + [Fraction(0)] * (n - len(p))
    q = list(q) + [Fraction(0)] * (n - len(q))
    return poly_trim([a - b for a, b in zip(p, q)])


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p, q):
    q = poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = poly_trim(p)
    quo = [Fraction(0)] * max(0, len(r) - len(q) + 1)
    while len(r) >= len(q):
        shift = len(r) - len(q)
        c = r[-1] / q[-1]
        quo[shift] = c
        r = poly_trim([r[i] - c * q[i - shift] if 0 <= i - shift < len(q) else r[i]
                       for i in range(len(r) - 1)])
    return poly_trim(quo), r


def poly_gcd(p, q):
    a, b = poly_trim(p), poly_trim(q)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def poly_xgcd(p, q):
    """(g, s, t) with s*p + t*q = g, g monic."""
    a, b = poly_trim(p), poly_trim(q)
    sa, sb = [Fraction(1)], []
    ta, tb = [], [Fraction(1)]
    while b:
        quo, rem = poly_divmod(a, b)
        a, b = b, rem
        sa, sb = sb, poly_sub(sa, poly_mul(quo, sb))
        ta, tb = tb, poly_sub(ta, poly_mul(quo, tb))
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
        sa = [c / lead for c in sa]
        ta = [c / lead for c in ta]
    return a, sa, ta


def poly_derivative(p):
    return [Fraction(k) * c for k, c in enumerate(p)][1:]


def poly_eval_complex(p, re, im):
    """Exact evaluation at the rational complex point re + i*im."""
    acc_re, acc_im = Fraction(0), Fraction(0)
    for c in reversed(list(p)):
        acc_re, acc_im = acc_re * re - acc_im * im + c, acc_re * im + acc_im * re
    return acc_re, acc_im


def _mpf_to_fraction(x):
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    f = Fraction(int(man)) * (Fraction(2) ** exp)
    return -f if sign else f


def _rational_roots(p):
    """All rational roots of a rational-coefficient polynomial (exact)."""
    from sympy import factorint

    roots = []
    q = poly_trim(p)
    if not q:
        return roots
    if q[0] == 0:
        roots.append(Fraction(0))
        while q and q[0] == 0:
            q = q[1:]
    if len(q) <= 1:
        return roots

    den = lcm(*[c.denominator for c in q])
    ints = [int(c * den) for c in q]

    def divisors(n):
        ds = [1]
        for prime, mult in factorint(abs(n)).items():
            ds = [d * prime**k for d in ds for k in range(mult + 1)]
        return ds

    for num in divisors(ints[0]):
        for dq in divisors(ints[-1]):
            for cand in (Fraction(num, dq), Fraction(-num, dq)):
                acc = Fraction(0)
                for c in reversed(q):
                    acc = acc * cand + c
                if acc == 0 and cand not in roots:
                    roots.append(cand)
    return roots


def _poly_add_const(p, c):
    if not p:
        return poly_trim([c])
    p = list(p)
    p[0] += c
    return poly_trim(p)


def _poly_compose_mod(outer, inner, mod):
    """outer(inner) reduced modulo mod, all ascending coefficient lists."""
    acc = []
    for c in reversed(list(outer)):
        acc = poly_mul(acc, inner)
        acc = _poly_add_const(acc, c)
        _, acc = poly_divmod(acc, mod)
    return acc


def _poly_mulmod(p, q, mod, width):
    _, rem = poly_divmod(poly_mul(p, q), mod)
    rem = list(rem) + [Fraction(0)] * (width - len(rem))
    return rem[:width]


class AlgebraicNumber:
    """Element of a FieldSpec: integer power-basis coordinates / denominator."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den=1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        g = den
        for v in num:
            g = gcd(g, v)
            if g == 1:
                break
        if den < 0:
            g = -g
        if g != 1:
            num = tuple(v // g for v in num)
            den //= g
        if not any(num):
            num, den = (0,) * field.degree, 1
        self.field = field
        self.num = tuple(num)
        self.den = den

    # -- construction helpers -------------------------------------------------

    @property
    def coeffs(self):
        """Power-basis coordinates as Fractions (ascending)."""
        return tuple(Fraction(v, self.den) for v in self.num)

    def _coerce(self, other):
        if isinstance(other, AlgebraicNumber):
            if other.field is not self.field and other.field != self.field:
                raise InputError("field_mismatch", "operands belong to different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    # -- ring operations --------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        num = tuple(x * o.den + y * self.den for x, y in zip(self.num, o.num))
        return AlgebraicNumber(self.field, num, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.field, tuple(-v for v in self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        num = tuple(x * o.den - y * self.den for x, y in zip(self.num, o.num))
        return AlgebraicNumber(self.field, num, self.den * o.den)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self, o
        if b.is_rational():
            return AlgebraicNumber(self.field, tuple(v * b.num[0] for v in a.num),
                                   a.den * b.den)
        if a.is_rational():
            return AlgebraicNumber(self.field, tuple(v * a.num[0] for v in b.num),
                                   a.den * b.den)
        d = self.field.degree
        conv = [0] * (2 * d - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        conv[i + j] += x * y
        scale, red = self.field._reduction
        num = [c * scale for c in conv[:d]]
        for k in range(d, 2 * d - 1):
            ck = conv[k]
            if ck:
                row = red[k - d]
                for t in range(d):
                    num[t] += ck * row[t]
        return AlgebraicNumber(self.field, tuple(num), a.den * b.den * scale)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("division by zero field element")
        g, s, _ = poly_xgcd(list(self.coeffs), self.field.min_poly)
        if len(g) != 1:
            raise InputError("not_invertible",
                             "element is a zero divisor; the minimal polynomial is reducible")
        s = list(s) + [Fraction(0)] * self.field.degree
        return self.field.element(s[: self.field.degree])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return any(self.num)

    def __repr__(self):
        return f"AlgebraicNumber({list(self.coeffs)})"

    # -- structure ----------------------------------------------------------------

    def conjugate(self):
        """Image under the field's complex-conjugation automorphism."""
        cscale, cmat = self.field._conj_matrix
        d = self.field.degree
        num = [0] * d
        for j, v in enumerate(self.num):
            if v:
                col = cmat[j]
                for t in range(d):
                    num[t] += v * col[t]
        return AlgebraicNumber(self.field, tuple(num), self.den * cscale)

    def is_real(self):
        return self == self.conjugate()

    def is_rational(self):
        return not any(self.num[1:])

    def as_fraction(self):
        if not self.is_rational():
            raise InputError("not_rational", "element is not rational")
        return Fraction(self.num[0], self.den)

    # -- numeric embedding ----------------------------------------------------------

    def enclosure(self, eps):
        """Rectangle with rational corners containing the embedded value and
        side lengths < eps."""
        eps = Fraction(eps)
        if eps <= 0:
            raise InputError("bad_epsilon", "eps must be positive")
        if self.is_rational():
            return Box.point(self.as_fraction(), 0)
        while True:
            box = eval_poly_box(self.coeffs, self.field.theta_box())
            if box.width() < eps:
                return box
            self.field.refine_embedding()

    def complex_approx(self):
        box = self.enclosure(Fraction(1, 10**20))
        re, im = box.midpoint()
        return complex(re, im)

    def real_sign(self):
        """Sign of a real element; exact zero test first, then refinement."""
        if not self.is_real():
            raise InputError("not_real", "sign of a non-real element")
        if not self:
            return 0
        while True:
            s = eval_poly_box(self.coeffs, self.field.theta_box()).re.sign()
            if s:
                return s
            self.field.refine_embedding()

    def imag_sign(self):
        """Sign of the imaginary part; zero iff the element is real."""
        if self.is_real():
            return 0
        diff = self - self.conjugate()  # 2i Im(x): purely imaginary and nonzero
        while True:
            s = eval_poly_box(diff.coeffs, self.field.theta_box()).im.sign()
            if s:
                return s
            self.field.refine_embedding()


class FieldSpec:
    """Number field Q(theta) with a chosen complex embedding and conjugation.

    min_poly: ascending rational coefficients, monic, squarefree, without
    rational roots.  root_box: rational rectangle (re_lo, re_hi, im_lo,
    im_hi) isolating exactly one complex root of min_poly.  conj_image:
    power-basis coordinates of the complex conjugate of theta.
    """

    def __init__(self, min_poly, root_box, conj_image):
        self.min_poly = [Fraction(c) for c in min_poly]
        if len(self.min_poly) < 3:
            raise InputError("invalid_min_poly", "min_poly must have degree at least 2")
        if self.min_poly[-1] != 1:
            raise InputError("invalid_min_poly", "min_poly must be monic")
        self.degree = len(self.min_poly) - 1
        if len(poly_gcd(self.min_poly, poly_derivative(self.min_poly))) != 1:
            raise InputError("invalid_min_poly", "min_poly is not squarefree")
        if _rational_roots(self.min_poly):
            raise InputError("invalid_min_poly", "min_poly has a rational root")

        self._init_reduction()

        corners = [Fraction(c) for c in root_box]
        if len(corners) != 4:
            raise InputError("invalid_root_box", "root_box needs four rational corners")
        re_lo, re_hi, im_lo, im_hi = corners
        if re_lo > re_hi or im_lo > im_hi:
            raise InputError("invalid_root_box", "root_box corners are not ordered")
        self.root_box = Box(Interval(re_lo, re_hi), Interval(im_lo, im_hi))

        self._prec = 64
        self._disks = None
        self._theta_box = None
        self._imaginary_unit_cache = False
        self._zero_cache = None
        self._one_cache = None
        self._certify_root_box()

        conj = [Fraction(c) for c in conj_image]
        if len(conj) != self.degree:
            raise InputError("conjugation_inconsistent",
                             "conj_image length differs from the field degree")
        self._init_conjugation(conj)

    # -- exact precomputations ------------------------------------------------------

    def _init_reduction(self):
        d = self.degree
        cur = [-c for c in self.min_poly[:d]]  # theta^d over the power basis
        rows = [list(cur)]
        for _ in range(d - 2):
            shifted = [Fraction(0)] + list(cur)
            top = shifted[d]
            cur = shifted[:d]
            if top:
                cur = [a + top * b for a, b in zip(cur, rows[0])]
            rows.append(list(cur))
        scale = 1
        for row in rows:
            scale = lcm(scale, *[f.denominator for f in row])
        self._reduction = (scale, [[int(f * scale) for f in row] for row in rows])

    def _init_conjugation(self, conj_image):
        d = self.degree
        if poly_trim(_poly_compose_mod(self.min_poly, conj_image, self.min_poly)):
            raise InputError("conjugation_inconsistent", "min_poly(conj_image) is not zero")
        # column j = power-basis coordinates of conj(theta)^j
        cols = [[Fraction(1)] + [Fraction(0)] * (d - 1)]
        for _ in range(d - 1):
            cols.append(_poly_mulmod(cols[-1], conj_image, self.min_poly, d))
        scale = 1
        for col in cols:
            scale = lcm(scale, *[f.denominator for f in col])
        self._conj_matrix = (scale, [[int(f * scale) for f in col] for col in cols])
        self.conj_image = tuple(conj_image)

        if self.gen.conjugate().conjugate() != self.gen:
            raise InputError("conjugation_inconsistent",
                             "conjugation applied twice does not fix theta")
        self._check_conjugation_embedding()

    # -- element constructors ----------------------------------------------------------

    def element(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) != self.degree:
            raise InputError("bad_coefficients",
                             f"expected {self.degree} coordinates, got {len(coeffs)}")
        fr = [Fraction(c) for c in coeffs]
        den = lcm(*[f.denominator for f in fr])
        return AlgebraicNumber(self, tuple(int(f * den) for f in fr), den)

    def from_rational(self, q):
        q = Fraction(q)
        return AlgebraicNumber(self, (q.numerator,) + (0,) * (self.degree - 1),
                               q.denominator)

    @property
    def zero(self):
        if self._zero_cache is None:
            self._zero_cache = self.from_rational(0)
        return self._zero_cache

    @property
    def one(self):
        if self._one_cache is None:
            self._one_cache = self.from_rational(1)
        return self._one_cache

    @property
    def gen(self):
        return AlgebraicNumber(self, (0, 1) + (0,) * (self.degree - 2), 1)

    def __eq__(self, other):
        return (isinstance(other, FieldSpec)
                and self.min_poly == other.min_poly
                and self.conj_image == other.conj_image
                and (self.root_box.re.lo, self.root_box.re.hi,
                     self.root_box.im.lo, self.root_box.im.hi)
                == (other.root_box.re.lo, other.root_box.re.hi,
                    other.root_box.im.lo, other.root_box.im.hi))

    def __repr__(self):
        return f"FieldSpec(min_poly={self.min_poly})"

    # -- certified embedding ----------------------------------------------------------

    def _certified_disks(self, prec):
        """One certified enclosing disk per root, or None if not yet separated.

        For any z, the nearest root of p lies within deg(p) * |p(z)/p'(z)|;
        evaluating that bound in exact rational arithmetic at the approximate
        roots gives d disks, and pairwise disjointness pins one root in each.
        """
        d = self.degree
        deriv = poly_derivative(self.min_poly)
        with mpmath.mp.workprec(prec):
            coeffs = [mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
                      for c in reversed(self.min_poly)]
            try:
                roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=prec)
            except (mpmath.libmp.NoConvergence, ZeroDivisionError):
                return None
        disks = []
        for r in roots:
            r = mpmath.mpc(r)
            zre, zim = _mpf_to_fraction(r.real), _mpf_to_fraction(r.imag)
            pre, pim = poly_eval_complex(self.min_poly, zre, zim)
            dre, dim_ = poly_eval_complex(deriv, zre, zim)
            qden = dre * dre + dim_ * dim_
            if qden == 0:
                return None
            qre = (pre * dre + pim * dim_) / qden
            qim = (pim * dre - pre * dim_) / qden
            radius = d * (abs(qre) + abs(qim))
            disks.append((zre, zim, radius))
        disks.sort(key=lambda t: (t[0], t[1]))
        for i in range(d):
            for j in range(i + 1, d):
                dx = disks[i][0] - disks[j][0]
                dy = disks[i][1] - disks[j][1]
                rr = disks[i][2] + disks[j][2]
                if dx * dx + dy * dy <= rr * rr:
                    return None
        return disks

    @staticmethod
    def _disk_box(disk):
        cre, cim, rad = disk
        return Box(Interval(cre - rad, cre + rad), Interval(cim - rad, cim + rad))

    def _certify_root_box(self):
        for _ in range(_MAX_REFINE):
            disks = self._certified_disks(self._prec)
            if disks is not None:
                inside = unresolved = 0
                chosen = None
                for idx, disk in enumerate(disks):
                    box = self._disk_box(disk)
                    if self.root_box.contains_box(box):
                        inside += 1
                        chosen = idx
                    elif not self.root_box.disjoint(box):
                        unresolved += 1
                if inside > 1:
                    raise InputError("invalid_root_box",
                                     "root_box contains more than one root of min_poly")
                if inside == 0 and unresolved == 0:
                    raise InputError("invalid_root_box",
                                     "root_box contains no root of min_poly")
                if inside == 1 and unresolved == 0:
                    self._disks = disks
                    theta = self._disk_box(disks[chosen]).intersect(self.root_box)
                    if theta is None:
                        raise InternalError("certified disk escaped the root box")
                    self._theta_box = theta
                    return
            self._prec *= 2
        raise InputError("invalid_root_box",
                         "cannot certify root isolation; a root may lie on the boundary")

    def theta_box(self):
        return self._theta_box

    def refine_embedding(self):
        """Tighten the certified enclosure of theta (doubles working precision)."""
        for _ in range(_MAX_REFINE):
            self._prec *= 2
            disks = self._certified_disks(self._prec)
            if disks is None:
                continue
            hits = [d for d in disks if not self._disk_box(d).disjoint(self._theta_box)]
            if len(hits) != 1:
                continue
            newbox = self._disk_box(hits[0]).intersect(self._theta_box)
            if newbox is None:
                raise InternalError("refined disk escaped the current enclosure")
            self._disks = disks
            self._theta_box = newbox
            return
        raise InternalError("embedding refinement failed to converge")

    def _check_conjugation_embedding(self):
        """conj_image must embed onto the complex conjugate of theta's value."""
        conj_coeffs = [Fraction(c) for c in self.conj_image]
        for _ in range(_MAX_REFINE):
            value_box = eval_poly_box(conj_coeffs, self._theta_box)
            reflected = self._theta_box.conjugate()
            value_hits = [i for i, d in enumerate(self._disks)
                          if not self._disk_box(d).disjoint(value_box)]
            reflected_hits = [i for i, d in enumerate(self._disks)
                              if not self._disk_box(d).disjoint(reflected)]
            if len(value_hits) == 1 and len(reflected_hits) == 1:
                if value_hits != reflected_hits:
                    raise InputError(
                        "conjugation_inconsistent",
                        "conj_image does not embed to the complex conjugate of theta")
                return
            self.refine_embedding()
        raise InternalError("could not identify the conjugate root")

    # -- imaginary unit -------------------------------------------------------------

    def imaginary_unit(self):
        """The element embedding to +i; raises if the field has none."""
        if self._imaginary_unit_cache is False:
            self._imaginary_unit_cache = self._find_imaginary_unit()
        return self._imaginary_unit_cache

    def _find_imaginary_unit(self):
        import sympy
        from sympy.polys.numberfields.subfield import field_isomorphism

        x = sympy.Symbol("x")
        poly = sum(sympy.Rational(c.numerator, c.denominator) * x**k
                   for k, c in enumerate(self.min_poly))
        root = sympy.CRootOf(sympy.Poly(poly, x), 0)
        iso = field_isomorphism(sympy.AlgebraicNumber(sympy.I),
                                sympy.AlgebraicNumber(root))
        if iso is None:
            raise InputError("no_imaginary_unit",
                             "the field does not contain a square root of -1")
        # field_isomorphism returns coefficients highest degree first
        coeffs = [Fraction(c.p, c.q) for c in reversed(list(iso))]
        coeffs += [Fraction(0)] * (self.degree - len(coeffs))
        cand = self.element(coeffs[: self.degree])
        if cand * cand != self.from_rational(-1):
            raise InternalError("imaginary unit candidate fails i*i = -1")
        if cand.imag_sign() < 0:
            cand = -cand
        return cand
