"""File formats: exact-rational JSON for fields, tori, subgroups and curves.

Rationals travel as strings "p" or "p/q"; floating-point literals are
rejected outright so that every parsed model is exact by construction.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .errors import InputError
from .numberfield import FieldSpec
from .torus import ComplexTorus, EllipticCurveSpec, RationalSubspace, build_torus

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def parse_rational(value, where):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise InputError("malformed_rational",
                         f"{where}: expected an exact rational string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not _RATIONAL_RE.match(value.strip()):
        raise InputError("malformed_rational",
                         f"{where}: {value!r} is not an exact rational 'p/q'")
    return Fraction(value.strip())


def format_rational(f):
    f = Fraction(f)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _require(mapping, key, where):
    if not isinstance(mapping, dict) or key not in mapping:
        raise InputError("invalid_schema", f"{where}: missing field {key!r}")
    return mapping[key]


def parse_field(doc, where="field"):
    min_poly = [parse_rational(c, f"{where}.min_poly") for c in
                _require(doc, "min_poly", where)]
    root_box = [parse_rational(c, f"{where}.root_box") for c in
                _require(doc, "root_box", where)]
    conj_image = [parse_rational(c, f"{where}.conj_image") for c in
                  _require(doc, "conj_image", where)]
    return FieldSpec(min_poly, root_box, conj_image)


def field_to_doc(field):
    return {
        "min_poly": [format_rational(c) for c in field.min_poly],
        "root_box": [format_rational(field.root_box.re.lo),
                     format_rational(field.root_box.re.hi),
                     format_rational(field.root_box.im.lo),
                     format_rational(field.root_box.im.hi)],
        "conj_image": [format_rational(c) for c in field.conj_image],
    }


def parse_entry(field, doc, where):
    """One complex coordinate: list of power-basis rational coordinates."""
    if not isinstance(doc, list) or len(doc) != field.degree:
        raise InputError("invalid_schema",
                         f"{where}: entry must list {field.degree} coordinates")
    return field.element([parse_rational(c, where) for c in doc])


def entry_to_doc(value):
    return [format_rational(c) for c in value.coeffs]


class TorusSpecFile:
    """Parsed torus file: field, torus, optional product form, label."""

    __slots__ = ("label", "field", "torus", "curves")

    def __init__(self, label, field, torus, curves):
        self.label = label
        self.field = field
        self.torus = torus
        self.curves = curves


def parse_torus_doc(doc, where="torus file"):
    field = parse_field(_require(doc, "field", where))
    tdoc = _require(doc, "torus", where)
    n = _require(tdoc, "n", f"{where}.torus")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError("invalid_schema", f"{where}: torus.n must be a positive integer")
    gens_doc = _require(tdoc, "generators", f"{where}.torus")
    if not isinstance(gens_doc, list) or len(gens_doc) != 2 * n:
        raise InputError("dimension_mismatch",
                         f"{where}: expected {2 * n} generators for n={n}")
    generators = []
    for gi, gdoc in enumerate(gens_doc):
        if not isinstance(gdoc, list) or len(gdoc) != n:
            raise InputError("dimension_mismatch",
                             f"{where}: generator {gi} must have {n} entries")
        generators.append(tuple(parse_entry(field, e, f"{where}.generators[{gi}]")
                                for e in gdoc))
    torus = build_torus(field, generators)
    curves = None
    if "product_form" in doc and doc["product_form"] is not None:
        curves = []
        for ci, cdoc in enumerate(doc["product_form"]):
            omega1 = parse_entry(field, _require(cdoc, "omega1", "product_form"),
                                 f"{where}.product_form[{ci}]")
            omega2 = parse_entry(field, _require(cdoc, "omega2", "product_form"),
                                 f"{where}.product_form[{ci}]")
            curves.append(EllipticCurveSpec(omega1, omega2))
        if len(curves) != n:
            raise InputError("dimension_mismatch",
                             f"{where}: product form lists {len(curves)} curves for n={n}")
    label = doc.get("label")
    return TorusSpecFile(label, field, torus, curves)


def torus_to_doc(spec):
    doc = {}
    if spec.label is not None:
        doc["label"] = spec.label
    doc["field"] = field_to_doc(spec.field)
    doc["torus"] = {
        "n": spec.torus.n,
        "generators": [[entry_to_doc(e) for e in gen] for gen in spec.torus.generators],
    }
    if spec.curves is not None:
        doc["product_form"] = [{"omega1": entry_to_doc(c.omega1),
                                "omega2": entry_to_doc(c.omega2)} for c in spec.curves]
    return doc


def parse_subgroup_doc(field, n, doc, where="subgroup file"):
    basis_doc = _require(doc, "basis", where)
    if not isinstance(basis_doc, list):
        raise InputError("invalid_schema", f"{where}: basis must be a list")
    basis = []
    for vi, vdoc in enumerate(basis_doc):
        if not isinstance(vdoc, list) or len(vdoc) != n:
            raise InputError("dimension_mismatch",
                             f"{where}: basis vector {vi} must have {n} entries")
        basis.append(tuple(parse_entry(field, e, f"{where}.basis[{vi}]") for e in vdoc))
    return basis


def parse_subtorus_doc(two_n, doc, where="subtorus file"):
    basis_doc = _require(doc, "basis", where)
    vectors = []
    for vi, vdoc in enumerate(basis_doc):
        if not isinstance(vdoc, list) or len(vdoc) != two_n:
            raise InputError("dimension_mismatch",
                             f"{where}: vector {vi} must have {two_n} integer entries")
        vec = []
        for e in vdoc:
            f = parse_rational(e, f"{where}.basis[{vi}]")
            if f.denominator != 1:
                raise InputError("invalid_schema",
                                 f"{where}: subtorus coordinates must be integers")
            vec.append(int(f))
        vectors.append(vec)
    return RationalSubspace.from_vectors(two_n, vectors)


def parse_curve_doc(doc, where="curve file"):
    field = parse_field(_require(doc, "field", where))
    cdoc = _require(doc, "curve", where)
    omega1 = parse_entry(field, _require(cdoc, "omega1", where), f"{where}.omega1")
    omega2 = parse_entry(field, _require(cdoc, "omega2", where), f"{where}.omega2")
    return field, EllipticCurveSpec(omega1, omega2)


def load_json(path):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError("io_error", f"cannot read {path}: {exc}") from exc
    try:
        # reject floating point literals before json turns them into floats
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputError("invalid_json", f"{path} is not UTF-8") from exc

    def _no_floats(s):
        raise InputError("malformed_rational",
                         f"{path}: floating-point literal {s!r}; use exact 'p/q' strings")

    try:
        doc = json.loads(text, parse_float=_no_floats)
    except InputError:
        raise
    except json.JSONDecodeError as exc:
        raise InputError("invalid_json", f"{path}: {exc}") from exc
    return doc, raw


def parse_torus_file(path):
    doc, _ = load_json(path)
    try:
        return parse_torus_doc(doc, where=str(path))
    except InputError:
        raise
    except (TypeError, KeyError) as exc:
        raise InputError("invalid_schema", f"{path}: {exc}") from exc
