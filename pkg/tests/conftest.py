from fractions import Fraction
from pathlib import Path

import pytest

from torusclosure import FieldSpec, build_torus

CORPUS = Path(__file__).resolve().parent.parent / "src" / "torusclosure" / "corpus"


@pytest.fixture(scope="session")
def field_qi():
    """Q(i), theta = i."""
    return FieldSpec([1, 0, 1], ["-1/2", "1/2", "1/2", "3/2"], [0, -1])


@pytest.fixture(scope="session")
def field_qs():
    """Q(sqrt2 + i), theta = sqrt2 + i, min poly x^4 - 2x^2 + 9."""
    return FieldSpec([9, 0, -2, 0, 1], [1, 2, "1/2", "3/2"],
                     [0, Fraction(2, 3), 0, Fraction(-1, 3)])


@pytest.fixture(scope="session")
def field_qw():
    """Q(omega), omega a primitive cube root of unity (no imaginary unit)."""
    return FieldSpec([1, 1, 1], [-1, 0, "1/2", 1], [-1, -1])


@pytest.fixture(scope="session")
def field_qz():
    """Q(zeta12): contains i = zeta^3 and omega = zeta^2 - 1."""
    return FieldSpec([1, 0, -1, 0, 1], ["3/4", 1, "1/4", "3/4"], [0, 1, 0, -1])


@pytest.fixture(scope="session")
def qs_elements(field_qs):
    th = field_qs.gen
    return {
        "i": (th**3 + th) / 6,
        "sqrt2": (-(th**3) + 5 * th) / 6,
        "sqrt2i": (th * th - 1) / 2,
        "tau": th,
    }


@pytest.fixture(scope="session")
def moser(field_qi):
    one, zero, i = field_qi.one, field_qi.zero, field_qi.gen
    return build_torus(field_qi, [(one, zero), (i, zero), (zero, one), (zero, i)])


@pytest.fixture(scope="session")
def moser_big(field_qs, qs_elements):
    """The same torus presented over the larger field Q(sqrt2+i)."""
    one, zero, i = field_qs.one, field_qs.zero, qs_elements["i"]
    return build_torus(field_qs, [(one, zero), (i, zero), (zero, one), (zero, i)])


@pytest.fixture(scope="session")
def mixed(field_qs, qs_elements):
    one, zero = field_qs.one, field_qs.zero
    i, s2i = qs_elements["i"], qs_elements["sqrt2i"]
    return build_torus(field_qs, [(one, zero), (i, zero), (zero, one), (zero, s2i)])


@pytest.fixture(scope="session")
def noncm_square(field_qs):
    one, zero, tau = field_qs.one, field_qs.zero, field_qs.gen
    return build_torus(field_qs, [(one, zero), (tau, zero), (zero, one), (zero, tau)])


@pytest.fixture(scope="session")
def sqrt2_square(field_qs, qs_elements):
    one, zero, s2i = field_qs.one, field_qs.zero, qs_elements["sqrt2i"]
    return build_torus(field_qs, [(one, zero), (s2i, zero), (zero, one), (zero, s2i)])


@pytest.fixture(scope="session")
def triple_mixed(field_qs, qs_elements):
    one, zero = field_qs.one, field_qs.zero
    i, s2i = qs_elements["i"], qs_elements["sqrt2i"]
    return build_torus(field_qs, [
        (one, zero, zero), (i, zero, zero),
        (zero, one, zero), (zero, i, zero),
        (zero, zero, one), (zero, zero, s2i),
    ])


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS
