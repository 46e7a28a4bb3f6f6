import random
from fractions import Fraction

import pytest

from torusclosure import (EllipticCurveSpec, InputError, TauInvariant, cm_check,
                          endo_clear_denominator, is_isogenous, tau_invariant,
                          verify_isogeny_witness)

import oracles


@pytest.fixture(scope="module")
def taus(field_qi, field_qs, qs_elements):
    i = field_qi.gen
    return {
        "i": TauInvariant(i),
        "2i": TauInvariant(i + i),
        "half1i": TauInvariant(field_qi.element(["1/2", "1/2"])),
        "qs_i": TauInvariant(qs_elements["i"]),
        "s2i": TauInvariant(qs_elements["sqrt2i"]),
        "tau": TauInvariant(field_qs.gen),
    }


class TestTauInvariant:
    def test_gaussian(self, field_qi):
        curve = EllipticCurveSpec(field_qi.one, field_qi.gen)
        assert tau_invariant(curve).tau == field_qi.gen

    def test_swaps_to_upper_half_plane(self, field_qi):
        curve = EllipticCurveSpec(field_qi.one, -field_qi.gen)
        assert tau_invariant(curve).tau == field_qi.gen

    def test_sqrt2i(self, field_qs, qs_elements):
        curve = EllipticCurveSpec(field_qs.one, qs_elements["sqrt2i"])
        assert tau_invariant(curve).tau == qs_elements["sqrt2i"]
        assert qs_elements["sqrt2i"] == (field_qs.gen ** 2 - 1) / 2

    def test_real_ratio_rejected(self, field_qi):
        with pytest.raises(InputError):
            EllipticCurveSpec(field_qi.one, field_qi.from_rational(2))


class TestCmCheck:
    def test_gaussian_disc(self, taus):
        v = cm_check(taus["i"])
        assert v.has_cm and v.quadratic == (1, 0, 1) and v.discriminant == -4

    def test_sqrt2i_disc(self, taus):
        v = cm_check(taus["s2i"])
        assert v.has_cm and v.quadratic == (1, 0, 2) and v.discriminant == -8

    def test_no_cm(self, taus):
        assert cm_check(taus["tau"]).has_cm is False

    def test_half_integer_disc(self, taus):
        v = cm_check(taus["half1i"])
        assert v.has_cm and v.quadratic == (2, -2, 1) and v.discriminant == -4

    def test_translation_and_inversion_invariance(self, taus, field_qs):
        # has_cm agrees on tau, tau + 1 and -1/tau
        for key in ("i", "s2i", "tau", "half1i"):
            t = taus[key].tau
            base = cm_check(taus[key]).has_cm
            shifted = TauInvariant(t + 1)
            inverted = tau_invariant(EllipticCurveSpec(t, t.field.from_rational(-1)))
            assert cm_check(shifted).has_cm == base
            assert cm_check(inverted).has_cm == base


class TestIsogeny:
    def test_doubling(self, taus):
        v = is_isogenous(taus["i"], taus["2i"])
        assert v.isogenous
        assert verify_isogeny_witness(taus["i"], taus["2i"], v.witness)

    def test_gaussian_vs_sqrt2i(self, taus):
        assert is_isogenous(taus["qs_i"], taus["s2i"]).isogenous is False

    def test_identity(self, taus):
        v = is_isogenous(taus["i"], taus["i"])
        assert v.isogenous
        assert verify_isogeny_witness(taus["i"], taus["i"], v.witness)

    def test_kernel_dimension_two_case(self, taus):
        # same imaginary quadratic field: the relation space is a plane
        from torusclosure import linalg
        t1, t2 = taus["i"].tau, taus["half1i"].tau
        row = [-t1, -t1.field.one, t1 * t2, t2]
        assert len(linalg.rational_kernel([row], side="right")) == 2
        v = is_isogenous(taus["i"], taus["half1i"])
        assert v.isogenous
        assert verify_isogeny_witness(taus["i"], taus["half1i"], v.witness)

    def test_kernel_dimension_one_case(self, taus):
        from torusclosure import linalg
        t = taus["tau"].tau
        row = [-t, -t.field.one, t * t, t]
        assert len(linalg.rational_kernel([row], side="right")) == 1
        v = is_isogenous(taus["tau"], taus["tau"])
        assert v.isogenous and v.witness == (1, 0, 0, 1)

    def test_field_mismatch(self, taus):
        with pytest.raises(InputError) as exc:
            is_isogenous(taus["i"], taus["s2i"])
        assert exc.value.code == "field_mismatch"

    def test_symmetry_and_reflexivity_on_corpus(self, taus):
        keys = ["qs_i", "s2i", "tau"]
        for k in keys:
            assert is_isogenous(taus[k], taus[k]).isogenous
        for a in keys:
            for b in keys:
                assert (is_isogenous(taus[a], taus[b]).isogenous
                        == is_isogenous(taus[b], taus[a]).isogenous)

    def test_cm_pairs_agree_with_squarefree_discriminant(self, field_qi, field_qs,
                                                         qs_elements):
        rng = random.Random(41)
        pool_qi = []
        i = field_qi.gen
        for _ in range(6):
            a = rng.randint(1, 3)
            b = rng.randint(-2, 2)
            pool_qi.append(TauInvariant((b + i) / a))
        pool_qs = [TauInvariant(qs_elements["sqrt2i"]),
                   TauInvariant((1 + qs_elements["sqrt2i"]) / 3)]
        for pool in (pool_qi, pool_qs):
            for a in pool:
                for b in pool:
                    da = oracles.squarefree_part(cm_check(a).discriminant)
                    db = oracles.squarefree_part(cm_check(b).discriminant)
                    assert is_isogenous(a, b).isogenous == (da == db)


class TestEndoClearDenominator:
    def test_half_i_needs_two(self, field_qi):
        curve = EllipticCurveSpec(field_qi.one, field_qi.gen)
        assert endo_clear_denominator(curve, field_qi.gen / 2) == 2

    def test_i_is_integral(self, field_qi):
        curve = EllipticCurveSpec(field_qi.one, field_qi.gen)
        assert endo_clear_denominator(curve, field_qi.gen) == 1

    def test_sqrt2i_third(self, field_qs, qs_elements):
        curve = EllipticCurveSpec(field_qs.one, qs_elements["sqrt2i"])
        assert endo_clear_denominator(curve, qs_elements["sqrt2i"] / 3) == 3

    def test_irrational_action_rejected(self, field_qs, qs_elements):
        curve = EllipticCurveSpec(field_qs.one, qs_elements["i"])
        with pytest.raises(InputError) as exc:
            endo_clear_denominator(curve, qs_elements["sqrt2i"])
        assert exc.value.code == "irrational_action"
