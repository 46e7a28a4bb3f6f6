import random
from fractions import Fraction

import pytest

from torusclosure import (EllipticCurveSpec, InputError, RationalSubspace,
                          build_torus, census, classify, closure,
                          endomorphism_algebra, hyperplane_core, hyperplane_form,
                          hyperplane_forms, isogeny_to_product, line_census,
                          linalg, product_form_classify, quotient_torus,
                          witness_search)

import oracles


class TestEndomorphismAlgebra:
    def test_moser_dimension_with_oracle(self, moser):
        assert oracles.commutant_dimension(oracles.MOSER_J) == 8
        assert endomorphism_algebra(moser).dim == 8

    def test_mixed_dimension_with_oracle(self, mixed):
        assert oracles.commutant_dimension(oracles.MIXED_J) == 4
        assert endomorphism_algebra(mixed).dim == 4

    def test_basis_matrices_commute_with_mult_i(self, mixed):
        algebra = endomorphism_algebra(mixed)
        j = mixed.mult_i_matrix
        f = mixed.field
        for mat in algebra.basis:
            for r in range(4):
                for s in range(4):
                    lhs = f.zero
                    rhs = f.zero
                    for k in range(4):
                        lhs = lhs + mat[r][k] * j[k][s]
                        rhs = rhs + mat[k][s] * j[r][k]
                    assert lhs == rhs

    def test_dimension_bound(self, noncm_square, triple_mixed):
        assert endomorphism_algebra(noncm_square).dim <= 8
        assert endomorphism_algebra(triple_mixed).dim == 10

    def test_invariant_under_finite_index_sublattice(self, field_qi, moser):
        one, zero, i = field_qi.one, field_qi.zero, field_qi.gen
        # double the first generator: an index-two sublattice
        sub = build_torus(field_qi, [(one + one, zero), (i, zero),
                                     (zero, one), (zero, i)])
        assert endomorphism_algebra(sub).dim == endomorphism_algebra(moser).dim


class TestHyperplanes:
    def test_form_canonicalization(self):
        assert hyperplane_form([-2, 0, 2, 4]) == (1, 0, -1, -2)
        with pytest.raises(InputError):
            hyperplane_form([0, 0, 0, 0])

    def test_enumeration_matches_independent_count(self):
        for dim, height in ((2, 3), (4, 1), (4, 2)):
            ours = list(hyperplane_forms(dim, height))
            assert len(set(ours)) == len(ours)
            assert set(ours) == oracles.enumerate_forms(dim, height)

    def test_enumeration_order_is_shells_then_lex(self):
        forms = list(hyperplane_forms(2, 2))
        shells = [max(abs(e) for e in f) for f in forms]
        assert shells == sorted(shells)
        first_shell = [f for f in forms if max(abs(e) for e in f) == 1]
        assert first_shell == sorted(first_shell)

    def test_moser_core_axis(self, moser):
        core = hyperplane_core(moser, (1, 0, 0, 0))
        assert core.dim == 1
        v = core.basis[0]
        assert not v[0]  # the core of Re(z) = 0 is {0} x C

    def test_moser_core_other_axis(self, moser):
        core = hyperplane_core(moser, (0, 0, 1, 0))
        assert core.dim == 1
        assert not core.basis[0][1]

    def test_mixed_core_diagonal(self, mixed):
        core = hyperplane_core(mixed, (1, 0, -1, 0))
        assert core.dim == 1
        z, w = core.basis[0]
        assert z == w and z  # the diagonal line z = w


class TestCensus:
    def test_moser_height_one_all_complex(self, moser):
        res = census(moser, 1)
        assert res.total == 40
        assert res.complex_count == 40
        assert res.non_complex_examples == ()

    def test_mixed_height_one_has_witnesses(self, mixed):
        res = census(mixed, 1)
        assert res.total == 40
        assert res.complex_count < res.total
        assert res.non_complex_examples
        first_form, dim = res.non_complex_examples[0]
        assert dim == 3
        # the hand-worked diagonal witness is a height-one non-complex case
        from torusclosure.closure import closure_of_hyperplane_core
        hand = closure_of_hyperplane_core(mixed, (1, 0, -1, 0))
        assert not hand.is_complex and hand.real_dim == 3

    def test_dimension_one_torus_all_complex(self, field_qi):
        line = build_torus(field_qi, [(field_qi.one,), (field_qi.gen,)])
        res = census(line, 1)
        assert res.complex_count == res.total == 4

    def test_census_is_deterministic(self, mixed):
        a = census(mixed, 1)
        b = census(mixed, 1)
        assert (a.total, a.complex_count, a.non_complex_examples) == \
            (b.total, b.complex_count, b.non_complex_examples)


class TestWitnessSearch:
    def test_mixed_height_one(self, mixed):
        found = witness_search(mixed, 1)
        assert found is not None
        form, res = found
        assert res.real_dim == 3 and not res.is_complex
        # first witness in canonical enumeration order
        assert form == (0, 1, -1, -1)

    def test_moser_exhaustive_height_three(self, moser):
        assert witness_search(moser, 3) is None

    def test_sqrt2_square_height_three(self, sqrt2_square):
        assert witness_search(sqrt2_square, 3) is None


class TestClassify:
    def test_moser(self, moser, field_qi):
        curves = [EllipticCurveSpec(field_qi.one, field_qi.gen)] * 2
        rep = classify(moser, curves, height=3)
        assert rep.condition_ii and rep.end_dim == 8 and rep.witness is None
        assert rep.oracle is True and rep.consistent

    def test_mixed(self, mixed, field_qs, qs_elements):
        curves = [EllipticCurveSpec(field_qs.one, qs_elements["i"]),
                  EllipticCurveSpec(field_qs.one, qs_elements["sqrt2i"])]
        rep = classify(mixed, curves, height=1)
        assert not rep.condition_ii and rep.end_dim == 4
        assert rep.witness is not None
        assert rep.oracle is False and rep.consistent

    def test_sqrt2_square(self, sqrt2_square, field_qs, qs_elements):
        curves = [EllipticCurveSpec(field_qs.one, qs_elements["sqrt2i"])] * 2
        rep = classify(sqrt2_square, curves, height=2)
        assert rep.condition_ii and rep.end_dim == 8 and rep.consistent


class TestProductFormClassify:
    def test_gaussian_square(self, field_qi):
        curves = [EllipticCurveSpec(field_qi.one, field_qi.gen)] * 2
        assert product_form_classify(curves) is True

    def test_mixed_pair(self, field_qs, qs_elements):
        curves = [EllipticCurveSpec(field_qs.one, qs_elements["i"]),
                  EllipticCurveSpec(field_qs.one, qs_elements["sqrt2i"])]
        assert product_form_classify(curves) is False

    def test_single_non_cm_curve(self, field_qs):
        assert product_form_classify([EllipticCurveSpec(field_qs.one,
                                                        field_qs.gen)]) is False


class TestQuotient:
    def test_moser_by_second_factor(self, moser):
        sub = RationalSubspace.from_vectors(4, [(0, 0, 1, 0), (0, 0, 0, 1)])
        qr = quotient_torus(moser, sub)
        assert qr.torus.n == 1
        assert [tuple(e.coeffs) for g in qr.torus.generators for e in g] == \
            [(1, 0), (0, 1)]

    def test_moser_by_diagonal(self, moser, field_qi):
        sub = RationalSubspace.from_vectors(4, [(1, 0, 1, 0), (0, 1, 0, 1)])
        qr = quotient_torus(moser, sub)
        assert qr.torus.n == 1
        # the image lattice is commensurable with Z[i] (indices (1, 1) here)
        from torusclosure import commensurable
        image = [(g[0],) for g in qr.torus.generators]
        gauss = [(field_qi.one,), (field_qi.gen,)]
        assert commensurable(field_qi, gauss, image) == (1, 1)

    def test_mixed_by_second_factor(self, mixed):
        sub = RationalSubspace.from_vectors(4, [(0, 0, 1, 0), (0, 0, 0, 1)])
        qr = quotient_torus(mixed, sub)
        assert [tuple(e.coeffs) for g in qr.torus.generators for e in g] == \
            [(1, 0, 0, 0), (0, Fraction(1, 6), 0, Fraction(1, 6))]

    def test_non_complex_subspace_rejected(self, mixed):
        sub = RationalSubspace.from_vectors(
            4, [(1, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, 1)])
        with pytest.raises(InputError) as exc:
            quotient_torus(mixed, sub)
        assert exc.value.code == "not_complex"

    def test_lattice_map_consistency(self, moser):
        sub = RationalSubspace.from_vectors(4, [(1, 0, 1, 0), (0, 1, 0, 1)])
        qr = quotient_torus(moser, sub)
        # image of each generator equals its lattice_map combination
        f = moser.field
        binv_gens = qr.torus.generators
        for j, gen in enumerate(moser.generators):
            combo = [f.zero]
            for t, g in enumerate(binv_gens):
                combo = [combo[0] + qr.lattice_map[t][j] * g[0]]
            # project the original generator through the quotient map
            from torusclosure.torus import field_matrix_inverse, field_matvec
            k = sub.dim // 2
            bmat = [[qr.core_basis[t][i] for t in range(k)]
                    + [f.one if i == qr.complement_indices[t] else f.zero
                       for t in range(moser.n - k)] for i in range(moser.n)]
            binv = field_matrix_inverse(bmat)
            proj = field_matvec(binv, list(gen))[k:]
            assert proj == combo


class TestIsogenyToProduct:
    def test_moser_coordinate_factors(self, moser):
        c1 = RationalSubspace.from_vectors(4, [(0, 0, 1, 0), (0, 0, 0, 1)])
        c2 = RationalSubspace.from_vectors(4, [(1, 0, 0, 0), (0, 1, 0, 0)])
        res = isogeny_to_product(moser, [c1, c2])
        assert res.kernel_order == 1

    def test_moser_diagonal_and_factor(self, moser):
        c1 = RationalSubspace.from_vectors(4, [(1, 0, 1, 0), (0, 1, 0, 1)])
        c2 = RationalSubspace.from_vectors(4, [(1, 0, 0, 0), (0, 1, 0, 0)])
        res = isogeny_to_product(moser, [c1, c2])
        # pinned by the determinant oracle on the coordinate matrix
        rows = []
        from torusclosure.structure import quotient_torus as qt
        for sub in (c1, c2):
            rows.extend(list(map(list, qt(moser, sub).lattice_map)))
        assert res.kernel_order == oracles.det_abs(rows) == 1

    def test_mixed_coordinate_factors(self, mixed):
        c1 = RationalSubspace.from_vectors(4, [(0, 0, 1, 0), (0, 0, 0, 1)])
        c2 = RationalSubspace.from_vectors(4, [(1, 0, 0, 0), (0, 1, 0, 0)])
        assert isogeny_to_product(mixed, [c1, c2]).kernel_order == 1

    def test_diagonal_antidiagonal_kernel(self, moser):
        # psi(z, w) = (z - w, z + w): each block [[1, -1], [1, 1]] contributes 2
        c1 = RationalSubspace.from_vectors(4, [(1, 0, 1, 0), (0, 1, 0, 1)])
        c2 = RationalSubspace.from_vectors(4, [(1, 0, -1, 0), (0, 1, 0, -1)])
        res = isogeny_to_product(moser, [c1, c2])
        rows = []
        from torusclosure.structure import quotient_torus as qt
        for sub in (c1, c2):
            rows.extend(list(map(list, qt(moser, sub).lattice_map)))
        assert res.kernel_order == oracles.det_abs(rows) == 4

    def test_non_separating_rejected(self, moser):
        c1 = RationalSubspace.from_vectors(4, [(0, 0, 1, 0), (0, 0, 0, 1)])
        with pytest.raises(InputError) as exc:
            isogeny_to_product(moser, [c1, c1])
        assert exc.value.code == "subtori_not_separating"


class TestLineCensus:
    def test_moser_diagonal_slope(self, moser):
        verdicts = line_census(moser, [moser.field.one])
        assert verdicts[0].is_subtorus

    def test_moser_irrational_slope(self, moser_big, qs_elements):
        verdicts = line_census(moser_big, [qs_elements["sqrt2"]])
        assert not verdicts[0].is_subtorus
        assert verdicts[0].real_dim == 4

    def test_noncm_square_rational_slopes(self, noncm_square, field_qs):
        tau = field_qs.gen
        slopes = [field_qs.zero, field_qs.one, field_qs.from_rational(2),
                  field_qs.from_rational(Fraction(1, 2)), field_qs.from_rational(-1),
                  None, tau, tau * tau / 2]
        verdicts = line_census(noncm_square, slopes)
        assert [v.is_subtorus for v in verdicts] == [True] * 6 + [False, False]
        assert verdicts[6].real_dim == 3
        assert verdicts[7].real_dim == 4

    def test_wrong_dimension_rejected(self, triple_mixed):
        with pytest.raises(InputError):
            line_census(triple_mixed, [None])
