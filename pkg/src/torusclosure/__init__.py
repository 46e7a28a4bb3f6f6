"""Exact closure computations for complex Lie subgroups of complex tori."""

from .closure import (ClosureResult, closure, closure_of_hyperplane_core,
                      is_complex_subspace, lambda_invariance_check,
                      multiplier_matrix)
from .elliptic import (CmVerdict, IsogenyVerdict, TauInvariant, cm_check,
                       endo_clear_denominator, is_isogenous, tau_invariant,
                       verify_isogeny_witness)
from .errors import ConsistencyError, InputError, InternalError
from .numberfield import AlgebraicNumber, FieldSpec
from .structure import (ClassificationReport, EndAlgebra, census, classify,
                        endomorphism_algebra, hyperplane_core, hyperplane_form,
                        hyperplane_forms, isogeny_to_product, line_census,
                        product_form_classify, quotient_torus, witness_search)
from .torus import (ComplexSubgroupSpec, ComplexTorus, EllipticCurveSpec,
                    RationalSubspace, build_torus, commensurable,
                    subgroup_real_span, torus_from_curves)

__version__ = "0.1.0"
