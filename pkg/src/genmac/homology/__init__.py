"""Chevalley-Eilenberg cohomology of finite graded Lie (super)algebra truncations."""

from .algebras import (BasisElement, FiniteGradedLie, GradedAlgebra, StructureError,
                       current_lie, lie_from_json, lie_to_json, polynomial_algebra, sl2_trunc_x2,
                       t3_lie, trace_form, truncated_polynomial_algebra, x_xi_algebra)
from .checks import ext_euler, phi_cocycle_check, t3_verify, verify_euler_vs_pairing
from .complex import (CEComplex, CohomologyTable, ComplexTooLarge, DifferentialError,
                      ce_complex, cohomology)
from .modules import (FiniteModule, ModuleVector, dual_module, hom_module, induced_module,
                      irreducible_module, module_from_json, trivial_module, zero_module)

__all__ = [
    "BasisElement", "CEComplex", "CohomologyTable", "ComplexTooLarge", "DifferentialError",
    "FiniteGradedLie", "FiniteModule", "GradedAlgebra", "ModuleVector", "StructureError",
    "ce_complex", "cohomology", "current_lie", "dual_module", "ext_euler", "hom_module",
    "induced_module", "irreducible_module", "lie_from_json", "lie_to_json", "module_from_json",
    "phi_cocycle_check", "polynomial_algebra", "sl2_trunc_x2", "t3_lie", "t3_verify", "trace_form",
    "trivial_module", "truncated_polynomial_algebra", "verify_euler_vs_pairing", "x_xi_algebra",
    "zero_module",
]
