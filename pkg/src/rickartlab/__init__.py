"""Exact deciders for Rickart, Baer and related properties of finite rings, finite modules,
and finitely generated abelian groups, with re-checkable witnesses."""

from ._core import (CapacityError, Caps, ConstructionError, Status, Verdict, current_caps,
                    using_caps)
from .endobridge import (correspondence_report, endomorphism_ring, faith_utumi_radical_check,
                         quasi_injective_equivalence_report)
from .finmod import (FiniteModule, Homomorphism, Submodule, abelian_module, as_module, direct_sum,
                     is_direct_summand, is_essential, quotient, regular, scalar_module, submodules,
                     zero_module)
from .finring import (RING_PROPERTIES, FiniteRing, RightIdeal, build_ring, decide_ring_property,
                      idempotents, is_isomorphic, jacobson_radical, left_annihilator, matrix,
                      poly_quotient, product, right_annihilator, right_ideals, table, zmod)
from .modprops import (MODULE_PROPERTIES, check_direct_sum_theorem, decide_module_property,
                       is_relatively_rickart)
from .zmodsnf import (FgZModule, ZModHom, smith_normal_form, zhom_kernel, zrickart_check,
                      zsummand_test)

__version__ = "0.1.0"

__all__ = [
    "CapacityError", "Caps", "ConstructionError", "Status", "Verdict", "current_caps", "using_caps",
    "correspondence_report", "endomorphism_ring", "faith_utumi_radical_check",
    "quasi_injective_equivalence_report",
    "FiniteModule", "Homomorphism", "Submodule", "abelian_module", "as_module", "direct_sum",
    "is_direct_summand", "is_essential", "quotient", "regular", "scalar_module", "submodules",
    "zero_module",
    "RING_PROPERTIES", "FiniteRing", "RightIdeal", "build_ring", "decide_ring_property", "idempotents",
    "is_isomorphic", "jacobson_radical", "left_annihilator", "matrix", "poly_quotient", "product",
    "right_annihilator", "right_ideals", "table", "zmod",
    "MODULE_PROPERTIES", "check_direct_sum_theorem", "decide_module_property", "is_relatively_rickart",
    "FgZModule", "ZModHom", "smith_normal_form", "zhom_kernel", "zrickart_check", "zsummand_test",
]
