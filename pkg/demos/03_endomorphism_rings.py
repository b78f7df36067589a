# From a module to its endomorphism ring S = End(M).
#
# S is built as a finite ring with (f*g)(m) = f(g(m)); ring deciders then run on it.

from rickartlab import (correspondence_report, decide_ring_property, endomorphism_ring,
                        faith_utumi_radical_check, is_isomorphic, matrix,
                        quasi_injective_equivalence_report, regular, scalar_module, zmod)

E = endomorphism_ring(scalar_module(zmod(2), [2, 2]))
print("|End(Z_2^2)| =", E.ring.order, "isomorphic to M_2(F_2):",
      is_isomorphic(E.ring, matrix(zmod(2), 2)) is not None)
print("End(Z_2^2) regular:", decide_ring_property(E.ring, "vn_regular").status.value)

# Module properties against ring properties of S.
for M in (regular(zmod(4)), scalar_module(zmod(2), [2, 2]), scalar_module(zmod(4), [2, 4])):
    rep = correspondence_report(M)
    print(M.label, "rickart", rep.rickart, "S right rickart", rep.s_right_rickart,
          "retractable", rep.retractable, "->", rep.status)

# For quasi-injective M the six conditions agree.
for M in (regular(zmod(6)), regular(zmod(4))):
    rep = quasi_injective_equivalence_report(M)
    print(M.label, rep.conditions)

# The radical of S is exactly the endomorphisms with essential kernel.
rep = faith_utumi_radical_check(regular(zmod(4)))
print("Z_4: essential kernels", rep.essential_kernel, "radical", rep.radical,
      "S/J regular", rep.quotient_vn_regular)
