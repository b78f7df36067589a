# Finite modules: Rickart, Baer and friends.
#
# A module over Z_n here is a product of cyclic groups with the scalar action.
# M is Rickart when the kernel of every endomorphism is a direct summand.

from rickartlab import (MODULE_PROPERTIES, check_direct_sum_theorem, decide_module_property, regular,
                        scalar_module, zmod)

Z4 = regular(zmod(4))
rick = decide_module_property(Z4, "rickart")
phi = rick.witness["endomorphism"]
print("Z_4 rickart:", rick.status.value)
print("  witness:", [Z4.elements[phi(m)] for m in range(Z4.size)], "(multiplication by 2)")
print("Z_4 k-local-retractable:", decide_module_property(Z4, "k_local_retractable").status.value)

M = scalar_module(zmod(4), [2, 4])
v = decide_module_property(M, "rickart")
phi = v.witness["endomorphism"]
print("Z_2+Z_4 rickart:", v.status.value)
print("  phi:", {M.elements[m]: M.elements[phi(m)] for m in range(M.size)})

for prop in MODULE_PROPERTIES:
    print(f"  {prop:22s} {decide_module_property(M, prop).status.value}")

# Direct sums: annihilators summing to the ring is enough for Z_2 + Z_3 over Z_6.
rep = check_direct_sum_theorem(scalar_module(zmod(6), [2]), scalar_module(zmod(6), [3]))
print("Z_2, Z_3 over Z_6:", rep.status, "annihilators", rep.annihilator_1, rep.annihilator_2)
rep = check_direct_sum_theorem(scalar_module(zmod(4), [2]), scalar_module(zmod(4), [4]))
print("Z_2, Z_4 over Z_4:", rep.status, "conclusion", rep.conclusion)
