# Finite rings and the annihilator properties.
#
# A ring is a pair of Cayley tables. Every decision below is exhaustive over
# the ring, and a FAILS verdict carries an element you can check by hand.

from rickartlab import RING_PROPERTIES, decide_ring_property, matrix, poly_quotient, product, zmod

# Z_6 splits as Z_2 x Z_3, so it is von Neumann regular.
Z6 = zmod(6)
print(decide_ring_property(Z6, "vn_regular").status.value)

# Z_4 is not: r_R(2) = {0, 2} is not generated by an idempotent.
v = decide_ring_property(zmod(4), "right_rickart")
print(v.status.value, v.witness)

# The full chart for a few rings.
rings = {
    "Z_6": Z6,
    "F_4": poly_quotient(zmod(2), [1, 1, 1]),
    "Z_4": zmod(4),
    "Z_12": zmod(12),
    "Z_2 x Z_4": product(zmod(2), zmod(4)),
    "M_2(F_2)": matrix(zmod(2), 2),
    "F_2[x]/(x^2)": poly_quotient(zmod(2), [0, 0, 1]),
}
print(f"{'ring':14s}" + "".join(f"{p:>22s}" for p in RING_PROPERTIES))
for name, R in rings.items():
    row = [decide_ring_property(R, p).status.value for p in RING_PROPERTIES]
    print(f"{name:14s}" + "".join(f"{s:>22s}" for s in row))

# all_witnesses collects every failing element instead of the first one.
v = decide_ring_property(zmod(8), "right_nonsingular", all_witnesses=True)
print(len(v.witnesses), "witnesses for Z_8 being singular")
