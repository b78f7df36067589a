# Finitely generated abelian groups as Z-modules, through Smith normal form.

from rickartlab import FgZModule, ZModHom, smith_normal_form, zhom_kernel, zrickart_check, zsummand_test

res = smith_normal_form([[2, 4], [6, 8]])
print("D =", res.diagonal)
print("U A V == D:", (res.U.dot([[2, 4], [6, 8]]).dot(res.V) == res.D).all())

# Reduction mod 2: its kernel is 2Z, which has no complement in Z.
f = ZModHom(FgZModule(1), FgZModule.from_orders(0, [2]), [[1]])
K, inc = zhom_kernel(f)
print("ker(Z -> Z_2):", K, "included by", inc.matrix)
v = zsummand_test(inc)
print("summand?", v.status.value, v.witness)

# Z + Z_2 is not Rickart: phi(x, a) = (0, x mod 2) has kernel 2Z + Z_2.
v = zrickart_check(FgZModule.from_orders(1, [2]), bound=1)
print("Z + Z_2:", v.status.value, v.witness["endomorphism"].render(), "kernel", v.witness["kernel"])

# Free groups hold structurally; the bounded sweep re-checks small matrices.
v = zrickart_check(FgZModule(2), bound=2)
print("Z^2:", v.status.value, v.certificate["sweep"])

# Torsion groups go to the exact finite decider.
print("Z_2 + Z_4:", zrickart_check(FgZModule.from_orders(0, [2, 4])).status.value)
