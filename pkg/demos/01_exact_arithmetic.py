"""
Exact arithmetic
================

Every computation in the package is exact: rationals are gmpy2 fractions,
finite fields are integers mod p or polynomials mod an irreducible modulus.
On top of the fields sit Laurent polynomials in zeta, bivariate polynomials
in (lam, zeta), 3x3 matrices and dual numbers for exact derivatives.
"""

from pentagram import GF, QQ, LaurentPoly, Mat3, charpoly3, evaluate_with_partials, parse_field

# fields: Q, a prime field and an extension field, all with the same operators
print(QQ.parse("1/3") + QQ.parse("1/6"))          # 1/2
print(GF(7)(2).inverse())                          # 4 mod 7
F25 = parse_field("5^2")
t = F25.element_from_raw(5)                        # the class of the generator t
print(F25.describe(), "modulus", F25.modulus, " t^24 =", t ** 24)

# text forms round-trip exactly
for a in (QQ.parse("-22/7"), GF(11)(3), t + 2):
    print(repr(str(a)))

# Laurent polynomials in zeta; 3x3 matrices of them; the characteristic polynomial
F = GF(7)
z = LaurentPoly.monomial(F.one, 1)
zi = LaurentPoly.monomial(F.one, -1)
one = LaurentPoly.monomial(F.one, 0)
M = Mat3([[one, z, LaurentPoly()], [zi, one, z], [one, LaurentPoly(), zi]])
print("det(lam I - M) =", charpoly3(M))

# dual numbers give exact gradients of any field-operation program
val, grad = evaluate_with_partials(lambda x, y: x / y, [QQ(1), QQ(2)])
print("x/y at (1, 2):", val, [str(g) for g in grad])   # 1/2, [1/2, -1/4]
