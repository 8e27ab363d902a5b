"""
Exact verification with rational polynomials
============================================
"""

# %%
from critlab.symbolic import (
    SYMBOLIC_FAMILIES,
    MonomialOrder,
    buchberger,
    normal_form,
    poly_parse,
    symbolic_critical_pair,
    verify_family_symbolically,
)

g = poly_parse("4*(a^2+d^2+a*d)-3")
print(g)
print(normal_form(poly_parse("a^2+d^2"), [g], MonomialOrder("lex", ("a", "d"))))

# %%
# twisted cubic
order = MonomialOrder("lex", ("z", "y", "x"))
gb = buchberger([poly_parse("y-x^2"), poly_parse("z-x^3")], order)
print([str(p) for p in gb.basis])
print("y^3 - z^2 in ideal:", gb.contains(poly_parse("y^3-z^2")))

# %%
# F_t for [e1,e2] = gamma e3, with gamma symbolic
A, B = symbolic_critical_pair([(1, 2, 3, poly_parse("gamma"))], dim=4)
print([str(A[i][i]) for i in range(4)])
print([str(B[i][i]) for i in range(4)])

# %%
for fid in SYMBOLIC_FAMILIES:
    rec = verify_family_symbolically(fid)
    print(f"{fid}: t = {rec.numerator} / ({rec.denominator})  constraints {list(rec.constraints)}  ->",
          "0" if rec.passed else "FAILED")
