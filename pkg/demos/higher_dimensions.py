"""
Balls in dimension 3 to 6
=========================

In dimension n the test function f_rho(xi) replaces the planar cubic, and its
last sign change xi* gives the implicit bound.  The explicit bounds M1 and M2
dominate it.  The simplified constants grow so fast that C_n' leaves double
precision at n = 7.
"""
from courantsharp import boundsnd
from courantsharp.geometry import ConvexBodyND

for n in range(3, 7):
    ctx = boundsnd.NdBoundContext.from_body(ConvexBodyND.ball(n))
    xi = boundsnd.xi_star_nd(ctx)
    m1 = boundsnd.bound_M1(ctx).value
    m2 = boundsnd.bound_M2(ctx).value
    C, Cp = boundsnd.simple_constants(n)
    print(f"n={n}: xi* {xi:.3e}  M1 {m1:.3e}  M2 {m2:.3e}  D_n {boundsnd.D_n(n):.3e}  C_n {C:.3e}  C_n' {Cp:.3e}")

for n in (7, 9):
    try:
        boundsnd.simple_constants(n)
    except boundsnd.BoundOverflowError as exc:
        print(f"n={n}: {exc}")

# D_n is the margin by which the Weyl constant beats the bulk nodal constant.
print("D_n, n = 3..10:", ", ".join(f"{boundsnd.D_n(n):.2e}" for n in range(3, 11)))
