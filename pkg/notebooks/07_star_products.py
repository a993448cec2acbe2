"""
Star products and the reflected kernel
======================================

Eigenvalue families multiply under the star product, and on smooth
functions L_T factors through the reflected kernel t(1/xi)/|xi|.
"""
# %%
from hadamard_ops import EulerOperator, Indicator, TestFunction, apply_LT, density, eigenvalue, factorization_check, pair, star

U, V = density(Indicator((1.0,), (2.0,))), density(Indicator((0.5,), (1.5,)))
W = star(U, V)
for a in range(4):
    print(a, eigenvalue(W, [a]).value, eigenvalue(U, [a]).value * eigenvalue(V, [a]).value)

# %%
phi = TestFunction.bump(1.5, 0.6)
print("closed form:", pair(W, phi).value, " nested quadrature:", apply_LT(V, U, phi).value)

# %%
theta = EulerOperator.theta()
f, psi = TestFunction.bump(0.8, 0.5), TestFunction.bump(1.5, 0.6)
for P in (EulerOperator.constant(1), theta, theta**2 - theta):
    r = factorization_check(P, Indicator((1.0,), (2.0,)), f, psi)
    print(f"{P}:  residual {r.residual:.1e}")
