"""
Dilations and commutation
=========================

D_a acts on monomials by a^alpha, forms a group, and commutes with every
Hadamard operator.
"""
# %%
import math

from hadamard_ops import Indicator, TestFunction, apply_LT, delta, density, dilate, pair, sigma
from hadamard_ops.densities import monomial_density

phi = TestFunction.bump(0.3, 1.0, gamma=[1])
for a in (2.0, -1.5):
    for alpha in range(4):
        x_alpha = density(monomial_density([alpha]))
        lhs = pair(dilate(x_alpha, [a]), phi).value
        rhs = a**alpha * pair(x_alpha, phi).value
        print(f"a={a:5} alpha={alpha}  {lhs: .12f}  {rhs: .12f}")

# %%
# group law D_b D_a = D_ab
T = delta([1.1], [1]) + density(Indicator((0.5,), (1.5,)))
print(pair(dilate(dilate(T, [2.0]), [-0.5]), phi).value, pair(dilate(T, [-1.0]), phi).value)

# %%
# L_T(D_a S) = D_a L_T(S)
kernel = density(Indicator((1.0,), (2.0,)))
S = delta([1.3]) + density(Indicator((-3.0,), (-1.0,), 0.7))
a = -0.5
phi_a = phi.affine([1 / a], [0.0]).times(sigma([a]) / a)
print(apply_LT(kernel, dilate(S, [a]), phi).value, apply_LT(kernel, S, phi_a).value)
