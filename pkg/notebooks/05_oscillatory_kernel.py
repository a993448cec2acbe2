"""
The kernel exp(-ix)
===================

exp(-ix) has no decay, but after integrating by parts away from the origin
it becomes an Euler-operator kernel with decaying densities.
T_x phi(xy) = sigma(y)/y phi-hat(1/y) then extends smoothly by 0 to y = 0.
"""
# %%
import math

import numpy as np

from hadamard_ops import PairingConfig, TestFunction, apply_MT, exp_osc_kernel, fourier_sample, oc_to_oh, pair

phi = TestFunction.bump(0.3, 1.0)
T = exp_osc_kernel(2)
E = oc_to_oh(T)
print("atoms:", [a.type_name for a in E.atoms])
print("derivative form:", pair(T, phi).value)
print("Euler form     :", pair(E, phi).value)

# %%
# comparison with the Fourier closed form
off = oc_to_oh(exp_osc_kernel(1))
for y in (0.5, 1.0, 2.0, -1.0):
    F = apply_MT(off, phi, [y]).value
    ref = math.copysign(1, y) / y * fourier_sample(phi, [0], [1 / y]).value
    print(f"y={y:5}  F={F:.12f}  closed={ref:.12f}")

# %%
# approach to the hyperplane
for y in (1e-1, 1e-2, 1e-3):
    print(f"|F({y:g})| = {abs(apply_MT(off, phi, [y]).value):.3e}")
print("F(0) =", apply_MT(oc_to_oh(exp_osc_kernel(3)), phi, [0.0]).value)

# %%
# a grid through 0 needs the higher-order form; the order-1 form is rejected at y = 0
on = oc_to_oh(exp_osc_kernel(3))
ys = np.linspace(-2, 2, 9)
print(np.round([abs(apply_MT(on, phi, [y], PairingConfig(rel_tol=1e-8)).value) for y in ys], 6))
