"""
Test functions, distributions and pairings
==========================================

Build a bump test function, a few kernels, and pair them.
"""
# %%
import math

import numpy as np

from hadamard_ops import DerivAtom, Distribution, Indicator, TestFunction, delta, density, pair

phi = TestFunction.bump(center=1.5, scale=0.6)
x = np.linspace(0.8, 2.2, 8).reshape(-1, 1)
print("phi on a grid:", np.round(phi(x), 6))
print("phi'' at 1.4:", phi.eval_derivative([2], [1.4]))

# %%
# a point mass, its derivative and the indicator of [1, 2]
print("<delta_2, phi>   =", pair(delta([2.0]), phi).value)
print("<delta'_2, phi>  =", pair(delta([2.0], [1]), phi).value, "=", -phi.eval_derivative([1], [2.0]))
box = Indicator((1.0,), (2.0,))
print("<1_[1,2], phi>   =", pair(density(box), phi))

# %%
# the derivative of the indicator pairs to boundary values: phi(1) - phi(2)
T = Distribution((DerivAtom((1,), box),))
psi = TestFunction.bump(1.3, 0.6)
print("<(1_[1,2])', psi> =", pair(T, psi).value, "vs", psi([[1.0]])[0] - psi([[2.0]])[0])

# %%
# distributions serialize to JSON and back
print(T.to_json())
assert Distribution.from_json(T.to_json()) == T
print("bump integral check:", math.isclose(pair(density(Indicator((-1.0,), (1.0,))), TestFunction.unit_bump()).value, 0.4439938161680794))
