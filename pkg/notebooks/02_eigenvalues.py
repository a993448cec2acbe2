"""
Eigenvalues of Hadamard operators
=================================

m_alpha = T(sigma(x)/x^(alpha+1)) for kernels supported away from the axes,
checked against closed forms and in weak form.
"""
# %%
import math

import numpy as np

from hadamard_ops import HadamardOperator, Indicator, TestFunction, delta, density, eigenvalue, power_derivative_kernel, verify_eigen

box = density(Indicator((1.0,), (2.0,)))
op = HadamardOperator(box)
table = op.table(6)
print(table.to_csv())

# %%
# closed form: m_0 = ln 2, m_a = (1 - 2^-a)/a
for a in range(7):
    ref = math.log(2) if a == 0 else (1 - 2.0**-a) / a
    print(a, table.value([a]), ref)

# %%
# closed-form and quadrature paths agree
for a in range(4):
    print(a, eigenvalue(box, [a]).value, eigenvalue(box, [a], method="quadrature").value)

# %%
# the weak eigen-equation: ∫ xi^a T_x phi(x xi) dxi = m_a ∫ eta^a phi
rng = np.random.default_rng(7)
for _ in range(3):
    r = verify_eigen(box, [2], TestFunction.random(rng))
    print(f"lhs {r.lhs:.12f}  rhs {r.rhs:.12f}  residual {r.residual:.1e}")

# %%
# the kernel -(x tau)' multiplies eigenvalues by -(a+1)
D = power_derivative_kernel(Indicator((1.0,), (2.0,)), [1])
print([round(eigenvalue(D, [a]).value / table.value([a]), 10) for a in range(5)])

# %%
# point masses: delta_a has m_alpha = sigma(a)/a^(alpha+1)
print([eigenvalue(delta([-2.0]), [a]).value for a in range(4)])
