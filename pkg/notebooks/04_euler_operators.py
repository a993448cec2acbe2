"""
Euler operators
===============

Exact algebra of P(theta), theta = x d/dx: Stirling conversions, adjoints,
and the action on monomials and on sigma(x)/x^(alpha+1).
"""
# %%
from hadamard_ops import (
    EulerOperator,
    adjoint,
    derivative_basis_coefficients,
    from_xd_form,
    negative_power_eigenvalue,
    power_derivative_operator,
    to_xd_form,
)

theta = EulerOperator.theta()
P = theta**3 - 2 * theta + 1
print("P          =", P)
print("x^n d^n    =", to_xd_form(P))
print("round trip =", from_xd_form(to_xd_form(P)) == P)
print("adjoint    =", adjoint(P))

# %%
# eigenvalues: P(alpha) on x^alpha, P(-alpha-1) on sigma/x^(alpha+1)
print([P([a]) for a in range(5)])
print([negative_power_eigenvalue(P, [a]) for a in range(5)])

# %%
# f -> d^2 (x^2 f) is the Euler operator (theta+1)(theta+2)
print(power_derivative_operator([2]), (theta + 1) * (theta + 2))

# %%
# x^(m+nu) G^(nu) as a combination of (x^(m+j) G)^(j)
print(derivative_basis_coefficients([-3], [2]))

# %%
# two variables
theta1, theta2 = EulerOperator.theta(0, 2), EulerOperator.theta(1, 2)
Q = theta1 * theta2 + theta2**2
print(to_xd_form(Q), Q([2, 3]))
