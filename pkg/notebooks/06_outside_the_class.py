"""
Kernels outside the class
=========================

The indicator of [1, inf) is supported away from 0 but has no decay;
T_x phi(xy) blows up like C/y. Point masses at the origin are rejected.
Densities extend across the axes exactly when x^-gamma t stays integrable.
"""
# %%
from hadamard_ops import (
    Box,
    CertificateError,
    CutoffPower,
    FlatExp,
    TestFunction,
    apply_MT,
    certify,
    delta,
    density,
    extendability_check,
    half_line_indicator,
    integrate,
)

phi = TestFunction.bump(0.4, 1.0)
T = half_line_indicator()
C = integrate(lambda X: phi(X), Box((0.0,), (1.4,))).value
for k in range(1, 5):
    y = 10.0**-k
    print(f"y={y:g}  y*F(y)={y * apply_MT(T, phi, [y]).value:.6f}  C={C:.6f}")

# %%
for kernel in (T, delta([0.0], [1])):
    try:
        certify(kernel)
    except CertificateError as exc:
        print("rejected:", exc.predicate, "-", exc)

# %%
for p in range(3):
    rep = extendability_check(density(CutoffPower(p)), [p + 2])
    print(f"x^{p}/{p}! near 0: first failure at gamma = {tuple(rep.first_failure())}")
print("exp(-1/x) passes:", extendability_check(density(FlatExp()), [6]).passed)
