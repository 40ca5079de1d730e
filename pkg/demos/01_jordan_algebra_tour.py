"""Tour of the Euclidean Jordan algebra layer.

Covers: built-in algebras, left multiplications, the quadratic
representation, spectral decomposition with non-primitive clustering,
inversion, spectral maps, cone membership and Peirce systems.
"""
import numpy as np

from qsiegel import diagonal_algebra, sym_real_algebra

np.set_printoptions(precision=6, suppress=True)

print("=== diagonal algebra R^3 ===")
alg = diagonal_algebra(3)
x = np.array([3.0, -1.0, 3.0])
print("x =", x)
dec = alg.spectral_decompose(x)
print("eigenvalues:", dec.eigenvalues, " multiplicities:", dec.multiplicities)
print("note the clustered eigenvalue 3 carries one idempotent of rank 2:")
for lam, c in zip(dec.eigenvalues, dec.idempotents):
    print(f"  lambda = {lam:+.3f}  idempotent = {c}")
print("det x =", alg.det(x), " (product of eigenvalues with multiplicity)")

print()
print("=== symmetric 2x2 matrices ===")
alg = sym_real_algebra(2)
x = alg.from_matrix(np.array([[2.0, 1.0], [1.0, 2.0]]))
print("x as matrix:\n", alg.to_matrix(x))
print("T_x e = x:", np.allclose(alg.left_mult(x) @ alg.unit, x))

print("P(x) y equals the sandwich product x y x:")
y = alg.from_matrix(np.array([[1.0, 0.5], [0.5, -1.0]]))
lhs = alg.to_matrix(alg.quad_rep(x) @ y)
rhs = alg.to_matrix(x) @ alg.to_matrix(y) @ alg.to_matrix(x)
print("  difference:", np.max(np.abs(lhs - rhs)))

dec = alg.spectral_decompose(x)
print("eigenvalues:", dec.eigenvalues)
print("first idempotent (projector onto (1,1)/sqrt2):\n", alg.to_matrix(dec.idempotents[0]))

xinv = alg.invert(x)
print("x o x^{-1} = e:", np.allclose(alg.mult(x, xinv), alg.unit))
print("x in the open cone:", alg.cone_contains(x, "open"))
print("log(exp(x)) recovers x:", np.allclose(alg.log(alg.exp(x)), x))

print()
print("=== Peirce decomposition for the frame idempotent E11 ===")
e1 = alg.standard_frame()[0]
peirce = alg.peirce_system(e1)
probe = alg.from_matrix(np.array([[2.0, 1.0], [1.0, 1.0]]))
x1, x_half, x0 = peirce.split(probe)
print("x_1   :\n", alg.to_matrix(x1))
print("x_1/2 :\n", alg.to_matrix(x_half))
print("x_0   :\n", alg.to_matrix(x0))
