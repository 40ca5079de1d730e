"""The domain, the Hermitian map Q, and the generalized Heisenberg group.

Covers: the defining identity of Q, domain membership, the nilpotent group
law and its bracket, invariance of the cone part, orbit tangents, and the
transport of an arbitrary point to the base point (ie, 0).
"""
import numpy as np

from qsiegel import GroupElement, SiegelPoint, standard_model

np.set_printoptions(precision=6, suppress=True)

alg, rep, q_map = standard_model("sym_real", 2)

print("Q is defined by <x, Q(v, v')> = 2 h(R_x v, v'); on this model it is")
print("the symmetrized outer product:")
v = np.array([1.0 + 0.5j, -0.2j])
vp = np.array([0.3, 1.0 - 1.0j])
q_val = q_map.q_eval(v, vp)
print("  Q(v, v') coordinates:", q_val)

x0 = alg.from_matrix(np.array([[0.5, 0.1], [0.1, 0.0]]))
p = SiegelPoint(x0 + 1j * (np.real(q_map.q_eval(v, v)) + alg.unit), v)
print("cone part Im z - Q(v, v):", q_map.cone_part(p))
print("in domain:", q_map.domain_contains(p))

print()
print("group law: n(x1,v1) n(x2,v2) = n(x1 + x2 + [v1,v2]/2, v1 + v2)")
g1 = GroupElement(np.zeros(3), v)
g2 = GroupElement(np.zeros(3), vp)
g12 = q_map.group_mul(g1, g2)
print("  bracket [v, v'] =", q_map.group_bracket(v, vp))
print("  product x0 =", g12.x0)

moved = q_map.group_act(g1, p)
print("cone part is preserved:", np.allclose(q_map.cone_part(moved), q_map.cone_part(p)))

print()
print("orbit tangent spaces (group over a subspace W):")
from qsiegel import RealSubspace

w = RealSubspace.from_spanning(np.array([[1.0, 0, 0, 0], [0, 1.0, 0, 0], [0, 0, 0, 1.0]]).T)
tangent = q_map.orbit_tangent(w, p)
print("  dim tangent =", tangent.dim, "= dim U + dim W =", alg.dim + w.dim)

print()
print("transport to the base point (ie, 0):")
image, deriv = q_map.transport_to_base(p)
print("  image z:", image.z)
print("  image v:", image.v)
print("  derivative condition number:", np.linalg.cond(deriv))
