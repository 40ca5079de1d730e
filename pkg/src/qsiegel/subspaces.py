"""Real-subspace arithmetic in the realified space V_R.

Subspaces are kept in canonical form as orthonormal basis matrices; every
rank decision funnels through one SVD cutoff (TOL_RANK relative to the
largest singular value) so downstream certifiers inherit a single, central
numerical policy.
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import creal
from .errors import DecompositionFailure, NotALinearSpace, NotInLambda
from .tolerances import TOL_PSD, TOL_RANK, TOL_SUB


class RealSubspace:
    """Column space of an orthonormal basis matrix in R^m."""

    def __init__(self, basis, ambient=None):
        basis = np.asarray(basis, dtype=float)
        if basis.ndim != 2:
            raise ValueError("basis must be an m x d matrix")
        if ambient is not None and basis.shape[0] != ambient:
            raise ValueError("ambient dimension mismatch")
        if basis.shape[1]:
            gram = basis.T @ basis
            if np.max(np.abs(gram - np.eye(basis.shape[1]))) > 1e-12:
                raise ValueError("basis columns must be orthonormal to 1e-12")
        self.basis = basis
        self.ambient = basis.shape[0]
        self.dim = basis.shape[1]

    @classmethod
    def from_spanning(cls, vectors, tol=TOL_RANK):
        """Rank-revealing orthogonalization of an m x k spanning set."""
        vectors = np.asarray(vectors, dtype=float)
        if vectors.ndim == 1:
            vectors = vectors[:, None]
        m = vectors.shape[0]
        if vectors.shape[1] == 0:
            return cls(np.zeros((m, 0)))
        u, s, _ = np.linalg.svd(vectors, full_matrices=False)
        if s.size == 0 or s[0] == 0.0:
            return cls(np.zeros((m, 0)))
        r = int(np.sum(s > tol * s[0]))
        return cls(u[:, :r])

    @classmethod
    def zero(cls, m):
        return cls(np.zeros((m, 0)))

    @classmethod
    def full(cls, m):
        return cls(np.eye(m))

    def projector(self):
        return self.basis @ self.basis.T

    def perp(self):
        """Orthogonal complement for the standard inner product."""
        if self.dim == 0:
            return RealSubspace.full(self.ambient)
        u, _, _ = np.linalg.svd(self.basis, full_matrices=True)
        return RealSubspace(u[:, self.dim :])

    def apply(self, matrix):
        return RealSubspace.from_spanning(matrix @ self.basis)

    def j_image(self, n=None):
        n = self.ambient // 2 if n is None else n
        return self.apply(creal.j_matrix(n))

    def add(self, other):
        return RealSubspace.from_spanning(np.hstack([self.basis, other.basis]))

    def intersect(self, other):
        """Intersection via the null space of [B1 | -B2]."""
        if self.dim == 0 or other.dim == 0:
            return RealSubspace.zero(self.ambient)
        stacked = np.hstack([self.basis, -other.basis])
        _, s, vt = np.linalg.svd(stacked, full_matrices=True)
        null_mask = np.zeros(vt.shape[0], dtype=bool)
        null_mask[s.size :] = True
        null_mask[: s.size] = s <= TOL_RANK * max(s[0], 1.0)
        coeffs = vt[null_mask][:, : self.dim].T
        if coeffs.shape[1] == 0:
            return RealSubspace.zero(self.ambient)
        return RealSubspace.from_spanning(self.basis @ coeffs)

    def contains_vector(self, v, tol=TOL_SUB):
        v = np.asarray(v, dtype=float)
        nv = np.linalg.norm(v)
        if nv == 0.0:
            return True
        return np.linalg.norm(v - self.projector() @ v) <= tol * max(1.0, nv)

    def contains(self, other, tol=TOL_SUB):
        if other.dim == 0:
            return True
        resid = other.basis - self.projector() @ other.basis
        return np.linalg.norm(resid, ord=2) <= tol

    def distance(self, other):
        """Frobenius distance of orthogonal projectors."""
        return float(np.linalg.norm(self.projector() - other.projector()))

    def equals(self, other, tol=TOL_SUB):
        return self.distance(other) <= tol

    def __repr__(self):
        return f"RealSubspace(dim={self.dim}, ambient={self.ambient})"


def complement_wrt(b, w):
    """{v : b(v, w) = 0 for all w in W} for a symmetric bilinear form b.

    Degenerate forms are allowed; for nondegenerate b the dimensions of W and
    its complement add up to the ambient dimension.
    """
    b = np.asarray(b, dtype=float)
    m = b.shape[0]
    if w.dim == 0:
        return RealSubspace.full(m)
    rows = w.basis.T @ b
    _, s, vt = np.linalg.svd(rows, full_matrices=True)
    scale = max(float(s[0]) if s.size else 0.0, np.linalg.norm(b, ord=2), 1e-300)
    keep = np.concatenate([s > TOL_RANK * scale, np.zeros(m - s.size, dtype=bool)])
    return RealSubspace(vt[~keep].T)


def kernel_of_form(b):
    return complement_wrt(b, RealSubspace.full(np.asarray(b).shape[0]))


@dataclass
class DerivedSpaces:
    """All subspaces of V_R derived from (Q, W) at a parameter x."""

    w: RealSubspace
    p: RealSubspace                      # W meet jW
    s: RealSubspace                      # re-h complement of jW
    ker_gx: RealSubspace
    s_x: RealSubspace                    # g_x-complement of jW, intersected with W
    n_x: Optional[RealSubspace] = None   # radical of g_x on P (when PSD)
    s_x_complement: Optional[RealSubspace] = None  # S^x, complement of N_x in S_x
    p_x: Optional[RealSubspace] = None   # re-h complement of N_x inside P
    proj_sx: Optional[np.ndarray] = None  # p^x on V, along P onto S^x + jS^x (real 2n x 2n)
    split_matrix: Optional[np.ndarray] = field(default=None, repr=False)

    def split_p_s(self, v):
        """v = q + s with q in P and s in S + jS; raises on residual."""
        vre = creal.cx_to_re(v)
        coeff, resid, _, _ = np.linalg.lstsq(self.split_matrix, vre, rcond=None)
        rec = self.split_matrix @ coeff
        if np.linalg.norm(rec - vre) > TOL_SUB * max(1.0, np.linalg.norm(vre)):
            raise DecompositionFailure("v does not decompose as P + (S + jS)")
        dp = self.p.dim
        q = self.p.basis @ coeff[:dp]
        s = vre - q
        return creal.re_to_cx(q), creal.re_to_cx(s)


def basic_spaces(q_map, w, x):
    """P, S, ker g_x and S_x for arbitrary x (no admissibility required)."""
    n = q_map.n
    jw = w.j_image(n)
    p = w.intersect(jw)
    s = jw.perp()
    gx = q_map.g_matrix(x)
    ker = kernel_of_form(gx)
    s_x = complement_wrt(gx, jw).intersect(w)
    return DerivedSpaces(w=w, p=p, s=s, ker_gx=ker, s_x=s_x)


def radical_on(form, sub, tol_psd=TOL_PSD):
    """Radical of a PSD form restricted to a subspace.

    Raises NotALinearSpace when the restriction is indefinite, since the
    isotropic vectors then fail to form a subspace.  The zero cutoff is
    relative to the restricted spectrum but floored at roundoff scale of the
    ambient form, so a restriction that is zero up to dust is the whole
    subspace.
    """
    if sub.dim == 0:
        return RealSubspace.zero(sub.ambient)
    form = np.asarray(form)
    g = sub.basis.T @ form @ sub.basis
    g = 0.5 * (g + g.T)
    vals, vecs = np.linalg.eigh(g)
    top = max(float(vals[-1]), 0.0)
    if vals[0] < -tol_psd * max(1.0, top):
        raise NotALinearSpace("form is indefinite on the subspace")
    floor = 1e-12 * max(1.0, float(np.linalg.norm(form, 2)))
    null = vecs[:, np.abs(vals) <= max(TOL_RANK * top, floor)]
    if null.shape[1] == sub.dim:
        return sub
    return RealSubspace.from_spanning(sub.basis @ null)


def derive_spaces(q_map, w, x, sx_basis=None):
    """Full derived data at x, including N_x, S^x, P^x and the projection p^x.

    ``sx_basis`` overrides the default choice of S^x (the re-h orthocomplement
    of N_x inside S_x) with any complement of N_x in S_x; kernel values must
    not depend on this choice.
    """
    d = basic_spaces(q_map, w, x)
    n = q_map.n
    gx = q_map.g_matrix(x)
    try:
        n_x = radical_on(gx, d.p)
    except NotALinearSpace as exc:
        raise NotInLambda(f"g_x restricted to P is not positive semi-definite: {exc}") from exc
    d.n_x = n_x

    if sx_basis is None:
        d.s_x_complement = d.s_x.intersect(n_x.perp())
    else:
        cand = RealSubspace.from_spanning(sx_basis)
        if not d.s_x.contains(cand, tol=1e-7):
            raise DecompositionFailure("supplied S^x is not inside S_x")
        if cand.intersect(n_x).dim > 0 or cand.dim + n_x.dim != d.s_x.dim:
            raise DecompositionFailure("supplied S^x is not complementary to N_x in S_x")
        d.s_x_complement = cand
    d.p_x = n_x.perp().intersect(d.p)

    sx = d.s_x_complement
    jsx = sx.j_image(n)
    blocks = np.hstack([d.p.basis, sx.basis, jsx.basis])
    if blocks.shape[1] != 2 * n or np.linalg.matrix_rank(blocks, tol=1e-10) != 2 * n:
        raise NotInLambda("V does not split as P + S^x + jS^x for this x")
    inv = np.linalg.inv(blocks)
    sel = np.zeros((2 * n, 2 * n))
    dp = d.p.dim
    sel[dp:, dp:] = np.eye(2 * n - dp)
    d.proj_sx = blocks @ sel @ inv

    # split for kernel coordinates: V = P + S + jS (direct when Im Q(S,S) = 0)
    js = d.s.j_image(n)
    d.split_matrix = np.hstack([d.p.basis, d.s.basis, js.basis])
    return d


def conj_matrix(real_form, n):
    """Real-linear conjugation of (real_form + j real_form) fixing real_form.

    Returned as a 2n x 2n matrix that acts as the conjugation on the complex
    span of the real form and as zero on a complement.
    """
    if real_form.dim == 0:
        return np.zeros((2 * n, 2 * n))
    b = real_form.basis
    jb = creal.j_matrix(n) @ b
    span = np.hstack([b, jb])
    if np.linalg.matrix_rank(span, tol=1e-10) != span.shape[1]:
        raise DecompositionFailure("real form meets j(real form); no conjugation")
    coeff = np.linalg.pinv(span)
    signs = np.diag(np.concatenate([np.ones(real_form.dim), -np.ones(real_form.dim)]))
    return span @ signs @ coeff
