"""Extremal invariant reproducing kernels and their parameter space.

A kernel parameter is a pair (x, chi): x must satisfy the admissibility
conditions (the restriction of g_x to P is positive semi-definite and its
radical N_x sits inside ker g_x), chi is a real covector on S extended
complex-linearly.  The kernel value at ((z, v), (z', v')) with v = q + s,
v' = q' + s' split along V = P + S + jS is

    exp(i <x, z - conj(z') - 2i Q(v, v')>)
    * exp(h(s - conj(s'), A_x (conj(s) - s')))
    * exp(-i chi(s - conj(s')))

where conjugation is taken with respect to the real form S and
A_x = 2 p_x^* R_x p_x for the projection p_x onto S^x + jS^x along P.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import creal
from .errors import (
    FactorizationResidualTooLarge,
    FrameInvalid,
    NotALinearSpace,
    NotIdempotent,
    NotInLambda,
)
from .subspaces import RealSubspace, basic_spaces, conj_matrix, derive_spaces, radical_on
from .tolerances import TOL_PSD, TOL_SUB


def classify_lambda(q_map, w, x):
    """Complex dimension of N_x when x is admissible for W, else None.

    Checks positive semi-definiteness of g_x on P = W meet jW, j-invariance of
    the radical, and the containment N_x inside ker g_x.
    """
    d = basic_spaces(q_map, w, x)
    gx = q_map.g_matrix(x)
    try:
        n_x = radical_on(gx, d.p)
    except NotALinearSpace:
        return None
    if n_x.dim % 2 != 0:
        return None
    if not n_x.equals(n_x.j_image(q_map.n), tol=TOL_SUB):
        return None
    if not d.ker_gx.contains(n_x, tol=TOL_SUB):
        return None
    return n_x.dim // 2


@dataclass
class KernelParams:
    """A point (x, chi) of the admissible set with its derived spaces."""

    q_map: object
    w: RealSubspace
    x: np.ndarray
    k: int
    chi: np.ndarray          # coefficients over the orthonormal basis of S
    spaces: object
    a_x: np.ndarray          # n x n complex, self-adjoint, supported on S + jS
    conj_s: np.ndarray       # real 2n x 2n conjugation over the real form S

    def chi_value(self, s):
        """chi extended complex-linearly: chi(s1 + j s2) = chi(s1) + i chi(s2)."""
        if self.chi.size == 0:
            return 0.0 + 0.0j
        sre = creal.cx_to_re(s)
        b = self.spaces.s.basis
        jb = creal.j_matrix(self.q_map.n) @ b
        span = np.hstack([b, jb])
        coeff, _, _, _ = np.linalg.lstsq(span, sre, rcond=None)
        d = self.spaces.s.dim
        return np.dot(self.chi, coeff[:d]) + 1j * np.dot(self.chi, coeff[d:])


def build_kernel_params(q_map, w, x, chi=None, sx_basis=None):
    """Assemble kernel parameters; raises NotInLambda for inadmissible x."""
    x = np.asarray(x, dtype=float)
    k = classify_lambda(q_map, w, x)
    if k is None:
        raise NotInLambda("g_x on P is not PSD with radical inside ker g_x")
    spaces = derive_spaces(q_map, w, x, sx_basis=sx_basis)
    pxc = creal.complexify(spaces.proj_sx, check=True, tol=1e-8)
    a_x = 2.0 * pxc.conj().T @ q_map.rep.r_op(x) @ pxc
    cs = conj_matrix(spaces.s, q_map.n)
    if chi is None:
        chi = np.zeros(spaces.s.dim)
    chi = np.asarray(chi, dtype=float)
    if chi.shape != (spaces.s.dim,):
        raise ValueError(f"chi must have length dim S = {spaces.s.dim}")
    return KernelParams(q_map, w, x, k, chi, spaces, a_x, cs)


def invariant_kernel_raw(q_map, x, p1, p2):
    """First kernel factor exp(i <x, z - conj(z') - 2i Q(v, v')>).

    This is the full kernel when S = 0 (the group over W = V); it is also
    the only piece that remains defined for inadmissible x, which the
    negative PSD controls exploit.
    """
    zpart = p1.z - np.conj(p2.z) - 2j * q_map.q_eval(p1.v, p2.v)
    return np.exp(1j * np.dot(np.asarray(x, dtype=float), zpart))


def eval_kernel(params, p1, p2):
    """Value of the extremal invariant kernel at a pair of points."""
    q_map = params.q_map
    q1, s1 = params.spaces.split_p_s(p1.v)
    q2, s2 = params.spaces.split_p_s(p2.v)
    first = invariant_kernel_raw(q_map, params.x, p1, p2)

    s1bar = creal.re_to_cx(params.conj_s @ creal.cx_to_re(s1))
    s2bar = creal.re_to_cx(params.conj_s @ creal.cx_to_re(s2))
    d1 = s1 - s2bar
    d2 = s1bar - s2
    second = np.exp(np.vdot(params.a_x @ d2, d1))  # h(d1, A_x d2)

    third = np.exp(-1j * params.chi_value(d1))
    return complex(first * second * third)


def fock_kernel(q_map, x, q, qp, p_space=None):
    """Coherent-state kernel exp(2 <x, Q(q, q')>) on the complex part P."""
    if p_space is not None:
        for vec in (q, qp):
            if not p_space.contains_vector(creal.cx_to_re(vec), tol=1e-7):
                raise ValueError("Fock kernel arguments must lie in P")
    return complex(np.exp(2.0 * np.dot(np.asarray(x, dtype=float), q_map.q_eval(q, qp))))


@dataclass
class GramReport:
    n_points: int
    min_eigenvalue: float
    matrix_norm: float
    psd: bool
    gram: Optional[np.ndarray] = None


def gram_psd_report(params, points, keep_matrix=False, tol=TOL_PSD):
    """Gram matrix of kernel values with a relative PSD verdict."""
    m = len(points)
    g = np.empty((m, m), dtype=complex)
    for i, pi in enumerate(points):
        for j in range(i, m):
            val = eval_kernel(params, pi, points[j])
            g[i, j] = val
            g[j, i] = np.conj(val)
    vals = np.linalg.eigvalsh(g)
    norm = float(np.max(np.abs(vals)))
    mn = float(vals[0])
    return GramReport(
        n_points=m,
        min_eigenvalue=mn,
        matrix_norm=norm,
        psd=bool(mn >= -tol * max(1.0, norm)),
        gram=g if keep_matrix else None,
    )


@dataclass
class FrameScalarReport:
    scalar: float
    solve_residual: float
    scalar_deviation: float
    y: np.ndarray


def frame_scalar_check(alg, q_map, e1, x, n_samples=100, seed=0):
    """Scalar form of A_x for the frame-based W = P + S construction.

    Solves x_half = 2 T_y x_0 for y in the half eigenspace of e1 by least
    squares and returns c = <x_1 - 2 T_{e1} T_y^2 x_0, e1> together with the
    maximal deviation |h(s, A_x conj(s)) - c h(s, conj(s))| over random
    s in S + jS.
    """
    e1 = np.asarray(e1, dtype=float)
    if abs(np.dot(e1, e1) - 1.0) > 1e-8:
        raise FrameInvalid("e1 must satisfy <e1, e1> = 1")
    try:
        peirce = alg.peirce_system(e1)
    except NotIdempotent as exc:
        raise FrameInvalid(f"e1 is not an idempotent: {exc}") from exc
    if int(round(np.trace(peirce.p1))) != 1:
        raise FrameInvalid("e1 is not primitive (dim U(e1, 1) != 1)")
    x = alg.check_element(x)
    x1, x_half, x0 = peirce.split(x)

    basis_half = _peirce_basis(peirce.p_half)
    basis_zero = _peirce_basis(peirce.p0)
    if basis_zero.shape[1]:
        t0 = basis_zero.T @ alg.left_mult(x0) @ basis_zero
        if np.linalg.eigvalsh(0.5 * (t0 + t0.T))[0] < -TOL_PSD * max(1.0, np.linalg.norm(t0, 2)):
            raise NotInLambda("T_{x_0} is not PSD on U(e1, 0)")

    if basis_half.shape[1]:
        cols = np.column_stack([2.0 * alg.mult(b, x0) for b in basis_half.T])
        coeff, _, _, _ = np.linalg.lstsq(cols, x_half, rcond=None)
        y = basis_half @ coeff
    else:
        y = np.zeros(alg.dim)
    resid = float(np.linalg.norm(2.0 * alg.mult(y, x0) - x_half))
    if resid > 1e-8 * max(1.0, np.linalg.norm(x)):
        raise FactorizationResidualTooLarge(
            f"x_half = 2 T_y x_0 has no solution (residual {resid:.3e})", residual=resid
        )

    ty = alg.left_mult(y)
    c = float(np.dot(x1 - 2.0 * alg.mult(e1, ty @ (ty @ x0)), e1))

    params = frame_kernel_params(alg, q_map, e1, x)
    rng = np.random.default_rng(seed)
    b = params.spaces.s.basis
    jb = creal.j_matrix(q_map.n) @ b
    dev = 0.0
    for _ in range(n_samples):
        coeffs = rng.standard_normal(2 * params.spaces.s.dim)
        s = creal.re_to_cx(np.hstack([b, jb]) @ coeffs)
        sbar = creal.re_to_cx(params.conj_s @ creal.cx_to_re(s))
        lhs = np.vdot(params.a_x @ sbar, s)
        rhs = c * np.vdot(sbar, s)
        dev = max(dev, abs(lhs - rhs))
    return FrameScalarReport(scalar=c, solve_residual=resid, scalar_deviation=float(dev), y=y)


def frame_w_subspace(alg, q_map, e1):
    """W = P + S built from a primitive idempotent: P the range of R on
    e - e1, S the real points of the range of R on e1."""
    n = q_map.n
    r_e1 = creal.realify(q_map.rep.r_op(e1))
    r_rest = creal.realify(q_map.rep.r_op(alg.unit - e1))
    s_full = RealSubspace.from_spanning(r_e1)
    reals = RealSubspace(np.vstack([np.eye(n), np.zeros((n, n))]))
    s = s_full.intersect(reals)
    if 2 * s.dim != s_full.dim:
        raise FrameInvalid("range of R_{e1} has no real form among real vectors")
    p = RealSubspace.from_spanning(r_rest)
    return p.add(s), p, s


def frame_kernel_params(alg, q_map, e1, x, chi=None):
    w, _, _ = frame_w_subspace(alg, q_map, e1)
    return build_kernel_params(q_map, w, x, chi=chi)


def _peirce_basis(projector):
    u, s, _ = np.linalg.svd(projector)
    r = int(np.sum(s > 0.5))
    return u[:, :r]
