"""Cone integrals, the Bergman kernel, and metric moments.

I(u) integrates exp(-2<u, y>) over the symmetric cone and I_Q(u) integrates
exp(-2<u, Q(v, v)>) over V, both against Lebesgue measure in the fixed
orthonormal coordinates.  Closed forms cover all built-in kinds (half-line
products for diagonal algebras, the classical gamma integrals of the
positive-definite cones for the matrix kinds, a Gaussian for I_Q);
box-rejection Monte Carlo provides the independent cross-check.  All
sampling is counter-based, keyed by (seed, stream, block index), so results
do not depend on scheduling.
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.integrate

from .errors import MCVarianceTooHigh, NotInCone, NotInDomain
from .rng import BLOCK, block_generator


def _basis_stack(alg):
    return np.stack([np.asarray(alg.to_matrix(e), dtype=complex) for e in np.eye(alg.dim)])


def _batch_to_matrix(alg, xs):
    return np.einsum("sk,kab->sab", xs, _basis_stack(alg))


def _batch_from_matrix(alg, mats):
    return np.real(np.einsum("sab,kab->sk", mats, _basis_stack(alg).conj()))


# -- closed forms -----------------------------------------------------------


def _gamma_cone_real(n, a):
    """Gamma function of the real positive-definite cone."""
    return math.pi ** (n * (n - 1) / 4.0) * math.prod(
        math.gamma(a - k / 2.0) for k in range(n)
    )


def _gamma_cone_complex(n, a):
    return math.pi ** (n * (n - 1) / 2.0) * math.prod(
        math.gamma(a - k) for k in range(n)
    )


def _laplace_constant(alg):
    n = alg.rank
    if alg.kind == "sym_real":
        return 2.0 ** (n * (n - 1) / 4.0) * _gamma_cone_real(n, (n + 1) / 2.0), (n + 1) / 2.0
    if alg.kind == "herm_complex":
        return 2.0 ** (n * (n - 1) / 2.0) * _gamma_cone_complex(n, n), float(n)
    raise ValueError(f"no closed form for kind {alg.kind!r}")


def cone_laplace(alg, u):
    """Closed form of I(u), the Laplace transform of the cone at 2u."""
    if alg.kind == "diagonal":
        u = np.asarray(u, dtype=float)
        if np.min(u) <= 0.0:
            raise NotInCone("I(u) requires u in the open cone")
        return float(np.prod(1.0 / (2.0 * u)))
    const, power = _laplace_constant(alg)
    mat = np.asarray(alg.to_matrix(u))
    if np.linalg.eigvalsh(mat)[0] <= 0.0:
        raise NotInCone("I(u) requires u in the open cone")
    _, logdet = np.linalg.slogdet(2.0 * mat)
    return float(const * math.exp(-power * logdet))


def gaussian_iq(q_map, u):
    """I_Q(u) as the Gaussian integral of the form v -> 2 g_u(v, v)."""
    m_u = 2.0 * q_map.g_matrix(u)
    vals = np.linalg.eigvalsh(0.5 * (m_u + m_u.T))
    if vals[0] <= 0.0:
        raise NotInCone("the quadratic form of I_Q(u) is not positive definite")
    n_r = m_u.shape[0]
    return float(math.pi ** (n_r / 2.0) * math.exp(-0.5 * np.sum(np.log(vals))))


def _batch_inv_i_iq(alg, q_map, us):
    """Vectorized 1 / (I(u) I_Q(u)) for a batch of cone points.

    Uses I_Q(u) = (pi/2)^n / det(mat u) for the matrix kinds (the Gaussian
    determinant collapses to the matrix determinant) and the product forms
    on diagonal algebras.
    """
    if alg.kind == "diagonal":
        return np.prod(4.0 * us * us / math.pi, axis=1)
    n = alg.rank
    const, power = _laplace_constant(alg)
    dets = np.real(np.linalg.det(_batch_to_matrix(alg, us)))
    inv_i = np.exp(power * (n * math.log(2.0) + np.log(dets))) / const
    inv_iq = (2.0 / math.pi) ** n * dets
    return inv_i * inv_iq


# -- box-rejection Monte Carlo ----------------------------------------------

# box half-width in units of the inverse smallest spectral value; the
# truncated mass scales like exp(-_BOX_KAPPA) times a low-degree polynomial
_BOX_KAPPA = 12.0


def _cone_box_mc(alg, u, samples, seed, stream):
    """Rejection MC for I(u): uniform box scaled by the spectral data of u."""
    dec = alg.spectral_decompose(u)
    lam_min = float(np.min(dec.eigenvalues))
    n = alg.dim
    if alg.kind == "diagonal":
        lows = np.zeros(n)
        highs = _BOX_KAPPA / (2.0 * np.asarray(u))
    else:
        r = _BOX_KAPPA / (2.0 * lam_min)
        lows = -r * np.ones(n)
        highs = r * np.ones(n)
    vol = float(np.prod(highs - lows))
    uvec = np.asarray(u, dtype=float)

    total = total_sq = 0.0
    count = 0
    for b in range(0, samples, BLOCK):
        nb = min(BLOCK, samples - b)
        g = block_generator(seed, stream, b // BLOCK)
        ys = lows + g.random((BLOCK, n))[:nb] * (highs - lows)
        inside = _batch_in_cone(alg, ys)
        f = np.where(inside, np.exp(-2.0 * ys @ uvec), 0.0)
        total += float(np.sum(f))
        total_sq += float(np.sum(f * f))
        count += nb
    mean = total / count
    var = max(total_sq / count - mean * mean, 0.0)
    return vol * mean, vol * math.sqrt(var / count)


def _batch_in_cone(alg, ys):
    if alg.kind == "diagonal":
        return np.all(ys > 0.0, axis=1)
    vals = np.linalg.eigvalsh(_batch_to_matrix(alg, ys))
    return vals[:, 0] > 0.0


def _iq_box_mc(q_map, u, samples, seed, stream):
    m_u = 2.0 * q_map.g_matrix(u)
    m_u = 0.5 * (m_u + m_u.T)
    vals = np.linalg.eigvalsh(m_u)
    if vals[0] <= 0.0:
        raise NotInCone("I_Q box requires a positive form")
    dim = m_u.shape[0]
    r = math.sqrt(2.0 * _BOX_KAPPA / vals[0])
    vol = (2.0 * r) ** dim
    total = total_sq = 0.0
    count = 0
    for b in range(0, samples, BLOCK):
        nb = min(BLOCK, samples - b)
        g = block_generator(seed, stream, b // BLOCK)
        vs = (2.0 * g.random((BLOCK, dim))[:nb] - 1.0) * r
        f = np.exp(-np.einsum("si,ij,sj->s", vs, m_u, vs))
        total += float(np.sum(f))
        total_sq += float(np.sum(f * f))
        count += nb
    mean = total / count
    var = max(total_sq / count - mean * mean, 0.0)
    return vol * mean, vol * math.sqrt(var / count)


@dataclass
class ConeIntegrals:
    i_value: float
    iq_value: float
    method: str
    i_se: float = 0.0
    iq_se: float = 0.0
    samples: int = 0
    seed: Optional[int] = None
    closed_form_i: bool = True
    closed_form_iq: bool = True


def cone_integrals(alg, q_map, u, method="closed", samples=200_000, seed=0, se_limit=0.01):
    """I(u) and I_Q(u); ``method`` is 'closed' or 'mc'.

    Both values are positive on the open cone.  The MC path reports standard
    errors and raises MCVarianceTooHigh when either relative error exceeds
    ``se_limit``.
    """
    u = alg.check_element(u)
    if not alg.cone_contains(u, mode="open"):
        raise NotInCone("cone integrals need u in the open cone")
    if method == "closed":
        return ConeIntegrals(cone_laplace(alg, u), gaussian_iq(q_map, u), "closed")
    if method != "mc":
        raise ValueError("method must be 'closed' or 'mc'")
    i_val, i_se = _cone_box_mc(alg, u, samples, seed, stream=1)
    iq_val, iq_se = _iq_box_mc(q_map, u, samples, seed, stream=2)
    if i_se > se_limit * abs(i_val) or iq_se > se_limit * abs(iq_val):
        raise MCVarianceTooHigh(
            f"relative standard error above {se_limit:.1%} "
            f"(I: {i_se / abs(i_val):.2%}, I_Q: {iq_se / abs(iq_val):.2%})",
            relative_se=float(max(i_se / abs(i_val), iq_se / abs(iq_val))),
        )
    return ConeIntegrals(i_val, iq_val, "mc", i_se, iq_se, samples, seed, False, False)


# -- the invariant base measure ------------------------------------------------


def measure_mass(alg, y):
    """Closed-form mass of the measure exp(-2<u,y>) / (I(u) I_Q(u)) mu_U.

    The integrand is a determinant power times an exponential, so the mass
    is a gamma-type integral for every built-in kind.
    """
    if alg.kind == "diagonal":
        y = np.asarray(y, dtype=float)
        if np.min(y) <= 0.0:
            raise NotInCone("measure mass requires y in the open cone")
        return float(np.prod(1.0 / (math.pi * y ** 3)))
    n = alg.rank
    mat = np.asarray(alg.to_matrix(y))
    if np.linalg.eigvalsh(mat)[0] <= 0.0:
        raise NotInCone("measure mass requires y in the open cone")
    _, logdet2y = np.linalg.slogdet(2.0 * mat)
    if alg.kind == "sym_real":
        const = (
            2.0 ** (n * (n + 1) / 2.0)
            * (2.0 / math.pi) ** n
            * _gamma_cone_real(n, n + 2.0)
            / _gamma_cone_real(n, (n + 1) / 2.0)
        )
        return float(const * math.exp(-(n + 2.0) * logdet2y))
    if alg.kind == "herm_complex":
        const = (
            2.0 ** (n * n)
            * (2.0 / math.pi) ** n
            * _gamma_cone_complex(n, 2.0 * n + 1.0)
            / _gamma_cone_complex(n, float(n))
        )
        return float(const * math.exp(-(2.0 * n + 1.0) * logdet2y))
    raise ValueError(f"no closed form for kind {alg.kind!r}")


def sample_invariant_measure(alg, y, count, seed, stream=4):
    """Exact samples from the normalized measure exp(-2<u,y>)/(I I_Q) mu_U.

    Componentwise Gamma(3) in the diagonal case; the matrix kinds are exact
    Wishart families because the determinant powers are half-integers.
    """
    out = np.empty((count, alg.dim))
    n = alg.rank
    if alg.kind == "diagonal":
        scale = 1.0 / (2.0 * np.asarray(y, dtype=float))
        for b in range(0, count, BLOCK):
            nb = min(BLOCK, count - b)
            g = block_generator(seed, stream, b // BLOCK)
            out[b : b + nb] = g.gamma(3.0, size=(BLOCK, alg.dim))[:nb] * scale
        return out
    ym = np.asarray(alg.to_matrix(y))
    if alg.kind == "sym_real":
        a = np.linalg.cholesky(np.linalg.inv(4.0 * np.real(ym)))
        df = 2 * n + 4
        for b in range(0, count, BLOCK):
            nb = min(BLOCK, count - b)
            g = block_generator(seed, stream, b // BLOCK)
            zs = g.standard_normal((BLOCK, n, df))[:nb]
            mats = np.einsum("ij,sjk,slk,ml->sim", a, zs, zs, a)
            out[b : b + nb] = _batch_from_matrix(alg, mats.astype(complex))
        return out
    if alg.kind == "herm_complex":
        a = np.linalg.cholesky(np.linalg.inv(2.0 * ym))
        df = 2 * n + 1
        for b in range(0, count, BLOCK):
            nb = min(BLOCK, count - b)
            g = block_generator(seed, stream, b // BLOCK)
            zr = g.standard_normal((BLOCK, n, df))[:nb]
            zi = g.standard_normal((BLOCK, n, df))[:nb]
            zs = (zr + 1j * zi) / math.sqrt(2.0)
            mats = np.einsum("ij,sjk,slk,ml->sim", a, zs, zs.conj(), a.conj())
            out[b : b + nb] = _batch_from_matrix(alg, mats)
        return out
    raise ValueError(f"no invariant-measure sampler for kind {alg.kind!r}")


# -- exact-proposal sampling from the cone ----------------------------------


def sample_cone_exponential(alg, y0, count, seed, stream=3):
    """Samples from the density exp(-2<u, y0>) / I(y0) on the cone.

    Inverse-CDF exponentials in the diagonal case; Wishart families whose
    determinant power vanishes for the matrix kinds, so the density is the
    pure exponential weight.
    """
    n = alg.rank
    out = np.empty((count, alg.dim))
    if alg.kind == "diagonal":
        rate = 2.0 * np.asarray(y0, dtype=float)
        for b in range(0, count, BLOCK):
            nb = min(BLOCK, count - b)
            g = block_generator(seed, stream, b // BLOCK)
            us = g.random((BLOCK, alg.dim))[:nb]
            out[b : b + nb] = -np.log1p(-us) / rate
        return out

    y0m = np.asarray(alg.to_matrix(y0))
    if alg.kind == "sym_real":
        a = np.linalg.cholesky(np.linalg.inv(4.0 * np.real(y0m)))
        df = n + 1
        for b in range(0, count, BLOCK):
            nb = min(BLOCK, count - b)
            g = block_generator(seed, stream, b // BLOCK)
            zs = g.standard_normal((BLOCK, n, df))[:nb]
            mats = np.einsum("ij,sjk,slk,ml->sim", a, zs, zs, a)
            out[b : b + nb] = _batch_from_matrix(alg, mats.astype(complex))
        return out

    if alg.kind == "herm_complex":
        a = np.linalg.cholesky(np.linalg.inv(2.0 * y0m))
        for b in range(0, count, BLOCK):
            nb = min(BLOCK, count - b)
            g = block_generator(seed, stream, b // BLOCK)
            zr = g.standard_normal((BLOCK, n, n))[:nb]
            zi = g.standard_normal((BLOCK, n, n))[:nb]
            zs = (zr + 1j * zi) / math.sqrt(2.0)
            mats = np.einsum("ij,sjk,slk,ml->sim", a, zs, zs.conj(), a.conj())
            out[b : b + nb] = _batch_from_matrix(alg, mats)
        return out
    raise ValueError(f"no cone sampler for kind {alg.kind!r}")


# -- Bergman kernel ----------------------------------------------------------


@dataclass
class BergmanEstimate:
    value: complex
    se: float
    method: str
    samples: int = 0
    seed: Optional[int] = None


def bergman_kernel(alg, q_map, p1, p2, samples=200_000, seed=0, method="auto"):
    """Reproducing kernel of the square-integrable holomorphic functions.

    1D adaptive quadrature in the rank-one case; otherwise (or on request)
    importance-sampled MC with the exact exponential-weight proposal at the
    cone midpoint of the two points.
    """
    for p in (p1, p2):
        if not q_map.domain_contains(p):
            raise NotInDomain("Bergman kernel arguments must lie in the domain")
    w = p1.z - np.conj(p2.z) - 2j * q_map.q_eval(p1.v, p2.v)
    re_w = np.real(w)
    im_w = np.imag(w)

    if method == "auto":
        method = "quadrature" if alg.dim == 1 else "mc"

    if method == "quadrature":
        if alg.dim != 1:
            raise ValueError("quadrature path only covers rank-one algebras")
        a, b_ = float(re_w[0]), float(im_w[0])

        def integrand_re(u):
            return (2.0 / math.pi ** 2) * u * u * math.exp(-u * b_) * math.cos(u * a)

        def integrand_im(u):
            return (2.0 / math.pi ** 2) * u * u * math.exp(-u * b_) * math.sin(u * a)

        vr, er = scipy.integrate.quad(integrand_re, 0.0, np.inf)
        vi, ei = scipy.integrate.quad(integrand_im, 0.0, np.inf)
        return BergmanEstimate(complex(vr, vi), float(math.hypot(er, ei)), "quadrature")

    y0 = im_w / 2.0
    if not alg.cone_contains(y0, mode="open"):
        raise NotInDomain("midpoint cone part left the open cone")
    i_y0 = cone_laplace(alg, y0)

    us = sample_cone_exponential(alg, y0, samples, seed, stream=3)
    total = 0.0 + 0.0j
    total_sq = np.zeros(2)
    for b in range(0, samples, _CHUNK):
        f = np.exp(1j * us[b : b + _CHUNK] @ re_w) * _batch_inv_i_iq(alg, q_map, us[b : b + _CHUNK])
        total += np.sum(f)
        total_sq += np.array([np.sum(f.real ** 2), np.sum(f.imag ** 2)])
    mean = total / samples
    var = np.maximum(total_sq / samples - np.array([mean.real ** 2, mean.imag ** 2]), 0.0)
    scale = i_y0 / (2.0 * math.pi) ** alg.dim
    se = scale * math.sqrt(float(np.sum(var)) / samples)
    return BergmanEstimate(complex(scale * mean), float(se), "mc", samples, seed)


_CHUNK = 1 << 16


# -- moments of the base measure for the metric oracle -----------------------


def base_measure_moments(alg, q_map, directions_u, directions_v, samples=200_000, seed=0):
    """MC moments of the measure exp(-2<u,e>) / (I I_Q) mu_U at the base point.

    The measure is sampled exactly (its density is a Wishart/Gamma family),
    so no importance weights enter.  Returns (delta, m1, m2, qv): the
    closed-form mass, the first and second sample moments of <u, zeta> for
    each U_C direction zeta, and the first moment of <u, Q(gamma, gamma)>
    for each V direction gamma, all normalized by the mass.
    """
    e = alg.unit
    delta = measure_mass(alg, e)
    m1 = np.zeros(len(directions_u), dtype=complex)
    m2 = np.zeros(len(directions_u))
    qv = np.zeros(len(directions_v))
    qgs = [np.real(q_map.q_eval(g, g)) for g in directions_v]
    us = sample_invariant_measure(alg, e, samples, seed, stream=4)
    for d, zeta in enumerate(directions_u):
        vals = us @ np.asarray(zeta)
        m1[d] = np.mean(vals)
        m2[d] = float(np.mean(np.abs(vals) ** 2))
    for d, qg in enumerate(qgs):
        qv[d] = float(np.mean(us @ qg))
    return delta, m1, m2, qv
