"""Conversions between complex vectors/operators and their real forms.

Fixed coordinate convention on the realified space: a complex vector
v in C^n becomes (Re v_1 .. Re v_n, Im v_1 .. Im v_n) in R^{2n}.
"""
import numpy as np


def cx_to_re(v):
    v = np.asarray(v, dtype=complex)
    return np.concatenate([v.real, v.imag])


def re_to_cx(w):
    w = np.asarray(w, dtype=float)
    n = w.shape[0] // 2
    return w[:n] + 1j * w[n:]


def realify(a):
    """Real 2n x 2n matrix of the C-linear operator a."""
    a = np.asarray(a, dtype=complex)
    return np.block([[a.real, -a.imag], [a.imag, a.real]])


def complexify(m, check=True, tol=1e-9):
    """Inverse of realify; raises if m does not commute with j."""
    m = np.asarray(m, dtype=float)
    n = m.shape[0] // 2
    a = m[:n, :n] + 1j * m[n:, :n]
    if check:
        err = np.linalg.norm(m - realify(a))
        if err > tol * max(1.0, np.linalg.norm(m)):
            raise ValueError(f"matrix is not complex-linear (defect {err:.2e})")
    return a


def j_matrix(n):
    """Multiplication by i on R^{2n}."""
    z = np.zeros((n, n))
    i = np.eye(n)
    return np.block([[z, -i], [i, z]])
