"""Numerical tolerances used package-wide.

All rank decisions reduce to these constants; they are tuned for double
precision and ambient dimensions up to a few dozen.
"""

# absolute residual on unit-scaled data
TOL_ZERO = 1e-10

# rank cutoff, relative to the largest singular value
TOL_RANK = 1e-9

# open/closed cone membership slack on spectral eigenvalues
TOL_CONE = 1e-10

# subspace equality, measured as Frobenius distance of orthogonal projectors
TOL_SUB = 1e-8

# eigenvalue clustering gap (scaled by max(1, |x|))
TOL_EIG = 1e-8

# relative PSD slack for Gram matrices and restricted forms
TOL_PSD = 1e-8
