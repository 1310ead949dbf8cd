"""Shared oracles for the test suite.

These deliberately avoid the library's own interval code paths: sampling,
finite differences and dense linear algebra give independent ground truth
to check the analytic bounds against.
"""

from __future__ import annotations

import itertools

import numpy as np

from hessbound import Box
from hessbound.harness import codelist_value
from hessbound.reference import point_hessians


def grid_points(box: Box, per_dim: int) -> np.ndarray:
    """Full tensor grid of per_dim points per dimension, endpoints included."""
    axes = [np.linspace(d.lo, d.hi, per_dim) for d in box]
    return np.array(list(itertools.product(*axes)))


def sampled_eigs(cl, box: Box, per_dim: int = 5) -> np.ndarray:
    """All eigenvalues of the true Hessian on a sampling grid."""
    pts = grid_points(box, per_dim)
    hs = point_hessians(cl, pts)
    return np.linalg.eigvalsh(hs).ravel()


def fd_gradient(cl, x, h: float = 1e-6) -> np.ndarray:
    """Central-difference gradient of the codelist at a point."""
    x = np.asarray(x, dtype=float)
    g = np.zeros_like(x)
    for i in range(len(x)):
        xp, xm = x.copy(), x.copy()
        xp[i] += h
        xm[i] -= h
        g[i] = (codelist_value(cl, xp) - codelist_value(cl, xm)) / (2 * h)
    return g


def fd_hessian(cl, x, h: float = 1e-4) -> np.ndarray:
    """Central-difference Hessian of the codelist at a point."""
    x = np.asarray(x, dtype=float)
    n = len(x)
    H = np.zeros((n, n))
    f0 = codelist_value(cl, x)
    for i in range(n):
        for j in range(i, n):
            if i == j:
                xp, xm = x.copy(), x.copy()
                xp[i] += h
                xm[i] -= h
                H[i, i] = (codelist_value(cl, xp) - 2 * f0 + codelist_value(cl, xm)) / h**2
            else:
                xpp, xpm, xmp, xmm = x.copy(), x.copy(), x.copy(), x.copy()
                xpp[[i, j]] += h
                xmm[[i, j]] -= h
                xpm[i] += h
                xpm[j] -= h
                xmp[i] -= h
                xmp[j] += h
                v = (codelist_value(cl, xpp) - codelist_value(cl, xpm)
                     - codelist_value(cl, xmp) + codelist_value(cl, xmm)) / (4 * h**2)
                H[i, j] = H[j, i] = v
    return H
