"""Interval-Hessian reference methods.

These provide the baseline eigenvalue bounds the codelist methods are
compared against:

* :func:`interval_hessian` -- forward second-order interval propagation,
  yielding an elementwise enclosure of the Hessian over a box;
* :func:`gershgorin_bounds` -- disc bounds from such an enclosure;
* :func:`hertz_rohn_bounds` -- exact extremal eigenvalues of a symmetric
  interval matrix via signed vertex enumeration;
* :func:`sym_eigen_range` -- eigenvalue range of one symmetric matrix,
  computed with a self-contained cyclic Jacobi iteration;
* :func:`point_hessian` / :func:`point_hessians` -- exact real Hessians at
  single points (scalar and vectorized forms), used as sampling oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .codelist import Codelist
from .errors import DimensionTooLarge, DomainViolation, NotSymmetric
from .interval import Box, Interval, ONE, ZERO, point

__all__ = [
    "SymIntervalMatrix",
    "interval_hessian",
    "point_hessian",
    "point_hessians",
    "gershgorin_bounds",
    "hertz_rohn_bounds",
    "sym_eigen_range",
    "VERTEX_DIMENSION_LIMIT",
]

VERTEX_DIMENSION_LIMIT = 20


@dataclass(frozen=True)
class SymIntervalMatrix:
    """Elementwise interval enclosure of a symmetric n x n matrix."""

    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lo, dtype=float)
        hi = np.asarray(self.hi, dtype=float)
        if lo.shape != hi.shape or lo.ndim != 2 or lo.shape[0] != lo.shape[1]:
            raise NotSymmetric(f"bad shapes {lo.shape} / {hi.shape}")
        if not (np.allclose(lo, lo.T) and np.allclose(hi, hi.T)):
            raise NotSymmetric("endpoint matrices must be symmetric")
        if np.any(lo > hi) or not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise NotSymmetric("entries must be finite intervals with lo <= hi")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def n(self) -> int:
        return self.lo.shape[0]

    def entry(self, i: int, j: int) -> Interval:
        return Interval(self.lo[i, j], self.hi[i, j])

    def mid_rad(self) -> Tuple[np.ndarray, np.ndarray]:
        return 0.5 * (self.lo + self.hi), 0.5 * (self.hi - self.lo)

    def contains_matrix(self, m: np.ndarray, slack: float = 0.0) -> bool:
        return bool(np.all(self.lo - slack <= m) and np.all(m <= self.hi + slack))


# -- interval Hessian propagation ----------------------------------------

def _outer_sym(g1: List[Interval], g2: List[Interval]) -> List[List[Interval]]:
    """Interval enclosure of g1 g2^T + g2 g1^T."""
    n = len(g1)
    return [[g1[a] * g2[b] + g2[a] * g1[b] for b in range(n)] for a in range(n)]


def _chain(first: Interval, second: Interval,
           g: List[Interval], h: List[List[Interval]]) -> Tuple[List[Interval], List[List[Interval]]]:
    """Gradient and Hessian of r(y): r' * grad y and r'' g g^T + r' H."""
    n = len(g)
    ng = [first * gi for gi in g]
    nh = [[second * (g[a] * g[b]) + first * h[a][b] for b in range(n)] for a in range(n)]
    return ng, nh


def _derivative_intervals(op: str, yi: Interval, yk: Interval,
                          c: float | None, m: int | None) -> Tuple[Interval, Interval]:
    if op == "powNat":
        return yi.pow(m - 1).scale(m), yi.pow(m - 2).scale(m * (m - 1))
    if op == "oneOver":
        return yk.pow(2).scale(-1.0), yk.pow(3).scale(2.0)
    if op == "sqrt":
        return yk.scale(2.0).recip(), yk.pow(3).scale(-4.0).recip()
    if op == "exp":
        return yk, yk
    if op == "ln":
        ri = yi.recip()
        return ri, ri.pow(2).scale(-1.0)
    if op == "addC":
        return ONE, ZERO
    if op == "mulByC":
        return point(c), ZERO
    raise ValueError(f"unknown unary op {op!r}")  # pragma: no cover


def interval_hessian(cl: Codelist, box: Box) -> SymIntervalMatrix:
    """Elementwise enclosure of the Hessian of the codelist over the box."""
    cl.validate()
    n = cl.n
    if len(box) != n:
        raise ValueError(f"box dimension {len(box)} != variable count {n}")
    ys: List[Interval] = []
    gs: List[List[Interval]] = []
    hs: List[List[List[Interval]]] = []
    zero_grad = [ZERO] * n
    zero_hess = [[ZERO] * n for _ in range(n)]
    for k, line in enumerate(cl.lines, start=1):
        try:
            if line.op == "var":
                ys.append(box[k - 1])
                g = list(zero_grad)
                g[k - 1] = ONE
                gs.append(g)
                hs.append([row[:] for row in zero_hess])
                continue
            if line.op == "add":
                yi, yj = ys[line.i - 1], ys[line.j - 1]
                gi, gj = gs[line.i - 1], gs[line.j - 1]
                hi, hj = hs[line.i - 1], hs[line.j - 1]
                ys.append(yi + yj)
                gs.append([a + b for a, b in zip(gi, gj)])
                hs.append([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(hi, hj)])
                continue
            if line.op == "mul":
                yi, yj = ys[line.i - 1], ys[line.j - 1]
                gi, gj = gs[line.i - 1], gs[line.j - 1]
                hi, hj = hs[line.i - 1], hs[line.j - 1]
                ys.append(yi * yj)
                gs.append([yj * a + yi * b for a, b in zip(gi, gj)])
                cross = _outer_sym(gi, gj)
                hs.append([
                    [yj * hi[a][b] + yi * hj[a][b] + cross[a][b] for b in range(n)]
                    for a in range(n)
                ])
                continue
            yi = ys[line.i - 1]
            if line.op == "powNat":
                yk = yi.pow(line.m)
            elif line.op == "oneOver":
                yk = yi.recip()
            elif line.op == "sqrt":
                if yi.lo <= 0.0:
                    raise DomainViolation("sqrt", yi)
                yk = yi.sqrt()
            elif line.op == "exp":
                yk = yi.exp()
            elif line.op == "ln":
                yk = yi.ln()
            elif line.op == "addC":
                yk = yi.add_const(line.c)
            else:  # mulByC
                yk = yi.scale(line.c)
            first, second = _derivative_intervals(line.op, yi, yk, line.c, line.m)
            g, h = _chain(first, second, gs[line.i - 1], hs[line.i - 1])
            ys.append(yk)
            gs.append(g)
            hs.append(h)
        except DomainViolation as err:
            if err.line is None:
                raise DomainViolation(err.kind, err.interval, line=k) from None
            raise
    last = hs[-1]
    lo = np.array([[last[a][b].lo for b in range(n)] for a in range(n)])
    hi = np.array([[last[a][b].hi for b in range(n)] for a in range(n)])
    # symmetrize away last-bit rounding asymmetry from the a/b loop order
    lo = np.minimum(lo, lo.T)
    hi = np.maximum(hi, hi.T)
    return SymIntervalMatrix(lo, hi)


def point_hessian(cl: Codelist, x) -> np.ndarray:
    """Exact real Hessian at one point, via the degenerate-box enclosure."""
    enc = interval_hessian(cl, Box(point(float(v)) for v in x))
    return 0.5 * (enc.lo + enc.hi)


def point_hessians(cl: Codelist, xs: np.ndarray) -> np.ndarray:
    """Real Hessians at a batch of points.

    ``xs`` has shape (P, n); the result has shape (P, n, n).  This is the
    vectorized twin of :func:`point_hessian` used for dense sampling.
    """
    cl.validate()
    xs = np.asarray(xs, dtype=float)
    P, n = xs.shape
    if n != cl.n:
        raise ValueError(f"points of dimension {n} vs variable count {cl.n}")
    ys: List[np.ndarray] = []
    gs: List[np.ndarray] = []
    hs: List[np.ndarray] = []
    for k, line in enumerate(cl.lines, start=1):
        if line.op == "var":
            ys.append(xs[:, k - 1])
            g = np.zeros((P, n))
            g[:, k - 1] = 1.0
            gs.append(g)
            hs.append(np.zeros((P, n, n)))
            continue
        if line.op == "add":
            ys.append(ys[line.i - 1] + ys[line.j - 1])
            gs.append(gs[line.i - 1] + gs[line.j - 1])
            hs.append(hs[line.i - 1] + hs[line.j - 1])
            continue
        if line.op == "mul":
            yi, yj = ys[line.i - 1], ys[line.j - 1]
            gi, gj = gs[line.i - 1], gs[line.j - 1]
            ys.append(yi * yj)
            gs.append(yj[:, None] * gi + yi[:, None] * gj)
            cross = np.einsum("pa,pb->pab", gi, gj)
            hs.append(yj[:, None, None] * hs[line.i - 1]
                      + yi[:, None, None] * hs[line.j - 1]
                      + cross + cross.transpose(0, 2, 1))
            continue
        yi = ys[line.i - 1]
        if line.op == "powNat":
            m = line.m
            yk = yi ** m
            first = m * yi ** (m - 1)
            second = m * (m - 1) * yi ** (m - 2)
        elif line.op == "oneOver":
            if np.any(yi == 0.0):
                raise DomainViolation("recip", "0 in sampled values", line=k)
            yk = 1.0 / yi
            first = -yk * yk
            second = 2.0 * yk ** 3
        elif line.op == "sqrt":
            if np.any(yi <= 0.0):
                raise DomainViolation("sqrt", "non-positive sampled values", line=k)
            yk = np.sqrt(yi)
            first = 0.5 / yk
            second = -0.25 / yk ** 3
        elif line.op == "exp":
            yk = np.exp(yi)
            first = yk
            second = yk
        elif line.op == "ln":
            if np.any(yi <= 0.0):
                raise DomainViolation("ln", "non-positive sampled values", line=k)
            yk = np.log(yi)
            first = 1.0 / yi
            second = -1.0 / yi ** 2
        elif line.op == "addC":
            yk = yi + line.c
            first = np.ones(P)
            second = np.zeros(P)
        else:  # mulByC
            yk = yi * line.c
            first = np.full(P, line.c)
            second = np.zeros(P)
        gi = gs[line.i - 1]
        ys.append(yk)
        gs.append(first[:, None] * gi)
        outer = np.einsum("pa,pb->pab", gi, gi)
        hs.append(second[:, None, None] * outer + first[:, None, None] * hs[line.i - 1])
    return hs[-1]


# -- eigenvalue bounds from interval matrices ----------------------------

def gershgorin_bounds(mat: SymIntervalMatrix) -> Interval:
    """Disc-based eigenvalue bounds for a symmetric interval matrix."""
    n = mat.n
    mags = np.maximum(np.abs(mat.lo), np.abs(mat.hi))
    off = mags.sum(axis=1) - np.diag(mags)
    lo = float(np.min(np.diag(mat.lo) - off))
    hi = float(np.max(np.diag(mat.hi) + off))
    return Interval(lo, hi)


def hertz_rohn_bounds(mat: SymIntervalMatrix) -> Interval:
    """Extremal eigenvalues of a symmetric interval matrix.

    Enumerates the 2^(n-1) sign patterns (first entry fixed positive) of
    the vertex matrices mid -+ diag(z) rad diag(z); the minimum smallest and
    maximum largest eigenvalue over these vertices are attained exactly.
    """
    n = mat.n
    if n > VERTEX_DIMENSION_LIMIT:
        raise DimensionTooLarge(f"vertex enumeration limited to n <= {VERTEX_DIMENSION_LIMIT}, got {n}")
    mid, rad = mat.mid_rad()
    lo = math.inf
    hi = -math.inf
    for bits in range(1 << (n - 1)):
        z = np.ones(n)
        for b in range(n - 1):
            if bits >> b & 1:
                z[b + 1] = -1.0
        signed = rad * np.outer(z, z)
        lo = min(lo, sym_eigen_range(mid - signed).lo)
        hi = max(hi, sym_eigen_range(mid + signed).hi)
    return Interval(lo, hi)


def sym_eigen_range(m: np.ndarray) -> Interval:
    """Smallest and largest eigenvalue of one symmetric matrix.

    Uses a deterministic cyclic Jacobi rotation sweep; iteration stops once
    the off-diagonal Frobenius norm is below 1e-12 times the matrix norm.
    """
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {a.shape}")
    scale = np.linalg.norm(a)
    if not np.allclose(a, a.T, atol=max(scale, 1.0) * 1e-12):
        raise NotSymmetric("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    if n == 1:
        v = float(a[0, 0])
        return Interval(v, v)
    tol = 1e-12 * max(scale, 1.0)
    for _ in range(100):
        off = math.sqrt(max(0.0, np.sum(a * a) - np.sum(np.diag(a) ** 2)))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = 0.5 * (a[q, q] - a[p, p]) / apq
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(1.0, theta))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                rp = a[:, p].copy()
                rq = a[:, q].copy()
                a[:, p] = c * rp - s * rq
                a[:, q] = s * rp + c * rq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
    d = np.diag(a)
    return Interval(float(np.min(d)), float(np.max(d)))
