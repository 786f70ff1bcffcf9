"""Dense two-phase tableau simplex in extended precision.

The l1 interpolation programs solved here pin polynomial jet data at points
inside the unit disk; in monomial coordinates those constraint rows are the
rows of a confluent Vandermonde system whose conditioning grows roughly
like 4^multiplicity.  Double-precision interior-point solvers silently
return infeasible "optima" already at multiplicity 16 (their feasibility
tolerance is wider than the subspace gap), so the LPs are solved with an
explicit tableau in numpy longdouble where basic solutions are exact up to
the 64-bit significand.  Problem sizes stay tiny: at most a few dozen rows
by a few thousand columns.
"""

from __future__ import annotations

import numpy as np

LD = np.longdouble

_RC_TOL = LD(1e-11)


class SimplexError(RuntimeError):
    pass


def dense_simplex(A, b, c, maxiter: int = 200_000):
    """min c @ x  s.t.  A x = b, x >= 0.

    Returns (x, value, iterations).  Dantzig pricing with a largest-pivot
    tie-break on near-minimal ratios; falls back to Bland's rule when
    progress stalls.  In this package c >= 0 always, so phase 2 cannot be
    unbounded; columns without an acceptable pivot are blocked instead.
    """
    A = np.array(A, dtype=LD)
    b = np.array(b, dtype=LD)
    c = np.array(c, dtype=LD)
    m, n = A.shape
    sgn = np.where(b < 0, LD(-1), LD(1))
    A *= sgn[:, None]
    b *= sgn

    T = np.zeros((m + 1, n + m + 1), dtype=LD)
    T[:m, :n] = A
    T[:m, n:n + m] = np.eye(m, dtype=LD)
    T[:m, -1] = b
    basis = np.arange(n, n + m)
    T[m, :n] = -A.sum(axis=0)
    T[m, -1] = -b.sum()

    total = 0

    def run(active_n):
        nonlocal total
        blocked = np.zeros(active_n, dtype=bool)
        it = 0
        while True:
            it += 1
            total += 1
            if total > maxiter:
                raise SimplexError("iteration limit reached")
            red = T[m, :active_n]
            cand = np.where((red < -_RC_TOL) & ~blocked)[0]
            if cand.size == 0:
                stuck = np.where((red < LD(-1e-7)) & blocked)[0]
                if stuck.size:
                    blocked[stuck] = False
                    continue
                return
            j = cand[0] if it > 5000 else cand[np.argmin(red[cand])]
            col = T[:m, j]
            piv_tol = max(LD(1e-13), LD(1e-11) * np.max(np.abs(col)))
            pos = col > piv_tol
            if not np.any(pos):
                blocked[j] = True
                continue
            ratios = np.full(m, np.inf, dtype=LD)
            ratios[pos] = np.maximum(T[:m, -1][pos], LD(0)) / col[pos]
            rmin = ratios.min()
            near = np.where(ratios <= rmin + LD(1e-9) * rmin + LD(1e-18))[0]
            i = near[np.argmax(col[near])]
            T[i] /= T[i, j]
            fac = T[:, j].copy()
            fac[i] = 0
            T[:, :] -= np.outer(fac, T[i])
            T[:, j] = 0
            T[i, j] = 1
            basis[i] = j
            blocked[:] = False

    run(n + m)
    if T[m, -1] < -LD(1e-9) * max(LD(1), np.abs(b).sum()):
        raise SimplexError(f"infeasible: phase-1 objective {float(-T[m, -1]):.3e}")

    T[m, :] = 0
    T[m, :n] = c
    for i, bi in enumerate(basis):
        if bi < n and c[bi] != 0:
            T[m, :] -= c[bi] * T[i]
    run(n)

    x = np.zeros(n, dtype=LD)
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = T[i, -1]
    return x, float(c @ x), total


def min_l1_solution(rows: np.ndarray, rhs: np.ndarray, maxiter: int = 200_000):
    """min ||x||_1  s.t.  rows @ x = rhs  over real x, via the standard
    positive/negative split.  Rows are equilibrated to unit sup norm first.

    Returns (value, x)."""
    rows = np.array(rows, dtype=LD)
    rhs = np.array(rhs, dtype=LD)
    scale = np.max(np.abs(rows), axis=1)
    if np.any(scale == 0):
        raise SimplexError("zero constraint row")
    rows = rows / scale[:, None]
    rhs = rhs / scale
    nvar = rows.shape[1]
    A = np.hstack([rows, -rows])
    c = np.ones(2 * nvar, dtype=LD)
    xpm, val, _ = dense_simplex(A, rhs, c, maxiter=maxiter)
    return val, np.asarray(xpm[:nvar] - xpm[nvar:], dtype=LD)
