"""Adjacency spectra via a deterministic cyclic Jacobi eigensolver.

The solver sweeps the strict upper triangle in row order, annihilating each
off-diagonal entry with a plane rotation, until the off-diagonal Frobenius
norm drops below ``1e-12 * n``. No pivot search and no randomness are used,
so equal inputs give bitwise-equal outputs.

Each :class:`Spectrum` records ``tol``, a bound on the absolute error of
every eigenvalue: the residual off-diagonal norm (Weyl) plus an allowance for
rounding in the applied rotations.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .errors import ConvergenceError
from .graph import Graph, adjacency_batch

OFFDIAG_TOL = 1e-12  # per vertex
MAX_SWEEPS = 60
TRACE_TOL = 1e-9  # |sum mu| <= TRACE_TOL * n
ENERGY_TOL = 1e-7  # |sum mu^2 - 2m| <= ENERGY_TOL * n^2
_EPS = np.finfo(np.float64).eps


@njit(cache=True)
def _offdiag_norm(a):
    n = a.shape[0]
    s = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            s += a[i, j] * a[i, j]
    return np.sqrt(2.0 * s)


@njit(cache=True)
def _jacobi_inplace(a, threshold, max_sweeps):
    """Diagonalize symmetric ``a`` in place. Returns (off_norm, sweeps)."""
    n = a.shape[0]
    off = _offdiag_norm(a)
    sweeps = 0
    while off >= threshold and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                theta = (aqq - app) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                rp = a[p]
                rq = a[q]
                for k in range(n):
                    akp = rp[k]
                    akq = rq[k]
                    rp[k] = akp - s * (akq + tau * akp)
                    rq[k] = akq + s * (akp - tau * akq)
                rp[p] = app - t * apq
                rq[q] = aqq + t * apq
                rp[q] = 0.0
                rq[p] = 0.0
                # mirror the two updated rows into their columns
                for k in range(n):
                    a[k, p] = rp[k]
                    a[k, q] = rq[k]
        sweeps += 1
        off = _offdiag_norm(a)
    return off, sweeps


@njit(cache=True)
def _solve_batch(mats, threshold_per_n, max_sweeps):
    b, n, _ = mats.shape
    values = np.empty((b, n))
    offs = np.empty(b)
    sweeps = np.empty(b, dtype=np.int64)
    work = np.empty((n, n))
    for i in range(b):
        work[:, :] = mats[i]
        off, sw = _jacobi_inplace(work, threshold_per_n * n, max_sweeps)
        d = np.sort(np.diag(work).copy())
        values[i] = d[::-1]
        offs[i] = off
        sweeps[i] = sw
    return values, offs, sweeps


def _tolerance(off, sweeps, n, frob):
    # Weyl bound from the leftover off-diagonal part, plus rotation rounding.
    return off + 4.0 * (sweeps + 1) * n * _EPS * np.maximum(frob, 1.0)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues sorted non-increasing, with the achieved error bound ``tol``."""

    values: np.ndarray
    tol: float
    sweeps: int = field(default=0, compare=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64, copy=True)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self):
        return len(self.values)

    def mu(self, i: int) -> float:
        return mu(self, i)

    def mu_tail(self, s: int) -> float:
        return mu_tail(self, s)

    def __eq__(self, other):
        if not isinstance(other, Spectrum):
            return NotImplemented
        return self.tol == other.tol and np.array_equal(self.values, other.values)

    def to_list(self, digits: int = 12) -> list[float]:
        """Values rounded for display; integral results print as integers."""
        out = []
        for x in self.values:
            r = round(float(x), digits)
            out.append(int(r) if r == int(r) else r)
        return [0 if x == 0 else x for x in out]


class SolveAudit:
    """Running worst-case trace and energy residuals over observed solves."""

    def __init__(self):
        self.count = 0
        self.worst_trace_ratio = 0.0
        self.worst_energy_ratio = 0.0

    def observe(self, values: np.ndarray, edge_counts: np.ndarray):
        values = np.atleast_2d(values)
        n = values.shape[1]
        if n == 0 or len(values) == 0:
            return
        tr = np.abs(values.sum(axis=1)) / n
        en = np.abs((values**2).sum(axis=1) - 2.0 * np.asarray(edge_counts, dtype=np.float64)) / n**2
        self.count += len(values)
        self.worst_trace_ratio = max(self.worst_trace_ratio, float(tr.max()))
        self.worst_energy_ratio = max(self.worst_energy_ratio, float(en.max()))

    @property
    def ok(self) -> bool:
        return self.worst_trace_ratio <= TRACE_TOL and self.worst_energy_ratio <= ENERGY_TOL

    def as_dict(self) -> dict:
        return {
            "solves": self.count,
            "worst_trace_ratio": self.worst_trace_ratio,
            "worst_energy_ratio": self.worst_energy_ratio,
            "trace_tol": TRACE_TOL,
            "energy_tol": ENERGY_TOL,
            "ok": self.ok,
        }


_audits: list[SolveAudit] = []


@contextlib.contextmanager
def audit_solves():
    """Record trace/energy residuals of every spectrum solved inside the block."""
    audit = SolveAudit()
    _audits.append(audit)
    try:
        yield audit
    finally:
        _audits.remove(audit)


def _notify(values, edge_counts):
    for audit in _audits:
        audit.observe(values, edge_counts)


def matrix_eigenvalues(mats: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Solve a stack of symmetric matrices, shape ``(b, n, n)``.

    Returns ``(values, tols, sweeps)`` with ``values`` sorted descending per row.
    Raises :class:`ConvergenceError` if any matrix fails to converge.
    """
    mats = np.ascontiguousarray(mats, dtype=np.float64)
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
        raise ValueError(f"expected a (b, n, n) stack, got shape {mats.shape}")
    b, n, _ = mats.shape
    if n == 0:
        raise ValueError("eigenvalues of a graph with no vertices are undefined")
    values, offs, sweeps = _solve_batch(mats, OFFDIAG_TOL, MAX_SWEEPS)
    bad = offs >= OFFDIAG_TOL * n
    if bad.any():
        i = int(np.argmax(bad))
        raise ConvergenceError(
            f"Jacobi did not converge in {MAX_SWEEPS} sweeps (off-diagonal norm {offs[i]:.3e})"
        )
    frob = np.sqrt((mats**2).sum(axis=(1, 2)))
    tols = _tolerance(offs, sweeps, n, frob)
    return values, tols, sweeps


def eigenvalues(G: Graph) -> Spectrum:
    """Full adjacency spectrum of ``G``, sorted non-increasing."""
    if G.n == 0:
        raise ValueError("eigenvalues of a graph with no vertices are undefined")
    values, tols, sweeps = matrix_eigenvalues(G.matrix()[None])
    _notify(values, [G.edge_count])
    return Spectrum(values[0], float(tols[0]), int(sweeps[0]))


def batch_eigenvalues(adjs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Spectra of a stack of 0/1 adjacency matrices: ``(values, tols)``."""
    values, tols, _ = matrix_eigenvalues(adjs)
    if _audits:
        edge_counts = np.asarray(adjs).sum(axis=(1, 2)) / 2.0
        _notify(values, edge_counts)
    return values, tols


def mu(S: Spectrum, i: int) -> float:
    """``i``-th largest eigenvalue, 1-based."""
    if not 1 <= i <= S.n:
        raise IndexError(f"eigenvalue index {i} out of range 1..{S.n}")
    return float(S.values[i - 1])


def mu_tail(S: Spectrum, s: int) -> float:
    """``s``-th smallest eigenvalue, i.e. mu_{n-s+1}; 1-based."""
    if not 1 <= s <= S.n:
        raise IndexError(f"tail index {s} out of range 1..{S.n}")
    return float(S.values[S.n - s])


def labeled_spectra(n: int, chunk: int = 1 << 15) -> tuple[np.ndarray, np.ndarray]:
    """Spectra of every labeled graph on ``n`` vertices: ``(values, tols)``.

    Row ``b`` belongs to edge mask ``b`` (see :func:`graphspec.graph.pair_list`).
    """
    total = 1 << (n * (n - 1) // 2)
    values = np.empty((total, n))
    tols = np.empty(total)
    for start in range(0, total, chunk):
        masks = np.arange(start, min(total, start + chunk), dtype=np.int64)
        stop = start + len(masks)
        values[start:stop], tols[start:stop] = batch_eigenvalues(adjacency_batch(n, masks))
    return values, tols
