"""Simultaneous polynomial root finding (Aberth-Ehrlich iteration).

Operates on batches of monic polynomials of a common degree, given by
coefficient rows in descending powers.  The iteration runs Jacobi-style on
all roots of all polynomials at once, stops when the corrections stall, and
finishes with a guarded Newton polish.  Multiple roots converge linearly
and end up accurate to roughly sqrt(machine eps), which the callers accept
through a relaxed residual for clustered roots.
"""

from __future__ import annotations

import numpy as np

from .errors import RootFindingError

MAX_ITERATIONS = 200
_CORRECTION_TOL = 5e-16
_POLISH_STEPS = 3
_ANGLE_OFFSET = 0.9  # breaks symmetry traps of the initial circle


def _horner(coeffs: np.ndarray, x: np.ndarray) -> np.ndarray:
    # coeffs (B, m+1) descending, x (B, m) -> values (B, m)
    out = np.broadcast_to(coeffs[:, 0:1], x.shape).copy()
    for k in range(1, coeffs.shape[1]):
        out = out * x + coeffs[:, k : k + 1]
    return out


def aberth_roots_batch(coeffs, radii=None, max_iterations: int = MAX_ITERATIONS) -> np.ndarray:
    """All roots of each monic polynomial row; shape (B, degree).

    ``radii`` optionally overrides the initial-guess circle radius per row.
    """
    c = np.asarray(coeffs, dtype=complex)
    if c.ndim == 1:
        c = c[None, :]
    B, m1 = c.shape
    degree = m1 - 1
    if degree < 1:
        raise ValueError("need degree >= 1")
    if not np.allclose(c[:, 0], 1.0):
        c = c / c[:, 0:1]

    dcoeffs = c[:, :-1] * np.arange(degree, 0, -1)

    if radii is None:
        # 1 + max_j |c_j|^(1/j): keeps every root strictly inside the circle.
        j = np.arange(1, degree + 1)
        radii = 1.0 + (np.abs(c[:, 1:]) ** (1.0 / j)).max(axis=1)
    radii = np.asarray(radii, dtype=float).reshape(B, 1)

    ang = 2.0 * np.pi * np.arange(degree) / degree + _ANGLE_OFFSET
    x = radii * np.exp(1j * ang)[None, :]

    scale = 1.0 + np.abs(x).max(axis=1, keepdims=True)
    for _ in range(max_iterations):
        p = _horner(c, x)
        dp = _horner(dcoeffs, x)
        dp = np.where(dp == 0, 1e-300, dp)
        ratio = p / dp
        diff = x[:, :, None] - x[:, None, :]
        np.einsum("bii->bi", diff)[...] = np.inf
        diff = np.where(diff == 0, 1e-300, diff)
        s = (1.0 / diff).sum(axis=2)
        corr = ratio / (1.0 - ratio * s)
        x = x - corr
        if (np.abs(corr) <= _CORRECTION_TOL * scale).all():
            break
        scale = 1.0 + np.abs(x).max(axis=1, keepdims=True)

    for _ in range(_POLISH_STEPS):
        p = _horner(c, x)
        dp = _horner(dcoeffs, x)
        dp = np.where(dp == 0, 1e-300, dp)
        candidate = x - p / dp
        better = np.abs(_horner(c, candidate)) <= np.abs(p)
        x = np.where(better, candidate, x)

    order = np.lexsort((x.imag, x.real), axis=-1)
    return np.take_along_axis(x, order, axis=-1)


def aberth_roots(coeffs, max_iterations: int = MAX_ITERATIONS) -> np.ndarray:
    """Roots of a single monic polynomial, sorted by (real, imag)."""
    return aberth_roots_batch(np.asarray(coeffs, dtype=complex)[None, :], max_iterations=max_iterations)[0]


def residuals(coeffs, roots) -> np.ndarray:
    """Max |p(root)| per polynomial row."""
    c = np.asarray(coeffs, dtype=complex)
    if c.ndim == 1:
        c = c[None, :]
    r = np.asarray(roots, dtype=complex)
    if r.ndim == 1:
        r = r[None, :]
    return np.abs(_horner(c, r)).max(axis=1)


def require_residual(coeffs, roots, tol: float) -> None:
    res = residuals(coeffs, roots)
    if (res > tol).any():
        raise RootFindingError(f"root residual {res.max():.3g} above tolerance {tol:.3g}")
