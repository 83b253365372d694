"""Finite-difference check that spinor fields solve the 1+1D Dirac equation.

The equation ``i dPsi/dt = -i sigma_z dPsi/dx - m sigma_x Psi`` is tested
through its residual

    r = i dPsi/dt + i sigma_z dPsi/dx + m sigma_x Psi

with second-order central differences of equal spacing ``h`` in ``x`` and
``t``.  Grid points sit at ``x = i*h`` and ``t = t_min + j*h`` inside the
region ``|x| <= t - x_margin``.

A sampler is any callable ``f(x, t) -> complex array of shape (2, n)``
accepting 1-d arrays of equal length.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .closedform import psi_component, spinor_field
from .errors import DomainError
from .pathsum import estimate_order

SIGMA_X = np.array([[0, 1], [1, 0]])
SIGMA_Z = np.array([[1, 0], [0, -1]])
IDENTITY = np.eye(2, dtype=int)

Sampler = Callable[[np.ndarray, np.ndarray], np.ndarray]

# rows per batch handed to the sampler
_ROW_BLOCK = 64


@dataclass(frozen=True)
class GridSpec:
    t_min: float = 1.0
    t_max: float = 2.0
    x_margin: float = 0.2
    h: float = 1e-3

    def validate(self):
        if not (self.h > 0 and math.isfinite(self.h)):
            raise DomainError(f"grid spacing must be positive, got h={self.h}")
        if not self.t_min > 0 or self.t_max < self.t_min:
            raise DomainError(f"need 0 < t_min <= t_max, got [{self.t_min}, {self.t_max}]")
        if not self.x_margin > 2 * self.h:
            raise DomainError(
                f"cone margin {self.x_margin} must exceed two grid steps (2h = {2 * self.h})"
            )
        if self.t_min - self.h <= 0:
            raise DomainError("stencil halo reaches t <= 0")
        return self


class ResidualReport(NamedTuple):
    max_abs: float
    rms: float
    h: float
    sample_count: int


class ConvergenceReport(NamedTuple):
    reports: list[ResidualReport]
    order: float | None


def _row_halfwidths(grid):
    h = grid.h
    n_rows = int(math.floor((grid.t_max - grid.t_min) / h + 1e-9)) + 1
    t_rows = grid.t_min + h * np.arange(n_rows)
    half = np.floor((t_rows - grid.x_margin) / h + 1e-9).astype(np.int64)
    return t_rows, half


def _evaluate_block(sampler, t_rows, half, h):
    """Sample rows ``t_rows`` (with one halo row each side) on a padded grid.

    Returns ``F`` of shape (2, n + 2, 2W + 3) holding the field where needed
    and NaN elsewhere, together with ``W``.  Column ``c`` is ``x = (c - W - 1) * h``.
    """
    n = len(t_rows)
    W = int(half.max()) if n else -1
    need = np.full(n + 2, -1, dtype=np.int64)
    need[1:-1] = np.maximum(need[1:-1], half + 1)
    need[:-2] = np.maximum(need[:-2], half)
    need[2:] = np.maximum(need[2:], half)
    rows_t = np.concatenate([[t_rows[0] - h], t_rows, [t_rows[-1] + h]])
    width = 2 * W + 3
    F = np.full((2, n + 2, width), np.nan, dtype=np.complex128)
    ks, cols = [], []
    for k, w in enumerate(need):
        if w < 0:
            continue
        idx = np.arange(-w, w + 1)
        ks.append(np.full(idx.shape, k))
        cols.append(idx)
    if not ks:
        return F, W
    k = np.concatenate(ks)
    i = np.concatenate(cols)
    vals = np.asarray(sampler(i * h, rows_t[k]), dtype=np.complex128)
    if vals.shape != (2, k.size):
        raise DomainError(f"sampler returned shape {vals.shape}, expected {(2, k.size)}")
    F[:, k, i + W + 1] = vals
    return F, W


def _block_residual(F, W, half, h, m):
    centre = F[:, 1:-1, 1:-1]
    dt = (F[:, 2:, 1:-1] - F[:, :-2, 1:-1]) / (2 * h)
    dx = (F[:, 1:-1, 2:] - F[:, 1:-1, :-2]) / (2 * h)
    r0 = 1j * dt[0] + 1j * dx[0] + m * centre[1]
    r1 = 1j * dt[1] - 1j * dx[1] + m * centre[0]
    norm2 = np.abs(r0) ** 2 + np.abs(r1) ** 2
    cols = np.arange(-W, W + 1)
    mask = np.abs(cols)[None, :] <= half[:, None]
    return norm2[mask]


def dirac_residual(solution: Sampler, m: float, grid: GridSpec) -> ResidualReport:
    """Max and RMS of the residual norm over the interior grid points."""
    grid.validate()
    t_rows, half = _row_halfwidths(grid)
    keep = half >= 0
    t_rows, half = t_rows[keep], half[keep]
    peak = 0.0
    sumsq = 0.0
    count = 0
    for start in range(0, len(t_rows), _ROW_BLOCK):
        tr = t_rows[start:start + _ROW_BLOCK]
        hw = half[start:start + _ROW_BLOCK]
        F, W = _evaluate_block(solution, tr, hw, grid.h)
        norm2 = _block_residual(F, W, hw, grid.h, m)
        if norm2.size:
            if not np.all(np.isfinite(norm2)):
                raise DomainError("residual is not finite; sampler produced NaN/Inf on the stencil")
            peak = max(peak, float(norm2.max()))
            sumsq += float(norm2.sum())
            count += norm2.size
    if count == 0:
        raise DomainError("grid has no interior points")
    return ResidualReport(math.sqrt(peak), math.sqrt(sumsq / count), grid.h, count)


def residual_convergence(solution: Sampler, m: float, grid: GridSpec,
                         h_list: Sequence[float]) -> ConvergenceReport:
    """Residual reports for decreasing spacings and the fitted order in ``h``."""
    if len(h_list) < 3:
        raise DomainError("need at least three grid spacings")
    reports = [dirac_residual(solution, m, replace(grid, h=h)) for h in h_list]
    order = estimate_order([1 / r.h for r in reports], [r.max_abs for r in reports])
    return ConvergenceReport(reports, order)


def independence_check(x: float, t: float, m: float) -> float:
    """``|Psi_pp * Psi_mm - Psi_pm**2|``, the determinant of ``[Psi1 Psi2]``."""
    pp = psi_component(x, t, m, "pp")
    pm = psi_component(x, t, m, "pm")
    mm = psi_component(x, t, m, "mm")
    return abs(pp * mm - pm * pm)


def corrupted_field(m: float, kind: str = "cosine", which: int = 1) -> Sampler:
    """Deliberately wrong fields for negative controls.

    ``'cosine'`` swaps J0(m tau) for cos(m tau); ``'scale'`` multiplies the
    first component by ``1 + 1e-3``.
    """
    exact = spinor_field(m, which)
    if kind == "scale":
        def field(x, t):
            v = exact(x, t)
            v[0] *= 1 + 1e-3
            return v
    elif kind == "cosine":
        slot = 1 if which == 1 else 0

        def field(x, t):
            v = exact(x, t)
            tau = np.sqrt((np.asarray(t) - x) * (np.asarray(t) + x))
            v[slot] = np.cos(m * tau)
            return v
    else:
        raise DomainError(f"unknown corruption {kind!r}")
    return field


def independence_grid(m: float, grid: GridSpec) -> tuple[float, int]:
    """Smallest ``|det[Psi1 Psi2]|`` over the interior points of ``grid`` and the point count."""
    grid.validate()
    t_rows, half = _row_halfwidths(grid)
    xs, ts = [], []
    for t, w in zip(t_rows, half):
        if w >= 0:
            i = np.arange(-w, w + 1)
            xs.append(i * grid.h)
            ts.append(np.full(i.shape, t))
    x = np.concatenate(xs)
    t = np.concatenate(ts)
    p1 = spinor_field(m, 1)(x, t)
    p2 = spinor_field(m, 2)(x, t)
    det = np.abs(p1[0] * p2[1] - p1[1] * p2[0])
    return float(det.min()), int(det.size)
