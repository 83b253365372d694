"""Finite-N bend-amplitude sums over chessboard path classes.

Each bend contributes ``i * m * epsilon``.  Under the *modified* convention a
path is weighted by its defining bends only, ``(i m eps)**(R - 1)``; under the
*original* convention by all of them, ``(i m eps)**R``.  Summing over the
class gives ``sum_R N(R) * (i m eps)**exponent(R)``.

Within one direction pair R has fixed parity, so every term carries the same
power of ``i``.  The sums are therefore assembled as

    i**e0 * mu**e0 * sum_r c_r * (-mu**2)**r,      mu = m * eps

with ``e0`` the exponent of the fewest-bend class and ``c_r`` the path counts.
The real inner sum is built by multiplying successive binomial ratios into a
running term, so no large integer is ever formed, and accumulated with
``math.fsum``.  Both conventions share the inner sum and differ only in
``e0``.

The straight path (R = 0, possible when all segments point one way) has no
bends at all, so it weighs 1 under either convention.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import NamedTuple, Sequence

import numpy as np

from .closedform import psi_component
from .combinatorics import (
    ENUMERATION_BOUND,
    RIGHT,
    DirectionPair,
    LatticeEndpoint,
    bend_positions,
    enumerate_paths,
)
from .errors import DomainError

log = logging.getLogger(__name__)

MODIFIED = "modified"
ORIGINAL = "original"
CONVENTIONS = (MODIFIED, ORIGINAL)

STATUS_OK = "ok"
STATUS_EMPTY = "empty path class"
STATUS_LARGE_STEP = "m*epsilon > 1"

#: A term counts as negligible below this fraction of the running sum.
NEGLIGIBLE = 1e-16
#: Consecutive negligible terms needed before the default truncation stops.
NEGLIGIBLE_RUN = 3


@dataclass(frozen=True)
class SumSpec:
    """One finite-N sum.

    ``r_max`` caps the bend number R included.  ``normalization`` multiplies
    the original-convention sum (the ``A(epsilon)`` factor of the limiting
    propagator); it defaults to 1 so the raw sum is returned.
    """

    endpoint: LatticeEndpoint
    dirs: DirectionPair
    mass: float
    convention: str = MODIFIED
    r_max: int | None = None
    normalization: complex = 1.0

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            raise DomainError(f"convention must be one of {CONVENTIONS}, got {self.convention!r}")
        if not (self.mass >= 0 and math.isfinite(self.mass)):
            raise DomainError(f"mass must be nonnegative and finite, got {self.mass}")
        if self.r_max is not None and self.r_max < 0:
            raise DomainError(f"r_max must be nonnegative, got {self.r_max}")

    @property
    def step(self) -> float:
        """``m * epsilon``, the per-bend amplitude magnitude."""
        return self.mass * self.endpoint.epsilon


@dataclass(frozen=True)
class SumResult:
    value: complex
    status: str = STATUS_OK
    terms: int = 0
    max_bends: int | None = None

    @property
    def empty(self) -> bool:
        return self.status == STATUS_EMPTY


def _status(spec):
    if spec.step > 1:
        log.warning("m*epsilon = %g exceeds 1; the sum stays finite but is far from the continuum", spec.step)
        return STATUS_LARGE_STEP
    return STATUS_OK


_I_POWERS = (1 + 0j, 1j, -1 + 0j, -1j)


def _assemble(spec: SumSpec, shift: int) -> SumResult:
    P, Q = spec.endpoint.P, spec.endpoint.Q
    a, b = (P, Q) if spec.dirs.start == RIGHT else (Q, P)
    status = _status(spec)

    if not spec.dirs.opposite and b == 0:
        return SumResult(1 + 0j, status, 1, 0)
    offset = 0 if spec.dirs.opposite else 1
    if b == 0 or a - 1 < offset:
        return SumResult(0j, STATUS_EMPTY, 0, None)

    # class r has R = r_min + 2r bends; counts C(a-1, r+offset) * C(b-1, r)
    r_min = 1 + offset
    n1, n2 = a - 1, b - 1
    r_cap = min(n1 - offset, n2)
    if spec.r_max is not None:
        if spec.r_max < r_min:
            return SumResult(0j, status, 0, None)
        r_cap = min(r_cap, (spec.r_max - r_min) // 2)

    mu = spec.step
    e0 = r_min - 1 + shift
    ratio_mu = -mu * mu
    term = float(n1) if offset else 1.0
    terms = [term]
    quiet = 0
    r = 0
    while r < r_cap:
        k1 = r + offset
        term *= (n1 - k1) / (k1 + 1) * ((n2 - r) / (r + 1)) * ratio_mu
        terms.append(term)
        r += 1
        if spec.r_max is None:
            quiet = quiet + 1 if abs(term) <= NEGLIGIBLE * abs(math.fsum(terms)) else 0
            if quiet >= NEGLIGIBLE_RUN:
                break
    inner = math.fsum(terms)
    value = _I_POWERS[e0 % 4] * ((mu**e0) * inner)
    return SumResult(value, status, len(terms), r_min + 2 * r)


def _require(spec, convention):
    if spec.convention != convention:
        raise DomainError(f"expected a {convention} spec, got convention={spec.convention!r}")


def modified_sum(spec: SumSpec) -> SumResult:
    """``sum_R N(R) (i m eps)**(R-1)``: only the defining bends carry amplitude."""
    _require(spec, MODIFIED)
    return _assemble(spec, 0)


def original_sum(spec: SumSpec) -> SumResult:
    """``A * sum_R N(R) (i m eps)**R`` with every bend weighted, ``A = spec.normalization``."""
    _require(spec, ORIGINAL)
    res = _assemble(spec, 1)
    return replace(res, value=res.value * spec.normalization)


def path_sum(spec: SumSpec) -> SumResult:
    return modified_sum(spec) if spec.convention == MODIFIED else original_sum(spec)


def oracle_sum(spec: SumSpec, bound: int = ENUMERATION_BOUND) -> SumResult:
    """Per-path products summed over the enumerated class.

    Each path contributes the product of ``i m eps`` over its defining bends
    (modified) or over all its bends (original).  Independent of the counting
    formulas; limited to ``N <= bound``.
    """
    phi = 1j * spec.mass * spec.endpoint.epsilon
    total = 0j
    seen = n = 0
    max_r = None
    for path in enumerate_paths(spec.endpoint, spec.dirs, bound):
        seen += 1
        bends = path.bends
        if spec.r_max is not None and len(bends) > spec.r_max:
            continue
        weighted = bend_positions(path).defining if spec.convention == MODIFIED else bends
        amp = 1 + 0j
        for _ in weighted:
            amp *= phi
        total += amp
        n += 1
        max_r = len(bends) if max_r is None else max(max_r, len(bends))
    if seen == 0:
        return SumResult(0j, STATUS_EMPTY, 0, None)
    if spec.convention == ORIGINAL:
        total *= spec.normalization
    return SumResult(total, _status(spec), n, max_r)


def snap_endpoint(x: float, t: float, N: int, strict: bool = False) -> LatticeEndpoint:
    """Lattice endpoint with N segments nearest to ``(x, t)``.

    ``P = N (1 + x/t) / 2`` rounded half-up; in strict mode a non-integer ``P``
    is an error.  The realized position is ``endpoint.x``.
    """
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    if abs(x) >= t:
        raise DomainError(f"need |x| < t, got x={x}, t={t}")
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise DomainError(f"N must be a positive integer, got {N!r}")
    N = int(N)
    p_exact = N * (1 + x / t) / 2
    P = math.floor(p_exact + 0.5)
    if strict and abs(P - p_exact) > 1e-9 * max(1, N):
        raise DomainError(f"N={N} cannot represent x={x} at t={t} exactly (P would be {p_exact})")
    return LatticeEndpoint(P, N - P, t / N)


class ConvergenceRecord(NamedTuple):
    N: int
    P: int
    Q: int
    realized_x: float
    value: complex
    reference: complex
    abs_error: float


@dataclass(frozen=True)
class ScanResult:
    records: list[ConvergenceRecord]
    local_orders: list[float | None]
    order: float | None


def estimate_order(sizes: Sequence[float], errors: Sequence[float]) -> float | None:
    """Slope of ``-log(error)`` against ``log(size)`` by least squares."""
    pairs = [(s, e) for s, e in zip(sizes, errors) if e > 0]
    if len(pairs) < 2:
        return None
    xs = np.log([p[0] for p in pairs])
    ys = np.log([p[1] for p in pairs])
    return float(-np.polyfit(xs, ys, 1)[0])


def local_orders(sizes, errors) -> list[float | None]:
    out: list[float | None] = [None]
    for i in range(1, len(sizes)):
        e0, e1 = errors[i - 1], errors[i]
        if e0 > 0 and e1 > 0 and sizes[i] != sizes[i - 1]:
            out.append(math.log(e0 / e1) / math.log(sizes[i] / sizes[i - 1]))
        else:
            out.append(None)
    return out


def convergence_scan(x: float, t: float, m: float, dirs: DirectionPair, N_list: Sequence[int],
                     strict: bool = False) -> ScanResult:
    """Modified sums at each N against the closed form at the realized endpoint."""
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    if abs(x) >= t:
        raise DomainError(f"need |x| < t, got x={x}, t={t}")
    records = []
    for N in sorted(N_list):
        ep = snap_endpoint(x, t, N, strict)
        value = modified_sum(SumSpec(ep, dirs, m)).value
        ref = psi_component(ep.x, t, m, dirs.component)
        records.append(ConvergenceRecord(N, ep.P, ep.Q, ep.x, value, ref, abs(value - ref)))
    sizes = [r.N for r in records]
    errors = [r.abs_error for r in records]
    return ScanResult(records, local_orders(sizes, errors), estimate_order(sizes, errors))
