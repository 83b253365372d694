"""Closed-form spinor components from Bessel power series.

Scalar functions sum the power series in exact rational arithmetic (every
finite float is a dyadic rational), using the usual term recurrence and
stopping once a term drops below ``1e-17 * max(1, |partial sum|)``.  The only
rounding is the final conversion to float, so the scalar values are accurate
to an ulp or so over the whole range where the series is practical, with no
cancellation loss at moderate arguments.

The grid functions (``psi_component_array``, ``spinor_field``) use the float64
kernels from :mod:`chessboard.kernels`, which are fast but lose relative
accuracy as the argument grows; they are meant for the cone interior at
moderate ``m * tau``.

Components are labelled end-then-start: ``'mp'`` is Psi_{-+}.  All of them
depend on the endpoint through ``m * tau`` with ``tau = sqrt(t**2 - x**2)``
(equivalently ``m * t / gamma``); the (+,+) and (-,-) components also carry
the light-cone prefactor ``(t + x) / tau`` or ``(t - x) / tau``, which is
folded into ``J1(z)/z`` so nothing is divided by ``tau``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import DomainError

COMPONENTS = ("pp", "pm", "mp", "mm")

#: Magnitude of negative ``z**2`` accepted as roundoff and clamped to zero.
NEGATIVE_SQUARE_TOL = 1e-12

_TERM_SCALE = 10**17


class SpacetimePoint(NamedTuple):
    x: float
    t: float


class KinematicFactors(NamedTuple):
    v: float
    gamma: float
    tau: float


def kinematics(x: float, t: float) -> KinematicFactors:
    """Velocity, Lorentz factor and proper time of the straight line to ``(x, t)``."""
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    if abs(x) > t:
        raise DomainError(f"|x| must not exceed t, got x={x}, t={t}")
    v = x / t
    tau = math.sqrt((t - x) * (t + x))
    gamma = math.inf if tau == 0 else t / tau
    return KinematicFactors(v, gamma, tau)


def _finite(value, name):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a real number, got {value!r}") from None
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value}")
    return value


def _series(q: Fraction, order: int) -> Fraction:
    """sum_k (-q)^k / (k! (k+order)!) for order 0 or 1, exactly."""
    term = Fraction(1, math.factorial(order))
    total = term
    k = 0
    while True:
        k += 1
        term = -term * q / (k * (k + order))
        total += term
        if abs(term) * _TERM_SCALE < max(1, abs(total)):
            return total


def bessel_j0(z: float) -> float:
    """Bessel function J0 from its power series."""
    z = Fraction(_finite(z, "z"))
    return float(_series(z * z / 4, 0))


def bessel_j1(z: float) -> float:
    """Bessel function J1 from its power series."""
    z = Fraction(_finite(z, "z"))
    return float(z / 2 * _series(z * z / 4, 1))


def _square_arg(z_squared, continuation):
    s = _finite(z_squared, "z_squared")
    if s < 0:
        if s >= -NEGATIVE_SQUARE_TOL and not continuation:
            s = 0.0
        elif not continuation:
            raise DomainError(
                f"z_squared={s} is negative; pass continuation=True for the modified-Bessel branch"
            )
    return Fraction(s)


def j0_of_square(z_squared: float, continuation: bool = False) -> float:
    """J0(z) as a series in z**2; negative input continues analytically to I0."""
    return float(_series(_square_arg(z_squared, continuation) / 4, 0))


def j1_over_z(z_squared: float, continuation: bool = False) -> float:
    """J1(z)/z as a series in z**2, finite at z = 0 where it equals 1/2."""
    return float(_series(_square_arg(z_squared, continuation) / 4, 1) / 2)


def _check_point(x, t, m, continuation):
    x = _finite(x, "x")
    t = _finite(t, "t")
    m = _finite(m, "m")
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    if m < 0:
        raise DomainError(f"mass must be nonnegative, got {m}")
    if abs(x) > t and not continuation:
        raise DomainError(f"point (x={x}, t={t}) lies outside the light cone")
    return x, t, m


def _check_component(component):
    if component not in COMPONENTS:
        raise DomainError(f"component must be one of {COMPONENTS}, got {component!r}")


def psi_component(x: float, t: float, m: float, component: str, *, continuation: bool = False) -> complex:
    """One closed-form component at ``(x, t)``.

    ``'mp'`` and ``'pm'`` give ``J0(m tau)``; ``'pp'`` gives
    ``i (t + x) / tau * J1(m tau)`` and ``'mm'`` the same with ``t - x``.
    With ``continuation=True`` points with ``|x| > t`` are evaluated through
    the even series in ``tau**2 < 0``.
    """
    _check_component(component)
    x, t, m = _check_point(x, t, m, continuation)
    fx, ft, fm = Fraction(x), Fraction(t), Fraction(m)
    q = fm * fm * (ft - fx) * (ft + fx) / 4
    if component in ("mp", "pm"):
        return complex(float(_series(q, 0)), 0.0)
    lead = ft + fx if component == "pp" else ft - fx
    return complex(0.0, float(lead * fm * _series(q, 1) / 2))


def spinor_solutions(x: float, t: float, m: float, *, continuation: bool = False):
    """``(Psi1, Psi2)`` with ``Psi1 = (Psi_pp, Psi_pm)`` and ``Psi2 = (Psi_pm, Psi_mm)``."""
    pp = psi_component(x, t, m, "pp", continuation=continuation)
    pm = psi_component(x, t, m, "pm", continuation=continuation)
    mm = psi_component(x, t, m, "mm", continuation=continuation)
    return (pp, pm), (pm, mm)


def _check_arrays(x, t, m, continuation):
    x = np.asarray(x, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    if m < 0 or not math.isfinite(m):
        raise DomainError(f"mass must be nonnegative and finite, got {m}")
    if np.any(~(t > 0)):
        raise DomainError("t must be positive")
    if not continuation and np.any(np.abs(x) > t):
        raise DomainError("grid reaches outside the light cone")
    return np.broadcast_arrays(x, t)


def psi_component_array(x, t, m: float, component: str, *, continuation: bool = False) -> np.ndarray:
    """Vectorised :func:`psi_component` over broadcastable ``x`` and ``t``."""
    _check_component(component)
    x, t = _check_arrays(x, t, m, continuation)
    s = m * m * (t - x) * (t + x)
    if component in ("mp", "pm"):
        return kernels.j0_sq(s).astype(np.complex128)
    lead = t + x if component == "pp" else t - x
    return 1j * (lead * m * kernels.j1oz_sq(s))


def spinor_field(m: float, which: int = 1, *, continuation: bool = False):
    """Sampler ``f(x, t) -> array of shape (2, ...)`` for Psi1 or Psi2."""
    if which not in (1, 2):
        raise DomainError(f"solution index must be 1 or 2, got {which}")

    def field(x, t):
        x, t = _check_arrays(x, t, m, continuation)
        s = m * m * (t - x) * (t + x)
        j0, j1oz = kernels.bessel_pair_sq(s)
        pm = j0.astype(np.complex128)
        if which == 1:
            return np.stack([1j * ((t + x) * m * j1oz), pm])
        return np.stack([pm, 1j * ((t - x) * m * j1oz)])

    field.__name__ = f"psi{which}_m{m:g}"
    return field
