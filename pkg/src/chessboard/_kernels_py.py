"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``.

Same contract: inputs are squared arguments ``s = z**2``; the whole array is
iterated until every element's latest term is below tolerance.
"""
import numpy as np

MAX_TERMS = 400
TERM_TOL = 1e-17


def _series(s, term0, shift):
    s = np.asarray(s, dtype=np.float64)
    q = 0.25 * s
    term = np.full(s.shape, term0)
    total = term.copy()
    for k in range(1, MAX_TERMS + 1):
        term = term * (-q / (k * (k + shift)))
        total = total + term
        if np.all(np.abs(term) < TERM_TOL * np.maximum(1.0, np.abs(total))):
            break
    return total


def j0_sq(s):
    """J0(sqrt(s)) elementwise."""
    return _series(s, 1.0, 0.0)


def j1oz_sq(s):
    """J1(sqrt(s)) / sqrt(s) elementwise, equal to 1/2 at s = 0."""
    return _series(s, 0.5, 1.0)


def bessel_pair_sq(s):
    return j0_sq(s), j1oz_sq(s)
