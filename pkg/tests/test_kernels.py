import numpy as np
import pytest

from chessboard import _kernels_py, kernels

from oracles import j0_oracle, j1_oracle

BACKENDS = [pytest.param(_kernels_py, id="python")]
if kernels.compiled_backend is not None:
    BACKENDS.append(pytest.param(kernels.compiled_backend, id="compiled"))


def test_backend_flag():
    assert kernels.BACKEND in ("compiled", "python")


@pytest.mark.parametrize("impl", BACKENDS)
def test_against_oracle(impl):
    z = np.linspace(0.0, 4.5, 46)
    s = z * z
    ref0 = np.array([j0_oracle(v) for v in z])
    ref1 = np.array([j1_oracle(v) / v if v else 0.5 for v in z])
    assert np.max(np.abs(impl.j0_sq(s) - ref0)) <= 2e-15
    assert np.max(np.abs(impl.j1oz_sq(s) - ref1)) <= 2e-15
    a, b = impl.bessel_pair_sq(s)
    assert np.array_equal(a, impl.j0_sq(s)) and np.array_equal(b, impl.j1oz_sq(s))


@pytest.mark.parametrize("impl", BACKENDS)
def test_shape_and_zero(impl):
    s = np.zeros((3, 4))
    assert impl.j0_sq(s).shape == (3, 4)
    assert np.all(impl.j1oz_sq(s) == 0.5)
    assert np.all(impl.j0_sq(s) == 1.0)


@pytest.mark.skipif(kernels.compiled_backend is None, reason="compiled kernels not built")
def test_backends_agree():
    rng = np.random.default_rng(3)
    s = rng.uniform(-4.0, 25.0, 5000)
    c, p = kernels.compiled_backend, _kernels_py
    assert np.max(np.abs(c.j0_sq(s) - p.j0_sq(s))) <= 1e-14
    assert np.max(np.abs(c.j1oz_sq(s) - p.j1oz_sq(s))) <= 1e-14
