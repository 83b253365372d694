import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chessboard.combinatorics import ALL_DIRECTION_PAIRS, DirectionPair, LatticeEndpoint
from chessboard.errors import DomainError
from chessboard.pathsum import (
    ORIGINAL,
    STATUS_EMPTY,
    STATUS_LARGE_STEP,
    SumSpec,
    convergence_scan,
    estimate_order,
    modified_sum,
    oracle_sum,
    original_sum,
    path_sum,
    snap_endpoint,
)

from oracles import bend_count, all_sequences, j0_oracle, j1_oracle

PM = DirectionPair("+", "-")
MP = DirectionPair("-", "+")
PP = DirectionPair("+", "+")
MM = DirectionPair("-", "-")


def spec(P, Q, dirs, m=1.0, eps=0.1, **kw):
    return SumSpec(LatticeEndpoint(P, Q, eps), dirs, m, **kw)


def close(a, b, rel):
    return abs(a - b) <= rel * max(abs(a), abs(b))


def test_single_path():
    assert modified_sum(spec(1, 1, PM, m=3.0)).value == 1
    assert original_sum(spec(1, 1, PM, eps=0.5, convention=ORIGINAL)).value == 0.5j
    assert oracle_sum(spec(1, 1, PM)).value == 1


def test_hand_expanded_equal_directions():
    # only r=1 survives: C(1,1) C(0,0) (0.1 i)^1
    res = modified_sum(spec(2, 1, PP, m=1.0, eps=0.1))
    assert res.value == pytest.approx(0.1j, abs=1e-17)
    assert oracle_sum(spec(2, 1, PP, m=1.0, eps=0.1)).value == pytest.approx(0.1j, abs=1e-17)


def test_sum_against_per_sequence_oracle():
    # weights from the tests' own enumeration and bend counting
    m, eps = 1.0, 0.3
    for P, Q in [(4, 3), (5, 5), (6, 2)]:
        for d in ALL_DIRECTION_PAIRS:
            ref = 0j
            for seq in all_sequences(P, Q, d.start, d.end):
                ref += (1j * m * eps) ** max(bend_count(seq) - 1, 0)
            got = modified_sum(spec(P, Q, d, m, eps)).value
            assert abs(got - ref) <= 1e-13 * max(1, abs(ref))


@pytest.mark.parametrize("P, Q, dirs, eps", [(2, 2, PM, 0.25), (3, 3, PP, 0.2), (5, 4, MM, 0.1)])
def test_oracle_matches(P, Q, dirs, eps):
    for conv in ("modified", "original"):
        s = spec(P, Q, dirs, 1.0, eps, convention=conv)
        assert close(path_sum(s).value, oracle_sum(s).value, 1e-12)


def test_empty_class():
    res = modified_sum(spec(3, 0, PM))
    assert res.value == 0 and res.status == STATUS_EMPTY and res.empty
    assert oracle_sum(spec(3, 0, PM)).status == STATUS_EMPTY
    assert modified_sum(spec(1, 3, PP)).status == STATUS_EMPTY


def test_straight_path_weighs_one():
    assert modified_sum(spec(4, 0, PP)).value == 1
    assert original_sum(spec(4, 0, PP, convention=ORIGINAL)).value == 1
    assert oracle_sum(spec(4, 0, PP)).value == 1
    # the one class where the exponent shift does not apply
    s = spec(4, 0, PP)
    assert original_sum(spec(4, 0, PP, convention=ORIGINAL)).value != 1j * s.step * modified_sum(s).value


def test_convention_mismatch():
    with pytest.raises(DomainError):
        modified_sum(spec(1, 1, PM, convention=ORIGINAL))
    with pytest.raises(DomainError):
        original_sum(spec(1, 1, PM))
    with pytest.raises(DomainError):
        spec(1, 1, PM, convention="feynman")


def test_normalization_hook():
    s = spec(3, 3, PM, convention=ORIGINAL)
    raw = original_sum(s).value
    scaled = original_sum(SumSpec(s.endpoint, s.dirs, s.mass, ORIGINAL, normalization=2 - 1j)).value
    assert scaled == raw * (2 - 1j)


def test_large_step_status(caplog):
    with caplog.at_level(logging.WARNING):
        res = modified_sum(spec(3, 3, PM, m=5.0, eps=0.5))
    assert res.status == STATUS_LARGE_STEP
    assert np.isfinite(res.value.real)
    assert "exceeds 1" in caplog.text


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 400), st.integers(1, 400), st.sampled_from(ALL_DIRECTION_PAIRS),
       st.floats(0.0, 3.0), st.floats(1e-3, 1.0))
def test_exponent_shift(P, Q, dirs, m, t):
    eps = t / (P + Q)
    mod = modified_sum(spec(P, Q, dirs, m, eps)).value
    org = original_sum(spec(P, Q, dirs, m, eps, convention=ORIGINAL)).value
    assert abs(org - 1j * m * eps * mod) <= 1e-15 * abs(org)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 300), st.integers(1, 300), st.floats(0.0, 4.0))
def test_component_symmetry_and_realness(P, Q, m):
    eps = 1.0 / (P + Q)
    a = modified_sum(spec(P, Q, PM, m, eps)).value
    assert a == modified_sum(spec(Q, P, MP, m, eps)).value
    assert a == modified_sum(spec(P, Q, MP, m, eps)).value
    assert a.imag == 0.0
    b = modified_sum(spec(P, Q, PP, m, eps)).value
    assert b == modified_sum(spec(Q, P, MM, m, eps)).value
    assert b.real == 0.0


@pytest.mark.parametrize("dirs", ALL_DIRECTION_PAIRS)
def test_truncation_soundness(dirs):
    s = spec(300, 200, dirs, 1.0, 1 / 500)
    full = modified_sum(s)
    # first omitted term is far below 1e-16 of the sum
    cut = SumSpec(s.endpoint, dirs, 1.0, r_max=full.max_bends + 40)
    assert close(modified_sum(cut).value, full.value, 1e-14)
    early = SumSpec(s.endpoint, dirs, 1.0, r_max=3)
    assert modified_sum(early).terms <= 2
    assert close(modified_sum(early).value, oracle_like_prefix(s, 3), 1e-15)


def oracle_like_prefix(s, r_max):
    from math import comb
    P, Q = s.endpoint.P, s.endpoint.Q
    a, b = (P, Q) if s.dirs.start == 1 else (Q, P)
    phi = 1j * s.step
    total = 0j
    for R in range(1, r_max + 1):
        if s.dirs.opposite and R % 2 == 1:
            r = (R - 1) // 2
            total += comb(a - 1, r) * comb(b - 1, r) * phi ** (R - 1)
        if not s.dirs.opposite and R % 2 == 0:
            r = R // 2
            total += comb(a - 1, r) * comb(b - 1, r - 1) * phi ** (R - 1)
    return total


def test_massless():
    for N in (10, 100, 1001):
        ep = snap_endpoint(0.0, 1.0, N)
        assert modified_sum(SumSpec(ep, PM, 0.0)).value == 1
    scan = convergence_scan(0.0, 1.0, 0.0, PM, [100, 200])
    assert all(r.value == 1 and r.abs_error == 0 for r in scan.records)
    assert scan.order is None


def test_snap_endpoint():
    ep = snap_endpoint(0.6, 1.0, 250, strict=True)
    assert (ep.P, ep.Q) == (200, 50)
    ep = snap_endpoint(0.0, 1.0, 7)
    assert (ep.P, ep.Q) == (4, 3) and ep.x == pytest.approx(1 / 7)
    with pytest.raises(DomainError):
        snap_endpoint(0.0, 1.0, 7, strict=True)
    with pytest.raises(DomainError):
        snap_endpoint(1.0, 1.0, 10)


def test_scan_x0():
    scan = convergence_scan(0.0, 1.0, 1.0, PM, [100, 200, 400, 800])
    ref = j0_oracle(1.0)
    errs = [r.abs_error for r in scan.records]
    for r in scan.records:
        assert r.reference == pytest.approx(ref, abs=1e-15)
        assert r.abs_error == abs(r.value - r.reference)
    for e0, e1 in zip(errs, errs[1:]):
        assert 0.5 * 0.8 <= e1 / e0 <= 0.5 * 1.2
    assert scan.order == pytest.approx(1.0, abs=0.2)


def test_scan_boosted_equal_directions():
    scan = convergence_scan(0.6, 1.0, 1.0, PP, [100, 200, 400, 800], strict=True)
    ref = 1j * (1.6 / 0.8) * j1_oracle(0.8)
    assert scan.records[-1].reference == pytest.approx(ref, abs=1e-14)
    assert scan.order == pytest.approx(1.0, abs=0.2)


def test_scan_domain():
    with pytest.raises(DomainError):
        convergence_scan(1.0, 1.0, 1.0, PM, [10])
    with pytest.raises(DomainError):
        convergence_scan(0.0, 1.0, 1.0, PM, [7], strict=True)


def test_estimate_order():
    assert estimate_order([1, 2, 4], [1, 0.25, 0.0625]) == pytest.approx(2.0)
    assert estimate_order([1, 2], [0, 0]) is None
