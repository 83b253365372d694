import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chessboard.combinatorics import (
    ALL_DIRECTION_PAIRS,
    DirectionPair,
    LatticeEndpoint,
    LatticePath,
    admissible_bends,
    bend_positions,
    count_paths,
    count_table,
    enumerate_paths,
    total_sequences,
)
from chessboard.errors import DomainError, OracleScaleExceeded

from oracles import all_sequences, counts_by_bends

PM = DirectionPair("+", "-")
MP = DirectionPair("-", "+")
PP = DirectionPair("+", "+")
MM = DirectionPair("-", "-")


@pytest.mark.parametrize(
    "P, Q, dirs, R, expected",
    [
        (1, 1, PM, 1, 1),
        (1, 1, PM, 2, 0),
        (3, 2, PM, 3, 2),
        (2, 1, PP, 2, 1),
        (2, 2, PM, 1, 1),
        (2, 2, PM, 3, 1),
        (0, 3, MM, 0, 1),
        (3, 0, PP, 0, 1),
        (3, 1, PP, 0, 0),
        (6, 5, PM, 5, 60),
        (5, 4, PP, 6, 12),
    ],
)
def test_count_examples(P, Q, dirs, R, expected):
    assert count_paths((P, Q), dirs, R) == expected


def test_count_rejects_bad_input():
    with pytest.raises(DomainError):
        count_paths((1, 1), PM, -1)
    with pytest.raises(DomainError):
        count_paths((0, 0), PM, 1)
    with pytest.raises(DomainError):
        LatticeEndpoint(0, 0)


def test_counts_are_exact_at_large_n():
    # C(n, k) products far beyond float range stay exact integers
    n = count_paths((600, 600), PM, 601)
    assert n == math.comb(599, 300) ** 2
    assert n.bit_length() > 1000


def test_enumerate_examples():
    assert [str(p) for p in enumerate_paths((1, 1), PM)] == ["+-"]
    paths = sorted(str(p) for p in enumerate_paths((2, 2), PM))
    assert paths == ["++--", "+-+-"]
    assert [str(p) for p in enumerate_paths((0, 3), MM)] == ["---"]
    assert [p.R for p in enumerate_paths((0, 3), MM)] == [0]
    assert list(enumerate_paths((1, 0), PM)) == []


def test_enumerate_bound():
    with pytest.raises(OracleScaleExceeded) as info:
        next(enumerate_paths((13, 12), PM))
    assert info.value.n_segments == 25
    assert next(enumerate_paths((13, 12), PM, bound=25)).N == 25


@pytest.mark.parametrize("N", range(1, 11))
def test_enumeration_matches_product_oracle(N):
    for P in range(N + 1):
        for dirs in ALL_DIRECTION_PAIRS:
            mine = sorted(p.segments for p in enumerate_paths((P, N - P), dirs))
            ref = sorted(all_sequences(P, N - P, dirs.start, dirs.end))
            assert mine == ref


@pytest.mark.parametrize("N", range(1, 12))
def test_counts_match_product_oracle(N):
    for P in range(N + 1):
        for dirs in ALL_DIRECTION_PAIRS:
            ref = counts_by_bends(P, N - P, dirs.start, dirs.end)
            for R in range(N + 1):
                assert count_paths((P, N - P), dirs, R) == ref.get(R, 0)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 60), st.integers(0, 60), st.integers(0, 120))
def test_reflection_symmetry(P, Q, R):
    if P + Q == 0:
        return
    assert count_paths((P, Q), PM, R) == count_paths((Q, P), MP, R)
    assert count_paths((P, Q), PP, R) == count_paths((Q, P), MM, R)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 40), st.integers(0, 40))
def test_total_count_identity(P, Q):
    total = sum(
        count_paths((P, Q), DirectionPair("+", end), R)
        for end in "+-"
        for R in range(P + Q)
    )
    assert total == total_sequences((P, Q), "+") == math.comb(P + Q - 1, P - 1)


def test_parity_of_admissible_bends():
    assert list(admissible_bends((3, 2), PM)) == [1, 3]
    assert list(admissible_bends((3, 2), PP)) == [0, 2, 4]
    assert count_table((3, 2), PM) == {1: 1, 3: 2}


def test_bend_positions_simple():
    bp = bend_positions(LatticePath.from_string("+-"))
    assert bp.left == (0,) and bp.right == () and bp.defining == ()
    bp = bend_positions(LatticePath.from_string("+-++"))
    assert len(bp.left) + len(bp.right) == 2
    # final left bend is the non-defining one
    assert bp.left == (0,) and bp.right == (1,) and bp.defining == (1,)
    assert bend_positions(LatticePath.from_string("+++")).defining == ()


def test_bend_positions_figure_path():
    # five bends, three to the left and two to the right
    path = LatticePath.from_string("++-+--+-")
    bp = bend_positions(path)
    assert path.R == 5
    assert len(bp.left) == 3 and len(bp.right) == 2
    assert len(bp.defining) == 4
    assert bp.defining == path.bends[:-1]


def test_bend_positions_mirror_rule():
    bp = bend_positions(LatticePath.from_string("-+--"))
    assert bp.right == (0,) and bp.left == (1,)
    assert bp.defining == (1,)


@pytest.mark.parametrize("N", range(1, 13))
def test_defining_bends_are_injective(N):
    for P in range(N + 1):
        for dirs in ALL_DIRECTION_PAIRS:
            seen = {}
            for path in enumerate_paths((P, N - P), dirs):
                bp = bend_positions(path)
                assert len(bp.left) + len(bp.right) == path.R
                assert len(bp.defining) == max(path.R - 1, 0)
                key = bp.defining
                assert key not in seen, (path, seen.get(key))
                seen[key] = path


def test_endpoint_kinematics():
    ep = LatticeEndpoint(3, 1, 0.25)
    assert ep.N == 4 and ep.x == 0.5 and ep.t == 1.0 and ep.velocity == 0.5
    assert ep.mirrored() == LatticeEndpoint(1, 3, 0.25)


def test_direction_pair_labels():
    assert PM.component == "mp"
    assert MP.component == "pm"
    assert DirectionPair.from_component("pp") == PP
    assert DirectionPair.from_component("mp") == PM
    with pytest.raises(DomainError):
        DirectionPair.from_component("px")
    with pytest.raises(DomainError):
        DirectionPair("x", "+")
