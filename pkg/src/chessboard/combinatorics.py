"""Exact counting and brute-force enumeration of chessboard paths.

A path is a sequence of N light-speed segments, each either to the right (+1)
or to the left (-1).  A *bend* sits between two adjacent segments of opposite
sign.  Paths are classified by their endpoint content ``(P, Q)`` (number of
right and left segments), by the direction of the first and last segment, and
by the number of bends ``R``.

Closed-form counts follow from run compositions: a path that starts in
direction ``s`` alternates between runs of ``s`` and runs of ``-s``, so fixing
the number of runs of each kind and composing ``P`` and ``Q`` into that many
positive parts counts the class.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .errors import DomainError, OracleScaleExceeded

RIGHT = +1
LEFT = -1

#: Default cap on N for exhaustive enumeration (2**22 interior sequences).
ENUMERATION_BOUND = 24


def parse_direction(token) -> int:
    """Map ``'+'``/``'-'`` (or +1/-1) to +1/-1."""
    if token in ("+", 1, +1):
        return RIGHT
    if token in ("-", -1):
        return LEFT
    raise DomainError(f"direction must be '+' or '-', got {token!r}")


def direction_symbol(d: int) -> str:
    return "+" if d == RIGHT else "-"


@dataclass(frozen=True)
class LatticeEndpoint:
    """Endpoint of a path on the light-cone lattice.

    ``P`` right segments and ``Q`` left segments, each of duration ``epsilon``,
    reach ``x = (P - Q) * epsilon`` at ``t = (P + Q) * epsilon``.
    """

    P: int
    Q: int
    epsilon: float = 1.0

    def __post_init__(self):
        if not isinstance(self.P, int) or not isinstance(self.Q, int):
            raise DomainError("P and Q must be integers")
        if self.P < 0 or self.Q < 0:
            raise DomainError(f"P and Q must be nonnegative, got P={self.P}, Q={self.Q}")
        if self.P + self.Q < 1:
            raise DomainError("endpoint needs at least one segment (P + Q >= 1)")
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise DomainError(f"epsilon must be positive and finite, got {self.epsilon}")

    @property
    def N(self) -> int:
        return self.P + self.Q

    @property
    def x(self) -> float:
        return (self.P - self.Q) * self.epsilon

    @property
    def t(self) -> float:
        return (self.P + self.Q) * self.epsilon

    @property
    def velocity(self) -> float:
        return (self.P - self.Q) / (self.P + self.Q)

    def mirrored(self) -> "LatticeEndpoint":
        return LatticeEndpoint(self.Q, self.P, self.epsilon)


@dataclass(frozen=True)
class DirectionPair:
    """Direction of the first (``start``) and last (``end``) segment."""

    start: int
    end: int

    def __post_init__(self):
        object.__setattr__(self, "start", parse_direction(self.start))
        object.__setattr__(self, "end", parse_direction(self.end))

    @classmethod
    def from_component(cls, label: str) -> "DirectionPair":
        """Build from a component label such as ``'mp'``.

        Labels read end-then-start, matching the propagator index order:
        ``'mp'`` is the component entered moving right and left moving left.
        """
        table = {"p": RIGHT, "m": LEFT}
        try:
            end, start = table[label[0]], table[label[1]]
        except (KeyError, IndexError, TypeError):
            raise DomainError(f"unknown component {label!r}") from None
        if len(label) != 2:
            raise DomainError(f"unknown component {label!r}")
        return cls(start, end)

    @property
    def component(self) -> str:
        sym = {RIGHT: "p", LEFT: "m"}
        return sym[self.end] + sym[self.start]

    @property
    def opposite(self) -> bool:
        return self.start != self.end

    def mirrored(self) -> "DirectionPair":
        return DirectionPair(-self.start, -self.end)

    def __str__(self):
        return f"({direction_symbol(self.start)},{direction_symbol(self.end)})"


ALL_DIRECTION_PAIRS = tuple(
    DirectionPair(s, e) for s in (RIGHT, LEFT) for e in (RIGHT, LEFT)
)


class BendPositions(NamedTuple):
    right: tuple[int, ...]
    left: tuple[int, ...]
    defining: tuple[int, ...]


@dataclass(frozen=True)
class LatticePath:
    """A concrete direction sequence.

    Bend index ``j`` means the bend occurs after segment ``j`` (0-based), that
    is between segments ``j`` and ``j + 1``.
    """

    segments: tuple[int, ...]

    def __post_init__(self):
        segs = tuple(self.segments)
        if not segs:
            raise DomainError("a path needs at least one segment")
        if any(s not in (RIGHT, LEFT) for s in segs):
            raise DomainError("segments must be +1 or -1")
        object.__setattr__(self, "segments", segs)

    @classmethod
    def from_string(cls, text: str) -> "LatticePath":
        return cls(tuple(parse_direction(c) for c in text if c in "+-"))

    @property
    def N(self) -> int:
        return len(self.segments)

    @property
    def P(self) -> int:
        return sum(1 for s in self.segments if s == RIGHT)

    @property
    def Q(self) -> int:
        return self.N - self.P

    @property
    def dirs(self) -> DirectionPair:
        return DirectionPair(self.segments[0], self.segments[-1])

    @property
    def bends(self) -> tuple[int, ...]:
        s = self.segments
        return tuple(j for j in range(len(s) - 1) if s[j] != s[j + 1])

    @property
    def R(self) -> int:
        return len(self.bends)

    def __str__(self):
        return "".join(direction_symbol(s) for s in self.segments)


def _check_class(P, Q, R=None):
    if R is not None and R < 0:
        raise DomainError(f"bend count must be nonnegative, got R={R}")
    if P < 0 or Q < 0:
        raise DomainError(f"P and Q must be nonnegative, got P={P}, Q={Q}")
    if P + Q < 1:
        raise DomainError("endpoint needs at least one segment (P + Q >= 1)")


def _split(P, Q, dirs):
    """Segment counts along and against the start direction."""
    return (P, Q) if dirs.start == RIGHT else (Q, P)


def _comb(n, k):
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def count_paths(endpoint, dirs: DirectionPair, R: int) -> int:
    """Exact number of paths with content ``(P, Q)``, endpoint directions ``dirs`` and ``R`` bends.

    ``endpoint`` may be a :class:`LatticeEndpoint` or a ``(P, Q)`` pair.
    Returns 0 for classes ruled out by parity or run feasibility.
    """
    P, Q = _pq(endpoint)
    _check_class(P, Q, R)
    a, b = _split(P, Q, dirs)
    if R == 0:
        # straight path: every segment in the start direction
        return 1 if (not dirs.opposite and b == 0) else 0
    if a == 0 or b == 0:
        return 0
    if dirs.opposite:
        if R % 2 == 0:
            return 0
        r = (R - 1) // 2
        # r + 1 runs of each kind
        return _comb(a - 1, r) * _comb(b - 1, r)
    if R % 2:
        return 0
    r = R // 2
    # r + 1 runs along the start direction, r runs against it
    return _comb(a - 1, r) * _comb(b - 1, r - 1)


def admissible_bends(endpoint, dirs: DirectionPair) -> range:
    """Bend counts of the right parity between 0 and N - 1."""
    P, Q = _pq(endpoint)
    _check_class(P, Q)
    first = 1 if dirs.opposite else 0
    return range(first, P + Q, 2)


def count_table(endpoint, dirs: DirectionPair) -> dict[int, int]:
    """``{R: count}`` over every parity-admissible R."""
    return {R: count_paths(endpoint, dirs, R) for R in admissible_bends(endpoint, dirs)}


def _pq(endpoint):
    if isinstance(endpoint, LatticeEndpoint):
        return endpoint.P, endpoint.Q
    P, Q = endpoint
    return int(P), int(Q)


def enumerate_paths(endpoint, dirs: DirectionPair, bound: int = ENUMERATION_BOUND) -> Iterator[LatticePath]:
    """Yield every path of the class exactly once, by exhaustive placement.

    The first and last segment are pinned by ``dirs``; the remaining right
    segments are placed over the interior positions in every possible way.
    """
    P, Q = _pq(endpoint)
    _check_class(P, Q)
    N = P + Q
    if N > bound:
        raise OracleScaleExceeded(N, bound)
    if N == 1:
        if dirs.opposite:
            return
        if (P == 1 and dirs.start == RIGHT) or (Q == 1 and dirs.start == LEFT):
            yield LatticePath((dirs.start,))
        return
    pinned_right = (dirs.start == RIGHT) + (dirs.end == RIGHT)
    pinned_left = 2 - pinned_right
    free_right = P - pinned_right
    if free_right < 0 or Q - pinned_left < 0:
        return
    interior = N - 2
    for right_slots in itertools.combinations(range(interior), free_right):
        middle = [LEFT] * interior
        for k in right_slots:
            middle[k] = RIGHT
        yield LatticePath((dirs.start, *middle, dirs.end))


def bend_positions(path: LatticePath) -> BendPositions:
    """Split the bends of ``path`` into right/left turns and the defining subset.

    A right bend turns onto a +1 segment, a left bend onto a -1 segment.  The
    defining bends are all but one: the last bend turning away from the start
    direction is dropped, since the endpoint and the remaining bends fix it.
    For start != end this is the final bend of the path; for start == end it is
    the final turn away from the start direction, just before the closing run.
    """
    s = path.segments
    bends = path.bends
    right = tuple(j for j in bends if s[j + 1] == RIGHT)
    left = tuple(j for j in bends if s[j + 1] == LEFT)
    if not bends:
        return BendPositions(right, left, ())
    away = right if s[0] == LEFT else left
    dropped = away[-1]
    defining = tuple(j for j in bends if j != dropped)
    return BendPositions(right, left, defining)


def total_sequences(endpoint, start) -> int:
    """Number of sequences with given content and first segment, regardless of the last."""
    P, Q = _pq(endpoint)
    _check_class(P, Q)
    a = P if parse_direction(start) == RIGHT else Q
    return _comb(P + Q - 1, a - 1)
