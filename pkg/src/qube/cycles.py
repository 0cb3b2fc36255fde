"""Validation and per-dimension analysis of Hamiltonian cycles of the n-cube.

A cycle is stored as the visiting order of all ``2**n`` vertices.  The edge
leaving position ``k`` (to position ``k+1``, cyclically) is said to *start*
at ``k``; its dimension is the *color* of position ``k``.  Analysis of one
dimension always happens on the normalized rotation, whose first edge runs
along that dimension out of a vertex with that bit clear.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .hypercube import (
    DimEdge,
    check_dimension,
    edge_class,
    edge_dim,
    gray_code,
    parity_excluding,
)


class CycleError(ValueError):
    """A raw vertex sequence is not a valid Hamiltonian cycle."""


class WrongLength(CycleError):
    """The sequence does not have exactly 2**n entries."""


class InvalidVertex(CycleError):
    """Some entry is not a vertex of the n-cube."""


class DuplicateVertex(CycleError):
    """Some vertex appears more than once."""


class NonAdjacentStep(CycleError):
    """Two consecutive entries are not hypercube-adjacent."""

    def __init__(self, index: int, u: int, v: int):
        super().__init__(f"step {index}: {u} -> {v} is not a hypercube edge")
        self.index = index


class NotClosed(CycleError):
    """The last entry is not adjacent to the first."""


class DimensionUnused(ValueError):
    """The requested dimension does not occur in the cycle."""


@dataclass(frozen=True)
class HamiltonianCycle:
    """A Hamiltonian cycle of the n-cube; build a checked one with
    :func:`validate_cycle`."""

    n: int
    seq: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.seq)

    def __getitem__(self, k: int) -> int:
        return self.seq[k]

    def rotated(self, k: int) -> "HamiltonianCycle":
        """The same cycle started k positions later."""
        k %= len(self.seq)
        return HamiltonianCycle(self.n, self.seq[k:] + self.seq[:k])

    def reversed_cycle(self) -> "HamiltonianCycle":
        """The same edge set traversed in the opposite direction, keeping
        the starting vertex."""
        return HamiltonianCycle(self.n, self.seq[:1] + self.seq[:0:-1])

    def edge_set(self) -> frozenset[DimEdge]:
        """The cycle's edges as canonical (base, dim) pairs."""
        size = len(self.seq)
        return frozenset(
            DimEdge.from_endpoints(self.seq[k], self.seq[(k + 1) % size])
            for k in range(size)
        )

    def to_dict(self) -> dict:
        return {"n": self.n, "seq": list(self.seq)}

    @classmethod
    def from_dict(cls, obj: dict) -> "HamiltonianCycle":
        """Parse and validate the JSON object form {"n": ..., "seq": [...]}."""
        try:
            n = int(obj["n"])
            seq = [int(x) for x in obj["seq"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise CycleError(f"malformed cycle object: {exc}") from None
        return validate_cycle(n, seq)


def validate_cycle(n: int, seq: Sequence[int]) -> HamiltonianCycle:
    """Check that ``seq`` walks every vertex of the n-cube exactly once
    along edges and closes up; return the cycle or raise a CycleError."""
    check_dimension(n)
    values = tuple(int(v) for v in seq)
    size = 1 << n
    if len(values) != size:
        raise WrongLength(f"expected {size} vertices for n={n}, got {len(values)}")
    for v in values:
        if not 0 <= v < size:
            raise InvalidVertex(f"vertex {v} out of range for n={n}")
    if len(set(values)) != size:
        dup = next(v for v, c in Counter(values).items() if c > 1)
        raise DuplicateVertex(f"vertex {dup} appears more than once")
    for k in range(size - 1):
        u, v = values[k], values[k + 1]
        if (u ^ v).bit_count() != 1:
            raise NonAdjacentStep(k, u, v)
    if (values[-1] ^ values[0]).bit_count() != 1:
        raise NotClosed(f"{values[-1]} -> {values[0]} does not close the cycle")
    return HamiltonianCycle(n, values)


def gray_cycle(n: int) -> HamiltonianCycle:
    """The binary reflected Gray code as a validated cycle (n >= 2)."""
    if n < 2:
        raise ValueError("a Hamiltonian cycle needs n >= 2")
    return validate_cycle(n, gray_code(n))


def color(h: HamiltonianCycle) -> list[int]:
    """Dimension of the edge starting at each position of the cycle."""
    seq = h.seq
    size = len(seq)
    return [edge_dim(seq[k], seq[(k + 1) % size]) for k in range(size)]


def chromatic_vector(h: HamiltonianCycle) -> tuple[int, ...]:
    """How many cycle edges run along each dimension."""
    counts = [0] * h.n
    for d in color(h):
        counts[d] += 1
    return tuple(counts)


@dataclass(frozen=True)
class ChromaticCheck:
    """Pointwise necessary conditions on a dimension-usage histogram.

    A sixth condition -- closure of the admissible histograms under
    permutation -- cannot be decided from one histogram; it is exercised
    through :func:`permute_dims` instead.
    """

    all_even: bool
    none_zero: bool
    total_is_order: bool
    max_at_most_half: bool
    min_at_least_two: bool

    @property
    def ok(self) -> bool:
        return (
            self.all_even
            and self.none_zero
            and self.total_is_order
            and self.max_at_most_half
            and self.min_at_least_two
        )

    def failures(self) -> list[str]:
        return [
            name
            for name in (
                "all_even",
                "none_zero",
                "total_is_order",
                "max_at_most_half",
                "min_at_least_two",
            )
            if not getattr(self, name)
        ]


def check_chromatic_conditions(counts: Sequence[int], n: int) -> ChromaticCheck:
    """Evaluate the pointwise conditions for ``counts`` to be the
    dimension-usage histogram of some Hamiltonian cycle of the n-cube."""
    check_dimension(n)
    if len(counts) != n:
        raise ValueError(f"expected {n} counts, got {len(counts)}")
    size = 1 << n
    return ChromaticCheck(
        all_even=all(c % 2 == 0 for c in counts),
        none_zero=all(c != 0 for c in counts),
        total_is_order=sum(counts) == size,
        max_at_most_half=max(counts) <= size // 2,
        min_at_least_two=min(counts) >= 2,
    )


def permute_dims(h: HamiltonianCycle, perm: Sequence[int]) -> HamiltonianCycle:
    """Relabel dimensions: bit i of every vertex moves to bit perm[i].

    The image is again a Hamiltonian cycle, and its dimension-usage
    histogram is the corresponding rearrangement of the original one.
    """
    perm = list(perm)
    if sorted(perm) != list(range(h.n)):
        raise ValueError(f"not a permutation of 0..{h.n - 1}: {perm}")

    def remap(v: int) -> int:
        out = 0
        for i, j in enumerate(perm):
            if v >> i & 1:
                out |= 1 << j
        return out

    return HamiltonianCycle(h.n, tuple(remap(v) for v in h.seq))


def normalize(h: HamiltonianCycle, i: int) -> HamiltonianCycle:
    """Rotate (and, if it were ever necessary, reverse) the cycle so that
    the edge starting at position 0 runs along dimension i out of a vertex
    with bit i clear.

    The earliest qualifying start position wins, trying the forward
    orientation first; for valid cycles the forward orientation always
    contains a qualifying position, so the result is deterministic.
    """
    if not 0 <= i < h.n:
        raise ValueError(f"dimension index {i} out of range for n={h.n}")
    for cand in (h, h.reversed_cycle()):
        for k, d in enumerate(color(cand)):
            if d == i and not cand.seq[k] >> i & 1:
                return cand.rotated(k)
    raise DimensionUnused(f"no edge of dimension {i} in the cycle")


@dataclass(frozen=True)
class DimensionProfile:
    """Everything about one dimension of a cycle, after normalization.

    ``parity_list`` is built by the alternating gap recurrence from the
    first vertex; ``parity_direct`` reads the class of each i-edge straight
    off the normalized cycle.  On every valid cycle the two agree.
    """

    dim: int
    normalized: HamiltonianCycle
    index_list: tuple[int, ...]
    start_vertices: tuple[int, ...]
    edge_list: tuple[DimEdge, ...]
    segments: tuple[int, ...]
    parity_list: tuple[int, ...]
    parity_direct: tuple[int, ...]


def dimension_profile(h: HamiltonianCycle, i: int) -> DimensionProfile:
    """Collect the positions, start vertices, edges, gap lengths and edge
    classes of dimension i, with respect to the normalized rotation."""
    norm = normalize(h, i)
    seq = norm.seq
    size = len(seq)
    idx = [k for k, d in enumerate(color(norm)) if d == i]
    starts = [seq[k] for k in idx]
    edges = [DimEdge.from_endpoints(seq[k], seq[(k + 1) % size]) for k in idx]
    gaps = [idx[k + 1] - idx[k] for k in range(len(idx) - 1)]
    gaps.append(size - idx[-1])
    bits = [parity_excluding(seq[0], i)]
    for k in range(1, len(idx)):
        bits.append((bits[-1] + idx[k] - idx[k - 1] + 1) % 2)
    direct = [parity_excluding(seq[k], i) for k in idx]
    return DimensionProfile(
        dim=i,
        normalized=norm,
        index_list=tuple(idx),
        start_vertices=tuple(starts),
        edge_list=tuple(edges),
        segments=tuple(gaps),
        parity_list=tuple(bits),
        parity_direct=tuple(direct),
    )


def check_balance(h: HamiltonianCycle, i: int) -> bool:
    """True when the i-edges of the cycle split evenly between the two
    classes.  A False return is a counterexample to the balance law, not
    an error."""
    bits = dimension_profile(h, i).parity_list
    return 2 * sum(bits) == len(bits)


def check_segment_sums(h: HamiltonianCycle, i: int) -> bool:
    """True when the even-position and odd-position gap lengths of
    dimension i each sum to half the cycle length."""
    segs = dimension_profile(h, i).segments
    half = 1 << (h.n - 1)
    return sum(segs[0::2]) == half and sum(segs[1::2]) == half


class NotAMatching(ValueError):
    """The given edges are not pairwise vertex-disjoint."""


@dataclass(frozen=True)
class MatchingReport:
    """Per-dimension class tallies of a partial matching, plus the frozen
    dimensions whose class imbalance rules out extension to a Hamiltonian
    cycle that uses no further edge of any frozen dimension."""

    n: int
    class_counts: tuple[tuple[int, int], ...]
    frozen_dims: tuple[int, ...]
    blocked_dims: tuple[int, ...]

    @property
    def no_extension(self) -> bool:
        return bool(self.blocked_dims)


def matching_obstruction(
    n: int, matching: Iterable[DimEdge], frozen: Iterable[int] = ()
) -> MatchingReport:
    """Tally the matching's edges per dimension and class, and report the
    frozen dimensions whose tallies differ (these block any Hamiltonian
    extension, because a full cycle needs every dimension balanced)."""
    check_dimension(n)
    edges = list(matching)
    covered: set[int] = set()
    for e in edges:
        if e.dim >= n or e.other >= (1 << n):
            raise ValueError(f"edge {e} does not fit in the {n}-cube")
        for v in e.endpoints():
            if v in covered:
                raise NotAMatching(f"vertex {v} is covered twice")
            covered.add(v)
    counts = [[0, 0] for _ in range(n)]
    for e in edges:
        counts[e.dim][edge_class(e)] += 1
    frozen_t = tuple(sorted(set(frozen)))
    for i in frozen_t:
        if not 0 <= i < n:
            raise ValueError(f"frozen dimension {i} out of range for n={n}")
    blocked = tuple(i for i in frozen_t if counts[i][0] != counts[i][1])
    return MatchingReport(n, tuple((a, b) for a, b in counts), frozen_t, blocked)
