"""Bit-level model of the n-dimensional hypercube.

Vertices are plain integers in ``0 .. 2**n - 1``.  Entry ``i`` of the
vector notation ``(v_0, ..., v_{n-1})`` is bit ``i``, least significant
first, so the unit vector ``e_i`` is ``1 << i``, flipping entry ``i`` is an
XOR, and deleting entry ``i`` is a shift-and-mask.  Two vertices are
adjacent when they differ in exactly one entry.

``MAX_DIM`` caps the dimension so every vertex fits comfortably in one
machine word and per-dimension tables stay small.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_DIM = 24


def check_dimension(n: int) -> None:
    """Raise ValueError unless 1 <= n <= MAX_DIM."""
    if not isinstance(n, int) or not 1 <= n <= MAX_DIM:
        raise ValueError(f"dimension must be an integer in 1..{MAX_DIM}, got {n!r}")


def check_vertex(v: int, n: int) -> None:
    """Raise ValueError unless v is a vertex of the n-cube."""
    check_dimension(n)
    if not 0 <= v < (1 << n):
        raise ValueError(f"vertex {v} out of range for dimension {n}")


def parity(v: int) -> int:
    """Parity (0 or 1) of the Hamming weight of v."""
    return v.bit_count() & 1


def drop_entry(v: int, i: int) -> int:
    """Delete entry i of v: bits below i stay put, bits above shift down."""
    if i < 0:
        raise ValueError(f"entry index must be nonnegative, got {i}")
    return (v & ((1 << i) - 1)) | ((v >> (i + 1)) << i)


def insert_entry(v: int, i: int, bit: int = 0) -> int:
    """Inverse of drop_entry: make room at position i and place ``bit`` there."""
    if i < 0:
        raise ValueError(f"entry index must be nonnegative, got {i}")
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit}")
    return (v & ((1 << i) - 1)) | ((v >> i) << (i + 1)) | (bit << i)


def parity_excluding(v: int, i: int) -> int:
    """Parity of the Hamming weight of v with entry i suppressed."""
    return parity(drop_entry(v, i))


def neighbors(v: int, n: int) -> list[int]:
    """The n vertices adjacent to v, in increasing dimension order."""
    check_vertex(v, n)
    return [v ^ (1 << i) for i in range(n)]


def edge_dim(u: int, v: int) -> int:
    """Dimension of the edge {u, v}; raises ValueError if not adjacent."""
    x = u ^ v
    if x == 0 or x & (x - 1):
        raise ValueError(f"{u} and {v} are not hypercube-adjacent")
    return x.bit_length() - 1


def gray_code(n: int) -> list[int]:
    """Binary reflected Gray code on n bits.

    The classic doubling construction (copy the previous code, then append
    its reversal with the new top bit set) collapses to the closed form
    ``i ^ (i >> 1)``.  For n >= 2 the result is a Hamiltonian cycle of the
    n-cube.
    """
    check_dimension(n)
    return [i ^ (i >> 1) for i in range(1 << n)]


@dataclass(frozen=True, order=True)
class DimEdge:
    """An edge of the n-cube whose endpoints differ exactly at entry ``dim``.

    Canonical form: ``base`` is the endpoint with bit ``dim`` clear, so two
    DimEdge values are equal iff they name the same unordered edge.
    """

    base: int
    dim: int

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ValueError(f"dimension must be nonnegative, got {self.dim}")
        if self.base < 0 or self.base >> self.dim & 1:
            raise ValueError(f"base {self.base} must have bit {self.dim} clear")

    @classmethod
    def from_endpoints(cls, u: int, v: int) -> "DimEdge":
        d = edge_dim(u, v)
        return cls(u & ~(1 << d), d)

    @property
    def other(self) -> int:
        """The endpoint with bit ``dim`` set."""
        return self.base | (1 << self.dim)

    def endpoints(self) -> tuple[int, int]:
        return (self.base, self.other)


def dim_edge_project(edge: DimEdge) -> int:
    """Project an i-edge to a vertex of the (n-1)-cube by deleting entry i.

    Both endpoints of the edge project to the same value.
    """
    return drop_entry(edge.base, edge.dim)


def edge_class(edge: DimEdge) -> int:
    """Bipartition class (0 or 1) of an i-edge.

    Defined as the parity of either endpoint with entry i suppressed; the
    two endpoints agree because they differ only at entry i.
    """
    return parity(dim_edge_project(edge))


@dataclass(frozen=True)
class DimensionGraph:
    """The graph on all i-edges of the n-cube.

    Two i-edges are adjacent when they are opposite sides of a 4-cycle,
    i.e. one is the translate of the other along some dimension j != i.
    Projecting every i-edge by ``dim_edge_project`` is an isomorphism onto
    the (n-1)-cube.
    """

    n: int
    dim: int
    vertices: tuple[DimEdge, ...]
    edges: frozenset[tuple[DimEdge, DimEdge]]

    def adjacent(self, a: DimEdge, b: DimEdge) -> bool:
        return (a, b) in self.edges or (b, a) in self.edges

    def degree(self, e: DimEdge) -> int:
        return sum(1 for pair in self.edges if e in pair)


def dimension_graph(n: int, i: int) -> DimensionGraph:
    """Build the graph of i-edges of the n-cube (n >= 2)."""
    check_dimension(n)
    if n < 2:
        raise ValueError("dimension graphs need n >= 2")
    if not 0 <= i < n:
        raise ValueError(f"dimension index {i} out of range for n={n}")
    bases = [insert_entry(w, i) for w in range(1 << (n - 1))]
    vertices = tuple(DimEdge(b, i) for b in bases)
    edges: set[tuple[DimEdge, DimEdge]] = set()
    for e in vertices:
        for j in range(n):
            if j == i:
                continue
            f = DimEdge(e.base ^ (1 << j), i)
            edges.add((e, f) if e < f else (f, e))
    return DimensionGraph(n, i, vertices, frozenset(edges))
