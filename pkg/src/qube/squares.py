"""Inscribed-square detection in Hamiltonian cycles of the n-cube.

An *inscribed square* is a pair of same-dimension cycle edges that are
opposite sides of a 4-cycle of the hypercube.  The two cycle edges are the
*rims* (their shared dimension is the rim dimension), the two other sides
of the 4-cycle are the *rays* (they share the ray dimension).  A square is
*straight* when the two rims are traversed in opposite directions along
the rim dimension (the cycle doubles back) and *twisted* when they are
traversed in the same direction; the classification does not depend on the
rotation or orientation of the cycle.

Detection is one hash-map pass per dimension over the projected rim
candidates: two i-edges are rims of a common square exactly when their
projections into the (n-1)-cube are adjacent there.  O(n * 2**n) per cycle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cycles import HamiltonianCycle, chromatic_vector, color
from .hypercube import drop_entry


class EquiValueUnavailable(LookupError):
    """No stored balanced-independence number for the requested dimension."""


# Bundled reference table of balanced-independence numbers for the n-cube.
# The 1- and 2-cube have no balanced independent set at all (every
# cross-class pair is an edge), and the solvers in :mod:`qube.independence`
# confirm the entries for n <= 5.  For n = 6 and 7 the solvers find strictly
# larger values (20 and 44; explicit witnesses are checked in the test
# suite), so those two reference entries are understated.  The table is kept
# verbatim because downstream thresholds and reports are defined against it;
# ``table1`` output flags the disagreement wherever a computed value is
# available.
ALPHA_EQUI_HYPERCUBE: dict[int, int] = {1: 0, 2: 0, 3: 2, 4: 4, 5: 10, 6: 16, 7: 40}

# Balanced-independence numbers actually computed by this package's solvers
# (direct branch-and-bound, cross-checked by the pair-graph reduction for
# n <= 5 and by explicit layered witnesses for n = 6, 7).
ALPHA_EQUI_COMPUTED: dict[int, int] = {1: 0, 2: 0, 3: 2, 4: 4, 5: 10, 6: 20, 7: 44}


@dataclass(frozen=True)
class InscribedSquare:
    """Two same-dimension cycle edges forming opposite sides of a 4-cycle.

    ``rim_indexes`` are the cycle positions where the two rim edges start,
    in increasing order.
    """

    rim_dim: int
    rim_indexes: tuple[int, int]
    kind: str  # "straight" or "twisted"
    ray_dim: int

    def to_dict(self) -> dict:
        return {
            "rim_dim": self.rim_dim,
            "kind": self.kind,
            "rim_indexes": list(self.rim_indexes),
            "ray_dim": self.ray_dim,
        }


def find_squares(h: HamiltonianCycle) -> list[InscribedSquare]:
    """All inscribed squares of the cycle, ordered by rim dimension and
    then rim start positions."""
    seq = h.seq
    n = h.n
    by_dim: list[list[int]] = [[] for _ in range(n)]
    for k, d in enumerate(color(h)):
        by_dim[d].append(k)
    out: list[InscribedSquare] = []
    for i in range(n):
        proj_index: dict[int, int] = {}
        for k in by_dim[i]:
            proj_index[drop_entry(seq[k], i)] = k
        for p, k in proj_index.items():
            for j in range(n - 1):
                q = p ^ (1 << j)
                if q < p:  # handle each unordered projection pair once
                    continue
                m = proj_index.get(q)
                if m is None:
                    continue
                a, b = (k, m) if k < m else (m, k)
                ray = j if j < i else j + 1
                kind = "straight" if (seq[a] ^ seq[b]) >> i & 1 else "twisted"
                out.append(InscribedSquare(i, (a, b), kind, ray))
    out.sort(key=lambda s: (s.rim_dim, s.rim_indexes))
    return out


def has_square(h: HamiltonianCycle) -> bool:
    """Whether the cycle contains any inscribed square (early exit)."""
    seq = h.seq
    n = h.n
    size = len(seq)
    buckets: list[set[int]] = [set() for _ in range(n)]
    for k in range(size):
        u = seq[k]
        x = u ^ seq[(k + 1) % size]
        i = x.bit_length() - 1
        p = drop_entry(u, i)
        bucket = buckets[i]
        for j in range(n - 1):
            if p ^ (1 << j) in bucket:
                return True
        bucket.add(p)
    return False


def rim_threshold(n: int, mode: str = "equi") -> int:
    """Dimension-usage count above which an inscribed square with that rim
    dimension is forced.

    ``independence`` mode uses the quarter-order bound 2**(n-2);
    ``equi`` mode sharpens it to the balanced-independence number of the
    (n-1)-cube, which must be stored in ALPHA_EQUI_HYPERCUBE.
    """
    if n < 2:
        raise ValueError("thresholds need n >= 2")
    if mode == "independence":
        return 1 << (n - 2)
    if mode == "equi":
        try:
            return ALPHA_EQUI_HYPERCUBE[n - 1]
        except KeyError:
            raise EquiValueUnavailable(
                f"no stored balanced-independence number for dimension {n - 1}"
            ) from None
    raise ValueError(f"unknown threshold mode {mode!r}")


@dataclass(frozen=True)
class ThresholdReport:
    """Which dimensions exceed the square-forcing threshold, and which of
    those (none, when the theory holds) lack a square with that rim."""

    mode: str
    threshold: int
    obligated_dims: tuple[int, ...]
    violations: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_threshold_implication(
    h: HamiltonianCycle, mode: str = "equi"
) -> ThresholdReport:
    """For every dimension used more than the threshold, confirm that some
    inscribed square has that rim dimension."""
    thr = rim_threshold(h.n, mode)
    counts = chromatic_vector(h)
    obligated = tuple(i for i, c in enumerate(counts) if c > thr)
    if not obligated:
        return ThresholdReport(mode, thr, (), ())
    rim_dims = {s.rim_dim for s in find_squares(h)}
    violations = tuple(i for i in obligated if i not in rim_dims)
    return ThresholdReport(mode, thr, obligated, violations)
