"""Exact independence and balanced-independence solvers.

``max_independent_set`` finds a maximum independent set by running branch
and bound for a maximum clique on the complement graph, with a greedy
coloring upper bound and static degree-then-index vertex order.

``equi_independence`` computes the largest *balanced* independent set of a
bipartite graph (equally many vertices from each class) by two separate
routes that must agree:

* ``reduction`` -- build the pair graph (one vertex per cross-class
  non-edge, edges between conflicting pairs) and take a maximum
  independent set there; a pair set of size k unpacks to a balanced
  independent set of size 2k.
* ``direct`` -- branch over subsets of one class, tracking the common
  non-neighbors in the other class; the answer is twice the best
  min(chosen, compatible) reached.

``brute_force_equi`` is an exhaustive subset scan kept as an oracle for
small graphs.
"""

from __future__ import annotations

from .graphs import BipartiteGraph, ReducedGraph, UndirectedGraph
from .hypercube import check_dimension, parity

MAX_SOLVER_VERTICES = 5000
BRUTE_FORCE_LIMIT = 20


class SizeLimitExceeded(ValueError):
    """The input is larger than the solver is rated for."""


def _greedy_clique(adj: list[int], order: list[int]) -> list[int]:
    """A maximal clique grown greedily along ``order``; seeds the bound."""
    best: list[int] = []
    for start in order[: min(len(order), 16)]:
        clique = [start]
        cand = adj[start]
        while cand:
            # next candidate in order that is adjacent to everything chosen
            v = -1
            for u in order:
                if cand >> u & 1:
                    v = u
                    break
            if v < 0:
                break
            clique.append(v)
            cand &= adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def _max_clique(adj: list[int]) -> tuple[int, list[int]]:
    """Exact maximum clique via branch and bound with a greedy-coloring
    upper bound.  Deterministic: vertices are relabeled into degree-then-
    index order (so the coloring walks high-degree vertices first) and
    candidates are explored highest color first."""
    orig_n = len(adj)
    if orig_n == 0:
        return 0, []
    order = sorted(range(orig_n), key=lambda v: (-adj[v].bit_count(), v))
    pos = [0] * orig_n
    for p, v in enumerate(order):
        pos[v] = p
    remapped = [0] * orig_n
    for v in range(orig_n):
        row = adj[v]
        acc = 0
        while row:
            low = row & -row
            acc |= 1 << pos[low.bit_length() - 1]
            row ^= low
        remapped[pos[v]] = acc
    adj = remapped
    n = orig_n

    best_clique = _greedy_clique(adj, list(range(n)))
    best = len(best_clique)
    cur: list[int] = []

    def color_sort(cand: int) -> tuple[list[int], list[int]]:
        """Greedy coloring of the candidate set.

        Returns vertices grouped by color class (ascending), with the
        color number as an upper bound on any clique inside the remaining
        candidates up to and including that vertex.
        """
        out_v: list[int] = []
        out_c: list[int] = []
        color = 0
        rest = cand
        while rest:
            color += 1
            avail = rest
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                out_v.append(v)
                out_c.append(color)
                rest ^= low
                avail = (avail ^ low) & ~adj[v]
        return out_v, out_c

    def expand(cand: int) -> None:
        nonlocal best, best_clique
        out_v, out_c = color_sort(cand)
        for idx in range(len(out_v) - 1, -1, -1):
            if len(cur) + out_c[idx] <= best:
                return
            v = out_v[idx]
            cur.append(v)
            nxt = cand & adj[v]
            if nxt:
                expand(nxt)
            elif len(cur) > best:
                best = len(cur)
                best_clique = cur.copy()
            cur.pop()
            cand ^= 1 << v

    expand((1 << n) - 1)
    return best, sorted(order[p] for p in best_clique)


def max_independent_set(g: UndirectedGraph) -> tuple[int, list[int]]:
    """Exact maximum independent set (size and one witness), computed as a
    maximum clique of the complement graph."""
    n = g.vertex_count
    if n > MAX_SOLVER_VERTICES:
        raise SizeLimitExceeded(f"{n} vertices exceeds the solver cap {MAX_SOLVER_VERTICES}")
    if n == 0:
        return 0, []
    full = (1 << n) - 1
    comp = [full & ~g.adj[v] & ~(1 << v) for v in range(n)]
    return _max_clique(comp)


def equi_reduction(b: BipartiteGraph) -> ReducedGraph:
    """Build the pair graph: vertices are cross-class non-edges (v0, v1);
    two pairs conflict (are adjacent) when they share a coordinate or when
    either cross combination is an edge of the original graph."""
    adj = b.graph.adj
    pairs = [
        (u, v) for u in b.class0 for v in b.class1 if not adj[u] >> v & 1
    ]
    count = len(pairs)
    rows = [0] * count
    for k in range(count):
        u0, u1 = pairs[k]
        row_u0 = adj[u0]
        row_u1 = adj[u1]
        acc = rows[k]
        for m in range(k + 1, count):
            v0, v1 = pairs[m]
            if u0 == v0 or u1 == v1 or row_u0 >> v1 & 1 or row_u1 >> v0 & 1:
                acc |= 1 << m
                rows[m] |= 1 << k
        rows[k] = acc
    rg = UndirectedGraph(count)
    rg.adj = rows
    return ReducedGraph(rg, tuple(pairs))


def unpack_pair_witness(red: ReducedGraph, pair_set: list[int]) -> list[int]:
    """Flatten an independent set of pair-graph vertices back into the
    balanced vertex set of the original bipartite graph."""
    out: set[int] = set()
    for k in pair_set:
        u, v = red.pair_labels[k]
        out.add(u)
        out.add(v)
    return sorted(out)


def _direct_balanced(b: BipartiteGraph) -> tuple[int, list[int]]:
    """Branch and bound over subsets of one class.

    State: chosen vertices ``sel`` from the branch class and the bitmask
    ``tmask`` of vertices in the other class not adjacent to any chosen
    vertex.  Any (sel, tmask) yields a balanced independent set of size
    2 * min(|sel|, |tmask|), and both quantities only shrink along a
    branch, which gives the pruning bound.
    """
    side0 = list(b.class0)
    side1 = list(b.class1)
    if len(side1) < len(side0):
        side0, side1 = side1, side0
    if not side0:
        return 0, []
    adj = b.graph.adj
    k1 = len(side1)
    full1 = (1 << k1) - 1
    nonadj: list[int] = []
    for v in side0:
        m = 0
        for p, w in enumerate(side1):
            if not adj[v] >> w & 1:
                m |= 1 << p
        nonadj.append(m)
    n0 = len(side0)

    # greedy seed: grow while the compatible side stays ahead
    seed_sel: list[int] = []
    seed_mask = full1
    for idx in range(n0):
        t2 = seed_mask & nonadj[idx]
        if t2.bit_count() > len(seed_sel):
            seed_sel.append(idx)
            seed_mask = t2
    best = min(len(seed_sel), seed_mask.bit_count())
    best_state = (seed_sel.copy(), seed_mask)

    sel: list[int] = []

    def search(cands: list[int], tmask: int, tcount: int) -> None:
        nonlocal best, best_state
        cur = min(len(sel), tcount)
        if cur > best:
            best = cur
            best_state = (sel.copy(), tmask)
        if len(sel) >= tcount:
            return  # growing sel can only shrink the minimum
        if min(len(sel) + len(cands), tcount) <= best:
            return
        depth1 = len(sel) + 1
        for pos, idx in enumerate(cands):
            t2 = tmask & nonadj[idx]
            c2 = t2.bit_count()
            if c2 <= best or min(depth1 + len(cands) - pos - 1, c2) <= best:
                continue
            sel.append(idx)
            # forward-check: drop candidates that could no longer beat best
            tail = [
                j for j in cands[pos + 1 :] if (t2 & nonadj[j]).bit_count() > best
            ]
            search(tail, t2, c2)
            sel.pop()

    search(list(range(n0)), full1, k1)
    if best == 0:
        return 0, []
    chosen0 = [side0[i] for i in best_state[0][:best]]
    chosen1: list[int] = []
    mask = best_state[1]
    while mask and len(chosen1) < best:
        low = mask & -mask
        chosen1.append(side1[low.bit_length() - 1])
        mask ^= low
    return 2 * best, sorted(chosen0 + chosen1)


def equi_independence(b: BipartiteGraph, method: str = "direct") -> tuple[int, list[int]]:
    """Largest balanced independent set of a bipartite graph: its size and
    one witness (empty when no nonempty balanced independent set exists).

    ``method`` selects the route: "reduction" (pair graph + maximum
    independent set) or "direct" (balanced branch and bound).  The two
    always agree; keeping both is the point.
    """
    if method == "reduction":
        red = equi_reduction(b)
        size, pair_set = max_independent_set(red.graph)
        return 2 * size, unpack_pair_witness(red, pair_set)
    if method == "direct":
        return _direct_balanced(b)
    raise ValueError(f"unknown method {method!r}")


def brute_force_equi(b: BipartiteGraph) -> int:
    """Exhaustive-scan oracle for the largest balanced independent set.

    Scans all vertex subsets; usable only for small graphs.
    """
    n = b.vertex_count
    if n > BRUTE_FORCE_LIMIT:
        raise SizeLimitExceeded(f"{n} vertices exceeds the oracle cap {BRUTE_FORCE_LIMIT}")
    adj = b.graph.adj
    mask0 = b.mask0
    best = 0
    for mask in range(1 << n):
        size = mask.bit_count()
        if size <= best or 2 * (mask & mask0).bit_count() != size:
            continue
        m = mask
        ok = True
        while m:
            low = m & -m
            if adj[low.bit_length() - 1] & mask:
                ok = False
                break
            m ^= low
        if ok:
            best = size
    return best


def lower_bound_set(n: int) -> list[int]:
    """A balanced maximal independent set of size 2**(n-2) in the n-cube.

    Construction: take the vertices whose first two entries are both b and
    whose total parity is b, for b = 0 and b = 1.  Needs n >= 3.
    """
    check_dimension(n)
    if n < 3:
        raise ValueError("the construction needs n >= 3")
    return [
        v
        for v in range(1 << n)
        if (v & 3) in (0, 3) and parity(v) == (v & 1)
    ]
