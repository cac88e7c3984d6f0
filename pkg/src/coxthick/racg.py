"""Thickness versus relative hyperbolicity for right-angled Coxeter groups.

The presentation graph is thick when its whole vertex set can be built from
induced squares by coning (adding a vertex whose link in the current set is
not a clique) and by unions of two thick sets whose intersection is not a
clique.  The fixed point of those two moves is a pool of vertex sets whose
maximal members are the peripheral subgraphs.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field

from .graph import (
    Graph,
    _components,
    _is_clique_fast,
    bits,
    common_neighbor_candidates,
    induced_squares_bruteforce,
    mask_of,
    members,
    missing_edge_count,
    universal_vertices,
)


class Status(str, enum.Enum):
    FINITE = "Finite"
    VIRTUALLY_CYCLIC = "VirtuallyCyclic"
    THICK = "Thick"
    HYPERBOLIC = "Hyperbolic"
    RELATIVELY_HYPERBOLIC = "RelativelyHyperbolic"

    def __str__(self):
        return self.value


ORACLE_LIMIT = 7


class OracleLimitError(ValueError):
    pass


@dataclass
class ThickPool:
    """Vertex sets (bitmasks) of a fixed graph, each derivable as thick."""

    graph: Graph
    members: list[int]
    trace: list[str] | None = None

    def maximal(self) -> list[int]:
        by_vertex: dict[int, list[int]] = {}
        for m in set(self.members):
            for v in bits(m):
                by_vertex.setdefault(v, []).append(m)
        out = []
        for m in set(self.members):
            low = (m & -m).bit_length() - 1
            if not any(o != m and m & o == m for o in by_vertex[low]):
                out.append(m)
        return sorted(out)

    def spans(self) -> bool:
        full = self.graph.vertex_mask
        return self.graph.n > 0 and any(m == full for m in self.members)

    def as_sets(self) -> set[frozenset[int]]:
        return {frozenset(members(m)) for m in self.maximal()}


@dataclass
class RacgReport:
    status: Status
    order0: bool = False
    peripherals: list[tuple[int, ...]] = field(default_factory=list)
    pool_trace: list[str] | None = None

    def as_dict(self) -> dict:
        return {
            "status": self.status.value,
            "order0": self.order0,
            "peripherals": [list(p) for p in self.peripherals],
        }


# --------------------------------------------------------------------------
# production fixed point


class _Pool:
    """Cone-closed members with a vertex -> member index for merge lookups."""

    def __init__(self, g: Graph, trace: list[str] | None):
        self.g = g
        self.adj = g.adj
        self.members: dict[int, int] = {}
        self.index: list[set[int]] = [set() for _ in range(g.n)]
        self.next_id = 0
        self.trace = trace

    def covered(self, u: int) -> int:
        cov = 0
        for mid in self.index[u]:
            cov |= self.members[mid]
        return cov

    def _cone_close(self, M: int) -> int:
        adj = self.adj
        queue = []
        frontier = 0
        for v in bits(M):
            frontier |= adj[v]
        frontier &= ~M
        for v in bits(frontier):
            if not _is_clique_fast(adj, adj[v] & M):
                queue.append(v)
        while queue:
            x = queue.pop()
            if M >> x & 1:
                continue
            M |= 1 << x
            if self.trace is not None:
                self.trace.append(f"cone {x}")
            # x's new neighbours become eligible when x is not adjacent to
            # some vertex already in their link.
            far = ~adj[x] & M & ~(1 << x)
            for v in bits(adj[x] & ~M):
                if adj[v] & far:
                    queue.append(v)
        return M

    def _remove(self, mid: int) -> int:
        M = self.members.pop(mid)
        for v in bits(M):
            self.index[v].discard(mid)
        return M

    def add(self, M: int) -> None:
        adj = self.adj
        while True:
            M = self._cone_close(M)
            overlap: dict[int, int] = {}
            for v in bits(M):
                for mid in self.index[v]:
                    overlap[mid] = overlap.get(mid, 0) + 1
            merged = False
            for mid, k in overlap.items():
                if k >= 2 and not _is_clique_fast(adj, self.members[mid] & M):
                    other = self._remove(mid)
                    if self.trace is not None:
                        self.trace.append(f"union {members(other)} + {members(M)}")
                    M |= other
                    merged = True
            if not merged:
                break
        mid = self.next_id
        self.next_id += 1
        self.members[mid] = M
        for v in bits(M):
            self.index[v].add(mid)


def thick_fixed_point(g: Graph, *, trace: bool = False) -> ThickPool:
    """Saturate the pool of induced squares under coning and unions.

    Squares are discovered lazily: a nonadjacent pair already lying in a
    common cone-closed member cannot produce anything new, since both other
    corners of any square on that pair are common neighbours of the pair.
    """
    log = [] if trace else None
    pool = _Pool(g, log)
    adj = g.adj
    full = g.vertex_mask
    for u in range(g.n):
        higher = full & ~((1 << (u + 1)) - 1)
        if not (higher & ~adj[u] & ~pool.covered(u)):
            continue
        for w in common_neighbor_candidates(g, u, 2, only_nonadjacent=True):
            if pool.covered(u) >> w & 1:
                continue
            common = adj[u] & adj[w]
            for t in bits(common):
                rest = common & ~adj[t] & ~((1 << (t + 1)) - 1)
                if rest:
                    x = (rest & -rest).bit_length() - 1
                    if log is not None:
                        log.append(f"square {sorted((u, w, t, x))}")
                    pool.add((1 << u) | (1 << w) | (1 << t) | (1 << x))
                    break
    return ThickPool(g, sorted(pool.members.values()), log)


def thick_fixed_point_naive(g: Graph, rng: random.Random | None = None) -> ThickPool:
    """Direct transcription of the square/union/cone loop; test oracle.

    With ``rng`` the union and cone moves are applied in random order.
    """
    adj = g.adj
    pool = list(dict.fromkeys(induced_squares_bruteforce(g)))
    nonadj = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not adj[u] >> v & 1]
    changed = True
    while changed:
        changed = False
        pairs = list(itertools.combinations(range(len(pool)), 2))
        if rng:
            rng.shuffle(pairs)
        for i, j in pairs:
            inter = pool[i] & pool[j]
            if any(inter >> a & 1 and inter >> b & 1 for a, b in nonadj):
                union = pool[i] | pool[j]
                pool = [m for k, m in enumerate(pool) if k not in (i, j)] + [union]
                changed = True
                break
        if changed:
            continue
        order = [(k, v) for k in range(len(pool)) for v in range(g.n)]
        if rng:
            rng.shuffle(order)
        for k, v in order:
            M = pool[k]
            if M >> v & 1:
                continue
            if any(M >> a & 1 and M >> b & 1 and adj[v] >> a & 1 and adj[v] >> b & 1
                   for a, b in nonadj):
                pool[k] = M | 1 << v
                changed = True
                break
    pool = list(dict.fromkeys(pool))
    pool = [m for m in pool if not any(m != o and m & o == m for o in pool)]
    return ThickPool(g, sorted(pool))


# --------------------------------------------------------------------------
# classification


def is_thick_order0(g: Graph) -> bool:
    """Whether ``g`` is a join of two non-cliques, times a clique."""
    rest = g.vertex_mask & ~universal_vertices(g)
    if not rest:
        return False
    full = g.vertex_mask
    comp_adj = [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)]
    return len(_components(comp_adj, rest)) > 1


def classify_racg(g: Graph, *, trace: bool = False) -> RacgReport:
    missing = missing_edge_count(g)
    if missing == 0:
        return RacgReport(Status.FINITE)
    if missing == 1:
        return RacgReport(Status.VIRTUALLY_CYCLIC)
    pool = thick_fixed_point(g, trace=trace)
    if pool.spans():
        return RacgReport(Status.THICK, order0=is_thick_order0(g), pool_trace=pool.trace)
    if not pool.members:
        return RacgReport(Status.HYPERBOLIC, pool_trace=pool.trace)
    peripherals = [members(m) for m in pool.maximal()]
    return RacgReport(Status.RELATIVELY_HYPERBOLIC, peripherals=peripherals, pool_trace=pool.trace)


# --------------------------------------------------------------------------
# definitional oracle


def thick_derivable_sets(g: Graph, limit: int = ORACLE_LIMIT) -> set[int]:
    """Every vertex subset derivable as thick, by brute-force closure.

    Starts from all induced squares and closes under: add ``v`` whose link
    in the set has a nonadjacent pair; union of two derivable sets whose
    intersection has a nonadjacent pair.
    """
    if g.n > limit:
        raise OracleLimitError(f"oracle refuses n={g.n} > {limit}")
    adj = g.adj
    n = g.n

    def nonclique(S):
        return not _is_clique_fast(adj, S)

    seen: set[int] = set()
    work = []
    for quad in itertools.combinations(range(n), 4):
        S = mask_of(quad)
        if sorted((adj[v] & S).bit_count() for v in quad) == [2, 2, 2, 2]:
            seen.add(S)
            work.append(S)
    done: list[int] = []
    while work:
        Y = work.pop()
        new = []
        for v in range(n):
            if not Y >> v & 1 and nonclique(adj[v] & Y):
                new.append(Y | 1 << v)
        for Z in done:
            if nonclique(Y & Z):
                new.append(Y | Z)
        done.append(Y)
        for X in new:
            if X not in seen:
                seen.add(X)
                work.append(X)
    return seen


def oracle_in_T(g: Graph, limit: int = ORACLE_LIMIT) -> bool:
    return g.n > 0 and g.vertex_mask in thick_derivable_sets(g, limit)


def maximal_thick_sets_oracle(g: Graph, limit: int = ORACLE_LIMIT) -> set[frozenset[int]]:
    sets = thick_derivable_sets(g, limit)
    return {frozenset(members(m)) for m in sets if not any(m != o and m & o == m for o in sets)}


def is_join_bruteforce(g: Graph) -> bool:
    """Join of two non-cliques times a clique, by exhaustive bipartition search."""
    universal = universal_vertices(g)
    for K in range(1 << g.n):
        if K & ~universal:
            continue
        rest = members(g.vertex_mask & ~K)
        for r in range(1, len(rest)):
            for A in itertools.combinations(rest, r):
                Am = mask_of(A)
                Bm = mask_of(rest) & ~Am
                if all(g.adj[a] & Bm == Bm for a in A) and \
                        not _is_clique_fast(g.adj, Am) and not _is_clique_fast(g.adj, Bm):
                    return True
    return False
