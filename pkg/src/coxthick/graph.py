"""Finite simplicial graphs with bit-packed adjacency.

Vertices are ``0..n-1``.  Every neighbour set, and every vertex subset
handed around the package, is a Python ``int`` used as a bitmask: bit ``v``
set means vertex ``v`` is a member.  Graphs are immutable once built.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple

import numpy as np
from scipy import sparse

# Above this many vertices the 2-hop scans switch to sparse matrix products.
SPARSE_THRESHOLD = 160


class GraphFormatError(ValueError):
    """Malformed graph text; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


# --------------------------------------------------------------------------
# bitmask helpers


def bits(mask: int) -> Iterator[int]:
    """Yield the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph; ``adj[v]`` is the neighbour bitmask of ``v``."""

    n: int
    adj: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            if row & ~full:
                raise ValueError(f"neighbour of {v} out of range")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls._trusted(n, adj)

    @classmethod
    def from_matrix(cls, matrix) -> "Graph":
        a = np.asarray(matrix, dtype=bool)
        if a.size == 0:
            a = a.reshape(0, 0)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if a.diagonal().any():
            raise ValueError("adjacency matrix has a nonzero diagonal")
        if (a != a.T).any():
            raise ValueError("adjacency matrix is not symmetric")
        n = a.shape[0]
        packed = np.packbits(a, axis=1, bitorder="little")
        return cls._trusted(n, [int.from_bytes(row.tobytes(), "little") for row in packed])

    @classmethod
    def _trusted(cls, n: int, adj) -> "Graph":
        # Skips validation; callers guarantee symmetry and no loops.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", tuple(adj))
        return g

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls._trusted(n, [full ^ (1 << v) for v in range(n)])

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls._trusted(n, [0] * n)

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    # -- basic queries ----------------------------------------------------

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    @cached_property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def to_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    @cached_property
    def csr(self) -> sparse.csr_matrix:
        """0/1 adjacency as a CSR matrix (int32), built on first use."""
        e = np.array(self.edges(), dtype=np.int64).reshape(-1, 2)
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        data = np.ones(len(rows), dtype=np.int32)
        return sparse.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def complement(self) -> "Graph":
        full = self.vertex_mask
        return Graph._trusted(self.n, [full ^ row ^ (1 << v) for v, row in enumerate(self.adj)])

    def relabel(self, perm: list[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def _check_mask(self, S: int) -> None:
        if S < 0 or S >> self.n:
            raise ValueError(f"vertex set {members(S) if S >= 0 else S} out of range for n={self.n}")

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for n={self.n}")


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges()]
        offset += g.n
    return Graph.from_edges(offset, edges)


def join(*graphs: Graph) -> Graph:
    """Disjoint union plus every edge between different factors."""
    edges, offset, ranges = [], 0, []
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges()]
        ranges.append(range(offset, offset + g.n))
        offset += g.n
    for r1, r2 in itertools.combinations(ranges, 2):
        edges += [(u, v) for u in r1 for v in r2]
    return Graph.from_edges(offset, edges)


# --------------------------------------------------------------------------
# subgraph queries


def induced(g: Graph, S: int) -> Graph:
    """Induced subgraph on ``S``, relabelled in increasing vertex order."""
    g._check_mask(S)
    verts = members(S)
    index = {v: i for i, v in enumerate(verts)}
    adj = []
    for v in verts:
        adj.append(mask_of(index[u] for u in bits(g.adj[v] & S)))
    return Graph._trusted(len(verts), adj)


def nonadjacent_pair(g: Graph, S: int) -> tuple[int, int] | None:
    """Some pair ``u < v`` in ``S`` with no edge, or None if ``S`` is a clique."""
    g._check_mask(S)
    rest = S
    for u in bits(S):
        rest ^= 1 << u
        miss = rest & ~g.adj[u]
        if miss:
            return u, lowest(miss)
    return None


def is_clique(g: Graph, S: int) -> bool:
    return nonadjacent_pair(g, S) is None


def link_in(g: Graph, v: int, S: int) -> int:
    g._check_vertex(v)
    g._check_mask(S)
    return g.adj[v] & S


def _is_clique_fast(adj, S: int) -> bool:
    # Unchecked variant for hot loops.
    rest = S
    while rest:
        low = rest & -rest
        rest ^= low
        if rest & ~adj[low.bit_length() - 1]:
            return False
    return True


# --------------------------------------------------------------------------
# structure queries


class ComponentShape(NamedTuple):
    vertices: int
    size: int
    edges: int
    is_tree: bool
    is_unicyclic: bool


def components(g: Graph) -> list[int]:
    """Connected components as bitmasks, ordered by smallest vertex."""
    return _components(g.adj, g.vertex_mask)


def _components(adj, within: int) -> list[int]:
    out = []
    left = within
    while left:
        seed = left & -left
        comp = seed
        frontier = seed
        while frontier:
            reach = 0
            for v in bits(frontier):
                reach |= adj[v]
            reach &= within & ~comp
            comp |= reach
            frontier = reach
        out.append(comp)
        left &= ~comp
    return out


def complement_components(g: Graph) -> list[int]:
    return components(g.complement())


def universal_vertices(g: Graph) -> int:
    full = g.vertex_mask
    return mask_of(v for v in range(g.n) if g.adj[v] | (1 << v) == full)


def missing_edges(g: Graph) -> list[tuple[int, int]]:
    full = g.vertex_mask
    out = []
    for u in range(g.n):
        miss = full & ~g.adj[u] & ~((1 << (u + 1)) - 1)
        out += [(u, v) for v in bits(miss)]
    return out


def missing_edge_count(g: Graph) -> int:
    return g.n * (g.n - 1) // 2 - g.num_edges


def component_census(g: Graph) -> list[ComponentShape]:
    out = []
    for comp in components(g):
        size = comp.bit_count()
        e = sum((g.adj[v] & comp).bit_count() for v in bits(comp)) // 2
        out.append(ComponentShape(comp, size, e, e == size - 1, e == size))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


# --------------------------------------------------------------------------
# pattern search


def common_neighbor_candidates(g: Graph, u: int, min_common: int, *, only_nonadjacent: bool,
                               above: bool = True) -> list[int]:
    """Vertices ``w`` (``w > u`` when ``above``) sharing at least ``min_common``
    neighbours with ``u``."""
    adj = g.adj
    excl = adj[u] if only_nonadjacent else 0
    excl |= (1 << (u + 1)) - 1 if above else 1 << u
    if g.n <= SPARSE_THRESHOLD:
        reach = 0
        for t in bits(adj[u]):
            reach |= adj[t]
        reach &= ~excl
        nu = adj[u]
        return [w for w in bits(reach) if (nu & adj[w]).bit_count() >= min_common]
    a = g.csr
    nbrs = a.indices[a.indptr[u]:a.indptr[u + 1]]
    if len(nbrs) < min_common:
        return []
    counts = np.asarray(a[nbrs].sum(axis=0)).ravel()
    ws = np.flatnonzero(counts >= min_common)
    return [int(w) for w in ws if not excl >> int(w) & 1]


def induced_squares(g: Graph) -> list[int]:
    """Every vertex set inducing a 4-cycle, once each, as bitmasks.

    A square is found from its diagonal containing its smallest vertex:
    ``u`` nonadjacent to ``w``, with a nonadjacent pair ``t, x`` among their
    common neighbours, all larger than ``u``.
    """
    out = []
    adj = g.adj
    for u in range(g.n):
        for w in common_neighbor_candidates(g, u, 2, only_nonadjacent=True):
            common = adj[u] & adj[w] & ~((1 << (u + 1)) - 1)
            for t in bits(common):
                for x in bits(common & ~adj[t] & ~((1 << (t + 1)) - 1)):
                    out.append((1 << u) | (1 << w) | (1 << t) | (1 << x))
    return out


def induced_squares_bruteforce(g: Graph) -> list[int]:
    out = []
    for quad in itertools.combinations(range(g.n), 4):
        S = mask_of(quad)
        degs = sorted((g.adj[v] & S).bit_count() for v in quad)
        # 2-regular on 4 vertices is exactly the 4-cycle.
        if degs == [2, 2, 2, 2]:
            out.append(S)
    return out


def find_induced_k23(g: Graph) -> int | None:
    """A 5-set inducing K_{2,3}, or None."""
    adj = g.adj
    for u in range(g.n):
        for w in common_neighbor_candidates(g, u, 3, only_nonadjacent=True):
            common = adj[u] & adj[w]
            for a in bits(common):
                rest = common & ~adj[a] & ~((1 << (a + 1)) - 1)
                for b in bits(rest):
                    c = rest & ~adj[b] & ~((1 << (b + 1)) - 1)
                    if c:
                        return (1 << u) | (1 << w) | (1 << a) | (1 << b) | (c & -c)
    return None


def find_k23_subgraph(g: Graph) -> tuple[int, int, int] | None:
    """Two vertices with three common neighbours (a K_{2,3}, not necessarily
    induced): returns ``(u, w, common_mask)`` or None."""
    for u in range(g.n):
        ws = common_neighbor_candidates(g, u, 3, only_nonadjacent=False)
        if ws:
            return u, ws[0], g.adj[u] & g.adj[ws[0]]
    return None


class PatternSummary(NamedTuple):
    induced_k22: list[int]
    contains_induced_k23: bool
    contains_k23: bool


def pattern_search(g: Graph) -> PatternSummary:
    return PatternSummary(
        induced_squares(g),
        find_induced_k23(g) is not None,
        find_k23_subgraph(g) is not None,
    )


# --------------------------------------------------------------------------
# cliques


def count_cliques_ge2(g: Graph) -> int:
    """Number of cliques with at least two vertices.

    Each clique is reached once by extending it only with vertices larger
    than its current maximum.
    """
    adj = g.adj

    def extend(cand: int) -> int:
        total = 0
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            # cand now holds only vertices above v
            total += 1 + extend(cand & adj[v])
        return total

    total = 0
    for j in range(g.n):
        total += extend(adj[j] >> (j + 1) << (j + 1))
    return total


def iter_cliques(g: Graph, max_size: int) -> Iterator[int]:
    """All cliques (including the empty one) with at most ``max_size`` vertices."""
    adj = g.adj

    def rec(clique: int, size: int, cand: int):
        yield clique
        if size == max_size:
            return
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            yield from rec(clique | low, size + 1, cand & adj[v])

    yield from rec(0, 0, g.vertex_mask)


def clique_number(g: Graph, within: int | None = None) -> int:
    adj = g.adj
    best = 0

    def rec(size: int, cand: int):
        nonlocal best
        if size + cand.bit_count() <= best:
            return
        if not cand:
            best = max(best, size)
            return
        while cand:
            if size + cand.bit_count() <= best:
                return
            low = cand & -cand
            cand ^= low
            rec(size + 1, cand & adj[low.bit_length() - 1])
        best = max(best, size)

    rec(0, g.vertex_mask if within is None else within)
    return best


def default_separator_bound(g: Graph) -> int:
    if g.n == 0:
        return 0
    return min(20, 1 + max(clique_number(g, g.adj[v]) for v in range(g.n)))


def find_separating_clique(g: Graph, max_clique_size: int | None = None) -> tuple[int, ...] | None:
    """A smallest clique whose removal disconnects ``g``.

    Returns ``()`` when ``g`` is already disconnected (the empty clique
    separates) and ``None`` when no clique of size at most
    ``max_clique_size`` separates.
    """
    if not is_connected(g):
        return ()
    if max_clique_size is None:
        max_clique_size = default_separator_bound(g)
    full = g.vertex_mask
    # smallest separators first
    for K in sorted(iter_cliques(g, max_clique_size), key=int.bit_count):
        if not K:
            continue
        rest = full & ~K
        if rest.bit_count() >= 2 and len(_components(g.adj, rest)) > 1:
            return members(K)
    return None


def has_separating_clique(g: Graph, max_clique_size: int | None = None) -> bool:
    return find_separating_clique(g, max_clique_size) is not None


# --------------------------------------------------------------------------
# text formats


def _data_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line


def _ints(line: str, no: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise GraphFormatError(f"expected integers, got {line!r}", no) from None


def parse_graph(text: str) -> Graph:
    """Parse an edge-list (``n m`` header) or adjacency-matrix (``n`` header) graph."""
    lines = list(_data_lines(text))
    if not lines:
        raise GraphFormatError("empty graph file")
    no, head = lines[0]
    header = _ints(head, no)
    if len(header) == 2:
        return _parse_edge_list(header, lines[1:], no)
    if len(header) == 1:
        return _parse_matrix(header[0], lines[1:], no)
    raise GraphFormatError("header must be 'n m' or 'n'", no)


def _parse_edge_list(header, body, head_no) -> Graph:
    n, m = header
    if n < 0 or m < 0:
        raise GraphFormatError("negative vertex or edge count", head_no)
    if len(body) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(body)}", head_no)
    seen = set()
    for no, line in body:
        pair = _ints(line, no)
        if len(pair) != 2:
            raise GraphFormatError("edge line must have two vertices", no)
        u, v = pair
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", no)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range 0..{n - 1}", no)
        e = (min(u, v), max(u, v))
        if e in seen:
            raise GraphFormatError(f"duplicate edge {u} {v}", no)
        seen.add(e)
    return Graph.from_edges(n, seen)


def _parse_matrix(n, body, head_no) -> Graph:
    if n < 0:
        raise GraphFormatError("negative vertex count", head_no)
    if len(body) != n:
        raise GraphFormatError(f"expected {n} matrix rows, found {len(body)}", head_no)
    rows = []
    for no, line in body:
        row = _ints(line, no)
        if len(row) != n:
            raise GraphFormatError(f"row has {len(row)} entries, expected {n}", no)
        if any(x not in (0, 1) for x in row):
            raise GraphFormatError("matrix entries must be 0 or 1", no)
        rows.append((no, row))
    for i, (no, row) in enumerate(rows):
        if row[i]:
            raise GraphFormatError(f"nonzero diagonal at row {i}", no)
        for j in range(i):
            if row[j] != rows[j][1][i]:
                raise GraphFormatError(f"asymmetric entry at row {i}, column {j}", no)
    return Graph.from_matrix([r for _, r in rows])


def format_graph(g: Graph, fmt: str = "edges") -> str:
    if fmt == "edges":
        e = g.edges()
        return "\n".join([f"{g.n} {len(e)}"] + [f"{u} {v}" for u, v in e]) + "\n"
    if fmt == "matrix":
        a = g.to_matrix()
        return "\n".join([str(g.n)] + [" ".join(map(str, row)) for row in a]) + "\n"
    raise ValueError(f"unknown graph format {fmt!r}")


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(g: Graph, path, fmt: str = "edges") -> None:
    Path(path).write_text(format_graph(g, fmt))
