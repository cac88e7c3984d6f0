"""Exhaustive census of thick labelled graphs: t(n) and c(n).

Graph ``i`` on ``n`` vertices is read off the binary digits of ``i``: the
lower triangle is filled row by row, ``j`` from 0 to n-1 and ``k < j``
inside each row, least significant digit first.  For every thick graph,
c(n) accumulates its number of cliques with at least two vertices plus
``n + 1`` for the empty clique and the singletons.
"""

from __future__ import annotations

import itertools
import multiprocessing
from dataclasses import dataclass
from pathlib import Path

from .graph import Graph, count_cliques_ge2
from .racg import oracle_in_T, thick_fixed_point

MAX_N = 9
CHECKPOINT_EVERY = 2**30


class CheckpointError(ValueError):
    pass


@dataclass(frozen=True)
class CensusResult:
    n: int
    t: int
    c: int
    graphs_scanned: int

    def sentence(self) -> str:
        return (f"There are {self.t} thick graphs on {self.n} labelled vertices, "
                f"and {self.c} cliques in their disjoint union.")


def pair_order(n: int) -> list[tuple[int, int]]:
    return [(j, k) for j in range(n) for k in range(j)]


def graph_at(index: int, n: int) -> Graph:
    adj = [0] * n
    b = 0
    for j in range(n):
        for k in range(j):
            if index >> b & 1:
                adj[j] |= 1 << k
                adj[k] |= 1 << j
            b += 1
    return Graph._trusted(n, adj)


def index_of(g: Graph) -> int:
    return sum(1 << b for b, (j, k) in enumerate(pair_order(g.n)) if g.has_edge(j, k))


def scan_range(n: int, start: int, end: int) -> tuple[int, int]:
    """Thick count and clique total over indices ``start <= i < end``."""
    pairs = pair_order(n)
    bitpairs = [(1 << j, 1 << k, j, k) for j, k in pairs]
    t = c = 0
    for i in range(start, end):
        adj = [0] * n
        rest = i
        b = 0
        while rest:
            if rest & 1:
                bj, bk, j, k = bitpairs[b]
                adj[j] |= bk
                adj[k] |= bj
            rest >>= 1
            b += 1
        g = Graph._trusted(n, adj)
        if thick_fixed_point(g).spans():
            t += 1
            c += count_cliques_ge2(g) + n + 1
    return t, c


def _scan_task(args):
    n, start, end = args
    t, c = scan_range(n, start, end)
    return n, start, end, t, c


def plan_ranges(n: int, chunk: int | None = None) -> list[tuple[int, int]]:
    """Index ranges, independent of the worker count."""
    total = 1 << (n * (n - 1) // 2)
    if chunk is None:
        chunk = min(CHECKPOINT_EVERY, max(1 << 12, total // 64))
    return [(s, min(s + chunk, total)) for s in range(0, total, chunk)]


def read_checkpoint(path: Path, n: int) -> dict[tuple[int, int], tuple[int, int]]:
    done = {}
    if not path.exists():
        return done
    for no, line in enumerate(path.read_text().splitlines(), start=1):
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "RESULT":
            if int(parts[1]) != n:
                raise CheckpointError(f"{path}:{no}: result is for n={parts[1]}, expected n={n}")
            continue
        if len(parts) != 5:
            raise CheckpointError(f"{path}:{no}: malformed checkpoint line")
        cn, start, end, t, c = map(int, parts)
        if cn != n:
            raise CheckpointError(f"{path}:{no}: checkpoint is for n={cn}, expected n={n}")
        done[(start, end)] = (t, c)
    return done


def census(n: int, workers: int = 1, checkpoint=None, chunk: int | None = None,
           progress=None) -> CensusResult:
    if n > MAX_N:
        raise ValueError(f"census refuses n={n} > {MAX_N}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    ranges = plan_ranges(n, chunk)
    ckpt = Path(checkpoint) if checkpoint else None
    done = read_checkpoint(ckpt, n) if ckpt else {}
    if done and not set(done) <= set(ranges):
        raise CheckpointError("checkpoint ranges do not match this run's range plan")
    todo = [(n, s, e) for s, e in ranges if (s, e) not in done]
    sink = ckpt.open("a") if ckpt else None
    try:
        if workers > 1 and len(todo) > 1:
            pool = multiprocessing.get_context("spawn").Pool(workers)
            results = pool.imap(_scan_task, todo, chunksize=1)
        else:
            pool = None
            results = map(_scan_task, todo)
        for cn, s, e, t, c in results:
            done[(s, e)] = (t, c)
            if sink:
                sink.write(f"{cn} {s} {e} {t} {c}\n")
                sink.flush()
            if progress:
                progress(s, e, t, c)
        if pool:
            pool.close()
            pool.join()
        t = sum(v[0] for v in done.values())
        c = sum(v[1] for v in done.values())
        if sink:
            sink.write(f"RESULT {n} {t} {c}\n")
    finally:
        if sink:
            sink.close()
    return CensusResult(n, t, c, 1 << (n * (n - 1) // 2))


def census_bruteforce(n: int) -> CensusResult:
    """Independent path: edge subsets via itertools, thickness by the
    definitional oracle, cliques by power-set filtering."""
    edges = list(itertools.combinations(range(n), 2))
    t = c = 0
    for chosen in itertools.product((False, True), repeat=len(edges)):
        es = {e for e, on in zip(edges, chosen) if on}
        g = Graph.from_edges(n, es)
        if oracle_in_T(g, limit=n):
            t += 1
            for r in range(n + 1):
                for S in itertools.combinations(range(n), r):
                    if all(p in es for p in itertools.combinations(S, 2)):
                        c += 1
    return CensusResult(n, t, c, 1 << len(edges))


# Published values for n = 9, used as regression inputs by the bounds.
T9 = 14853635863
C9 = 683846354560
