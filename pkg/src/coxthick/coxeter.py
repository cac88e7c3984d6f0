"""Coxeter matrices and exact finite/affine classification of diagrams.

Labels are stored as ints with ``INF = 0`` standing for an infinite label
(no relation), the same convention as the matrix file format.  Vertex
subsets are bitmasks, as in :mod:`coxthick.graph`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .graph import Graph, _components, bits, members

INF = 0


class CoxeterFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__((f"line {line}: " if line is not None else "") + message)


@dataclass(frozen=True)
class IrreducibleType:
    """``kind`` is ``finite``, ``affine`` or ``indefinite``; ``name`` is e.g.
    ``A3``, ``I2(5)``, ``~A2``."""

    kind: str
    family: str = ""
    rank: int = 0
    param: int | None = None

    @property
    def name(self) -> str:
        if self.kind == "indefinite":
            return "indefinite"
        if self.family == "I2":
            return f"I2({self.param})"
        tilde = "~" if self.kind == "affine" else ""
        return f"{tilde}{self.family}{self.rank}"

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def is_affine(self) -> bool:
        return self.kind == "affine"

    def __str__(self):
        return self.name


def _fin(family, rank, param=None):
    return IrreducibleType("finite", family, rank, param)


def _aff(family, rank):
    return IrreducibleType("affine", family, rank)


INDEFINITE = IrreducibleType("indefinite")


@dataclass(frozen=True, eq=False)
class CoxeterMatrix:
    n: int
    m: tuple[tuple[int, ...], ...]
    _spherical: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if len(self.m) != self.n or any(len(r) != self.n for r in self.m):
            raise ValueError("Coxeter matrix must be n x n")
        for i in range(self.n):
            if self.m[i][i] != 1:
                raise ValueError(f"diagonal entry ({i},{i}) must be 1")
            for j in range(i):
                if self.m[i][j] != self.m[j][i]:
                    raise ValueError(f"asymmetric labels at ({i},{j})")
                if self.m[i][j] != INF and self.m[i][j] < 2:
                    raise ValueError(f"label at ({i},{j}) must be >= 2 or infinite")
        # commuting[s]: t != s with m_st = 2; diagram[s]: t != s with m_st != 2
        full = (1 << self.n) - 1
        comm = tuple(sum(1 << t for t in range(self.n) if t != s and self.m[s][t] == 2)
                     for s in range(self.n))
        object.__setattr__(self, "commuting", comm)
        object.__setattr__(self, "diagram", tuple(full & ~c & ~(1 << s) for s, c in enumerate(comm)))

    @classmethod
    def from_labels(cls, rows: Sequence[Sequence[int | float]]) -> "CoxeterMatrix":
        """Accepts ``float('inf')`` or 0 for infinite labels."""
        conv = tuple(tuple(INF if x == float("inf") else int(x) for x in r) for r in rows)
        return cls(len(conv), conv)

    @classmethod
    def from_edges(cls, n: int, labels: dict[tuple[int, int], int | float]) -> "CoxeterMatrix":
        """Unlisted pairs get label 2 (commuting)."""
        m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for (s, t), lab in labels.items():
            lab = INF if lab == float("inf") else int(lab)
            m[s][t] = m[t][s] = lab
        return cls.from_labels(m)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def label(self, s: int, t: int) -> int:
        return self.m[s][t]

    def is_right_angled(self) -> bool:
        return all(self.m[i][j] in (2, INF) for i in range(self.n) for j in range(i))

    def _check(self, J: int) -> None:
        if J < 0 or J >> self.n:
            raise ValueError(f"subset out of range for n={self.n}")

    # -- subsets ----------------------------------------------------------

    def perp(self, K: int) -> int:
        """Generators outside ``K`` commuting with every element of ``K``."""
        self._check(K)
        out = self.full & ~K
        for t in bits(K):
            out &= self.commuting[t]
        return out

    def diagram_components(self, J: int) -> list[int]:
        self._check(J)
        return _components(self.diagram, J)

    def classify_component(self, K: int) -> IrreducibleType:
        self._check(K)
        if not K or len(_components(self.diagram, K)) != 1:
            raise ValueError(f"{members(K)} is not a single diagram component")
        return _classify_connected(self, members(K))

    def is_spherical(self, J: int) -> bool:
        cached = self._spherical.get(J)
        if cached is None:
            cached = all(_classify_connected(self, members(C)).is_finite
                         for C in _components(self.diagram, J))
            self._spherical[J] = cached
        return cached

    def is_irreducible_affine(self, J: int) -> bool:
        comps = self.diagram_components(J)
        return len(comps) == 1 and self.classify_component(J).is_affine

    def nonspherical_components(self, J: int) -> list[int]:
        return [C for C in self.diagram_components(J) if not self.is_spherical(C)]

    def subset_predicates(self, J: int) -> dict:
        return {
            "is_spherical": self.is_spherical(J),
            "is_irreducible_affine": bool(J) and self.is_irreducible_affine(J),
            "irreducible_nonspherical_components": self.nonspherical_components(J),
        }


def from_racg(g: Graph) -> CoxeterMatrix:
    m = [[1 if s == t else (2 if g.has_edge(s, t) else INF) for t in range(g.n)] for s in range(g.n)]
    return CoxeterMatrix(g.n, tuple(map(tuple, m)))


# --------------------------------------------------------------------------
# diagram tables

_E_ARMS = {(1, 2, 2): _fin("E", 6), (1, 2, 3): _fin("E", 7), (1, 2, 4): _fin("E", 8),
           (2, 2, 2): _aff("E", 6), (1, 3, 3): _aff("E", 7), (1, 2, 5): _aff("E", 8)}


def _classify_connected(M: CoxeterMatrix, verts: tuple[int, ...]) -> IrreducibleType:
    k = len(verts)
    if k == 1:
        return _fin("A", 1)
    if k == 2:
        lab = M.m[verts[0]][verts[1]]
        if lab == INF:
            return _aff("A", 1)
        return {3: _fin("A", 2), 4: _fin("B", 2)}.get(lab, _fin("I2", 2, lab))

    nbrs = {v: [u for u in verts if u != v and M.m[v][u] != 2] for v in verts}
    edges = {(u, v): M.m[u][v] for u in verts for v in nbrs[u] if u < v}
    if any(lab == INF for lab in edges.values()):
        return INDEFINITE
    degree = {v: len(nbrs[v]) for v in verts}

    if len(edges) == k:
        if all(d == 2 for d in degree.values()) and all(lab == 3 for lab in edges.values()):
            return _aff("A", k - 1)
        return INDEFINITE
    if len(edges) != k - 1:
        return INDEFINITE

    def lab(u, v):
        return M.m[u][v]

    def walk(start, prev):
        """Labels and vertices along the arm leaving ``prev`` through ``start``."""
        labels, path = [lab(prev, start)], [start]
        while degree[path[-1]] == 2:
            nxt = next(u for u in nbrs[path[-1]] if u != (path[-2] if len(path) > 1 else prev))
            labels.append(lab(path[-1], nxt))
            path.append(nxt)
        return labels, path

    branch = [v for v in verts if degree[v] >= 3]
    if any(degree[v] > 4 for v in verts):
        return INDEFINITE
    if any(degree[v] == 4 for v in verts):
        if k == 5 and all(x == 3 for x in edges.values()):
            return _aff("D", 4)
        return INDEFINITE

    if not branch:
        end = next(v for v in verts if degree[v] == 1)
        seq, _ = walk(nbrs[end][0], end)
        if seq[0] != 3 and seq[-1] == 3:
            pass
        elif seq[-1] != 3 and seq[0] == 3:
            seq = seq[::-1]
        return _classify_path(seq)

    if len(branch) == 1:
        c = branch[0]
        arms = sorted((walk(u, c) for u in nbrs[c]), key=lambda a: len(a[0]))
        lengths = tuple(len(a[0]) for a in arms)
        labels = [x for a in arms for x in a[0]]
        odd = [x for x in labels if x != 3]
        if not odd:
            if lengths[:2] == (1, 1):
                return _fin("D", k)
            return _E_ARMS.get(lengths, INDEFINITE)
        if odd == [4] and lengths[:2] == (1, 1):
            arm = arms[2][0]
            if arm[-1] == 4:
                return _aff("B", k - 1)
            short = [a[0] for a in arms if a[0] == [4]]
            if short and lengths == (1, 1, 1):
                return _aff("B", 3)
        return INDEFINITE

    if len(branch) == 2 and all(x == 3 for x in edges.values()):
        # Both branch vertices must carry two leaves.
        for b in branch:
            if sum(1 for u in nbrs[b] if degree[u] == 1) != 2:
                return INDEFINITE
        return _aff("D", k - 1)
    return INDEFINITE


def _classify_path(seq: list[int]) -> IrreducibleType:
    """Path with edge labels ``seq``, oriented so any odd label comes first."""
    k = len(seq) + 1
    odd = [(i, x) for i, x in enumerate(seq) if x != 3]
    if not odd:
        return _fin("A", k)
    if len(odd) == 1:
        i, x = odd[0]
        if i == 0:
            if x == 4:
                return _fin("B", k)
            if x == 5 and k in (3, 4):
                return _fin("H", k)
            if x == 6 and k == 3:
                return _aff("G", 2)
            return INDEFINITE
        if x == 4 and k == 4 and i == 1:
            return _fin("F", 4)
        if x == 4 and k == 5 and i in (1, 2):
            return _aff("F", 4)
        return INDEFINITE
    if len(odd) == 2 and odd[0] == (0, 4) and odd[1] == (len(seq) - 1, 4):
        return _aff("C", k - 1)
    return INDEFINITE


# --------------------------------------------------------------------------
# text format


def parse_coxeter(text: str) -> CoxeterMatrix:
    lines = [(no, raw.strip()) for no, raw in enumerate(text.splitlines(), start=1)]
    lines = [(no, ln) for no, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise CoxeterFormatError("empty matrix file")

    def ints(no, line):
        try:
            return [int(t) for t in line.split()]
        except ValueError:
            raise CoxeterFormatError(f"expected integers, got {line!r}", no) from None

    no, head = lines[0]
    h = ints(no, head)
    if len(h) != 1 or h[0] < 0:
        raise CoxeterFormatError("header must be a single nonnegative n", no)
    n = h[0]
    if len(lines) - 1 != n:
        raise CoxeterFormatError(f"expected {n} rows, found {len(lines) - 1}", no)
    rows = []
    for i, (no, line) in enumerate(lines[1:]):
        row = ints(no, line)
        if len(row) != n:
            raise CoxeterFormatError(f"row {i} has {len(row)} entries, expected {n}", no)
        for j, x in enumerate(row):
            if i == j and x != 1:
                raise CoxeterFormatError(f"diagonal entry at row {i}, column {j} must be 1", no)
            if i != j and x != INF and x < 2:
                raise CoxeterFormatError(f"entry at row {i}, column {j} must be 0 or >= 2", no)
        rows.append((no, row))
    for i, (no, row) in enumerate(rows):
        for j in range(i):
            if row[j] != rows[j][1][i]:
                raise CoxeterFormatError(f"asymmetric entry at row {i}, column {j}", no)
    return CoxeterMatrix(n, tuple(tuple(r) for _, r in rows))


def format_coxeter(M: CoxeterMatrix) -> str:
    return "\n".join([str(M.n)] + [" ".join(map(str, r)) for r in M.m]) + "\n"


def read_coxeter(path) -> CoxeterMatrix:
    return parse_coxeter(Path(path).read_text())


def write_coxeter(M: CoxeterMatrix, path) -> None:
    Path(path).write_text(format_coxeter(M))


def fuchsian_square(label: int = 3) -> CoxeterMatrix:
    """Generators s,t,u,v with m_st = label, m_su = m_uv = m_tv = 2 and the
    diagonals s-v, t-u unrelated: a hyperbolic reflection group whose
    commuting graph is a 4-cycle."""
    s, t, u, v = range(4)
    return CoxeterMatrix.from_edges(4, {(s, t): label, (s, v): INF, (t, u): INF})
