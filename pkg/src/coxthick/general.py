"""Thick subsystems and relative hyperbolicity for arbitrary Coxeter systems.

Seeds are irreducible affine subsets of rank at least three and commuting
pairs of irreducible non-spherical subsets.  They are saturated under

* cone: ``T -> T + s`` when the generators of ``T`` commuting with ``s``
  span a non-spherical subset;
* union: ``T1, T2 -> T1 | T2`` when ``T1 & T2`` is non-spherical.

The maximal members of the saturated pool are the peripheral subsets;
:func:`verify_rh` re-checks them against the relative hyperbolicity
criterion (conditions RH1-RH3) by an independent subset scan.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Union

from .coxeter import CoxeterMatrix
from .graph import bits, members
from .racg import Status

ENUMERATION_GUARD = 24


class GuardError(ValueError):
    pass


class InconsistencyError(RuntimeError):
    """A computed peripheral structure failed its own certificate."""


# --------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class AffineSeed:
    vertices: int


@dataclass(frozen=True)
class ProductSeed:
    left: int
    right: int

    @property
    def vertices(self) -> int:
        return self.left | self.right


@dataclass(frozen=True)
class Cone:
    base: "Witness"
    s: int

    @property
    def vertices(self) -> int:
        return self.base.vertices | 1 << self.s


@dataclass(frozen=True)
class Union_:
    left: "Witness"
    right: "Witness"

    @property
    def vertices(self) -> int:
        return self.left.vertices | self.right.vertices


Witness = Union[AffineSeed, ProductSeed, Cone, Union_]


def check_witness(M: CoxeterMatrix, w: Witness) -> bool:
    """Re-verify every node of a derivation against ``M``."""
    stack = [w]
    while stack:
        node = stack.pop()
        if isinstance(node, AffineSeed):
            K = node.vertices
            if K.bit_count() < 3 or not M.is_irreducible_affine(K):
                return False
        elif isinstance(node, ProductSeed):
            a, b = node.left, node.right
            if a & b or M.perp(a) & b != b:
                return False
            for part in (a, b):
                if len(M.diagram_components(part)) != 1 or M.is_spherical(part):
                    return False
        elif isinstance(node, Cone):
            base = node.base.vertices
            if base >> node.s & 1 or M.is_spherical(M.commuting[node.s] & base):
                return False
            stack.append(node.base)
        elif isinstance(node, Union_):
            if M.is_spherical(node.left.vertices & node.right.vertices):
                return False
            stack += [node.left, node.right]
        else:
            return False
    return True


def format_witness(w: Witness, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(w, AffineSeed):
        return f"{pad}affine {list(members(w.vertices))}"
    if isinstance(w, ProductSeed):
        return f"{pad}product {list(members(w.left))} x {list(members(w.right))}"
    if isinstance(w, Cone):
        return f"{pad}cone {w.s} over {list(members(w.base.vertices))}\n" + format_witness(w.base, indent + 1)
    return (f"{pad}union {list(members(w.vertices))}\n" + format_witness(w.left, indent + 1)
            + "\n" + format_witness(w.right, indent + 1))


# --------------------------------------------------------------------------
# enumeration


def _guard(M: CoxeterMatrix, guard: int) -> None:
    if M.n > guard:
        raise GuardError(f"n={M.n} exceeds the enumeration guard {guard}; "
                         "raise the guard explicitly if the run time is acceptable")


def minimal_nonspherical(M: CoxeterMatrix) -> list[int]:
    """Non-spherical subsets all of whose proper subsets are spherical.

    Spherical subsets are closed under taking subsets, so each is reached
    by adding its elements in increasing order; a minimal non-spherical set
    ``X`` is found as (spherical ``X - max X``) plus ``max X``.
    """
    out = []
    spherical = {0}
    stack = [(0, -1)]
    while stack:
        S, top = stack.pop()
        for v in range(top + 1, M.n):
            X = S | 1 << v
            if M.is_spherical(X):
                spherical.add(X)
                stack.append((X, v))
            elif all(X & ~(1 << x) in spherical or M.is_spherical(X & ~(1 << x)) for x in bits(S)):
                out.append(X)
    return sorted(out)


def irreducible_nonspherical_subsets(M: CoxeterMatrix) -> list[int]:
    """Every connected non-spherical subset, by full scan (small n only)."""
    return [X for X in range(1, 1 << M.n)
            if len(M.diagram_components(X)) == 1 and not M.is_spherical(X)]


def enumerate_seeds(M: CoxeterMatrix, *, full: bool = False, guard: int = ENUMERATION_GUARD) -> list:
    """Seed witnesses: affine subsets of rank >= 3 and commuting products.

    Products use only minimal non-spherical factors unless ``full``; coning
    recovers larger factors, since every element of one factor commutes
    with all of the other.
    """
    _guard(M, guard)
    mns = minimal_nonspherical(M)
    seeds: dict[int, Witness] = {}
    for K in mns:
        if K.bit_count() >= 3 and M.is_irreducible_affine(K):
            seeds.setdefault(K, AffineSeed(K))
    factors = irreducible_nonspherical_subsets(M) if full else mns
    for a, b in itertools.combinations(factors, 2):
        if M.perp(a) & b == b:
            seeds.setdefault(a | b, ProductSeed(a, b))
    return [seeds[k] for k in sorted(seeds)]


# --------------------------------------------------------------------------
# saturation


@dataclass
class SaturatedPool:
    matrix: CoxeterMatrix
    witnesses: list[Witness]
    history: list[int] = field(default_factory=list)

    @property
    def members(self) -> list[int]:
        return sorted(w.vertices for w in self.witnesses)

    def maximal(self) -> list[int]:
        ms = set(self.members)
        return sorted(m for m in ms if not any(m != o and m & o == m for o in ms))


def saturate_thick(M: CoxeterMatrix, *, rng: random.Random | None = None, full_seeds: bool = False,
                   guard: int = ENUMERATION_GUARD) -> SaturatedPool:
    """Smallest pool containing the seeds and closed under cone and union.

    Subsets of members are absorbed: each member contains a seed, so a
    subset always meets its superset in a non-spherical set and merges.
    ``history`` lists every vertex set that appeared during saturation.
    """
    seeds = enumerate_seeds(M, full=full_seeds, guard=guard)
    if rng:
        rng.shuffle(seeds)
    pool: list[Witness] = []
    history: list[int] = []
    order = list(range(M.n))

    def cone_close(w: Witness) -> Witness:
        changed = True
        while changed:
            changed = False
            if rng:
                rng.shuffle(order)
            for s in order:
                T = w.vertices
                if not T >> s & 1 and not M.is_spherical(M.commuting[s] & T):
                    w = Cone(w, s)
                    history.append(w.vertices)
                    changed = True
        return w

    for seed in seeds:
        if any(seed.vertices & o.vertices == seed.vertices for o in pool):
            continue
        w = seed
        history.append(w.vertices)
        while True:
            w = cone_close(w)
            idx = list(range(len(pool)))
            if rng:
                rng.shuffle(idx)
            hit = next((i for i in idx if not M.is_spherical(pool[i].vertices & w.vertices)), None)
            if hit is None:
                break
            w = Union_(pool.pop(hit), w)
            history.append(w.vertices)
        pool.append(w)
    return SaturatedPool(M, pool, history)


# --------------------------------------------------------------------------
# relative hyperbolicity certificate


@dataclass
class RhReport:
    rh1_ok: bool
    rh2_ok: bool
    rh3_ok: bool
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.rh1_ok and self.rh2_ok and self.rh3_ok

    def summary(self) -> str:
        flags = " ".join(f"{k}={'pass' if v else 'FAIL'}" for k, v in
                         (("RH1", self.rh1_ok), ("RH2", self.rh2_ok), ("RH3", self.rh3_ok)))
        return flags


def _perp_family(M: CoxeterMatrix) -> set[int]:
    """All sets ``perp(X)`` for nonempty ``X`` that are non-spherical.

    These are the intersections of the single-generator commuting sets;
    spherical ones are dropped since their subsets stay spherical.
    """
    base = [c for c in M.commuting if not M.is_spherical(c)]
    family = set(base)
    work = list(base)
    while work:
        Y = work.pop()
        for c in M.commuting:
            Z = Y & c
            if Z != Y and Z not in family and not M.is_spherical(Z):
                family.add(Z)
                work.append(Z)
    return family


def verify_rh(M: CoxeterMatrix, J_list, *, guard: int = ENUMERATION_GUARD) -> RhReport:
    """Check RH1-RH3 for the proper subsets ``J_list`` (bitmasks or iterables)."""
    _guard(M, guard)
    Js = [J if isinstance(J, int) else sum(1 << v for v in J) for J in J_list]
    if any(J == M.full for J in Js):
        raise ValueError("peripheral subsets must be proper")
    violations = []

    def covered(X):
        return any(X & J == X for J in Js)

    mns = minimal_nonspherical(M)
    # RH1, affine part: affine subsets of rank >= 3 are minimal non-spherical.
    for K in mns:
        if K.bit_count() >= 3 and M.is_irreducible_affine(K) and not covered(K):
            violations.append({"condition": "RH1", "affine": members(K)})
    # RH1, product part: every commuting pair lies inside a pair (C1, C2)
    # with C1 a non-spherical component of perp(C2) and C2 a non-spherical
    # component of some perp(X).
    seen = set()
    for Y in _perp_family(M):
        for C2 in M.nonspherical_components(Y):
            for C1 in M.nonspherical_components(M.perp(C2)):
                X = C1 | C2
                if X not in seen:
                    seen.add(X)
                    if not covered(X):
                        violations.append({"condition": "RH1", "product": (members(C1), members(C2))})
    rh1 = not violations
    # RH2
    for J1, J2 in itertools.combinations(Js, 2):
        if not M.is_spherical(J1 & J2):
            violations.append({"condition": "RH2", "pair": (members(J1), members(J2))})
    rh2 = not any(v["condition"] == "RH2" for v in violations)
    # RH3: perp is antitone, so minimal non-spherical K suffice.
    for J in Js:
        for K in mns:
            if K & J == K and M.perp(K) & ~J:
                violations.append({"condition": "RH3", "peripheral": members(J), "K": members(K),
                                   "escaping": members(M.perp(K) & ~J)})
    rh3 = not any(v["condition"] == "RH3" for v in violations)
    return RhReport(rh1, rh2, rh3, violations)


def verify_rh_bruteforce(M: CoxeterMatrix, J_list) -> RhReport:
    """RH1-RH3 by scanning all subsets and pairs; for small n in tests."""
    Js = [J if isinstance(J, int) else sum(1 << v for v in J) for J in J_list]
    irr = irreducible_nonspherical_subsets(M)
    violations = []

    def covered(X):
        return any(X & J == X for J in Js)

    for K in irr:
        if K.bit_count() >= 3 and M.classify_component(K).is_affine and not covered(K):
            violations.append({"condition": "RH1"})
    for a, b in itertools.combinations(irr, 2):
        if M.perp(a) & b == b and not covered(a | b):
            violations.append({"condition": "RH1"})
    rh1 = not violations
    rh2 = all(M.is_spherical(a & b) for a, b in itertools.combinations(Js, 2))
    rh3 = all(M.perp(K) & ~J == 0 for J in Js for K in irr if K & J == K)
    return RhReport(rh1, rh2, rh3, violations)


# --------------------------------------------------------------------------
# classification


@dataclass
class PeripheralStructure:
    J_list: list[tuple[int, ...]]
    witnesses: list[Witness]
    spans_all: bool


@dataclass
class CoxeterReport:
    status: Status
    peripherals: PeripheralStructure
    rh: RhReport | None = None

    def as_dict(self) -> dict:
        out = {
            "status": self.status.value,
            "peripherals": [list(J) for J in self.peripherals.J_list],
        }
        if self.rh is not None:
            out["rh"] = {"rh1": self.rh.rh1_ok, "rh2": self.rh.rh2_ok, "rh3": self.rh.rh3_ok}
        return out


def is_virtually_cyclic(M: CoxeterMatrix) -> bool:
    bad = M.nonspherical_components(M.full)
    return len(bad) == 1 and bad[0].bit_count() == 2


def classify_coxeter(M: CoxeterMatrix, *, guard: int = ENUMERATION_GUARD) -> CoxeterReport:
    _guard(M, guard)
    empty = PeripheralStructure([], [], False)
    if M.is_spherical(M.full):
        return CoxeterReport(Status.FINITE, empty)
    if is_virtually_cyclic(M):
        return CoxeterReport(Status.VIRTUALLY_CYCLIC, empty)
    pool = saturate_thick(M, guard=guard)
    for w in pool.witnesses:
        if not check_witness(M, w):
            raise InconsistencyError(f"witness for {members(w.vertices)} does not re-verify")
    if any(w.vertices == M.full for w in pool.witnesses):
        w = next(w for w in pool.witnesses if w.vertices == M.full)
        # the whole system is derivable, so there is no proper peripheral; keep the witness
        return CoxeterReport(Status.THICK, PeripheralStructure([], [w], True))
    if not pool.witnesses:
        return CoxeterReport(Status.HYPERBOLIC, empty)
    ws = sorted(pool.witnesses, key=lambda w: w.vertices)
    structure = PeripheralStructure([members(w.vertices) for w in ws], ws, False)
    rh = verify_rh(M, [w.vertices for w in ws], guard=guard)
    if not rh.ok:
        raise InconsistencyError(f"RH certificate failed: {rh.violations}")
    return CoxeterReport(Status.RELATIVELY_HYPERBOLIC, structure, rh)
