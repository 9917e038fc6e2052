"""Chirotopes of rank 3 and matroid orientability.

A chirotope assigns a sign to every ordered point triple, alternating
under transpositions, zero exactly on the collinear triples of its
matroid, and obeying the three-term Grassmann-Pluecker sign condition:
for every pivot x and points a,b,c,d the value set

    { chi(xab)*chi(xcd),  -chi(xac)*chi(xbd),  chi(xad)*chi(xbc) }

is either all zero or contains both a strictly positive and a strictly
negative member.  Orientability of a matroid is decided by backtracking
over the signs of its non-collinear triples with unit propagation over
these conditions.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from .incidence import ValidationReport
from .matroid import Rank3Matroid


@lru_cache(maxsize=None)
def triple_list(n: int):
    return tuple(combinations(range(n), 3))


@lru_cache(maxsize=None)
def triple_rank(n: int):
    return {t: i for i, t in enumerate(triple_list(n))}


@dataclass(frozen=True)
class Chirotope:
    """Signs over the lex-ordered sorted triples, alternating extension."""

    n: int
    signs: tuple

    def __post_init__(self):
        if len(self.signs) != comb(self.n, 3):
            raise ValueError(f"need {comb(self.n, 3)} signs for n={self.n}, "
                             f"got {len(self.signs)}")
        if any(s not in (-1, 0, 1) for s in self.signs):
            raise ValueError("signs must be -1, 0, or +1")

    def chi(self, i: int, j: int, k: int) -> int:
        if i == j or j == k or i == k:
            return 0
        sign = 1
        if i > j:
            i, j, sign = j, i, -sign
        if j > k:
            j, k, sign = k, j, -sign
        if i > j:
            i, j, sign = j, i, -sign
        return sign * self.signs[triple_rank(self.n)[(i, j, k)]]

    def zero_triples(self):
        return frozenset(t for t, s in zip(triple_list(self.n), self.signs) if s == 0)

    def to_text(self) -> str:
        symbols = {-1: "-", 0: "0", 1: "+"}
        return f"{self.n}\n" + "".join(symbols[s] for s in self.signs) + "\n"


def chirotope_from_text(text: str) -> Chirotope:
    rows = [r.strip() for r in text.splitlines() if r.strip()]
    if len(rows) != 2:
        raise ValueError("chirotope file needs two lines: n, then the sign string")
    n = int(rows[0])
    symbols = {"-": -1, "0": 0, "+": 1}
    try:
        signs = tuple(symbols[ch] for ch in rows[1])
    except KeyError as bad:
        raise ValueError(f"bad sign character {bad}") from bad
    return Chirotope(n, signs)


def chirotope_from_points(points) -> Chirotope:
    """Signs of the 3x3 homogeneous coordinate determinants, exact."""
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    if len(pts) < 3:
        raise ValueError("need at least 3 points")
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate points")
    signs = []
    for i, j, k in triple_list(len(pts)):
        (xi, yi), (xj, yj), (xk, yk) = pts[i], pts[j], pts[k]
        det = (xj - xi) * (yk - yi) - (xk - xi) * (yj - yi)
        signs.append(0 if det == 0 else (1 if det > 0 else -1))
    return Chirotope(len(pts), tuple(signs))


def matroid_of_chirotope(chi: Chirotope) -> Rank3Matroid:
    return Rank3Matroid(chi.n, chi.zero_triples())


def reorient(chi: Chirotope, flip_set) -> Chirotope:
    """Flip the sign of every triple meeting `flip_set` an odd number of
    times; this is the standard orientation symmetry and preserves all
    chirotope properties."""
    flips = set(flip_set)
    if not all(0 <= p < chi.n for p in flips):
        raise ValueError("flip set out of range")
    signs = []
    for t, s in zip(triple_list(chi.n), chi.signs):
        odd = len(flips.intersection(t)) & 1
        signs.append(-s if odd else s)
    return Chirotope(chi.n, tuple(signs))


def _pivot_parity(x, u, v):
    """Sign of sorting (x, u, v) with u < v."""
    if x < u:
        return 1
    if x < v:
        return -1
    return 1


@lru_cache(maxsize=None)
def _gp_instances(n: int):
    """All (5-subset, pivot) three-term conditions over sorted-triple ranks.

    Each instance is three products ((r1, r2, coef), ...) where coef folds
    the alternating parities and the middle minus sign; condition: the
    product values must not be all positive nor all negative unless all
    are zero.
    """
    rank = triple_rank(n)
    out = []
    for quint in combinations(range(n), 5):
        for x in quint:
            a, b, c, d = [p for p in quint if p != x]
            prods = []
            for (u1, v1, u2, v2, base) in (
                    (a, b, c, d, 1), (a, c, b, d, -1), (a, d, b, c, 1)):
                t1 = tuple(sorted((x, u1, v1)))
                t2 = tuple(sorted((x, u2, v2)))
                coef = base * _pivot_parity(x, u1, v1) * _pivot_parity(x, u2, v2)
                prods.append((rank[t1], rank[t2], coef))
            out.append(tuple(prods))
    return tuple(out)


def is_chirotope(chi: Chirotope, matroid: Rank3Matroid,
                 max_violations: int = 20) -> ValidationReport:
    """Full check of chi against the matroid: exact zero set, the
    three-term condition over every (5-subset, pivot) instance, and
    non-triviality."""
    if chi.n != matroid.n:
        raise ValueError(f"size mismatch: chirotope n={chi.n}, matroid n={matroid.n}")
    violations = []
    if all(s == 0 for s in chi.signs):
        violations.append(("identically-zero", "every triple has sign 0", ()))

    triples = triple_list(chi.n)
    for t, s in zip(triples, chi.signs):
        if (s == 0) != (t in matroid.collinear):
            want = "zero" if t in matroid.collinear else "nonzero"
            violations.append(("zero-set-mismatch", f"triple {t} should be {want}", t))
            if len(violations) >= max_violations:
                return ValidationReport.from_violations(violations)

    signs = chi.signs
    for prods in _gp_instances(chi.n):
        pos = neg = zero = 0
        for r1, r2, coef in prods:
            v = signs[r1] * signs[r2] * coef
            if v > 0:
                pos += 1
            elif v < 0:
                neg += 1
            else:
                zero += 1
        if zero != 3 and not (pos and neg):
            violations.append(
                ("gp-violation",
                 "three-term sign condition fails on products "
                 f"{[(triples[r1], triples[r2]) for r1, r2, _ in prods]}",
                 prods))
            if len(violations) >= max_violations:
                break
    return ValidationReport.from_violations(violations)


class Outcome(Enum):
    ORIENTABLE = "Orientable"
    NON_ORIENTABLE = "NonOrientable"
    BUDGET_EXCEEDED = "BudgetExceeded"


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    propagations: int
    elapsed_s: float


@dataclass(frozen=True)
class OrientabilityResult:
    outcome: Outcome
    witness: Chirotope | None
    stats: SearchStats

    def outcome_key(self) -> str:
        return {Outcome.ORIENTABLE: "orientable",
                Outcome.NON_ORIENTABLE: "non_orientable",
                Outcome.BUDGET_EXCEEDED: "budget_exceeded"}[self.outcome]


_UNSET = 2


class _GPSolver:
    """Backtracking over triple signs with unit propagation.

    Conditions specialize against the matroid's zero set at build time:
    instances with one live product are contradictions, with two live
    products they become parity equations (the two values must differ),
    and with three they stay ternary not-all-equal conditions.
    """

    def __init__(self, matroid: Rank3Matroid, variable_order: str):
        self.n = matroid.n
        self.triples = triple_list(self.n)
        rank = triple_rank(self.n)
        self.T = len(self.triples)
        self.val = [_UNSET] * self.T
        for t in matroid.collinear:
            self.val[rank[t]] = 0
        self.contradictory = False

        parity = []     # (v1, v2, v3, v4, target)
        ternary = []    # ((a1,b1,g1),(a2,b2,g2),(a3,b3,g3))
        for prods in _gp_instances(self.n):
            live = [(r1, r2, coef) for r1, r2, coef in prods
                    if self.val[r1] != 0 and self.val[r2] != 0]
            if not live:
                continue
            if len(live) == 1:
                self.contradictory = True
                return
            if len(live) == 2:
                (a1, b1, g1), (a2, b2, g2) = live
                parity.append((a1, b1, a2, b2, -g1 * g2))
            else:
                ternary.append(tuple(live))
        self.parity = parity
        self.ternary = ternary

        self.watch = [[] for _ in range(self.T)]
        for ci, (a, b, c, d, _t) in enumerate(parity):
            for v in {a, b, c, d}:
                self.watch[v].append(ci)
        self.twatch = [[] for _ in range(self.T)]
        for ci, prods in enumerate(ternary):
            for r1, r2, _g in prods:
                self.twatch[r1].append(ci)
                self.twatch[r2].append(ci)

        free = [i for i in range(self.T) if self.val[i] == _UNSET]
        if variable_order == "lex":
            self.order = free
        else:
            busy = [0] * self.T
            for a, b, c, d, _t in parity:
                for v in (a, b, c, d):
                    busy[v] += 3
            for prods in ternary:
                for r1, r2, _g in prods:
                    busy[r1] += 1
                    busy[r2] += 1
            self.order = sorted(free, key=lambda v: (-busy[v], v))
        self.propagations = 0

    def _assign(self, v, value, trail, queue):
        cur = self.val[v]
        if cur != _UNSET:
            return cur == value
        self.val[v] = value
        trail.append(v)
        queue.append(v)
        return True

    def _propagate(self, queue, trail):
        val = self.val
        while queue:
            v = queue.pop()
            self.propagations += 1
            for ci in self.watch[v]:
                a, b, c, d, target = self.parity[ci]
                prod = 1
                unset = -1
                for w in (a, b, c, d):
                    s = val[w]
                    if s == _UNSET:
                        if unset >= 0:
                            unset = -2
                            break
                        unset = w
                    else:
                        prod *= s
                if unset == -2:
                    continue
                if unset == -1:
                    if prod != target:
                        return False
                elif not self._assign(unset, target * prod, trail, queue):
                    return False
            for ci in self.twatch[v]:
                if not self._check_ternary(ci, trail, queue):
                    return False
        return True

    def _check_ternary(self, ci, trail, queue):
        val = self.val
        known = []
        unknown = []
        for r1, r2, g in self.ternary[ci]:
            s1, s2 = val[r1], val[r2]
            if s1 != _UNSET and s2 != _UNSET:
                known.append(g * s1 * s2)
            else:
                unknown.append((r1, r2, g))
        if len(known) == 3:
            if known[0] == known[1] == known[2]:
                return False
            return True
        if len(known) == 2 and known[0] == known[1]:
            # the remaining product must take the opposite sign
            (r1, r2, g) = unknown[0]
            need = -known[0] * g
            s1, s2 = val[r1], val[r2]
            if s1 != _UNSET:
                return self._assign(r2, need * s1, trail, queue)
            if s2 != _UNSET:
                return self._assign(r1, need * s2, trail, queue)
        return True

    def solve(self, budget):
        if self.contradictory:
            return Outcome.NON_ORIENTABLE, None, 0
        val = self.val
        order = self.order
        nodes = 0
        if not order:
            return Outcome.NON_ORIENTABLE, None, 0

        def next_var(start):
            for i in range(start, len(order)):
                if val[order[i]] == _UNSET:
                    return i
            return -1

        # orientation symmetry: pin the first free triple positive
        seed = order[0]
        val[seed] = 1
        root_trail = [seed]
        result = None
        if self._propagate([seed], root_trail):
            idx0 = next_var(1)
            if idx0 < 0:
                result = (Outcome.ORIENTABLE, Chirotope(self.n, tuple(val)), nodes)
            else:
                frames = [[idx0, [1, -1], None]]
                while frames:
                    frame = frames[-1]
                    vidx, values, trail = frame
                    if trail is not None:
                        for v in trail:
                            val[v] = _UNSET
                        frame[2] = None
                    if not values:
                        frames.pop()
                        continue
                    if budget is not None and nodes >= budget:
                        result = (Outcome.BUDGET_EXCEEDED, None, nodes)
                        break
                    value = values.pop(0)
                    nodes += 1
                    var = order[vidx]
                    val[var] = value
                    trail = [var]
                    if self._propagate([var], trail):
                        frame[2] = trail
                        nidx = next_var(vidx + 1)
                        if nidx < 0:
                            result = (Outcome.ORIENTABLE,
                                      Chirotope(self.n, tuple(val)), nodes)
                            break
                        frames.append([nidx, [1, -1], None])
                    else:
                        for v in trail:
                            val[v] = _UNSET
                for fr in frames:
                    if fr[2] is not None:
                        for v in fr[2]:
                            val[v] = _UNSET
        if result is None:
            result = (Outcome.NON_ORIENTABLE, None, nodes)
        for v in root_trail:
            val[v] = _UNSET
        return result


def orientability(matroid: Rank3Matroid, budget: int | None = None,
                  variable_order: str = "most_constrained") -> OrientabilityResult:
    """Search for a chirotope with the matroid's dependencies.

    Returns Orientable with an independently re-checked witness,
    NonOrientable only after exhausting the search space, or
    BudgetExceeded once `budget` decisions were spent.
    """
    if matroid.n < 3:
        raise ValueError("orientability needs at least 3 points")
    if variable_order not in ("most_constrained", "lex"):
        raise ValueError(f"unknown variable order {variable_order!r}")
    t0 = time.perf_counter()
    solver = _GPSolver(matroid, variable_order)
    outcome, witness, nodes = solver.solve(budget)
    elapsed = time.perf_counter() - t0
    stats = SearchStats(nodes=nodes, propagations=solver.propagations,
                        elapsed_s=elapsed)
    if outcome is Outcome.ORIENTABLE:
        report = is_chirotope(witness, matroid)
        if not report.valid:
            raise AssertionError(
                f"solver produced an invalid witness: {report.violations[:3]}")
    return OrientabilityResult(outcome=outcome, witness=witness, stats=stats)
