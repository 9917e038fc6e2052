"""Rank-3 matroid view of a configuration: canonical codes, isomorphism,
and the arrangement-complement Poincare polynomial."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .canonical import min_image
from .incidence import Configuration


@dataclass(frozen=True)
class Rank3Matroid:
    """Simple rank-3 matroid on n points given by its collinear triples.

    Triples sharing a pair must merge into full lines: the 3-subsets of a
    dependent flat are all dependent.  Every unlisted triple is a basis.
    """

    n: int
    collinear: frozenset

    def __post_init__(self):
        for t in self.collinear:
            if len(t) != 3 or tuple(sorted(t)) != t:
                raise ValueError(f"collinear triple {t!r} is not a sorted 3-tuple")
            if not all(isinstance(p, int) and 0 <= p < self.n for p in t):
                raise ValueError(f"triple {t!r} out of range for n={self.n}")
        if self.n >= 3 and self.collinear and len(self.collinear) == comb(self.n, 3):
            raise ValueError("all triples dependent: rank < 3")
        # closure: triples through a common pair span one line
        from itertools import combinations

        by_pair = {}
        for a, b, c in self.collinear:
            for pair, extra in (((a, b), c), ((a, c), b), ((b, c), a)):
                by_pair.setdefault(pair, set()).add(extra)
        for (a, b), extras in by_pair.items():
            flat = sorted(extras | {a, b})
            for t in combinations(flat, 3):
                if t not in self.collinear:
                    raise ValueError(
                        f"closure violated: {t} missing from the line spanned by {(a, b)}")

    @classmethod
    def from_triples(cls, n, triples):
        return cls(n, frozenset(tuple(sorted(t)) for t in triples))

    def lines(self):
        """Maximal dependent flats, as sorted point tuples."""
        by_pair = {}
        for a, b, c in self.collinear:
            for pair, extra in (((a, b), c), ((a, c), b), ((b, c), a)):
                by_pair.setdefault(pair, set()).add(extra)
        flats = {tuple(sorted(extras | {a, b})) for (a, b), extras in by_pair.items()}
        return sorted(flats)


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Relabeling-invariant byte string; equal codes mean isomorphic
    configurations (with the point/line sides respected, never swapped)."""

    blob: bytes

    def hex(self) -> str:
        return self.blob.hex()

    @classmethod
    def from_hex(cls, text: str) -> "CanonicalCode":
        return cls(bytes.fromhex(text))


def canonical_code(c: Configuration) -> CanonicalCode:
    """Pack (n, k, lex-min relabeled line list) into bytes.

    The minimal image is a complete invariant: two configurations get the
    same code exactly when some point relabeling maps one line set onto
    the other.  Line order is normalized by sorting, so line relabeling is
    free; the two sides are never exchanged.
    """
    image = min_image(c.lines, c.n)
    flat = bytearray([c.n, c.k])
    for line in image:
        flat.extend(line)
    return CanonicalCode(bytes(flat))


def canonical_form(c: Configuration) -> Configuration:
    """The configuration relabeled to its canonical representative."""
    return Configuration(c.n, c.k, min_image(c.lines, c.n))


class IsomorphismMatcher:
    """Backtracking search for point relabelings onto a fixed target.

    Precomputes the target-side lookup structures once, so one target can
    be matched against many candidates (the census dedup does exactly
    that).
    """

    def __init__(self, target: Configuration):
        self.target = target
        self.n = target.n
        self.k = target.k
        self.lineset = set(target.lines)
        self.adj = _collinearity_masks(target)
        self.pair_line = {}
        for line in target.lines:
            pts = set(line)
            for i in range(target.k):
                for j in range(i + 1, target.k):
                    self.pair_line[(line[i], line[j])] = pts
                    self.pair_line[(line[j], line[i])] = pts

    def find(self, a: Configuration):
        """A witness permutation mapping a onto the target, or None."""
        if a.n != self.n or a.k != self.k:
            return None
        n = self.n
        a_adj = _collinearity_masks(a)
        a_through = [[] for _ in range(n)]
        for line in a.lines:
            for p in line:
                a_through[p].append(line)

        # place points in a connectivity-greedy order for early pruning
        order = []
        placed = set()
        while len(order) < n:
            start = min(p for p in range(n) if p not in placed)
            stack = [start]
            while stack:
                p = stack.pop()
                if p in placed:
                    continue
                placed.add(p)
                order.append(p)
                nbrs = [q for q in range(n) if a_adj[p] >> q & 1 and q not in placed]
                stack.extend(sorted(nbrs, reverse=True))

        phi = [-1] * n
        b_adj = self.adj
        pair_line = self.pair_line
        full = (1 << n) - 1

        def extend(i, used_mask, image_mask):
            if i == n:
                return all(tuple(sorted(phi[p] for p in line)) in self.lineset
                           for line in a.lines)
            p = order[i]
            req = 0
            for q in a_through_points[p]:
                if phi[q] >= 0:
                    req |= 1 << phi[q]
            free = ~used_mask & full
            while free:
                low = free & -free
                cand = low.bit_length() - 1
                free ^= low
                if b_adj[cand] & image_mask != req:
                    continue
                ok = True
                for line in a_through[p]:
                    seen = [phi[q] for q in line if q != p and phi[q] >= 0]
                    if len(seen) >= 2:
                        host = pair_line.get((seen[0], seen[1]))
                        if host is None or cand not in host:
                            ok = False
                            break
                if not ok:
                    continue
                phi[p] = cand
                if extend(i + 1, used_mask | low, image_mask | low):
                    return True
                phi[p] = -1
            return False

        a_through_points = [sorted({q for line in a_through[p] for q in line} - {p})
                            for p in range(n)]
        if extend(0, 0, 0):
            witness = tuple(phi)
            remapped = tuple(sorted(tuple(sorted(witness[p] for p in line))
                                    for line in a.lines))
            if remapped != self.target.lines:
                raise AssertionError("isomorphism witness failed re-verification")
            return witness
        return None


def are_isomorphic(a: Configuration, b: Configuration, want_witness: bool = True):
    """Decide point-relabeling isomorphism; returns (flag, witness).

    The witness permutation maps a's points to b's and is re-verified by
    re-mapping a's line set before being returned.
    """
    if a.n != b.n or a.k != b.k:
        return False, None
    witness = IsomorphismMatcher(b).find(a)
    if witness is None:
        return False, None
    return True, (witness if want_witness else None)


def _collinearity_masks(c: Configuration):
    adj = [0] * c.n
    for line in c.lines:
        for p in line:
            for q in line:
                if p != q:
                    adj[p] |= 1 << q
    return adj


@dataclass(frozen=True)
class PoincarePolynomial:
    """Coefficients (b0, b1, b2) of 1 + b1*t + b2*t^2 for the complement of
    a general-position realization."""

    b0: int
    b1: int
    b2: int

    def coefficients(self):
        return (self.b0, self.b1, self.b2)


def poincare_polynomial(c: Configuration) -> PoincarePolynomial:
    """b2 sums (multiplicity - 1) over intersection points: the n k-fold
    configuration points give k-1 each, every remaining line pair crosses
    simply and gives 1.  Depends only on (n, k)."""
    n, k = c.n, c.k
    simple = comb(n, 2) - n * comb(k, 2)
    if simple < 0:
        raise ValueError(
            f"line pairs ({comb(n, 2)}) cannot host {n * comb(k, 2)} concurrent meetings")
    return PoincarePolynomial(b0=1, b1=n, b2=n * (k - 1) + simple)
