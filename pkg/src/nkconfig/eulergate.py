"""Counting gate for the existence of n_k configurations drawable with
(pseudo)lines.

A hypothetical realization in general position induces a graph embedded on
the sphere (the double cover of the projective arrangement).  Counting its
vertices and edges and applying Euler's formula, the digon-free inequality
3*f2 <= 2*f1 becomes a polynomial condition on (n, k): it fails whenever
n <= k^2 + k - 5, so such n admit no realization.  The gate is necessary,
never sufficient, hence the verdict vocabulary {Impossible, Unresolved}.

Everything here is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Verdict(Enum):
    IMPOSSIBLE = "Impossible"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class EulerCounts:
    """Cell counts (f0, f1, f2) on the sphere plus the digon slack 2*f1 - 3*f2.

    For (n, k) far below the feasible range the closed forms go negative;
    the counts are then formal values, still satisfying f0 - f1 + f2 = 2.
    """

    f0: int
    f1: int
    f2: int
    digon_slack: int

    def euler_characteristic(self) -> int:
        return self.f0 - self.f1 + self.f2


@dataclass(frozen=True)
class GateVerdict:
    verdict: Verdict
    expression_value: int
    threshold: int


def _require_domain(n: int, k: int):
    if not isinstance(k, int) or k < 3:
        raise ValueError(f"k must be an integer >= 3, got {k!r}")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")


def euler_counts(n: int, k: int) -> EulerCounts:
    """Sphere cell counts of a general-position realization of an n_k.

    f0 = n(n - k(k-1) + 1)  vertices: doubled k-fold points plus doubled
    simple crossings; f1 = 2n(n - k^2 + 2k - 1) edges: each of the n closed
    curves is split by the crossings it carries; f2 from Euler's formula.
    """
    _require_domain(n, k)
    f0 = n * (n - k * (k - 1) + 1)
    f1 = 2 * n * (n - k * k + 2 * k - 1)
    f2 = f1 - f0 + 2
    return EulerCounts(f0=f0, f1=f1, f2=f2, digon_slack=2 * f1 - 3 * f2)


def gate_expression(n: int, k: int) -> int:
    """-n^2 - 5n + nk^2 + nk + 6; positive exactly when the digon-free
    inequality fails, i.e. when n <= k^2 + k - 5."""
    return -n * n - 5 * n + n * k * k + n * k + 6


def feasibility_gate(n: int, k: int) -> GateVerdict:
    """Necessary condition for an n_k realization with (pseudo)lines.

    Impossible iff the gate expression is positive (equivalently
    n <= k^2 + k - 5).  Unresolved means only that this counting argument
    does not rule the case out.
    """
    _require_domain(n, k)
    value = gate_expression(n, k)
    verdict = Verdict.IMPOSSIBLE if value > 0 else Verdict.UNRESOLVED
    return GateVerdict(verdict=verdict, expression_value=value, threshold=k * k + k - 5)


def min_gate_passing_n(k: int) -> int:
    """Smallest n the gate does not exclude for the given k: k^2 + k - 4."""
    if not isinstance(k, int) or k < 3:
        raise ValueError(f"k must be an integer >= 3, got {k!r}")
    return k * k + k - 4
