"""Data model for n_k point-line configurations.

An n_k configuration has n points and n lines ("blocks"), every point on
exactly k lines, every line through exactly k points, and any two lines
sharing at most one point.  Points are 0-based; lines are kept sorted and
the line list is kept in lexicographic order, so structural equality is
meaningful before any isomorphism test.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb


class ConfigFormatError(ValueError):
    """Raised when a configuration file cannot be parsed at all."""


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a rule check: valid iff the violation list is empty."""

    valid: bool
    violations: list = field(default_factory=list)

    def __post_init__(self):
        assert self.valid == (not self.violations)

    @classmethod
    def from_violations(cls, violations):
        return cls(valid=not violations, violations=list(violations))


def _check_structure(n, k, lines):
    """Structural rules that must hold before set-level rules make sense."""
    violations = []
    if not (isinstance(n, int) and n > 0):
        violations.append(("n-positive", f"n must be a positive integer, got {n!r}", ()))
    if not (isinstance(k, int) and k >= 3):
        violations.append(("k-min", f"k must be an integer >= 3, got {k!r}", ()))
    if violations:
        return violations
    for idx, line in enumerate(lines):
        pts = list(line)
        if len(pts) != k:
            violations.append(("line-size", f"line {idx} has {len(pts)} points, expected {k}", (idx,)))
            continue
        if any(not isinstance(p, int) or p < 0 or p >= n for p in pts):
            violations.append(("point-range", f"line {idx} has an index outside [0, {n})", (idx,)))
            continue
        if len(set(pts)) != k:
            violations.append(("line-distinct", f"line {idx} repeats a point", (idx,)))
    return violations


def validate(raw) -> ValidationReport:
    """Check candidate configuration data against every defining rule.

    Accepts a Configuration, a dict with keys n/k/lines, or an (n, k, lines)
    triple.  Every violated rule is reported; nothing raises for bad values.
    """
    if isinstance(raw, Configuration):
        n, k, lines = raw.n, raw.k, raw.lines
    elif isinstance(raw, dict):
        try:
            n, k, lines = raw["n"], raw["k"], raw["lines"]
        except KeyError as missing:
            return ValidationReport.from_violations(
                [("missing-field", f"missing field {missing}", ())])
    else:
        try:
            n, k, lines = raw
        except (TypeError, ValueError):
            return ValidationReport.from_violations(
                [("shape", "expected (n, k, lines)", ())])

    violations = _check_structure(n, k, lines)
    if violations:
        return ValidationReport.from_violations(violations)

    norm = sorted(tuple(sorted(line)) for line in lines)
    if len(norm) != n:
        violations.append(("line-count", f"{len(norm)} lines, expected n={n}", ()))
    for i in range(1, len(norm)):
        if norm[i] == norm[i - 1]:
            violations.append(("duplicate-line", f"line {norm[i]} occurs twice", norm[i]))

    degree = [0] * n
    seen_pairs = {}
    for line in norm:
        for a in line:
            degree[a] += 1
        for i in range(len(line)):
            for j in range(i + 1, len(line)):
                pair = (line[i], line[j])
                if pair in seen_pairs:
                    violations.append(
                        ("pair-once", f"pair {{{pair[0]},{pair[1]}}} on two lines", pair))
                else:
                    seen_pairs[pair] = line
    for p in range(n):
        if degree[p] != k:
            violations.append(("point-degree", f"point {p} lies on {degree[p]} lines, expected {k}", (p,)))

    return ValidationReport.from_violations(violations)


@dataclass(frozen=True)
class Configuration:
    """A validated n_k configuration with normalized, sorted lines."""

    n: int
    k: int
    lines: tuple

    def __init__(self, n, k, lines):
        norm = tuple(sorted(tuple(sorted(line)) for line in lines))
        report = validate((n, k, norm))
        if not report.valid:
            raise ValueError("invalid configuration: "
                             + "; ".join(v[1] for v in report.violations[:5]))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "lines", norm)

    def incidences(self):
        return self.n * self.k

    def to_json_text(self) -> str:
        return json.dumps({"n": self.n, "k": self.k, "lines": [list(l) for l in self.lines]})

    def to_plain_text(self) -> str:
        head = f"{self.n} {self.k}"
        return "\n".join([head] + [" ".join(map(str, line)) for line in self.lines]) + "\n"


def parse_config(text: str) -> Configuration:
    """Parse either the JSON form or the plain-text form of a configuration."""
    stripped = text.lstrip()
    if not stripped:
        raise ConfigFormatError("empty configuration file")
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigFormatError(f"bad JSON: {exc}") from exc
        if not isinstance(doc, dict) or not {"n", "k", "lines"} <= set(doc):
            raise ConfigFormatError("JSON configuration needs fields n, k, lines")
        n, k, lines = doc["n"], doc["k"], doc["lines"]
    else:
        rows = [r for r in (row.strip() for row in stripped.splitlines())
                if r and not r.startswith("#")]
        try:
            n, k = map(int, rows[0].split())
            lines = [[int(tok) for tok in row.split()] for row in rows[1:]]
        except (ValueError, IndexError) as exc:
            raise ConfigFormatError(f"bad plain-text configuration: {exc}") from exc
    report = validate((n, k, lines))
    if not report.valid:
        raise ConfigFormatError("configuration violates: "
                                + "; ".join(v[1] for v in report.violations[:5]))
    return Configuration(n, k, lines)


def read_config(path) -> Configuration:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def dualize(c: Configuration) -> Configuration:
    """Swap the roles of points and lines.

    Point j of the dual is line j of `c`; line j of the dual collects the
    indices of the lines of `c` through point j.  Output is renormalized.
    """
    pencils = [[] for _ in range(c.n)]
    for idx, line in enumerate(c.lines):
        for p in line:
            pencils[p].append(idx)
    return Configuration(c.n, c.k, pencils)


def generalize(c: Configuration):
    """Rank-3 matroid of `c` read in general position.

    Dependent triples are exactly the 3-subsets of the k-point lines; every
    other triple is a basis (line intersections are simple crossings).
    """
    from itertools import combinations

    from .matroid import Rank3Matroid

    triples = set()
    for line in c.lines:
        triples.update(combinations(line, 3))
    return Rank3Matroid(c.n, frozenset(triples))


@dataclass(frozen=True)
class LeviGraph:
    """Bipartite incidence graph: point-vertices 0..n-1, line-vertices n..2n-1."""

    n: int
    edges: tuple

    @property
    def num_vertices(self):
        return 2 * self.n

    def adjacency(self):
        adj = [set() for _ in range(2 * self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


def levi_graph(c: Configuration) -> LeviGraph:
    edges = []
    for idx, line in enumerate(c.lines):
        for p in line:
            edges.append((p, c.n + idx))
    return LeviGraph(c.n, tuple(edges))


def covered_pair_count(c: Configuration) -> int:
    """Number of point pairs lying on some line: n * C(k, 2)."""
    return c.n * comb(c.k, 2)
