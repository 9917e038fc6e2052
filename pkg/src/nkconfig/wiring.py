"""Pseudoline arrangements as wiring diagrams.

A diagram sweeps n wires left to right through a sequence of events; the
event (p, s) reverses the s wires currently at positions p..p+s-1, which
is how s concurrent pseudolines cross at one point.  A valid diagram has
every wire pair reversing exactly once (each pair of pseudolines crosses
once), so the sweep ends in the full reversal of the start order.

Multi-crossings are first-class events: an s-crossing is one event, never
a cascade of transpositions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chirotope import Chirotope, triple_list
from .eulergate import EulerCounts
from .incidence import Configuration, ValidationReport


@dataclass(frozen=True)
class WiringDiagram:
    n: int
    events: tuple

    def __post_init__(self):
        object.__setattr__(self, "events",
                           tuple((int(p), int(s)) for p, s in self.events))


class WiringFormatError(ValueError):
    """Raised when a wiring file cannot be parsed."""


def validate_wiring(w: WiringDiagram) -> ValidationReport:
    """Check the sweep is well formed and every pair crosses exactly once."""
    violations = []
    if w.n < 1:
        violations.append(("n-positive", f"need at least one wire, got {w.n}", ()))
        return ValidationReport.from_violations(violations)
    for t, (p, s) in enumerate(w.events):
        if s < 2:
            violations.append(("event-size", f"event {t} has size {s} < 2", (t,)))
        if p < 0 or p + s > w.n:
            violations.append(("event-range", f"event {t} = ({p},{s}) leaves [0,{w.n})", (t,)))
    if violations:
        return ValidationReport.from_violations(violations)

    crossings = {}
    order = list(range(w.n))
    for t, (p, s) in enumerate(w.events):
        bundle = order[p:p + s]
        for i in range(s):
            for j in range(i + 1, s):
                pair = (min(bundle[i], bundle[j]), max(bundle[i], bundle[j]))
                crossings[pair] = crossings.get(pair, 0) + 1
        order[p:p + s] = reversed(bundle)
    for a in range(w.n):
        for b in range(a + 1, w.n):
            c = crossings.get((a, b), 0)
            if c != 1:
                violations.append(
                    ("pair-crossings", f"wires {a},{b} cross {c} times, expected 1", (a, b)))
    if order != list(range(w.n - 1, -1, -1)):
        violations.append(("final-order", "sweep does not end in the full reversal", ()))
    return ValidationReport.from_violations(violations)


def _require_valid(w: WiringDiagram):
    report = validate_wiring(w)
    if not report.valid:
        raise ValueError("invalid wiring diagram: "
                         + "; ".join(v[1] for v in report.violations[:3]))


def cell_counts(w: WiringDiagram) -> EulerCounts:
    """Sphere cell counts of the arrangement the diagram encodes.

    Every event lifts to two antipodal vertices; every wire becomes a
    closed curve cut into as many edges as it carries vertices.
    """
    _require_valid(w)
    f0 = 2 * len(w.events)
    order = list(range(w.n))
    per_wire = [0] * w.n
    for p, s in w.events:
        for wire in order[p:p + s]:
            per_wire[wire] += 1
        order[p:p + s] = reversed(order[p:p + s])
    f1 = sum(2 * c for c in per_wire)
    f2 = f1 - f0 + 2
    return EulerCounts(f0=f0, f1=f1, f2=f2, digon_slack=2 * f1 - 3 * f2)


def _cross_events(w: WiringDiagram):
    """Event index at which each wire pair crosses, plus event wire sets."""
    order = list(range(w.n))
    pair_event = {}
    event_wires = []
    for t, (p, s) in enumerate(w.events):
        bundle = order[p:p + s]
        event_wires.append(tuple(bundle))
        for i in range(s):
            for j in range(i + 1, s):
                a, b = bundle[i], bundle[j]
                pair_event[(min(a, b), max(a, b))] = t
        order[p:p + s] = reversed(bundle)
    return pair_event, event_wires


def realizes(w: WiringDiagram, c: Configuration, wire_to_line=None):
    """Does the diagram carry exactly the incidences of `c`?

    True iff the size-k events biject with c's points so that the wires
    through each such event are exactly the lines through the matching
    point (under the wire-to-line correspondence, identity by default),
    and every other event is a plain 2-crossing.  Returns (flag, mapping)
    with mapping point -> event index.
    """
    if w.n != c.n:
        raise ValueError(f"size mismatch: {w.n} wires vs {c.n} lines")
    _require_valid(w)
    if wire_to_line is None:
        wire_to_line = list(range(w.n))
    if sorted(wire_to_line) != list(range(c.n)):
        raise ValueError("wire_to_line must be a permutation of the line indices")

    pencil_of_point = {}
    for idx, line in enumerate(c.lines):
        for p in line:
            pencil_of_point.setdefault(p, set()).add(idx)
    point_of_pencil = {frozenset(v): p for p, v in pencil_of_point.items()}

    _pair_event, event_wires = _cross_events(w)
    mapping = {}
    used_events = set()
    for t, wires in enumerate(event_wires):
        s = len(wires)
        if s == 2:
            continue
        if s != c.k:
            return False, None
        lines_here = frozenset(wire_to_line[wire] for wire in wires)
        point = point_of_pencil.get(lines_here)
        if point is None or point in mapping:
            return False, None
        mapping[point] = t
        used_events.add(t)
    if len(mapping) != c.n:
        return False, None
    return True, mapping


def chirotope_of_wiring(w: WiringDiagram) -> Chirotope:
    """Rank-3 chirotope of the arrangement.

    For i < j < k the sign records which of j, k the wire i meets first
    along the sweep (-1 when j comes first, +1 when k does, 0 when the
    three wires meet in one event).  Matches the determinant signs of
    (slope, intercept) coordinates when the diagram comes from lines.
    """
    _require_valid(w)
    pair_event, _ = _cross_events(w)
    signs = []
    for i, j, k in triple_list(w.n):
        tij = pair_event[(i, j)]
        tik = pair_event[(i, k)]
        if tij == tik:
            signs.append(0)
        elif tij < tik:
            signs.append(-1)
        else:
            signs.append(1)
    return Chirotope(w.n, tuple(signs))


def wiring_from_lines(lines):
    """Sweep an exact straight-line arrangement into a wiring diagram.

    `lines` are (slope, intercept) pairs with pairwise distinct slopes.
    Returns (diagram, order) where wire w of the diagram is the input
    line order[w] (wires are indexed by start position, top first, and
    the top wire at the far left is the one of smallest slope).
    """
    coeffs = [(Fraction(a), Fraction(b)) for a, b in lines]
    n = len(coeffs)
    if len({a for a, _ in coeffs}) != n:
        raise ValueError("parallel lines never cross: slopes must be distinct")
    order = sorted(range(n), key=lambda i: coeffs[i])

    meets = {}
    for i in range(n):
        ai, ci = coeffs[i]
        for j in range(i + 1, n):
            aj, cj = coeffs[j]
            x = (cj - ci) / (ai - aj)
            y = ai * x + ci
            meets.setdefault((x, y), set()).update((i, j))

    position = {line: pos for pos, line in enumerate(order)}
    current = list(order)
    events = []
    for (_x, _y), group in sorted(meets.items()):
        positions = sorted(position[i] for i in group)
        s = len(positions)
        p = positions[0]
        if positions != list(range(p, p + s)):
            raise AssertionError("concurrent bundle is not contiguous; "
                                 "the input is not a simple sweep")
        events.append((p, s))
        current[p:p + s] = reversed(current[p:p + s])
        for pos in range(p, p + s):
            position[current[pos]] = pos
    return WiringDiagram(n, tuple(events)), order


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")


def render_svg(w: WiringDiagram) -> str:
    """Deterministic SVG: wires as polylines through evenly spaced event
    columns, each crossing drawn as one shared node, multi-crossings
    highlighted."""
    _require_valid(w)
    m = len(w.events)
    rowh, colw, margin, dx = 28, 48, 30, 16
    width = 2 * margin + colw * (m + 1)
    height = 2 * margin + rowh * (w.n - 1)

    def ypos(pos):
        return margin + rowh * pos

    order = list(range(w.n))
    verts = {wire: [(margin, ypos(wire))] for wire in range(w.n)}
    nodes = []
    for t, (p, s) in enumerate(w.events):
        x = margin + colw * (t + 1)
        yc = margin + rowh * p + rowh * (s - 1) // 2 + (rowh // 2 if (s - 1) % 2 else 0)
        nodes.append((x, yc, s))
        bundle = order[p:p + s]
        for offset, wire in enumerate(bundle):
            before = p + offset
            after = p + s - 1 - offset
            verts[wire].append((x - dx, ypos(before)))
            verts[wire].append((x, yc))
            verts[wire].append((x + dx, ypos(after)))
        order[p:p + s] = reversed(bundle)
    xe = width - margin
    for pos, wire in enumerate(order):
        verts[wire].append((xe, ypos(pos)))

    parts = ['<?xml version="1.0" encoding="UTF-8"?>',
             f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
             f'height="{height}" viewBox="0 0 {width} {height}">',
             '<rect width="100%" height="100%" fill="white"/>']
    for wire in range(w.n):
        colour = _PALETTE[wire % len(_PALETTE)]
        pts = " ".join(f"{x},{y}" for x, y in verts[wire])
        parts.append(f'<polyline fill="none" stroke="{colour}" stroke-width="2" '
                     f'points="{pts}"/>')
    for x, y, s in nodes:
        if s >= 3:
            parts.append(f'<circle cx="{x}" cy="{y}" r="6" fill="#d62728" '
                         f'stroke="black" stroke-width="1"/>')
        else:
            parts.append(f'<circle cx="{x}" cy="{y}" r="3" fill="black"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def parse_wiring(text: str):
    """Parse the wiring file format; returns (diagram, wire_to_line or None).

    Line 1: "n m"; then m lines "p s" in sweep order; optionally a final
    line "lines i0 i1 ... i_{n-1}" mapping wires to configuration lines.
    """
    rows = [r for r in (row.strip() for row in text.splitlines())
            if r and not r.startswith("#")]
    if not rows:
        raise WiringFormatError("empty wiring file")
    try:
        n, m = map(int, rows[0].split())
    except ValueError as exc:
        raise WiringFormatError(f"bad header: {exc}") from exc
    if len(rows) < 1 + m:
        raise WiringFormatError(f"expected {m} event rows, found {len(rows) - 1}")
    events = []
    for row in rows[1:1 + m]:
        try:
            p, s = map(int, row.split())
        except ValueError as exc:
            raise WiringFormatError(f"bad event row {row!r}") from exc
        events.append((p, s))
    wire_to_line = None
    for row in rows[1 + m:]:
        tokens = row.split()
        if tokens[0] != "lines":
            raise WiringFormatError(f"unexpected trailing row {row!r}")
        try:
            wire_to_line = [int(tok) for tok in tokens[1:]]
        except ValueError as exc:
            raise WiringFormatError(f"bad wire map {row!r}") from exc
        if len(wire_to_line) != n:
            raise WiringFormatError(f"wire map has {len(wire_to_line)} entries, need {n}")
    return WiringDiagram(n, tuple(events)), wire_to_line


def wiring_to_text(w: WiringDiagram, wire_to_line=None) -> str:
    rows = [f"{w.n} {len(w.events)}"]
    rows += [f"{p} {s}" for p, s in w.events]
    if wire_to_line is not None:
        rows.append("lines " + " ".join(str(i) for i in wire_to_line))
    return "\n".join(rows) + "\n"


def read_wiring(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_wiring(fh.read())
