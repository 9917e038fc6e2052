"""Exhaustive, isomorph-free generation of n_k configurations.

The fast enumerator is an orderly search: lines are added in increasing
lexicographic order and a partial line set survives only if it is the lex
least relabeling of itself (`canonical.is_lex_min`).  Removing the largest
line of a lex-least collection leaves a lex-least collection, so every
isomorphism class is reached exactly once, at its canonical representative.

`enumerate_naive` is the deliberately dumb cross-check: depth-first over
all lexicographically increasing line sets with only the definitional
degree/pair pruning, followed by brute-force isomorphism dedup.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from multiprocessing import get_context

from .canonical import bootstrap_frontiers, extend_canonical
from .incidence import Configuration, generalize
from .matroid import CanonicalCode, IsomorphismMatcher

DEFAULT_CELL_CEILING = 64


class ResourceGuardError(ValueError):
    """Search size guard tripped; pass force=True to override."""


class NaiveCapError(ValueError):
    """The naive oracle refuses sizes beyond its hard caps."""


@dataclass(frozen=True)
class CensusEntry:
    configuration: Configuration
    code: CanonicalCode
    orientability: object = None


def pack_code(n: int, k: int, lines) -> CanonicalCode:
    flat = bytearray([n, k])
    for line in lines:
        flat.extend(line)
    return CanonicalCode(bytes(flat))


def _feasible(n, k, deg, pairmask, lines_left):
    """Cheap completion checks: every deficient point still has enough
    uncoupled deficient partners and enough line slots."""
    deficient_mask = 0
    for p in range(n):
        if deg[p] < k:
            deficient_mask |= 1 << p
    mask = deficient_mask
    while mask:
        low = mask & -mask
        p = low.bit_length() - 1
        mask ^= low
        need = k - deg[p]
        if need > lines_left:
            return False
        avail = deficient_mask & ~pairmask[p] & ~low
        if avail.bit_count() < need * (k - 1):
            return False
    return True


def _orderly_extend(n, k, lines, deg, pairmask, out, stop_depth=None, frontier=None):
    m = len(lines)
    if m == n:
        out.append(tuple(lines))
        return
    if not _feasible(n, k, deg, pairmask, n - m):
        return
    if frontier is not None and m == stop_depth:
        frontier.append(tuple(lines))
        return
    p0 = next(p for p in range(n) if deg[p] < k)
    last = lines[-1] if lines else None
    if last is not None and p0 < last[0]:
        return
    floor_tail = last[1:] if (last is not None and p0 == last[0]) else None

    cands = [q for q in range(p0 + 1, n)
             if deg[q] < k and not pairmask[p0] >> q & 1]

    chosen = []

    def pick(start, chosen_mask):
        if len(chosen) == k - 1:
            tail = tuple(chosen)
            if floor_tail is not None and tail <= floor_tail:
                return
            newline = (p0, *tail)
            lines.append(newline)
            for p in newline:
                deg[p] += 1
            line_mask = (1 << p0) | chosen_mask
            for p in newline:
                pairmask[p] |= line_mask & ~(1 << p)
            if is_lex_min(lines, n):
                _orderly_extend(n, k, lines, deg, pairmask, out, stop_depth, frontier)
            for p in newline:
                pairmask[p] &= ~(line_mask & ~(1 << p))
                deg[p] -= 1
            lines.pop()
            return
        for idx in range(start, len(cands)):
            q = cands[idx]
            if pairmask[q] & chosen_mask:
                continue
            chosen.append(q)
            pick(idx + 1, chosen_mask | (1 << q))
            chosen.pop()

    pick(0, 0)


def _run_subtree(args):
    n, k, start_lines = args
    deg = [0] * n
    pairmask = [0] * n
    for line in start_lines:
        mask = 0
        for p in line:
            deg[p] += 1
            mask |= 1 << p
        for p in line:
            pairmask[p] |= mask & ~(1 << p)
    out = []
    _orderly_extend(n, k, list(start_lines), deg, pairmask, out)
    return out


def enumerate_configurations(n: int, k: int, workers: int = 1,
                             force: bool = False) -> list:
    """One canonical representative per isomorphism class, sorted by code.

    The census is combinatorial: the counting gate never filters anything
    here.  Guarded by a size ceiling (n*k <= 64) unless force is given.
    """
    if not isinstance(k, int) or k < 3:
        raise ValueError(f"k must be an integer >= 3, got {k!r}")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if n * k > DEFAULT_CELL_CEILING and not force:
        raise ResourceGuardError(
            f"n*k = {n * k} exceeds the ceiling {DEFAULT_CELL_CEILING}; "
            "pass force=True to run anyway")
    if n < k:
        return []

    stop_depth = min(k + 2, n)
    out = []
    frontier = []
    _orderly_extend(n, k, [], [0] * n, [0] * n, out,
                    stop_depth=stop_depth, frontier=frontier)

    tasks = [(n, k, node) for node in frontier]
    if workers and workers > 1 and len(tasks) > 1:
        with get_context("fork").Pool(processes=workers) as pool:
            for chunk in pool.imap_unordered(_run_subtree, tasks, chunksize=1):
                out.extend(chunk)
    else:
        for task in tasks:
            out.extend(_run_subtree(task))

    entries = []
    seen = set()
    for lines in out:
        code = pack_code(n, k, lines)
        if code in seen:
            warnings.warn(f"orderly search produced a duplicate class {code.hex()}; "
                          "deduplicating", RuntimeWarning)
            continue
        seen.add(code)
        entries.append(CensusEntry(configuration=Configuration(n, k, lines), code=code))
    entries.sort(key=lambda e: e.code)
    return entries


NAIVE_CAPS = {3: 12, 4: 14}


def _naive_extend(n, k, lines, deg, pairmask, sink):
    m = len(lines)
    if m == n:
        sink(tuple(lines))
        return
    p0 = -1
    for p in range(n):
        if deg[p] < k:
            p0 = p
            break
    last = lines[-1] if lines else None
    if last is not None and p0 < last[0]:
        return
    floor_tail = last[1:] if (last is not None and p0 == last[0]) else None

    cands = [q for q in range(p0 + 1, n)
             if deg[q] < k and not pairmask[p0] >> q & 1]
    chosen = []

    def pick(start, chosen_mask):
        if len(chosen) == k - 1:
            tail = tuple(chosen)
            if floor_tail is not None and tail <= floor_tail:
                return
            newline = (p0, *tail)
            lines.append(newline)
            line_mask = (1 << p0) | chosen_mask
            for p in newline:
                deg[p] += 1
                pairmask[p] |= line_mask & ~(1 << p)
            _naive_extend(n, k, lines, deg, pairmask, sink)
            for p in newline:
                pairmask[p] &= ~(line_mask & ~(1 << p))
                deg[p] -= 1
            lines.pop()
            return
        remaining = k - 1 - len(chosen)
        for idx in range(start, len(cands) - remaining + 1):
            q = cands[idx]
            if pairmask[q] & chosen_mask:
                continue
            chosen.append(q)
            pick(idx + 1, chosen_mask | (1 << q))
            chosen.pop()

    pick(0, 0)


def _refinement_fingerprint(n, lines, rounds: int = 3):
    """Relabeling-invariant color histogram of the incidence structure.

    Colors are re-interned each round by the sorted order of the raw color
    keys, so the result is deterministic across processes.
    """
    pcol = [0] * n
    lcol = [0] * len(lines)
    through = [[] for _ in range(n)]
    for i, line in enumerate(lines):
        for p in line:
            through[p].append(i)
    for _ in range(rounds):
        raw_p = [(pcol[p], tuple(sorted(lcol[i] for i in through[p]))) for p in range(n)]
        raw_l = [(lcol[i], tuple(sorted(pcol[p] for p in line)))
                 for i, line in enumerate(lines)]
        rank = {key: r for r, key in enumerate(sorted(set(raw_p)))}
        pcol = [rank[key] for key in raw_p]
        rank = {key: r for r, key in enumerate(sorted(set(raw_l)))}
        lcol = [rank[key] for key in raw_l]
    return (tuple(sorted(pcol)), tuple(sorted(lcol)))


def enumerate_naive(n: int, k: int) -> list:
    """All n_k configurations by dumb exhaustive search, one per class.

    Every labeled line set is generated (depth-first, lines increasing,
    only the definitional degree/pair constraints pruning), then classes
    are separated by brute-force permutation isomorphism.  Hard caps keep
    this oracle at oracle scale.
    """
    cap = NAIVE_CAPS.get(k)
    if cap is None or n > cap:
        raise NaiveCapError(f"naive enumeration capped at n <= {NAIVE_CAPS} by k; "
                            f"got n={n}, k={k}")
    if n < k:
        return []

    buckets = {}
    reps = []

    def sink(lines):
        fp = _refinement_fingerprint(n, lines)
        bucket = buckets.setdefault(fp, [])
        cfg = None
        for matcher in bucket:
            cfg = cfg or Configuration(n, k, lines)
            if matcher.find(cfg) is not None:
                return
        cfg = cfg or Configuration(n, k, lines)
        bucket.append(IsomorphismMatcher(cfg))
        reps.append(cfg)

    _naive_extend(n, k, [], [0] * n, [0] * n, sink)
    return reps


def classify_orientability(n: int, k: int, budget=None, workers: int = 1,
                           force: bool = False):
    """Census plus an orientability verdict per class.

    Returns (entries, summary); summary counts verdicts.  A budget blowout
    on one entry never aborts the batch.
    """
    from .chirotope import orientability

    entries = enumerate_configurations(n, k, workers=workers, force=force)
    tasks = [(e.configuration.n, e.configuration.k, e.configuration.lines, budget)
             for e in entries]
    if workers and workers > 1 and len(tasks) > 1:
        with get_context("fork").Pool(processes=workers) as pool:
            results = pool.map(_orient_task, tasks, chunksize=1)
    else:
        results = [_orient_task(t) for t in tasks]

    classified = [replace(entry, orientability=res) for entry, res in zip(entries, results)]
    summary = {"orientable": 0, "non_orientable": 0, "budget_exceeded": 0}
    for res in results:
        summary[res.outcome_key()] += 1
    return classified, summary


def _orient_task(args):
    from .chirotope import orientability

    n, k, lines, budget = args
    matroid = generalize(Configuration(n, k, lines))
    return orientability(matroid, budget=budget)
