"""Lexicographically minimal relabelings of line sets.

The canonical representative of a (possibly partial) line set is the lex
smallest sorted line list obtainable by relabeling points.  Minimization
works slot by slot: the image is built one line at a time, and instead of
committing every point to a concrete label immediately, points are parked
in "blocks" (a label tuple paired with the point set that will occupy it,
internal assignment deferred).  A block only splits when a later line
forces a distinction, which collapses the factorial blow-up of
interchangeable labels.

The test `is_lex_min` runs the same search against the input itself and
exits as soon as any strictly smaller image line is achievable; by the
prefix-exchange argument this is exact, not a heuristic.
"""

from __future__ import annotations


def _normalize(lines):
    return tuple(sorted(tuple(sorted(line)) for line in lines))


def _apply(line, line_idx, pb, blocks, free, consumed):
    """Split blocks so that `line` maps exactly to its minimal candidate."""
    tally = {}
    for p in line:
        b = pb[p]
        if b >= 0:
            if b in tally:
                tally[b].append(p)
            else:
                tally[b] = [p]
    new_blocks = []
    for b, blk in enumerate(blocks):
        taken = tally.get(b)
        if taken is None:
            new_blocks.append(blk)
            continue
        labels, points = blk
        r = len(taken)
        taken_t = tuple(sorted(taken))
        new_blocks.append((labels[:r], taken_t))
        if r < len(labels):
            rest = tuple(p for p in points if p not in taken)
            new_blocks.append((labels[r:], rest))
    free_pts = tuple(sorted(p for p in line if pb[p] < 0))
    if free_pts:
        nfree = len(free_pts)
        new_blocks.append((free[:nfree], free_pts))
        free = free[nfree:]
    new_blocks.sort()
    return (tuple(new_blocks), free, consumed | (1 << line_idx))


def _state_pb(blocks, n):
    pb = [-1] * n
    for b, (_labels, points) in enumerate(blocks):
        for p in points:
            pb[p] = b
    return pb


def is_lex_min(lines, n: int) -> bool:
    """True iff the sorted line list is the lex least member of its orbit
    under point relabeling."""
    target = _normalize(lines)
    m = len(target)
    if m == 0:
        return True
    free0 = tuple(range(n))
    frontier = {((), free0, 0)}
    full = (1 << m) - 1
    for t in range(m):
        goal = target[t]
        survivors = set()
        for state in frontier:
            blocks, free, consumed = state
            pb = _state_pb(blocks, n)
            todo = full & ~consumed
            while todo:
                low = todo & -todo
                idx = low.bit_length() - 1
                todo ^= low
                line = target[idx]
                cand = []
                tally = {}
                nfree = 0
                for p in line:
                    b = pb[p]
                    if b < 0:
                        nfree += 1
                    else:
                        tally[b] = tally.get(b, 0) + 1
                for b, r in tally.items():
                    cand += blocks[b][0][:r]
                if nfree:
                    cand += free[:nfree]
                cand.sort()
                cand = tuple(cand)
                if cand < goal:
                    return False
                if cand == goal:
                    survivors.add(_apply(line, idx, pb, blocks, free, consumed))
        if not survivors:
            return True
        frontier = survivors
    return True


def _sweep_states(states, target, todo_full, goal, n, survivors):
    """Process one slot for `states`, trying every unconsumed line.

    Returns False as soon as a strictly smaller image line is achievable;
    equality continuations are added to `survivors`.
    """
    for state in states:
        blocks, free, consumed = state
        pb = _state_pb(blocks, n)
        todo = todo_full & ~consumed
        while todo:
            low = todo & -todo
            idx = low.bit_length() - 1
            todo ^= low
            line = target[idx]
            cand = []
            tally = {}
            nfree = 0
            for p in line:
                b = pb[p]
                if b < 0:
                    nfree += 1
                else:
                    tally[b] = tally.get(b, 0) + 1
            for b, r in tally.items():
                cand += blocks[b][0][:r]
            if nfree:
                cand += free[:nfree]
            cand.sort()
            cand = tuple(cand)
            if cand < goal:
                return False
            if cand == goal:
                survivors.add(_apply(line, idx, pb, blocks, free, consumed))
    return True


def extend_canonical(cache, lines, new_line, n: int):
    """Incremental canonicity test for `lines + [new_line]`.

    `lines` must be canonical (lex least, sorted) with `cache` its survivor
    evolution, and `new_line` must sort after every existing line.  Any
    strictly smaller relabeling of the extended set has to involve the new
    line before its first improvement (otherwise it would contradict the
    canonicity of `lines`), so cached states only ever try the new line,
    and full per-line work happens just on states that consumed it.

    Returns the child's survivor evolution when the extension is
    canonical, else None.
    """
    m = len(lines)
    target = tuple(lines) + (new_line,)
    x_idx = m
    x_bit = 1 << m
    todo_full = (1 << (m + 1)) - 1
    new_cache = [cache[0]]
    g_states = set()
    for t in range(m + 1):
        goal = target[t]
        g_next = set()
        # cached (new-line-free) states: only the new line can beat or tie
        for state in cache[t]:
            blocks, free, consumed = state
            pb = _state_pb(blocks, n)
            cand = []
            tally = {}
            nfree = 0
            for p in new_line:
                b = pb[p]
                if b < 0:
                    nfree += 1
                else:
                    tally[b] = tally.get(b, 0) + 1
            for b, r in tally.items():
                cand += blocks[b][0][:r]
            if nfree:
                cand += free[:nfree]
            cand.sort()
            cand = tuple(cand)
            if cand < goal:
                return None
            if cand == goal:
                g_next.add(_apply(new_line, x_idx, pb, blocks, free, consumed))
        # states that consumed the new line: full processing
        if not _sweep_states(g_states, target, todo_full, goal, n, g_next):
            return None
        g_states = g_next
        parent_next = cache[t + 1] if t + 1 <= m else set()
        new_cache.append(parent_next | g_next if g_next else parent_next)
    return new_cache


def bootstrap_frontiers(lines, n: int):
    """Survivor evolution of a canonical line list, built line by line."""
    cache = [{((), tuple(range(n)), 0)}]
    prefix = []
    for line in sorted(tuple(sorted(l)) for l in lines):
        cache = extend_canonical(cache, prefix, line, n)
        if cache is None:
            raise ValueError("input line list is not canonical")
        prefix.append(line)
    return cache


def min_image(lines, n: int):
    """The lex smallest relabeled version of the line set.

    Frontier search: at each slot keep every block state that can still
    realize the minimal prefix, since tied states may diverge later.
    """
    target = _normalize(lines)
    m = len(target)
    if m == 0:
        return ()
    free0 = tuple(range(n))
    frontier = {((), free0, 0)}
    full = (1 << m) - 1
    image = []
    for _t in range(m):
        best = None
        picks = []
        for state in frontier:
            blocks, free, consumed = state
            pb = _state_pb(blocks, n)
            todo = full & ~consumed
            while todo:
                low = todo & -todo
                idx = low.bit_length() - 1
                todo ^= low
                line = target[idx]
                cand = []
                tally = {}
                nfree = 0
                for p in line:
                    b = pb[p]
                    if b < 0:
                        nfree += 1
                    else:
                        tally[b] = tally.get(b, 0) + 1
                for b, r in tally.items():
                    cand += blocks[b][0][:r]
                if nfree:
                    cand += free[:nfree]
                cand.sort()
                cand = tuple(cand)
                if best is None or cand < best:
                    best = cand
                    picks = [(state, pb, idx)]
                elif cand == best:
                    picks.append((state, pb, idx))
        image.append(best)
        frontier = set()
        for (blocks, free, consumed), pb, idx in picks:
            frontier.add(_apply(target[idx], idx, pb, blocks, free, consumed))
    return tuple(image)
