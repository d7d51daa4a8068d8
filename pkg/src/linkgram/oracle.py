"""Brute-force linkage enumeration, independent of the parse engine.

Every connected non-crossing graph on the sentence's words is generated; for
each graph, every word picks a disjunct and an assignment of its incident
links to connector positions, and the endpoints must match.  Only usable on
short sentences.
"""
from __future__ import annotations

from functools import lru_cache

from .grammar import match


def _crosses(a, b):
    (p, q), (s, t) = a, b
    return p < s < q < t or s < p < t < q


def _connected(n, edges):
    if n <= 1:
        return True
    adj = [[] for _ in range(n)]
    for p, q in edges:
        adj[p].append(q)
        adj[q].append(p)
    seen, stack = {0}, [0]
    while stack:
        for v in adj[stack.pop()]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == n


@lru_cache(maxsize=None)
def connected_planar_graphs(n):
    """All connected non-crossing edge sets on ``n`` points in a row."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = []

    def rec(k, chosen):
        if k == len(pairs):
            if _connected(n, chosen):
                out.append(tuple(chosen))
            return
        rec(k + 1, chosen)
        e = pairs[k]
        if not any(_crosses(e, f) for f in chosen):
            chosen.append(e)
            rec(k + 1, chosen)
            chosen.pop()

    rec(0, [])
    return tuple(out)


def _degrees(n, edges):
    ld, rd = [0] * n, [0] * n
    for p, q in edges:
        rd[p] += 1
        ld[q] += 1
    return tuple(zip(ld, rd))


@lru_cache(maxsize=None)
def _degree_index(n):
    """Per position: (left degree, right degree) -> set of graph ids."""
    idx = [dict() for _ in range(n)]
    for g, edges in enumerate(connected_planar_graphs(n)):
        for i, pair in enumerate(_degrees(n, edges)):
            idx[i].setdefault(pair, set()).add(g)
    return idx


def _side_ok(lst, deg):
    if not lst:
        return deg == 0
    return deg == len(lst) or (deg > len(lst) and any(c.multi for c in lst))


def _splits(lst, k):
    """Ways to give ``k`` nearest-first neighbours to the positions of ``lst``.

    Each position takes a contiguous block of at least one neighbour, more
    only if it is a multi-connector.  Yields a tuple of positions.
    """
    m = len(lst)
    if m == 0:
        if k == 0:
            yield ()
        return

    def rec(pos, left):
        if pos == m - 1:
            if left == 1 or (left > 1 and lst[pos].multi):
                yield (pos,) * left
            return
        top = left - (m - 1 - pos)
        for size in range(1, top + 1):
            if size > 1 and not lst[pos].multi:
                break
            for rest in rec(pos + 1, left - size):
                yield (pos,) * size + rest

    if k >= m:
        yield from rec(0, k)


def enumerate_linkages(sentence):
    """All linkages as keys ``(disjuncts, ((lw, rw, lpos, rpos), ...))``."""
    toks = sentence.tokens
    n = len(toks)
    if n == 0:
        return []
    idx = _degree_index(n)
    graphs = connected_planar_graphs(n)
    alive = None
    for i, tok in enumerate(toks):
        ok = set()
        for pair, ids in idx[i].items():
            if any(_side_ok(d.left, pair[0]) and _side_ok(d.right, pair[1]) for d in tok.disjuncts):
                ok |= ids
        alive = ok if alive is None else alive & ok
        if not alive:
            return []
    out = []
    for g in sorted(alive):
        out.extend(_linkages_on(toks, graphs[g]))
    return out


def _linkages_on(toks, edges):
    n = len(toks)
    lnb = [sorted((p for p, q in edges if q == w), reverse=True) for w in range(n)]
    rnb = [sorted(q for p, q in edges if p == w) for w in range(n)]
    options = []
    for w, tok in enumerate(toks):
        opts = []
        for d in tok.disjuncts:
            for la in _splits(d.left, len(lnb[w])):
                for ra in _splits(d.right, len(rnb[w])):
                    opts.append((d, dict(zip(lnb[w], la)), dict(zip(rnb[w], ra))))
        if not opts:
            return []
        options.append(opts)
    found = []
    chosen = []

    def rec(w):
        if w == n:
            links = []
            for p, q in edges:
                links.append((p, q, chosen[p][2][q], chosen[q][1][p]))
            found.append((tuple(c[0] for c in chosen), tuple(sorted(links))))
            return
        for opt in options[w]:
            d, la, _ = opt
            good = True
            for p, pos in la.items():
                dp, _, rap = chosen[p]
                if not match(dp.right[rap[w]], d.left[pos]):
                    good = False
                    break
            if good:
                chosen.append(opt)
                rec(w + 1)
                chosen.pop()

    rec(0)
    return found


def oracle_count(sentence) -> int:
    return len(enumerate_linkages(sentence))
