"""Disjunct pruning, power pruning and the fast-match tables.

Both pruning procedures alternate left-to-right and right-to-left passes
over the words and stop once a pass after the first changes nothing.  They
only delete disjuncts that can take part in no linkage, so counts and
linkage sets are unchanged.

Nearest-word bounds are absolute word indices stored per word, per
disjunct, as ``(left bounds, right bounds)`` aligned with the nearest-first
connector lists.  A left bound is the closest word (largest index) the
connector may link to; a right bound the closest word (smallest index).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .grammar import match


@dataclass
class PruneReport:
    """Disjunct counts per word after each pass, for the debug table."""

    rows: list = field(default_factory=list)  # (label, counts)

    @property
    def passes(self):
        return len(self.rows) - 1

    def table(self) -> str:
        width = max(len(lab) for lab, _ in self.rows) + 1
        return "\n".join(
            (lab + ":").ljust(width + 1) + "\t".join(str(c) for c in counts)
            for lab, counts in self.rows
        )


def _rebuild(sentence, keep, nearest=None):
    toks = []
    for tok, idx in zip(sentence.tokens, keep):
        toks.append(tok.with_disjuncts([tok.disjuncts[i] for i in idx]))
    if nearest is not None:
        nearest = [[nearest[w][i] for i in idx] for w, idx in enumerate(keep)]
    return sentence.replace(toks, nearest)


def observation_bounds(sentence):
    """Nearest-word bounds implied by list depth alone.

    A connector at nearest-first index ``k`` links at least ``k + 1`` words
    away from its word.
    """
    out = []
    for w, tok in enumerate(sentence.tokens):
        row = []
        for d in tok.disjuncts:
            row.append(
                (
                    tuple(w - k - 1 for k in range(len(d.left))),
                    tuple(w + k + 1 for k in range(len(d.right))),
                )
            )
        out.append(row)
    return out


# -- plain pruning --------------------------------------------------------


class _ConnectorSet:
    """Connectors bucketed by head; different buckets never match."""

    def __init__(self):
        self.buckets = {}

    def add(self, c):
        self.buckets.setdefault(c.key, set()).add(c)

    def matches_right_of(self, c):
        # some stored right-pointing connector matches left-pointing c
        return any(match(x, c) for x in self.buckets.get(c.key, ()))

    def matches_left_of(self, c):
        return any(match(c, x) for x in self.buckets.get(c.key, ()))


def prune(sentence, report: "PruneReport | None" = None):
    toks = sentence.tokens
    n = len(toks)
    alive = [list(range(len(t.disjuncts))) for t in toks]
    if report is not None:
        report.rows.append(("Initial", [len(a) for a in alive]))
    passes = 0
    while True:
        changed = False
        forward = passes % 2 == 0
        s = _ConnectorSet()
        order = range(n) if forward else range(n - 1, -1, -1)
        for w in order:
            keep = []
            for i in alive[w]:
                d = toks[w].disjuncts[i]
                if forward:
                    ok = all(s.matches_right_of(c) for c in d.left)
                else:
                    ok = all(s.matches_left_of(c) for c in d.right)
                if ok:
                    keep.append(i)
            if len(keep) != len(alive[w]):
                changed = True
            alive[w] = keep
            for i in keep:
                d = toks[w].disjuncts[i]
                for c in d.right if forward else d.left:
                    s.add(c)
        passes += 1
        if report is not None:
            report.rows.append(("after " + ("L->R" if forward else "R->L"), [len(a) for a in alive]))
        if passes > 1 and not changed:
            break
    return _rebuild(sentence, alive, sentence.nearest)


def prune_step_possible(sentence, w, i, alive):
    """Whether disjunct ``i`` of word ``w`` may be deleted by one pruning step."""
    toks = sentence.tokens
    d = toks[w].disjuncts[i]
    for c in d.left:
        if not any(
            match(x, c)
            for v in range(w)
            for j in alive[v]
            for x in toks[v].disjuncts[j].right
        ):
            return True
    for c in d.right:
        if not any(
            match(c, x)
            for v in range(w + 1, len(toks))
            for j in alive[v]
            for x in toks[v].disjuncts[j].left
        ):
            return True
    return False


def random_order_prune(sentence, seed=0):
    """Apply single pruning steps in a random order until none applies.

    Returns the surviving disjunct index sets.  Used to check that pruning
    reaches the same fixpoint whatever the order.
    """
    rng = random.Random(seed)
    alive = [set(range(len(t.disjuncts))) for t in sentence.tokens]
    while True:
        cands = [(w, i) for w, a in enumerate(alive) for i in a]
        rng.shuffle(cands)
        for w, i in cands:
            if prune_step_possible(sentence, w, i, alive):
                alive[w].discard(i)
                break
        else:
            return alive


# -- power pruning --------------------------------------------------------


def _initial_bounds(sentence):
    base = observation_bounds(sentence)
    if sentence.nearest is None:
        return base
    out = []
    for w, (brow, srow) in enumerate(zip(base, sentence.nearest)):
        row = []
        for (bl, br), (sl, sr) in zip(brow, srow):
            row.append(
                (tuple(min(a, b) for a, b in zip(bl, sl)), tuple(max(a, b) for a, b in zip(br, sr)))
            )
        out.append(row)
    return out


def power_prune(sentence, report: "PruneReport | None" = None):
    toks = sentence.tokens
    n = len(toks)
    nw = [[(list(l), list(r)) for l, r in row] for row in _initial_bounds(sentence)]
    alive = [list(range(len(t.disjuncts))) for t in toks]
    if report is not None:
        report.rows.append(("Initial", [len(a) for a in alive]))
    passes = 0
    while True:
        forward = passes % 2 == 0
        changed = _power_pass(toks, n, nw, alive, forward)
        passes += 1
        if report is not None:
            report.rows.append(("after P.P. " + ("L->R" if forward else "R->L"), [len(a) for a in alive]))
        if passes > 1 and not changed:
            break
    nearest = [[(tuple(l), tuple(r)) for l, r in row] for row in nw]
    return _rebuild(sentence, alive, nearest)


def _power_pass(toks, n, nw, alive, forward):
    """One pass; returns whether any bound moved or disjunct died."""
    changed = False
    tables = {}  # word -> head -> [(connector, bound, pos, length)]
    order = range(n) if forward else range(n - 1, -1, -1)
    for w in order:
        keep = []
        for i in alive[w]:
            d = toks[w].disjuncts[i]
            lst = d.left if forward else d.right
            bounds = nw[w][i][0 if forward else 1]
            ok, moved = _tighten(w, lst, bounds, tables, forward, n)
            changed |= moved
            if ok:
                keep.append(i)
            else:
                changed = True
        alive[w] = keep
        table = {}
        for i in keep:
            d = toks[w].disjuncts[i]
            lst = d.right if forward else d.left
            b = nw[w][i][1 if forward else 0]
            for k, c in enumerate(lst):
                table.setdefault(c.key, []).append((c, b[k], k, len(lst)))
        tables[w] = table
    return changed


def _tighten(w, lst, bounds, tables, forward, n):
    """Recompute the bounds of one connector list, nearest connector first.

    ``forward`` means ``lst`` is a left list and partners lie at lower
    indices.  Returns (survives, any bound changed).
    """
    step = -1 if forward else 1
    limit = -1 if forward else n
    moved = False
    prev = None
    m = len(lst)
    for k, c in enumerate(lst):
        start = w + step if k == 0 else prev + step
        start = min(start, bounds[k]) if forward else max(start, bounds[k])
        found = None
        v = start
        while v != limit:
            if _has_partner(w, v, c, k, m, tables.get(v), forward):
                found = v
                break
            v += step
        if found is None:
            return False, True
        if found != bounds[k]:
            bounds[k] = found
            moved = True
        prev = found
    return True, moved


def _has_partner(w, v, c, k, m, table, forward):
    if not table:
        return False
    adjacent = abs(w - v) == 1
    me_last = k == 0
    me_deep = k != m - 1
    for x, xb, xk, xm in table.get(c.key, ()):
        # criterion 1: the partner's own bound must reach w
        if forward:
            if xb > w or not match(x, c):
                continue
        else:
            if xb < w or not match(c, x):
                continue
        x_last = xk == 0
        # criterion 2: no deep-deep links
        if me_deep and xk != xm - 1:
            continue
        # criterion 3: neighbours link nearest connector to nearest connector
        if adjacent and not (me_last and x_last):
            continue
        # criterion 4: distant links are not both nearest unless one is multi
        if not adjacent and me_last and x_last and not (c.multi or x.multi):
            continue
        return True
    return False


# -- fast match -----------------------------------------------------------


class FastMatchTables:
    """Per-word left and right tables of disjuncts keyed by first connector.

    The first connector of a list is the farthest one, the one a link from
    the region boundary reaches.  Buckets are sorted so the disjunct whose
    first connector may link nearest comes first.
    """

    def __init__(self, sentence, keys=None):
        bounds = sentence.nearest if sentence.nearest is not None else observation_bounds(sentence)
        self.n = len(sentence.tokens)
        self.left, self.right = [], []
        self.lbound, self.rbound = [], []
        for w, tok in enumerate(sentence.tokens):
            lt, rt, lb, rb = {}, {}, [], []
            for i, d in enumerate(tok.disjuncts):
                bl, br = bounds[w][i]
                lb.append(bl[-1] if d.left else None)
                rb.append(br[-1] if d.right else None)
                if d.left:
                    lt.setdefault(d.left[-1].key, []).append(i)
                if d.right:
                    rt.setdefault(d.right[-1].key, []).append(i)
            for b in lt.values():
                b.sort(key=lambda i: (w - lb[i], i))
            for b in rt.values():
                b.sort(key=lambda i: (rb[i] - w, i))
            self.left.append(lt)
            self.right.append(rt)
            self.lbound.append(lb)
            self.rbound.append(rb)

    def candidates(self, W, L, lkey, R, rkey):
        """Disjunct indices of ``W`` that might link to ``l`` on word ``L``
        or ``r`` on word ``R``; ``None`` keys stand for exhausted lists."""
        out = set()
        if lkey is not None:
            lb = self.lbound[W]
            for i in self.left[W].get(lkey, ()):
                if lb[i] < L:
                    break
                out.add(i)
        if rkey is not None:
            rb = self.rbound[W]
            for i in self.right[W].get(rkey, ()):
                if rb[i] > R:
                    break
                out.add(i)
        return sorted(out)


def build_fast_match(sentence) -> FastMatchTables:
    return FastMatchTables(sentence)


def fast_match_candidates(tables, W, L, l, R, r):
    """Candidates for connectors ``l`` (on word ``L``) and ``r`` (on ``R``)."""
    return tables.candidates(W, L, None if l is None else l.key, R, None if r is None else r.key)


def full_pipeline(sentence, use_prune=True, use_power=True, report=None):
    if use_prune:
        sentence = prune(sentence, report)
    if use_power:
        sentence = power_prune(sentence, report)
    return sentence
