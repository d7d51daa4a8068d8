"""Counting and extracting linkages by memoized span recursion.

``count(L, R, l, r)`` is the number of ways to link the words strictly
between ``L`` and ``R`` given the unsatisfied connector lists ``l`` (on the
right list of ``L``) and ``r`` (on the left list of ``R``).  Internally the
connector lists are walked far-to-near, so the head of a list is the
connector that links farthest away.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field

from .grammar import intersect, match
from .pruning import FastMatchTables, observation_bounds

DEFAULT_MAX_LINKAGES = 1000

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


@dataclass(frozen=True, order=True)
class Link:
    lw: int
    rw: int
    lpos: int  # index in the nearest-first right list of word lw
    rpos: int  # index in the nearest-first left list of word rw
    lconn: object = field(compare=False)
    rconn: object = field(compare=False)

    @property
    def label(self) -> str:
        a, b = self.lconn, self.rconn
        if a.fat is not None or b.fat is not None:
            return a.label() if a.priority == 1 else b.label()
        return str(intersect(a.name, b.name))

    @property
    def is_fat(self):
        return self.lconn.fat is not None


@dataclass
class Linkage:
    sentence: object
    disjuncts: list  # chosen Disjunct per word
    links: list  # sorted Link objects

    def link_pairs(self):
        return [(k.lw, k.rw) for k in self.links]

    def key(self):
        return (tuple(self.disjuncts), tuple((k.lw, k.rw, k.lpos, k.rpos) for k in self.links))

    def words(self):
        return [
            w.display_for(d) for w, d in zip(self.sentence.tokens, self.disjuncts)
        ]


class Parser:
    """A parse context for one prepared sentence.

    ``fast_match`` restricts the intermediate disjuncts to those whose first
    connector can reach ``l`` or ``r``.  ``memo`` and ``canonical`` exist so
    tests can switch off memoization or the ``l = nil`` guard.
    """

    def __init__(self, sentence, fast_match=True, memo=True, canonical=True):
        self.sentence = sentence
        self.n = len(sentence.tokens)
        self.fast = fast_match
        self.use_memo = memo
        self.canonical = canonical
        self.memo = {}
        self.calls = 0
        self._total = None

        conns, cid = [], {}

        def intern(c):
            i = cid.get(c)
            if i is None:
                i = cid[c] = len(conns)
                conns.append(c)
            return i

        self.lfar, self.rfar = [], []
        for tok in sentence.tokens:
            self.lfar.append([tuple(intern(c) for c in reversed(d.left)) for d in tok.disjuncts])
            self.rfar.append([tuple(intern(c) for c in reversed(d.right)) for d in tok.disjuncts])
        self.conns = conns
        self.multi = [c.multi for c in conns]
        self.keys = [c.key for c in conns]
        self._match = {}

        bounds = sentence.nearest if sentence.nearest is not None else observation_bounds(sentence)
        # far-first nearest-word bounds aligned with lfar / rfar
        self.lnw = [[tuple(reversed(b[0])) for b in row] for row in bounds]
        self.rnw = [[tuple(reversed(b[1])) for b in row] for row in bounds]
        self.tables = FastMatchTables(sentence)

    def candidates(self, W, L, lcid, R, rcid):
        """Disjunct indices of ``W`` that might link to ``l`` or ``r``."""
        if not self.fast:
            return range(len(self.lfar[W]))
        keys = self.keys
        return self.tables.candidates(
            W, L, None if lcid is None else keys[lcid], R, None if rcid is None else keys[rcid]
        )

    def m(self, a, b):
        k = (a, b)
        v = self._match.get(k)
        if v is None:
            v = self._match[k] = match(self.conns[a], self.conns[b])
        return v

    # -- counting ----------------------------------------------------------

    def count(self):
        if self._total is None:
            t = 0
            for i, lf in enumerate(self.lfar[0] if self.n else []):
                if not lf:
                    rf = self.rfar[0][i]
                    t += self._count(0, self.n, i if rf else -1, 0, -1, 0)
            self._total = t
        return self._total

    def _range(self, L, R, li, lp, ri, rp):
        lo, hi = L + 1, R - 1
        if self.fast:
            if li >= 0:
                lo = max(lo, self.rnw[L][li][lp])
            if ri >= 0:
                hi = min(hi, self.lnw[R][ri][rp])
        return lo, hi

    def _count(self, L, R, li, lp, ri, rp):
        key = (L, R, li, lp, ri, rp)
        if self.use_memo:
            v = self.memo.get(key)
            if v is not None:
                return v
        self.calls += 1
        if R == L + 1:
            v = 1 if (li < 0 and ri < 0) else 0
        elif li < 0 and ri < 0:
            v = 0
        else:
            v = self._loop(L, R, li, lp, ri, rp)
        if self.use_memo:
            self.memo[key] = v
        return v

    def _advance(self, lst, i, p):
        # cursor after consuming position p of list lst (-1 means nil)
        if p + 1 < len(lst):
            return i, p + 1
        return -1, 0

    def _ends(self, c, after, here, dlist, i):
        """Cursor pairs to recurse on below a link between ``c`` and ``dlist[0]``.

        The plain call advances both ends.  A multi-connector end may also
        stay put so that it links again under the current link; with two
        multi-connector ends that gives three extra calls.
        """
        mine = [after]
        if self.multi[c]:
            mine.append(here)
        theirs = [self._advance(dlist, i, 0)]
        if self.multi[dlist[0]]:
            theirs.append((i, 0))
        return [(a, b) for a in mine for b in theirs]

    def _loop(self, L, R, li, lp, ri, rp):
        count = self._count
        lfar, rfar = self.lfar, self.rfar
        lst_l = rfar[L][li] if li >= 0 else None
        lst_r = lfar[R][ri] if ri >= 0 else None
        lc = lst_l[lp] if li >= 0 else None
        rc = lst_r[rp] if ri >= 0 else None
        nl = self._advance(lst_l, li, lp) if li >= 0 else None
        nr = self._advance(lst_r, ri, rp) if ri >= 0 else None
        lo, hi = self._range(L, R, li, lp, ri, rp)
        total = 0
        for W in range(lo, hi + 1):
            for i in self.candidates(W, L, lc, R, rc):
                dl = lfar[W][i]
                dr = rfar[W][i]
                leftcount = 0
                if lc is not None and dl and self.m(lc, dl[0]):
                    for a, b in self._ends(lc, nl, (li, lp), dl, i):
                        leftcount += count(L, W, *a, *b)
                rightcount = 0
                if rc is not None and dr and self.m(dr[0], rc):
                    for b, a in self._ends(rc, nr, (ri, rp), dr, i):
                        rightcount += count(W, R, *a, *b)
                total += leftcount * rightcount
                if leftcount:
                    total += leftcount * count(W, R, i if dr else -1, 0, ri, rp)
                if rightcount and (li < 0 or not self.canonical):
                    total += rightcount * count(L, W, li, lp, i if dl else -1, 0)
        return total

    # -- extraction --------------------------------------------------------

    def linkages(self, max_linkages=DEFAULT_MAX_LINKAGES):
        """Up to ``max_linkages`` linkages in a deterministic order."""
        if self.count() == 0 or max_linkages <= 0:
            return []
        if not self.use_memo:
            raise ValueError("extraction needs memoization")
        out = []
        for i, lf in enumerate(self.lfar[0]):
            if lf:
                continue
            rf = self.rfar[0][i]
            start = (0, self.n, i if rf else -1, 0, -1, 0)
            if self._count(*start) == 0:
                continue
            for links, chosen in self._enum(*start):
                choice = dict(chosen)
                choice[0] = i
                out.append(self._build(links, choice))
                if len(out) >= max_linkages:
                    return out
        return out

    def _build(self, links, choice):
        toks = self.sentence.tokens
        dis = [toks[w].disjuncts[choice[w]] for w in range(self.n)]
        objs = []
        for (lw, li, lp, rw, ri, rp) in links:
            dl = toks[lw].disjuncts[li]
            dr = toks[rw].disjuncts[ri]
            # far-first positions back to nearest-first indices
            a = len(dl.right) - 1 - lp
            b = len(dr.left) - 1 - rp
            objs.append(Link(lw, rw, a, b, dl.right[a], dr.left[b]))
        objs.sort()
        return Linkage(self.sentence, dis, objs)

    def _sub(self, L, R, li, lp, ri, rp):
        if self._count(L, R, li, lp, ri, rp) == 0:
            return iter(())
        return self._enum(L, R, li, lp, ri, rp)

    def _enum(self, L, R, li, lp, ri, rp):
        """Yield (links, chosen) pairs; each link is a tuple of cursors."""
        if R == L + 1:
            if li < 0 and ri < 0:
                yield (), ()
            return
        if li < 0 and ri < 0:
            return
        lfar, rfar = self.lfar, self.rfar
        lst_l = rfar[L][li] if li >= 0 else None
        lst_r = lfar[R][ri] if ri >= 0 else None
        lc = lst_l[lp] if li >= 0 else None
        rc = lst_r[rp] if ri >= 0 else None
        nl = self._advance(lst_l, li, lp) if li >= 0 else None
        nr = self._advance(lst_r, ri, rp) if ri >= 0 else None
        lo, hi = self._range(L, R, li, lp, ri, rp)
        for W in range(lo, hi + 1):
            for i in self.candidates(W, L, lc, R, rc):
                dl = lfar[W][i]
                dr = rfar[W][i]
                lcalls = []
                if lc is not None and dl and self.m(lc, dl[0]):
                    for a, b in self._ends(lc, nl, (li, lp), dl, i):
                        lcalls.append((L, W, *a, *b))
                rcalls = []
                if rc is not None and dr and self.m(dr[0], rc):
                    for b, a in self._ends(rc, nr, (ri, rp), dr, i):
                        rcalls.append((W, R, *a, *b))
                lcalls = [c for c in lcalls if self._count(*c)]
                rcalls = [c for c in rcalls if self._count(*c)]
                llink = (L, li, lp, W, i, 0)
                rlink = (W, i, 0, R, ri, rp)
                here = ((W, i),)
                for a in lcalls:
                    for b in rcalls:
                        for la, ca in self._enum(*a):
                            for lb, cb in self._enum(*b):
                                yield (llink, rlink) + la + lb, here + ca + cb
                if lcalls:
                    rest = (W, R, i if dr else -1, 0, ri, rp)
                    if self._count(*rest):
                        for a in lcalls:
                            for la, ca in self._enum(*a):
                                for lb, cb in self._enum(*rest):
                                    yield (llink,) + la + lb, here + ca + cb
                if rcalls and (li < 0 or not self.canonical):
                    rest = (L, W, li, lp, i if dl else -1, 0)
                    if self._count(*rest):
                        for b in rcalls:
                            for lb, cb in self._enum(*b):
                                for la, ca in self._enum(*rest):
                                    yield (rlink,) + lb + la, here + cb + ca

    # -- statistics --------------------------------------------------------

    def cursor_count(self):
        """Connector positions plus one nil position per word."""
        return sum(len(x) for row in self.lfar for x in row) + sum(
            len(x) for row in self.rfar for x in row
        ) + self.n


def count_linkages(sentence, **kw) -> int:
    return Parser(sentence, **kw).count()


def extract_linkages(sentence, max_linkages=DEFAULT_MAX_LINKAGES, **kw):
    return Parser(sentence, **kw).linkages(max_linkages)


def verify_linkage(sentence, lk: Linkage) -> bool:
    """Independent check of the linking rules for one linkage."""
    toks = sentence.tokens
    n = len(toks)
    if len(lk.disjuncts) != n:
        return False
    for tok, d in zip(toks, lk.disjuncts):
        if d not in tok.disjuncts:
            return False
    pairs = set()
    right_use = [dict() for _ in range(n)]
    left_use = [dict() for _ in range(n)]
    for k in lk.links:
        if not (0 <= k.lw < k.rw < n):
            return False
        if (k.lw, k.rw) in pairs:
            return False  # exclusion
        pairs.add((k.lw, k.rw))
        dl, dr = lk.disjuncts[k.lw], lk.disjuncts[k.rw]
        if not (0 <= k.lpos < len(dl.right) and 0 <= k.rpos < len(dr.left)):
            return False
        if dl.right[k.lpos] != k.lconn or dr.left[k.rpos] != k.rconn:
            return False
        if not match(k.lconn, k.rconn):
            return False
        right_use[k.lw].setdefault(k.lpos, []).append(k.rw)
        left_use[k.rw].setdefault(k.rpos, []).append(k.lw)
    # planarity
    ordered = sorted(pairs)
    for a, (p, q) in enumerate(ordered):
        for (s, t) in ordered[a + 1 :]:
            if p < s < q < t:
                return False
    # satisfaction and ordering
    for w in range(n):
        d = lk.disjuncts[w]
        for side, lst, use, sign in (
            ("r", d.right, right_use[w], 1),
            ("l", d.left, left_use[w], -1),
        ):
            if set(use) != set(range(len(lst))):
                return False
            prev = None
            for pos, c in enumerate(lst):
                targets = use[pos]
                if len(targets) > 1 and not c.multi:
                    return False
                dist = sorted(sign * (t - w) for t in targets)
                if prev is not None and dist[0] <= prev:
                    return False
                prev = dist[-1]
    # connectivity
    if n:
        adj = {w: set() for w in range(n)}
        for p, q in pairs:
            adj[p].add(q)
            adj[q].add(p)
        seen, stack = {0}, [0]
        while stack:
            u = stack.pop()
            for v in adj[u] - seen:
                seen.add(v)
                stack.append(v)
        if len(seen) != n:
            return False
    return True
