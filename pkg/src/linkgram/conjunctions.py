"""Coordination through fat connectors.

Every ordinary word gets extra disjuncts in which one non-empty
sub-disjunct is replaced by a single priority-1 fat connector pointing left
or right.  Coordinators (``and``, ``or``, ``nor`` and the comma) get
priority-2 fat connectors so that the elements of a list attach to them,
plus ordinary connectors through which the coordinator stands in for the
elements.

The fat connectors on coordinators carry head-only names, so one
coordinator disjunct can join elements whose subscripts differ (``cats and
dog``).  The real outward names are recomputed after extraction by
intersecting the elements' names; :func:`validate_and_linkage` reports any
outward link that no longer matches.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .grammar import LEFT, RIGHT, Connector, ConnectorName, Disjunct, FatId, intersect, match
from .prep import WA_LEFT, WALL_WORD

COORDINATORS = ("and", "or", "nor")
COMMA = ","
PAIRED = {"either": "or", "neither": "nor"}
PLACEHOLDERS = frozenset(COORDINATORS + (COMMA,) + tuple(PAIRED))

FAT_NAME = ConnectorName("FAT")
PRE_COMMA = ConnectorName("COMMAAND")
PAIR_NAME = ConnectorName("PAIRED")
SPECIAL_HEADS = frozenset({PRE_COMMA.head, PAIR_NAME.head})

DEFAULT_EXCLUDED = frozenset({"WA"})


def _fat(sig, direction, priority):
    return Connector(FAT_NAME, direction, priority=priority, fat=sig)


def sub_disjunct_cuts(d: Disjunct):
    """``(i, j)`` cut points of the non-empty sub-disjuncts of ``d``.

    The sub-disjunct for ``(i, j)`` is ``(left[i:], right[j:])``: connectors
    are deleted from the near end of each list.
    """
    for j in range(len(d.right) + 1):
        for i in range(len(d.left) + 1):
            if i < len(d.left) or j < len(d.right):
                yield i, j


def _allowed(conns, allowed, excluded):
    for c in conns:
        if c.fat is not None or c.priority:
            return False
        h = c.name.head
        if h in excluded or h in SPECIAL_HEADS:
            return False
        if allowed is not None and h not in allowed:
            return False
    return True


def fat_variants(d: Disjunct, allowed=None, excluded=DEFAULT_EXCLUDED):
    """The two fat-connector disjuncts for every sub-disjunct of ``d``."""
    out = []
    for i, j in sub_disjunct_cuts(d):
        sub_l, sub_r = d.left[i:], d.right[j:]
        if not _allowed(sub_l + sub_r, allowed, excluded):
            continue
        sig = FatId(tuple(c.name for c in sub_l), tuple(c.name for c in sub_r))
        out.append(Disjunct(d.left[:i] + (_fat(sig, LEFT, 1),), d.right[:j], d.cost))
        out.append(Disjunct(d.left[:i], d.right[:j] + (_fat(sig, RIGHT, 1),), d.cost))
    return out


@dataclass(frozen=True)
class Template:
    """Head-only shape of a sub-disjunct: ``((head, multi), ...)`` lists."""

    left: tuple
    right: tuple

    @property
    def sig(self) -> FatId:
        return FatId(
            tuple(ConnectorName(h) for h, _ in self.left),
            tuple(ConnectorName(h) for h, _ in self.right),
        )

    def ordinary(self):
        return (
            tuple(Connector(ConnectorName(h), LEFT, m) for h, m in self.left),
            tuple(Connector(ConnectorName(h), RIGHT, m) for h, m in self.right),
        )


def catalog(words, allowed=None, excluded=DEFAULT_EXCLUDED):
    """Templates for every sub-disjunct of every disjunct of ``words``."""
    seen = {}
    for tok in words:
        for d in tok.disjuncts:
            for i, j in sub_disjunct_cuts(d):
                sub_l, sub_r = d.left[i:], d.right[j:]
                if not _allowed(sub_l + sub_r, allowed, excluded):
                    continue
                t = Template(
                    tuple((c.name.head, c.multi) for c in sub_l),
                    tuple((c.name.head, c.multi) for c in sub_r),
                )
                seen.setdefault(t, None)
    return list(seen)


def coordinator_disjuncts(templates):
    """Disjuncts for ``and``/``or``: impersonation, chain, nesting, mixed."""
    out = {}
    for t in templates:
        sig = t.sig
        f2l, f2r = _fat(sig, LEFT, 2), _fat(sig, RIGHT, 2)
        ol, orr = t.ordinary()
        out.setdefault(Disjunct((f2l,) + ol, (f2r,) + orr), None)
        # re-substitute fat connectors inside the ordinary part; the whole
        # part gives the comma-style chain and the left-nesting disjunct
        base = Disjunct(ol, orr)
        for i, j in sub_disjunct_cuts(base):
            h = FatId(tuple(c.name for c in ol[i:]), tuple(c.name for c in orr[j:]))
            out.setdefault(
                Disjunct((f2l,) + ol[:i] + (_fat(h, LEFT, 1),), (f2r,) + orr[:j]), None
            )
            out.setdefault(
                Disjunct((f2l,) + ol[:i], (f2r,) + orr[:j] + (_fat(h, RIGHT, 1),)), None
            )
    return list(out)


def comma_disjuncts(templates):
    out = {}
    for t in templates:
        sig = t.sig
        out.setdefault(
            Disjunct((_fat(sig, LEFT, 2),), (_fat(sig, RIGHT, 2), _fat(sig, RIGHT, 1))), None
        )
    return list(out)


def is_coordinator(tok) -> bool:
    return tok.surface.lower() in COORDINATORS


def has_coordination(sentence) -> bool:
    return any(is_coordinator(t) or t.surface == COMMA for t in sentence.tokens)


def expand_for_coordination(sentence, allowed=None, excluded=DEFAULT_EXCLUDED):
    """Add fat-connector disjuncts; identity when no coordinator is present."""
    if not any(is_coordinator(t) for t in sentence.tokens) and not any(
        t.surface == COMMA for t in sentence.tokens
    ):
        return sentence
    toks = sentence.tokens
    lowered = [t.surface.lower() for t in toks]
    ordinary = [
        k
        for k, t in enumerate(toks)
        if not (k == 0 and sentence.has_wall and t.surface == WALL_WORD)
        and lowered[k] not in COORDINATORS
        and lowered[k] != COMMA
        and lowered[k] not in PAIRED
    ]
    templates = catalog([toks[k] for k in ordinary], allowed, excluded)
    coord = coordinator_disjuncts(templates)
    commas = comma_disjuncts(templates)
    pre_left = Connector(PRE_COMMA, LEFT)
    pre_right = Connector(PRE_COMMA, RIGHT)
    pair_left = Connector(PAIR_NAME, LEFT)
    pair_right = Connector(PAIR_NAME, RIGHT)
    wanted_pairs = {PAIRED[w] for w in lowered if w in PAIRED}
    first_real = 1 if sentence.has_wall else 0
    new = []
    for k, tok in enumerate(toks):
        word = lowered[k]
        extra = []
        if k in ordinary:
            for d in tok.disjuncts:
                extra.extend(fat_variants(d, allowed, excluded))
        elif word in COORDINATORS:
            base = list(coord)
            if k > 0 and toks[k - 1].surface == COMMA:
                base += [Disjunct((pre_left,) + d.left, d.right) for d in coord]
            if word in wanted_pairs:
                base += [Disjunct(d.left + (pair_left,), d.right) for d in base]
            if k == first_real and sentence.has_wall:
                # the first word gets the wall's WA- duplicate as well
                base += [Disjunct(d.left + (WA_LEFT,), d.right) for d in base]
            extra = base
        elif word == COMMA:
            extra = list(commas)
            if k + 1 < len(toks) and lowered[k + 1] in COORDINATORS:
                extra.append(Disjunct((), (pre_right,)))
        elif word in PAIRED:
            extra = [Disjunct((), (pair_right,))]
            if k == first_real and sentence.has_wall:
                extra.append(Disjunct((WA_LEFT,), (pair_right,)))
        seen = set(tok.disjuncts)
        dis = list(tok.disjuncts)
        labels = dict(tok.labels)
        for d in extra:
            if d not in seen:
                seen.add(d)
                dis.append(d)
        for d in dis[len(tok.disjuncts):]:
            labels.setdefault(d, tok.display)
        new.append(tok.with_disjuncts(dis, labels))
    return sentence.replace(new, None)


def prepare_coordinated(line, d, **kw):
    """Prepare ``line`` allowing coordinators absent from ``d``."""
    from .prep import prepare

    return [expand_for_coordination(s) for s in prepare(line, d, placeholders=PLACEHOLDERS, **kw)]


# -- validation -----------------------------------------------------------


@dataclass
class AndList:
    coordinator: int  # root coordinator word
    coordinators: list  # every coordinator word of the list
    elements: list  # (attachment word, (first word, last word))
    outward: dict = field(default_factory=dict)  # (word, side, pos) -> ConnectorName

    def spans(self):
        return [hi - lo + 1 for _, (lo, hi) in self.elements]


def _priority2_word(lk, w):
    d = lk.disjuncts[w]
    return any(c.priority == 2 for c in d.left + d.right)


def _subject_plural(name: ConnectorName) -> ConnectorName:
    return ConnectorName(name.head, "p" + name.tail[1:])


def analyze_and(lk):
    """Reconstruct and-lists and check them; returns (lists, violations)."""
    n = len(lk.disjuncts)
    coords = {w for w in range(n) if _priority2_word(lk, w)}
    if not coords:
        return [], []
    violations = []
    parent = {}  # child word -> (coordinator, child connector)
    children = {c: [] for c in coords}  # coordinator -> [(child, child connector)]
    for k in lk.links:
        if k.lconn.fat is None:
            continue
        if k.lconn.priority == 2:
            c, x, xc = k.lw, k.rw, k.rconn
        else:
            c, x, xc = k.rw, k.lw, k.lconn
        if x in parent:
            violations.append(f"fat-multiple-parents: word {x}")
        parent[x] = (c, xc)
        children[c].append((x, xc))

    memo = {}

    def eff(c):
        """Names of coordinator ``c``'s fat signature after intersection."""
        if c in memo:
            return memo[c]
        memo[c] = None  # cycle guard
        sigs = []
        for x, xc in children[c]:
            s = sig_of(x, xc)
            if s is not None:
                sigs.append(s)
        if not sigs:
            return None
        left, right = list(sigs[0][0]), list(sigs[0][1])
        for s in sigs[1:]:
            if len(s[0]) != len(left) or len(s[1]) != len(right):
                return None
            left = [intersect(a, b) for a, b in zip(left, s[0])]
            right = [intersect(a, b) for a, b in zip(right, s[1])]
        if len(sigs) > 1:
            right = [_subject_plural(r) if r.head == "S" else r for r in right]
        memo[c] = (tuple(left), tuple(right))
        return memo[c]

    def sig_of(x, xc):
        if x not in coords:
            return xc.fat.left, xc.fat.right
        e = eff(x)
        if e is None:
            return None
        # the child's priority-1 connector covers a far slice of its own
        # signature (all of it for chain and nesting disjuncts)
        i = len(e[0]) - len(xc.fat.left)
        j = len(e[1]) - len(xc.fat.right)
        if i < 0 or j < 0:
            return None
        return e[0][i:], e[1][j:]

    # outward ordinary connectors of each coordinator
    outward = {}
    for c in sorted(coords):
        d = lk.disjuncts[c]
        e = eff(c)
        ol = [p for p, x in enumerate(d.left) if x.priority == 0 and x.name.head not in SPECIAL_HEADS and x.name.head != "WA"]
        orr = [p for p, x in enumerate(d.right) if x.priority == 0 and x.name.head not in SPECIAL_HEADS]
        if not ol and not orr:
            continue
        if e is None:
            violations.append(f"and-signature: word {c}")
            continue
        for q, p in enumerate(ol):
            if q < len(e[0]):
                outward[(c, "l", p)] = e[0][q]
        for q, p in enumerate(orr):
            if q < len(e[1]):
                outward[(c, "r", p)] = e[1][q]
    for k in lk.links:
        if k.lconn.fat is not None:
            continue
        if (k.rw, "l", k.rpos) in outward:
            name = outward[(k.rw, "l", k.rpos)]
            if not match(k.lconn, Connector(name, LEFT, k.rconn.multi)):
                violations.append(f"and-intersection: {k.lconn.label()} does not match {name}")
        if (k.lw, "r", k.lpos) in outward:
            name = outward[(k.lw, "r", k.lpos)]
            if not match(Connector(name, RIGHT, k.lconn.multi), k.rconn):
                violations.append(f"and-intersection: {name} does not match {k.rconn.label()}")

    # strictness: elements reach the rest of the sentence only through fat
    # links to their coordinators (the wall is bookkeeping and is ignored)
    skip = set(coords)
    if lk.sentence.has_wall:
        skip.add(0)
    adj = {w: set() for w in range(n) if w not in skip}
    for k in lk.links:
        if k.lw in adj and k.rw in adj:
            adj[k.lw].add(k.rw)
            adj[k.rw].add(k.lw)
    comp = {}
    for w in adj:
        if w in comp:
            continue
        stack, comp[w] = [w], w
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in comp:
                    comp[v] = w
                    stack.append(v)
    members = {}
    for w, r in comp.items():
        members.setdefault(r, []).append(w)
    elements = [x for x in parent if x not in coords]
    owner = {}
    for x in elements:
        r = comp[x]
        if r in owner:
            violations.append(f"and-element-shared: words {owner[r]} and {x}")
        owner[r] = x
    for k in lk.links:
        if k.lconn.fat is not None:
            continue
        for a, b in ((k.lw, k.rw), (k.rw, k.lw)):
            if a in coords and b in comp and comp[b] in owner:
                violations.append(
                    f"and-element-outside: element word {b} links to coordinator {a}"
                )

    # and-lists: one per root coordinator
    root_of = {}

    def root(c):
        seen = set()
        while c in parent and parent[c][0] in coords and c not in seen:
            seen.add(c)
            c = parent[c][0]
        return c

    for c in coords:
        root_of[c] = root(c)
    lists = {}
    for c in sorted(coords):
        r = root_of[c]
        lists.setdefault(r, AndList(r, [], []))
        lists[r].coordinators.append(c)
    for x in sorted(elements):
        r = root_of[parent[x][0]]
        ws = members[comp[x]]
        lists[r].elements.append((x, (min(ws), max(ws))))
    for (c, side, p), name in outward.items():
        lists[root_of[c]].outward[(c, side, p)] = name
    return [lists[r] for r in sorted(lists)], violations


def validate_and_linkage(lk):
    return analyze_and(lk)[1]


def and_cost(lists) -> int:
    total = 0
    for al in lists:
        s = al.spans()
        if s:
            total += max(s) - min(s)
    return total
