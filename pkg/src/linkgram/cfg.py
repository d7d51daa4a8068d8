"""Conversions between context-free grammars and link grammars.

``gnf_to_link_grammar`` turns a Greibach-normal-form grammar into a link
dictionary whose connector names are the grammar's variables.
``link_grammar_to_cfg`` goes the other way for basic link grammars (no
multi-connectors, no subscripts).  Its variables pair the unresolved
connectors on the two sides of a gap; only variables reachable from the
start productions are generated.  ``language_equiv_check`` compares two
acceptors on every string up to a length bound.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from .dictionary import Dictionary
from .grammar import LEFT, RIGHT, And, Connector, ConnectorName, Disjunct, Empty, Leaf, Or, expand


class GrammarError(ValueError):
    pass


class UnsupportedFeature(ValueError):
    pass


class EnumerationTooLarge(ValueError):
    def __init__(self, needed, limit):
        self.needed = needed
        self.limit = limit
        super().__init__(f"{needed} strings to check exceeds the limit of {limit}")


# -- Greibach normal form ------------------------------------------------------


@dataclass
class GnfGrammar:
    start: str
    # (lhs, terminal, tuple of variables)
    productions: list = field(default_factory=list)

    @property
    def variables(self):
        out = {self.start}
        for a, _, rest in self.productions:
            out.add(a)
            out.update(rest)
        return out

    @property
    def terminals(self):
        return sorted({x for _, x, _ in self.productions})

    def to_cfg(self) -> "CfgGrammar":
        return CfgGrammar(
            self.start,
            [(a, (x,) + rest) for a, x, rest in self.productions],
            set(self.variables),
        )


def parse_gnf(text: str, start=None) -> GnfGrammar:
    """Read lines ``A -> x A1 A2 | y B``; ``%`` and ``#`` start comments.

    The first symbol of each alternative is the terminal.  The start
    variable is the first left side unless given.
    """
    prods = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = re.split(r"[%#]", raw, maxsplit=1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise GrammarError(f"line {lineno}: expected 'A -> x ...'")
        lhs, rhs = (p.strip() for p in line.split("->", 1))
        if not lhs or len(lhs.split()) != 1:
            raise GrammarError(f"line {lineno}: left side must be one variable")
        for alt in rhs.split("|"):
            syms = alt.split()
            if not syms:
                raise GrammarError(f"line {lineno}: empty right side is not allowed")
            prods.append((lhs, syms[0], tuple(syms[1:])))
    if not prods:
        raise GrammarError("grammar has no productions")
    g = GnfGrammar(start or prods[0][0], prods)
    check_gnf(g)
    return g


def check_gnf(g: GnfGrammar):
    heads = {a for a, _, _ in g.productions}
    if g.start not in heads:
        raise GrammarError(f"start variable {g.start!r} has no production")
    for a, x, rest in g.productions:
        if x in heads:
            raise GrammarError(f"production of {a!r} must begin with a terminal, not {x!r}")
        for v in rest:
            if v not in heads:
                raise GrammarError(f"variable {v!r} has no production")


def normalize_start(g: GnfGrammar) -> GnfGrammar:
    """Give the grammar a start variable that no right side mentions."""
    if not any(g.start in rest for _, _, rest in g.productions):
        return g
    names = g.variables
    fresh = g.start + "0"
    while fresh in names:
        fresh += "0"
    extra = [(fresh, x, rest) for a, x, rest in g.productions if a == g.start]
    return GnfGrammar(fresh, extra + list(g.productions))


def _connector_names(variables):
    """Map grammar variables to connector names made of capital letters."""
    taken = {v for v in variables if re.fullmatch(r"[A-Z]+", v)}
    out = {}
    counter = itertools.count()
    for v in sorted(variables):
        if v in taken:
            out[v] = ConnectorName(v)
            continue
        while True:
            k = next(counter)
            s = ""
            while True:
                s = chr(ord("A") + k % 26) + s
                k = k // 26 - 1
                if k < 0:
                    break
            cand = "V" + s
            if cand not in taken:
                taken.add(cand)
                out[v] = ConnectorName(cand)
                break
    return out


def disjunct_expression(d: Disjunct):
    """A formula whose only disjunct is ``d``."""
    items = tuple(Leaf(c) for c in d.left + d.right)
    if not items:
        return Empty()
    return items[0] if len(items) == 1 else And(items)


def gnf_to_link_grammar(g: GnfGrammar) -> Dictionary:
    check_gnf(g)
    g = normalize_start(g)
    names = _connector_names(g.variables)
    per_word = {}
    for a, x, rest in g.productions:
        right = tuple(Connector(names[v], RIGHT) for v in rest)  # nearest first
        left = () if a == g.start else (Connector(names[a], LEFT),)
        dj = Disjunct(left, right)
        lst = per_word.setdefault(x, [])
        if dj not in lst:
            lst.append(dj)
    d = Dictionary(provenance="<gnf>")
    for x, djs in per_word.items():
        exprs = tuple(disjunct_expression(dj) for dj in djs)
        d.add(x, exprs[0] if len(exprs) == 1 else Or(exprs))
    return d


# -- general context-free grammars ----------------------------------------------


@dataclass
class CfgGrammar:
    start: object
    productions: list  # (lhs, rhs tuple); rhs symbols are variables or terminals
    variables: set

    def format(self) -> str:
        def sym(s):
            return _var_text(s) if s in self.variables else str(s)

        lines = []
        for a, rhs in self.productions:
            lines.append(sym(a) + " -> " + (" ".join(sym(s) for s in rhs) if rhs else "ε"))
        return "\n".join(lines)


def _var_text(v):
    if isinstance(v, tuple):
        rs, ls = v
        return "V((%s)(%s))" % (",".join(reversed(rs)), ",".join(ls))
    return str(v)


class _Start:
    def __repr__(self):
        return "S"

    __str__ = __repr__


START = _Start()


def _basic_disjuncts(d: Dictionary):
    out = {}
    for word, e in d.entries.items():
        djs = expand(e)
        for dj in djs:
            for c in dj.connectors():
                if c.multi:
                    raise UnsupportedFeature(f"{word!r} uses a multi-connector")
                if c.name.tail:
                    raise UnsupportedFeature(f"{word!r} uses a subscripted connector {c.label()}")
        out[word] = [(tuple(c.name.head for c in dj.left), tuple(c.name.head for c in dj.right)) for dj in djs]
    return out


def link_grammar_to_cfg(d: Dictionary) -> CfgGrammar:
    """Variables are ``(rs, ls)``: right connectors waiting on the left of a
    gap and left connectors waiting on its right, both nearest first."""
    words = _basic_disjuncts(d)
    prods = []
    seen_prod = set()

    def add(p):
        if p not in seen_prod:
            seen_prod.add(p)
            prods.append(p)

    todo = []
    variables = {START}
    for x, djs in words.items():
        for lx, rx in djs:
            if not rx:
                v = ((), lx)
                add((START, (v, x)))
                todo.append(v)
    empty = ((), ())
    done = set()
    while todo:
        v = todo.pop()
        if v in done:
            continue
        done.add(v)
        variables.add(v)
        rs, ls = v
        if v == empty:
            add((v, ()))
            continue
        for x, djs in words.items():
            for lx, rx in djs:
                a = bool(rs) and bool(lx) and lx[-1] == rs[-1]
                b = bool(ls) and bool(rx) and rx[-1] == ls[-1]
                outs = []
                if a:
                    outs.append(((rs[:-1], lx[:-1]), (rx, ls)))
                if b:
                    outs.append(((rs, lx), (rx[:-1], ls[:-1])))
                if a and b:
                    outs.append(((rs[:-1], lx[:-1]), (rx[:-1], ls[:-1])))
                for beta, gamma in outs:
                    add((v, (beta, x, gamma)))
                    todo.append(beta)
                    todo.append(gamma)
    return _prune_unproductive(CfgGrammar(START, prods, variables))


def _prune_unproductive(g: CfgGrammar) -> CfgGrammar:
    good = set()
    changed = True
    while changed:
        changed = False
        for a, rhs in g.productions:
            if a not in good and all(s in good or s not in g.variables for s in rhs):
                good.add(a)
                changed = True
    prods = [(a, rhs) for a, rhs in g.productions if a in good and all(s in good or s not in g.variables for s in rhs)]
    return CfgGrammar(g.start, prods, good | {g.start})


def cfg_accepts(g: CfgGrammar, words) -> bool:
    """Earley recognition with nullable-aware prediction."""
    words = list(words)
    by_lhs = {}
    for a, rhs in g.productions:
        by_lhs.setdefault(a, []).append(rhs)
    nullable = set()
    changed = True
    while changed:
        changed = False
        for a, rhs in g.productions:
            if a not in nullable and all(s in nullable for s in rhs):
                nullable.add(a)
                changed = True
    n = len(words)
    chart = [set() for _ in range(n + 1)]
    agenda = [[] for _ in range(n + 1)]

    def push(i, item):
        if item not in chart[i]:
            chart[i].add(item)
            agenda[i].append(item)

    for rhs in by_lhs.get(g.start, ()):
        push(0, (g.start, rhs, 0, 0))
    for i in range(n + 1):
        while agenda[i]:
            a, rhs, dot, origin = agenda[i].pop()
            if dot < len(rhs):
                s = rhs[dot]
                if s in g.variables:
                    for r in by_lhs.get(s, ()):
                        push(i, (s, r, 0, i))
                    if s in nullable:
                        push(i, (a, rhs, dot + 1, origin))
                elif i < n and words[i] == s:
                    push(i + 1, (a, rhs, dot + 1, origin))
            else:
                for b, rhs2, dot2, org2 in list(chart[origin]):
                    if dot2 < len(rhs2) and rhs2[dot2] == a:
                        push(i, (b, rhs2, dot2 + 1, org2))
    return any(a == g.start and dot == len(rhs) and o == 0 for a, rhs, dot, o in chart[n])


# -- acceptors and bounded equivalence --------------------------------------------


def link_acceptor(d: Dictionary):
    from .engine import count_linkages
    from .prep import UnknownWord, prepare_words
    from .pruning import full_pipeline

    def accepts(words):
        try:
            s = prepare_words(list(words), d, wall=False)
        except UnknownWord:
            return False
        return count_linkages(full_pipeline(s)) > 0

    return accepts


def cfg_acceptor(g: CfgGrammar):
    return lambda words: cfg_accepts(g, words)


@dataclass
class EquivReport:
    checked: int
    disagreements: list  # (words tuple, result A, result B)

    @property
    def equivalent(self):
        return not self.disagreements


EQUIV_LIMIT = 10**6


def language_equiv_check(acc_a, acc_b, alphabet, maxlen, minlen=1, limit=EQUIV_LIMIT) -> EquivReport:
    alphabet = list(alphabet)
    needed = len(alphabet) ** maxlen
    if needed > limit:
        raise EnumerationTooLarge(needed, limit)
    checked = 0
    bad = []
    for n in range(minlen, maxlen + 1):
        for words in itertools.product(alphabet, repeat=n):
            checked += 1
            ra, rb = bool(acc_a(words)), bool(acc_b(words))
            if ra != rb:
                bad.append((words, ra, rb))
    return EquivReport(checked, bad)
