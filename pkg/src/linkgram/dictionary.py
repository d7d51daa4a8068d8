"""The dictionary file language.

An entry is a list of words, a colon, a formula and a semicolon::

    snake cat: {@A-} & D- & (O- or S+);

``&`` binds tighter than ``or``; ``{e}`` is shorthand for ``(e or ())``;
``[e]`` adds one to the cost of every connector inside it; ``%`` starts a
comment.  A quoted key such as ``"last week"`` defines an idiom.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

from .grammar import And, Connector, Empty, Leaf, Optional, Or

_CONN_RE = re.compile(r"@?[A-Z]+[a-z*]*[+-]")


class DictionaryError(ValueError):
    def __init__(self, msg, line=None, col=None, provenance=None):
        self.line, self.col, self.provenance = line, col, provenance
        where = ""
        if line is not None:
            where = f"{provenance or '<dict>'}:{line}:{col}: "
        super().__init__(where + msg)


@dataclass(frozen=True)
class DictSource:
    text: str
    provenance: str = "<string>"


@dataclass
class Dictionary:
    entries: dict = field(default_factory=dict)
    idioms: set = field(default_factory=set)
    suffix_index: dict = field(default_factory=dict)
    provenance: str = "<string>"

    def __contains__(self, key):
        return key in self.entries

    def lookup(self, key):
        return self.entries.get(key)

    def add(self, key, expr):
        if key in self.entries:
            raise DictionaryError(f"word {key!r} defined twice")
        self.entries[key] = expr
        if " " in key:
            self.idioms.add(key)
        base, dot, suffix = key.partition(".")
        if dot and base and suffix:
            self.suffix_index.setdefault(base, []).append(key)

    def words(self):
        return list(self.entries)


def normalize_key(key: str) -> str:
    return " ".join(key.split())


# -- lexer -----------------------------------------------------------------


class _Lexer:
    def __init__(self, text, provenance):
        self.text = text
        self.pos = 0
        self.provenance = provenance

    def error(self, msg, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        raise DictionaryError(msg, line, col, self.provenance)

    def skip(self):
        t, n = self.text, len(self.text)
        while self.pos < n:
            ch = t[self.pos]
            if ch.isspace():
                self.pos += 1
            elif ch == "%":
                end = t.find("\n", self.pos)
                self.pos = n if end < 0 else end
            else:
                break

    def at_end(self):
        self.skip()
        return self.pos >= len(self.text)

    def word(self):
        """Read one dictionary key; returns (key, ended_by_colon)."""
        self.skip()
        t = self.text
        start = self.pos
        if t.startswith('"', start):
            end = t.find('"', start + 1)
            if end < 0:
                self.error("unterminated quoted word")
            key = normalize_key(t[start + 1 : end])
            if not key:
                self.error("empty quoted word")
            self.pos = end + 1
        else:
            while self.pos < len(t) and not t[self.pos].isspace() and t[self.pos] not in ":%":
                self.pos += 1
            key = t[start : self.pos]
        if key and (key.endswith(".") or key.startswith(".")) and len(key) > 1:
            self.error(f"bad suffix in {key!r}", start)
        self.skip()
        colon = self.pos < len(t) and t[self.pos] == ":"
        if colon:
            self.pos += 1
        if not key:
            self.error("expected a word", start)
        return key, colon

    def token(self):
        """Next formula token: (kind, text, pos)."""
        self.skip()
        t, p = self.text, self.pos
        if p >= len(t):
            return ("eof", "", p)
        ch = t[p]
        if ch in "(){}[]&;":
            self.pos += 1
            return (ch, ch, p)
        if t.startswith("or", p) and (p + 2 >= len(t) or not t[p + 2].isalnum()):
            self.pos += 2
            return ("or", "or", p)
        m = _CONN_RE.match(t, p)
        if m:
            self.pos = m.end()
            return ("conn", m.group(0), p)
        self.error(f"unexpected character {ch!r}")


class _Parser:
    def __init__(self, lexer):
        self.lx = lexer
        self.peeked = None

    def peek(self):
        if self.peeked is None:
            self.peeked = self.lx.token()
        return self.peeked

    def take(self, kind=None):
        tok = self.peek()
        if kind is not None and tok[0] != kind:
            self.lx.error(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.peeked = None
        return tok

    def formula(self, cost):
        items = [self.conj(cost)]
        while self.peek()[0] == "or":
            self.take()
            items.append(self.conj(cost))
        return _flat(Or, items)

    def conj(self, cost):
        items = [self.term(cost)]
        while self.peek()[0] == "&":
            self.take()
            items.append(self.term(cost))
        return _flat(And, items)

    def term(self, cost):
        kind, text, pos = self.take()
        if kind == "conn":
            return Leaf(Connector.parse(text), cost)
        if kind == "(":
            if self.peek()[0] == ")":
                self.take()
                return Empty()
            e = self.formula(cost)
            self.take(")")
            return e
        if kind == "{":
            if self.peek()[0] == "}":
                self.take()
                return Empty()
            e = self.formula(cost)
            self.take("}")
            return Optional(e)
        if kind == "[":
            e = self.formula(cost + 1)
            self.take("]")
            return e
        self.lx.error(f"unexpected {text or 'end of input'!r}", pos)


def _flat(cls, items):
    if len(items) == 1:
        return items[0]
    out = []
    for x in items:
        if isinstance(x, cls) and getattr(x, "labels", None) is None:
            out.extend(x.items)
        else:
            out.append(x)
    return cls(tuple(out))


def parse_formula(text: str):
    lx = _Lexer(text, "<formula>")
    p = _Parser(lx)
    e = p.formula(0)
    p.take("eof")
    return e


def parse_dictionary(src) -> Dictionary:
    if isinstance(src, str):
        src = DictSource(src)
    lx = _Lexer(src.text, src.provenance)
    d = Dictionary(provenance=src.provenance)
    while not lx.at_end():
        keys = []
        start = lx.pos
        while True:
            key, colon = lx.word()
            keys.append(key)
            if colon:
                break
            if lx.at_end():
                lx.error("entry without ':'", start)
        p = _Parser(lx)
        if p.peek()[0] == ";":
            lx.error("empty entry", start)
        expr = p.formula(0)
        p.take(";")
        for k in keys:
            if k in d.entries:
                lx.error(f"word {k!r} defined twice", start)
            d.add(k, expr)
    return d


def load_dictionary(path) -> Dictionary:
    with open(path, encoding="utf-8") as fh:
        return parse_dictionary(DictSource(fh.read(), str(path)))


def load_abridged() -> Dictionary:
    text = resources.files(__package__).joinpath("data/abridged.dict").read_text("utf-8")
    return parse_dictionary(DictSource(text, "abridged.dict"))


def load_asset(name: str) -> Dictionary:
    text = resources.files(__package__).joinpath("data/" + name).read_text("utf-8")
    return parse_dictionary(DictSource(text, name))


def lookup_word(d: Dictionary, token: str):
    """Exact entry, else an Or over suffixed variants, else ``None``."""
    if token in d.entries:
        return d.entries[token]
    variants = d.suffix_index.get(token)
    if variants:
        return Or(tuple(d.entries[v] for v in variants), labels=tuple(variants))
    return None


# -- printing --------------------------------------------------------------


def format_expression(e) -> str:
    if isinstance(e, Empty):
        return "()"
    if isinstance(e, Leaf):
        return "[" * e.cost + str(e.connector) + "]" * e.cost
    if isinstance(e, Optional):
        return "{" + format_expression(e.item) + "}"
    if isinstance(e, And):
        return "(" + " & ".join(format_expression(x) for x in e.items) + ")"
    if isinstance(e, Or):
        return "(" + " or ".join(format_expression(x) for x in e.items) + ")"
    raise TypeError(e)


def _format_key(k):
    return '"%s"' % k if " " in k else k


def format_dictionary(d: Dictionary) -> str:
    groups = {}
    for k, e in d.entries.items():
        groups.setdefault(id(e), (e, []))[1].append(k)
    lines = []
    for e, keys in groups.values():
        lines.append(" ".join(map(_format_key, keys)) + ": " + format_expression(e) + ";")
    return "\n".join(lines) + "\n"
