"""Connectors, expressions and disjuncts.

Connector lists inside a :class:`Disjunct` are stored nearest-first: index 0
of ``left`` links to the closest word on the left, index 0 of ``right`` to the
closest word on the right.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Union

LEFT = "-"
RIGHT = "+"

_NAME_RE = re.compile(r"^([A-Z]+)([a-z*#]*)$")


@dataclass(frozen=True, order=True)
class ConnectorName:
    head: str
    tail: str = ""

    def __post_init__(self):
        if not self.head or not self.head.isalpha() or not self.head.isupper():
            raise ValueError(f"bad connector head {self.head!r}")
        for ch in self.tail:
            if not (ch == "*" or ch == "#" or ("a" <= ch <= "z")):
                raise ValueError(f"bad connector tail {self.tail!r}")

    @classmethod
    def parse(cls, text: str) -> "ConnectorName":
        m = _NAME_RE.match(text)
        if not m:
            raise ValueError(f"bad connector name {text!r}")
        return cls(m.group(1), m.group(2))

    def __str__(self):
        return self.head + self.tail


@dataclass(frozen=True)
class FatId:
    """Signature of a fat connector: the name sequences of a sub-disjunct."""

    left: tuple
    right: tuple

    def __post_init__(self):
        if not self.left and not self.right:
            raise ValueError("fat signature must be nonempty")

    def __len__(self):
        return len(self.left) + len(self.right)

    def __str__(self):
        return "<(%s)(%s)>" % (
            ",".join(map(str, self.left)),
            ",".join(map(str, reversed(self.right))),
        )


@dataclass(frozen=True)
class Connector:
    name: ConnectorName
    direction: str
    multi: bool = False
    priority: int = 0
    fat: "FatId | None" = None

    def __post_init__(self):
        if self.direction not in (LEFT, RIGHT):
            raise ValueError(f"bad direction {self.direction!r}")
        if self.priority not in (0, 1, 2):
            raise ValueError("priority must be 0, 1 or 2")
        if self.fat is not None and self.priority == 0:
            raise ValueError("fat connectors need priority 1 or 2")

    @classmethod
    def parse(cls, text: str) -> "Connector":
        """Parse ``[@]NAME(+|-)``."""
        multi = text.startswith("@")
        body = text[1:] if multi else text
        if not body or body[-1] not in "+-":
            raise ValueError(f"bad connector {text!r}")
        name = ConnectorName.parse(body[:-1])
        if "#" in name.tail:
            raise ValueError("'#' cannot appear in source connectors")
        return cls(name, body[-1], multi)

    @property
    def key(self):
        """Hash key used by pruning tables; unequal keys never match."""
        if self.fat is not None:
            return (
                "fat",
                tuple(n.head for n in self.fat.left),
                tuple(n.head for n in self.fat.right),
            )
        return self.name.head

    def label(self) -> str:
        if self.fat is not None:
            return str(self.fat)
        return str(self.name)

    def __str__(self):
        return ("@" if self.multi else "") + self.label() + self.direction


def names_match(a: ConnectorName, b: ConnectorName) -> bool:
    if a.head != b.head:
        return False
    ta, tb = a.tail, b.tail
    n = max(len(ta), len(tb))
    ta = ta.ljust(n, "*")
    tb = tb.ljust(n, "*")
    for x, y in zip(ta, tb):
        if x == "*" or y == "*":
            continue
        if x != y or x == "#":
            return False
    return True


def _fat_match(f: FatId, g: FatId) -> bool:
    if len(f.left) != len(g.left) or len(f.right) != len(g.right):
        return False
    pairs = list(zip(f.left, g.left)) + list(zip(f.right, g.right))
    return all(names_match(x, y) for x, y in pairs)


def match(a: Connector, b: Connector) -> bool:
    """True when right-pointing ``a`` can link to left-pointing ``b``."""
    pa, pb = a.priority, b.priority
    if not ((pa == 0 and pb == 0) or (pa, pb) in ((1, 2), (2, 1))):
        return False
    if a.fat is not None or b.fat is not None:
        if a.fat is None or b.fat is None:
            return False
        return _fat_match(a.fat, b.fat)
    return names_match(a.name, b.name)


def intersect(a: ConnectorName, b: ConnectorName) -> ConnectorName:
    assert a.head == b.head, "intersect needs equal heads"
    n = max(len(a.tail), len(b.tail))
    ta = a.tail.ljust(n, "*")
    tb = b.tail.ljust(n, "*")
    out = []
    for x, y in zip(ta, tb):
        if x == y:
            out.append(x)
        elif x == "*":
            out.append(y)
        elif y == "*":
            out.append(x)
        else:
            out.append("#")
    return ConnectorName(a.head, "".join(out).rstrip("*"))


# -- expressions -----------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    connector: Connector
    cost: int = 0


@dataclass(frozen=True)
class And:
    items: tuple

    def __post_init__(self):
        if not self.items:
            raise ValueError("And needs operands")


@dataclass(frozen=True)
class Or:
    items: tuple
    # optional per-branch names (suffixed dictionary variants)
    labels: "tuple | None" = field(default=None, compare=False)

    def __post_init__(self):
        if not self.items:
            raise ValueError("Or needs operands")


@dataclass(frozen=True)
class Optional:
    item: "Expression"


@dataclass(frozen=True)
class Empty:
    pass


Expression = Union[Leaf, And, Or, Optional, Empty]


@dataclass(frozen=True)
class Disjunct:
    left: tuple = ()
    right: tuple = ()
    cost: int = field(default=0, compare=False)

    def __post_init__(self):
        for c in self.left:
            if c.direction != LEFT:
                raise ValueError("left list holds a right connector")
        for c in self.right:
            if c.direction != RIGHT:
                raise ValueError("right list holds a left connector")

    def notation(self) -> str:
        """Classic ``((L1,...,Lm)(Rn,...,R1))`` form; right list far first."""
        return "((%s)(%s))" % (
            ",".join(c.label() for c in self.left),
            ",".join(c.label() for c in reversed(self.right)),
        )

    def __str__(self):
        return self.notation()

    def connectors(self):
        return self.left + self.right


def disjunct_from_notation(text: str) -> Disjunct:
    """Inverse of :meth:`Disjunct.notation` for ordinary connectors."""
    m = re.fullmatch(r"\s*\(\s*\((.*?)\)\s*\((.*?)\)\s*\)\s*", text)
    if not m:
        raise ValueError(f"bad disjunct {text!r}")

    def names(s):
        return [x.strip() for x in s.split(",") if x.strip()]

    left = tuple(Connector(ConnectorName.parse(n), LEFT) for n in names(m.group(1)))
    right = tuple(
        Connector(ConnectorName.parse(n), RIGHT) for n in reversed(names(m.group(2)))
    )
    return Disjunct(left, right)


def _expand(e) -> dict:
    # maps (left, right) -> min cost
    if isinstance(e, Empty):
        return {((), ()): 0}
    if isinstance(e, Leaf):
        c = e.connector
        if c.direction == LEFT:
            return {((c,), ()): e.cost}
        return {((), (c,)): e.cost}
    if isinstance(e, Optional):
        return _merge([_expand(e.item), {((), ()): 0}])
    if isinstance(e, Or):
        return _merge([_expand(x) for x in e.items])
    if isinstance(e, And):
        acc = {((), ()): 0}
        for item in e.items:
            sub = _expand(item)
            nxt = {}
            for (l1, r1), c1 in acc.items():
                for (l2, r2), c2 in sub.items():
                    k = (l1 + l2, r1 + r2)
                    c = c1 + c2
                    if k not in nxt or c < nxt[k]:
                        nxt[k] = c
            acc = nxt
        return acc
    raise TypeError(f"not an expression: {e!r}")


def _merge(parts: Iterable[dict]) -> dict:
    out = {}
    for p in parts:
        for k, c in p.items():
            if k not in out or c < out[k]:
                out[k] = c
    return out


def expand(e) -> list:
    """All disjuncts of ``e``, duplicates merged at minimum cost.

    The result is a list in a deterministic order (formula order of the
    choices made), which later stages treat as declaration order.
    """
    return [Disjunct(l, r, c) for (l, r), c in _expand(e).items()]


def count_disjuncts_upper(e) -> int:
    """Number of satisfaction choices before duplicate merging."""
    if isinstance(e, (Empty, Leaf)):
        return 1
    if isinstance(e, Optional):
        return count_disjuncts_upper(e.item) + 1
    if isinstance(e, Or):
        return sum(count_disjuncts_upper(x) for x in e.items)
    n = 1
    for x in e.items:
        n *= count_disjuncts_upper(x)
    return n


def satisfies(e, left, right) -> bool:
    """Can ``e`` be satisfied using exactly these connector sequences?

    Independent of :func:`expand`: consumes the lists in formula order.
    """

    def go(e, l, r):
        # yields remaining (l, r) positions after consuming e from the front
        if isinstance(e, Empty):
            yield l, r
        elif isinstance(e, Leaf):
            c = e.connector
            if c.direction == LEFT:
                if l < len(left) and left[l] == c:
                    yield l + 1, r
            elif r < len(right) and right[r] == c:
                yield l, r + 1
        elif isinstance(e, Optional):
            yield l, r
            yield from go(e.item, l, r)
        elif isinstance(e, Or):
            for x in e.items:
                yield from go(x, l, r)
        else:
            states = {(l, r)}
            for x in e.items:
                states = {s for st in states for s in go(x, *st)}
            yield from states

    return any(s == (len(left), len(right)) for s in go(e, 0, 0))


def expression_connectors(e):
    if isinstance(e, Leaf):
        yield e.connector
    elif isinstance(e, Optional):
        yield from expression_connectors(e.item)
    elif isinstance(e, (And, Or)):
        for x in e.items:
            yield from expression_connectors(x)
