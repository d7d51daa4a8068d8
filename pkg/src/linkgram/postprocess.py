"""Domains, groups and post-processing rules.

A starter link creates a domain.  Its members are the links on paths that
start at the starter's right word, never pass through the root word (the
starter's left word) as an intermediate vertex, and stop after following a
restricted link leftward.  The starter itself is not a member.  Links with
identical domain membership form a group.

Config file lines (``%`` starts a comment)::

    STARTER WA g
    RESTRICTED B
    DOMAIN_REQUIRES b SXst O : There rule 2
    BOUNDED e : Unbounded e domain
    GROUP_REQUIRES THi SXsi : THi rule 1
    GROUP_FORBIDS THi T,I EXCEPT i : THi rule 2

A pattern matches a link label when the heads are equal and the label
carries every subscript letter the pattern names (``*`` in a pattern
matches anything).  So ``O`` matches ``Ost`` but ``THi`` does not match
``TH``.  ``EXCEPT x`` exempts labels whose subscript starts with ``x``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .grammar import ConnectorName


class ConfigError(ValueError):
    pass


def label_matches(pattern: ConnectorName, label: ConnectorName) -> bool:
    if pattern.head != label.head:
        return False
    for k, ch in enumerate(pattern.tail):
        if ch == "*":
            continue
        if k >= len(label.tail) or label.tail[k] != ch:
            return False
    return True


@dataclass(frozen=True)
class DomainRequires:
    domain_type: str
    trigger: ConnectorName
    required: ConnectorName
    name: str


@dataclass(frozen=True)
class BoundedDomain:
    domain_type: str
    name: str


@dataclass(frozen=True)
class GroupRequires:
    trigger: ConnectorName
    required: ConnectorName
    name: str


@dataclass(frozen=True)
class GroupForbids:
    trigger: ConnectorName
    forbidden: tuple  # of ConnectorName
    except_prefix: str
    name: str


@dataclass
class PostConfig:
    starters: list = field(default_factory=list)  # (ConnectorName, letter)
    restricted: list = field(default_factory=list)
    rules: list = field(default_factory=list)

    def starter_type(self, label: ConnectorName):
        for pat, letter in self.starters:
            if label_matches(pat, label):
                return letter
        return None

    def is_restricted(self, label: ConnectorName):
        return any(label_matches(p, label) for p in self.restricted)


def _name(tok, lineno):
    try:
        return ConnectorName.parse(tok)
    except ValueError:
        raise ConfigError(f"line {lineno}: bad link name {tok!r}") from None


def parse_config(text: str) -> PostConfig:
    cfg = PostConfig()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        head, _, msg = line.partition(":")
        words = head.split()
        msg = msg.strip()
        kind, args = words[0].upper(), words[1:]
        if kind == "STARTER" and len(args) == 2:
            letter = args[1]
            if len(letter) != 1 or not letter.islower():
                raise ConfigError(f"line {lineno}: domain type must be one lowercase letter")
            cfg.starters.append((_name(args[0], lineno), letter))
        elif kind == "RESTRICTED" and len(args) == 1:
            cfg.restricted.append(_name(args[0], lineno))
        elif kind == "DOMAIN_REQUIRES" and len(args) == 3:
            cfg.rules.append(
                DomainRequires(args[0], _name(args[1], lineno), _name(args[2], lineno), msg or line)
            )
        elif kind == "BOUNDED" and len(args) == 1:
            cfg.rules.append(BoundedDomain(args[0], msg or line))
        elif kind == "GROUP_REQUIRES" and len(args) == 2:
            cfg.rules.append(
                GroupRequires(_name(args[0], lineno), _name(args[1], lineno), msg or line)
            )
        elif kind == "GROUP_FORBIDS" and len(args) in (2, 4):
            exc = ""
            if len(args) == 4:
                if args[2].upper() != "EXCEPT":
                    raise ConfigError(f"line {lineno}: expected EXCEPT")
                exc = args[3]
            forb = tuple(_name(x, lineno) for x in args[1].split(","))
            cfg.rules.append(GroupForbids(_name(args[0], lineno), forb, exc, msg or line))
        else:
            raise ConfigError(f"line {lineno}: cannot read {raw.strip()!r}")
    return cfg


def load_config(path) -> PostConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def load_config_asset(name="default.pp") -> PostConfig:
    return parse_config(resources.files(__package__).joinpath("data/" + name).read_text("utf-8"))


# -- domains --------------------------------------------------------------


def link_name(link) -> ConnectorName:
    """Link label as a name; fat links get their head-only placeholder."""
    if link.is_fat:
        return ConnectorName("FAT")
    return ConnectorName.parse(link.label)


@dataclass
class Domain:
    type: str
    root: int
    starter: int  # index into DomainStructure.links
    members: frozenset  # link indices


@dataclass
class DomainStructure:
    links: list  # links in table order
    domains: list
    membership: list  # per link: tuple of domain indices, in domain order
    groups: list  # list of (membership tuple, [link indices])


def table_order(links):
    """Links by left word, longer links first."""
    return sorted(links, key=lambda k: (k.lw, -k.rw, k.lpos, k.rpos))


def domain_members(links, starter, restricted):
    """Link indices in the domain started by ``links[starter]``.

    ``restricted(i)`` says whether link ``i`` is restricted.
    """
    root = links[starter].lw
    start = links[starter].rw
    inc = {}
    for i, k in enumerate(links):
        inc.setdefault(k.lw, []).append(i)
        inc.setdefault(k.rw, []).append(i)
    members = set()
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for i in inc.get(u, ()):
            if i == starter:
                continue
            k = links[i]
            v = k.rw if k.lw == u else k.lw
            members.add(i)
            if v == root:
                continue  # the root is never an intermediate vertex
            if v < u and restricted(i):
                continue  # stop after a leftward restricted link
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return frozenset(members)


def build_domains(lk, cfg: PostConfig) -> DomainStructure:
    links = table_order(lk.links)
    names = [link_name(k) for k in links]
    domains = []
    for i, nm in enumerate(names):
        letter = cfg.starter_type(nm)
        if letter is not None:
            domains.append(Domain(letter, links[i].lw, i, frozenset()))
    restricted = [cfg.is_restricted(nm) for nm in names]
    for d in domains:
        d.members = domain_members(links, d.starter, lambda i: restricted[i])
    membership = [tuple(j for j, d in enumerate(domains) if i in d.members) for i in range(len(links))]
    groups = {}
    for i, m in enumerate(membership):
        groups.setdefault(m, []).append(i)
    return DomainStructure(links, domains, membership, list(groups.items()))


# -- rules ----------------------------------------------------------------


def _any_match(pattern, names, idx):
    return any(label_matches(pattern, names[i]) for i in idx)


def check_rules(ds: DomainStructure, cfg: PostConfig) -> list:
    names = [link_name(k) for k in ds.links]
    out = []
    for rule in cfg.rules:
        if isinstance(rule, DomainRequires):
            for d in ds.domains:
                if d.type != rule.domain_type:
                    continue
                if _any_match(rule.trigger, names, d.members) and not _any_match(
                    rule.required, names, d.members
                ):
                    out.append(rule.name)
        elif isinstance(rule, BoundedDomain):
            for d in ds.domains:
                if d.type == rule.domain_type and any(
                    min(ds.links[i].lw, ds.links[i].rw) < d.root for i in d.members
                ):
                    out.append(rule.name)
        elif isinstance(rule, GroupRequires):
            for _, idx in ds.groups:
                if _any_match(rule.trigger, names, idx) and not _any_match(rule.required, names, idx):
                    out.append(rule.name)
        elif isinstance(rule, GroupForbids):
            for _, idx in ds.groups:
                if not _any_match(rule.trigger, names, idx):
                    continue
                for i in idx:
                    nm = names[i]
                    if rule.except_prefix and nm.tail.startswith(rule.except_prefix):
                        continue
                    if any(label_matches(p, nm) for p in rule.forbidden):
                        out.append(rule.name)
                        break
    # one entry per rule name, first-seen order
    return list(dict.fromkeys(out))


def postprocess(lk, cfg: PostConfig):
    ds = build_domains(lk, cfg)
    return ds, check_rules(ds, cfg)
