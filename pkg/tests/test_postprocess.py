from dataclasses import dataclass

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkgram.dictionary import load_asset
from linkgram.oracle import connected_planar_graphs
from linkgram.pipeline import parse_line
from linkgram.postprocess import (
    ConfigError,
    build_domains,
    check_rules,
    domain_members,
    label_matches,
    load_config_asset,
    parse_config,
)
from linkgram.grammar import ConnectorName
from linkgram.render import table_rows


@pytest.fixture(scope="module")
def domains_dict():
    return load_asset("domains.dict")


@pytest.fixture(scope="module")
def it_dict():
    return load_asset("it.dict")


def rows(d, cfg, text):
    r = parse_line(text, d, cfg)
    (p,) = r.linkages
    return table_rows(p.linkage, p.domains), p.pp_violations


THERE_PROBLEM = [
    ("", "/////", "WA", "<--WA-->", "WA", "John"),
    ("(g)", "John", "S", "<--Ss-->", "Ss", "thinks"),
    ("(g)", "thinks", "CLb", "<--CLb-->", "CL", "there"),
    ("(g) (b)", "there", "SXst", "<--SXst-->", "SX", "might"),
    ("(g) (b)", "might", "I", "<--Ii-->", "Ii", "be"),
    ("(g) (b)", "be", "Ost", "<--Ost-->", "Os", "problem"),
    ("(g) (b)", "a", "Ds", "<--Ds-->", "Ds", "problem"),
]

THERE_RUNNING = THERE_PROBLEM[:5] + [("(g) (b)", "be", "GI", "<--GI-->", "GI", "running")]

RESTRICTED = [
    ("", "/////", "WA", "<--WA-->", "WA", "the"),
    ("(g)", "the", "D", "<--Ds-->", "Ds", "dog"),
    ("(g)", "dog", "Ss", "<--Ss-->", "S", "died"),
    ("(g) (r) (b)", "dog", "Bs", "<--Bs-->", "B", "hit"),
    ("(g)", "dog", "C", "<--C-->", "C", "Joe"),
    ("(g) (r)", "Joe", "S", "<--Ss-->", "Ss", "thinks"),
    ("(g) (r)", "thinks", "CLb", "<--CLb-->", "CL", "John"),
    ("(g) (r) (b)", "John", "S", "<--S-->", "S", "hit"),
]

UNBOUNDED = [
    ("", "/////", "WA", "<--WA-->", "WA", "the"),
    ("(g)", "the", "D", "<--Ds-->", "Ds", "dog"),
    ("(g)", "dog", "Ss", "<--Ss-->", "S", "died"),
    ("(g) (r) (e)", "dog", "Bs", "<--Bs-->", "B", "hit"),
    ("(g)", "dog", "C", "<--C-->", "C", "I"),
    ("(g) (r)", "I", "Spb", "<--Spb-->", "S", "screamed"),
    ("(g) (r)", "screamed", "EV", "<--EV-->", "EV", "when"),
    ("(g) (r)", "when", "CLe", "<--CLe-->", "CL", "Dave"),
    ("(g) (r) (e)", "Dave", "S", "<--S-->", "S", "hit"),
]

NESTED = [
    ("", "/////", "WA", "<--WA-->", "WA", "John"),
    ("(g)", "John", "S", "<--Ss-->", "Ss", "thinks"),
    ("(g)", "thinks", "CLb", "<--CLb-->", "CL", "Joe"),
    ("(g) (b)", "Joe", "S", "<--Ss-->", "Ss", "believes"),
    ("(g) (b)", "believes", "CLb", "<--CLb-->", "CL", "it"),
    ("(g) (b) (b)", "it", "SXsi", "<--SXsi-->", "SXs", "is"),
    ("(g) (b) (b)", "is", "AI", "<--AIi-->", "AIi", "likely"),
    ("(g) (b) (b)", "likely", "THi", "<--THi-->", "TH", "that"),
    ("(g) (b) (b)", "that", "CLb", "<--CLb-->", "CL", "Fred"),
    ("(g) (b) (b) (b)", "Fred", "S", "<--Ss-->", "Ss", "likes"),
    ("(g) (b) (b) (b)", "likes", "O", "<--O-->", "O", "Mary"),
]


@pytest.mark.parametrize(
    "text,want,violations",
    [
        ("John thinks there might be a problem", THERE_PROBLEM, []),
        ("John thinks there might be running", THERE_RUNNING, ["There rule 2"]),
        ("the dog Joe thinks John hit died", RESTRICTED, []),
        ("the dog I screamed when Dave hit died", UNBOUNDED, ["Unbounded e domain"]),
        ("John thinks Joe believes it is likely that Fred likes Mary", NESTED, []),
    ],
)
def test_domain_tables(domains_dict, pp_default, text, want, violations):
    got, v = rows(domains_dict, pp_default, text)
    assert got == want
    assert v == violations


IT_REFERENTIAL = [
    ("", "/////", "WA", "<--WA-->", "WA", "John"),
    ("(g)", "John", "S", "<--S-->", "S", "thought.v"),
    ("(g)", "thought.v", "CLb", "<--CLb-->", "CL", "it"),
    ("(g) (b)", "it", "SXsi", "<--SXsi-->", "SXs", "was"),
    ("(g) (b)", "was", "AI", "<--AIi-->", "AIi", "likely"),
    ("(g) (b)", "likely", "THi", "<--THi-->", "TH", "that"),
    ("(g) (b)", "that", "CLb", "<--CLb-->", "CL", "Fred"),
    ("(g) (b) (b)", "Fred", "S", "<--S-->", "S", "would"),
    ("(g) (b) (b)", "would", "I", "<--I-->", "I", "go"),
]

IT_BAD = [
    ("", "/////", "WA", "<--WA-->", "WA", "it"),
    ("(g)", "it", "Ss", "<--Ss-->", "S", "thought.v"),
    ("(g)", "thought.v", "CLb", "<--CLb-->", "CL", "John"),
    ("(g) (b)", "John", "S", "<--Ss-->", "Ss", "was"),
    ("(g) (b)", "was", "AI", "<--AIi-->", "AIi", "likely"),
    ("(g) (b)", "likely", "THi", "<--THi-->", "TH", "that"),
    ("(g) (b)", "that", "CLb", "<--CLb-->", "CL", "Fred"),
    ("(g) (b) (b)", "Fred", "S", "<--S-->", "S", "would"),
    ("(g) (b) (b)", "would", "I", "<--I-->", "I", "go"),
]


def test_it_tables(it_dict, pp_default):
    r = parse_line("John thought it was likely that Fred would go", it_dict, pp_default)
    valid = [p for p in r.linkages if p.valid]
    assert [table_rows(p.linkage, p.domains) for p in valid] == [IT_REFERENTIAL]
    r = parse_line("it thought John was likely that Fred would go", it_dict, pp_default)
    (p,) = r.linkages
    assert table_rows(p.linkage, p.domains) == IT_BAD
    assert p.pp_violations == ["THi rule 1", "THi rule 2"]


@pytest.mark.parametrize(
    "text,ok",
    [
        ("John thought it was likely that Fred would go", True),
        ("It thought John was likely that Fred would go", False),
        ("It seemed to appear to be likely that John would go", True),
        ("John seemed to appear to be likely that John would go", False),
        ("John seemed to appear to be doubtful that John would go", True),
        ("It seemed to want to be likely that John would go", False),
        ("John seemed to appear to be likely to go", True),
    ],
)
def test_it_judgements(it_dict, pp_default, text, ok):
    assert parse_line(text, it_dict, pp_default).accepted == ok


def test_selectional_profile():
    d = load_asset("selectional.dict")
    cfg = load_config_asset("selectional.pp")
    assert parse_line("the dog seems to have slept here", d, cfg).accepted
    r = parse_line("the idea seems to have slept here", d, cfg)
    assert not r.accepted
    assert r.linkages[0].pp_violations == ["Selectional restriction"]
    assert parse_line("the idea seems to have slept here", d, load_config_asset()).accepted


def test_label_patterns():
    n = ConnectorName.parse
    assert label_matches(n("O"), n("Ost"))
    assert label_matches(n("B"), n("Bs"))
    assert not label_matches(n("THi"), n("TH"))
    assert not label_matches(n("C"), n("CLb"))
    assert label_matches(n("S*t"), n("Sst"))


def test_config_parsing():
    cfg = parse_config("STARTER WA g\nRESTRICTED B % comment\nBOUNDED e : No escape\n")
    assert [(str(p), t) for p, t in cfg.starters] == [("WA", "g")]
    assert cfg.rules[0].name == "No escape"
    for bad in ("STARTER WA gg", "FROB X", "GROUP_FORBIDS A B NOT c", "STARTER wa g"):
        with pytest.raises(ConfigError):
            parse_config(bad)


@dataclass(frozen=True)
class FakeLink:
    lw: int
    rw: int


def brute_members(links, starter, restricted):
    root, start = links[starter].lw, links[starter].rw
    found = set()

    def walk(u, visited):
        for i, k in enumerate(links):
            if i == starter or u not in (k.lw, k.rw):
                continue
            v = k.rw if k.lw == u else k.lw
            if v in visited:
                continue
            found.add(i)
            if v == root or (v < u and restricted[i]):
                continue
            walk(v, visited | {v})

    walk(start, {start})
    return found


@st.composite
def graphs(draw):
    n = draw(st.integers(2, 6))
    edges = draw(st.sampled_from(connected_planar_graphs(n)))
    links = [FakeLink(a, b) for a, b in edges]
    restricted = draw(st.lists(st.booleans(), min_size=len(links), max_size=len(links)))
    starter = draw(st.integers(0, len(links) - 1))
    return links, starter, restricted


@settings(max_examples=300, deadline=None)
@given(graphs())
def test_domain_search_matches_all_paths(g):
    links, starter, restricted = g
    got = domain_members(links, starter, lambda i: restricted[i])
    assert starter not in got
    assert set(got) == brute_members(links, starter, restricted)


def test_groups_partition_links(domains_dict, pp_default):
    r = parse_line("John thinks Joe believes it is likely that Fred likes Mary", domains_dict, pp_default)
    ds = r.linkages[0].domains
    members = sorted(i for _, idx in ds.groups for i in idx)
    assert members == list(range(len(ds.links)))
    assert check_rules(ds, pp_default) == check_rules(build_domains(r.linkages[0].linkage, pp_default), pp_default)
